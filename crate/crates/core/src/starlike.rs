//! Starlike trees: a root of degree `m >= 3` with `m` pendant paths (branches).
//!
//! The path census of a starlike tree splits into three kinds of degree
//! sequence, which gives every `hI_f` for `h >= 2` in closed form:
//!
//! | class    | degree sequence                  | paths                              |
//! |----------|----------------------------------|------------------------------------|
//! | `X1`     | `(m, 2^(h-1), 1)`                | root to a leaf                     |
//! | `X2`     | `(m, 2^h)`                       | root into a longer branch          |
//! | `Y1`     | `(2^(h+1))`                      | inside a branch, no leaf, no root  |
//! | `Y2`     | `(1, 2^h)`                       | inside a branch, ending at a leaf  |
//! | `Z1(a)`  | `(1, 2^a, m, 2^(h-1-a))`         | through the root, one leaf end     |
//! | `Z2(a)`  | `(1, 2^a, m, 2^(h-2-a), 1)`      | through the root, two leaf ends    |
//! | `Z3(a)`  | `(2^a, m, 2^(h-a))`              | through the root, no leaf end      |
//!
//! Counts depend only on `n`, `m` and `L_1..L_h`, where `L_l` is the number
//! of branches of length `l`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Census, Graph};
use crate::invariants::InvariantFunction;

/// Branch-length multiset of a starlike tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarlikeSpec {
    // length -> count, counts strictly positive
    counts: BTreeMap<usize, usize>,
}

impl StarlikeSpec {
    /// Builds a spec from `(length, count)` pairs. Lengths must be distinct
    /// and positive; zero counts are skipped.
    pub fn new<I>(branches: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut counts = BTreeMap::new();
        for (length, count) in branches {
            if length == 0 {
                return Err(Error::InvalidSpec(
                    "branch length must be at least 1".into(),
                ));
            }
            if counts.contains_key(&length) {
                return Err(Error::InvalidSpec(format!(
                    "branch length {length} listed more than once"
                )));
            }
            if count > 0 {
                counts.insert(length, count);
            }
        }
        let spec = StarlikeSpec { counts };
        let m = spec.root_degree();
        if m < 3 {
            return Err(Error::InvalidSpec(format!(
                "root degree {m} is below 3; a starlike tree needs at least three branches"
            )));
        }
        Ok(spec)
    }

    /// `counts[i]` is the number of branches of length `i + 1`.
    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        StarlikeSpec::new(counts.iter().enumerate().map(|(i, &c)| (i + 1, c)))
    }

    /// From a multiset of branch lengths, in any order.
    pub fn from_lengths(lengths: &[usize]) -> Result<Self> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &l in lengths {
            *counts.entry(l).or_insert(0) += 1;
        }
        StarlikeSpec::new(counts)
    }

    /// `L_l`, zero for absent lengths.
    pub fn count(&self, length: usize) -> usize {
        self.counts.get(&length).copied().unwrap_or(0)
    }

    /// `(length, count)` pairs in increasing length.
    pub fn branches(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&l, &c)| (l, c))
    }

    /// All branch lengths, ascending, with repetition.
    pub fn branch_lengths(&self) -> Vec<usize> {
        self.branches()
            .flat_map(|(l, c)| std::iter::repeat_n(l, c))
            .collect()
    }

    /// `L_1..L_t` as a dense vector.
    pub fn count_vector(&self) -> Vec<usize> {
        (1..=self.max_length()).map(|l| self.count(l)).collect()
    }

    /// `m`, the number of branches.
    pub fn root_degree(&self) -> usize {
        self.counts.values().sum()
    }

    /// `t`, the longest branch.
    pub fn max_length(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.branches().map(|(l, c)| l * c).sum::<usize>()
    }

    /// Length of a longest path: the two longest branches joined at the root.
    pub fn longest_path(&self) -> usize {
        let lengths = self.branch_lengths();
        lengths.iter().rev().take(2).sum()
    }

    pub(crate) fn params(&self) -> BranchParams {
        BranchParams {
            n: self.vertex_count() as i64,
            m: self.root_degree() as i64,
            counts: self.count_vector().iter().map(|&c| c as i64).collect(),
        }
    }

    pub fn to_doc(&self) -> StarlikeDoc {
        StarlikeDoc {
            branches: self
                .branches()
                .map(|(length, count)| BranchDoc { length, count })
                .collect(),
        }
    }

    pub fn from_doc(doc: &StarlikeDoc) -> Result<Self> {
        StarlikeSpec::new(doc_pairs(&doc.branches)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StarlikeDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        StarlikeSpec::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("spec documents always serialize")
    }
}

impl fmt::Display for StarlikeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.branches().map(|(l, c)| format!("{l}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// One entry of the JSON branch list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDoc {
    pub length: usize,
    pub count: usize,
}

/// `{"branches": [{"length": l, "count": c}, ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarlikeDoc {
    pub branches: Vec<BranchDoc>,
}

pub(crate) fn doc_pairs(branches: &[BranchDoc]) -> Result<Vec<(usize, usize)>> {
    branches
        .iter()
        .map(|b| {
            if b.count == 0 {
                Err(Error::InvalidSpec(format!(
                    "branch length {} has count 0",
                    b.length
                )))
            } else {
                Ok((b.length, b.count))
            }
        })
        .collect()
}

/// The quantities the closed forms read: `n`, `m` and `L_1, L_2, ..`.
/// Lengths past the end of `counts` read as zero. Need not be realizable,
/// which is what reconstruction relies on when it probes `L_h = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BranchParams {
    pub n: i64,
    pub m: i64,
    pub counts: Vec<i64>,
}

impl BranchParams {
    pub fn l(&self, length: usize) -> i64 {
        if length == 0 {
            return 0;
        }
        self.counts.get(length - 1).copied().unwrap_or(0)
    }

    /// `L_1 + .. + L_k`
    pub fn prefix(&self, k: usize) -> i64 {
        (1..=k).map(|i| self.l(i)).sum()
    }

    /// `1 L_1 + 2 L_2 + .. + k L_k`
    pub fn weighted_prefix(&self, k: usize) -> i64 {
        (1..=k).map(|i| i as i64 * self.l(i)).sum()
    }
}

/// Tag of a starlike degree-sequence class (see the module table).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CensusClassId {
    X1,
    X2,
    Y1,
    Y2,
    Z1(usize),
    Z2(usize),
    Z3(usize),
}

fn twos(k: usize) -> impl Iterator<Item = u32> {
    std::iter::repeat_n(2, k)
}

impl CensusClassId {
    /// Degree sequence of the class at order `h >= 2`, with `root` in the
    /// position of the root vertex.
    pub fn sequence(&self, h: usize, root: u32) -> Vec<u32> {
        let mut s = Vec::with_capacity(h + 1);
        match *self {
            CensusClassId::X1 => {
                s.push(root);
                s.extend(twos(h - 1));
                s.push(1);
            }
            CensusClassId::X2 => {
                s.push(root);
                s.extend(twos(h));
            }
            CensusClassId::Y1 => s.extend(twos(h + 1)),
            CensusClassId::Y2 => {
                s.push(1);
                s.extend(twos(h));
            }
            CensusClassId::Z1(a) => {
                s.push(1);
                s.extend(twos(a));
                s.push(root);
                s.extend(twos(h - 1 - a));
            }
            CensusClassId::Z2(a) => {
                s.push(1);
                s.extend(twos(a));
                s.push(root);
                s.extend(twos(h - 2 - a));
                s.push(1);
            }
            CensusClassId::Z3(a) => {
                s.extend(twos(a));
                s.push(root);
                s.extend(twos(h - a));
            }
        }
        debug_assert_eq!(s.len(), h + 1);
        s
    }
}

impl fmt::Display for CensusClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusClassId::X1 => write!(f, "X1"),
            CensusClassId::X2 => write!(f, "X2"),
            CensusClassId::Y1 => write!(f, "Y1"),
            CensusClassId::Y2 => write!(f, "Y2"),
            CensusClassId::Z1(a) => write!(f, "Z1({a})"),
            CensusClassId::Z2(a) => write!(f, "Z2({a})"),
            CensusClassId::Z3(a) => write!(f, "Z3({a})"),
        }
    }
}

/// Signed class counts for order `h >= 2`. Signed because `p` may be a
/// non-realizable probe; for a real spec every count is non-negative.
pub(crate) fn class_counts(p: &BranchParams, h: usize) -> Vec<(CensusClassId, i64)> {
    assert!(h >= 2, "class counts need h >= 2");
    let (n, m) = (p.n, p.m);
    let beyond_h = m - p.prefix(h);
    let mut out = vec![
        (CensusClassId::X1, p.l(h)),
        (CensusClassId::X2, beyond_h),
        (
            CensusClassId::Y1,
            (n - 1) - p.weighted_prefix(h) - (h as i64 + 1) * beyond_h,
        ),
        (CensusClassId::Y2, beyond_h),
    ];

    let even = h.is_multiple_of(2);
    // Z1: leaf end on a branch of length a+1; the other side runs h-1-a
    // vertices into a branch of length >= h-a, which may be the leaf branch's
    // own length class once a+1 >= h-a.
    for a in 0..=h - 2 {
        let own_class_overlaps = if even { a >= h / 2 } else { a >= (h - 1) / 2 };
        let others = m - own_class_overlaps as i64 - p.prefix(h - (a + 1));
        out.push((CensusClassId::Z1(a), p.l(a + 1) * others));
    }
    // Z2: leaf ends on branches of lengths a+1 and h-1-a.
    let z2_last = if even { h / 2 - 1 } else { (h - 1) / 2 - 1 };
    for a in 0..=z2_last {
        let count = if even && a == h / 2 - 1 {
            half(p.l(a + 1) * (p.l(a + 1) - 1))
        } else {
            p.l(a + 1) * p.l(h - a - 1)
        };
        out.push((CensusClassId::Z2(a), count));
    }
    // Z3: non-leaf ends, sides of a and h-a vertices.
    let z3_last = if even { h / 2 } else { (h - 1) / 2 };
    for a in 1..=z3_last {
        let count = if even && a == h / 2 {
            half((m - p.prefix(a)) * (m - 1 - p.prefix(a)))
        } else {
            (m - p.prefix(h - a)) * (m - 1 - p.prefix(a))
        };
        out.push((CensusClassId::Z3(a), count));
    }
    out
}

pub(crate) fn half(x: i64) -> i64 {
    debug_assert!(x % 2 == 0, "halved product {x} is odd");
    x / 2
}

/// `sum count * f(sequence)` over signed class counts.
pub(crate) fn closed_form_value(p: &BranchParams, h: usize, f: &InvariantFunction) -> f64 {
    let m = p.m as u32;
    let fm = |s: &[u32]| f.eval(s);
    match h {
        0 => fm(&[m]) + p.m as f64 * fm(&[1]) + (p.n - p.m - 1) as f64 * fm(&[2]),
        1 => {
            let l1 = p.l(1);
            l1 as f64 * fm(&[m, 1])
                + (p.m - l1) as f64 * fm(&[m, 2])
                + (p.m - l1) as f64 * fm(&[1, 2])
                + (p.n - 1 - 2 * p.m + l1) as f64 * fm(&[2, 2])
        }
        _ => class_counts(p, h)
            .into_iter()
            .fold(0.0, |acc, (id, c)| acc + c as f64 * fm(&id.sequence(h, m))),
    }
}

/// Per-class counts for a real spec at order `h >= 2`.
pub fn starlike_class_counts(spec: &StarlikeSpec, h: usize) -> Result<Vec<(CensusClassId, u64)>> {
    if h < 2 {
        return Err(Error::OrderOutOfRange { h, min: 2 });
    }
    Ok(class_counts(&spec.params(), h)
        .into_iter()
        .map(|(id, c)| {
            assert!(
                c >= 0,
                "class {id} of {spec} has negative count {c} at h={h}"
            );
            (id, c as u64)
        })
        .collect())
}

/// Closed-form path census of a starlike tree, `h >= 2`. Classes sharing a
/// canonical degree sequence are merged.
pub fn starlike_census(spec: &StarlikeSpec, h: usize) -> Result<Census> {
    let root = spec.root_degree() as u32;
    let mut census = Census::new(h);
    for (id, count) in starlike_class_counts(spec, h)? {
        census.add(id.sequence(h, root), count);
    }
    Ok(census)
}

/// `hI_f` of a starlike tree without building the graph.
pub fn starlike_invariant(spec: &StarlikeSpec, h: usize, f: &InvariantFunction) -> f64 {
    if h < 2 {
        closed_form_value(&spec.params(), h, f)
    } else {
        let census = starlike_census(spec, h).expect("h >= 2");
        crate::invariants::weighted_sum(&census, f)
    }
}

/// Closed-form profile for `h = 0..=h_max`.
pub fn starlike_profile(
    spec: &StarlikeSpec,
    f: &InvariantFunction,
    h_max: usize,
) -> crate::invariants::InvariantProfile {
    crate::invariants::InvariantProfile::new(
        (0..=h_max)
            .map(|h| starlike_invariant(spec, h, f))
            .collect(),
    )
}

/// Root at vertex 0, then each branch as a run of consecutive labels,
/// shortest branches first.
pub fn realize_starlike(spec: &StarlikeSpec) -> Graph {
    let n = spec.vertex_count();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for length in spec.branch_lengths() {
        let mut prev = 0;
        for _ in 0..length {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(n, &edges).expect("starlike realization is a valid tree")
}

/// Slope of `hI_f` in `L_h`:
/// `f(m, 2^(h-1), 1) - f(m, 2^h) + f(2^(h+1)) - f(1, 2^h)`, for `h >= 1`.
pub fn mu_coefficient(f: &InvariantFunction, h: usize, m: usize) -> f64 {
    assert!(h >= 1, "mu coefficient is defined for h >= 1");
    let m = m as u32;
    let x1: Vec<u32> = std::iter::once(m).chain(twos(h - 1)).chain([1]).collect();
    let x2: Vec<u32> = std::iter::once(m).chain(twos(h)).collect();
    let y1: Vec<u32> = twos(h + 1).collect();
    let y2: Vec<u32> = std::iter::once(1).chain(twos(h)).collect();
    f.eval(&x1) - f.eval(&x2) + f.eval(&y1) - f.eval(&y2)
}

/// Coefficients of `L_{h-2}`, `L_{h-1}` and `L_h` in the expansion of `hI_f`
/// for `h > 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCoefficients {
    pub h_minus_2: f64,
    pub h_minus_1: f64,
    pub h: f64,
}

pub fn tail_coefficients(
    f: &InvariantFunction,
    h: usize,
    m: usize,
    l1: usize,
    l2: usize,
) -> TailCoefficients {
    assert!(h > 4, "tail coefficients are stated for h > 4");
    let root = m as u32;
    let fc = |id: CensusClassId| f.eval(&id.sequence(h, root));
    use CensusClassId::*;
    let (m, l1, l2) = (m as f64, l1 as f64, l2 as f64);

    let h_minus_2 = 3.0 * fc(Y1) - fc(X2) - fc(Y2)
        + l1 * (fc(Z3(1)) - fc(Z1(0)) + fc(Z3(2)) - fc(Z1(h - 3)))
        + l2 * (fc(Z2(1)) - fc(Z1(1)) + fc(Z3(2)) - fc(Z1(h - 3)))
        + (m - 1.0) * (fc(Z1(h - 3)) - fc(Z3(1)) - fc(Z3(2)));
    let h_minus_1 = 2.0 * fc(Y1) - fc(X2) - fc(Y2)
        + l1 * (fc(Z2(0)) - fc(Z1(0)) + fc(Z3(1)) - fc(Z1(h - 2)))
        + (m - 1.0) * (fc(Z1(h - 2)) - fc(Z3(1)));
    let top = fc(X1) - fc(X2) + fc(Y1) - fc(Y2);
    TailCoefficients {
        h_minus_2,
        h_minus_1,
        h: top,
    }
}
