//! Generalized starlike trees: a clique `K_{n1}` coalesced with the root of a
//! starlike tree. The coalescence vertex `x0` has degree `r = n1 + m - 1`,
//! the other clique vertices have degree `n1 - 1`.
//!
//! Paths fall into three groups: inside the clique (`U`, `V`, `W(a)`), inside
//! the starlike part (the starlike classes with `r` in the root position), and
//! paths crossing `x0` from the clique into a branch (`M1(a)`, `M2(a)`).
//! With `n1 = 3` the clique degree equals the interior branch degree 2, so
//! distinct classes can share a degree sequence; the census merges them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Census, Graph};
use crate::invariants::{weighted_sum, InvariantFunction};
use crate::starlike::{
    class_counts, doc_pairs, half, mu_coefficient, BranchDoc, BranchParams, CensusClassId,
    StarlikeSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenStarlikeSpec {
    clique: usize,
    star: StarlikeSpec,
}

impl GenStarlikeSpec {
    /// `clique` must be at least 3; a 2-clique is just one more pendant edge,
    /// see [`crate::family::TreeSpec::generalized`].
    pub fn new(clique: usize, star: StarlikeSpec) -> Result<Self> {
        if clique < 3 {
            return Err(Error::InvalidSpec(format!(
                "clique size {clique} is below 3"
            )));
        }
        Ok(GenStarlikeSpec { clique, star })
    }

    pub fn clique(&self) -> usize {
        self.clique
    }

    pub fn star(&self) -> &StarlikeSpec {
        &self.star
    }

    pub fn vertex_count(&self) -> usize {
        self.clique + self.star.vertex_count() - 1
    }

    /// `r = n1 + m - 1`, the degree of the coalescence vertex.
    pub fn max_degree(&self) -> usize {
        self.clique + self.star.root_degree() - 1
    }

    /// Longest branch joined either with the second-longest branch or with a
    /// Hamiltonian path through the clique.
    pub fn longest_path(&self) -> usize {
        let lengths = self.star.branch_lengths();
        let t = lengths[lengths.len() - 1];
        let t2 = lengths[lengths.len() - 2];
        t + t2.max(self.clique - 1)
    }

    pub(crate) fn params(&self) -> GenParams {
        GenParams {
            clique: self.clique as i64,
            star: self.star.params(),
        }
    }

    pub fn to_doc(&self) -> GeneralizedDoc {
        GeneralizedDoc {
            clique: self.clique,
            branches: self.star.to_doc().branches,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("spec documents always serialize")
    }
}

impl fmt::Display for GenStarlikeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}*{}", self.clique, self.star)
    }
}

/// `{"clique": n1, "branches": [...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralizedDoc {
    pub clique: usize,
    pub branches: Vec<BranchDoc>,
}

impl GeneralizedDoc {
    pub(crate) fn pairs(&self) -> Result<Vec<(usize, usize)>> {
        doc_pairs(&self.branches)
    }
}

/// Starlike parameters plus the clique size. `star.n` is the starlike part's
/// vertex count `n2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct GenParams {
    pub clique: i64,
    pub star: BranchParams,
}

impl GenParams {
    fn root_symbol(&self) -> u32 {
        (self.clique + self.star.m - 1) as u32
    }

    // (n1 - offset - 1)(n1 - offset - 2)..(n1 - offset - k)
    fn falling(&self, offset: i64, k: usize) -> i64 {
        (1..=k as i64).map(|i| self.clique - offset - i).product()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenClassId {
    U,
    V,
    W(usize),
    Star(CensusClassId),
    M1(usize),
    M2(usize),
}

impl GenClassId {
    /// Degree sequence at order `h >= 2` for clique size `clique` and
    /// coalescence-vertex degree `root`.
    pub fn sequence(&self, h: usize, clique: usize, root: u32) -> Vec<u32> {
        let c = (clique - 1) as u32;
        let rep = |v: u32, k: usize| std::iter::repeat_n(v, k);
        let s: Vec<u32> = match *self {
            GenClassId::U => std::iter::once(root).chain(rep(c, h)).collect(),
            GenClassId::V => rep(c, h + 1).collect(),
            GenClassId::W(a) => rep(c, a).chain([root]).chain(rep(c, h - a)).collect(),
            GenClassId::Star(id) => id.sequence(h, root),
            GenClassId::M1(a) => rep(c, a).chain([root]).chain(rep(2, h - a)).collect(),
            GenClassId::M2(a) => rep(c, a)
                .chain([root])
                .chain(rep(2, h - a - 1))
                .chain([1])
                .collect(),
        };
        debug_assert_eq!(s.len(), h + 1);
        s
    }
}

impl fmt::Display for GenClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenClassId::U => write!(f, "U"),
            GenClassId::V => write!(f, "V"),
            GenClassId::W(a) => write!(f, "W({a})"),
            GenClassId::Star(id) => write!(f, "{id}'"),
            GenClassId::M1(a) => write!(f, "M1({a})"),
            GenClassId::M2(a) => write!(f, "M2({a})"),
        }
    }
}

pub(crate) fn gen_class_counts(p: &GenParams, h: usize) -> Vec<(GenClassId, i64)> {
    assert!(h >= 2, "class counts need h >= 2");
    let even = h.is_multiple_of(2);
    let mut out = vec![
        (GenClassId::U, p.falling(0, h)),
        (GenClassId::V, half(p.falling(0, h + 1))),
    ];
    let w_last = if even { h / 2 } else { (h - 1) / 2 };
    for a in 1..=w_last {
        let ordered = p.falling(0, a) * p.falling(a as i64, h - a);
        let count = if even && a == h / 2 {
            half(ordered)
        } else {
            ordered
        };
        out.push((GenClassId::W(a), count));
    }
    out.extend(
        class_counts(&p.star, h)
            .into_iter()
            .map(|(id, c)| (GenClassId::Star(id), c)),
    );
    let m = p.star.m;
    for a in 1..h {
        let lead = p.falling(0, a);
        out.push((GenClassId::M1(a), lead * (m - p.star.prefix(h - a))));
        out.push((GenClassId::M2(a), lead * p.star.l(h - a)));
    }
    out
}

pub(crate) fn gen_closed_form_value(p: &GenParams, h: usize, f: &InvariantFunction) -> f64 {
    let r = p.root_symbol();
    let n1 = p.clique;
    let c = (n1 - 1) as u32;
    let (m, n2) = (p.star.m, p.star.n);
    match h {
        0 => {
            f.eval(&[r])
                + m as f64 * f.eval(&[1])
                + (n2 - m - 1) as f64 * f.eval(&[2])
                + (n1 - 1) as f64 * f.eval(&[c])
        }
        1 => {
            let l1 = p.star.l(1);
            (n1 - 1) as f64 * f.eval(&[r, c])
                + half((n1 - 1) * (n1 - 2)) as f64 * f.eval(&[c, c])
                + l1 as f64 * f.eval(&[r, 1])
                + (m - l1) as f64 * f.eval(&[r, 2])
                + (m - l1) as f64 * f.eval(&[1, 2])
                + (n2 - 1 - 2 * m + l1) as f64 * f.eval(&[2, 2])
        }
        _ => gen_class_counts(p, h)
            .into_iter()
            .fold(0.0, |acc, (id, count)| {
                acc + count as f64 * f.eval(&id.sequence(h, n1 as usize, r))
            }),
    }
}

pub fn generalized_class_counts(
    spec: &GenStarlikeSpec,
    h: usize,
) -> Result<Vec<(GenClassId, u64)>> {
    if h < 2 {
        return Err(Error::OrderOutOfRange { h, min: 2 });
    }
    Ok(gen_class_counts(&spec.params(), h)
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

/// Closed-form census for `h >= 2`, colliding classes merged.
pub fn generalized_census(spec: &GenStarlikeSpec, h: usize) -> Result<Census> {
    let root = spec.max_degree() as u32;
    let mut census = Census::new(h);
    for (id, count) in generalized_class_counts(spec, h)? {
        census.add(id.sequence(h, spec.clique, root), count);
    }
    Ok(census)
}

pub fn generalized_invariant(spec: &GenStarlikeSpec, h: usize, f: &InvariantFunction) -> f64 {
    if h < 2 {
        gen_closed_form_value(&spec.params(), h, f)
    } else {
        weighted_sum(&generalized_census(spec, h).expect("h >= 2"), f)
    }
}

/// `x0 = 0`, clique vertices `1..n1`, then branches shortest first.
pub fn realize_generalized(spec: &GenStarlikeSpec) -> Graph {
    let n1 = spec.clique;
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in u + 1..n1 {
            edges.push((u, v));
        }
    }
    let mut next = n1;
    for length in spec.star.branch_lengths() {
        let mut prev = 0;
        for _ in 0..length {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(spec.vertex_count(), &edges).expect("generalized realization is valid")
}

/// Slope of `hI_f` in `L_h`; the starlike slope at root degree `m + n1 - 1`.
pub fn generalized_mu(f: &InvariantFunction, h: usize, m: usize, clique: usize) -> f64 {
    mu_coefficient(f, h, m + clique - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path_census, Budget};
    use crate::invariants::{connectivity, evaluate_invariant, hyper_zagreb, path_count, power};

    fn spec(clique: usize, branches: &[(usize, usize)]) -> GenStarlikeSpec {
        GenStarlikeSpec::new(clique, StarlikeSpec::new(branches.iter().copied()).unwrap()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn derived_fields_and_realization() {
        let s = spec(3, &[(1, 3)]);
        assert_eq!(s.vertex_count(), 6);
        assert_eq!(s.max_degree(), 5);
        let g = realize_generalized(&s);
        assert_eq!(g.degrees(), vec![5, 2, 2, 1, 1, 1]);

        let s = spec(4, &[(1, 1), (2, 1), (3, 1)]);
        assert_eq!(s.vertex_count(), 10);
        assert_eq!(s.max_degree(), 6);
        assert_eq!(s.longest_path(), 6);
        let g = realize_generalized(&s);
        assert_eq!(
            longest(&g),
            s.longest_path(),
            "closed-form longest path disagrees with search"
        );
    }

    fn longest(g: &Graph) -> usize {
        crate::graph::longest_path_length(g, Budget::default()).unwrap()
    }

    #[test]
    fn rejects_small_cliques() {
        let star = StarlikeSpec::new([(1, 3)]).unwrap();
        assert!(GenStarlikeSpec::new(2, star.clone()).is_err());
        assert!(GenStarlikeSpec::new(1, star).is_err());
    }

    #[test]
    fn clique_only_classes() {
        let s = spec(4, &[(1, 1), (2, 2)]);
        let counts = generalized_class_counts(&s, 2).unwrap();
        assert_eq!(counts[0], (GenClassId::U, 6));
        assert_eq!(GenClassId::U.sequence(2, 4, 6), vec![6, 3, 3]);
    }

    #[test]
    fn crossing_class_m2() {
        let s = spec(4, &[(2, 3)]);
        let counts: std::collections::BTreeMap<_, _> = generalized_class_counts(&s, 3)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(counts[&GenClassId::M2(1)], 9);
        assert_eq!(GenClassId::M2(1).sequence(3, 4, 6), vec![3, 6, 2, 1]);
    }

    #[test]
    fn collision_regime_matches_brute_force() {
        let s = spec(3, &[(1, 3)]);
        let g = realize_generalized(&s);
        for h in 2..=s.longest_path() {
            let closed = generalized_census(&s, h).unwrap();
            let brute = path_census(&g, h, Budget::default()).unwrap();
            assert_eq!(closed, brute, "h={h}");
        }
    }

    #[test]
    fn low_orders() {
        let s = spec(3, &[(1, 3)]);
        assert_eq!(generalized_invariant(&s, 0, &power(1.0)), 12.0);
        assert_eq!(generalized_invariant(&s, 1, &path_count()), 6.0);
    }

    #[test]
    fn mu_matches_shifted_root() {
        assert_eq!(generalized_mu(&hyper_zagreb(), 2, 3, 3), -252.0);
        assert_eq!(generalized_mu(&path_count(), 4, 3, 5), 0.0);
        for h in 1..8 {
            assert_eq!(
                generalized_mu(&connectivity(), h, 4, 5),
                mu_coefficient(&connectivity(), h, 8)
            );
        }
    }

    #[test]
    fn matches_brute_force() {
        for s in [
            spec(4, &[(1, 1), (2, 2)]),
            spec(5, &[(2, 1), (3, 2)]),
            spec(3, &[(1, 2), (4, 1)]),
        ] {
            let g = realize_generalized(&s);
            for h in 0..=s.longest_path() + 1 {
                for f in [connectivity(), hyper_zagreb(), path_count()] {
                    let a = generalized_invariant(&s, h, &f);
                    let b = evaluate_invariant(&g, h, &f, Budget::default()).unwrap();
                    assert!(close(a, b, 1e-12), "{s} h={h} {}: {a} vs {b}", f.name());
                }
            }
        }
    }
}
