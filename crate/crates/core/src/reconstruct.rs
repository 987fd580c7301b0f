//! Recovering starlike and generalized starlike trees from their invariant
//! profiles, the bounded checks on `f` that make that recovery unique, and
//! exhaustive distinguishability surveys.
//!
//! Comparisons use `|a - b| <= tol * max(1, |a|, |b|)`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::{generalized_family, starlike_family, TreeSpec};
use crate::generalized::{gen_closed_form_value, GenParams, GenStarlikeSpec};
use crate::graph::Budget;
use crate::invariants::{InvariantFunction, InvariantProfile};
use crate::starlike::{closed_form_value, mu_coefficient, BranchParams, StarlikeSpec};

pub const DEFAULT_TOL: f64 = 1e-9;
/// Largest accepted distance between a branch-count estimate and its rounding.
pub const ROUNDING_LIMIT: f64 = 1e-6;
pub const DEFAULT_X_MAX: usize = 64;
pub const DEFAULT_T_MAX: usize = 32;

pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// `g_t(x) = f(x, 2^t, 1) - f(x, 2^(t+1))`
pub fn g_t(f: &InvariantFunction, t: usize, x: u32) -> f64 {
    let mut with_leaf = vec![x];
    with_leaf.extend(std::iter::repeat_n(2, t));
    with_leaf.push(1);
    let mut without = vec![x];
    without.extend(std::iter::repeat_n(2, t + 1));
    f.eval(&with_leaf) - f.eval(&without)
}

/// Left side of the starlike condition (a): `(f(x) - f(y)) / (x - y)`.
pub fn starlike_slope(f: &InvariantFunction, x: u32, y: u32) -> f64 {
    (f.eval(&[x]) - f.eval(&[y])) / (x as f64 - y as f64)
}

/// Left side of the generalized condition (a): `(x f(x) - y f(y)) / (x - y)`.
pub fn generalized_slope(f: &InvariantFunction, x: u32, y: u32) -> f64 {
    (x as f64 * f.eval(&[x]) - y as f64 * f.eval(&[y])) / (x as f64 - y as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Starlike trees: condition (a) on `(f(x) - f(y)) / (x - y)`.
    Starlike,
    /// Generalized starlike trees: condition (a) on `(x f(x) - y f(y)) / (x - y)`.
    Generalized,
}

impl Theorem {
    pub fn number(self) -> u8 {
        match self {
            Theorem::Starlike => 7,
            Theorem::Generalized => 8,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            7 => Some(Theorem::Starlike),
            8 => Some(Theorem::Generalized),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionOutcome {
    pub pass: bool,
    /// First violating point: `(x, y)` for (a), `(t, x)` for (b).
    pub counterexample: Option<(usize, usize)>,
    /// Smallest `|lhs - rhs|` seen over the scanned domain.
    pub min_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub theorem: Theorem,
    pub condition_a: ConditionOutcome,
    pub condition_b: ConditionOutcome,
    pub x_max: usize,
    pub t_max: usize,
    pub tolerance: f64,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.condition_a.pass && self.condition_b.pass
    }

    pub fn to_json(&self) -> Value {
        let verdict = |o: &ConditionOutcome| if o.pass { "pass" } else { "fail" };
        let mut counterexamples = Vec::new();
        if let Some((x, y)) = self.condition_a.counterexample {
            counterexamples.push(json!({"condition": "a", "x": x, "y": y}));
        }
        if let Some((t, x)) = self.condition_b.counterexample {
            counterexamples.push(json!({"condition": "b", "t": t, "x": x}));
        }
        json!({
            "theorem": self.theorem.number(),
            "condition_a": verdict(&self.condition_a),
            "condition_b": verdict(&self.condition_b),
            "counterexamples": counterexamples,
            "min_gap": {"a": self.condition_a.min_gap, "b": self.condition_b.min_gap},
            "domain": {"x_max": self.x_max, "t_max": self.t_max},
            "tolerance": self.tolerance,
        })
    }
}

fn scan<I>(points: I, tol: f64) -> ConditionOutcome
where
    I: Iterator<Item = ((usize, usize), f64, f64)>,
{
    let mut out = ConditionOutcome {
        pass: true,
        counterexample: None,
        min_gap: f64::INFINITY,
    };
    for (at, lhs, rhs) in points {
        let gap = (lhs - rhs).abs();
        out.min_gap = out.min_gap.min(gap);
        // NaN gaps (e.g. inf - inf) count as violations
        let separated = gap > tol * 1f64.max(lhs.abs()).max(rhs.abs());
        if !separated && out.pass {
            out.pass = false;
            out.counterexample = Some(at);
        }
    }
    out
}

fn condition_b(f: &InvariantFunction, x_max: usize, t_max: usize, tol: f64) -> ConditionOutcome {
    let points = (0..=t_max).flat_map(move |t| {
        let base = g_t(f, t, 2);
        (3..=x_max).map(move |x| ((t, x), g_t(f, t, x as u32), base))
    });
    scan(points, tol)
}

fn check(
    theorem: Theorem,
    f: &InvariantFunction,
    x_max: usize,
    t_max: usize,
    tol: f64,
) -> ConditionReport {
    let pairs = (3..=x_max).flat_map(move |x| (x + 1..=x_max).map(move |y| (x, y)));
    let condition_a = match theorem {
        Theorem::Starlike => {
            let rhs = f.eval(&[2]) - f.eval(&[1]);
            scan(
                pairs.map(|(x, y)| ((x, y), starlike_slope(f, x as u32, y as u32), rhs)),
                tol,
            )
        }
        Theorem::Generalized => {
            let rhs = f.eval(&[1]);
            scan(
                pairs.map(|(x, y)| ((x, y), generalized_slope(f, x as u32, y as u32), rhs)),
                tol,
            )
        }
    };
    ConditionReport {
        theorem,
        condition_a,
        condition_b: condition_b(f, x_max, t_max, tol),
        x_max,
        t_max,
        tolerance: tol,
    }
}

/// Bounded check of the starlike distinguishability conditions:
/// (a) over `3 <= x < y <= x_max`, (b) over `3 <= x <= x_max`, `0 <= t <= t_max`.
pub fn check_t7_conditions(
    f: &InvariantFunction,
    x_max: usize,
    t_max: usize,
    tol: f64,
) -> ConditionReport {
    check(Theorem::Starlike, f, x_max, t_max, tol)
}

/// As [`check_t7_conditions`] with the generalized form of condition (a).
pub fn check_t8_conditions(
    f: &InvariantFunction,
    x_max: usize,
    t_max: usize,
    tol: f64,
) -> ConditionReport {
    check(Theorem::Generalized, f, x_max, t_max, tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult {
    pub spec: StarlikeSpec,
    /// `|profile[h] - hI_f(spec)|` for every order in the input profile.
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedReconstruction {
    pub spec: GenStarlikeSpec,
    pub residuals: Vec<f64>,
}

fn unique_candidate(candidates: Vec<usize>, max: usize) -> Result<usize> {
    match candidates.as_slice() {
        [] => Err(Error::NoCandidateRoot { max }),
        [only] => Ok(*only),
        _ => Err(Error::AmbiguousRoot { candidates }),
    }
}

/// Peels off `L_1, L_2, ..` one order at a time: at order `h` the value is
/// `lambda + mu * L_h`, where `lambda` is the closed form with `L_h = 0`.
fn branch_ladder<V>(
    edges: usize,
    root_degree: usize,
    profile: &InvariantProfile,
    mu: impl Fn(usize) -> f64,
    value_with: V,
) -> Result<Vec<usize>>
where
    V: Fn(&[i64], usize) -> f64,
{
    let mut counts: Vec<i64> = Vec::new();
    let mut covered = 0usize;
    let mut h = 0;
    while covered < edges {
        h += 1;
        if h > profile.max_order() {
            return Err(Error::BudgetMismatch {
                what: "edges covered before the profile ran out",
                expected: edges,
                found: covered,
            });
        }
        counts.push(0);
        let lambda = value_with(&counts, h);
        let estimate = (profile.at(h) - lambda) / mu(h);
        let rounded = estimate.round();
        if !estimate.is_finite() || (estimate - rounded).abs() > ROUNDING_LIMIT || rounded < 0.0 {
            return Err(Error::NonIntegerBranchCount { h, estimate });
        }
        let k = rounded as usize;
        counts[h - 1] = k as i64;
        covered += h * k;
    }
    if covered != edges {
        return Err(Error::BudgetMismatch {
            what: "edges covered by recovered branches",
            expected: edges,
            found: covered,
        });
    }
    let branches: usize = counts.iter().map(|&c| c as usize).sum();
    if branches != root_degree {
        return Err(Error::BudgetMismatch {
            what: "branches at the root",
            expected: root_degree,
            found: branches,
        });
    }
    Ok(counts.into_iter().map(|c| c as usize).collect())
}

fn residuals(
    profile: &InvariantProfile,
    tree: &TreeSpec,
    f: &InvariantFunction,
    tol: f64,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(profile.values.len());
    for (h, &given) in profile.values.iter().enumerate() {
        let value = tree.invariant(h, f);
        if !approx_eq(given, value, tol) {
            return Err(Error::ResidualExceeded {
                h,
                residual: (given - value).abs(),
            });
        }
        out.push((given - value).abs());
    }
    Ok(out)
}

/// Recovers the starlike tree on `n` vertices whose `f`-profile is `profile`.
/// The profile must reach at least the longest branch length.
pub fn reconstruct_starlike(
    n: usize,
    profile: &InvariantProfile,
    f: &InvariantFunction,
    tol: f64,
) -> Result<ReconstructionResult> {
    let max_root = n.saturating_sub(1);
    let zeroth = |m: usize| {
        let p = BranchParams {
            n: n as i64,
            m: m as i64,
            counts: Vec::new(),
        };
        closed_form_value(&p, 0, f)
    };
    let candidates: Vec<usize> = (3..=max_root)
        .filter(|&m| approx_eq(profile.at(0), zeroth(m), tol))
        .collect();
    let m = unique_candidate(candidates, max_root)?;

    let counts = branch_ladder(
        n - 1,
        m,
        profile,
        |h| mu_coefficient(f, h, m),
        |counts, h| {
            let p = BranchParams {
                n: n as i64,
                m: m as i64,
                counts: counts.to_vec(),
            };
            closed_form_value(&p, h, f)
        },
    )?;
    let spec = StarlikeSpec::from_counts(&counts)?;
    let residuals = residuals(profile, &TreeSpec::Starlike(spec.clone()), f, tol)?;
    Ok(ReconstructionResult { spec, residuals })
}

/// Recovers a generalized starlike tree on `n` vertices with coalescence
/// degree `r`: the clique size from order 0, then the branches as for
/// starlike trees.
pub fn reconstruct_generalized(
    n: usize,
    r: usize,
    profile: &InvariantProfile,
    f: &InvariantFunction,
    tol: f64,
) -> Result<GeneralizedReconstruction> {
    let params = |clique: usize, counts: &[i64]| GenParams {
        clique: clique as i64,
        star: BranchParams {
            n: (n + 1 - clique) as i64,
            m: (r + 1 - clique) as i64,
            counts: counts.to_vec(),
        },
    };
    let max_clique = r.saturating_sub(2);
    // the starlike part needs at least m edges
    let candidates: Vec<usize> = (3..=max_clique)
        .filter(|&c| n >= c + (r + 1 - c))
        .filter(|&c| {
            approx_eq(
                profile.at(0),
                gen_closed_form_value(&params(c, &[]), 0, f),
                tol,
            )
        })
        .collect();
    let clique = unique_candidate(candidates, max_clique)?;
    let m = r + 1 - clique;

    let counts = branch_ladder(
        n - clique,
        m,
        profile,
        |h| mu_coefficient(f, h, r),
        |counts, h| gen_closed_form_value(&params(clique, counts), h, f),
    )?;
    let spec = GenStarlikeSpec::new(clique, StarlikeSpec::from_counts(&counts)?)?;
    let residuals = residuals(profile, &TreeSpec::Generalized(spec.clone()), f, tol)?;
    Ok(GeneralizedReconstruction { spec, residuals })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Distinction {
    /// First order at which the two values differ beyond tolerance.
    Separated { order: usize, left: f64, right: f64 },
    /// Equal at every order up to the larger longest path.
    Indistinguishable { max_order: usize },
}

impl Distinction {
    pub fn separated(&self) -> bool {
        matches!(self, Distinction::Separated { .. })
    }

    pub fn to_json(&self) -> Value {
        match *self {
            Distinction::Separated { order, left, right } => json!({
                "status": "separated", "h": order, "left": left, "right": right,
            }),
            Distinction::Indistinguishable { max_order } => json!({
                "status": "indistinguishable", "max_order": max_order,
            }),
        }
    }
}

fn check_comparable(a: &TreeSpec, b: &TreeSpec) -> Result<()> {
    match (a, b) {
        (TreeSpec::Starlike(_), TreeSpec::Starlike(_))
        | (TreeSpec::Generalized(_), TreeSpec::Generalized(_)) => {}
        _ => return Err(Error::FamilyMismatch),
    }
    if a.vertex_count() != b.vertex_count() {
        return Err(Error::SizeMismatch {
            left: format!("n={}", a.vertex_count()),
            right: format!("n={}", b.vertex_count()),
        });
    }
    if let (TreeSpec::Generalized(x), TreeSpec::Generalized(y)) = (a, b) {
        if x.max_degree() != y.max_degree() {
            return Err(Error::SizeMismatch {
                left: format!("r={}", x.max_degree()),
                right: format!("r={}", y.max_degree()),
            });
        }
    }
    Ok(())
}

fn first_separation(
    left: &InvariantProfile,
    right: &InvariantProfile,
    max_order: usize,
    tol: f64,
) -> Distinction {
    for h in 0..=max_order {
        let (l, r) = (left.at(h), right.at(h));
        if !approx_eq(l, r, tol) {
            return Distinction::Separated {
                order: h,
                left: l,
                right: r,
            };
        }
    }
    Distinction::Indistinguishable { max_order }
}

/// Smallest order whose invariant separates `a` from `b`. Both must be of the
/// same family and size (and, for generalized trees, the same `r`).
pub fn distinguish(
    a: &TreeSpec,
    b: &TreeSpec,
    f: &InvariantFunction,
    tol: f64,
) -> Result<Distinction> {
    check_comparable(a, b)?;
    let max_order = a.longest_path().max(b.longest_path());
    Ok(first_separation(
        &a.profile(f, max_order),
        &b.profile(f, max_order),
        max_order,
        tol,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurveyFamily {
    Starlike,
    Generalized { max_degree: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyReport {
    pub family: SurveyFamily,
    pub n: usize,
    pub index: String,
    pub tolerance: f64,
    pub specs: usize,
    pub pairs_checked: usize,
    /// Distinct specs whose profiles agree everywhere, in spec order.
    pub collisions: Vec<(TreeSpec, TreeSpec)>,
}

impl SurveyReport {
    pub fn to_json(&self) -> Value {
        let family = match self.family {
            SurveyFamily::Starlike => json!({"kind": "starlike"}),
            SurveyFamily::Generalized { max_degree } => {
                json!({"kind": "generalized", "r": max_degree})
            }
        };
        let collisions: Vec<Value> = self
            .collisions
            .iter()
            .map(|(a, b)| json!([a.to_value(), b.to_value()]))
            .collect();
        json!({
            "family": family,
            "n": self.n,
            "index": self.index,
            "tolerance": self.tolerance,
            "specs": self.specs,
            "pairs_checked": self.pairs_checked,
            "collisions": collisions,
        })
    }
}

/// Runs [`distinguish`] over every unordered pair of the family at size `n`.
/// `budget` caps the number of pairs.
pub fn survey_distinguishability(
    n: usize,
    family: SurveyFamily,
    f: &InvariantFunction,
    tol: f64,
    budget: Budget,
) -> Result<SurveyReport> {
    let specs: Vec<TreeSpec> = match family {
        SurveyFamily::Starlike => starlike_family(n).into_iter().map(Into::into).collect(),
        SurveyFamily::Generalized { max_degree } => generalized_family(n, max_degree)
            .into_iter()
            .map(Into::into)
            .collect(),
    };
    let pairs = specs.len() * specs.len().saturating_sub(1) / 2;
    if pairs as u64 > budget.0 {
        return Err(Error::BudgetExceeded { cap: budget.0 });
    }
    let max_order = specs.iter().map(TreeSpec::longest_path).max().unwrap_or(0);
    let profiles: Vec<InvariantProfile> = specs.iter().map(|s| s.profile(f, max_order)).collect();

    let mut collisions = Vec::new();
    for i in 0..specs.len() {
        for j in i + 1..specs.len() {
            let order = specs[i].longest_path().max(specs[j].longest_path());
            if !first_separation(&profiles[i], &profiles[j], order, tol).separated() {
                collisions.push((specs[i].clone(), specs[j].clone()));
            }
        }
    }
    Ok(SurveyReport {
        family,
        n,
        index: f.name().to_string(),
        tolerance: tol,
        specs: specs.len(),
        pairs_checked: pairs,
        collisions,
    })
}
