//! Invariant functions `f` on path degree sequences and the evaluation
//! `hI_f(G) = sum over length-h paths of f(d_0, .., d_h)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{longest_path_length, path_census, path_censuses, Budget, Census, Graph};

/// Number of random sequences tried by [`check_symmetry`].
pub const SYMMETRY_TRIALS: usize = 1000;
const SYMMETRY_MAX_LEN: usize = 9;
const SYMMETRY_MAX_DEGREE: u32 = 16;
// float products reassociate under reversal
const SYMMETRY_REL_TOL: f64 = 1e-12;

type EvalFn = dyn Fn(&[u32]) -> f64 + Send + Sync;

/// A real-valued function of a degree sequence, required to be invariant
/// under reversal of the sequence.
#[derive(Clone)]
pub struct InvariantFunction {
    name: String,
    eval: Arc<EvalFn>,
}

impl InvariantFunction {
    /// Wraps a closure without checking symmetry; see [`Registry::register`]
    /// for the checked path.
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&[u32]) -> f64 + Send + Sync + 'static,
    {
        InvariantFunction {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, degrees: &[u32]) -> f64 {
        (self.eval)(degrees)
    }
}

impl fmt::Debug for InvariantFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InvariantFunction")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

fn product(xs: &[u32]) -> f64 {
    xs.iter().map(|&x| x as f64).product()
}

pub fn connectivity() -> InvariantFunction {
    InvariantFunction::new("connectivity", |xs| 1.0 / product(xs).sqrt())
}

pub fn sum_connectivity() -> InvariantFunction {
    InvariantFunction::new("sum-connectivity", |xs| {
        let s: f64 = xs.iter().map(|&x| x as f64).sum();
        1.0 / s.sqrt()
    })
}

pub fn hyper_zagreb() -> InvariantFunction {
    InvariantFunction::new("hyper-zagreb", |xs| {
        let p = product(xs);
        p * p
    })
}

pub fn path_count() -> InvariantFunction {
    InvariantFunction::new("path-count", |_| 1.0)
}

pub fn power(alpha: f64) -> InvariantFunction {
    InvariantFunction::new(format!("power:{alpha}"), move |xs| {
        xs.iter().map(|&x| (x as f64).powf(alpha)).product()
    })
}

/// Built-in index by name. `power` needs its exponent in `param`.
pub fn builtin(name: &str, param: Option<f64>) -> Result<InvariantFunction> {
    match name {
        "connectivity" => Ok(connectivity()),
        "sum-connectivity" => Ok(sum_connectivity()),
        "hyper-zagreb" => Ok(hyper_zagreb()),
        "path-count" => Ok(path_count()),
        "power" => param
            .map(power)
            .ok_or_else(|| Error::MissingParameter(name.to_string())),
        other => Err(Error::UnknownIndex(other.to_string())),
    }
}

/// Parses a CLI-facing identifier such as `connectivity` or `power:0.5`.
pub fn parse_index(id: &str) -> Result<InvariantFunction> {
    match id.split_once(':') {
        Some(("power", alpha)) => {
            let alpha: f64 = alpha
                .trim()
                .parse()
                .map_err(|_| Error::MissingParameter("power".into()))?;
            if !alpha.is_finite() {
                return Err(Error::MissingParameter("power".into()));
            }
            builtin("power", Some(alpha))
        }
        Some(_) => Err(Error::UnknownIndex(id.to_string())),
        None => builtin(id, None),
    }
}

/// Randomized symmetry check: `f(s) == f(reverse(s))` up to 1e-12 relative on
/// [`SYMMETRY_TRIALS`] sequences of length 1..=9. Fails on the first violation.
pub fn check_symmetry(f: &InvariantFunction, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SYMMETRY_TRIALS {
        let len = rng.gen_range(1..=SYMMETRY_MAX_LEN);
        let seq: Vec<u32> = (0..len)
            .map(|_| rng.gen_range(1..=SYMMETRY_MAX_DEGREE))
            .collect();
        let rev: Vec<u32> = seq.iter().rev().copied().collect();
        let (a, b) = (f.eval(&seq), f.eval(&rev));
        let same = a == b
            || (a.is_nan() && b.is_nan())
            || (a - b).abs() <= SYMMETRY_REL_TOL * a.abs().max(b.abs());
        if !same {
            return Err(Error::AsymmetricFunction {
                name: f.name().to_string(),
                sequence: seq,
            });
        }
    }
    Ok(())
}

/// Named invariant functions. User functions go through [`check_symmetry`]
/// before they are accepted.
#[derive(Debug, Clone)]
pub struct Registry {
    functions: BTreeMap<String, InvariantFunction>,
    seed: u64,
}

impl Registry {
    pub fn new(seed: u64) -> Self {
        let mut functions = BTreeMap::new();
        for f in [
            connectivity(),
            sum_connectivity(),
            hyper_zagreb(),
            path_count(),
        ] {
            functions.insert(f.name().to_string(), f);
        }
        Registry { functions, seed }
    }

    pub fn register(&mut self, f: InvariantFunction) -> Result<()> {
        check_symmetry(&f, self.seed)?;
        self.functions.insert(f.name().to_string(), f);
        Ok(())
    }

    /// Looks up a registered name, or builds and validates a `power:<alpha>` index.
    pub fn resolve(&mut self, id: &str) -> Result<InvariantFunction> {
        if let Some(f) = self.functions.get(id) {
            return Ok(f.clone());
        }
        let f = parse_index(id)?;
        self.register(f.clone())?;
        Ok(f)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.functions.keys().map(String::as_str)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::new(0)
    }
}

/// `sum over census entries of count * f(class)`.
pub fn weighted_sum(census: &Census, f: &InvariantFunction) -> f64 {
    census.iter().fold(0.0, |acc, (class, count)| {
        acc + count as f64 * f.eval(class.degrees())
    })
}

pub fn evaluate_invariant(
    graph: &Graph,
    h: usize,
    f: &InvariantFunction,
    budget: Budget,
) -> Result<f64> {
    Ok(weighted_sum(&path_census(graph, h, budget)?, f))
}

/// Values of `hI_f` for `h = 0..=h_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantProfile {
    pub values: Vec<f64>,
}

impl InvariantProfile {
    pub fn new(values: Vec<f64>) -> Self {
        InvariantProfile { values }
    }

    pub fn max_order(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// Value at order `h`; zero past the end.
    pub fn at(&self, h: usize) -> f64 {
        self.values.get(h).copied().unwrap_or(0.0)
    }
}

pub fn invariant_profile(
    graph: &Graph,
    f: &InvariantFunction,
    h_max: usize,
    budget: Budget,
) -> Result<InvariantProfile> {
    // Orders past the longest path are zero; no need to search for them.
    let rho = longest_path_length(graph, budget)?;
    let censuses = path_censuses(graph, h_max.min(rho), budget)?;
    let mut values: Vec<f64> = censuses.iter().map(|c| weighted_sum(c, f)).collect();
    values.resize(h_max + 1, 0.0);
    Ok(InvariantProfile { values })
}
