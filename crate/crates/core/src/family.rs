//! The two tree families with closed forms, behind one enum, plus exhaustive
//! generation of a family at fixed size.

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::generalized::{
    generalized_invariant, realize_generalized, GenStarlikeSpec, GeneralizedDoc,
};
use crate::graph::Graph;
use crate::invariants::{InvariantFunction, InvariantProfile};
use crate::starlike::{realize_starlike, starlike_invariant, StarlikeSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeSpec {
    Starlike(StarlikeSpec),
    Generalized(GenStarlikeSpec),
}

impl TreeSpec {
    /// Coalesces `K_clique` with a starlike tree. A 2-clique adds a single
    /// pendant edge at the root, so the result is the starlike tree with one
    /// more branch of length 1.
    pub fn generalized(clique: usize, branches: &[(usize, usize)]) -> Result<Self> {
        match clique {
            0 | 1 => Err(Error::InvalidSpec(format!(
                "clique size {clique} is below 2"
            ))),
            2 => {
                let mut pairs = branches.to_vec();
                match pairs.iter_mut().find(|(l, _)| *l == 1) {
                    Some((_, c)) => *c += 1,
                    None => pairs.push((1, 1)),
                }
                Ok(TreeSpec::Starlike(StarlikeSpec::new(pairs)?))
            }
            _ => Ok(TreeSpec::Generalized(GenStarlikeSpec::new(
                clique,
                StarlikeSpec::new(branches.iter().copied())?,
            )?)),
        }
    }

    pub fn starlike_from_json(text: &str) -> Result<Self> {
        Ok(TreeSpec::Starlike(StarlikeSpec::from_json(text)?))
    }

    pub fn generalized_from_json(text: &str) -> Result<Self> {
        let doc: GeneralizedDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        TreeSpec::generalized(doc.clique, &doc.pairs()?)
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            TreeSpec::Starlike(s) => s.vertex_count(),
            TreeSpec::Generalized(g) => g.vertex_count(),
        }
    }

    pub fn max_degree(&self) -> usize {
        match self {
            TreeSpec::Starlike(s) => s.root_degree(),
            TreeSpec::Generalized(g) => g.max_degree(),
        }
    }

    pub fn longest_path(&self) -> usize {
        match self {
            TreeSpec::Starlike(s) => s.longest_path(),
            TreeSpec::Generalized(g) => g.longest_path(),
        }
    }

    pub fn realize(&self) -> Graph {
        match self {
            TreeSpec::Starlike(s) => realize_starlike(s),
            TreeSpec::Generalized(g) => realize_generalized(g),
        }
    }

    /// Closed-form `hI_f`.
    pub fn invariant(&self, h: usize, f: &InvariantFunction) -> f64 {
        match self {
            TreeSpec::Starlike(s) => starlike_invariant(s, h, f),
            TreeSpec::Generalized(g) => generalized_invariant(g, h, f),
        }
    }

    pub fn profile(&self, f: &InvariantFunction, h_max: usize) -> InvariantProfile {
        InvariantProfile::new((0..=h_max).map(|h| self.invariant(h, f)).collect())
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            TreeSpec::Starlike(_) => "starlike",
            TreeSpec::Generalized(_) => "generalized",
        }
    }

    /// The JSON spec document for this tree.
    pub fn to_value(&self) -> Value {
        match self {
            TreeSpec::Starlike(s) => serde_json::to_value(s.to_doc()),
            TreeSpec::Generalized(g) => serde_json::to_value(g.to_doc()),
        }
        .expect("spec documents always serialize")
    }
}

impl fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeSpec::Starlike(s) => s.fmt(f),
            TreeSpec::Generalized(g) => g.fmt(f),
        }
    }
}

impl From<StarlikeSpec> for TreeSpec {
    fn from(s: StarlikeSpec) -> Self {
        TreeSpec::Starlike(s)
    }
}

impl From<GenStarlikeSpec> for TreeSpec {
    fn from(g: GenStarlikeSpec) -> Self {
        TreeSpec::Generalized(g)
    }
}

/// Partitions of `total` into parts, as non-increasing vectors, with the
/// number of parts in `min_parts..=max_parts`. Output is in reverse
/// lexicographic order.
pub fn partitions(total: usize, min_parts: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(
        remaining: usize,
        cap: usize,
        current: &mut Vec<usize>,
        min_parts: usize,
        max_parts: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            if current.len() >= min_parts {
                out.push(current.clone());
            }
            return;
        }
        if current.len() == max_parts {
            return;
        }
        for part in (1..=cap.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, min_parts, max_parts, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if total == 0 {
        if min_parts == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(
        total,
        total,
        &mut Vec::new(),
        min_parts,
        max_parts,
        &mut out,
    );
    out
}

/// Every starlike tree on `n` vertices, sorted.
pub fn starlike_family(n: usize) -> Vec<StarlikeSpec> {
    if n < 4 {
        return Vec::new();
    }
    let mut specs: Vec<StarlikeSpec> = partitions(n - 1, 3, n - 1)
        .iter()
        .map(|p| StarlikeSpec::from_lengths(p).expect("at least three parts"))
        .collect();
    specs.sort();
    specs
}

/// Every generalized starlike tree (clique >= 3) on `n` vertices whose
/// coalescence vertex has degree `r`, sorted.
pub fn generalized_family(n: usize, r: usize) -> Vec<GenStarlikeSpec> {
    let mut specs = Vec::new();
    for clique in 3..=r.saturating_sub(2) {
        let m = r + 1 - clique;
        // the starlike part has n - clique edges spread over m branches
        if n < clique + m {
            continue;
        }
        let star_edges = n - clique;
        for p in partitions(star_edges, m, m) {
            let star = StarlikeSpec::from_lengths(&p).expect("m >= 3 parts");
            specs.push(GenStarlikeSpec::new(clique, star).expect("clique >= 3"));
        }
    }
    specs.sort();
    specs
}
