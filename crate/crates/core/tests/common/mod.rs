//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the library's path search or closed forms.

#![allow(dead_code)]

use std::collections::BTreeMap;

use pathseq::{GenStarlikeSpec, InvariantFunction, StarlikeSpec};

pub type Adjacency = Vec<Vec<usize>>;
pub type RefCensus = BTreeMap<Vec<u32>, u64>;
/// Library index paired with its reference definition.
pub type IndexPair = (InvariantFunction, fn(&[u32]) -> f64);

fn link(adj: &mut Adjacency, u: usize, v: usize) {
    adj[u].push(v);
    adj[v].push(u);
}

fn add_branches(adj: &mut Adjacency, root: usize, lengths: &[usize]) {
    for &len in lengths {
        let mut prev = root;
        for _ in 0..len {
            adj.push(Vec::new());
            let v = adj.len() - 1;
            link(adj, prev, v);
            prev = v;
        }
    }
}

/// Root is vertex 0.
pub fn starlike_adjacency(lengths: &[usize]) -> Adjacency {
    let mut adj = vec![Vec::new()];
    add_branches(&mut adj, 0, lengths);
    adj
}

/// Clique on vertices `0..clique`; vertex 0 also carries the branches.
pub fn generalized_adjacency(clique: usize, lengths: &[usize]) -> Adjacency {
    let mut adj = vec![Vec::new(); clique];
    for u in 0..clique {
        for v in u + 1..clique {
            link(&mut adj, u, v);
        }
    }
    add_branches(&mut adj, 0, lengths);
    adj
}

pub fn branch_lengths(spec: &StarlikeSpec) -> Vec<usize> {
    spec.branches()
        .flat_map(|(len, count)| std::iter::repeat_n(len, count))
        .collect()
}

pub fn starlike_graph(spec: &StarlikeSpec) -> Adjacency {
    starlike_adjacency(&branch_lengths(spec))
}

pub fn generalized_graph(spec: &GenStarlikeSpec) -> Adjacency {
    generalized_adjacency(spec.clique(), &branch_lengths(spec.star()))
}

pub fn canonical(seq: Vec<u32>) -> Vec<u32> {
    let rev: Vec<u32> = seq.iter().rev().copied().collect();
    seq.min(rev)
}

/// Censuses of every order, indexed by path length, up to the longest path.
pub fn all_censuses(adj: &Adjacency) -> Vec<RefCensus> {
    fn walk(adj: &Adjacency, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<RefCensus>) {
        let (first, last) = (path[0], *path.last().unwrap());
        if path.len() == 1 || first < last {
            let h = path.len() - 1;
            if out.len() <= h {
                out.resize_with(h + 1, BTreeMap::new);
            }
            let degrees = path.iter().map(|&v| adj[v].len() as u32).collect();
            *out[h].entry(canonical(degrees)).or_insert(0) += 1;
        }
        for &next in &adj[last] {
            if !on[next] {
                on[next] = true;
                path.push(next);
                walk(adj, path, on, out);
                path.pop();
                on[next] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; adj.len()];
    for s in 0..adj.len() {
        on[s] = true;
        walk(adj, &mut vec![s], &mut on, &mut out);
        on[s] = false;
    }
    out
}

pub fn weighted(census: &RefCensus, f: fn(&[u32]) -> f64) -> f64 {
    census.iter().map(|(seq, &c)| c as f64 * f(seq)).sum()
}

/// Profile for orders `0..=longest path`.
pub fn profile(adj: &Adjacency, f: fn(&[u32]) -> f64) -> Vec<f64> {
    all_censuses(adj).iter().map(|c| weighted(c, f)).collect()
}

fn product(xs: &[u32]) -> f64 {
    xs.iter().map(|&x| x as f64).product()
}

pub fn ref_connectivity(xs: &[u32]) -> f64 {
    1.0 / product(xs).sqrt()
}

pub fn ref_sum_connectivity(xs: &[u32]) -> f64 {
    1.0 / (xs.iter().map(|&x| x as f64).sum::<f64>()).sqrt()
}

pub fn ref_hyper_zagreb(xs: &[u32]) -> f64 {
    product(xs).powi(2)
}

pub fn ref_path_count(_: &[u32]) -> f64 {
    1.0
}

pub fn indices() -> Vec<IndexPair> {
    vec![
        (
            pathseq::invariants::connectivity(),
            ref_connectivity as fn(&[u32]) -> f64,
        ),
        (
            pathseq::invariants::sum_connectivity(),
            ref_sum_connectivity,
        ),
        (pathseq::invariants::hyper_zagreb(), ref_hyper_zagreb),
        (pathseq::invariants::path_count(), ref_path_count),
    ]
}

/// Indices that satisfy the distinguishability conditions.
pub fn qualifying() -> Vec<IndexPair> {
    indices().into_iter().take(3).collect()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// Count vectors `L_1..L_max_len` with entries `<= max_count` and
/// `3 <= sum <= max_root`.
pub fn count_vectors(max_len: usize, max_count: usize, max_root: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; max_len];
    loop {
        let m: usize = cur.iter().sum();
        if (3..=max_root).contains(&m) {
            let mut v = cur.clone();
            while v.last() == Some(&0) {
                v.pop();
            }
            out.push(v);
        }
        let mut i = 0;
        while i < max_len && cur[i] == max_count {
            cur[i] = 0;
            i += 1;
        }
        if i == max_len {
            break;
        }
        cur[i] += 1;
    }
    out
}
