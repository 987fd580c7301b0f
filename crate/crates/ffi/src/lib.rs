//! C ABI over `pathseq`.
//!
//! Objects are opaque handles created by `*_new` functions and released with
//! the matching `*_free`. Fallible calls return a [`PathseqStatus`] and write
//! their result through an out pointer; on failure a message is available
//! from [`pathseq_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pathseq::{
    check_t7_conditions, check_t8_conditions, distinguish, mu_coefficient, reconstruct_starlike,
    Budget, Distinction, Error, GenStarlikeSpec, Graph, InvariantFunction, InvariantProfile,
    Registry, StarlikeSpec, TreeSpec,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathseqStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidGraph = 3,
    BudgetExceeded = 4,
    InvalidIndex = 5,
    InvalidSpec = 6,
    ReconstructionFailed = 7,
    NotComparable = 8,
    Io = 9,
    Panic = 10,
}

impl From<&Error> for PathseqStatus {
    fn from(e: &Error) -> Self {
        use Error::*;
        match e {
            SelfLoop { .. }
            | DuplicateEdge { .. }
            | Disconnected { .. }
            | VertexOutOfRange { .. }
            | TooFewVertices
            | Parse { .. } => PathseqStatus::InvalidGraph,
            BudgetExceeded { .. } => PathseqStatus::BudgetExceeded,
            UnknownIndex(_) | MissingParameter(_) | AsymmetricFunction { .. } => {
                PathseqStatus::InvalidIndex
            }
            InvalidSpec(_) | OrderOutOfRange { .. } => PathseqStatus::InvalidSpec,
            NoCandidateRoot { .. }
            | AmbiguousRoot { .. }
            | NonIntegerBranchCount { .. }
            | BudgetMismatch { .. }
            | ResidualExceeded { .. } => PathseqStatus::ReconstructionFailed,
            FamilyMismatch | SizeMismatch { .. } => PathseqStatus::NotComparable,
            Io(_) => PathseqStatus::Io,
        }
    }
}

pub struct PathseqGraph {
    inner: Graph,
}

pub struct PathseqIndex {
    inner: InvariantFunction,
}

pub struct PathseqStarlike {
    inner: StarlikeSpec,
}

pub struct PathseqGeneralized {
    inner: GenStarlikeSpec,
}

/// Outcome of a bounded condition scan. Counterexample fields are meaningful
/// only when the matching `pass_*` is false.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct PathseqConditions {
    pub pass_a: bool,
    pub pass_b: bool,
    pub a_x: usize,
    pub a_y: usize,
    pub b_t: usize,
    pub b_x: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pathseq_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

enum Failure {
    Null,
    Utf8,
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn guard<F>(body: F) -> PathseqStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PathseqStatus::Ok,
        Ok(Err(Failure::Null)) => {
            set_last_error("null argument".into());
            PathseqStatus::NullArgument
        }
        Ok(Err(Failure::Utf8)) => {
            set_last_error("string argument is not valid UTF-8".into());
            PathseqStatus::InvalidUtf8
        }
        Ok(Err(Failure::Domain(e))) => {
            set_last_error(e.to_string());
            PathseqStatus::from(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(msg);
            PathseqStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null)
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8)
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null);
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Builds a graph from `edge_count` pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_graph_new(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out_graph: *mut *mut PathseqGraph,
) -> PathseqStatus {
    guard(|| {
        let dst = out(out_graph)?;
        let len = edge_count
            .checked_mul(2)
            .ok_or_else(|| Error::InvalidSpec("edge count overflows".into()))?;
        let flat = slice(edges, len)?;
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        *dst = boxed(PathseqGraph {
            inner: Graph::new(n, &pairs)?,
        });
        Ok(())
    })
}

/// Parses the `n e` header plus `u v` lines edge-list format.
///
/// # Safety
/// `edge_list` must be a nul-terminated string; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_graph_parse(
    edge_list: *const c_char,
    out_graph: *mut *mut PathseqGraph,
) -> PathseqStatus {
    guard(|| {
        let dst = out(out_graph)?;
        *dst = boxed(PathseqGraph {
            inner: Graph::parse_edge_list(text(edge_list)?)?,
        });
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn pathseq_graph_free(graph: *mut PathseqGraph) {
    free(graph)
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pathseq_graph_vertex_count(graph: *const PathseqGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// # Safety
/// Handles must be live; `out_length` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_graph_longest_path(
    graph: *const PathseqGraph,
    budget: u64,
    out_length: *mut usize,
) -> PathseqStatus {
    guard(|| {
        let g = deref(graph)?;
        *out(out_length)? = pathseq::longest_path_length(&g.inner, Budget(budget))?;
        Ok(())
    })
}

/// Order-`h` invariant by path enumeration.
///
/// # Safety
/// Handles must be live; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_graph_invariant(
    graph: *const PathseqGraph,
    index: *const PathseqIndex,
    h: usize,
    budget: u64,
    out_value: *mut f64,
) -> PathseqStatus {
    guard(|| {
        let (g, f) = (deref(graph)?, deref(index)?);
        *out(out_value)? = pathseq::evaluate_invariant(&g.inner, h, &f.inner, Budget(budget))?;
        Ok(())
    })
}

/// Writes `h_max + 1` values (orders `0..=h_max`) into `out_values`.
///
/// # Safety
/// `out_values` must have room for `h_max + 1` doubles.
#[no_mangle]
pub unsafe extern "C" fn pathseq_graph_profile(
    graph: *const PathseqGraph,
    index: *const PathseqIndex,
    h_max: usize,
    budget: u64,
    out_values: *mut f64,
) -> PathseqStatus {
    guard(|| {
        let (g, f) = (deref(graph)?, deref(index)?);
        if out_values.is_null() {
            return Err(Failure::Null);
        }
        let p = pathseq::invariant_profile(&g.inner, &f.inner, h_max, Budget(budget))?;
        ptr::copy_nonoverlapping(p.values.as_ptr(), out_values, p.values.len());
        Ok(())
    })
}

/// Resolves an index identifier such as `connectivity` or `power:0.5`.
/// `seed` drives the symmetry trials for parameterized indices.
///
/// # Safety
/// `id` must be a nul-terminated string; `out_index` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_index_new(
    id: *const c_char,
    seed: u64,
    out_index: *mut *mut PathseqIndex,
) -> PathseqStatus {
    guard(|| {
        let dst = out(out_index)?;
        let f = Registry::new(seed).resolve(text(id)?)?;
        *dst = boxed(PathseqIndex { inner: f });
        Ok(())
    })
}

/// # Safety
/// `index` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pathseq_index_free(index: *mut PathseqIndex) {
    free(index)
}

/// # Safety
/// `degrees` must point to `len` values; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_index_eval(
    index: *const PathseqIndex,
    degrees: *const u32,
    len: usize,
    out_value: *mut f64,
) -> PathseqStatus {
    guard(|| {
        let f = deref(index)?;
        *out(out_value)? = f.inner.eval(slice(degrees, len)?);
        Ok(())
    })
}

/// Starlike tree from branch counts: `counts[i]` branches of length `i + 1`.
///
/// # Safety
/// `counts` must point to `len` values; `out_spec` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_starlike_new(
    counts: *const usize,
    len: usize,
    out_spec: *mut *mut PathseqStarlike,
) -> PathseqStatus {
    guard(|| {
        let dst = out(out_spec)?;
        *dst = boxed(PathseqStarlike {
            inner: StarlikeSpec::from_counts(slice(counts, len)?)?,
        });
        Ok(())
    })
}

/// # Safety
/// `json` must be a nul-terminated string; `out_spec` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_starlike_from_json(
    json: *const c_char,
    out_spec: *mut *mut PathseqStarlike,
) -> PathseqStatus {
    guard(|| {
        let dst = out(out_spec)?;
        *dst = boxed(PathseqStarlike {
            inner: StarlikeSpec::from_json(text(json)?)?,
        });
        Ok(())
    })
}

/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pathseq_starlike_free(spec: *mut PathseqStarlike) {
    free(spec)
}

/// Number of branches of the given length, or 0 for a null handle.
///
/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pathseq_starlike_branch_count(
    spec: *const PathseqStarlike,
    length: usize,
) -> usize {
    spec.as_ref().map_or(0, |s| s.inner.count(length))
}

/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pathseq_starlike_vertex_count(spec: *const PathseqStarlike) -> usize {
    spec.as_ref().map_or(0, |s| s.inner.vertex_count())
}

/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pathseq_starlike_longest_path(spec: *const PathseqStarlike) -> usize {
    spec.as_ref().map_or(0, |s| s.inner.longest_path())
}

/// Closed-form order-`h` invariant.
///
/// # Safety
/// Handles must be live; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_starlike_invariant(
    spec: *const PathseqStarlike,
    index: *const PathseqIndex,
    h: usize,
    out_value: *mut f64,
) -> PathseqStatus {
    guard(|| {
        let (s, f) = (deref(spec)?, deref(index)?);
        *out(out_value)? = pathseq::starlike_invariant(&s.inner, h, &f.inner);
        Ok(())
    })
}

/// # Safety
/// `spec` must be live; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_starlike_realize(
    spec: *const PathseqStarlike,
    out_graph: *mut *mut PathseqGraph,
) -> PathseqStatus {
    guard(|| {
        let s = deref(spec)?;
        *out(out_graph)? = boxed(PathseqGraph {
            inner: pathseq::realize_starlike(&s.inner),
        });
        Ok(())
    })
}

/// Coalesces `K_clique` with a copy of `star` at its root.
///
/// # Safety
/// `star` must be live; `out_spec` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_generalized_new(
    clique: usize,
    star: *const PathseqStarlike,
    out_spec: *mut *mut PathseqGeneralized,
) -> PathseqStatus {
    guard(|| {
        let s = deref(star)?;
        let dst = out(out_spec)?;
        *dst = boxed(PathseqGeneralized {
            inner: GenStarlikeSpec::new(clique, s.inner.clone())?,
        });
        Ok(())
    })
}

/// # Safety
/// `spec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pathseq_generalized_free(spec: *mut PathseqGeneralized) {
    free(spec)
}

/// # Safety
/// Handles must be live; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_generalized_invariant(
    spec: *const PathseqGeneralized,
    index: *const PathseqIndex,
    h: usize,
    out_value: *mut f64,
) -> PathseqStatus {
    guard(|| {
        let (s, f) = (deref(spec)?, deref(index)?);
        *out(out_value)? = pathseq::generalized_invariant(&s.inner, h, &f.inner);
        Ok(())
    })
}

/// # Safety
/// `spec` must be live; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_generalized_realize(
    spec: *const PathseqGeneralized,
    out_graph: *mut *mut PathseqGraph,
) -> PathseqStatus {
    guard(|| {
        let s = deref(spec)?;
        *out(out_graph)? = boxed(PathseqGraph {
            inner: pathseq::realize_generalized(&s.inner),
        });
        Ok(())
    })
}

/// Coefficient of `L_h` in the order-`h` starlike invariant at root degree `m`.
///
/// # Safety
/// `index` must be live; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_mu_coefficient(
    index: *const PathseqIndex,
    h: usize,
    m: usize,
    out_value: *mut f64,
) -> PathseqStatus {
    guard(|| {
        let f = deref(index)?;
        if h == 0 || m < 3 {
            return Err(
                Error::InvalidSpec(format!("need h >= 1 and m >= 3, got h={h}, m={m}")).into(),
            );
        }
        *out(out_value)? = mu_coefficient(&f.inner, h, m);
        Ok(())
    })
}

/// Recovers a starlike tree on `n` vertices from `len` profile values.
///
/// # Safety
/// `values` must point to `len` doubles; `out_spec` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_reconstruct_starlike(
    n: usize,
    values: *const f64,
    len: usize,
    index: *const PathseqIndex,
    tol: f64,
    out_spec: *mut *mut PathseqStarlike,
) -> PathseqStatus {
    guard(|| {
        let f = deref(index)?;
        let dst = out(out_spec)?;
        let profile = InvariantProfile::new(slice(values, len)?.to_vec());
        let res = reconstruct_starlike(n, &profile, &f.inner, tol)?;
        *dst = boxed(PathseqStarlike { inner: res.spec });
        Ok(())
    })
}

/// First order separating two starlike trees. `out_order` is written only
/// when `*out_separated` is true.
///
/// # Safety
/// Handles must be live; out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_distinguish_starlike(
    a: *const PathseqStarlike,
    b: *const PathseqStarlike,
    index: *const PathseqIndex,
    tol: f64,
    out_separated: *mut bool,
    out_order: *mut usize,
) -> PathseqStatus {
    guard(|| {
        let (a, b, f) = (deref(a)?, deref(b)?, deref(index)?);
        let (sep, order) = (out(out_separated)?, out(out_order)?);
        let d = distinguish(
            &TreeSpec::Starlike(a.inner.clone()),
            &TreeSpec::Starlike(b.inner.clone()),
            &f.inner,
            tol,
        )?;
        match d {
            Distinction::Separated { order: h, .. } => {
                *sep = true;
                *order = h;
            }
            Distinction::Indistinguishable { .. } => *sep = false,
        }
        Ok(())
    })
}

/// Bounded scan of the distinguishability conditions; `theorem` is 7
/// (starlike) or 8 (generalized).
///
/// # Safety
/// `index` must be live; `out_report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pathseq_check_conditions(
    index: *const PathseqIndex,
    theorem: u8,
    x_max: usize,
    t_max: usize,
    tol: f64,
    out_report: *mut PathseqConditions,
) -> PathseqStatus {
    guard(|| {
        let f = deref(index)?;
        let dst = out(out_report)?;
        let r = match theorem {
            7 => check_t7_conditions(&f.inner, x_max, t_max, tol),
            8 => check_t8_conditions(&f.inner, x_max, t_max, tol),
            other => {
                return Err(
                    Error::InvalidSpec(format!("theorem must be 7 or 8, got {other}")).into(),
                )
            }
        };
        let (a_x, a_y) = r.condition_a.counterexample.unwrap_or((0, 0));
        let (b_t, b_x) = r.condition_b.counterexample.unwrap_or((0, 0));
        *dst = PathseqConditions {
            pass_a: r.condition_a.pass,
            pass_b: r.condition_b.pass,
            a_x,
            a_y,
            b_t,
            b_x,
        };
        Ok(())
    })
}
