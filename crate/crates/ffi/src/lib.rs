//! C ABI for qturan.
//!
//! Graphs are opaque `QtGraph` handles released with `qt_graph_free`.
//! Every fallible call returns a `QtStatus`; on failure the message is
//! available from `qt_last_error` on the same thread. Strings handed out by
//! the library are released with `qt_string_free`. Panics never cross the
//! boundary.

use qturan::graph::Graph;
use qturan::graph6::{read_graph6, write_graph6};
use qturan::rational::Rational;
use qturan::reduction::{reduce_with, Algorithm, ReductionParams};
use qturan::spectral::{lambda_radius, q_multipartite_exact, q_radius};
use qturan::substructure::{count_cliques, edit_distance_to_turan};
use qturan::verify::{run_suite, Suite, SuiteParams};
use qturan::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    OutOfRange = 4,
    ProfileLimit = 5,
    Solver = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque graph handle.
pub struct QtGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> QtStatus {
    match e {
        Error::VertexOutOfRange { .. } | Error::TooManyVertices { .. } => QtStatus::OutOfRange,
        Error::Graph6(_) | Error::EdgeList(_) | Error::Hypergraph(_) => QtStatus::Parse,
        Error::ProfileLimit { .. } => QtStatus::ProfileLimit,
        Error::Solver(_) => QtStatus::Solver,
        Error::InvalidParameter(_) | Error::UnknownSuite(_) => QtStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (QtStatus, String)>) -> QtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QtStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QtStatus::Panic
        }
    }
}

fn lib(e: Error) -> (QtStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (QtStatus, String) {
    (QtStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const QtGraph) -> Result<&'a Graph, (QtStatus, String)> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, (QtStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (QtStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (QtStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = v;
    Ok(())
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), (QtStatus, String)> {
    let c = CString::new(s).map_err(|_| (QtStatus::Panic, "string with nul byte".to_string()))?;
    write_out(out, c.into_raw())
}

/// Message of the last failed call on this thread (empty after success).
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn qt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses graph6 into a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qt_graph_from_graph6(text: *const c_char, out: *mut *mut QtGraph) -> QtStatus {
    guard(|| {
        let g = read_graph6(str_arg(text, "text")?).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(QtGraph(g))))
    })
}

/// Builds a graph on `n` vertices from `m` pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must point to `2 * m` values (may be null when `m = 0`).
#[no_mangle]
pub unsafe extern "C" fn qt_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut QtGraph,
) -> QtStatus {
    guard(|| {
        let flat: &[usize] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks(2).map(|p| (p[0], p[1])).collect();
        let g = Graph::from_edges(n, &pairs).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(QtGraph(g))))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qt_graph_free(g: *mut QtGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qt_graph_order(g: *const QtGraph, out: *mut usize) -> QtStatus {
    guard(|| write_out(out, graph_ref(g)?.order()))
}

/// # Safety
/// `g` must be a live handle, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qt_graph_edge_count(g: *const QtGraph, out: *mut usize) -> QtStatus {
    guard(|| write_out(out, graph_ref(g)?.edge_count()))
}

/// Writes graph6 plus a nul into `buf`. `needed` (optional) receives the
/// required size including the nul; a short buffer gives `BufferTooSmall`.
///
/// # Safety
/// `buf` must hold `len` bytes (may be null when `len = 0`).
#[no_mangle]
pub unsafe extern "C" fn qt_graph_to_graph6(
    g: *const QtGraph,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> QtStatus {
    guard(|| {
        let s = write_graph6(graph_ref(g)?);
        let size = s.len() + 1;
        if !needed.is_null() {
            *needed = size;
        }
        if buf.is_null() || len < size {
            return Err((QtStatus::BufferTooSmall, format!("graph6 needs {size} bytes")));
        }
        ptr::copy_nonoverlapping(s.as_ptr(), buf.cast(), s.len());
        *buf.add(s.len()) = 0;
        Ok(())
    })
}

/// Signless Laplacian spectral radius and its residual.
///
/// # Safety
/// `g` must be a live handle; `value` valid; `residual` may be null.
#[no_mangle]
pub unsafe extern "C" fn qt_q_radius(g: *const QtGraph, tol: f64, value: *mut f64, residual: *mut f64) -> QtStatus {
    guard(|| {
        let r = q_radius(graph_ref(g)?, tol).map_err(lib)?;
        if !residual.is_null() {
            *residual = r.residual;
        }
        write_out(value, r.value)
    })
}

/// Adjacency spectral radius and its residual.
///
/// # Safety
/// As `qt_q_radius`.
#[no_mangle]
pub unsafe extern "C" fn qt_lambda_radius(g: *const QtGraph, tol: f64, value: *mut f64, residual: *mut f64) -> QtStatus {
    guard(|| {
        let r = lambda_radius(graph_ref(g)?, tol).map_err(lib)?;
        if !residual.is_null() {
            *residual = r.residual;
        }
        write_out(value, r.value)
    })
}

/// `q` of the complete multipartite graph with `k` part sizes.
///
/// # Safety
/// `sizes` must point to `k` values.
#[no_mangle]
pub unsafe extern "C" fn qt_q_multipartite(sizes: *const usize, k: usize, out: *mut f64) -> QtStatus {
    guard(|| {
        if sizes.is_null() && k > 0 {
            return Err(null("sizes"));
        }
        let s = if k == 0 { &[][..] } else { std::slice::from_raw_parts(sizes, k) };
        write_out(out, q_multipartite_exact(s).map_err(lib)?)
    })
}

/// Number of `r`-cliques.
///
/// # Safety
/// `g` must be a live handle, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qt_count_cliques(g: *const QtGraph, r: usize, out: *mut u64) -> QtStatus {
    guard(|| write_out(out, count_cliques(graph_ref(g)?, r)))
}

/// Edit distance to the balanced complete `k`-partite graph.
///
/// # Safety
/// `g` must be a live handle, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qt_edit_distance(g: *const QtGraph, k: usize, out: *mut usize) -> QtStatus {
    guard(|| write_out(out, edit_distance_to_turan(graph_ref(g)?, k).map_err(lib)?))
}

/// Runs a reduction (`algorithm` 1 or 2) and returns its trace as JSON.
/// Parameters are fractions `num/den`.
///
/// # Safety
/// `g` must be a live handle, `out` valid; free the string with `qt_string_free`.
#[no_mangle]
pub unsafe extern "C" fn qt_reduce_json(
    g: *const QtGraph,
    algorithm: u32,
    gamma_num: i64,
    gamma_den: i64,
    alpha_num: i64,
    alpha_den: i64,
    beta_num: i64,
    beta_den: i64,
    out: *mut *mut c_char,
) -> QtStatus {
    guard(|| {
        let frac = |n: i64, d: i64| {
            if d == 0 {
                Err((QtStatus::InvalidArgument, "zero denominator".to_string()))
            } else {
                Ok(Rational::new(n, d))
            }
        };
        let alg = match algorithm {
            1 => Algorithm::One,
            2 => Algorithm::Two,
            a => return Err((QtStatus::InvalidArgument, format!("algorithm must be 1 or 2, got {a}"))),
        };
        let p = ReductionParams::new(
            frac(gamma_num, gamma_den)?,
            frac(alpha_num, alpha_den)?,
            frac(beta_num, beta_den)?,
        );
        let trace = reduce_with(graph_ref(g)?, &p, alg).map_err(lib)?;
        let json = serde_json::to_string(&trace).map_err(|e| (QtStatus::Panic, e.to_string()))?;
        give_string(out, json)
    })
}

/// Runs a verification suite and returns its report as JSON; `k = 0`
/// means no `k`.
///
/// # Safety
/// `suite` must be a nul-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qt_verify_json(suite: *const c_char, n_max: usize, k: usize, out: *mut *mut c_char) -> QtStatus {
    guard(|| {
        let suite: Suite = str_arg(suite, "suite")?.parse().map_err(lib)?;
        let params = SuiteParams {
            k: (k > 0).then_some(k),
            jobs: 1,
            ..Default::default()
        };
        let rep = run_suite(suite, n_max, &params).map_err(lib)?;
        let json = serde_json::to_string(&rep).map_err(|e| (QtStatus::Panic, e.to_string()))?;
        give_string(out, json)
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
