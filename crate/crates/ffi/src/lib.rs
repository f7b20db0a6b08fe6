//! C ABI for `pigraph`.
//!
//! Graphs and recognition outcomes are opaque heap handles released with
//! their `_free` function. Every fallible call returns a [`PigraphStatus`];
//! arrays are copied into caller buffers, and when a buffer is too short the
//! required length is still stored through `written`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pigraph::{format, Error, Graph, RecognitionOutcome, Rejection};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PigraphStatus {
    Ok = 0,
    /// The answer is no: the graph is rejected or the ordering is invalid.
    Rejected = 1,
    NullPointer = 2,
    VertexOutOfRange = 3,
    SelfLoop = 4,
    DuplicateEdge = 5,
    NotPermutation = 6,
    ParseError = 7,
    BufferTooSmall = 8,
    InvalidUtf8 = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PigraphStage {
    Accepted = 0,
    NotCocomparability = 1,
    AuxNotBipartite = 2,
    PhiUnsat = 3,
}

pub struct PigraphGraph {
    inner: Graph,
}

pub struct PigraphOutcome {
    inner: RecognitionOutcome,
}

fn status_of(e: &Error) -> PigraphStatus {
    match e {
        Error::VertexOutOfRange { .. } => PigraphStatus::VertexOutOfRange,
        Error::SelfLoop(_) => PigraphStatus::SelfLoop,
        Error::DuplicateEdge(..) => PigraphStatus::DuplicateEdge,
        Error::NotPermutation { .. } => PigraphStatus::NotPermutation,
        Error::Parse { .. } => PigraphStatus::ParseError,
        _ => PigraphStatus::Internal,
    }
}

fn guarded(f: impl FnOnce() -> PigraphStatus) -> PigraphStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(PigraphStatus::Internal)
}

/// Copies `data` into `buf` if it fits; always reports the length.
unsafe fn copy_out(data: &[usize], buf: *mut usize, len: usize, written: *mut usize) -> PigraphStatus {
    if written.is_null() || (buf.is_null() && len > 0) {
        return PigraphStatus::NullPointer;
    }
    *written = data.len();
    if data.len() > len {
        return PigraphStatus::BufferTooSmall;
    }
    if !data.is_empty() {
        ptr::copy_nonoverlapping(data.as_ptr(), buf, data.len());
    }
    PigraphStatus::Ok
}

/// A short static description of `status`.
#[no_mangle]
pub extern "C" fn pigraph_status_message(status: PigraphStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PigraphStatus::Ok => c"ok",
        PigraphStatus::Rejected => c"rejected",
        PigraphStatus::NullPointer => c"null pointer argument",
        PigraphStatus::VertexOutOfRange => c"vertex out of range",
        PigraphStatus::SelfLoop => c"self-loop",
        PigraphStatus::DuplicateEdge => c"duplicate edge",
        PigraphStatus::NotPermutation => c"ordering is not a permutation",
        PigraphStatus::ParseError => c"parse error",
        PigraphStatus::BufferTooSmall => c"buffer too small",
        PigraphStatus::InvalidUtf8 => c"text is not valid UTF-8",
        PigraphStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Builds a graph on `n` vertices from `m` edges given as `2m` endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (or be null when `m == 0`)
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pigraph_graph_new(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut PigraphGraph,
) -> PigraphStatus {
    guarded(|| {
        if out.is_null() || (edges.is_null() && m > 0) {
            return PigraphStatus::NullPointer;
        }
        let flat: &[usize] = if m == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        match Graph::new(n, flat.chunks_exact(2).map(|e| (e[0], e[1]))) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(PigraphGraph { inner: g }));
                PigraphStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Parses the text graph format (`n m` then `m` lines `u v`).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pigraph_graph_parse(
    text: *const c_char,
    out: *mut *mut PigraphGraph,
) -> PigraphStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return PigraphStatus::NullPointer;
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return PigraphStatus::InvalidUtf8;
        };
        match format::parse_graph(text) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(PigraphGraph { inner: g }));
                PigraphStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `g` must come from `pigraph_graph_new` or `pigraph_graph_parse` and not
/// have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pigraph_graph_free(g: *mut PigraphGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn pigraph_graph_vertex_count(g: *const PigraphGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

/// # Safety
/// `g` must be a live graph handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn pigraph_graph_edge_count(g: *const PigraphGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.m())
}

/// Runs the recognizer. Returns `Ok` whatever the verdict; inspect the
/// outcome with `pigraph_outcome_stage`.
///
/// # Safety
/// `g` must be a live graph handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pigraph_recognize(
    g: *const PigraphGraph,
    out: *mut *mut PigraphOutcome,
) -> PigraphStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else {
            return PigraphStatus::NullPointer;
        };
        if out.is_null() {
            return PigraphStatus::NullPointer;
        }
        let inner = pigraph::recognize(&g.inner);
        *out = Box::into_raw(Box::new(PigraphOutcome { inner }));
        PigraphStatus::Ok
    })
}

/// # Safety
/// `o` must come from `pigraph_recognize` and not have been freed; null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn pigraph_outcome_free(o: *mut PigraphOutcome) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// # Safety
/// `o` must be a live outcome handle.
#[no_mangle]
pub unsafe extern "C" fn pigraph_outcome_stage(o: *const PigraphOutcome) -> PigraphStage {
    match &(*o).inner {
        RecognitionOutcome::Accepted(_) => PigraphStage::Accepted,
        RecognitionOutcome::Rejected(Rejection::NotCocomparability(_)) => {
            PigraphStage::NotCocomparability
        }
        RecognitionOutcome::Rejected(Rejection::AuxNotBipartite(_)) => PigraphStage::AuxNotBipartite,
        RecognitionOutcome::Rejected(Rejection::PhiUnsatisfiable(_)) => PigraphStage::PhiUnsat,
    }
}

/// Copies the apex ordering into `buf`. Returns `Rejected` (with
/// `*written == 0`) if the graph was rejected.
///
/// # Safety
/// `o` must be a live outcome handle, `buf` must have room for `len` values
/// and `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pigraph_outcome_ordering(
    o: *const PigraphOutcome,
    buf: *mut usize,
    len: usize,
    written: *mut usize,
) -> PigraphStatus {
    let Some(o) = o.as_ref() else {
        return PigraphStatus::NullPointer;
    };
    match &o.inner {
        RecognitionOutcome::Accepted(order) => copy_out(order, buf, len, written),
        RecognitionOutcome::Rejected(_) => {
            if written.is_null() {
                return PigraphStatus::NullPointer;
            }
            *written = 0;
            PigraphStatus::Rejected
        }
    }
}

/// Copies the rejection witness as a flat list of arcs `u0 v0 u1 v1 ...`:
/// the forcing chain, the odd cycle of vertex pairs, or the closed chain of
/// forced arcs. Accepted outcomes have an empty witness.
///
/// # Safety
/// As for `pigraph_outcome_ordering`.
#[no_mangle]
pub unsafe extern "C" fn pigraph_outcome_witness(
    o: *const PigraphOutcome,
    buf: *mut usize,
    len: usize,
    written: *mut usize,
) -> PigraphStatus {
    let Some(o) = o.as_ref() else {
        return PigraphStatus::NullPointer;
    };
    let arcs: Vec<(usize, usize)> = match &o.inner {
        RecognitionOutcome::Accepted(_) => Vec::new(),
        RecognitionOutcome::Rejected(Rejection::NotCocomparability(c)) => c.0.clone(),
        RecognitionOutcome::Rejected(Rejection::AuxNotBipartite(c)) => c.0.clone(),
        RecognitionOutcome::Rejected(Rejection::PhiUnsatisfiable(c)) => {
            c.steps.iter().map(|s| s.from).collect()
        }
    };
    let flat: Vec<usize> = arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
    copy_out(&flat, buf, len, written)
}

/// Checks an apex ordering: `Ok`, `Rejected`, or `NotPermutation`.
///
/// # Safety
/// `g` must be a live graph handle and `sigma` must point to `len` values
/// (or be null when `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn pigraph_verify_apex_ordering(
    g: *const PigraphGraph,
    sigma: *const usize,
    len: usize,
) -> PigraphStatus {
    guarded(|| {
        let Some(g) = g.as_ref() else {
            return PigraphStatus::NullPointer;
        };
        if sigma.is_null() && len > 0 {
            return PigraphStatus::NullPointer;
        }
        let sigma: &[usize] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(sigma, len)
        };
        match pigraph::verify_apex_ordering(&g.inner, sigma) {
            Ok(()) => PigraphStatus::Ok,
            Err(pigraph::ApexViolation::Malformed(e)) => status_of(&e),
            Err(_) => PigraphStatus::Rejected,
        }
    })
}
