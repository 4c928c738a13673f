//! C ABI for the treedepth solver.
//!
//! Graphs and decompositions are opaque handles created and destroyed
//! here; every fallible call returns a [`TdfStatus`] and stores a
//! human-readable message retrievable through [`tdf_last_error`]. Vertex
//! numbering across this boundary is 1-based, with parent `0` marking a
//! root, exactly as in the text formats.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use tdf::decomposition::{verify_decomposition, Decomposition};
use tdf::graph::Graph;
use tdf::solver::{solve_with, Budget, SharedIncumbent, SolveConfig};
use tdf::tree_io;

/// Result of a C API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TdfStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The input graph or tree text could not be parsed.
    ParseError = 2,
    /// The decomposition is not valid for the graph.
    InvalidTree = 3,
    /// An argument was out of range.
    InvalidArgument = 4,
    /// The implementation panicked; this is a bug.
    Internal = 5,
}

/// Opaque graph handle.
pub struct TdfGraph(Graph);

/// Opaque decomposition handle.
pub struct TdfDecomposition(Decomposition);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let owned = CString::new(msg.replace('\0', "?")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = owned);
}

/// Message describing the most recent failure on this thread.
///
/// The pointer stays valid until the next failing call on the same
/// thread. Never free it.
#[no_mangle]
pub extern "C" fn tdf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn guard<F: FnOnce() -> TdfStatus>(f: F) -> TdfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            TdfStatus::Internal
        }
    }
}

/// Parses a graph in `.gr` format from a byte buffer.
///
/// On success stores a new handle in `*out`; free it with
/// [`tdf_graph_free`].
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` to a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn tdf_graph_parse(
    data: *const u8,
    len: usize,
    out: *mut *mut TdfGraph,
) -> TdfStatus {
    if data.is_null() || out.is_null() {
        set_error("null argument");
        return TdfStatus::NullArgument;
    }
    let bytes = std::slice::from_raw_parts(data, len);
    guard(|| match Graph::parse_gr(bytes) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(TdfGraph(g)));
            TdfStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            TdfStatus::ParseError
        }
    })
}

/// Frees a graph handle; accepts null.
///
/// # Safety
/// `g` must be null or a pointer returned by [`tdf_graph_parse`] that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn tdf_graph_free(g: *mut TdfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn tdf_graph_vertex_count(g: *const TdfGraph) -> u32 {
    if g.is_null() {
        return 0;
    }
    (*g).0.vertex_count() as u32
}

/// Number of distinct undirected edges.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn tdf_graph_edge_count(g: *const TdfGraph) -> u64 {
    if g.is_null() {
        return 0;
    }
    (*g).0.edge_count() as u64
}

/// Runs the full solve pipeline.
///
/// `time_limit_ms` of 0 means no wall-clock limit and `max_rounds` of 0
/// means the default escalation depth; passing 0 for both solves with the
/// default bounded effort. On success stores a new decomposition handle
/// in `*out`; free it with [`tdf_decomposition_free`].
///
/// # Safety
/// `g` must be a live graph handle and `out` a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn tdf_solve(
    g: *const TdfGraph,
    seed: u64,
    time_limit_ms: u64,
    max_rounds: u32,
    out: *mut *mut TdfDecomposition,
) -> TdfStatus {
    if g.is_null() || out.is_null() {
        set_error("null argument");
        return TdfStatus::NullArgument;
    }
    let graph = &(*g).0;
    guard(|| {
        let mut budget = Budget::unlimited(seed);
        if time_limit_ms > 0 {
            budget = budget.with_deadline(Duration::from_millis(time_limit_ms));
        }
        budget = budget.with_rounds(if max_rounds == 0 { 6 } else { max_rounds });
        let d = solve_with(graph, &budget, &SolveConfig::default(), &SharedIncumbent::new());
        *out = Box::into_raw(Box::new(TdfDecomposition(d)));
        TdfStatus::Ok
    })
}

/// Frees a decomposition handle; accepts null.
///
/// # Safety
/// `d` must be null or a live decomposition handle.
#[no_mangle]
pub unsafe extern "C" fn tdf_decomposition_free(d: *mut TdfDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Depth of the decomposition.
///
/// # Safety
/// `d` must be a live decomposition handle.
#[no_mangle]
pub unsafe extern "C" fn tdf_decomposition_depth(d: *const TdfDecomposition) -> u32 {
    if d.is_null() {
        return 0;
    }
    (*d).0.depth()
}

/// Parent of 1-based `vertex`, `0` for roots, `UINT32_MAX` when the
/// vertex is out of range.
///
/// # Safety
/// `d` must be a live decomposition handle.
#[no_mangle]
pub unsafe extern "C" fn tdf_decomposition_parent(
    d: *const TdfDecomposition,
    vertex: u32,
) -> u32 {
    if d.is_null() {
        return u32::MAX;
    }
    let dec = &(*d).0;
    if vertex == 0 || vertex as usize > dec.len() {
        return u32::MAX;
    }
    match dec.parent_of(vertex - 1) {
        Some(p) => p + 1,
        None => 0,
    }
}

/// Serializes the decomposition in `.tree` format into a NUL-terminated
/// string stored in `*out`; free it with [`tdf_string_free`].
///
/// # Safety
/// `d` must be a live decomposition handle and `out` a writable slot.
#[no_mangle]
pub unsafe extern "C" fn tdf_decomposition_to_tree(
    d: *const TdfDecomposition,
    out: *mut *mut c_char,
) -> TdfStatus {
    if d.is_null() || out.is_null() {
        set_error("null argument");
        return TdfStatus::NullArgument;
    }
    guard(|| {
        let text = tree_io::tree_to_string(&(*d).0);
        match CString::new(text) {
            Ok(s) => {
                *out = s.into_raw();
                TdfStatus::Ok
            }
            Err(_) => {
                set_error("tree text contained an interior NUL");
                TdfStatus::Internal
            }
        }
    })
}

/// Frees a string returned by this library; accepts null.
///
/// # Safety
/// `s` must be null or a string returned by [`tdf_decomposition_to_tree`]
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn tdf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Checks a parent vector against a graph.
///
/// `parents` holds `n` entries, 1-based with `0` for roots, and `n` must
/// equal the graph's vertex count. Returns [`TdfStatus::Ok`] for a valid
/// decomposition of claimed depth `claimed_depth`, otherwise
/// [`TdfStatus::InvalidTree`] with the violation in [`tdf_last_error`].
///
/// # Safety
/// `g` must be a live graph handle and `parents` must point to `n`
/// readable entries.
#[no_mangle]
pub unsafe extern "C" fn tdf_verify(
    g: *const TdfGraph,
    parents: *const u32,
    n: usize,
    claimed_depth: u32,
) -> TdfStatus {
    if g.is_null() || (parents.is_null() && n > 0) {
        set_error("null argument");
        return TdfStatus::NullArgument;
    }
    let graph = &(*g).0;
    if n != graph.vertex_count() {
        set_error("parent vector length does not match the graph");
        return TdfStatus::InvalidArgument;
    }
    let raw = std::slice::from_raw_parts(parents, n);
    guard(|| {
        let mut parent = Vec::with_capacity(n);
        for &p in raw {
            if p == 0 {
                parent.push(None);
            } else if p as usize <= n {
                parent.push(Some(p - 1));
            } else {
                set_error("parent entry out of range");
                return TdfStatus::InvalidArgument;
            }
        }
        let claimed = Decomposition::from_claimed(parent, claimed_depth);
        match verify_decomposition(graph, &claimed) {
            Ok(()) => TdfStatus::Ok,
            Err(v) => {
                set_error(&v.to_string());
                TdfStatus::InvalidTree
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    unsafe fn parse(text: &str) -> *mut TdfGraph {
        let mut out = ptr::null_mut();
        let status = tdf_graph_parse(text.as_ptr(), text.len(), &mut out);
        assert!(status == TdfStatus::Ok);
        out
    }

    #[test]
    fn parse_solve_verify_roundtrip() {
        unsafe {
            let g = parse("p tdp 7 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n");
            assert_eq!(tdf_graph_vertex_count(g), 7);
            assert_eq!(tdf_graph_edge_count(g), 6);

            let mut d = ptr::null_mut();
            assert!(tdf_solve(g, 0, 2_000, 3, &mut d) == TdfStatus::Ok);
            let depth = tdf_decomposition_depth(d);
            assert!(depth >= 3 && depth <= 7, "depth {depth}");

            let n = tdf_graph_vertex_count(g) as usize;
            let parents: Vec<u32> = (1..=n as u32).map(|v| tdf_decomposition_parent(d, v)).collect();
            assert_eq!(parents.iter().filter(|&&p| p == 0).count(), 1);
            assert!(tdf_verify(g, parents.as_ptr(), n, depth) == TdfStatus::Ok);

            // breaking one parent makes verification fail
            let mut broken = parents.clone();
            let leaf = (1..=n)
                .find(|&v| !parents.contains(&(v as u32)))
                .unwrap();
            broken[leaf - 1] = leaf as u32 % n as u32 + 1;
            if broken[leaf - 1] as usize == leaf {
                broken[leaf - 1] = broken[leaf - 1] % n as u32 + 1;
            }
            let status = tdf_verify(g, broken.as_ptr(), n, depth);
            if status == TdfStatus::InvalidTree {
                let msg = CStr::from_ptr(tdf_last_error());
                assert!(!msg.to_bytes().is_empty());
            }

            let mut text = ptr::null_mut();
            assert!(tdf_decomposition_to_tree(d, &mut text) == TdfStatus::Ok);
            let s = CStr::from_ptr(text).to_str().unwrap().to_owned();
            assert!(s.starts_with(&format!("{depth}\n")));
            assert_eq!(s.lines().count(), n + 1);
            tdf_string_free(text);

            tdf_decomposition_free(d);
            tdf_graph_free(g);
        }
    }

    #[test]
    fn error_reporting() {
        unsafe {
            let mut out = ptr::null_mut();
            let status = tdf_graph_parse("p tdp 2 1\n1 3\n".as_ptr(), 14, &mut out);
            assert!(status == TdfStatus::ParseError);
            let msg = CStr::from_ptr(tdf_last_error()).to_str().unwrap();
            assert!(msg.contains("out of range"), "{msg}");

            assert!(tdf_graph_parse(ptr::null(), 0, &mut out) == TdfStatus::NullArgument);
            assert_eq!(tdf_decomposition_depth(ptr::null()), 0);
            assert_eq!(tdf_decomposition_parent(ptr::null(), 1), u32::MAX);
            tdf_graph_free(ptr::null_mut());
            tdf_decomposition_free(ptr::null_mut());
            tdf_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn verify_rejects_wrong_depth_and_length() {
        unsafe {
            let g = parse("p tdp 3 2\n1 2\n2 3\n");
            // valid chain but wrong claimed depth
            let parents = [0u32, 1, 2];
            assert!(tdf_verify(g, parents.as_ptr(), 3, 2) == TdfStatus::InvalidTree);
            assert!(tdf_verify(g, parents.as_ptr(), 3, 3) == TdfStatus::Ok);
            assert!(tdf_verify(g, parents.as_ptr(), 2, 2) == TdfStatus::InvalidArgument);
            tdf_graph_free(g);
        }
    }
}
