//! C ABI for `smallgon`.
//!
//! Every fallible call returns an [`SgStatus`]; outputs go through pointer
//! arguments. On failure, [`sg_last_error`] describes what went wrong on the
//! calling thread. Polygons and optimization results are opaque handles that
//! the caller releases with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use smallgon::analysis::GraphClass;
use smallgon::cli::document::PolygonDocument;
use smallgon::constructions::{build_dn, regular_small_ngon, reinhardt_polygon, PolygonFamily};
use smallgon::solver::{delta0, solve, ProblemKind, RootMethod, SolveOptions};
use smallgon::{ConstructionReport, Error, OptimizationResult, Point2, Polygon};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad size, family parameter or other precondition.
    Domain = 2,
    InvalidPolygon = 3,
    NotConvex = 4,
    InfeasibleAngles = 5,
    ConstructionFailure = 6,
    Numeric = 7,
    /// The solver returned a result that misses its tolerances. The handle is
    /// still written.
    NotConverged = 8,
    /// Output buffer too small; the required length was written back.
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgProblem {
    DnStar = 0,
    BnStar = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgGraphClass {
    DFamily = 0,
    BFamily = 1,
    Other = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SgMetrics {
    pub perimeter: f64,
    pub width: f64,
    pub diameter: f64,
    pub is_convex: bool,
    pub is_small: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SgGraphSummary {
    pub edge_count: usize,
    pub cycle_length: usize,
    pub pendant_count: usize,
    pub classification: SgGraphClass,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SgOptimizationSummary {
    pub n: usize,
    pub objective: f64,
    pub residual_closure: f64,
    pub residual_anglesum: f64,
    pub projected_gradient: f64,
    pub iterations: usize,
    pub angle_count: usize,
    pub converged: bool,
}

const FAMILIES: [PolygonFamily; 6] = [
    PolygonFamily::Regular,
    PolygonFamily::Reinhardt,
    PolygonFamily::Bn,
    PolygonFamily::Dn,
    PolygonFamily::DnStar,
    PolygonFamily::BnStar,
];

/// Opaque polygon with its measured metrics and diameter graph.
pub struct SgPolygon(ConstructionReport);

/// Opaque solver result.
pub struct SgOptimization(OptimizationResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> SgStatus {
    match e {
        Error::InvalidPolygon(_) => SgStatus::InvalidPolygon,
        Error::NotConvex { .. } => SgStatus::NotConvex,
        Error::Domain(_) => SgStatus::Domain,
        Error::InfeasibleAngles(_) => SgStatus::InfeasibleAngles,
        Error::ConstructionFailure { .. } => SgStatus::ConstructionFailure,
        Error::Numeric(_) => SgStatus::Numeric,
    }
}

fn fail(status: SgStatus, msg: impl Into<String>) -> SgStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> SgStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning panics into [`SgStatus::Panic`].
fn guard(f: impl FnOnce() -> SgStatus) -> SgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            fail(SgStatus::Panic, format!("panic: {msg}"))
        }
    }
}

unsafe fn emit<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

fn emit_polygon(out: *mut *mut SgPolygon, built: smallgon::Result<ConstructionReport>) -> SgStatus {
    if out.is_null() {
        return fail(SgStatus::NullPointer, "out is null");
    }
    match built {
        // SAFETY: checked non-null above; caller guarantees it is writable.
        Ok(r) => unsafe {
            emit(out, SgPolygon(r));
            SgStatus::Ok
        },
        Err(e) => unsafe {
            *out = ptr::null_mut();
            from_error(e)
        },
    }
}

/// Copies `src` into `dst[..cap]`, writing the required length to `len`.
unsafe fn copy_out<T: Copy>(src: &[T], dst: *mut T, cap: usize, len: *mut usize) -> SgStatus {
    if !len.is_null() {
        *len = src.len();
    }
    if src.is_empty() {
        return SgStatus::Ok;
    }
    if cap < src.len() {
        return fail(
            SgStatus::BufferTooSmall,
            format!("buffer holds {cap} values, {} needed", src.len()),
        );
    }
    if dst.is_null() {
        return fail(SgStatus::NullPointer, "output buffer is null");
    }
    ptr::copy_nonoverlapping(src.as_ptr(), dst, src.len());
    SgStatus::Ok
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn sg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Closure root `δ₀(n)` for `n = 2^s`, `s >= 4`.
///
/// # Safety
/// `out` must be a valid pointer to a writable `double`.
#[no_mangle]
pub unsafe extern "C" fn sg_delta0(n: usize, out: *mut f64) -> SgStatus {
    guard(|| {
        if out.is_null() {
            return fail(SgStatus::NullPointer, "out is null");
        }
        match delta0(n, RootMethod::ClosedForm) {
            Ok(r) => {
                *out = r.delta0;
                SgStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Regular n-gon of unit diameter.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_regular(n: usize, out: *mut *mut SgPolygon) -> SgStatus {
    guard(|| emit_polygon(out, regular_small_ngon(n)))
}

/// Reinhardt polygon with odd factor `m` of `n`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_reinhardt(
    m: usize,
    n: usize,
    out: *mut *mut SgPolygon,
) -> SgStatus {
    guard(|| emit_polygon(out, reinhardt_polygon(m, n)))
}

/// The alternating-angle polygon `D_n`, `n = 2^s`, `s >= 4`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_dn(n: usize, out: *mut *mut SgPolygon) -> SgStatus {
    guard(|| emit_polygon(out, build_dn(n)))
}

/// Polygon from `count` interleaved `x, y` pairs. Must be convex.
///
/// # Safety
/// `xy` must point to `2 * count` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_from_vertices(
    xy: *const f64,
    count: usize,
    out: *mut *mut SgPolygon,
) -> SgStatus {
    guard(|| {
        if xy.is_null() {
            return fail(SgStatus::NullPointer, "xy is null");
        }
        let Some(total) = count.checked_mul(2) else {
            return fail(SgStatus::Domain, "vertex count overflows");
        };
        let coords = std::slice::from_raw_parts(xy, total);
        let points = coords
            .chunks_exact(2)
            .map(|c| Point2::new(c[0], c[1]))
            .collect();
        let built = Polygon::new(points)
            .and_then(|p| ConstructionReport::from_polygon(PolygonFamily::External, p, None));
        emit_polygon(out, built)
    })
}

/// # Safety
/// `polygon` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_free(polygon: *mut SgPolygon) {
    if !polygon.is_null() {
        drop(Box::from_raw(polygon));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `polygon` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_vertex_count(polygon: *const SgPolygon) -> usize {
    polygon.as_ref().map_or(0, |p| p.0.n)
}

/// Writes the vertices, counter-clockwise, as interleaved `x, y` pairs into
/// `xy[..cap]` and the number of doubles needed into `len` (may be NULL).
///
/// # Safety
/// `polygon` must be a live handle; `xy` must hold `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_vertices(
    polygon: *const SgPolygon,
    xy: *mut f64,
    cap: usize,
    len: *mut usize,
) -> SgStatus {
    guard(|| {
        let Some(p) = polygon.as_ref() else {
            return fail(SgStatus::NullPointer, "polygon is null");
        };
        let flat: Vec<f64> =
            p.0.polygon
                .vertices()
                .iter()
                .flat_map(|v| [v.x, v.y])
                .collect();
        copy_out(&flat, xy, cap, len)
    })
}

/// # Safety
/// `polygon` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_metrics(
    polygon: *const SgPolygon,
    out: *mut SgMetrics,
) -> SgStatus {
    guard(|| {
        let (Some(p), false) = (polygon.as_ref(), out.is_null()) else {
            return fail(SgStatus::NullPointer, "polygon or out is null");
        };
        let m = &p.0.metrics;
        *out = SgMetrics {
            perimeter: m.perimeter,
            width: m.width,
            diameter: m.diameter,
            is_convex: m.is_convex,
            is_small: m.is_small,
        };
        SgStatus::Ok
    })
}

/// # Safety
/// `polygon` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_diameter_graph(
    polygon: *const SgPolygon,
    out: *mut SgGraphSummary,
) -> SgStatus {
    guard(|| {
        let (Some(p), false) = (polygon.as_ref(), out.is_null()) else {
            return fail(SgStatus::NullPointer, "polygon or out is null");
        };
        let g = &p.0.diameter_graph;
        *out = SgGraphSummary {
            edge_count: g.edges.len(),
            cycle_length: g.cycle_length,
            pendant_count: g.pendant_count,
            classification: match g.classification {
                GraphClass::DFamily => SgGraphClass::DFamily,
                GraphClass::BFamily => SgGraphClass::BFamily,
                GraphClass::Other => SgGraphClass::Other,
            },
        };
        SgStatus::Ok
    })
}

/// Unit-distance edges as flattened index pairs `i0, j0, i1, j1, ...`.
///
/// # Safety
/// `polygon` must be a live handle; `pairs` must hold `cap` writable values.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_edges(
    polygon: *const SgPolygon,
    pairs: *mut usize,
    cap: usize,
    len: *mut usize,
) -> SgStatus {
    guard(|| {
        let Some(p) = polygon.as_ref() else {
            return fail(SgStatus::NullPointer, "polygon is null");
        };
        let flat: Vec<usize> =
            p.0.diameter_graph
                .edges
                .iter()
                .flat_map(|&(i, j)| [i, j])
                .collect();
        copy_out(&flat, pairs, cap, len)
    })
}

/// Polygon document as JSON. Release with [`sg_string_free`].
///
/// # Safety
/// `polygon` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_to_json(
    polygon: *const SgPolygon,
    out: *mut *mut c_char,
) -> SgStatus {
    guard(|| {
        let (Some(p), false) = (polygon.as_ref(), out.is_null()) else {
            return fail(SgStatus::NullPointer, "polygon or out is null");
        };
        let json = PolygonDocument::from_report(&p.0).to_json();
        // serde_json escapes control characters, so there is no interior NUL.
        *out = CString::new(json).expect("JSON has no NUL").into_raw();
        SgStatus::Ok
    })
}

/// Parse a polygon document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_polygon_from_json(
    json: *const c_char,
    out: *mut *mut SgPolygon,
) -> SgStatus {
    guard(|| {
        if json.is_null() {
            return fail(SgStatus::NullPointer, "json is null");
        }
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return fail(SgStatus::InvalidPolygon, "document is not UTF-8");
        };
        let doc = match PolygonDocument::from_json(text) {
            Ok(d) => d,
            Err(e) => return fail(SgStatus::InvalidPolygon, e.to_string()),
        };
        let family = FAMILIES
            .into_iter()
            .find(|f| f.as_str() == doc.family)
            .unwrap_or(PolygonFamily::External);
        let built = doc
            .polygon()
            .and_then(|p| ConstructionReport::from_polygon(family, p, None));
        emit_polygon(out, built)
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Maximize the perimeter for `problem` at size `n`. Writes a handle on
/// [`SgStatus::Ok`] and on [`SgStatus::NotConverged`].
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn sg_optimize(
    problem: SgProblem,
    n: usize,
    seed: u64,
    out: *mut *mut SgOptimization,
) -> SgStatus {
    guard(|| {
        if out.is_null() {
            return fail(SgStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let kind = match problem {
            SgProblem::DnStar => ProblemKind::DnStar,
            SgProblem::BnStar => ProblemKind::BnStar,
        };
        let opts = SolveOptions {
            seed,
            ..SolveOptions::default()
        };
        match solve(kind, n, &opts) {
            Ok(r) => {
                let converged = r.converged;
                emit(out, SgOptimization(r));
                if converged {
                    SgStatus::Ok
                } else {
                    fail(
                        SgStatus::NotConverged,
                        "solver did not reach its tolerances",
                    )
                }
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `result` must be NULL or a handle from [`sg_optimize`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sg_optimization_free(result: *mut SgOptimization) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// # Safety
/// `result` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_optimization_summary(
    result: *const SgOptimization,
    out: *mut SgOptimizationSummary,
) -> SgStatus {
    guard(|| {
        let (Some(r), false) = (result.as_ref(), out.is_null()) else {
            return fail(SgStatus::NullPointer, "result or out is null");
        };
        let r = &r.0;
        *out = SgOptimizationSummary {
            n: r.n,
            objective: r.objective,
            residual_closure: r.residual_closure,
            residual_anglesum: r.residual_anglesum,
            projected_gradient: r.projected_gradient,
            iterations: r.iterations,
            angle_count: r.alphas.alphas().len(),
            converged: r.converged,
        };
        SgStatus::Ok
    })
}

/// Optimal half-cycle angles.
///
/// # Safety
/// `result` must be a live handle; `angles` must hold `cap` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sg_optimization_angles(
    result: *const SgOptimization,
    angles: *mut f64,
    cap: usize,
    len: *mut usize,
) -> SgStatus {
    guard(|| {
        let Some(r) = result.as_ref() else {
            return fail(SgStatus::NullPointer, "result is null");
        };
        copy_out(r.0.alphas.alphas(), angles, cap, len)
    })
}

/// Rebuild the optimal polygon.
///
/// # Safety
/// `result` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sg_optimization_polygon(
    result: *const SgOptimization,
    out: *mut *mut SgPolygon,
) -> SgStatus {
    guard(|| {
        let Some(r) = result.as_ref() else {
            return fail(SgStatus::NullPointer, "result is null");
        };
        emit_polygon(out, r.0.polygon())
    })
}
