//! Globally adaptive bisection over a list of (possibly mapped) segments.
//!
//! Every segment is parameterised over a finite interval; unbounded pieces
//! are compactified with `x = a + s·v/(1-v)`. Panels are refined in order of
//! decreasing error estimate and the final value is a compensated sum over
//! the panel list sorted by position, so the result does not depend on the
//! refinement order.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::gauss_kronrod::gk21;
use super::{IntegralResult, QuadSpec, QuadValue};

/// Relative error above which an unconverged integral is reported divergent
/// rather than merely under-resolved.
const GROSS_FAILURE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Segment {
    /// `[a, b]`, identity parameterisation.
    Finite { a: f64, b: f64 },
    /// `[a, ∞)`, `x = a + s·v/(1-v)` for `v ∈ [0, 1)`.
    Upper { a: f64, scale: f64 },
    /// `(-∞, b]`, `x = b - s·v/(1-v)` for `v ∈ [0, 1)`.
    Lower { b: f64, scale: f64 },
}

impl Segment {
    fn param_range(&self) -> (f64, f64) {
        match *self {
            Segment::Finite { a, b } => (a, b),
            _ => (0.0, 1.0),
        }
    }

    #[inline]
    fn map(&self, v: f64) -> (f64, f64) {
        match *self {
            Segment::Finite { .. } => (v, 1.0),
            Segment::Upper { a, scale } => {
                let d = 1.0 - v;
                (a + scale * v / d, scale / (d * d))
            }
            Segment::Lower { b, scale } => {
                let d = 1.0 - v;
                (b - scale * v / d, scale / (d * d))
            }
        }
    }
}

/// Splits `[lo, hi]` (either end may be infinite) at the given interior
/// breakpoints.
pub(crate) fn segments_for(lo: f64, hi: f64, breakpoints: &[f64]) -> Vec<Segment> {
    let mut pts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|b| b.is_finite() && *b > lo && *b < hi)
        .collect();
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup();
    if lo == f64::NEG_INFINITY && hi == f64::INFINITY && pts.is_empty() {
        pts.push(0.0);
    }
    let mut nodes = Vec::with_capacity(pts.len() + 2);
    nodes.push(lo);
    nodes.extend(pts);
    nodes.push(hi);

    nodes
        .windows(2)
        .filter(|w| w[0] < w[1])
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            if a == f64::NEG_INFINITY {
                Segment::Lower { b, scale: b.abs().max(1.0) }
            } else if b == f64::INFINITY {
                Segment::Upper { a, scale: a.abs().max(1.0) }
            } else {
                Segment::Finite { a, b }
            }
        })
        .collect()
}

struct Panel<V> {
    seg: usize,
    lo: f64,
    hi: f64,
    value: V,
    error: f64,
    abs_value: f64,
    live: bool,
}

#[derive(PartialEq)]
struct HeapEntry {
    error: f64,
    index: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Adaptive integration of `f` over the union of `segments`.
pub(crate) fn integrate_segments<V: QuadValue>(
    f: &dyn Fn(f64) -> V,
    segments: &[Segment],
    spec: &QuadSpec,
) -> IntegralResult<V> {
    let mut evaluations = 0usize;
    let mut panels: Vec<Panel<V>> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut saw_non_finite = false;

    let evaluate = |seg_idx: usize, lo: f64, hi: f64, evaluations: &mut usize| {
        let seg = segments[seg_idx];
        let g = |v: f64| {
            let (x, jac) = seg.map(v);
            f(x) * jac
        };
        *evaluations += 21;
        let est = gk21(&g, lo, hi);
        Panel {
            seg: seg_idx,
            lo,
            hi,
            value: est.value,
            error: est.error,
            abs_value: est.abs_value,
            live: true,
        }
    };

    for (i, seg) in segments.iter().enumerate() {
        let (lo, hi) = seg.param_range();
        let p = evaluate(i, lo, hi, &mut evaluations);
        if !p.value.is_finite() || !p.error.is_finite() {
            saw_non_finite = true;
        }
        heap.push(HeapEntry {
            error: p.error,
            index: panels.len(),
        });
        panels.push(p);
    }

    let mut total = panels.iter().fold(V::zero(), |acc, p| acc + p.value);
    let mut total_err: f64 = panels.iter().map(|p| p.error).sum();
    let mut total_abs: f64 = panels.iter().map(|p| p.abs_value).sum();
    let mut live = panels.len();

    let tolerance = |total: V, total_abs: f64| {
        spec.abs_tol
            .max(spec.rel_tol * total.magnitude())
            .max(50.0 * f64::EPSILON * total_abs)
    };

    while !saw_non_finite && total_err > tolerance(total, total_abs) && live < spec.max_subdivisions {
        let Some(entry) = heap.pop() else { break };
        let (seg, lo, hi) = {
            let p = &panels[entry.index];
            (p.seg, p.lo, p.hi)
        };
        let mid = 0.5 * (lo + hi);
        // Panels that can no longer be split stay in the list but leave the heap.
        if !(mid > lo && mid < hi) || (hi - lo) <= 64.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            continue;
        }
        let left = evaluate(seg, lo, mid, &mut evaluations);
        let right = evaluate(seg, mid, hi, &mut evaluations);
        if !left.value.is_finite() || !right.value.is_finite() || !left.error.is_finite() || !right.error.is_finite() {
            saw_non_finite = true;
        }
        let old = &mut panels[entry.index];
        old.live = false;
        total = total - old.value + left.value + right.value;
        total_err += left.error + right.error - old.error;
        total_abs += left.abs_value + right.abs_value - old.abs_value;
        for p in [left, right] {
            heap.push(HeapEntry {
                error: p.error,
                index: panels.len(),
            });
            panels.push(p);
        }
        live += 1;
    }

    // Order-fixed compensated reduction.
    let mut finals: Vec<&Panel<V>> = panels.iter().filter(|p| p.live).collect();
    finals.sort_by(|a, b| a.seg.cmp(&b.seg).then(a.lo.total_cmp(&b.lo)));
    let value = V::compensated_sum(finals.iter().map(|p| p.value));
    let error_estimate = compensated(finals.iter().map(|p| p.error));
    let abs_total = compensated(finals.iter().map(|p| p.abs_value));

    let converged = !saw_non_finite && error_estimate <= tolerance(value, abs_total);
    let mag = value.magnitude();
    let diverged = saw_non_finite
        || !value.is_finite()
        || mag > spec.divergence_cap
        || (!converged && error_estimate > GROSS_FAILURE * mag + spec.abs_tol);

    IntegralResult {
        value,
        error_estimate,
        diverged,
        converged,
        evaluations,
    }
}

pub(crate) fn compensated(items: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for x in items {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}
