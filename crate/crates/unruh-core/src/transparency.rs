//! Search for acceleration-induced transparency: trajectory parameters
//! `(s₁, T₂)` at which the resonant amplitude `I₋(Ω)` vanishes exactly
//! while the counter-rotating `I₊(Ω)` survives.
//!
//! The pipeline mirrors how such points are located by hand: scan `I₋`
//! over a rectangle of the `(s₁, T₂)` plane with the other trajectory
//! parameters held fixed, trace the `Re I₋ = 0` and `Im I₋ = 0` contours
//! by marching squares, intersect the two contour families, and polish
//! each crossing with a damped Newton iteration on
//! `(s₁, T₂) ↦ (Re I₋, Im I₋)` until `|I₋|` is negligible against `|I₊|`.
//! A spectrum over the detector gap at the best point exhibits the
//! signature: Doppler peaks of `|I₋|` at `k₀s₀` and `k₀s₂` with an
//! arbitrarily deep dip at the search gap, far below `|I₊|`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math::complex_norm;
use crate::oscillatory::{
    eval_pair, spectrum_scan, OscillatoryError, Regularization, SpectrumRow,
};
use crate::trajectory::make_piecewise_alpha;

/// Failure of a transparency search stage.
#[derive(Debug, Clone, PartialEq)]
pub enum TransparencyError {
    /// A spec field is outside its domain.
    BadSpec { name: &'static str, value: f64 },
    /// No grid node corresponds to a valid trajectory.
    EmptyFeasibleRegion,
    /// A component of `I₋` never changes sign on the grid (and is not
    /// degenerately zero), so it has no contour.
    NoContour { component: &'static str },
    /// Newton refinement did not reach the tolerance.
    NoConvergence { iterations: usize, residual: f64 },
    /// Refinement was pushed against the feasibility boundary (`α̇ > 0`,
    /// `T₂ > T₁`) and could not continue.
    LeftFeasibleRegion { s1: f64, t2: f64 },
    /// The pipeline completed without producing any transparency point.
    NoTransparencyFound,
    /// An amplitude evaluation failed.
    Oscillatory(OscillatoryError),
}

impl core::fmt::Display for TransparencyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TransparencyError::BadSpec { name, value } => {
                write!(f, "search spec field {name} is out of domain: {value}")
            }
            TransparencyError::EmptyFeasibleRegion => {
                write!(f, "no grid node yields a valid trajectory")
            }
            TransparencyError::NoContour { component } => {
                write!(f, "{component} of the resonant amplitude never changes sign")
            }
            TransparencyError::NoConvergence { iterations, residual } => write!(
                f,
                "refinement stalled after {iterations} iterations at residual {residual:e}"
            ),
            TransparencyError::LeftFeasibleRegion { s1, t2 } => write!(
                f,
                "refinement left the feasible region near s1={s1}, T2={t2}"
            ),
            TransparencyError::NoTransparencyFound => {
                write!(f, "no transparency point found in the search box")
            }
            TransparencyError::Oscillatory(e) => write!(f, "amplitude evaluation failed: {e}"),
        }
    }
}

impl core::error::Error for TransparencyError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            TransparencyError::Oscillatory(e) => Some(e),
            _ => None,
        }
    }
}

impl From<OscillatoryError> for TransparencyError {
    fn from(e: OscillatoryError) -> Self {
        TransparencyError::Oscillatory(e)
    }
}

/// A rectangle of the `(s₁, T₂)` plane to search, with everything else
/// fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpec {
    /// Mode frequency.
    pub k0: f64,
    /// Initial velocity slope (left tail).
    pub s0: f64,
    /// Final velocity slope (right tail).
    pub s2: f64,
    /// First knot time.
    pub t1: f64,
    /// Detector gap at which `I₋` is to vanish.
    pub omega: f64,
    /// Regularization used for every evaluation in the search.
    pub regularization: Regularization,
    /// Range of the middle slope `s₁`.
    pub s1_range: (f64, f64),
    /// Range of the second knot `T₂`; must lie above `t1`.
    pub t2_range: (f64, f64),
    /// Grid resolution along `s₁` (≥ 8).
    pub n_s1: usize,
    /// Grid resolution along `T₂` (≥ 8).
    pub n_t2: usize,
}

impl SearchSpec {
    fn validate(&self) -> Result<(), TransparencyError> {
        let positive: [(&'static str, f64); 5] = [
            ("k0", self.k0),
            ("s0", self.s0),
            ("s2", self.s2),
            ("T1", self.t1),
            ("omega", self.omega),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(TransparencyError::BadSpec { name, value });
            }
        }
        if !(self.s1_range.0.is_finite()
            && self.s1_range.1.is_finite()
            && self.s1_range.0 < self.s1_range.1)
        {
            return Err(TransparencyError::BadSpec {
                name: "s1_range",
                value: self.s1_range.1 - self.s1_range.0,
            });
        }
        if !(self.t2_range.0.is_finite()
            && self.t2_range.1.is_finite()
            && self.t2_range.0 < self.t2_range.1)
        {
            return Err(TransparencyError::BadSpec {
                name: "t2_range",
                value: self.t2_range.1 - self.t2_range.0,
            });
        }
        if self.t2_range.0 <= self.t1 {
            return Err(TransparencyError::BadSpec {
                name: "t2_range",
                value: self.t2_range.0,
            });
        }
        if self.n_s1 < 8 {
            return Err(TransparencyError::BadSpec {
                name: "n_s1",
                value: self.n_s1 as f64,
            });
        }
        if self.n_t2 < 8 {
            return Err(TransparencyError::BadSpec {
                name: "n_t2",
                value: self.n_t2 as f64,
            });
        }
        self.regularization.validate()?;
        Ok(())
    }

    /// Amplitude pair at one `(s₁, T₂)`; `None` when the trajectory is
    /// infeasible there.
    fn amplitudes_at(
        &self,
        s1: f64,
        t2: f64,
    ) -> Result<Option<(Complex64, Complex64)>, TransparencyError> {
        let pf = match make_piecewise_alpha(self.s0, s1, self.s2, self.t1, t2, self.k0) {
            Ok(pf) => pf,
            Err(_) => return Ok(None),
        };
        let pair = eval_pair(&pf, self.omega, &self.regularization)?;
        Ok(Some((pair.i_minus, pair.i_plus)))
    }
}

/// Dense evaluation of `I₋` over the search rectangle.  `values` is
/// row-major with the `s₁` index outermost; infeasible nodes hold `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeGrid {
    /// Grid coordinates along `s₁`, ascending.
    pub s1_values: Vec<f64>,
    /// Grid coordinates along `T₂`, ascending.
    pub t2_values: Vec<f64>,
    /// `I₋` per node, `values[i_s1 * t2_values.len() + i_t2]`.
    pub values: Vec<Option<Complex64>>,
}

impl AmplitudeGrid {
    /// Node value at grid indices `(i_s1, i_t2)`.
    pub fn value(&self, i_s1: usize, i_t2: usize) -> Option<Complex64> {
        self.values[i_s1 * self.t2_values.len() + i_t2]
    }

    /// Grid spacing `(Δs₁, ΔT₂)`.
    pub fn cell_size(&self) -> (f64, f64) {
        (
            self.s1_values[1] - self.s1_values[0],
            self.t2_values[1] - self.t2_values[0],
        )
    }
}

/// One straight piece of a zero contour, endpoints in `(s₁, T₂)`
/// coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSegment {
    /// First endpoint.
    pub a: [f64; 2],
    /// Second endpoint.
    pub b: [f64; 2],
}

/// The two zero-contour families of `I₋` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSet {
    /// Segments of `Re I₋ = 0`.
    pub re_zero: Vec<ContourSegment>,
    /// Segments of `Im I₋ = 0`.
    pub im_zero: Vec<ContourSegment>,
    /// True when `Re I₋` is zero over most of the grid, making its
    /// contour meaningless.
    pub re_degenerate: bool,
    /// Same for `Im I₋`.
    pub im_degenerate: bool,
}

/// A refined transparency point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransparencyPoint {
    /// Middle slope of the velocity profile.
    pub s1: f64,
    /// Second knot time.
    pub t2: f64,
    /// `|I₋|` at the refined point.
    pub residual: f64,
    /// `|I₋/I₊|` at the refined point.
    pub ratio: f64,
    /// Newton iterations used.
    pub iterations: usize,
}

/// Outcome of the full search pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct TransparencyReport {
    /// The search spec the report was produced from.
    pub spec: SearchSpec,
    /// All refined points, sorted by `(s₁, T₂)`.
    pub points: Vec<TransparencyPoint>,
    /// The point with the smallest `|I₋/I₊|`.
    pub best: TransparencyPoint,
    /// Gap spectrum of the best point's trajectory, covering both Doppler
    /// peaks with the search gap as an exact grid node.
    pub spectrum: Vec<SpectrumRow>,
    /// The Doppler frequencies `(k₀s₀, k₀s₂)` where `|I₋|` peaks.
    pub doppler_peaks: (f64, f64),
}

/// Evaluate `I₋` on the search grid.  Infeasible nodes are `None`; if all
/// are, the spec's ranges exclude every valid trajectory.
pub fn scan_grid(spec: &SearchSpec) -> Result<AmplitudeGrid, TransparencyError> {
    spec.validate()?;
    let s1_values: Vec<f64> = (0..spec.n_s1)
        .map(|i| {
            spec.s1_range.0
                + (spec.s1_range.1 - spec.s1_range.0) * i as f64 / (spec.n_s1 - 1) as f64
        })
        .collect();
    let t2_values: Vec<f64> = (0..spec.n_t2)
        .map(|i| {
            spec.t2_range.0
                + (spec.t2_range.1 - spec.t2_range.0) * i as f64 / (spec.n_t2 - 1) as f64
        })
        .collect();
    let mut values = Vec::with_capacity(spec.n_s1 * spec.n_t2);
    let mut any_valid = false;
    for &s1 in &s1_values {
        for &t2 in &t2_values {
            let v = spec.amplitudes_at(s1, t2)?.map(|(i_minus, _)| i_minus);
            any_valid |= v.is_some();
            values.push(v);
        }
    }
    if !any_valid {
        return Err(TransparencyError::EmptyFeasibleRegion);
    }
    Ok(AmplitudeGrid {
        s1_values,
        t2_values,
        values,
    })
}

/// Marching squares over one real component: emit the zero-crossing
/// segments of every cell whose four corners are valid.
fn component_contours(grid: &AmplitudeGrid, pick: fn(Complex64) -> f64) -> Vec<ContourSegment> {
    let n1 = grid.s1_values.len();
    let n2 = grid.t2_values.len();
    let mut segments = Vec::new();
    for ix in 0..n1 - 1 {
        for iy in 0..n2 - 1 {
            let corners = [
                grid.value(ix, iy),
                grid.value(ix + 1, iy),
                grid.value(ix + 1, iy + 1),
                grid.value(ix, iy + 1),
            ];
            if corners.iter().any(|c| c.is_none()) {
                continue;
            }
            let v00 = pick(corners[0].unwrap());
            let v10 = pick(corners[1].unwrap());
            let v11 = pick(corners[2].unwrap());
            let v01 = pick(corners[3].unwrap());
            let (x0, x1) = (grid.s1_values[ix], grid.s1_values[ix + 1]);
            let (y0, y1) = (grid.t2_values[iy], grid.t2_values[iy + 1]);
            // Linear interpolation of the crossing along each edge that
            // changes sign (edge order: bottom, right, top, left).
            let mut crossings: Vec<[f64; 2]> = Vec::new();
            let mut edge = |va: f64, vb: f64, pa: [f64; 2], pb: [f64; 2]| {
                if (va > 0.0) != (vb > 0.0) {
                    let t = va / (va - vb);
                    crossings.push([pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])]);
                }
            };
            edge(v00, v10, [x0, y0], [x1, y0]);
            edge(v10, v11, [x1, y0], [x1, y1]);
            edge(v11, v01, [x1, y1], [x0, y1]);
            edge(v01, v00, [x0, y1], [x0, y0]);
            match crossings.len() {
                2 => segments.push(ContourSegment {
                    a: crossings[0],
                    b: crossings[1],
                }),
                4 => {
                    // Saddle cell: the center sign decides which corners
                    // the two curve pieces wrap around.
                    let center = 0.25 * (v00 + v10 + v11 + v01);
                    if (center > 0.0) == (v00 > 0.0) {
                        // Curves isolate the 10 and 01 corners:
                        // bottom–right and top–left.
                        segments.push(ContourSegment {
                            a: crossings[0],
                            b: crossings[1],
                        });
                        segments.push(ContourSegment {
                            a: crossings[2],
                            b: crossings[3],
                        });
                    } else {
                        // Curves isolate the 00 and 11 corners:
                        // bottom–left and right–top.
                        segments.push(ContourSegment {
                            a: crossings[0],
                            b: crossings[3],
                        });
                        segments.push(ContourSegment {
                            a: crossings[1],
                            b: crossings[2],
                        });
                    }
                }
                _ => {}
            }
        }
    }
    segments
}

/// True when most valid nodes of a component sit at numerical zero, so a
/// "contour" of it would fill the domain.
fn is_degenerate(grid: &AmplitudeGrid, pick: fn(Complex64) -> f64) -> bool {
    let mut max_abs: f64 = 0.0;
    let mut valid = 0usize;
    for v in grid.values.iter().flatten() {
        max_abs = max_abs.max(libm::fabs(pick(*v)));
        valid += 1;
    }
    if valid == 0 {
        return true;
    }
    if max_abs == 0.0 {
        return true;
    }
    let tiny = grid
        .values
        .iter()
        .flatten()
        .filter(|v| libm::fabs(pick(**v)) < 1e-12 * max_abs)
        .count();
    2 * tiny > valid
}

/// Trace the `Re I₋ = 0` and `Im I₋ = 0` contour families.
///
/// A component with no sign change and no segments is an error — unless it
/// is degenerately zero across the grid, which is flagged instead (its
/// zero set is the whole domain, not a curve).
pub fn zero_contours(grid: &AmplitudeGrid) -> Result<ContourSet, TransparencyError> {
    let re_degenerate = is_degenerate(grid, |z| z.re);
    let im_degenerate = is_degenerate(grid, |z| z.im);
    let re_zero = component_contours(grid, |z| z.re);
    let im_zero = component_contours(grid, |z| z.im);
    if re_zero.is_empty() && !re_degenerate {
        return Err(TransparencyError::NoContour {
            component: "the real part",
        });
    }
    if im_zero.is_empty() && !im_degenerate {
        return Err(TransparencyError::NoContour {
            component: "the imaginary part",
        });
    }
    Ok(ContourSet {
        re_zero,
        im_zero,
        re_degenerate,
        im_degenerate,
    })
}

/// All crossings between the two contour families, deduplicated within
/// `half_cell` per axis and sorted by `(s₁, T₂)`.
pub fn find_intersections(
    re_contours: &[ContourSegment],
    im_contours: &[ContourSegment],
    half_cell: (f64, f64),
) -> Vec<[f64; 2]> {
    let mut candidates: Vec<[f64; 2]> = Vec::new();
    for r in re_contours {
        let d1 = [r.b[0] - r.a[0], r.b[1] - r.a[1]];
        for s in im_contours {
            let d2 = [s.b[0] - s.a[0], s.b[1] - s.a[1]];
            let denom = d1[0] * d2[1] - d1[1] * d2[0];
            if libm::fabs(denom) < 1e-300 {
                continue;
            }
            let rel = [s.a[0] - r.a[0], s.a[1] - r.a[1]];
            let t = (rel[0] * d2[1] - rel[1] * d2[0]) / denom;
            let u = (rel[0] * d1[1] - rel[1] * d1[0]) / denom;
            let on = |x: f64| (-1e-12..=1.0 + 1e-12).contains(&x);
            if on(t) && on(u) {
                candidates.push([r.a[0] + t * d1[0], r.a[1] + t * d1[1]]);
            }
        }
    }
    candidates.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut unique: Vec<[f64; 2]> = Vec::new();
    for c in candidates {
        let dup = unique.iter().any(|p| {
            libm::fabs(p[0] - c[0]) <= half_cell.0 && libm::fabs(p[1] - c[1]) <= half_cell.1
        });
        if !dup {
            unique.push(c);
        }
    }
    unique
}

/// Polish one candidate with a damped Newton iteration on
/// `(s₁, T₂) ↦ (Re I₋, Im I₋)`.
///
/// Stops when `|I₋| < tol` (default `1e-10·|I₊|` at the current iterate).
/// Steps that leave the feasible region or fail to reduce the residual are
/// halved; running out of halvings inside the infeasible region is
/// [`TransparencyError::LeftFeasibleRegion`], stalling while feasible is
/// [`TransparencyError::NoConvergence`].
pub fn refine_root(
    spec: &SearchSpec,
    candidate: [f64; 2],
    tol: Option<f64>,
    max_iter: usize,
) -> Result<TransparencyPoint, TransparencyError> {
    spec.validate()?;
    let mut x = candidate;
    let mut current = match spec.amplitudes_at(x[0], x[1])? {
        Some(v) => v,
        None => {
            return Err(TransparencyError::LeftFeasibleRegion {
                s1: x[0],
                t2: x[1],
            })
        }
    };
    for iteration in 0..=max_iter {
        let (i_minus, i_plus) = current;
        let target = tol.unwrap_or(1e-10 * complex_norm(i_plus));
        if complex_norm(i_minus) < target {
            return Ok(TransparencyPoint {
                s1: x[0],
                t2: x[1],
                residual: complex_norm(i_minus),
                ratio: complex_norm(i_minus) / complex_norm(i_plus),
                iterations: iteration,
            });
        }
        if iteration == max_iter {
            break;
        }
        // Forward-difference Jacobian with relative step 1e-6 (backward
        // when the forward point is infeasible).
        let mut jac = [[0.0f64; 2]; 2];
        for (axis, col) in [(0usize, 0usize), (1, 1)] {
            let h = 1e-6 * libm::fabs(x[axis]).max(1.0);
            let mut probe = x;
            probe[axis] += h;
            let (value, step) = match spec.amplitudes_at(probe[0], probe[1])? {
                Some(v) => (v.0, h),
                None => {
                    probe[axis] = x[axis] - h;
                    match spec.amplitudes_at(probe[0], probe[1])? {
                        Some(v) => (v.0, -h),
                        None => {
                            return Err(TransparencyError::LeftFeasibleRegion {
                                s1: x[0],
                                t2: x[1],
                            })
                        }
                    }
                }
            };
            jac[0][col] = (value.re - i_minus.re) / step;
            jac[1][col] = (value.im - i_minus.im) / step;
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if libm::fabs(det) < 1e-300 {
            return Err(TransparencyError::NoConvergence {
                iterations: iteration,
                residual: complex_norm(i_minus),
            });
        }
        let newton = [
            -(jac[1][1] * i_minus.re - jac[0][1] * i_minus.im) / det,
            -(-jac[1][0] * i_minus.re + jac[0][0] * i_minus.im) / det,
        ];
        // Damped acceptance: halve until the step is feasible and the
        // residual decreases.
        let mut lambda = 1.0;
        let mut accepted = false;
        let mut saw_feasible = false;
        for _ in 0..40 {
            let trial = [x[0] + lambda * newton[0], x[1] + lambda * newton[1]];
            if let Some(v) = spec.amplitudes_at(trial[0], trial[1])? {
                saw_feasible = true;
                if complex_norm(v.0) < complex_norm(i_minus) {
                    x = trial;
                    current = v;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(if saw_feasible {
                TransparencyError::NoConvergence {
                    iterations: iteration,
                    residual: complex_norm(i_minus),
                }
            } else {
                TransparencyError::LeftFeasibleRegion {
                    s1: x[0],
                    t2: x[1],
                }
            });
        }
    }
    Err(TransparencyError::NoConvergence {
        iterations: max_iter,
        residual: complex_norm(current.0),
    })
}

/// Iterations allowed per candidate in the report pipeline.
const REPORT_MAX_ITER: usize = 60;

/// End-to-end search: scan, contour, intersect, refine, and attach the gap
/// spectrum of the best point.  Stages that merely find nothing — no
/// contour, no crossing, no candidate surviving refinement — all collapse
/// to [`TransparencyError::NoTransparencyFound`].
pub fn transparency_report(spec: &SearchSpec) -> Result<TransparencyReport, TransparencyError> {
    let grid = scan_grid(spec)?;
    let contours = match zero_contours(&grid) {
        Ok(c) => c,
        Err(TransparencyError::NoContour { .. }) => {
            return Err(TransparencyError::NoTransparencyFound)
        }
        Err(e) => return Err(e),
    };
    let (cw, ch) = grid.cell_size();
    let candidates = find_intersections(&contours.re_zero, &contours.im_zero, (0.5 * cw, 0.5 * ch));
    if candidates.is_empty() {
        return Err(TransparencyError::NoTransparencyFound);
    }
    let mut points: Vec<TransparencyPoint> = Vec::new();
    for candidate in candidates {
        match refine_root(spec, candidate, None, REPORT_MAX_ITER) {
            Ok(p) => {
                // A root polished out of the requested box is not an
                // answer to this search (and would make the result set
                // depend on grid density through edge candidates).
                let inside = (spec.s1_range.0..=spec.s1_range.1).contains(&p.s1)
                    && (spec.t2_range.0..=spec.t2_range.1).contains(&p.t2);
                if !inside {
                    continue;
                }
                let dup = points.iter().any(|q| {
                    libm::fabs(q.s1 - p.s1) <= 1e-6 * libm::fabs(q.s1).max(1.0)
                        && libm::fabs(q.t2 - p.t2) <= 1e-6 * libm::fabs(q.t2).max(1.0)
                });
                if !dup {
                    points.push(p);
                }
            }
            Err(TransparencyError::NoConvergence { .. })
            | Err(TransparencyError::LeftFeasibleRegion { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    if points.is_empty() {
        return Err(TransparencyError::NoTransparencyFound);
    }
    points.sort_by(|a, b| a.s1.total_cmp(&b.s1).then(a.t2.total_cmp(&b.t2)));
    let best = *points
        .iter()
        .min_by(|a, b| {
            a.ratio
                .total_cmp(&b.ratio)
                .then(a.s1.total_cmp(&b.s1))
                .then(a.t2.total_cmp(&b.t2))
        })
        .expect("points is nonempty");
    // Spectrum around the search gap, stepping so that the gap itself is a
    // node and both Doppler peaks are covered with margin.
    let pf = make_piecewise_alpha(spec.s0, best.s1, spec.s2, spec.t1, best.t2, spec.k0)
        .map_err(|_| TransparencyError::LeftFeasibleRegion {
            s1: best.s1,
            t2: best.t2,
        })?;
    let peaks = (spec.k0 * spec.s0, spec.k0 * spec.s2);
    let step = 0.02 * spec.k0;
    let lo = 0.5 * peaks.0.min(peaks.1);
    let hi = 1.25 * peaks.0.max(peaks.1);
    let j_lo = libm::ceil((lo - spec.omega) / step) as i64;
    let j_hi = libm::floor((hi - spec.omega) / step) as i64;
    let omegas: Vec<f64> = (j_lo..=j_hi).map(|j| spec.omega + j as f64 * step).collect();
    let spectrum = spectrum_scan(&pf, &omegas, &spec.regularization)?;
    Ok(TransparencyReport {
        spec: spec.clone(),
        points,
        best,
        spectrum,
        doppler_peaks: peaks,
    })
}

/// Pick the search gap by a coarse pre-scan for the dip: walk Ω over the
/// `0.02·k0` lattice strictly between the two Doppler peaks and return
/// the Ω whose box-wide minimum of `|I₋|` is deepest.  The spec's own
/// `omega` is ignored; staying on the lattice makes the peaks exact
/// nodes of the report spectrum later.
pub fn pre_scan_gap(spec: &SearchSpec) -> Result<f64, TransparencyError> {
    let mut coarse = spec.clone();
    coarse.n_s1 = 16;
    coarse.n_t2 = 16;
    let peaks = (spec.k0 * spec.s0, spec.k0 * spec.s2);
    let (peak_lo, peak_hi) = (peaks.0.min(peaks.1), peaks.0.max(peaks.1));
    let step = 0.02 * spec.k0;
    let mut best = (f64::INFINITY, 0.5 * (peak_lo + peak_hi));
    let mut j = 1;
    loop {
        let omega = peak_lo + j as f64 * step;
        if omega >= peak_hi {
            break;
        }
        coarse.omega = omega;
        let grid = scan_grid(&coarse)?;
        let min = grid
            .values
            .iter()
            .flatten()
            .map(|v| complex_norm(*v))
            .fold(f64::INFINITY, f64::min);
        if min < best.0 {
            best = (min, omega);
        }
        j += 1;
    }
    Ok(best.1)
}

/// Demonstration search box: distinct Doppler peaks (`s₀=1`, `s₂=2`),
/// order-unity scales, and the gap picked by [`pre_scan_gap`].
pub fn demo_search_spec() -> Result<SearchSpec, TransparencyError> {
    let mut spec = SearchSpec {
        k0: 1.0,
        s0: 1.0,
        s2: 2.0,
        t1: 5.0,
        omega: 1.5,
        regularization: Regularization::AdiabaticTails { epsilon: 1e-3 },
        s1_range: (0.1, 5.0),
        t2_range: (6.0, 30.0),
        n_s1: 64,
        n_t2: 64,
    };
    spec.omega = pre_scan_gap(&spec)?;
    Ok(spec)
}
