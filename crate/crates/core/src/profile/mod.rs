//! Transverse Kähler-Einstein profile at `a = a_0`.
//!
//! `B_a(x) = -∫_0^x A_a'(s)/(s A_a(s)) ds` maps the open moment interval
//! `(-1/(1+2a), 1)` increasingly onto `R`. With `x_a = B_a^{-1}` and
//! `u_a(ρ) = -log A_a(x_a(ρ))` one has `u_a' = x_a` and
//! `u_a'' ∏(1 + μ_{k,a} u_a') = e^{-u_a}`; this module tabulates those
//! functions on a `ρ` grid and checks the identities numerically.

pub mod fiber;
pub mod model;
pub mod quadrature;
pub mod verify;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use fiber::{chart_transition_pair, evaluate_fiber_metric, moment_function, Chart, MomentData, MomentSample};
pub use model::{MomentPoint, ProfileModel, Side};
pub use verify::{verify_profile, VerifyTolerances};

use crate::catalog::FanoBaseSpec;
use crate::error::{Error, Result};
use crate::exact::roots::RootEnclosure;
use crate::reeb::{self, ReebSolution};

/// Width to which the solver bracket is narrowed before the profile is built,
/// so that `A_a(1)` is negligible next to the smallest representable `1 - x`.
pub fn profile_bracket_width() -> BigRational {
    BigRational::new(1.into(), num_bigint::BigInt::from(1) << 110)
}

/// Rational `a` used for the profile: the exact root when quasi-regular,
/// otherwise the midpoint of the bracket narrowed to [`profile_bracket_width`].
pub fn profile_parameter(spec: &FanoBaseSpec, reeb_solution: &ReebSolution) -> Result<BigRational> {
    if let Some(r) = reeb_solution.exact_root() {
        return Ok(r.clone());
    }
    let enc: RootEnclosure = reeb::refine(spec, reeb_solution, &profile_bracket_width())?;
    Ok(enc.midpoint())
}

/// `B_a(x)` to absolute accuracy `quad_tol`.
pub fn b_value(spec: &FanoBaseSpec, a: &BigRational, x: f64, quad_tol: f64) -> Result<f64> {
    ProfileModel::new(spec, a)?.b_value(x, quad_tol)
}

/// Position reached by inverting `B` and the accumulated `|B|` there.
#[derive(Debug, Clone, Copy)]
pub struct Inversion {
    pub point: MomentPoint,
    pub depth: f64,
    pub rho: f64,
}

const SIGMA_MAX: f64 = 700.0;
const MAX_ITERATIONS: usize = 300;

/// Solves `B_a(x) = rho` by safeguarded Newton in `σ = -log τ`, the log of the
/// distance to the end of the interval that `rho` points at. `dB/dσ` tends to
/// a positive constant at both ends, so Newton behaves well all the way out.
///
/// `warm` must be a previous result on the same side; otherwise the search
/// starts at `x = 0`.
pub fn invert_from(model: &ProfileModel, rho: f64, tol: f64, warm: Option<Inversion>) -> Result<Inversion> {
    if !rho.is_finite() {
        return Err(Error::DomainError { x: rho, lower: model.lower_endpoint() });
    }
    let side = if rho >= 0.0 { Side::Upper } else { Side::Lower };
    let target = rho.abs();
    let origin = model.origin(side);
    let sigma0 = -origin.tau.ln();
    let (mut tau, mut depth) = match warm {
        Some(w) if w.point.side == side => (w.point.tau, w.depth),
        _ => (origin.tau, 0.0),
    };
    if target == 0.0 {
        return Ok(Inversion { point: origin, depth: 0.0, rho });
    }
    let mut sigma = -tau.ln();
    let (mut sigma_lo, mut sigma_hi) = (sigma0, f64::INFINITY);
    for _ in 0..MAX_ITERATIONS {
        let err = depth - target;
        let p = MomentPoint { side, tau };
        let slope = model.b_integrand(p) * tau;
        if err.abs() <= tol {
            // one more Newton correction, which costs no quadrature
            let polished = sigma - err / slope;
            if polished.is_finite() && polished > sigma_lo && polished < sigma_hi {
                let t = (-polished).exp();
                if model.a_at(MomentPoint { side, tau: t }) > 0.0 {
                    tau = t;
                    depth = target;
                }
            }
            return Ok(Inversion { point: MomentPoint { side, tau }, depth, rho });
        }
        if err < 0.0 {
            sigma_lo = sigma_lo.max(sigma);
        } else {
            sigma_hi = sigma_hi.min(sigma);
        }
        let mut cand = sigma - err / slope;
        if !(cand.is_finite() && cand > sigma_lo && cand < sigma_hi) {
            cand = if sigma_hi.is_finite() {
                0.5 * (sigma_lo + sigma_hi)
            } else {
                sigma_lo + 2.0 * (1.0 + (sigma_lo - sigma0))
            };
        }
        if cand >= SIGMA_MAX {
            if sigma_lo >= SIGMA_MAX - 1.0 {
                break;
            }
            cand = SIGMA_MAX.min(0.5 * (sigma_lo + SIGMA_MAX));
        }
        let new_tau = (-cand).exp();
        if model.a_at(MomentPoint { side, tau: new_tau }) <= 0.0 {
            // past a zero of A: B has already diverged before this point
            sigma_hi = cand;
            continue;
        }
        depth += model.integrate_side(side, new_tau, tau, tol)?;
        tau = new_tau;
        sigma = cand;
        if sigma_hi - sigma_lo < 1e-15 * sigma_hi.abs().max(1.0) {
            break;
        }
    }
    if (depth - target).abs() <= tol {
        return Ok(Inversion { point: MomentPoint { side, tau }, depth, rho });
    }
    Err(Error::RhoOutOfRange { rho, reached: if side == Side::Upper { depth } else { -depth } })
}

/// `x = B_a^{-1}(rho)`, strictly inside the open interval `(lo, 1)`.
pub fn invert_b(spec: &FanoBaseSpec, a: &BigRational, rho: f64, tol: f64) -> Result<f64> {
    let model = ProfileModel::new(spec, a)?;
    let inv = invert_from(&model, rho, tol, None)?;
    Ok(clamped_x(&model, inv.point))
}

fn clamped_x(model: &ProfileModel, p: MomentPoint) -> f64 {
    let x = model.x_of(p);
    x.clamp(model.lower_endpoint().next_up(), 1f64.next_down())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub rho: f64,
    pub x: f64,
    pub u: f64,
    pub u_second: f64,
    pub ode_residual: f64,
    pub min_margin: f64,
}

/// One row of the profile at `rho`.
pub fn profile_row(model: &ProfileModel, rho: f64, tol: f64, warm: Option<Inversion>) -> Result<(ProfileRow, Inversion)> {
    let inv = invert_from(model, rho, tol, warm)?;
    let p = inv.point;
    let a_val = model.a_at(p);
    let prod = model.product_at(p);
    let u = -a_val.ln();
    // u'' = dx/dρ = 1/B'(x) = A/∏, equal to -x A/A' away from x = 0 and to A(0) at x = 0
    let u_second = a_val / prod;
    let ode_residual = u_second * prod - (-u).exp();
    let min_margin = model.positivity_margin(p);
    if min_margin.is_nan() || min_margin <= 0.0 {
        return Err(Error::PositivityViolation { rho, margin: min_margin });
    }
    Ok((ProfileRow { rho, x: clamped_x(model, p), u, u_second, ode_residual, min_margin }, inv))
}

/// Central differences of `u` and `x` at `rho` next to the closed forms.
#[derive(Debug, Clone, Copy)]
pub struct FiniteDifference {
    pub rho: f64,
    pub h: f64,
    pub x: f64,
    pub u_second: f64,
    /// `(u(ρ+h) - u(ρ-h)) / 2h`, compared with `x`
    pub du: f64,
    /// `(x(ρ+h) - x(ρ-h)) / 2h`, compared with `u_second`
    pub dx: f64,
}

impl FiniteDifference {
    pub fn du_error(&self) -> f64 {
        (self.du - self.x).abs()
    }

    pub fn dx_error(&self) -> f64 {
        (self.dx - self.u_second).abs()
    }
}

/// The neighbours `ρ ± h` are inverted from the point at `ρ`, so their common
/// quadrature error cancels in the differences; `x` is differenced in
/// endpoint-distance form.
pub fn finite_difference(model: &ProfileModel, rho: f64, h: f64, tol: f64) -> Result<FiniteDifference> {
    let centre = invert_from(model, rho, tol, None)?;
    let plus = invert_from(model, rho + h, tol, Some(centre))?;
    let minus = invert_from(model, rho - h, tol, Some(centre))?;
    let (ap, am) = (model.a_at(plus.point), model.a_at(minus.point));
    // u(ρ+h) - u(ρ-h) = log(A(ρ-h)/A(ρ+h))
    let du = ((am - ap) / ap).ln_1p() / (2.0 * h);
    let delta_x = match (plus.point.side, minus.point.side) {
        (Side::Upper, Side::Upper) => minus.point.tau - plus.point.tau,
        (Side::Lower, Side::Lower) => plus.point.tau - minus.point.tau,
        _ => model.x_of(plus.point) - model.x_of(minus.point),
    };
    let p = centre.point;
    Ok(FiniteDifference {
        rho,
        h,
        x: model.x_of(p),
        u_second: model.a_at(p) / model.product_at(p),
        du,
        dx: delta_x / (2.0 * h),
    })
}

#[derive(Debug, Clone)]
pub struct ProfileTable {
    /// `a` as a double.
    pub a: f64,
    /// The rational `a` the table was computed at.
    pub a_exact: BigRational,
    pub lower_endpoint: f64,
    pub quadrature_tolerance: f64,
    pub rows: Vec<ProfileRow>,
}

#[derive(Debug, Clone, Copy)]
pub struct ProfileGrid {
    pub rho_min: f64,
    pub rho_max: f64,
    pub steps: usize,
}

impl Default for ProfileGrid {
    fn default() -> Self {
        Self { rho_min: -20.0, rho_max: 20.0, steps: 2001 }
    }
}

impl ProfileGrid {
    pub fn points(&self) -> Vec<f64> {
        // weighted form: exact endpoints, and symmetric grids stay symmetric
        let n = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let t = i as f64;
                (self.rho_min * (n - t) + self.rho_max * t) / n
            })
            .collect()
    }
}

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Builds the profile for `spec` at the parameter of `reeb_solution`.
pub fn build_profile(
    spec: &FanoBaseSpec,
    reeb_solution: &ReebSolution,
    grid: ProfileGrid,
    quad_tol: f64,
) -> Result<ProfileTable> {
    let a = profile_parameter(spec, reeb_solution)?;
    build_profile_at(spec, &a, grid, quad_tol)
}

/// Builds the profile at an explicit rational `a`.
///
/// Rows are computed outward from `ρ = 0` on each side, each inversion warm
/// started from its neighbour.
pub fn build_profile_at(spec: &FanoBaseSpec, a: &BigRational, grid: ProfileGrid, quad_tol: f64) -> Result<ProfileTable> {
    tabulate(&ProfileModel::new(spec, a)?, grid, quad_tol)
}

/// Tabulates an existing model on `grid`.
pub fn tabulate(model: &ProfileModel, grid: ProfileGrid, quad_tol: f64) -> Result<ProfileTable> {
    if grid.steps < 2 || grid.rho_min.partial_cmp(&grid.rho_max) != Some(std::cmp::Ordering::Less) {
        return Err(Error::InvalidSpec(format!(
            "profile grid needs rho_min < rho_max and steps >= 2, got [{}, {}] x {}",
            grid.rho_min, grid.rho_max, grid.steps
        )));
    }
    if quad_tol.is_nan() || quad_tol <= 0.0 {
        return Err(Error::InvalidSpec(format!("quadrature tolerance must be positive, got {quad_tol}")));
    }
    let rhos = grid.points();
    let mut rows: Vec<Option<ProfileRow>> = vec![None; rhos.len()];
    let split = rhos.partition_point(|&r| r < 0.0);
    let mut warm = None;
    for i in split..rhos.len() {
        let (row, inv) = profile_row(model, rhos[i], quad_tol, warm)?;
        rows[i] = Some(row);
        warm = Some(inv);
    }
    warm = None;
    for i in (0..split).rev() {
        let (row, inv) = profile_row(model, rhos[i], quad_tol, warm)?;
        rows[i] = Some(row);
        warm = Some(inv);
    }
    Ok(ProfileTable {
        a: model.a(),
        a_exact: model.a_exact().clone(),
        lower_endpoint: model.lower_endpoint(),
        quadrature_tolerance: quad_tol,
        rows: rows.into_iter().map(|r| r.expect("every row filled")).collect(),
    })
}

impl ProfileTable {
    pub fn max_abs_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.ode_residual.abs()).fold(0.0, f64::max)
    }

    pub fn is_trivial_parameter(&self) -> bool {
        self.a_exact.is_zero()
    }

    pub const CSV_HEADER: &'static str = "rho,x,u,u_second,ode_residual,min_margin";

    /// CSV with the fixed header `rho,x,u,u_second,ode_residual,min_margin`.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{:e},{:e},{:e},{:e},{:e},{:e}\n",
                r.rho, r.x, r.u, r.u_second, r.ode_residual, r.min_margin
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_spec;
    use crate::exact::ten_to_minus;
    use crate::reeb::solve_reeb_parameter;
    use num_traits::ToPrimitive;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn dp1() -> (FanoBaseSpec, BigRational) {
        let spec = make_spec(vec![(frac(1, 2), 1)]).unwrap();
        let sol = solve_reeb_parameter(&spec, &ten_to_minus(12)).unwrap();
        let a = profile_parameter(&spec, &sol).unwrap();
        (spec, a)
    }

    #[test]
    fn b_vanishes_at_origin() {
        let (spec, a) = dp1();
        assert_eq!(b_value(&spec, &a, 0.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn b_is_increasing() {
        let (spec, a) = dp1();
        let model = ProfileModel::new(&spec, &a).unwrap();
        let lo = model.lower_endpoint();
        let xs: Vec<f64> = (1..40).map(|i| lo + (1.0 - lo) * i as f64 / 40.0).collect();
        let bs: Vec<f64> = xs.iter().map(|&x| model.b_value(x, 1e-12).unwrap()).collect();
        assert!(bs.windows(2).all(|w| w[0] < w[1]), "{bs:?}");
    }

    #[test]
    fn b_self_convergence() {
        let (spec, a) = dp1();
        let tol = 1e-10;
        let b1 = b_value(&spec, &a, 0.9, tol).unwrap();
        let b2 = b_value(&spec, &a, 0.9, tol / 10.0).unwrap();
        assert!(b1 > 0.0 && b1.is_finite());
        assert!((b1 - b2).abs() <= 10.0 * tol);
    }

    #[test]
    fn b_domain_errors() {
        let (spec, a) = dp1();
        assert!(matches!(b_value(&spec, &a, 1.0, 1e-10), Err(Error::DomainError { .. })));
        assert!(matches!(b_value(&spec, &a, -2.0, 1e-10), Err(Error::DomainError { .. })));
        assert!(matches!(b_value(&spec, &a, f64::NAN, 1e-10), Err(Error::DomainError { .. })));
    }

    #[test]
    fn inversion_at_zero_and_far_out() {
        let (spec, a) = dp1();
        assert_eq!(invert_b(&spec, &a, 0.0, 1e-12).unwrap(), 0.0);
        let lo = -1.0 / (1.0 + 2.0 * a.to_f64().unwrap());
        for rho in [30.0, 40.0] {
            let x = invert_b(&spec, &a, rho, 1e-10).unwrap();
            assert!(x < 1.0 && 1.0 - x < 1e-3, "rho {rho}: {x}");
            let x = invert_b(&spec, &a, -rho, 1e-10).unwrap();
            assert!(x > lo && x - lo < 1e-3, "rho {}: {x}", -rho);
        }
    }

    #[test]
    fn inversion_round_trip() {
        let (spec, a) = dp1();
        let model = ProfileModel::new(&spec, &a).unwrap();
        let tol = 1e-10;
        for k in -25..=25 {
            let rho = k as f64;
            // in endpoint-distance coordinates the identity holds to tol
            let inv = invert_from(&model, rho, tol, None).unwrap();
            let d = if k == 0 { 0.0 } else { model.depth(inv.point, 1e-13).unwrap() };
            assert!((d - rho.abs()).abs() <= tol, "rho {rho}: |B| = {d}");
            // as a double, x carries an extra rounding of half an ulp
            let x = invert_b(&spec, &a, rho, tol).unwrap();
            let b = model.b_value(x, 1e-13).unwrap();
            let p = model.point_of(x).unwrap();
            let conditioning = model.b_integrand(p) * 0.5 * (x.next_up() - x);
            assert!((b - rho).abs() <= tol + conditioning, "rho {rho}: B = {b}");
        }
    }

    #[test]
    fn origin_row_is_analytic() {
        let (spec, a) = dp1();
        let t = build_profile_at(&spec, &a, ProfileGrid { rho_min: -1.0, rho_max: 1.0, steps: 3 }, 1e-10).unwrap();
        let r = t.rows[1];
        assert_eq!(r.rho, 0.0);
        assert_eq!(r.x, 0.0);
        // closed form lo^2/2 + μ_a lo^3/3 with a = (√13 - 5)/12
        let a0 = reeb::a_value(&spec, &a, &frac(0, 1)).unwrap().to_f64().unwrap();
        assert!((a0 - 0.608_564_636_477_666).abs() < 1e-12, "{a0}");
        assert!((r.u + a0.ln()).abs() < 1e-15);
        assert!((r.u - 0.4966).abs() < 1e-4);
        assert!((r.u_second - a0).abs() < 1e-15);
        assert!(r.ode_residual.abs() < 1e-15);
    }

    #[test]
    fn two_row_grid() {
        let spec = make_spec(vec![(frac(0, 1), 1)]).unwrap();
        let t = build_profile_at(&spec, &frac(0, 1), ProfileGrid { rho_min: -20.0, rho_max: 20.0, steps: 2 }, 1e-10).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!((t.rows[0].x + t.rows[1].x).abs() < 1e-12);
    }

    #[test]
    fn grid_validation() {
        let spec = make_spec(vec![(frac(0, 1), 1)]).unwrap();
        let a = frac(0, 1);
        assert!(build_profile_at(&spec, &a, ProfileGrid { rho_min: 1.0, rho_max: 1.0, steps: 5 }, 1e-10).is_err());
        assert!(build_profile_at(&spec, &a, ProfileGrid { rho_min: 0.0, rho_max: 1.0, steps: 1 }, 1e-10).is_err());
        assert!(build_profile_at(&spec, &a, ProfileGrid::default(), 0.0).is_err());
    }

    #[test]
    fn csv_header_and_rows() {
        let spec = make_spec(vec![(frac(0, 1), 1)]).unwrap();
        let t = build_profile_at(&spec, &frac(0, 1), ProfileGrid { rho_min: -1.0, rho_max: 1.0, steps: 5 }, 1e-10).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("rho,x,u,u_second,ode_residual,min_margin"));
        assert_eq!(lines.count(), 5);
    }

    #[test]
    fn tiny_panel_budget_fails_cleanly() {
        let (spec, a) = dp1();
        let mut model = ProfileModel::new(&spec, &a).unwrap();
        model.max_panels = 1;
        assert!(matches!(model.b_value(1.0 - 1e-9, 1e-14), Err(Error::QuadratureFailure { .. })));
    }
}
