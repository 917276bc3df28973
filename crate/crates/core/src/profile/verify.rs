use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ProfileTable;
use crate::catalog::FanoBaseSpec;
use crate::exact::to_fraction_string;
use crate::reeb::{self, ReebSolution};
use crate::report::{Measured, Provenance, VerificationReport, VERSION};

#[derive(Debug, Clone, Copy)]
pub struct VerifyTolerances {
    /// Bound on `sup |u'' ∏(1 + μ_{k,a} u') - e^{-u}|`.
    pub ode_residual: f64,
    /// Bound on `|A_a(1)|`.
    pub a_at_one: f64,
    /// Interior sample points for the sampled `A_a` checks.
    pub samples: usize,
}

impl VerifyTolerances {
    /// Residual bound `100 × quad_tol`.
    pub fn for_quadrature(quad_tol: f64) -> Self {
        Self { ode_residual: 100.0 * quad_tol, a_at_one: 1e-12, samples: 200 }
    }
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self::for_quadrature(super::DEFAULT_QUAD_TOL)
    }
}

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Runs every profile check. Failures become report entries, never errors.
pub fn verify_profile(
    spec: &FanoBaseSpec,
    reeb_solution: &ReebSolution,
    table: &ProfileTable,
    tol: &VerifyTolerances,
) -> VerificationReport {
    let enc = &reeb_solution.a0_enclosure;
    let mut report = VerificationReport::new(Provenance {
        label: spec.label().to_string(),
        a0_enclosure: [to_fraction_string(&enc.lo), to_fraction_string(&enc.hi)],
        a_used: to_fraction_string(&table.a_exact),
        version: VERSION.to_string(),
    });
    let rows = &table.rows;

    let sup = table.max_abs_residual();
    report.push("ode_residual_sup", sup <= tol.ode_residual, Measured::Float(sup), tol.ode_residual);

    let min_u2 = rows.iter().map(|r| r.u_second).fold(f64::INFINITY, f64::min);
    report.push("u_second_positive", min_u2 > 0.0, Measured::Float(min_u2), 0.0);

    let min_drho = rows.windows(2).map(|w| w[1].rho - w[0].rho).fold(f64::INFINITY, f64::min);
    report.push("rho_strictly_increasing", min_drho > 0.0, Measured::Float(min_drho), 0.0);

    let min_dx = rows.windows(2).map(|w| w[1].x - w[0].x).fold(f64::INFINITY, f64::min);
    report.push("x_strictly_increasing", min_dx > 0.0, Measured::Float(min_dx), 0.0);

    let lo = table.lower_endpoint;
    let gap = rows.iter().map(|r| (r.x - lo).min(1.0 - r.x)).fold(f64::INFINITY, f64::min);
    report.push("x_inside_moment_interval", gap > 0.0, Measured::Float(gap), 0.0);

    let margin = rows.iter().map(|r| r.min_margin).fold(f64::INFINITY, f64::min);
    report.push("positivity_margin", margin > 0.0, Measured::Float(margin), 0.0);

    let a = &table.a_exact;
    report.push(
        "a_within_solver_enclosure",
        enc.contains(a),
        Measured::Exact(to_fraction_string(a)),
        f(&enc.width()),
    );

    match (reeb::a_poly(spec, a), reeb::integrand_poly(spec, a)) {
        (Ok(a_poly), Ok(integrand)) => {
            let one = BigRational::from_integer(1.into());
            let at_one = a_poly.eval(&one);
            report.push(
                "A_at_one_vanishes",
                f(&at_one).abs() <= tol.a_at_one,
                Measured::Float(f(&at_one)),
                tol.a_at_one,
            );

            // rational samples strictly inside (lo, 1)
            let lo_exact = reeb::lower_endpoint(a);
            let width = &one - &lo_exact;
            let n = tol.samples.max(1);
            let denom = BigRational::from_integer((n + 1).into());
            let xs: Vec<BigRational> = (1..=n)
                .map(|i| &lo_exact + &width * BigRational::from_integer(i.into()) / &denom)
                .collect();
            let a_zero = a_poly.eval(&BigRational::zero());
            let values: Vec<BigRational> = xs.iter().map(|x| a_poly.eval(x)).collect();
            let min_a = values.iter().min().cloned().unwrap_or_else(BigRational::zero);
            let bounded = values.iter().all(|v| v.is_positive() && v <= &a_zero);
            report.push("A_positive_and_at_most_A0", bounded, Measured::Float(f(&min_a)), 0.0);

            // A'(x)/x = -f(x)/x = -∏(1 + μ_{k,a} x)
            let ratios: Vec<BigRational> = xs
                .iter()
                .filter(|x| !x.is_zero())
                .map(|x| -integrand.eval(x) / x)
                .collect();
            let max_ratio = ratios.iter().max().cloned().unwrap_or_else(BigRational::zero);
            report.push(
                "A_prime_over_x_negative",
                ratios.iter().all(Signed::is_negative),
                Measured::Float(f(&max_ratio)),
                0.0,
            );
        }
        (Err(e), _) | (_, Err(e)) => {
            report.push("A_at_one_vanishes", false, Measured::Exact(e.to_string()), tol.a_at_one);
        }
    }
    report
}
