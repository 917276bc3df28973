//! Double-precision model of `A_a` and `B_a` for one fixed rational `a`.
//!
//! `A_a` vanishes at the lower end of the moment interval and (when `a = a_0`)
//! at `x = 1`, and `B_a` diverges logarithmically at both ends. To keep full
//! relative accuracy there, points are addressed by their distance `τ > 0` to
//! the nearer end: `x = 1 - τ` on the upper side (`x ≥ 0`) and `x = lo + τ` on
//! the lower side (`x ≤ 0`). `A_a` is expanded exactly around each end before
//! rounding, so `A(τ)` never suffers cancellation.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::quadrature::{geometric_breakpoints, integrate};
use crate::catalog::FanoBaseSpec;
use crate::error::{Error, Result};
use crate::reeb;

/// Which end of the moment interval a point is measured from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `x = 1 - τ`, `τ ∈ (0, 1]`.
    Upper,
    /// `x = lo + τ`, `τ ∈ (0, -lo]`.
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPoint {
    pub side: Side,
    pub tau: f64,
}

#[derive(Debug, Clone)]
struct Factor {
    mu_shifted: f64,
    at_upper: f64,
    at_lower: f64,
    multiplicity: i32,
}

/// Panel budget per quadrature call.
pub const DEFAULT_MAX_PANELS: usize = 4000;

#[derive(Debug, Clone)]
pub struct ProfileModel {
    a_exact: BigRational,
    a: f64,
    lower: f64,
    /// `A(1 - τ) = Σ upper[j] τ^j`
    upper: Vec<f64>,
    /// `A(lo + τ) = Σ lower_coeffs[j] τ^j`, `lower_coeffs[0] = 0`
    lower_coeffs: Vec<f64>,
    factors: Vec<Factor>,
    a_at_zero: f64,
    a_at_one: f64,
    pub max_panels: usize,
}

impl ProfileModel {
    pub fn new(spec: &FanoBaseSpec, a: &BigRational) -> Result<Self> {
        let poly = reeb::a_poly(spec, a)?;
        let lo = reeb::lower_endpoint(a);
        let one = BigRational::one();
        let upper: Vec<f64> = poly
            .taylor_shift(&one)
            .to_f64_coeffs()
            .into_iter()
            .enumerate()
            .map(|(j, c)| if j % 2 == 1 { -c } else { c })
            .collect();
        let lower_coeffs = poly.taylor_shift(&lo).to_f64_coeffs();
        let factors = spec
            .entries()
            .iter()
            .map(|e| {
                let m = reeb::mu_shift(&e.mu, a);
                Factor {
                    mu_shifted: m.to_f64().unwrap(),
                    at_upper: (&one + &m).to_f64().unwrap(),
                    at_lower: (&one + &m * &lo).to_f64().unwrap(),
                    multiplicity: e.multiplicity as i32,
                }
            })
            .collect();
        Ok(Self {
            a_exact: a.clone(),
            a: a.to_f64().unwrap(),
            lower: lo.to_f64().unwrap(),
            upper,
            lower_coeffs,
            factors,
            a_at_zero: poly.eval(&BigRational::from_integer(0.into())).to_f64().unwrap(),
            a_at_one: poly.eval(&one).to_f64().unwrap(),
            max_panels: DEFAULT_MAX_PANELS,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn a_exact(&self) -> &BigRational {
        &self.a_exact
    }

    /// `-1/(1 + 2a)` rounded to a double.
    pub fn lower_endpoint(&self) -> f64 {
        self.lower
    }

    pub fn a_at_zero(&self) -> f64 {
        self.a_at_zero
    }

    pub fn a_at_one(&self) -> f64 {
        self.a_at_one
    }

    /// The origin `x = 0` as seen from `side`.
    pub fn origin(&self, side: Side) -> MomentPoint {
        let tau = match side {
            Side::Upper => 1.0,
            Side::Lower => -self.lower,
        };
        MomentPoint { side, tau }
    }

    pub fn x_of(&self, p: MomentPoint) -> f64 {
        match p.side {
            Side::Upper => 1.0 - p.tau,
            Side::Lower => self.lower + p.tau,
        }
    }

    /// Locates `x` by its distance to the nearer end. Fails outside `(lo, 1)`.
    pub fn point_of(&self, x: f64) -> Result<MomentPoint> {
        if !(x > self.lower && x < 1.0) {
            return Err(Error::DomainError { x, lower: self.lower });
        }
        Ok(if x >= 0.0 {
            MomentPoint { side: Side::Upper, tau: 1.0 - x }
        } else {
            MomentPoint { side: Side::Lower, tau: x - self.lower }
        })
    }

    /// `A_a` at the point.
    pub fn a_at(&self, p: MomentPoint) -> f64 {
        let c = match p.side {
            Side::Upper => &self.upper,
            Side::Lower => &self.lower_coeffs,
        };
        c.iter().rev().fold(0.0, |acc, &cj| acc * p.tau + cj)
    }

    /// `∏ (1 + μ_{k,a} x)` at the point.
    pub fn product_at(&self, p: MomentPoint) -> f64 {
        self.factors
            .iter()
            .map(|f| {
                let v = match p.side {
                    Side::Upper => f.at_upper - f.mu_shifted * p.tau,
                    Side::Lower => f.at_lower + f.mu_shifted * p.tau,
                };
                v.powi(f.multiplicity)
            })
            .product()
    }

    /// `min_k (1 + μ_{k,a} x)`.
    pub fn positivity_margin(&self, p: MomentPoint) -> f64 {
        self.factors
            .iter()
            .map(|f| match p.side {
                Side::Upper => f.at_upper - f.mu_shifted * p.tau,
                Side::Lower => f.at_lower + f.mu_shifted * p.tau,
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// `B_a'(x) = -A'(x)/(x A(x)) = ∏(1 + μ_{k,a} x)/A(x)`; the removable
    /// singularity at `x = 0` is already cancelled.
    pub fn b_integrand(&self, p: MomentPoint) -> f64 {
        self.product_at(p) / self.a_at(p)
    }

    /// `∫_{τ1}^{τ2} B'(x(τ)) dτ` along one side.
    pub fn integrate_side(&self, side: Side, tau1: f64, tau2: f64, tol: f64) -> Result<f64> {
        let (lo, hi) = if tau1 < tau2 { (tau1, tau2) } else { (tau2, tau1) };
        let breaks = geometric_breakpoints(lo, hi, 4.0);
        let r = integrate(|t| self.b_integrand(MomentPoint { side, tau: t }), tau1, tau2, tol, self.max_panels, &breaks)?;
        Ok(r.value)
    }

    /// `|B_a(x)|` for `x` given by `p`, i.e. the integral from the origin.
    pub fn depth(&self, p: MomentPoint, tol: f64) -> Result<f64> {
        let o = self.origin(p.side);
        self.integrate_side(p.side, p.tau, o.tau, tol)
    }

    /// `B_a(x) = ∫_0^x ∏(1 + μ_{k,a} s)/A(s) ds`.
    pub fn b_value(&self, x: f64, tol: f64) -> Result<f64> {
        let p = self.point_of(x)?;
        if self.a_at(p) <= 0.0 {
            return Err(Error::DomainError { x, lower: self.lower });
        }
        let d = self.depth(p, tol)?;
        Ok(match p.side {
            Side::Upper => d,
            Side::Lower => -d,
        })
    }
}
