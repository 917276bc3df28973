//! The Reeb parameter `a_0`.
//!
//! For `a > -1/2` put `μ_{k,a} = μ_k + a(1 + μ_k)`,
//! `f(x; a) = x ∏_k (1 + μ_{k,a} x)` and
//!
//! ```text
//! F(a)   = ∫_{-1/(1+2a)}^{1} f(x; a) dx = -A_a(1),
//! A_a(x) = -∫_{-1/(1+2a)}^{x} f(s; a) ds.
//! ```
//!
//! `F` is strictly increasing on `(-1/2, ∞)` and runs from `-∞` to `+∞`, so it
//! has exactly one zero `a_0`. Everything here is exact: `f` is a polynomial in
//! `x` with rational coefficients for rational `a`, so all integrals are
//! evaluated through exact antiderivatives.
//!
//! The root is found twice, independently: by exact bisection on `F` and by
//! Sturm isolation of the cleared numerator `P(a) = (1 + 2a)^{n+2} F(a)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalog::FanoBaseSpec;
use crate::error::{Error, Result};
use crate::exact::roots::{isolate_real_roots, rational_root_test, RootEnclosure, SearchInterval};
use crate::exact::{ten_to_minus, RationalPoly};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn minus_half() -> BigRational {
    BigRational::new(BigInt::from(-1), BigInt::from(2))
}

/// `μ + a(1 + μ)`.
pub fn mu_shift(mu: &BigRational, a: &BigRational) -> BigRational {
    mu + a * (BigRational::one() + mu)
}

fn check_parameter(a: &BigRational) -> Result<()> {
    if *a <= minus_half() {
        Err(Error::ReebParameterOutOfRange { a: a.to_string() })
    } else {
        Ok(())
    }
}

/// Left end `-1/(1 + 2a)` of the moment interval.
pub fn lower_endpoint(a: &BigRational) -> BigRational {
    -(BigRational::one() + int(2) * a).recip()
}

/// `∏_k (1 + μ_{k,a} x)` as a polynomial in `x`.
pub fn shifted_product(spec: &FanoBaseSpec, a: &BigRational) -> RationalPoly {
    spec.entries().iter().fold(RationalPoly::one(), |acc, e| {
        let factor = RationalPoly::linear(BigRational::one(), mu_shift(&e.mu, a));
        &acc * &factor.pow(e.multiplicity)
    })
}

/// `f(x; a) = x ∏ (1 + μ_{k,a} x)`, of degree `n + 1` in `x`.
pub fn integrand_poly(spec: &FanoBaseSpec, a: &BigRational) -> Result<RationalPoly> {
    check_parameter(a)?;
    Ok(&RationalPoly::x() * &shifted_product(spec, a))
}

/// `A_a` as a polynomial in `x`.
pub fn a_poly(spec: &FanoBaseSpec, a: &BigRational) -> Result<RationalPoly> {
    let anti = integrand_poly(spec, a)?.antiderivative();
    let c = anti.eval(&lower_endpoint(a));
    Ok(&RationalPoly::constant(c) - &anti)
}

/// `A_a(x) = -∫_{-1/(1+2a)}^x f(s; a) ds`.
pub fn a_value(spec: &FanoBaseSpec, a: &BigRational, x: &BigRational) -> Result<BigRational> {
    let f = integrand_poly(spec, a)?;
    Ok(-f.definite_integral(&lower_endpoint(a), x))
}

/// `F(a) = ∫_{-1/(1+2a)}^1 f(x; a) dx`.
pub fn f_value(spec: &FanoBaseSpec, a: &BigRational) -> Result<BigRational> {
    let f = integrand_poly(spec, a)?;
    Ok(f.definite_integral(&lower_endpoint(a), &BigRational::one()))
}

/// `∂f/∂a = x^2 Σ_j (1 + μ_j) ∏_{k≠j} (1 + μ_{k,a} x)`.
pub fn integrand_a_derivative(spec: &FanoBaseSpec, a: &BigRational) -> Result<RationalPoly> {
    check_parameter(a)?;
    let factors: Vec<RationalPoly> = spec
        .entries()
        .iter()
        .map(|e| RationalPoly::linear(BigRational::one(), mu_shift(&e.mu, a)))
        .collect();
    let mut sum = RationalPoly::zero();
    for (i, e) in spec.entries().iter().enumerate() {
        let weight = int(i64::from(e.multiplicity)) * (BigRational::one() + &e.mu);
        let mut term = RationalPoly::constant(weight);
        for (j, (f, other)) in factors.iter().zip(spec.entries()).enumerate() {
            let power = if i == j { other.multiplicity - 1 } else { other.multiplicity };
            term = &term * &f.pow(power);
        }
        sum = &sum + &term;
    }
    Ok(&RationalPoly::x().pow(2) * &sum)
}

/// `f(-1/(1+2a); a)`, the integrand at the moving endpoint. Always negative.
pub fn boundary_value(spec: &FanoBaseSpec, a: &BigRational) -> Result<BigRational> {
    Ok(integrand_poly(spec, a)?.eval(&lower_endpoint(a)))
}

/// `F'(a)` from the Leibniz rule:
/// `∫_{-1/(1+2a)}^1 ∂f/∂a dx - 2/(1+2a)^2 · f(-1/(1+2a); a)`.
///
/// The first term is nonnegative and the second positive.
pub fn f_derivative_value(spec: &FanoBaseSpec, a: &BigRational) -> Result<BigRational> {
    check_parameter(a)?;
    let lo = lower_endpoint(a);
    let interior = integrand_a_derivative(spec, a)?.definite_integral(&lo, &BigRational::one());
    let c = BigRational::one() + int(2) * a;
    let boundary = -int(2) / (&c * &c) * boundary_value(spec, a)?;
    Ok(interior + boundary)
}

/// Futaki obstruction `∫_{-1}^1 x ∏ (1 + μ_k x) dx` of `M_W^L`.
///
/// `M_W^L` is Kähler-Einstein iff this vanishes. It equals `F(0)`.
pub fn futaki_obstruction(spec: &FanoBaseSpec) -> BigRational {
    let f = &RationalPoly::x()
        * &spec.entries().iter().fold(RationalPoly::one(), |acc, e| {
            &acc * &RationalPoly::linear(BigRational::one(), e.mu.clone()).pow(e.multiplicity)
        });
    f.definite_integral(&-BigRational::one(), &BigRational::one())
}

/// `P(a) = (1 + 2a)^{n+2} F(a)`, a polynomial in `a`.
///
/// Computed symbolically: the integrand is expanded with coefficients in
/// `Q[a]`, integrated in `x`, and the lower-limit powers `(-1/(1+2a))^j`,
/// `j ≤ n + 2`, are cleared.
pub fn exact_numerator_poly(spec: &FanoBaseSpec) -> RationalPoly {
    // x-coefficients of ∏(1 + μ_{k,a} x), each a polynomial in a
    let mut coeffs: Vec<RationalPoly> = vec![RationalPoly::one()];
    for mu in spec.eigenvalues() {
        let shifted = RationalPoly::linear(mu.clone(), BigRational::one() + mu);
        let mut next = vec![RationalPoly::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] = &next[i] + c;
            next[i + 1] = &next[i + 1] + &(c * &shifted);
        }
        coeffs = next;
    }
    // f has x^{i+1} coefficient coeffs[i]; its antiderivative has x^{i+2} coefficient coeffs[i]/(i+2)
    let n2 = spec.dimension() + 2;
    let c = RationalPoly::from_ints(&[1, 2]);
    let c_pow: Vec<RationalPoly> = (0..=n2).map(|k| c.pow(k)).collect();
    let mut p = RationalPoly::zero();
    for (i, ci) in coeffs.iter().enumerate() {
        let j = i as u32 + 2;
        let g = ci.scale(&int(i64::from(j)).recip());
        let sign = if j.is_multiple_of(2) { -BigRational::one() } else { BigRational::one() };
        let bracket = &c_pow[n2 as usize] + &c_pow[(n2 - j) as usize].scale(&sign);
        p = &p + &(&g * &bracket);
    }
    p
}

/// Regularity of the Sasaki structure with Reeb field `ξ_{a_0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    /// `a_0` is rational.
    QuasiRegular(BigRational),
    Irregular,
}

impl Regularity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regularity::QuasiRegular(_) => "quasi-regular",
            Regularity::Irregular => "irregular",
        }
    }
}

/// Quasi-regular exactly when the root of `p` isolated by `enclosure` is rational.
pub fn classify_regularity(p: &RationalPoly, enclosure: &RootEnclosure) -> Regularity {
    match rational_root_test(p, enclosure) {
        Some(r) => Regularity::QuasiRegular(r),
        None => Regularity::Irregular,
    }
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Maximum enclosure width.
    pub tolerance: BigRational,
    /// Largest `a` tried while bracketing from above.
    pub upper_cap: BigRational,
    /// Smallest `a + 1/2` tried while bracketing from below.
    pub lower_gap: BigRational,
    /// Newton steps for the float polish.
    pub newton_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tolerance: ten_to_minus(12),
            upper_cap: int(1_000_000),
            lower_gap: ten_to_minus(9),
            newton_steps: 8,
        }
    }
}

impl SolverOptions {
    pub fn with_tolerance(tolerance: BigRational) -> Self {
        Self { tolerance, ..Self::default() }
    }
}

#[derive(Debug, Clone)]
pub struct ReebSolution {
    /// Sign-change bracket of `F` from exact bisection.
    pub a0_enclosure: RootEnclosure,
    /// Newton-polished double, clamped into `a0_enclosure`.
    pub a0_float: f64,
    /// `P(a) = (1 + 2a)^{n+2} F(a)`.
    pub numerator: RationalPoly,
    /// Enclosure of the unique root of `P` in `(-1/2, ∞)` from Sturm isolation.
    pub isolation_enclosure: RootEnclosure,
    pub regularity: Regularity,
    /// `|F(a0_float)|`, evaluated exactly then rounded.
    pub f_residual: f64,
    pub futaki_at_zero: BigRational,
    pub tolerance: BigRational,
}

impl ReebSolution {
    /// The exact root when quasi-regular.
    pub fn exact_root(&self) -> Option<&BigRational> {
        match &self.regularity {
            Regularity::QuasiRegular(r) => Some(r),
            Regularity::Irregular => None,
        }
    }

    /// Whether the bisection bracket and the isolation bracket overlap.
    pub fn paths_agree(&self) -> bool {
        self.a0_enclosure.lo <= self.isolation_enclosure.hi && self.isolation_enclosure.lo <= self.a0_enclosure.hi
    }
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact bracket `[lo, hi]` with `F(lo) < 0 < F(hi)`, or a point where `F`
/// vanishes exactly.
pub fn bracket_root(spec: &FanoBaseSpec, options: &SolverOptions) -> Result<RootEnclosure> {
    let zero = BigRational::zero();
    match sign(&f_value(spec, &zero)?) {
        0 => Ok(RootEnclosure { lo: zero.clone(), hi: zero }),
        -1 => {
            let (mut lo, mut hi) = (zero, BigRational::one());
            loop {
                if hi > options.upper_cap {
                    return Err(Error::SolverFailure(format!(
                        "F(a) < 0 up to a = {}",
                        options.upper_cap
                    )));
                }
                match sign(&f_value(spec, &hi)?) {
                    0 => return Ok(RootEnclosure { lo: hi.clone(), hi }),
                    1 => return Ok(RootEnclosure { lo, hi }),
                    _ => {}
                }
                lo = hi.clone();
                hi = &hi * int(2);
            }
        }
        _ => {
            let mut hi = zero;
            let mut gap = BigRational::new(BigInt::one(), BigInt::from(4));
            loop {
                if gap < options.lower_gap {
                    return Err(Error::SolverFailure(format!(
                        "F(a) > 0 down to a = -1/2 + {}",
                        options.lower_gap
                    )));
                }
                let lo = minus_half() + &gap;
                match sign(&f_value(spec, &lo)?) {
                    0 => return Ok(RootEnclosure { lo: lo.clone(), hi: lo }),
                    -1 => return Ok(RootEnclosure { lo, hi }),
                    _ => {}
                }
                hi = lo;
                gap /= int(2);
            }
        }
    }
}

/// Exact bisection of `F` on a sign-change bracket until it is no wider than `tolerance`.
pub fn bisect(spec: &FanoBaseSpec, bracket: RootEnclosure, tolerance: &BigRational) -> Result<RootEnclosure> {
    let RootEnclosure { mut lo, mut hi } = bracket;
    let two = int(2);
    while &(&hi - &lo) > tolerance {
        let mid = (&lo + &hi) / &two;
        match sign(&f_value(spec, &mid)?) {
            0 => return Ok(RootEnclosure { lo: mid.clone(), hi: mid }),
            1 => hi = mid,
            _ => lo = mid,
        }
    }
    Ok(RootEnclosure { lo, hi })
}

/// Root path (i): bracket expansion from `a = 0` followed by exact bisection.
pub fn bisection_root(spec: &FanoBaseSpec, options: &SolverOptions) -> Result<RootEnclosure> {
    let bracket = bracket_root(spec, options)?;
    if bracket.is_exact() {
        return Ok(bracket);
    }
    bisect(spec, bracket, &options.tolerance)
}

/// Root path (ii): Sturm isolation of `P(a)` on `(-1/2, ∞)`.
pub fn isolation_root(numerator: &RationalPoly, tolerance: &BigRational) -> Result<RootEnclosure> {
    let roots = isolate_real_roots(numerator, &SearchInterval::new(minus_half(), None), tolerance)?;
    match <[RootEnclosure; 1]>::try_from(roots) {
        Ok([r]) => Ok(r),
        Err(roots) => Err(Error::SolverFailure(format!(
            "P(a) has {} roots in (-1/2, inf), expected exactly one",
            roots.len()
        ))),
    }
}

fn inner_float_bounds(enc: &RootEnclosure) -> (f64, f64) {
    let mut lo = enc.lo.to_f64().unwrap_or(f64::NAN);
    if BigRational::from_float(lo).is_some_and(|l| l < enc.lo) {
        lo = lo.next_up();
    }
    let mut hi = enc.hi.to_f64().unwrap_or(f64::NAN);
    if BigRational::from_float(hi).is_some_and(|h| h > enc.hi) {
        hi = hi.next_down();
    }
    if lo > hi {
        // no double inside the enclosure; the rounded midpoint is the best we can do
        let m = enc.midpoint().to_f64().unwrap_or(f64::NAN);
        return (m, m);
    }
    (lo, hi)
}

fn exact_f_at(spec: &FanoBaseSpec, a: f64) -> Result<BigRational> {
    let a = BigRational::from_float(a).ok_or_else(|| Error::SolverFailure(format!("non-finite a = {a}")))?;
    f_value(spec, &a)
}

/// Newton iteration on `F` in doubles, clamped to the enclosure.
pub fn newton_polish(spec: &FanoBaseSpec, enclosure: &RootEnclosure, steps: usize) -> Result<f64> {
    let (lo, hi) = inner_float_bounds(enclosure);
    let mut a = enclosure.midpoint().to_f64().unwrap_or(f64::NAN).clamp(lo, hi);
    if enclosure.is_exact() || lo == hi {
        return Ok(a);
    }
    for _ in 0..steps {
        let exact_a = BigRational::from_float(a).expect("finite");
        let f = f_value(spec, &exact_a)?;
        if f.is_zero() {
            break;
        }
        let df = f_derivative_value(spec, &exact_a)?;
        let next = (a - f.to_f64().unwrap() / df.to_f64().unwrap()).clamp(lo, hi);
        if next == a {
            break;
        }
        a = next;
    }
    Ok(a)
}

/// Solves `F(a_0) = 0` with the default options and the given enclosure width.
pub fn solve_reeb_parameter(spec: &FanoBaseSpec, tolerance: &BigRational) -> Result<ReebSolution> {
    solve_with(spec, &SolverOptions::with_tolerance(tolerance.clone()))
}

pub fn solve_with(spec: &FanoBaseSpec, options: &SolverOptions) -> Result<ReebSolution> {
    if !options.tolerance.is_positive() {
        return Err(Error::SolverFailure("tolerance must be positive".into()));
    }
    let a0_enclosure = bisection_root(spec, options)?;
    let numerator = exact_numerator_poly(spec);
    let isolation_enclosure = isolation_root(&numerator, &options.tolerance)?;
    let solution_overlap = a0_enclosure.lo <= isolation_enclosure.hi && isolation_enclosure.lo <= a0_enclosure.hi;
    if !solution_overlap {
        return Err(Error::SolverFailure(format!(
            "bisection [{}, {}] and isolation [{}, {}] disagree",
            a0_enclosure.lo, a0_enclosure.hi, isolation_enclosure.lo, isolation_enclosure.hi
        )));
    }
    let regularity = if a0_enclosure.is_exact() {
        Regularity::QuasiRegular(a0_enclosure.lo.clone())
    } else {
        classify_regularity(&numerator, &isolation_enclosure)
    };
    let a0_float = match &regularity {
        Regularity::QuasiRegular(r) => r.to_f64().unwrap_or(f64::NAN),
        Regularity::Irregular => newton_polish(spec, &a0_enclosure, options.newton_steps)?,
    };
    let f_residual = exact_f_at(spec, a0_float)?.abs().to_f64().unwrap_or(f64::NAN);
    Ok(ReebSolution {
        a0_enclosure,
        a0_float,
        numerator,
        isolation_enclosure,
        regularity,
        f_residual,
        futaki_at_zero: futaki_obstruction(spec),
        tolerance: options.tolerance.clone(),
    })
}

/// Narrows an existing solution's bracket by further exact bisection.
///
/// Signs are read off `P(a)`, which agrees in sign with `F(a)` for
/// `a > -1/2` and is much cheaper to evaluate.
pub fn refine(spec: &FanoBaseSpec, solution: &ReebSolution, tolerance: &BigRational) -> Result<RootEnclosure> {
    if solution.a0_enclosure.is_exact() || &solution.a0_enclosure.width() <= tolerance {
        return Ok(solution.a0_enclosure.clone());
    }
    let RootEnclosure { mut lo, mut hi } = solution.a0_enclosure.clone();
    check_parameter(&lo)?;
    let p = if solution.numerator.is_zero() { exact_numerator_poly(spec) } else { solution.numerator.clone() };
    let two = int(2);
    while &(&hi - &lo) > tolerance {
        let mid = (&lo + &hi) / &two;
        match sign(&p.eval(&mid)) {
            0 => return Ok(RootEnclosure { lo: mid.clone(), hi: mid }),
            1 => hi = mid,
            _ => lo = mid,
        }
    }
    Ok(RootEnclosure { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_spec;
    use crate::exact::poly::rat;

    fn spec(entries: &[(i64, i64, u32)]) -> FanoBaseSpec {
        make_spec(entries.iter().map(|&(n, d, m)| (rat(n, d), m)).collect()).unwrap()
    }

    fn dp1() -> FanoBaseSpec {
        spec(&[(1, 2, 1)])
    }

    #[test]
    fn mu_shift_examples() {
        assert_eq!(mu_shift(&rat(1, 2), &rat(0, 1)), rat(1, 2));
        for a in [rat(0, 1), rat(3, 7), rat(-1, 3), rat(100, 1)] {
            assert_eq!(mu_shift(&rat(-1, 1), &a), rat(-1, 1));
        }
        assert_eq!(mu_shift(&rat(1, 2), &rat(1, 1)), rat(2, 1));
    }

    #[test]
    fn integrand_examples() {
        assert_eq!(integrand_poly(&dp1(), &rat(0, 1)).unwrap(), RationalPoly::new(vec![rat(0, 1), rat(1, 1), rat(1, 2)]));
        let a = rat(2, 5);
        let expected = &RationalPoly::x() * &RationalPoly::linear(rat(1, 1), a.clone()).pow(3);
        assert_eq!(integrand_poly(&spec(&[(0, 1, 3)]), &a).unwrap(), expected);
        assert_eq!(integrand_poly(&dp1(), &rat(1, 1)).unwrap(), RationalPoly::from_ints(&[0, 1, 2]));
        assert!(matches!(integrand_poly(&dp1(), &rat(-1, 2)), Err(Error::ReebParameterOutOfRange { .. })));
        assert!(matches!(integrand_poly(&dp1(), &rat(-3, 4)), Err(Error::ReebParameterOutOfRange { .. })));
    }

    #[test]
    fn a_value_examples() {
        for a in [rat(0, 1), rat(1, 3), rat(-2, 5)] {
            assert!(a_value(&dp1(), &a, &lower_endpoint(&a)).unwrap().is_zero());
        }
        assert_eq!(a_value(&dp1(), &rat(0, 1), &rat(1, 1)).unwrap(), rat(-1, 3));
        let p = a_poly(&dp1(), &rat(1, 3)).unwrap();
        assert_eq!(p.eval(&rat(1, 5)), a_value(&dp1(), &rat(1, 3), &rat(1, 5)).unwrap());
    }

    #[test]
    fn f_value_examples() {
        assert_eq!(f_value(&dp1(), &rat(0, 1)).unwrap(), rat(1, 3));
        for n in 1..5 {
            assert!(f_value(&spec(&[(0, 1, n)]), &rat(0, 1)).unwrap().is_zero());
        }
        assert_eq!(f_value(&spec(&[(-1, 2, 1)]), &rat(0, 1)).unwrap(), rat(-1, 3));
    }

    #[test]
    fn f_derivative_examples() {
        assert_eq!(f_derivative_value(&spec(&[(0, 1, 1)]), &rat(0, 1)).unwrap(), rat(8, 3));
        assert_eq!(f_derivative_value(&dp1(), &rat(0, 1)).unwrap(), rat(2, 1));
        assert!(matches!(f_derivative_value(&dp1(), &rat(-1, 2)), Err(Error::ReebParameterOutOfRange { .. })));
    }

    #[test]
    fn boundary_value_closed_form() {
        // f(-1/(1+2a); a) = -(1/(1+2a))^{n+1} ∏ (1+a)(1-μ_k)
        let s = spec(&[(-1, 3, 2), (1, 2, 1), (3, 4, 1)]);
        for a in [rat(0, 1), rat(-9, 20), rat(7, 3)] {
            let c = (rat(1, 1) + rat(2, 1) * &a).recip();
            let mut expected = -num_traits::pow(c, 5);
            for mu in s.eigenvalues() {
                expected *= (rat(1, 1) + &a) * (rat(1, 1) - mu);
            }
            assert_eq!(boundary_value(&s, &a).unwrap(), expected);
            assert!(expected.is_negative());
        }
    }

    #[test]
    fn futaki_examples() {
        assert_eq!(futaki_obstruction(&dp1()), rat(1, 3));
        assert!(futaki_obstruction(&spec(&[(0, 1, 4)])).is_zero());
        for (n, d) in [(1, 2), (1, 7), (5, 6)] {
            assert!(futaki_obstruction(&spec(&[(-n, d, 1), (n, d, 1)])).is_zero());
        }
    }

    #[test]
    fn numerator_del_pezzo() {
        // (1/3)(12a^2 + 10a + 1)(a + 1)^2
        let expected = (&RationalPoly::from_ints(&[1, 10, 12]) * &RationalPoly::from_ints(&[1, 1]).pow(2)).scale(&rat(1, 3));
        assert_eq!(exact_numerator_poly(&dp1()), expected);
    }

    #[test]
    fn numerator_negative_half() {
        let expected = (&RationalPoly::from_ints(&[-1, 6, 4]) * &RationalPoly::from_ints(&[1, 1]).pow(2)).scale(&rat(1, 3));
        assert_eq!(exact_numerator_poly(&spec(&[(-1, 2, 1)])), expected);
    }

    #[test]
    fn numerator_trivial_has_factor_a() {
        let p = exact_numerator_poly(&spec(&[(0, 1, 1)]));
        assert!(p.eval(&rat(0, 1)).is_zero());
        assert!(p.div_rem(&RationalPoly::x()).1.is_zero());
    }

    #[test]
    fn solve_del_pezzo() {
        let sol = solve_reeb_parameter(&dp1(), &ten_to_minus(12)).unwrap();
        let expected = (-5.0 + 13f64.sqrt()) / 12.0;
        assert!((sol.a0_float - expected).abs() < 1e-15, "{}", sol.a0_float);
        assert_eq!(sol.regularity, Regularity::Irregular);
        assert!(sol.a0_enclosure.width() <= ten_to_minus(12));
        assert!(sol.paths_agree());
        assert_eq!(sol.futaki_at_zero, rat(1, 3));
        assert!(sol.f_residual < 1e-15);
    }

    #[test]
    fn solve_trivial() {
        let sol = solve_reeb_parameter(&spec(&[(0, 1, 3)]), &ten_to_minus(12)).unwrap();
        assert_eq!(sol.regularity, Regularity::QuasiRegular(rat(0, 1)));
        assert_eq!(sol.a0_float, 0.0);
        assert!(sol.a0_enclosure.is_exact());
    }

    #[test]
    fn solve_negative_half() {
        let sol = solve_reeb_parameter(&spec(&[(-1, 2, 1)]), &ten_to_minus(12)).unwrap();
        let expected = (-3.0 + 13f64.sqrt()) / 4.0;
        assert!((sol.a0_float - expected).abs() < 1e-15);
        assert_eq!(sol.regularity, Regularity::Irregular);
    }

    #[test]
    fn solve_certifies_non_dyadic_rational_root() {
        // μ = -11/31 is chosen so that F(1/10) = 0; bisection never lands on 1/10
        let s = spec(&[(-11, 31, 1)]);
        assert!(f_value(&s, &rat(1, 10)).unwrap().is_zero());
        let sol = solve_reeb_parameter(&s, &ten_to_minus(12)).unwrap();
        assert!(!sol.a0_enclosure.is_exact());
        assert_eq!(sol.regularity, Regularity::QuasiRegular(rat(1, 10)));
        assert_eq!(sol.a0_float, 0.1);
    }

    #[test]
    fn regularity_of_trivial_numerator() {
        let p = exact_numerator_poly(&spec(&[(0, 1, 2)]));
        let enc = isolation_root(&p, &ten_to_minus(12)).unwrap();
        assert_eq!(classify_regularity(&p, &enc), Regularity::QuasiRegular(rat(0, 1)));
    }

    #[test]
    fn solver_failure_when_caps_too_tight() {
        let options = SolverOptions { upper_cap: rat(1, 2), ..SolverOptions::default() };
        // μ = -1/2 has its root near 0.151 > 0, so bracketing upward must reach a = 1
        assert!(matches!(solve_with(&spec(&[(-1, 2, 1)]), &options), Err(Error::SolverFailure(_))));
        let options = SolverOptions { lower_gap: rat(1, 2), ..SolverOptions::default() };
        assert!(matches!(solve_with(&dp1(), &options), Err(Error::SolverFailure(_))));
    }

    #[test]
    fn refine_narrows() {
        let sol = solve_reeb_parameter(&dp1(), &ten_to_minus(6)).unwrap();
        let narrow = refine(&dp1(), &sol, &ten_to_minus(30)).unwrap();
        assert!(narrow.width() <= ten_to_minus(30));
        assert!(sol.a0_enclosure.lo <= narrow.lo && narrow.hi <= sol.a0_enclosure.hi);
    }
}
