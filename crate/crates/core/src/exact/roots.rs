//! Exact real-root isolation (Sturm sequences) and rational-root certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::RationalPoly;
use crate::error::{Error, Result};

/// A closed rational interval `[lo, hi]` holding exactly one real root.
///
/// `lo == hi` means the root itself was hit exactly during bisection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEnclosure {
    #[serde(with = "crate::exact::fraction_string")]
    pub lo: BigRational,
    #[serde(with = "crate::exact::fraction_string")]
    pub hi: BigRational,
}

impl RootEnclosure {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Where to look for roots: the half-open interval `(lower, upper]`.
/// An absent upper bound means `+∞`.
#[derive(Debug, Clone)]
pub struct SearchInterval {
    pub lower: BigRational,
    pub upper: Option<BigRational>,
}

impl SearchInterval {
    pub fn new(lower: BigRational, upper: Option<BigRational>) -> Self {
        Self { lower, upper }
    }
}

/// Sturm chain of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<RationalPoly>,
}

impl SturmChain {
    pub fn new(p: &RationalPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
        Self { chain }
    }

    fn sign_variations(&self, x: &BigRational) -> usize {
        let signs = self.chain.iter().map(|q| q.eval(x)).filter(|v| !v.is_zero()).map(|v| v.is_positive());
        count_variations(signs)
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_variations(lo) - self.sign_variations(hi)
    }
}

fn count_variations(signs: impl Iterator<Item = bool>) -> usize {
    let mut prev = None;
    let mut n = 0;
    for s in signs {
        if prev.is_some_and(|p| p != s) {
            n += 1;
        }
        prev = Some(s);
    }
    n
}

/// Cauchy bound: every real root `r` satisfies `|r| < bound`.
pub fn root_bound(p: &RationalPoly) -> BigRational {
    let lead = p.leading_coeff().expect("nonzero polynomial").abs();
    let max = p.coeffs().iter().map(|c| c.abs() / &lead).max().unwrap_or_else(BigRational::zero);
    max + BigRational::one()
}

/// The default refinement width `2^-64`.
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 64)
}

/// Isolates every distinct real root of `p` in `(interval.lower, interval.upper]`
/// into disjoint enclosures of width at most `max_width`, sorted ascending.
pub fn isolate_real_roots(
    p: &RationalPoly,
    interval: &SearchInterval,
    max_width: &BigRational,
) -> Result<Vec<RootEnclosure>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.squarefree_part();
    if sf.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sturm = SturmChain::new(&sf);
    let bound = root_bound(&sf);
    let upper = match &interval.upper {
        Some(u) if u < &bound => u.clone(),
        _ => bound,
    };
    let lower = interval.lower.clone();
    if lower >= upper {
        return Ok(Vec::new());
    }
    let two = BigRational::from_integer(2.into());
    // open-closed (lo, hi] cells still holding more than one root
    let mut stack = vec![(lower, upper)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let k = sturm.count(&lo, &hi);
        match k {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    let mut out: Vec<RootEnclosure> =
        isolated.into_iter().map(|(lo, hi)| refine_simple_root(&sf, lo, hi, max_width)).collect();
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Bisects a cell `(lo, hi]` known to contain exactly one simple root of the
/// squarefree polynomial `sf` until it is narrower than `max_width`.
pub fn refine_simple_root(
    sf: &RationalPoly,
    mut lo: BigRational,
    mut hi: BigRational,
    max_width: &BigRational,
) -> RootEnclosure {
    let two = BigRational::from_integer(2.into());
    let mut f_hi = sf.eval(&hi);
    if f_hi.is_zero() {
        return RootEnclosure { lo: hi.clone(), hi };
    }
    // lo itself is excluded from the cell, so the root sits strictly above it
    // and the sign at lo is opposite to the sign at hi.
    let mut lo_is_root = sf.eval(&lo).is_zero();
    while lo_is_root || &(&hi - &lo) > max_width {
        let mid = (&lo + &hi) / &two;
        let f_mid = sf.eval(&mid);
        if f_mid.is_zero() {
            return RootEnclosure { lo: mid.clone(), hi: mid };
        }
        if f_mid.is_positive() == f_hi.is_positive() {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            lo_is_root = false;
        }
    }
    RootEnclosure { lo, hi }
}

/// Simplest rational (smallest denominator, then smallest magnitude) in `[lo, hi]`.
pub fn simplest_rational_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi, "empty interval");
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        BigRational::zero()
    }
}

fn simplest_positive(lo: &BigRational, hi: &BigRational) -> BigRational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl < hi.floor() {
        return fl + BigRational::one();
    }
    let inner = simplest_positive(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Decides whether the unique root of `p` inside `enclosure` is rational.
///
/// Any rational root `r = d/e` in lowest terms has `e` dividing the leading
/// coefficient `L` of the primitive integer form of `p`. Two distinct such
/// candidates are at least `1/L^2` apart, so once the enclosure is narrower
/// than that it holds at most one candidate, and that candidate must be the
/// simplest rational in the enclosure. Returns the root when it is rational,
/// `None` when it is certified irrational.
pub fn rational_root_test(p: &RationalPoly, enclosure: &RootEnclosure) -> Option<BigRational> {
    if enclosure.is_exact() {
        return p.eval(&enclosure.lo).is_zero().then(|| enclosure.lo.clone());
    }
    let ints = p.primitive_integer_coeffs();
    let lead = BigRational::from_integer(ints.last()?.abs());
    let sf = p.squarefree_part();
    let width = (&lead * &lead).recip() / BigRational::from_integer(2.into());
    let (mut lo, mut hi) = (enclosure.lo.clone(), enclosure.hi.clone());
    if sf.eval(&lo).is_zero() {
        return Some(lo);
    }
    if sf.eval(&hi).is_zero() {
        return Some(hi);
    }
    if enclosure.width() > width {
        let r = refine_simple_root(&sf, lo, hi, &width);
        if r.is_exact() {
            return Some(r.lo);
        }
        lo = r.lo;
        hi = r.hi;
    }
    let candidate = simplest_rational_between(&lo, &hi);
    let denom_ok = candidate.denom() <= &lead.to_integer();
    (denom_ok && p.eval(&candidate).is_zero()).then_some(candidate)
}

/// Integer divisors of `n` (absolute values), for small `n`. Used only as a
/// brute-force cross-check of [`rational_root_test`].
pub fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}
