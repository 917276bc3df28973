//! Globally adaptive Gauss-Kronrod (10/21) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_872_842,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ..., XGK[9]
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Kronrod estimate and `|Kronrod - Gauss|` on one panel.
pub fn gauss_kronrod_21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    for i in 0..10 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates `f` over `[a, b]` to absolute error `tol`, bisecting the panel
/// with the largest error estimate until the summed estimate meets `tol` or
/// `max_panels` is exhausted.
///
/// `breakpoints` seed the initial partition (points outside `(a, b)` are
/// ignored). The target is floored at the roundoff level of the integral,
/// `50 ε ∫|f|`. Reversed limits give the negated integral.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
    breakpoints: &[f64],
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult { value: 0.0, error_estimate: 0.0, panels: 0 });
    }
    if b < a {
        let r = integrate(f, b, a, tol, max_panels, breakpoints)?;
        return Ok(QuadResult { value: -r.value, ..r });
    }
    let mut cuts: Vec<f64> = std::iter::once(a)
        .chain(breakpoints.iter().copied().filter(|&p| p > a && p < b))
        .chain(std::iter::once(b))
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    if cuts.len() - 1 > max_panels {
        return Err(Error::QuadratureFailure { tol, estimate: f64::INFINITY, budget: max_panels });
    }
    let mut heap = BinaryHeap::new();
    let (mut total, mut total_err, mut total_abs) = (0.0, 0.0, 0.0);
    for w in cuts.windows(2) {
        let (value, error) = gauss_kronrod_21(&f, w[0], w[1]);
        total += value;
        total_err += error;
        total_abs += value.abs();
        heap.push(Panel { a: w[0], b: w[1], value, error });
    }
    let mut panels = heap.len();
    loop {
        let target = tol.max(50.0 * f64::EPSILON * total_abs);
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::QuadratureFailure { tol, estimate: total_err, budget: max_panels });
        }
        if total_err <= target {
            return Ok(QuadResult { value: total, error_estimate: total_err, panels });
        }
        if panels >= max_panels {
            return Err(Error::QuadratureFailure { tol, estimate: total_err, budget: max_panels });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel cannot be split further in double precision
            return Err(Error::QuadratureFailure { tol, estimate: total_err, budget: max_panels });
        }
        let (lv, le) = gauss_kronrod_21(&f, worst.a, mid);
        let (rv, re) = gauss_kronrod_21(&f, mid, worst.b);
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        total_abs += lv.abs() + rv.abs() - worst.value.abs();
        heap.push(Panel { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Panel { a: mid, b: worst.b, value: rv, error: re });
        panels += 1;
    }
}

/// Geometric breakpoints between `lo > 0` and `hi`, ratio `ratio`, for
/// integrands that behave like `1/t` near `t = 0`.
pub fn geometric_breakpoints(lo: f64, hi: f64, ratio: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if lo <= 0.0 || hi <= lo {
        return out;
    }
    let mut t = lo * ratio;
    while t < hi {
        out.push(t);
        t *= ratio;
    }
    out
}
