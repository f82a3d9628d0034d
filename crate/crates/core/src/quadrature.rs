//! Globally adaptive 15-point Gauss–Kronrod quadrature.
//!
//! The interval is split into equal starting panels; the panel with the
//! largest error estimate is bisected until the summed estimate meets the
//! requested tolerance.

use crate::error::{Error, Result};

// Kronrod abscissae on [-1, 1], descending; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-14,
            rel: 1e-12,
            max_panels: 20_000,
        }
    }
}

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Integrates `f` over `[lo, hi]` starting from `panels` equal sub-intervals.
pub fn integrate<F>(f: F, lo: f64, hi: f64, panels: usize, tol: Tolerance) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    integrate_with_breaks(f, &[lo, hi], panels, tol)
}

/// Like [`integrate`], but `breaks` (sorted ascending) are forced panel edges,
/// useful when the integrand is sharply peaked at known points.
pub fn integrate_with_breaks<F>(
    f: F,
    breaks: &[f64],
    panels: usize,
    tol: Tolerance,
) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain(
            "quadrature breaks must be strictly increasing".into(),
        ));
    }
    let panels = panels.max(1);
    let mut work: Vec<Panel> = Vec::with_capacity(panels * breaks.len());
    for w in breaks.windows(2) {
        let width = (w[1] - w[0]) / panels as f64;
        for k in 0..panels {
            let lo = w[0] + k as f64 * width;
            let hi = if k + 1 == panels { w[1] } else { lo + width };
            work.push(kronrod15(&f, lo, hi));
        }
    }

    loop {
        let value: f64 = work.iter().map(|p| p.value).sum();
        let error: f64 = work.iter().map(|p| p.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::NonFinite("integrand".into()));
        }
        if error <= tol.abs.max(tol.rel * value.abs()) {
            return Ok(Estimate { value, error });
        }
        if work.len() >= tol.max_panels {
            return Err(Error::Convergence(format!(
                "error estimate {error:.3e} after {} panels (value {value:.6e})",
                work.len()
            )));
        }
        let (worst, _) = work
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("at least one panel");
        let p = work.swap_remove(worst);
        let mid = 0.5 * (p.lo + p.hi);
        if !(mid > p.lo && mid < p.hi) {
            return Err(Error::Convergence(format!(
                "panel [{}, {}] cannot be bisected further",
                p.lo, p.hi
            )));
        }
        work.push(kronrod15(&f, p.lo, mid));
        work.push(kronrod15(&f, mid, p.hi));
    }
}
