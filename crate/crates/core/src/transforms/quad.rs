//! Adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, is_finite_c, lit, to_f64, Real};

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
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

pub const DEFAULT_MAX_PANELS: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct QuadOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_panels: usize,
    /// Phase advance per unit length of the integrand; panels are pre-split
    /// so none advances more than pi/2.
    pub phase_rate: T,
    /// Interior points where the integrand is known to be non-smooth.
    pub breakpoints: Vec<T>,
}

impl<T: Real> Default for QuadOptions<T> {
    fn default() -> Self {
        Self {
            abs_tol: lit(1e-10),
            rel_tol: T::zero(),
            max_panels: DEFAULT_MAX_PANELS,
            phase_rate: T::zero(),
            breakpoints: Vec::new(),
        }
    }
}

impl<T: Real> QuadOptions<T> {
    pub fn with_tol(abs_tol: T) -> Self {
        Self { abs_tol, ..Self::default() }
    }

    pub fn rel(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn rate(mut self, phase_rate: T) -> Self {
        self.phase_rate = phase_rate.abs();
        self
    }

    pub fn breaks(mut self, points: Vec<T>) -> Self {
        self.breakpoints = points;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature<T> {
    pub value: Complex<T>,
    pub error: T,
    pub panels: usize,
}

struct Panel<T> {
    a: T,
    b: T,
    value: Complex<T>,
    error: T,
}

struct Keyed(f64, usize);

impl PartialEq for Keyed {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Keyed {}
impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(other.1.cmp(&self.1))
    }
}

fn kronrod<T: Real, F: Fn(T) -> Complex<T>>(f: &F, a: T, b: T) -> Result<Panel<T>> {
    let half = (b - a) * lit(0.5);
    let centre = (a + b) * lit(0.5);
    let fc = f(centre);
    let mut kron = fc * lit::<T>(WGK[7]);
    let mut gauss = fc * lit::<T>(WG[3]);
    for j in 0..7 {
        let dx = half * lit::<T>(XGK[j]);
        let sum = f(centre - dx) + f(centre + dx);
        kron = kron + sum * lit::<T>(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + sum * lit::<T>(WG[j / 2]);
        }
    }
    let value = kron * half;
    if !is_finite_c(value) {
        return Err(Error::Domain(format!(
            "integrand not finite on [{}, {}]",
            to_f64(a),
            to_f64(b)
        )));
    }
    let error = ((kron - gauss) * half).norm();
    Ok(Panel { a, b, value, error })
}

/// Integrates `f` over `[a, b]`, refining the panel with the largest error
/// estimate until the summed estimate meets `max(abs_tol, rel_tol |I|)`.
pub fn integrate<T, F>(f: F, a: T, b: T, opts: &QuadOptions<T>) -> Result<Quadrature<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    if !(a < b) {
        return Err(Error::Precondition(format!(
            "integration bounds must satisfy a < b, got [{}, {}]",
            to_f64(a),
            to_f64(b)
        )));
    }

    let mut cuts = vec![a];
    let mut inner: Vec<T> = opts.breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    cuts.extend(inner);
    cuts.push(b);

    let quarter_turn = T::FRAC_PI_2();
    let mut panels: Vec<Panel<T>> = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if !(lo < hi) {
            continue;
        }
        let turns = to_f64(opts.phase_rate * (hi - lo) / quarter_turn).ceil();
        let pieces = if turns.is_finite() { turns.clamp(1.0, (opts.max_panels / 4).max(1) as f64) as usize } else { 1 };
        let width = (hi - lo) / from_usize::<T>(pieces);
        for i in 0..pieces {
            let pa = lo + width * from_usize::<T>(i);
            let pb = if i + 1 == pieces { hi } else { lo + width * from_usize::<T>(i + 1) };
            panels.push(kronrod(&f, pa, pb)?);
        }
    }

    let mut heap: BinaryHeap<Keyed> =
        panels.iter().enumerate().map(|(i, p)| Keyed(to_f64(p.error), i)).collect();
    let mut total: Complex<T> = panels.iter().map(|p| p.value).fold(Complex::new(T::zero(), T::zero()), |s, v| s + v);
    let mut err: T = panels.iter().map(|p| p.error).sum();
    let mut stuck = T::zero();

    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.norm());
        if err <= target {
            break;
        }
        let Some(Keyed(_, idx)) = heap.pop() else {
            return Err(Error::NonConvergence {
                panels: panels.len(),
                error: to_f64(err),
                tolerance: to_f64(target),
            });
        };
        let (pa, pb) = (panels[idx].a, panels[idx].b);
        let mid = (pa + pb) * lit(0.5);
        if !(mid > pa && mid < pb) || (pb - pa) <= T::epsilon() * lit::<T>(4.0) * pa.abs().max(pb.abs()) {
            // below resolution: keep the panel but stop refining it
            stuck = stuck + panels[idx].error;
            if err - stuck > target {
                continue;
            }
            return Err(Error::NonConvergence {
                panels: panels.len(),
                error: to_f64(err),
                tolerance: to_f64(target),
            });
        }
        if panels.len() + 1 > opts.max_panels {
            return Err(Error::NonConvergence {
                panels: panels.len(),
                error: to_f64(err),
                tolerance: to_f64(target),
            });
        }
        let left = kronrod(&f, pa, mid)?;
        let right = kronrod(&f, mid, pb)?;
        total = total - panels[idx].value + left.value + right.value;
        err = err - panels[idx].error + left.error + right.error;
        heap.push(Keyed(to_f64(left.error), idx));
        heap.push(Keyed(to_f64(right.error), panels.len()));
        panels[idx] = left;
        panels.push(right);
    }

    // re-sum to shed the drift of the running updates
    let value = panels.iter().fold(Complex::new(T::zero(), T::zero()), |s, p| s + p.value);
    Ok(Quadrature { value, error: err.max(T::zero()), panels: panels.len() })
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<T, F>(f: F, a: T, b: T, opts: &QuadOptions<T>) -> Result<Quadrature<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    integrate(|x| Complex::new(f(x), T::zero()), a, b, opts)
}

/// [`integrate`] for integrands with inverse square root singularities at
/// the flagged ends. Near a singular end `s = end +- v^2`, which makes the
/// transformed integrand bounded.
pub fn integrate_inv_sqrt<T, F>(f: F, a: T, b: T, left: bool, right: bool, opts: &QuadOptions<T>) -> Result<Quadrature<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    if !left && !right {
        return integrate(f, a, b, opts);
    }
    if !(a < b) {
        return Err(Error::Precondition(format!(
            "integration bounds must satisfy a < b, got [{}, {}]",
            to_f64(a),
            to_f64(b)
        )));
    }
    let two = lit::<T>(2.0);
    let (split, lo_end, hi_end) = match (left, right) {
        (true, true) => ((a + b) * lit(0.5), a, b),
        (true, false) => (b, a, b),
        _ => (a, a, b),
    };
    let sub = QuadOptions { breakpoints: Vec::new(), phase_rate: T::zero(), ..opts.clone() };
    let mut total = Quadrature { value: Complex::new(T::zero(), T::zero()), error: T::zero(), panels: 0 };
    let mut add = |q: Quadrature<T>| {
        total.value = total.value + q.value;
        total.error = total.error + q.error;
        total.panels += q.panels;
    };
    if left {
        let span = (split - lo_end).sqrt();
        add(integrate(|v: T| f(lo_end + v * v) * (two * v), T::zero(), span, &sub)?);
    }
    if right {
        let span = (hi_end - split).sqrt();
        add(integrate(|v: T| f(hi_end - v * v) * (two * v), T::zero(), span, &sub)?);
    }
    Ok(total)
}
