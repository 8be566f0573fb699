//! Special functions: complex-argument `J0`, spherical Bessel `j_l` with its
//! first zero, and the modified Bessel `K0`.
//!
//! Every routine is a pure function of its arguments.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real, ScaledComplex};

/// Largest |z| accepted by [`bessel_j0`].
pub const J0_MAX_ARGUMENT: f64 = 1e6;

/// Largest spherical Bessel order supported.
pub const SPH_MAX_ORDER: usize = 50;

const J0_SERIES_RADIUS: f64 = 2.0;
const J0_MILLER_RADIUS: f64 = 25.0;

/// Bessel function of the first kind of order zero for complex argument.
pub fn bessel_j0<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    let scaled = bessel_j0_scaled(z)?;
    scaled.to_complex().ok_or(Error::Overflow { log_magnitude: to_f64(scaled.ln_abs()) })
}

/// `J0(x)` on the real axis.
pub fn bessel_j0_real<T: Real>(x: T) -> T {
    bessel_j0_scaled(Complex::new(x, T::zero()))
        .map(|s| s.mantissa.re * s.log_scale.exp())
        .unwrap_or_else(|_| T::nan())
}

/// `J0(z)` returned as `mantissa * e^{log_scale}` so that the exponentially
/// large values off the real axis never overflow.
pub fn bessel_j0_scaled<T: Real>(z: Complex<T>) -> Result<ScaledComplex<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {:?}", z)));
    }
    let r = z.norm();
    if r >= lit(J0_MAX_ARGUMENT) {
        return Err(Error::Precondition(format!("|z| = {} exceeds {}", to_f64(r), J0_MAX_ARGUMENT)));
    }
    j0_scaled_unguarded(z)
}

/// [`bessel_j0_scaled`] without the argument-size guard. Beyond the guard
/// the asymptotic branch stays accurate to about `|z| eps` in phase, which
/// the far spectral tails can afford.
pub(crate) fn j0_scaled_unguarded<T: Real>(z: Complex<T>) -> Result<ScaledComplex<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {:?}", z)));
    }
    let r = z.norm();
    if r <= lit(J0_SERIES_RADIUS) {
        return Ok(ScaledComplex::unscaled(j0_series(z)));
    }

    // J0 is even and J0(conj z) = conj J0(z): fold into Re >= 0, Im <= 0.
    let mut w = if z.re < T::zero() { -z } else { z };
    let conjugate = w.im > T::zero();
    if conjugate {
        w = w.conj();
    }
    let folded = if r <= lit(J0_MILLER_RADIUS) { j0_miller(w) } else { j0_hankel(w) };
    Ok(if conjugate { ScaledComplex::new(folded.mantissa.conj(), folded.log_scale) } else { folded })
}

fn j0_series<T: Real>(z: Complex<T>) -> Complex<T> {
    let q = -(z * z) * lit::<T>(0.25);
    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = term;
    for k in 1..200 {
        let kk = from_usize::<T>(k);
        term = term * q / (kk * kk);
        sum = sum + term;
        if term.norm() <= T::epsilon() * sum.norm() {
            break;
        }
    }
    sum
}

/// Backward recurrence normalised with `e^{iw} = J0 + 2 sum i^n J_n`, which
/// has no cancellation when `Im w <= 0`.
fn j0_miller<T: Real>(w: Complex<T>) -> ScaledComplex<T> {
    let r = to_f64(w.norm());
    let start = 2 * (((1.2 * r + 30.0) / 2.0).ceil() as usize);
    let big = T::max_value().sqrt().sqrt();
    let two = lit::<T>(2.0);
    let zero = Complex::new(T::zero(), T::zero());
    let inv_w = w.inv();

    let mut next = zero;
    let mut cur = Complex::new(T::epsilon(), T::zero());
    let mut sum = zero;
    // i^n cycles with period four
    let powers = [
        Complex::new(T::one(), T::zero()),
        Complex::new(T::zero(), T::one()),
        Complex::new(-T::one(), T::zero()),
        Complex::new(T::zero(), -T::one()),
    ];
    for n in (1..=start).rev() {
        sum = sum + powers[n % 4] * cur * two;
        let prev = cur * inv_w * from_usize::<T>(2 * n) - next;
        next = cur;
        cur = prev;
        if cur.norm() > big {
            cur = cur / big;
            next = next / big;
            sum = sum / big;
        }
    }
    sum = sum + cur;
    // e^{iw} = e^{i Re w} e^{-Im w}; the second factor becomes the log scale.
    let phase = Complex::new(w.re.cos(), w.re.sin());
    ScaledComplex::new(cur / sum * phase, -w.im)
}

/// Hankel asymptotic expansion, valid for large |w| with `Re w >= 0`.
fn j0_hankel<T: Real>(w: Complex<T>) -> ScaledComplex<T> {
    let one = Complex::new(T::one(), T::zero());
    let inv = one / w;
    let mut p = one;
    let mut q = Complex::new(T::zero(), T::zero());
    let mut a = T::one();
    let mut pow = one;
    let mut last = T::infinity();
    for k in 1..80usize {
        let odd = from_usize::<T>(2 * k - 1);
        a = -a * odd * odd / (lit::<T>(8.0) * from_usize::<T>(k));
        pow = pow * inv;
        let term = pow * a;
        let mag = term.norm();
        if mag > last {
            break;
        }
        last = mag;
        // (-1)^floor(k/2) pattern of P and Q
        let sign = if (k / 2) % 2 == 0 { T::one() } else { -T::one() };
        if k % 2 == 0 {
            p = p + term * sign;
        } else {
            q = q + term * sign;
        }
        if mag < T::epsilon() * lit(1e-2) {
            break;
        }
    }

    let chi = w - Complex::new(T::FRAC_PI_4(), T::zero());
    // Im chi = Im w <= 0, so e^{i chi} carries the growth e^{|Im w|}.
    let s = -w.im;
    let up = Complex::new(chi.re.cos(), chi.re.sin());
    let down = Complex::new(chi.re.cos(), -chi.re.sin()) * (lit::<T>(2.0) * w.im).exp();
    let cos_chi = (up + down) * lit::<T>(0.5);
    let sin_chi = (up - down) / Complex::new(T::zero(), lit(2.0));
    let amp = (Complex::new(lit::<T>(2.0) / T::PI(), T::zero()) / w).sqrt();
    ScaledComplex::new(amp * (p * cos_chi - q * sin_chi), s)
}

/// Spherical Bessel function `j_l(x)` for `0 <= l <= 50`, `x >= 0`.
pub fn sph_bessel<T: Real>(l: usize, x: T) -> Result<T> {
    if l > SPH_MAX_ORDER {
        return Err(Error::Precondition(format!("order {l} exceeds {SPH_MAX_ORDER}")));
    }
    if !(x >= T::zero()) || !x.is_finite() {
        return Err(Error::Precondition(format!("argument {} must be finite and >= 0", to_f64(x))));
    }
    if x == T::zero() {
        return Ok(if l == 0 { T::one() } else { T::zero() });
    }
    if x < T::one() {
        return Ok(sph_series(l, x));
    }
    if x >= from_usize(l) {
        return Ok(sph_upward(l, x));
    }
    Ok(sph_miller(l, x))
}

fn sph_series<T: Real>(l: usize, x: T) -> T {
    // x^l / (2l+1)!!, built as a product to stay in range
    let mut lead = T::one();
    for i in 1..=l {
        lead = lead * x / from_usize::<T>(2 * i + 1);
    }
    let q = -x * x * lit::<T>(0.5);
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..100 {
        term = term * q / (from_usize::<T>(k) * from_usize::<T>(2 * l + 2 * k + 1));
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn sph_upward<T: Real>(l: usize, x: T) -> T {
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if l == 0 {
        return j0;
    }
    let mut prev = j0;
    let mut cur = s / (x * x) - c / x;
    for n in 1..l {
        let next = from_usize::<T>(2 * n + 1) / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn sph_miller<T: Real>(l: usize, x: T) -> T {
    let start = l + 25 + (40.0 * l as f64).sqrt().ceil() as usize;
    let big = T::max_value().sqrt().sqrt();
    let mut next = T::zero();
    let mut cur = T::epsilon();
    let mut at_l = T::zero();
    for n in (1..=start).rev() {
        // cur = j_n, next = j_{n+1}
        if n == l {
            at_l = cur;
        }
        let prev = from_usize::<T>(2 * n + 1) / x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > big {
            cur = cur / big;
            next = next / big;
            at_l = at_l / big;
        }
    }
    if l == 0 {
        at_l = cur;
    }
    // cur = j_0, next = j_1 (unnormalised); normalise on the larger of the two
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    if j0.abs() >= j1.abs() {
        at_l * j0 / cur
    } else {
        at_l * j1 / next
    }
}

/// Derivative `j_l'(x)`.
pub fn sph_bessel_deriv<T: Real>(l: usize, x: T) -> Result<T> {
    if l == 0 {
        return Ok(-sph_bessel(1, x)?);
    }
    if x == T::zero() {
        return Ok(if l == 1 { lit(1.0 / 3.0) } else { T::zero() });
    }
    Ok(sph_bessel(l - 1, x)? - from_usize::<T>(l + 1) / x * sph_bessel(l, x)?)
}

/// Smallest positive zero `Z_{l,1}` of `j_l`.
///
/// Brackets by scanning upward from `x = l` (where `j_l` is still positive),
/// bisects, then polishes with Newton steps kept inside the bracket.
pub fn sph_bessel_first_zero<T: Real>(l: usize) -> Result<T> {
    if l > SPH_MAX_ORDER {
        return Err(Error::Precondition(format!("order {l} exceeds {SPH_MAX_ORDER}")));
    }
    let step = lit::<T>(0.05);
    let mut lo = from_usize::<T>(l).max(step);
    let mut hi = lo + step;
    while sph_bessel(l, hi)? > T::zero() {
        lo = hi;
        hi = hi + step;
    }
    for _ in 0..200 {
        let mid = (lo + hi) * lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if sph_bessel(l, mid)? > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < lit(1e-13) {
            break;
        }
    }
    let mut x = (lo + hi) * lit(0.5);
    for _ in 0..3 {
        let d = sph_bessel_deriv(l, x)?;
        if d == T::zero() {
            break;
        }
        let candidate = x - sph_bessel(l, x)? / d;
        if candidate > lo - lit(1e-12) && candidate < hi + lit(1e-12) {
            x = candidate;
        }
    }
    Ok(x)
}

/// Modified Bessel function `K0(x)` for `x > 0`.
pub fn bessel_k0<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!("K0 requires x > 0, got {}", to_f64(x))));
    }
    if x <= lit(2.0) {
        Ok(k0_series(x))
    } else {
        Ok(k0_trapezoid(x))
    }
}

fn k0_series<T: Real>(x: T) -> T {
    let euler = lit::<T>(0.577_215_664_901_532_9);
    let q = x * x * lit::<T>(0.25);
    let mut term = T::one();
    let mut i0 = T::one();
    let mut harmonic = T::zero();
    let mut tail = T::zero();
    for k in 1..100 {
        let kk = from_usize::<T>(k);
        term = term * q / (kk * kk);
        harmonic = harmonic + T::one() / kk;
        i0 = i0 + term;
        tail = tail + term * harmonic;
        if term * harmonic <= T::epsilon() * tail.abs() && term <= T::epsilon() * i0 {
            break;
        }
    }
    -((x * lit(0.5)).ln() + euler) * i0 + tail
}

/// `K0(x) = int_0^inf e^{-x cosh t} dt`; the trapezoid rule converges
/// geometrically for this entire, doubly-exponentially decaying integrand.
fn k0_trapezoid<T: Real>(x: T) -> T {
    let h = lit::<T>(0.2);
    let mut sum = lit::<T>(0.5);
    let mut j = 1usize;
    loop {
        let t = h * from_usize::<T>(j);
        let e = x * (t.cosh() - T::one());
        if e > lit(60.0) {
            break;
        }
        sum = sum + (-e).exp();
        j += 1;
    }
    (-x).exp() * h * sum
}

/// `J0` and `J_{1/2}`-type kernels used by the d-dimensional radial transform:
/// `k (2 pi r / k)^{d/2} J_{(d-2)/2}(k r)`, written in closed form for
/// `d = 1, 2, 3` and continued to `k = 0`.
pub fn radial_kernel<T: Real>(dim: usize, k: T, r: T) -> Result<T> {
    let kr = k * r;
    match dim {
        1 => Ok(lit::<T>(2.0) * kr.cos()),
        2 => Ok(lit::<T>(2.0) * T::PI() * r * bessel_j0_real(kr)),
        3 => Ok(lit::<T>(4.0) * T::PI() * r * r * sph_bessel(0, kr.abs())?),
        _ => Err(Error::Precondition(format!("dimension {dim} not in 1..=3"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    // J0(x) = (1/pi) int_0^pi cos(x sin th) dth; trapezoid on a periodic
    // integrand converges spectrally.
    fn j0_integral_oracle(x: f64) -> f64 {
        let n = 2000;
        let h = std::f64::consts::PI / n as f64;
        let inner: f64 = (1..n).map(|i| (x * (i as f64 * h).sin()).cos()).sum();
        (1.0 + inner) * h / std::f64::consts::PI
    }

    #[test]
    fn j0_at_origin_is_one() {
        assert_eq!(bessel_j0(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn j0_first_real_zero() {
        let v = bessel_j0(c(2.404_825_557_695_773, 0.0)).unwrap();
        assert!(v.norm() < 1e-12, "{v}");
    }

    #[test]
    fn j0_imaginary_axis_is_i0() {
        let v = bessel_j0(c(0.0, 5.0)).unwrap();
        assert_relative_eq!(v.re, 27.239_871_823_604_446_9, max_relative = 1e-13);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn j0_matches_reference_values_off_axis() {
        let cases = [
            (c(3.0, 2.0), c(-1.249_234_879_607_422_2, -0.947_983_792_057_734_8)),
            (c(20.0, -7.0), c(82.261_387_547_942_662, 47.948_080_284_135_003)),
            (c(-40.0, 15.0), c(-24_171.451_593_312_824, 198_263.347_505_788_2)),
            (c(12.0, 0.5), c(0.056_196_719_559_848_045, 0.116_284_993_884_962_07)),
            (c(0.5, 0.3), c(0.959_010_687_652_455_4, -0.073_498_364_866_733_61)),
            (c(24.0, 24.0), c(77_625_510.362_571_94, 1_816_975_053.299_303)),
            (c(26.0, 1.0), c(0.240_347_939_909_471_04, -0.018_775_637_107_123_923)),
        ];
        for (z, want) in cases {
            let got = bessel_j0(z).unwrap();
            assert!((got - want).norm() <= 1e-12 * want.norm(), "z={z} got={got} want={want}");
        }
    }

    #[test]
    fn j0_overflow_is_reported_with_log_magnitude() {
        let err = bessel_j0(c(0.0, 1000.0)).unwrap_err();
        match err {
            Error::Overflow { log_magnitude } => assert!((log_magnitude - 995.0).abs() < 10.0),
            other => panic!("unexpected {other:?}"),
        }
        let s = bessel_j0_scaled(c(300.0, -200.0)).unwrap();
        let want = c(-7.462_883_944_124_968e84, -1.322_415_111_404_395_7e85);
        let got = s.mantissa * s.log_scale.exp();
        assert!((got - want).norm() < 1e-11 * want.norm());
    }

    #[test]
    fn j0_real_axis_matches_integral_representation() {
        for i in 0..=200 {
            let x = -50.0 + 0.5 * i as f64;
            let want = j0_integral_oracle(x);
            let got = bessel_j0_real(x);
            assert!((got - want).abs() < 1e-12, "x={x} got={got} want={want}");
        }
    }

    #[test]
    fn j0_imaginary_axis_real_and_increasing() {
        let mut last = 0.0;
        for i in 0..400 {
            let y = 0.1 * i as f64;
            let v = bessel_j0(c(0.0, y)).unwrap();
            assert!(v.im.abs() <= 1e-12 * v.re);
            assert!(v.re >= 1.0 && v.re > last || i == 0);
            last = v.re;
        }
    }

    #[test]
    fn j0_precondition() {
        assert!(matches!(bessel_j0(c(2e6, 0.0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn sph_bessel_examples() {
        assert!(sph_bessel(0, std::f64::consts::PI).unwrap().abs() < 1e-12);
        assert_eq!(sph_bessel(1, 0.0).unwrap(), 0.0);
        assert_eq!(sph_bessel(0, 0.0).unwrap(), 1.0);
        assert_relative_eq!(sph_bessel(2, 1.0).unwrap(), 0.062_035_052_011_373_86, max_relative = 1e-12);
    }

    #[test]
    fn sph_bessel_reference_table() {
        let table: &[(usize, f64, f64)] = &[
            (0, 7.5, 0.125_066_663_569_965_18),
            (1, 0.3, 0.099_102_888_040_641_877),
            (1, 150.0, -0.004_693_444_328_950_463_7),
            (2, 30.0, 0.032_310_434_678_570_906),
            (5, 0.3, 2.329_582_556_729_027_3e-7),
            (5, 7.5, 0.156_854_795_948_034_93),
            (10, 1.0, 7.116_552_640_047_313e-11),
            (10, 7.5, 0.011_259_830_915_291_589),
            (10, 199.0, 0.004_913_175_359_081_512),
            (50, 7.5, 1.564_640_588_048_482_7e-37),
            (50, 30.0, 2.690_163_718_573_531_6e-9),
            (50, 150.0, -0.006_854_525_852_057_765_5),
        ];
        for &(l, x, want) in table {
            let got = sph_bessel(l, x).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-10);
        }
    }

    #[test]
    fn sph_bessel_precondition() {
        assert!(sph_bessel(51, 1.0).is_err());
        assert!(sph_bessel(2, -1.0).is_err());
    }

    #[test]
    fn first_zeros() {
        assert!((sph_bessel_first_zero::<f64>(0).unwrap() - std::f64::consts::PI).abs() < 1e-10);
        let table = [
            (1, 4.493_409_457_909_064),
            (2, 5.763_459_196_894_550),
            (3, 6.987_932_000_500_520),
            (10, 15.033_469_303_743_438),
            (50, 57.638_686_770_302_61),
        ];
        for (l, want) in table {
            assert!((sph_bessel_first_zero::<f64>(l).unwrap() - want).abs() < 1e-10, "l={l}");
        }
    }

    #[test]
    fn no_zero_before_first_zero() {
        for l in [0usize, 1, 2, 5, 20] {
            let z: f64 = sph_bessel_first_zero(l).unwrap();
            let mut x = 1e-3;
            while x < z - 1e-3 {
                assert!(sph_bessel(l, x).unwrap() > 0.0, "l={l} x={x}");
                x += 1e-3;
            }
        }
    }

    #[test]
    fn k0_values() {
        let table = [
            (1e-6, 13.931_442_073_626_42),
            (0.1, 2.427_069_024_702_016_6),
            (1.0, 0.421_024_438_240_708_33),
            (2.0, 0.113_893_872_749_533_44),
            (2.5, 0.062_347_553_200_366_186),
            (5.0, 0.003_691_098_334_042_594_3),
            (20.0, 5.741_237_815_336_524e-10),
            (100.0, 4.656_628_229_175_902e-45),
        ];
        for (x, want) in table {
            assert_relative_eq!(bessel_k0(x).unwrap(), want, max_relative = 1e-10);
        }
        assert!(bessel_k0(20.0).unwrap() < 1e-9);
        assert!(matches!(bessel_k0(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn deterministic_bits() {
        let z = c(7.3, -2.1);
        assert_eq!(bessel_j0(z).unwrap(), bessel_j0(z).unwrap());
    }

    #[test]
    fn f32_smoke() {
        let v: f32 = bessel_k0(1.0f32).unwrap();
        assert!((v - 0.421_024_44).abs() < 1e-5);
        let z: f32 = sph_bessel_first_zero(1).unwrap();
        assert!((z - 4.493_409_5).abs() < 1e-4);
    }

    #[test]
    fn radial_kernel_limits() {
        assert_eq!(radial_kernel(1, 0.0, 2.0).unwrap(), 2.0);
        assert_relative_eq!(radial_kernel(3, 1e-9, 2.0).unwrap(), 16.0 * std::f64::consts::PI, max_relative = 1e-12);
        assert!(radial_kernel(4, 1.0, 1.0).is_err());
    }
}
