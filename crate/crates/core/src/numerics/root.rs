//! Bisection on a bracketed sign change.

/// Locate the root of `f` inside `[a, b]`, where `fa = f(a)` and `fb = f(b)`
/// have opposite signs, to absolute resolution `xtol`.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fb: f64, xtol: f64) -> f64 {
    assert!(a < b, "invalid bracket");
    assert!(
        fa == 0.0 || fb == 0.0 || fa.signum() != fb.signum(),
        "bisect requires a sign change: f({a}) = {fa}, f({b}) = {fb}"
    );
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let (mut lo, mut hi, mut flo) = (a, b, fa);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < xtol || mid <= lo || mid >= hi {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
