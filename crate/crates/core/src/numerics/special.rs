//! Exponential and trigonometric integrals.
//!
//! Only the real-argument cases needed by the bath-kernel closed forms are
//! implemented: `Ei`, `E1`, the symmetric/antisymmetric combinations
//! `e^x Ei(-x) ± e^-x Ei(x)` (evaluated stably for large `x`), and `Si`/`Ci`
//! for the oscillatory-tail estimates of the frequency quadrature.

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const MAX_ITER: usize = 400;

/// Exponential integral Ei(x) for x > 0.
///
/// Ascending series for x <= 40 (all terms positive, no cancellation),
/// asymptotic series truncated at its smallest term beyond.
pub fn ei(x: f64) -> f64 {
    assert!(x > 0.0, "ei: argument must be positive, got {x}");
    if x <= 40.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..MAX_ITER {
            term *= x / k as f64;
            let contrib = term / k as f64;
            sum += contrib;
            if contrib < f64::EPSILON * sum.abs() {
                break;
            }
        }
        EULER_GAMMA + x.ln() + sum
    } else {
        // Ei(x) ~ e^x/x (1 + 1!/x + 2!/x^2 + ...); optimal truncation.
        let mut sum = 1.0;
        let mut term = 1.0;
        for k in 1..MAX_ITER {
            let next = term * k as f64 / x;
            if next >= term {
                break;
            }
            term = next;
            sum += term;
            if term < f64::EPSILON * sum {
                break;
            }
        }
        x.exp() / x * sum
    }
}

/// Exponential integral E1(x) = -Ei(-x) for x > 0.
///
/// Alternating series for x <= 1, modified-Lentz continued fraction beyond.
pub fn e1(x: f64) -> f64 {
    assert!(x > 0.0, "e1: argument must be positive, got {x}");
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..MAX_ITER {
            term *= -x / k as f64;
            let contrib = term / k as f64;
            sum += contrib;
            if contrib.abs() < f64::EPSILON * sum.abs().max(1e-30) {
                break;
            }
        }
        -EULER_GAMMA - x.ln() - sum
    } else {
        // E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...))))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..MAX_ITER {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < f64::EPSILON {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// e^x Ei(-x) + e^-x Ei(x) for x > 0, the combination behind the ohmic
/// noise-kernel closed form. Behaves like 2(γ + ln x) near 0 and like
/// 2 Σ_{k odd} k!/x^{k+1} at infinity; the direct difference loses precision
/// once both halves dwarf the result, so the asymptotic sum takes over there.
pub fn ei_combo_sym(x: f64) -> f64 {
    assert!(x > 0.0, "ei_combo_sym: argument must be positive, got {x}");
    if x <= 50.0 {
        (-x).exp() * ei(x) - x.exp() * e1(x)
    } else {
        let x2 = x * x;
        let mut term = 1.0 / x2; // 1!/x^2
        let mut sum = term;
        let mut k = 1.0;
        for _ in 0..MAX_ITER {
            let next = term * (k + 1.0) * (k + 2.0) / x2;
            if next >= term {
                break;
            }
            term = next;
            k += 2.0;
            sum += term;
            if term < f64::EPSILON * sum {
                break;
            }
        }
        2.0 * sum
    }
}

/// e^x Ei(-x) - e^-x Ei(x) for x > 0 (derivative companion of
/// [`ei_combo_sym`]). Both halves share a sign, so the direct sum is stable;
/// the asymptotic form -2 Σ_{k even} k!/x^{k+1} takes over for large x.
pub fn ei_combo_asym(x: f64) -> f64 {
    assert!(x > 0.0, "ei_combo_asym: argument must be positive, got {x}");
    if x <= 50.0 {
        -(x.exp() * e1(x) + (-x).exp() * ei(x))
    } else {
        let x2 = x * x;
        let mut term = 1.0 / x; // 0!/x
        let mut sum = term;
        let mut k = 0.0;
        for _ in 0..MAX_ITER {
            let next = term * (k + 1.0) * (k + 2.0) / x2;
            if next >= term {
                break;
            }
            term = next;
            k += 2.0;
            sum += term;
            if term < f64::EPSILON * sum {
                break;
            }
        }
        -2.0 * sum
    }
}

/// Sine and cosine integrals (Si(x), Ci(x)) for x > 0.
///
/// Power series below x = 2; complex continued fraction for
/// E1(ix) = -Ci(x) + i(Si(x) - π/2) beyond.
pub fn sici(x: f64) -> (f64, f64) {
    assert!(x > 0.0, "sici: argument must be positive, got {x}");
    if x < 2.0 {
        let x2 = x * x;
        let (mut si, mut ci_sum) = (x, 0.0);
        let mut term_s = x;
        let mut term_c = 1.0;
        for k in 1..MAX_ITER {
            let kf = k as f64;
            term_c *= -x2 / ((2.0 * kf - 1.0) * (2.0 * kf));
            ci_sum += term_c / (2.0 * kf);
            term_s *= -x2 / ((2.0 * kf) * (2.0 * kf + 1.0));
            si += term_s / (2.0 * kf + 1.0);
            if term_s.abs() < f64::EPSILON && term_c.abs() < f64::EPSILON {
                break;
            }
        }
        (si, EULER_GAMMA + x.ln() + ci_sum)
    } else {
        // Lentz on the E1 continued fraction at z = ix.
        let mut b = (1.0, x); // z + 1
        let mut c = (1e300, 0.0);
        let mut d = cinv(b);
        let mut h = d;
        for i in 1..MAX_ITER {
            let a = -((i * i) as f64);
            b.0 += 2.0;
            d = cinv(cadd(cscale(a, d), b));
            c = cadd(b, cdiv((a, 0.0), c));
            let del = cmul(c, d);
            h = cmul(h, del);
            if (del.0 - 1.0).abs() + del.1.abs() < f64::EPSILON {
                break;
            }
        }
        // E1(ix) = e^{-ix} * h
        let e = (x.cos(), -x.sin());
        let e1ix = cmul(e, h);
        (std::f64::consts::FRAC_PI_2 + e1ix.1, -e1ix.0)
    }
}

type C = (f64, f64);

fn cadd(a: C, b: C) -> C {
    (a.0 + b.0, a.1 + b.1)
}
fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}
fn cscale(s: f64, a: C) -> C {
    (s * a.0, s * a.1)
}
fn cinv(a: C) -> C {
    let n = a.0 * a.0 + a.1 * a.1;
    (a.0 / n, -a.1 / n)
}
fn cdiv(a: C, b: C) -> C {
    cmul(a, cinv(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Expected values frozen from scipy 1.15.3 (special.expi, special.exp1,
    // special.sici), 17 significant digits.

    #[test]
    fn ei_matches_scipy() {
        assert_relative_eq!(ei(0.25), -5.42543264661913716e-01, max_relative = 1e-14);
        assert_relative_eq!(ei(0.5), 4.54219904863173540e-01, max_relative = 1e-14);
        assert_relative_eq!(ei(1.0), 1.89511781635593701e+00, max_relative = 1e-14);
        assert_relative_eq!(ei(3.0), 9.93383257062541603e+00, max_relative = 1e-14);
        assert_relative_eq!(ei(5.0), 4.01852753558031708e+01, max_relative = 1e-14);
        assert_relative_eq!(ei(10.0), 2.49222897624187726e+03, max_relative = 1e-14);
        assert_relative_eq!(ei(30.0), 3.68973209407273804e+11, max_relative = 1e-14);
        assert_relative_eq!(ei(60.0), 1.93618221392927650e+24, max_relative = 1e-13);
        assert_relative_eq!(ei(200.0), 3.63123523315935579e+84, max_relative = 1e-13);
    }

    #[test]
    fn e1_matches_scipy() {
        assert_relative_eq!(e1(0.25), 1.04428263444373814e+00, max_relative = 1e-14);
        assert_relative_eq!(e1(0.5), 5.59773594776160843e-01, max_relative = 1e-14);
        assert_relative_eq!(e1(1.0), 2.19383934395520508e-01, max_relative = 1e-14);
        assert_relative_eq!(e1(3.0), 1.30483810941970386e-02, max_relative = 1e-13);
        assert_relative_eq!(e1(5.0), 1.14829559127532571e-03, max_relative = 1e-13);
        assert_relative_eq!(e1(10.0), 4.15696892968532464e-06, max_relative = 1e-13);
        assert_relative_eq!(e1(30.0), 3.02155201068881283e-15, max_relative = 1e-13);
    }

    #[test]
    fn combos_match_scipy_composition() {
        // S(x) = e^x Ei(-x) + e^-x Ei(x), frozen from scipy expi.
        assert_relative_eq!(ei_combo_sym(0.05), -4.84683185375137615e+00, max_relative = 1e-13);
        assert_relative_eq!(ei_combo_sym(0.25), -1.76341856420020804e+00, max_relative = 1e-13);
        assert_relative_eq!(ei_combo_sym(1.0), 1.00827520911871527e-01, max_relative = 1e-12);
        assert_relative_eq!(ei_combo_sym(3.0), 2.32492661093322728e-01, max_relative = 1e-13);
        assert_relative_eq!(ei_combo_sym(10.0), 2.15836865336226646e-02, max_relative = 1e-13);
        assert_relative_eq!(ei_combo_sym(40.0), 1.25474770634655466e-03, max_relative = 1e-12);
        assert_relative_eq!(ei_combo_sym(60.0), 5.56486686766756444e-04, max_relative = 1e-12);
        assert_relative_eq!(ei_combo_sym(300.0), 2.22237040330757959e-05, max_relative = 1e-12);
    }

    #[test]
    fn combo_asym_consistent_with_parts() {
        // No cancellation in this combination: direct composition is the oracle.
        for &x in &[0.1f64, 0.9, 4.0, 20.0, 49.0, 51.0, 80.0, 400.0] {
            let direct = -(x.exp() * e1(x) + (-x).exp() * ei(x));
            assert_relative_eq!(ei_combo_asym(x), direct, max_relative = 1e-12);
        }
    }

    #[test]
    fn combo_branches_agree_at_switchover() {
        // Both sides of the x = 50 handoff must agree with the direct
        // composition, which is still accurate (cancellation costs ~x/2).
        for &x in &[30.0f64, 45.0, 49.0, 50.0, 51.0, 55.0, 60.0, 80.0] {
            let direct = (-x).exp() * ei(x) - x.exp() * e1(x);
            assert_relative_eq!(ei_combo_sym(x), direct, max_relative = 1e-12);
        }
    }

    #[test]
    fn sici_matches_scipy() {
        let cases = [
            (0.3, 2.98504043807043151e-01, -6.49172932971161853e-01),
            (1.0, 9.46083070367183088e-01, 3.37403922900968156e-01),
            (2.0, 1.60541297680269501e+00, 4.22980828774864981e-01),
            (5.0, 1.54993124494467405e+00, -1.90029749656643904e-01),
            (10.0, 1.65834759421887390e+00, -4.54564330044553710e-02),
            (25.0, 1.53148255099996122e+00, -6.84859717970259102e-03),
            (80.0, 1.57233088691248724e+00, -1.24025011550709576e-02),
        ];
        for (x, si_exp, ci_exp) in cases {
            let (si, ci) = sici(x);
            assert_relative_eq!(si, si_exp, max_relative = 1e-12);
            assert_relative_eq!(ci, ci_exp, max_relative = 1e-11, epsilon = 1e-14);
        }
    }

    #[test]
    fn small_x_limits() {
        // Ei(x) - ln(x) -> γ and Ci(x) - ln(x) -> γ as x -> 0.
        assert_relative_eq!(ei(1e-12) - (1e-12f64).ln(), EULER_GAMMA, max_relative = 1e-10);
        let (si, ci) = sici(1e-12);
        assert_relative_eq!(si, 1e-12, max_relative = 1e-12);
        assert_relative_eq!(ci - (1e-12f64).ln(), EULER_GAMMA, max_relative = 1e-10);
    }
}
