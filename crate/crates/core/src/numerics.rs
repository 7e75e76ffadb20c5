//! Small numeric helpers: regularized incomplete gamma tail and
//! significant-digit formatting for bit-stable output.

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a).
///
/// Series expansion for x < a + 1, continued fraction otherwise
/// (Numerical Recipes style). Accurate to ~1e-12 for the shape range
/// used here (a >= 0.5).
pub fn gamma_q(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "gamma_q domain: a > 0, x >= 0");
    if x == 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_p_series(a, x)
    } else {
        gamma_q_cf(a, x)
    }
}

#[allow(clippy::excessive_precision)]
fn ln_gamma(x: f64) -> f64 {
    // Lanczos approximation, g = 7, n = 9; published coefficients kept at
    // full printed precision.
    const COEF: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // Reflection formula.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = 0.99999999999980993;
    for (i, c) in COEF.iter().enumerate() {
        acc += c / (x + i as f64 + 1.0);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut sum = 1.0 / a;
    let mut del = sum;
    for _ in 0..500 {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * 1e-15 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

fn gamma_q_cf(a: f64, x: f64) -> f64 {
    const FPMIN: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-15 {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

/// Formats `x` with `sig` significant digits, plain decimal where compact
/// and scientific otherwise. Locale-free, deterministic.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.*e}", sig - 1, x);
    // s looks like "-1.23456e-13"; split mantissa and exponent.
    let epos = s.find('e').expect("exponent marker");
    let mant = &s[..epos];
    let exp: i32 = s[epos + 1..].parse().expect("exponent");
    // %g-style switch: positional only while the rounded digits fit without
    // long zero padding.
    if !(-4..sig as i32).contains(&exp) {
        let mant = trim_trailing_zeros(mant);
        return format!("{mant}e{exp}");
    }
    // Rebuild the positional form from the already-rounded digits.
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mant),
    };
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let plain = if exp >= 0 {
        let point = (exp + 1) as usize;
        if point >= digits.len() {
            format!("{digits}{}", "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{}", trim_trailing_zeros(&plain))
}

fn trim_trailing_zeros(s: &str) -> &str {
    if !s.contains('.') {
        return s;
    }
    let s = s.trim_end_matches('0');
    s.strip_suffix('.').unwrap_or(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn gamma_q_known_values() {
        // Q(1, x) = exp(-x)
        assert!(close(gamma_q(1.0, 2.0), 0.1353352832366127, 1e-12));
        // Q(3, 2) = e^-2 (1 + 2 + 2) computed independently
        assert!(close(gamma_q(3.0, 2.0), 0.6766764161830635, 1e-12));
        assert!(close(gamma_q(3.0, 0.5), 0.9856123220330293, 1e-12));
        // Q(0.5, 1) = erfc(1)
        assert!(close(gamma_q(0.5, 1.0), 0.15729920705028513, 1e-12));
        assert_eq!(gamma_q(2.0, 0.0), 1.0);
    }

    #[test]
    fn gamma_q_is_decreasing_in_x() {
        let mut prev = 1.0;
        for i in 1..60 {
            let q = gamma_q(3.0, i as f64 * 0.25);
            assert!(q < prev);
            prev = q;
        }
    }

    #[test]
    fn fmt_sig_cases() {
        assert_eq!(fmt_sig(0.47368421052631576, 6), "0.473684");
        assert_eq!(fmt_sig(1800.0, 6), "1800");
        assert_eq!(fmt_sig(6.25e-13, 6), "6.25e-13");
        assert_eq!(fmt_sig(0.0, 6), "0");
        assert_eq!(fmt_sig(1.0, 6), "1");
        assert_eq!(fmt_sig(-0.5, 6), "-0.5");
        assert_eq!(fmt_sig(3.689031553093291e-5, 6), "3.68903e-5");
        assert_eq!(fmt_sig(123456789.0, 6), "1.23457e8");
        assert_eq!(fmt_sig(0.9999999, 4), "1");
    }
}
