//! Deterministic numeric formatting for report files: up to six
//! significant digits, fixed notation in the mid range, scientific
//! outside it.

/// Format with at most six significant digits, trimming trailing zeros.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let ax = x.abs();
    if (1e-4..1e6).contains(&ax) {
        let magnitude = ax.log10().floor() as i32 + 1;
        let decimals = (6 - magnitude).max(0) as usize;
        trim_decimal(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.5e}");
        let (mantissa, exponent) = s.split_once('e').expect("scientific format");
        let mantissa = trim_decimal(mantissa.to_string());
        let exp: i32 = exponent.parse().expect("exponent");
        if exp < 0 {
            format!("{mantissa}e-{:02}", -exp)
        } else {
            format!("{mantissa}e+{exp:02}")
        }
    }
}

/// Format a tail-mass p-value; a value of exactly zero is below Monte
/// Carlo resolution and prints as "<1/draws".
pub fn fmt_p(p: f64, draws: usize) -> String {
    if p == 0.0 {
        format!("<{}", fmt_sig(1.0 / draws as f64))
    } else {
        fmt_sig(p)
    }
}

fn trim_decimal(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mid_range_uses_fixed_notation() {
        assert_eq!(fmt_sig(0.01), "0.01");
        assert_eq!(fmt_sig(0.648128), "0.648128");
        assert_eq!(fmt_sig(-0.5), "-0.5");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(4613.0), "4613");
        assert_eq!(fmt_sig(0.0294563), "0.0294563");
    }

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_sig(0.123456789), "0.123457");
        assert_eq!(fmt_sig(123456.789), "123457");
    }

    #[test]
    fn small_values_use_scientific_notation() {
        assert_eq!(fmt_sig(4.59770115e-5), "4.5977e-05");
        assert_eq!(fmt_sig(2.5e-5), "2.5e-05");
    }

    #[test]
    fn p_value_floor_format() {
        assert_eq!(fmt_p(0.0, 40_000), "<2.5e-05");
        assert_eq!(fmt_p(0.0321, 40_000), "0.0321");
        assert_eq!(fmt_p(1.0, 40_000), "1");
    }

    #[test]
    fn formatted_values_parse_back() {
        for x in [0.01, 0.648, 4.5977e-5, -3.2e-9, 12345.6, 0.0] {
            let s = fmt_sig(x);
            let back: f64 = s.parse().unwrap();
            assert!((back - x).abs() <= 1e-6 * x.abs().max(1e-12), "{x} -> {s}");
        }
    }
}
