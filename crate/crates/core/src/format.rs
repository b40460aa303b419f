//! Fixed-precision number formatting shared by circuit dumps and CSV output.

/// Formats `x` like C's `%.<digits>g`: `digits` significant digits, trailing
/// zeros stripped, scientific notation for very small or large magnitudes.
pub fn format_sig(x: f64, digits: usize) -> String {
    assert!(digits > 0);
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::format_sig;
    use std::f64::consts::PI;

    #[test]
    fn matches_printf_g() {
        assert_eq!(format_sig(PI / 8.0, 9), "0.392699082");
        assert_eq!(format_sig(2.0, 9), "2");
        assert_eq!(format_sig(2.25, 9), "2.25");
        assert_eq!(format_sig(-PI / 2.0, 9), "-1.57079633");
        assert_eq!(format_sig(0.0238337968, 9), "0.0238337968");
        assert_eq!(format_sig(9.41199e-5, 9), "9.41199e-05");
        assert_eq!(format_sig(1.0e-4, 9), "0.0001");
        assert_eq!(format_sig(123456789.0, 9), "123456789");
        assert_eq!(format_sig(1234567890.0, 9), "1.23456789e+09");
        assert_eq!(format_sig(0.99999999999, 9), "1");
        assert_eq!(format_sig(0.0, 9), "0");
    }

    #[test]
    fn reparses_stably() {
        for &x in &[0.1, 1.0 / 3.0, 2.0 * PI, 1.2345e-7, 0.99999999274] {
            let s = format_sig(x, 9);
            let y: f64 = s.parse().unwrap();
            assert_eq!(format_sig(y, 9), s);
        }
    }
}
