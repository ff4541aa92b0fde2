//! Number formatting shared by the CSV writers.

/// Formats `x` with 17 significant digits in the style of C's `%.17g`:
/// fixed notation for decimal exponents in `[-4, 17)`, scientific otherwise,
/// trailing zeros removed. The output parses back to exactly `x`.
pub fn sig17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let sign = if x < 0.0 { "-" } else { "" };

    if (-4..17).contains(&exp) {
        let body = if exp >= 0 {
            let split = (exp + 1) as usize;
            format!("{}.{}", &digits[..split], &digits[split..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        format!("{sign}{}", trim_fraction(&body))
    } else {
        let body = format!("{}.{}", &digits[..1], &digits[1..]);
        let exp_sign = if exp < 0 { '-' } else { '+' };
        format!("{sign}{}e{exp_sign}{:02}", trim_fraction(&body), exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::sig17;
    use proptest::prelude::*;

    #[test]
    fn matches_printf_g17() {
        assert_eq!(sig17(0.0), "0");
        assert_eq!(sig17(1.0), "1");
        assert_eq!(sig17(-2.5), "-2.5");
        assert_eq!(sig17(0.1), "0.10000000000000001");
        assert_eq!(sig17(0.25), "0.25");
        assert_eq!(sig17(1e-5), "1.0000000000000001e-05");
        assert_eq!(sig17(1e-4), "0.0001");
        assert_eq!(sig17(123456.0), "123456");
        assert_eq!(sig17(1e17), "1e+17");
        assert_eq!(sig17(0.17713024868723015), "0.17713024868723015");
    }

    proptest! {
        #[test]
        fn round_trips(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL) {
            let s = sig17(x);
            prop_assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
