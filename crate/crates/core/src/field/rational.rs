use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::FieldError;

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator, which is what makes equality-by-representation valid.
pub type Rational = BigRational;

/// Formats as `"num/den"`, always including the denominator (`"0/1"`, `"-3/2"`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"`, a bare integer, or a plain decimal such as `"0.01"`.
///
/// Decimals are converted exactly: `"0.01"` is `1/100`, not the nearest binary
/// float.
pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let bad = || FieldError::ParseRational(s.to_string());
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_value: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| bad())?
        };
        let frac_value: BigInt = frac_part.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10u32), frac_part.len());
        let magnitude = Rational::from_integer(int_value) + Rational::new(frac_value, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let num: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(num))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&Rational::zero()), "0/1");
        assert_eq!(format_rational(&Rational::from_integer(7.into())), "7/1");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            parse_rational("-3/2").unwrap(),
            Rational::new((-3).into(), 2.into())
        );
        assert_eq!(
            parse_rational("4/-8").unwrap(),
            Rational::new((-1).into(), 2.into())
        );
        assert_eq!(
            parse_rational("12").unwrap(),
            Rational::from_integer(12.into())
        );
        assert_eq!(
            parse_rational("0.01").unwrap(),
            Rational::new(1.into(), 100.into())
        );
        assert_eq!(
            parse_rational("-1.5").unwrap(),
            Rational::new((-3).into(), 2.into())
        );
        assert_eq!(
            parse_rational(".5").unwrap(),
            Rational::new(1.into(), 2.into())
        );
        for bad in ["", "1/0", "x", "1.", "1.2.3", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }
}
