//! Exact rational scalars used everywhere in the crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;
pub type Int = BigInt;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Largest integer `<= r`.
pub fn floor_int(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Smallest integer `>= r`.
pub fn ceil_int(r: &Rat) -> Int {
    r.ceil().to_integer()
}

/// Canonical `p/q` rendering; the denominator is always printed.
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, plain integers and decimal literals (`0.61`, `-3.5`) exactly.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().map_err(|_| format!("bad numerator `{p}`"))?;
        let q: Int = q.trim().parse().map_err(|_| format!("bad denominator `{q}`"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((w, frac)) = s.split_once('.') {
        let neg = w.trim_start().starts_with('-');
        let w: Int = if w == "-" || w.is_empty() {
            Int::zero()
        } else {
            w.trim().parse().map_err(|_| format!("bad integer part `{w}`"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal literal `{s}`"));
        }
        let digits: Int = frac.parse().unwrap();
        let scale = Int::from(10u32).pow(frac.len() as u32);
        let frac_part = Rat::new(digits, scale);
        let whole = Rat::from_integer(w.abs());
        let value = whole + frac_part;
        return Ok(if neg { -value } else { value });
    }
    let p: Int = s.parse().map_err(|_| format!("bad rational literal `{s}`"))?;
    Ok(Rat::from_integer(p))
}

/// Decimal rendering with `digits` places, suitable for SVG coordinates.
/// Rounds toward zero; exact enough for drawing.
pub fn rat_decimal(r: &Rat, digits: u32) -> String {
    let scale = Int::from(10u32).pow(digits);
    let scaled = (r * Rat::from_integer(scale.clone())).trunc().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let (whole, frac) = (abs.clone() / scale.clone(), abs % scale);
    let mut frac_s = frac.to_string();
    while (frac_s.len() as u32) < digits {
        frac_s.insert(0, '0');
    }
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac_s}")
    }
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert_eq!(parse_rat("0.61").unwrap(), rat(61, 100));
        assert_eq!(parse_rat("-1.25").unwrap(), rat(-5, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(rat_decimal(&rat(-1, 2), 2), "-0.50");
        assert_eq!(rat_decimal(&int(5), 1), "5.0");
    }
}
