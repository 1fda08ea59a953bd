//! Univariate polynomials over `Q` and the field `Q(t)` with its `t`-adic
//! valuation. `Q(t)` stands in for the field of Puiseux series: its value
//! group is `Z`, so every tropical object computed from it is a rational
//! polyhedral complex.

use std::fmt;
use std::str::FromStr;

use super::field::{Field, Valued};
use super::{Rational, TropValue};
use crate::error::Error;

/// Dense polynomial in `t`; `coeffs[k]` is the coefficient of `t^k`.
/// No trailing zeros, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    /// `c · t^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        QPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Lowest power of `t` with nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = Rational::zero();
        QPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + rhs.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, rhs: &QPoly) -> QPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dl = d.leading().expect("division by zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] / &dl;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> QPoly {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() || k == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `Q(t)` kept in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TRatFn {
    num: QPoly,
    den: QPoly,
}

impl TRatFn {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return TRatFn { num, den: QPoly::constant(Rational::one()) };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let l = den.leading().expect("nonzero").clone();
        if !l.is_one() {
            let inv = l.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        TRatFn { num, den }
    }

    pub fn from_poly(p: QPoly) -> Self {
        TRatFn { num: p, den: QPoly::constant(Rational::one()) }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_poly(QPoly::monomial(Rational::one(), 1))
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(k: i64) -> Self {
        let m = QPoly::monomial(Rational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            TRatFn::new(QPoly::constant(Rational::one()), m)
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0) {
            Some(self.num.coeffs().first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// `t`-adic valuation: `ord_t(num) - ord_t(den)`, or ∞ for zero.
    pub fn tval(&self) -> TropValue {
        match (self.num.order(), self.den.order()) {
            (Some(a), Some(b)) => TropValue::Finite(Rational::from_int(a as i64 - b as i64)),
            _ => TropValue::Infinity,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = TRatFn::from_int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Field for TRatFn {
    fn zero() -> Self {
        TRatFn::from_poly(QPoly::zero())
    }
    fn one() -> Self {
        TRatFn::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return TRatFn::new(self.num.add(&rhs.num), self.den.clone());
        }
        TRatFn::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        Field::add(self, &Field::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Field::zero();
        }
        TRatFn::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        TRatFn::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
    fn neg(&self) -> Self {
        TRatFn { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_i64(n: i64) -> Self {
        TRatFn::from_int(n)
    }
}

impl Valued for TRatFn {
    fn tval(&self) -> TropValue {
        TRatFn::tval(self)
    }
}

impl From<Rational> for TRatFn {
    fn from(c: Rational) -> Self {
        TRatFn::constant(c)
    }
}

impl fmt::Display for TRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &QPoly| {
            let s = p.to_string();
            if s.contains(' ') || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for TRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses expressions such as `"t+1"`, `"(t^2-3)/(2*t)"`, `"-1/2"` or `"5"`.
impl FromStr for TRatFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = ExprParser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(v)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<TRatFn, Error> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = Field::add(&acc, &self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = Field::sub(&acc, &self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TRatFn, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = Field::mul(&acc, &self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    acc = Field::div(&acc, &d);
                }
                // implicit multiplication: "3t", "2(t+1)"
                Some(b't') | Some(b'(') => acc = Field::mul(&acc, &self.unary()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<TRatFn, Error> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Field::neg(&self.unary()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<TRatFn, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            let v = base.pow(e);
            if neg {
                if v.is_zero() {
                    return Err(self.error("division by zero"));
                }
                return Ok(Field::div(&TRatFn::from_int(1), &v));
            }
            return Ok(v);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer too large"))
    }

    fn atom(&mut self) -> Result<TRatFn, Error> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(TRatFn::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let r: Rational = digits.parse()?;
                Ok(TRatFn::constant(r))
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

impl serde::Serialize for TRatFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for TRatFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(TRatFn::from_int(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> TRatFn {
        s.parse().unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(f("5").tval(), TropValue::int(0));
        assert_eq!(f("t^2 + 3t").tval(), TropValue::int(1));
        assert_eq!(f("(t+1)/t").tval(), TropValue::int(-1));
        assert_eq!(f("0").tval(), TropValue::Infinity);
        assert_eq!(f("t^-3").tval(), TropValue::int(-3));
    }

    #[test]
    fn normalizes_to_lowest_terms() {
        let a = f("(t^2 - 1)/(2t - 2)");
        assert_eq!(a, f("(t+1)/2"));
        assert_eq!(a.den().coeffs(), &[Rational::one()]);
        assert_eq!(f("(t+1)/(3t)").den(), &QPoly::monomial(Rational::one(), 1));
    }

    #[test]
    fn parse_print_round_trip() {
        for s in ["t + 1", "-t^2 + 1/2", "(t + 1)/t", "(-t - 2)/(t^2 + 3)", "7", "(2/3)*t^3 - t"] {
            let v = f(s);
            assert_eq!(f(&v.to_string()), v, "{s} printed as {v}");
        }
        assert!("t +".parse::<TRatFn>().is_err());
        assert!("1/(t-t)".parse::<TRatFn>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = f("t+1");
        let b = f("1/t");
        assert_eq!(Field::mul(&a, &b), f("(t+1)/t"));
        assert_eq!(Field::sub(&Field::mul(&a, &b), &b), f("1"));
        assert_eq!(f("t").pow(3), f("t^3"));
    }
}
