//! Exact scalar towers.
//!
//! Three fields are provided: the rationals [`Q`], the Gaussian rationals
//! [`QI`], and [`RatFunc`], rational functions in one formal parameter `q`
//! with Gaussian-rational coefficients. Every algebra instance fixes one of
//! them through the [`Field`] trait.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Q = BigRational;
pub type QI = Complex<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tower {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(i)")]
    Gaussian,
    #[serde(rename = "Q(i)(q)")]
    RationalFunction,
}

impl Tower {
    pub fn as_str(&self) -> &'static str {
        match self {
            Tower::Rational => "Q",
            Tower::Gaussian => "Q(i)",
            Tower::RationalFunction => "Q(i)(q)",
        }
    }

    pub fn parse(s: &str) -> Option<Tower> {
        match s {
            "Q" => Some(Tower::Rational),
            "Q(i)" => Some(Tower::Gaussian),
            "Q(i)(q)" => Some(Tower::RationalFunction),
            _ => None,
        }
    }

    pub fn allows_imaginary(&self) -> bool {
        !matches!(self, Tower::Rational)
    }

    pub fn allows_parameter(&self) -> bool {
        matches!(self, Tower::RationalFunction)
    }
}

/// An exact field usable as the coefficient ring of presented algebras.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    const TOWER: Tower;

    fn from_q(q: &Q) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_q(&Q::from_integer(BigInt::from(n)))
    }

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_q(&Q::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The imaginary unit, if the tower contains it.
    fn imag_unit() -> Option<Self>;

    /// The formal deformation parameter, if the tower contains it.
    fn param() -> Option<Self>;

    /// Complex conjugation on coefficients; `q` is treated as real.
    fn conj(&self) -> Self;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Value as a complex double, when the element is a constant.
    fn to_c64(&self) -> Option<Complex<f64>>;

    /// Rendering in the expression grammar (parenthesised when compound).
    fn to_expr(&self) -> String;

    /// Widening into the largest tower.
    fn to_ratfunc(&self) -> RatFunc;

    fn pow(&self, n: i64) -> Option<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc * base.clone();
        }
        Some(acc)
    }
}

fn q_to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn q_expr(q: &Q) -> String {
    if q.is_negative() {
        format!("(-{})", -q.clone())
    } else {
        q.to_string()
    }
}

impl Field for Q {
    const TOWER: Tower = Tower::Rational;

    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn param() -> Option<Self> {
        None
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> Option<Complex<f64>> {
        Some(Complex::new(q_to_f64(self), 0.0))
    }
    fn to_expr(&self) -> String {
        q_expr(self)
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::constant(QI::new(self.clone(), Q::zero()))
    }
}

fn qi_expr(z: &QI) -> String {
    if z.im.is_zero() {
        return q_expr(&z.re);
    }
    let im = if z.im == Q::one() {
        "I".to_string()
    } else if z.im == -Q::one() {
        "-I".to_string()
    } else if z.im.is_negative() {
        format!("-{}*I", -z.im.clone())
    } else {
        format!("{}*I", z.im)
    };
    if z.re.is_zero() {
        format!("({im})")
    } else if im.starts_with('-') {
        format!("({} {})", z.re, im.replacen('-', "- ", 1))
    } else {
        format!("({} + {})", z.re, im)
    }
}

impl Field for QI {
    const TOWER: Tower = Tower::Gaussian;

    fn from_q(q: &Q) -> Self {
        QI::new(q.clone(), Q::zero())
    }
    fn imag_unit() -> Option<Self> {
        Some(QI::new(Q::zero(), Q::one()))
    }
    fn param() -> Option<Self> {
        None
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn to_c64(&self) -> Option<Complex<f64>> {
        Some(Complex::new(q_to_f64(&self.re), q_to_f64(&self.im)))
    }
    fn to_expr(&self) -> String {
        qi_expr(self)
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::constant(self.clone())
    }
}

// ---- dense polynomials over Q(i), low degree first ----

pub(crate) mod upoly {
    use super::*;

    pub type P = Vec<QI>;

    pub fn trim(p: &mut P) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn add(a: &P, b: &P) -> P {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).cloned().unwrap_or_else(QI::zero);
            let y = b.get(i).cloned().unwrap_or_else(QI::zero);
            out.push(x + y);
        }
        trim(&mut out);
        out
    }

    pub fn neg(a: &P) -> P {
        a.iter().map(|c| -c.clone()).collect()
    }

    pub fn mul(a: &P, b: &P) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![QI::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &P, c: &QI) -> P {
        let mut out: P = a.iter().map(|x| x.clone() * c.clone()).collect();
        trim(&mut out);
        out
    }

    pub fn shift_up(a: &P, k: usize) -> P {
        if a.is_empty() {
            return Vec::new();
        }
        let mut out = vec![QI::zero(); k];
        out.extend(a.iter().cloned());
        out
    }

    /// Euclidean division; `b` must be nonzero.
    pub fn divrem(a: &P, b: &P) -> (P, P) {
        let mut r = a.clone();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = QI::one() / b[db].clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut quo = vec![QI::zero(); r.len() - db];
        while r.len() >= b.len() {
            let k = r.len() - 1 - db;
            let c = r[r.len() - 1].clone() * lead_inv.clone();
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = r[k + j].clone() - c.clone() * bj.clone();
            }
            quo[k] = c;
            r.pop();
            trim(&mut r);
        }
        trim(&mut quo);
        (quo, r)
    }

    pub fn monic(a: &P) -> P {
        match a.last() {
            None => Vec::new(),
            Some(l) => {
                let inv = QI::one() / l.clone();
                scale(a, &inv)
            }
        }
    }

    pub fn gcd(a: &P, b: &P) -> P {
        let mut x = a.clone();
        let mut y = b.clone();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        monic(&x)
    }

    pub fn eval(a: &P, z: &QI) -> QI {
        let mut acc = QI::zero();
        for c in a.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn low_zeros(a: &P) -> usize {
        a.iter().take_while(|c| c.is_zero()).count()
    }
}

/// Rational function `q^shift · num(q) / den(q)` in canonical form:
/// `num(0) ≠ 0` (or `num = 0`), `den(0) ≠ 0`, `den` monic, `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    shift: i64,
    num: upoly::P,
    den: upoly::P,
}

impl RatFunc {
    pub fn constant(c: QI) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            RatFunc { shift: 0, num: vec![c], den: vec![QI::one()] }
        }
    }

    pub fn q() -> Self {
        RatFunc { shift: 1, num: vec![QI::one()], den: vec![QI::one()] }
    }

    /// Polynomial in `q` from coefficients, lowest degree first.
    pub fn from_coeffs(coeffs: Vec<QI>) -> Self {
        Self::normalize(0, coeffs, vec![QI::one()])
    }

    fn normalize(mut shift: i64, mut num: upoly::P, mut den: upoly::P) -> Self {
        upoly::trim(&mut num);
        upoly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let zn = upoly::low_zeros(&num);
        if zn > 0 {
            num.drain(..zn);
            shift += zn as i64;
        }
        let zd = upoly::low_zeros(&den);
        if zd > 0 {
            den.drain(..zd);
            shift -= zd as i64;
        }
        if den.len() > 1 {
            let g = upoly::gcd(&num, &den);
            if g.len() > 1 {
                num = upoly::divrem(&num, &g).0;
                den = upoly::divrem(&den, &g).0;
            }
        }
        let lead = den.last().unwrap().clone();
        if !lead.is_one() {
            let inv = QI::one() / lead;
            num = upoly::scale(&num, &inv);
            den = upoly::scale(&den, &inv);
        }
        RatFunc { shift, num, den }
    }

    pub fn is_laurent(&self) -> bool {
        self.den.len() == 1
    }

    /// True when the element lies in `Q(i)`.
    pub fn as_constant(&self) -> Option<QI> {
        if self.num.is_empty() {
            return Some(QI::zero());
        }
        if self.shift == 0 && self.num.len() == 1 && self.den.len() == 1 {
            Some(self.num[0].clone())
        } else {
            None
        }
    }

    /// Specialisation at `q = z`; `None` if the denominator vanishes there.
    pub fn eval(&self, z: &QI) -> Option<QI> {
        if self.num.is_empty() {
            return Some(QI::zero());
        }
        let d = upoly::eval(&self.den, z);
        if d.is_zero() {
            return None;
        }
        let qs = Field::pow(z, self.shift)?;
        Some(qs * upoly::eval(&self.num, z) / d)
    }

    /// Numerator and denominator as ordinary polynomials, with the `q`-shift
    /// absorbed into one of them.
    pub fn num_den(&self) -> (Vec<QI>, Vec<QI>) {
        if self.shift >= 0 {
            (upoly::shift_up(&self.num, self.shift as usize), self.den.clone())
        } else {
            (self.num.clone(), upoly::shift_up(&self.den, (-self.shift) as usize))
        }
    }

    /// Remainder of the numerator modulo a polynomial `m` (lowest degree first);
    /// zero exactly when `m` divides the numerator.
    pub fn numerator_mod(&self, m: &[QI]) -> Vec<QI> {
        let (n, _) = self.num_den();
        upoly::divrem(&n, &m.to_vec()).1
    }

    fn laurent_terms(&self) -> Vec<(i64, QI)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shift + i as i64, c.clone()))
            .collect()
    }
}

fn poly_expr(terms: &[(i64, QI)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (e, c)) in terms.iter().enumerate() {
        let (neg, mag) = if c.im.is_zero() && c.re.is_negative() {
            (true, QI::new(-c.re.clone(), Q::zero()))
        } else {
            (false, c.clone())
        };
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match *e {
            0 => String::new(),
            1 => "Q".into(),
            e => format!("Q^{e}"),
        };
        if mono.is_empty() {
            s.push_str(&qi_expr(&mag));
        } else if mag.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{}*{}", qi_expr(&mag), mono));
        }
    }
    s
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            let mut terms = self.laurent_terms();
            terms.reverse();
            write!(f, "{}", poly_expr(&terms))
        } else {
            let (n, d) = self.num_den();
            let pn: Vec<(i64, QI)> =
                n.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i64, c.clone())).collect();
            let pd: Vec<(i64, QI)> =
                d.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i64, c.clone())).collect();
            write!(f, "({})*({})^-1", poly_expr(&pn), poly_expr(&pd))
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { shift: 0, num: Vec::new(), den: vec![QI::one()] }
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc { shift: 0, num: vec![QI::one()], den: vec![QI::one()] }
    }
}

// ---- Add ----

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let m = self.shift.min(o.shift);
        let a = upoly::shift_up(&self.num, (self.shift - m) as usize);
        let b = upoly::shift_up(&o.num, (o.shift - m) as usize);
        if self.den == o.den {
            let den = self.den.clone();
            RatFunc::normalize(m, upoly::add(&a, &b), den)
        } else {
            let n = upoly::add(&upoly::mul(&a, &o.den), &upoly::mul(&b, &self.den));
            RatFunc::normalize(m, n, upoly::mul(&self.den, &o.den))
        }
    }
}

// ---- Neg / Sub ----

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { shift: self.shift, num: upoly::neg(&self.num), den: self.den }
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self + (-o)
    }
}

// ---- Mul / Div ----

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        let shift = self.shift + o.shift;
        let num = upoly::mul(&self.num, &o.num);
        if self.is_laurent() && o.is_laurent() {
            return RatFunc { shift, num, den: vec![QI::one()] };
        }
        RatFunc::normalize(shift, num, upoly::mul(&self.den, &o.den))
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, o: RatFunc) -> RatFunc {
        let inv = Field::inv(&o).expect("division by zero rational function");
        self * inv
    }
}

impl Field for RatFunc {
    const TOWER: Tower = Tower::RationalFunction;

    fn from_q(q: &Q) -> Self {
        RatFunc::constant(QI::new(q.clone(), Q::zero()))
    }
    fn imag_unit() -> Option<Self> {
        Some(RatFunc::constant(QI::new(Q::zero(), Q::one())))
    }
    fn param() -> Option<Self> {
        Some(RatFunc::q())
    }
    fn conj(&self) -> Self {
        RatFunc {
            shift: self.shift,
            num: self.num.iter().map(|c| c.conj()).collect(),
            den: self.den.iter().map(|c| c.conj()).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::normalize(-self.shift, self.den.clone(), self.num.clone()))
    }
    fn to_c64(&self) -> Option<Complex<f64>> {
        self.as_constant().and_then(|c| c.to_c64())
    }
    fn to_expr(&self) -> String {
        let s = self.to_string();
        if !s.contains(' ') {
            s
        } else {
            format!("({s})")
        }
    }
    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }
}

/// Parse an integer or `n/m` literal into `Q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        Some(Q::from_integer(s.parse().ok()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::q()
    }
    fn c(n: i64) -> RatFunc {
        RatFunc::from_i64(n)
    }

    #[test]
    fn laurent_arithmetic() {
        let qinv = q().inv().unwrap();
        assert_eq!(q() * qinv.clone(), RatFunc::one());
        let a = q() - qinv.clone();
        assert_eq!(a.clone() + qinv, q());
        assert_eq!(a.to_string(), "Q - Q^-1");
    }

    #[test]
    fn reduced_form_cancels_common_factor() {
        // (q^2 - 1) / (q - 1) = q + 1
        let n = q() * q() - c(1);
        let d = q() - c(1);
        let r = n / d;
        assert_eq!(r, q() + c(1));
        assert!(r.is_laurent());
    }

    #[test]
    fn denominators_are_monic() {
        let r = c(1) / (c(2) * q() + c(4));
        let (_, den) = r.num_den();
        assert!(den.last().unwrap().is_one());
        assert_eq!(r.clone() * (c(2) * q() + c(4)), c(1));
    }

    #[test]
    fn specialisation() {
        let p = q() * q() * q() - c(1);
        let two = QI::from_i64(2);
        assert_eq!(p.eval(&two).unwrap(), QI::from_i64(7));
        let m = vec![QI::one(), QI::one(), QI::one()];
        assert!(p.numerator_mod(&m).is_empty());
    }

    #[test]
    fn gaussian_expr_roundtrip_shape() {
        let z = QI::new(Q::new(1.into(), 2.into()), Q::new((-3).into(), 4.into()));
        assert_eq!(z.to_expr(), "(1/2 - 3/4*I)");
        assert_eq!(QI::imag_unit().unwrap().to_expr(), "(I)");
    }
}
