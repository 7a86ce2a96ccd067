//! Dense univariate polynomials over a [`FieldDesc`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::field::{FieldDesc, FieldElem};
use super::AlgebraError;

/// Dense polynomial, coefficients in ascending degree.
///
/// The zero polynomial has no coefficients; otherwise the last
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldDesc,
    coeffs: Vec<FieldElem>,
}

pub(crate) fn trim(field: &FieldDesc, v: &mut Vec<FieldElem>) {
    while v.last().is_some_and(|c| field.is_zero(c)) {
        v.pop();
    }
}

pub(crate) fn vec_add(field: &FieldDesc, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
    let n = x.len().max(y.len());
    let zero = field.zero();
    let mut out: Vec<FieldElem> = (0..n)
        .map(|i| field.add(x.get(i).unwrap_or(&zero), y.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, &mut out);
    out
}

pub(crate) fn vec_mul(field: &FieldDesc, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        if field.is_zero(a) {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            let prod = field.mul(a, b);
            out[i + j] = field.add(&out[i + j], &prod);
        }
    }
    trim(field, &mut out);
    out
}

/// Remainder of `a` modulo the nonzero polynomial `m` (coefficient form).
pub(crate) fn vec_rem(field: &FieldDesc, mut a: Vec<FieldElem>, m: &[FieldElem]) -> Vec<FieldElem> {
    let dm = m.len() - 1;
    let lead_inv = field.inv(&m[dm]).expect("nonzero leading coefficient");
    while a.len() > dm {
        let top = a.len() - 1;
        let c = field.mul(&a[top], &lead_inv);
        let shift = top - dm;
        for (k, mk) in m.iter().enumerate() {
            let t = field.mul(&c, mk);
            a[shift + k] = field.sub(&a[shift + k], &t);
        }
        trim(field, &mut a);
    }
    a
}

impl Poly {
    pub fn new(field: &FieldDesc, mut coeffs: Vec<FieldElem>) -> Self {
        debug_assert!(coeffs.iter().all(|c| field.contains(c)));
        trim(field, &mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs(field: &FieldDesc, coeffs: Vec<FieldElem>) -> Self {
        Self::new(field, coeffs)
    }

    /// Integer coefficients, ascending, mapped into `field`.
    pub fn from_i64(field: &FieldDesc, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &FieldDesc) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldDesc) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &FieldDesc, c: FieldElem) -> Self {
        Self::new(field, vec![c])
    }

    /// c·t^n
    pub fn monomial(field: &FieldDesc, c: FieldElem, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    /// The variable t.
    pub fn var(field: &FieldDesc) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    /// t - a
    pub fn linear_root(field: &FieldDesc, a: &FieldElem) -> Self {
        Self::new(field, vec![field.neg(a), field.one()])
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.field.is_one(&self.leading())
    }

    fn check(&self, other: &Poly) -> Result<(), AlgebraError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check(other)?;
        Ok(Poly {
            field: self.field.clone(),
            coeffs: vec_add(&self.field, &self.coeffs, &other.coeffs),
        })
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check(other)?;
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check(other)?;
        Ok(Poly {
            field: self.field.clone(),
            coeffs: vec_mul(&self.field, &self.coeffs, &other.coeffs),
        })
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|x| self.field.mul(x, c)).collect(),
        )
    }

    /// Quotient and remainder: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        self.check(d)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZeroPoly);
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        let lead_inv = f.inv(&d.leading()).expect("nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let c = f.mul(&r[top], &lead_inv);
            let shift = top - dd;
            for (k, dk) in d.coeffs.iter().enumerate() {
                let t = f.mul(&c, dk);
                r[shift + k] = f.sub(&r[shift + k], &t);
            }
            q[shift] = c;
            trim(f, &mut r);
        }
        Ok((Poly::new(f, q), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly, AlgebraError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient when `d` is known to divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly, AlgebraError> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(AlgebraError::NotDivisible);
        }
        Ok(q)
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, a), c))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    /// self(g(t)).
    pub fn compose(&self, g: &Poly) -> Result<Poly, AlgebraError> {
        self.check(g)?;
        let f = &self.field;
        let mut acc = Poly::zero(f);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(f, c.clone());
        }
        Ok(acc)
    }

    /// self(t^k).
    pub fn inflate(&self, k: usize) -> Poly {
        let f = &self.field;
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![f.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly::new(f, coeffs)
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.leading()).expect("nonzero");
        self.scale(&inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g`.
    /// `g` is not normalized.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("same field");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    pub fn pow(&self, n: usize) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// self^e mod m.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Result<Poly, AlgebraError> {
        let base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        for i in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(m)?;
            if e.bit(i) {
                acc = (&acc * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Coefficients mapped into an extension of this polynomial's field.
    pub fn embed_into(&self, target: &FieldDesc) -> Result<Poly, AlgebraError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| target.embed(&self.field, c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(target, coeffs))
    }

    /// Text rendering with a chosen variable name, highest degree first.
    pub fn render_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let negative = f.is_negative_constant(c);
            let mag = if negative { f.neg(c) } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&f.render(&mag));
            } else if f.is_one_elem(&mag) {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", f.render(&mag)));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with("t"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) over {}", self, self.field)
    }
}

// Operator forms panic on field mismatch; the `Result` methods above are
// the checked entry points.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs).expect("polynomials over the same field")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs).expect("polynomials over the same field")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs).expect("polynomials over the same field")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDesc {
        FieldDesc::rationals()
    }

    #[test]
    fn derivative_kills_multiples_of_p() {
        for p in [2u64, 3, 5, 7] {
            let f = FieldDesc::prime(p).unwrap();
            let t = Poly::var(&f);
            let tp = t.pow(p as usize);
            assert!(tp.derivative().is_zero());
            let as_ = &tp - &t;
            assert_eq!(as_.derivative(), Poly::constant(&f, f.from_i64(-1)));
        }
    }

    #[test]
    fn divrem_by_linear() {
        let f = q();
        let a = Poly::from_i64(&f, &[2, -3, 0, 1]);
        let b = Poly::from_i64(&f, &[-1, 1]);
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(qq, Poly::from_i64(&f, &[-2, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(&(&qq * &b) + &r, a);
    }

    #[test]
    fn divrem_errors() {
        let f = q();
        let a = Poly::from_i64(&f, &[1, 1]);
        assert_eq!(
            a.div_rem(&Poly::zero(&f)).unwrap_err(),
            AlgebraError::DivisionByZeroPoly
        );
        let g = Poly::from_i64(&FieldDesc::prime(3).unwrap(), &[1, 1]);
        assert_eq!(a.div_rem(&g).unwrap_err(), AlgebraError::FieldMismatch);
        assert_eq!(a.add(&g).unwrap_err(), AlgebraError::FieldMismatch);
        assert_eq!(a.gcd(&g).unwrap_err(), AlgebraError::FieldMismatch);
    }

    #[test]
    fn gcd_examples() {
        let f = q();
        let a = Poly::from_i64(&f, &[-1, 0, 1]);
        let b = Poly::from_i64(&f, &[1, 2, 1]);
        assert_eq!(a.gcd(&b).unwrap(), Poly::from_i64(&f, &[1, 1]));
        let c = Poly::from_i64(&f, &[4, 0, 2]);
        assert_eq!(c.gcd(&Poly::zero(&f)).unwrap(), c.monic());
        for p in [2u64, 3, 5] {
            let fp = FieldDesc::prime(p).unwrap();
            let t = Poly::var(&fp);
            let tp = t.pow(p as usize);
            assert_eq!((&tp - &t).gcd(&tp).unwrap(), t);
        }
    }

    #[test]
    fn eval_and_compose() {
        let f = q();
        let a = Poly::from_i64(&f, &[1, 2, 3]);
        assert_eq!(a.eval(&f.from_i64(2)), f.from_i64(17));
        let g = Poly::from_i64(&f, &[1, 1]);
        // a(t+1) = 3t^2 + 8t + 6
        assert_eq!(a.compose(&g).unwrap(), Poly::from_i64(&f, &[6, 8, 3]));
    }

    #[test]
    fn rendering() {
        let f = q();
        assert_eq!(Poly::from_i64(&f, &[1, -2, 0, 0, 0, 1]).to_string(), "t^5 - 2*t + 1");
        assert_eq!(Poly::from_i64(&f, &[0, 0, -1]).to_string(), "-t^2");
        assert_eq!(Poly::zero(&f).to_string(), "0");
        let f5 = FieldDesc::prime(5).unwrap();
        assert_eq!(Poly::from_i64(&f5, &[-1, 0, 1]).to_string(), "t^2 + 4");
    }
}
