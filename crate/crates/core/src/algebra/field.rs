//! Exact fields: the rationals, prime fields and linear towers of finite
//! extensions over a prime field.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::poly::{self, Poly};
use super::AlgebraError;

/// Descriptor of an exact field.
///
/// Cloning is cheap; descriptors of extension levels share their base.
#[derive(Clone)]
pub struct FieldDesc(Arc<Kind>);

#[derive(PartialEq, Eq, Hash)]
enum Kind {
    Rational,
    Prime(u64),
    Extension {
        base: FieldDesc,
        modulus: Poly,
        /// Degree over the prime field.
        absolute_degree: u32,
    },
}

/// An element of some [`FieldDesc`].
///
/// Elements do not carry their field; every operation goes through the
/// descriptor that owns them. Extension elements are coefficient vectors
/// over the previous level with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElem {
    Rational(BigRational),
    Prime(u64),
    Ext(Vec<FieldElem>),
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => write!(f, "{q}"),
            FieldElem::Prime(v) => write!(f, "{v}"),
            FieldElem::Ext(cs) => {
                write!(f, "[")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for FieldDesc {}

impl Hash for FieldDesc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Kind::Rational => write!(f, "Q"),
            Kind::Prime(p) => write!(f, "F_{p}"),
            Kind::Extension { base, modulus, .. } => {
                write!(f, "{base}[s]/({})", modulus.render_with("s"))
            }
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl FieldDesc {
    /// The rational numbers.
    pub fn rationals() -> Self {
        FieldDesc(Arc::new(Kind::Rational))
    }

    /// The prime field F_p. Primes are limited to 32 bits.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p > u32::MAX as u64 || !is_prime_u64(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(FieldDesc(Arc::new(Kind::Prime(p))))
    }

    /// Adjoin a root of the monic irreducible `h` (a polynomial over `self`).
    pub fn extend(&self, h: &Poly) -> Result<Self, AlgebraError> {
        if self.characteristic() == 0 {
            return Err(AlgebraError::CharZeroUnsupported);
        }
        if h.field() != self {
            return Err(AlgebraError::FieldMismatch);
        }
        let deg = match h.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(AlgebraError::NotIrreducible),
        };
        if !self.is_one(&h.leading()) {
            return Err(AlgebraError::NotMonic);
        }
        if !super::factor::is_irreducible(h)? {
            return Err(AlgebraError::NotIrreducible);
        }
        let absolute_degree = self.absolute_degree() * deg as u32;
        Ok(FieldDesc(Arc::new(Kind::Extension {
            base: self.clone(),
            modulus: h.clone(),
            absolute_degree,
        })))
    }

    /// 0 for the rationals, otherwise the prime p.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Kind::Rational => 0,
            Kind::Prime(p) => *p,
            Kind::Extension { base, .. } => base.characteristic(),
        }
    }

    /// Degree over the prime field (1 for Q and F_p).
    pub fn absolute_degree(&self) -> u32 {
        match &*self.0 {
            Kind::Rational | Kind::Prime(_) => 1,
            Kind::Extension {
                absolute_degree, ..
            } => *absolute_degree,
        }
    }

    /// Number of elements, or `None` for the rationals.
    pub fn cardinality(&self) -> Option<BigUint> {
        match self.characteristic() {
            0 => None,
            p => Some(num_traits::pow(BigUint::from(p), self.absolute_degree() as usize)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Base of the top extension level, if any.
    pub fn base(&self) -> Option<&FieldDesc> {
        match &*self.0 {
            Kind::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Defining polynomial of the top extension level, if any.
    pub fn modulus(&self) -> Option<&Poly> {
        match &*self.0 {
            Kind::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    /// Defining polynomials from the prime field upwards.
    pub fn tower(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Kind::Extension { base, modulus, .. } = &*cur.0 {
            out.push(modulus.clone());
            cur = base;
        }
        out.reverse();
        out
    }

    /// True if `other` is a (not necessarily proper) prefix of this tower.
    pub fn extends(&self, other: &FieldDesc) -> bool {
        if self == other {
            return true;
        }
        match &*self.0 {
            Kind::Extension { base, .. } => base.extends(other),
            _ => false,
        }
    }

    pub fn zero(&self) -> FieldElem {
        match &*self.0 {
            Kind::Rational => FieldElem::Rational(BigRational::zero()),
            Kind::Prime(_) => FieldElem::Prime(0),
            Kind::Extension { .. } => FieldElem::Ext(Vec::new()),
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        match &*self.0 {
            Kind::Rational => FieldElem::Rational(BigRational::from_integer(v.clone())),
            Kind::Prime(p) => {
                let m = BigInt::from(*p);
                let r = ((v % &m) + &m) % &m;
                FieldElem::Prime(r.to_u64().expect("reduced residue fits"))
            }
            Kind::Extension { base, .. } => ext_from_coeffs(vec![base.from_bigint(v)], base),
        }
    }

    /// A rational constant; fails in positive characteristic when the
    /// denominator vanishes.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem, AlgebraError> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        self.div(&num, &den)
    }

    /// The class of the adjoined root at the top level.
    pub fn generator(&self) -> Option<FieldElem> {
        match &*self.0 {
            Kind::Extension { base, modulus, .. } => {
                if modulus.degree() == Some(1) {
                    // degree-1 level: the root is -h(0)
                    let c = base.neg(&modulus.coeff(0));
                    Some(ext_from_coeffs(vec![c], base))
                } else {
                    Some(FieldElem::Ext(vec![base.zero(), base.one()]))
                }
            }
            _ => None,
        }
    }

    /// Map an element of a prefix of this tower into this field.
    pub fn embed(&self, from: &FieldDesc, x: &FieldElem) -> Result<FieldElem, AlgebraError> {
        if self == from {
            return Ok(x.clone());
        }
        match &*self.0 {
            Kind::Extension { base, .. } => {
                let y = base.embed(from, x)?;
                Ok(ext_from_coeffs(vec![y], base))
            }
            _ => Err(AlgebraError::FieldMismatch),
        }
    }

    /// Structural check that `x` is a reduced element of this field.
    pub fn contains(&self, x: &FieldElem) -> bool {
        match (&*self.0, x) {
            (Kind::Rational, FieldElem::Rational(_)) => true,
            (Kind::Prime(p), FieldElem::Prime(v)) => v < p,
            (Kind::Extension { base, modulus, .. }, FieldElem::Ext(cs)) => {
                cs.len() < modulus.coeffs().len()
                    && cs.last().map_or(true, |c| !base.is_zero(c))
                    && cs.iter().all(|c| base.contains(c))
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, x: &FieldElem) -> bool {
        match x {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Prime(v) => *v == 0,
            FieldElem::Ext(cs) => cs.is_empty(),
        }
    }

    pub fn is_one(&self, x: &FieldElem) -> bool {
        *x == self.one()
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&*self.0, a, b) {
            (Kind::Rational, FieldElem::Rational(x), FieldElem::Rational(y)) => {
                FieldElem::Rational(x + y)
            }
            (Kind::Prime(p), FieldElem::Prime(x), FieldElem::Prime(y)) => {
                FieldElem::Prime(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (Kind::Extension { base, .. }, FieldElem::Ext(x), FieldElem::Ext(y)) => {
                FieldElem::Ext(poly::vec_add(base, x, y))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (&*self.0, a) {
            (Kind::Rational, FieldElem::Rational(x)) => FieldElem::Rational(-x),
            (Kind::Prime(p), FieldElem::Prime(x)) => FieldElem::Prime((p - x) % p),
            (Kind::Extension { base, .. }, FieldElem::Ext(x)) => {
                FieldElem::Ext(x.iter().map(|c| base.neg(c)).collect())
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (&*self.0, a, b) {
            (Kind::Rational, FieldElem::Rational(x), FieldElem::Rational(y)) => {
                FieldElem::Rational(x * y)
            }
            (Kind::Prime(p), FieldElem::Prime(x), FieldElem::Prime(y)) => {
                FieldElem::Prime(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (Kind::Extension { base, modulus, .. }, FieldElem::Ext(x), FieldElem::Ext(y)) => {
                let prod = poly::vec_mul(base, x, y);
                FieldElem::Ext(poly::vec_rem(base, prod, modulus.coeffs()))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        match (&*self.0, a) {
            (Kind::Rational, FieldElem::Rational(x)) => Some(FieldElem::Rational(x.recip())),
            (Kind::Prime(p), FieldElem::Prime(x)) => Some(FieldElem::Prime(mod_pow(*x, p - 2, *p))),
            (Kind::Extension { base, modulus, .. }, FieldElem::Ext(x)) => {
                let ax = Poly::from_coeffs(base, x.clone());
                let (g, s, _) = ax.ext_gcd(modulus);
                // modulus irreducible, so g is a nonzero constant
                let ginv = base.inv(&g.coeff(0))?;
                let r = s.scale(&ginv);
                Some(FieldElem::Ext(r.into_coeffs()))
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, AlgebraError> {
        let binv = self.inv(b).ok_or(AlgebraError::DivisionByZero)?;
        Ok(self.mul(a, &binv))
    }

    pub fn pow(&self, a: &FieldElem, e: &BigUint) -> FieldElem {
        let mut acc = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique p-th root in a finite field (a ↦ a^(q/p)); identity on Q.
    pub fn pth_root(&self, a: &FieldElem) -> FieldElem {
        match self.cardinality() {
            None => a.clone(),
            Some(q) => {
                let e = q / BigUint::from(self.characteristic());
                self.pow(a, &e)
            }
        }
    }

    /// Uniformly random element of a finite field; small integers for Q.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        match &*self.0 {
            Kind::Rational => FieldElem::Rational(BigRational::from_integer(BigInt::from(
                rng.gen_range(-20i64..=20),
            ))),
            Kind::Prime(p) => FieldElem::Prime(rng.gen_range(0..*p)),
            Kind::Extension { base, modulus, .. } => {
                let n = modulus.degree().unwrap_or(0);
                let cs = (0..n).map(|_| base.random(rng)).collect();
                ext_from_coeffs(cs, base)
            }
        }
    }

    /// Render an element in the text grammar when it is an integer-like
    /// constant, otherwise in bracketed coordinate form.
    pub fn render(&self, a: &FieldElem) -> String {
        a.to_string()
    }

    /// Integer value of a rational or prime-field element, if it has one.
    pub fn as_bigint(&self, a: &FieldElem) -> Option<BigInt> {
        match a {
            FieldElem::Rational(q) if q.is_integer() => Some(q.to_integer()),
            FieldElem::Prime(v) => Some(BigInt::from(*v)),
            FieldElem::Ext(cs) if cs.is_empty() => Some(BigInt::zero()),
            FieldElem::Ext(cs) if cs.len() == 1 => self.base()?.as_bigint(&cs[0]),
            _ => None,
        }
    }

    /// Sign-aware check used by the renderer.
    pub(crate) fn is_negative_constant(&self, a: &FieldElem) -> bool {
        matches!(a, FieldElem::Rational(q) if q.is_negative())
    }

    pub(crate) fn is_one_elem(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Prime(v) => *v == 1,
            FieldElem::Ext(cs) => cs.len() == 1 && self.base().is_some_and(|b| b.is_one_elem(&cs[0])),
        }
    }
}

fn ext_from_coeffs(mut cs: Vec<FieldElem>, base: &FieldDesc) -> FieldElem {
    while cs.last().is_some_and(|c| base.is_zero(c)) {
        cs.pop();
    }
    FieldElem::Ext(cs)
}
