//! Places of the projective line over a base field: monic irreducible
//! polynomials (Galois orbits of finite points) and the point at infinity.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{is_irreducible, FieldDesc, Poly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// The rational place t = a.
    pub fn rational(field: &FieldDesc, a: i64) -> Place {
        Place::Finite(Poly::linear_root(field, &field.from_i64(a)))
    }

    /// Number of geometric points in the orbit.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(h) => h.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Finite(h) => Some(h),
            Place::Infinity => None,
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Greater,
            (_, Place::Infinity) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev())),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(h) => write!(f, "{h}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Why a polynomial cannot serve as a place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaceDefect {
    WrongField,
    NotMonic,
    NotIrreducible,
    /// Over Q only places of degree at most 3 can be certified irreducible.
    Unverifiable,
}

/// Check that `h` is a monic irreducible polynomial over `field`.
pub fn check_place_poly(field: &FieldDesc, h: &Poly) -> Result<(), PlaceDefect> {
    if h.field() != field {
        return Err(PlaceDefect::WrongField);
    }
    if !h.is_monic() || h.degree() == Some(0) {
        return Err(PlaceDefect::NotMonic);
    }
    if field.is_finite() {
        return match is_irreducible(h) {
            Ok(true) => Ok(()),
            _ => Err(PlaceDefect::NotIrreducible),
        };
    }
    match h.degree() {
        Some(1) => Ok(()),
        Some(2 | 3) => {
            if rational_roots::has_rational_root(h) {
                Err(PlaceDefect::NotIrreducible)
            } else {
                Ok(())
            }
        }
        _ => Err(PlaceDefect::Unverifiable),
    }
}

mod rational_roots {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};

    use crate::algebra::{FieldElem, Poly};

    /// Rational root test on the integer-cleared polynomial.
    pub fn has_rational_root(h: &Poly) -> bool {
        let rats: Vec<BigRational> = h
            .coeffs()
            .iter()
            .map(|c| match c {
                FieldElem::Rational(q) => q.clone(),
                _ => unreachable!("rational coefficients"),
            })
            .collect();
        let lcm = rats
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = rats.iter().map(|q| (q * &lcm).to_integer()).collect();
        if ints[0].is_zero() {
            return true;
        }
        let lead = ints.last().unwrap().abs();
        let c0 = ints[0].abs();
        for num in divisors(&c0) {
            for den in divisors(&lead) {
                for sign in [1, -1] {
                    let x = BigRational::new(&num * sign, den.clone());
                    let val = ints
                        .iter()
                        .rev()
                        .fold(BigRational::zero(), |acc, c| acc * &x + BigRational::from_integer(c.clone()));
                    if val.is_zero() {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn divisors(n: &BigInt) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= *n {
            if (n % &d).is_zero() {
                out.push(d.clone());
                out.push(n / &d);
            }
            d += 1;
        }
        out
    }
}
