//! Symbolic Euler characteristics on the projective line.
//!
//! Values live in Z[u], where u stands for the unknown χ(P¹). Relations
//! forced by Fubini-type identities are collected in a [`ConstraintLedger`];
//! ideal membership in Z[u] is witnessed by a [`Certificate`].

mod expr;
mod lattice;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

pub use expr::ChiExpr;
pub use lattice::solve_integer;

use crate::algebra::{FieldDesc, Poly};
use crate::curve_ram;
use crate::place::{check_place_poly, Place, PlaceDefect};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChiError {
    #[error("subsets live on different ambient lines")]
    AmbientMismatch,
    #[error("invalid place {place}: {reason:?}")]
    InvalidPlace { place: String, reason: PlaceDefect },
    #[error("duplicate place {0}")]
    DuplicatePlace(String),
    #[error("constraint is zero")]
    ZeroConstraint,
    #[error("no certificate with multipliers of degree <= {0}")]
    NotFound(usize),
    #[error("p = {0} must be a prime greater than 2")]
    BadPrime(u64),
    #[error("certificate does not expand to its target")]
    BrokenCertificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Finite,
    Cofinite,
}

/// A constructible subset of P¹ over a base field: either a finite set of
/// places, or the complement of one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructibleSubset {
    field: FieldDesc,
    mode: Mode,
    places: BTreeSet<Place>,
}

impl ConstructibleSubset {
    pub fn new(field: &FieldDesc, mode: Mode, places: Vec<Place>) -> Result<Self, ChiError> {
        let mut set = BTreeSet::new();
        for pl in places {
            if let Place::Finite(h) = &pl {
                check_place_poly(field, h).map_err(|reason| ChiError::InvalidPlace {
                    place: pl.to_string(),
                    reason,
                })?;
            }
            let label = pl.to_string();
            if !set.insert(pl) {
                return Err(ChiError::DuplicatePlace(label));
            }
        }
        Ok(ConstructibleSubset {
            field: field.clone(),
            mode,
            places: set,
        })
    }

    pub fn finite(field: &FieldDesc, places: Vec<Place>) -> Result<Self, ChiError> {
        Self::new(field, Mode::Finite, places)
    }

    pub fn cofinite(field: &FieldDesc, missing: Vec<Place>) -> Result<Self, ChiError> {
        Self::new(field, Mode::Cofinite, missing)
    }

    pub fn empty(field: &FieldDesc) -> Self {
        Self::from_parts(field, Mode::Finite, BTreeSet::new())
    }

    pub fn projective_line(field: &FieldDesc) -> Self {
        Self::from_parts(field, Mode::Cofinite, BTreeSet::new())
    }

    /// P¹ minus the point at infinity.
    pub fn affine_line(field: &FieldDesc) -> Self {
        Self::from_parts(field, Mode::Cofinite, [Place::Infinity].into())
    }

    fn from_parts(field: &FieldDesc, mode: Mode, places: BTreeSet<Place>) -> Self {
        ConstructibleSubset {
            field: field.clone(),
            mode,
            places,
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn places(&self) -> impl Iterator<Item = &Place> {
        self.places.iter()
    }

    pub fn contains(&self, pl: &Place) -> bool {
        match self.mode {
            Mode::Finite => self.places.contains(pl),
            Mode::Cofinite => !self.places.contains(pl),
        }
    }

    pub fn complement(&self) -> Self {
        let mode = match self.mode {
            Mode::Finite => Mode::Cofinite,
            Mode::Cofinite => Mode::Finite,
        };
        Self::from_parts(&self.field, mode, self.places.clone())
    }

    fn check(&self, other: &Self) -> Result<(), ChiError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ChiError::AmbientMismatch)
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self, ChiError> {
        self.check(other)?;
        use Mode::*;
        let (mode, places) = match (self.mode, other.mode) {
            (Finite, Finite) => (Finite, &self.places | &other.places),
            (Cofinite, Cofinite) => (Cofinite, &self.places & &other.places),
            (Finite, Cofinite) => (Cofinite, &other.places - &self.places),
            (Cofinite, Finite) => (Cofinite, &self.places - &other.places),
        };
        Ok(Self::from_parts(&self.field, mode, places))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, ChiError> {
        self.check(other)?;
        use Mode::*;
        let (mode, places) = match (self.mode, other.mode) {
            (Finite, Finite) => (Finite, &self.places & &other.places),
            (Cofinite, Cofinite) => (Cofinite, &self.places | &other.places),
            (Finite, Cofinite) => (Finite, &self.places - &other.places),
            (Cofinite, Finite) => (Finite, &other.places - &self.places),
        };
        Ok(Self::from_parts(&self.field, mode, places))
    }

    pub fn difference(&self, other: &Self) -> Result<Self, ChiError> {
        self.check(other)?;
        self.intersection(&other.complement())
    }
}

impl fmt::Display for ConstructibleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.places.iter().map(|p| p.to_string()).collect();
        match self.mode {
            Mode::Finite => write!(f, "{{{}}}", list.join(", ")),
            Mode::Cofinite => write!(f, "P1 \\ {{{}}}", list.join(", ")),
        }
    }
}

/// χ of a constructible subset, counting geometric points by place degree.
pub fn chi_of(a: &ConstructibleSubset) -> ChiExpr {
    let n: usize = a.places.iter().map(Place::degree).sum();
    match a.mode {
        Mode::Finite => ChiExpr::constant(n as i64),
        Mode::Cofinite => ChiExpr::u_minus(n as i64),
    }
}

/// Generators of an ideal of Z[u], each tagged with where it came from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintLedger {
    generators: Vec<(ChiExpr, String)>,
}

impl ConstraintLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generators(&self) -> &[(ChiExpr, String)] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Record the relation `c = 0`. Generators are stored with positive
    /// leading coefficient; exact duplicates are dropped.
    pub fn add(&self, c: &ChiExpr, provenance: &str) -> Result<Self, ChiError> {
        if c.is_zero() {
            return Err(ChiError::ZeroConstraint);
        }
        let c = c.normalized_sign();
        let mut out = self.clone();
        if !out.generators.iter().any(|(g, _)| *g == c) {
            out.generators.push((c, provenance.to_string()));
        }
        Ok(out)
    }
}

/// Witness that `target = Σ multiplier_i · generator_i` in Z[u].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub generators: Vec<(ChiExpr, String)>,
    pub multipliers: Vec<ChiExpr>,
    pub target: ChiExpr,
}

impl Certificate {
    /// Σ multiplier_i · generator_i, expanded.
    pub fn expand(&self) -> ChiExpr {
        self.generators
            .iter()
            .zip(&self.multipliers)
            .fold(ChiExpr::zero(), |acc, ((g, _), m)| &acc + &(m * g))
    }

    pub fn verify(&self) -> bool {
        self.generators.len() == self.multipliers.len() && self.expand() == self.target
    }

    /// One-line identity, e.g. `2 = 1·[2(u - 1)] - 2·[4(u - 2)] + 2·[3(u - 2)]`.
    pub fn identity_line(&self) -> String {
        let mut out = format!("{} =", self.target);
        let mut first = true;
        for ((g, _), m) in self.generators.iter().zip(&self.multipliers) {
            if m.is_zero() {
                continue;
            }
            let (neg, mag) = match m.as_constant() {
                Some(c) if c < BigInt::zero() => (true, ChiExpr::constant(-c)),
                _ => (false, m.clone()),
            };
            let sep = match (first, neg) {
                (true, false) => " ",
                (true, true) => " -",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            first = false;
            let mag_s = if mag.degree().unwrap_or(0) > 0 {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            out.push_str(&format!("{sep}{mag_s}·[{}]", g.render_factored()));
        }
        if first {
            out.push_str(" 0");
        }
        out
    }

    /// Structured text: one line per generator, then the expansion.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (i, ((g, prov), m)) in self.generators.iter().zip(&self.multipliers).enumerate() {
            out.push_str(&format!(
                "generator {i}: {}  multiplier: {m}  from: {prov}\n",
                g.render_factored()
            ));
        }
        out.push_str(&format!("expansion: {}\n", self.expand()));
        out.push_str(&format!("target: {}\n", self.target));
        out.push_str(&format!("identity: {}\n", self.identity_line()));
        out
    }
}

/// Search for integer multipliers of degree at most `degree_bound`
/// expressing `target` in the ideal generated by the ledger.
///
/// `NotFound` only means no certificate exists within the bound.
pub fn certify_membership(
    ledger: &ConstraintLedger,
    target: &ChiExpr,
    degree_bound: usize,
) -> Result<Certificate, ChiError> {
    let gens = ledger.generators();
    let width = degree_bound + 1;
    let max_gen = gens.iter().filter_map(|(g, _)| g.degree()).max().unwrap_or(0);
    let rows = (max_gen + width).max(target.degree().map_or(0, |d| d + 1));
    let cols = gens.len() * width;
    // column (i, k) holds the coefficients of u^k · g_i
    let mut a = vec![vec![BigInt::zero(); cols]; rows];
    for (i, (g, _)) in gens.iter().enumerate() {
        for k in 0..width {
            for (d, c) in g.coeffs().iter().enumerate() {
                a[d + k][i * width + k] = c.clone();
            }
        }
    }
    let b: Vec<BigInt> = (0..rows).map(|r| target.coeff(r)).collect();
    let x = solve_integer(&a, &b).ok_or(ChiError::NotFound(degree_bound))?;
    let multipliers = (0..gens.len())
        .map(|i| ChiExpr::new(x[i * width..(i + 1) * width].to_vec()))
        .collect();
    let cert = Certificate {
        generators: gens.to_vec(),
        multipliers,
        target: target.clone(),
    };
    if !cert.verify() {
        return Err(ChiError::BrokenCertificate);
    }
    Ok(cert)
}

/// Default degree bound for [`certify_membership`].
pub const DEFAULT_DEGREE_BOUND: usize = 2;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Ledger of Fubini constraints for t^p - t, t^(p+2) and t^(p+1) over F_p.
pub fn contradiction_ledger(p: u64) -> Result<ConstraintLedger, ChiError> {
    if p <= 2 || !is_prime(p) {
        return Err(ChiError::BadPrime(p));
    }
    let field = FieldDesc::prime(p).map_err(|_| ChiError::BadPrime(p))?;
    let t = Poly::var(&field);
    let pu = p as usize;
    let maps = [
        (format!("t^{p} - t"), &t.pow(pu) - &t),
        (format!("t^{}", p + 2), t.pow(pu + 2)),
        (format!("t^{}", p + 1), t.pow(pu + 1)),
    ];
    let mut ledger = ConstraintLedger::new();
    for (label, f) in maps {
        let report = curve_ram::ramification_report(&f).expect("nonconstant map");
        let c = curve_ram::fubini_constraint(&report);
        ledger = ledger.add(&c, &format!("Fubini for {label} over F_{p}"))?;
    }
    Ok(ledger)
}

/// Certificate that Fubini for the three maps of [`contradiction_ledger`]
/// forces the constant p - 1 into the ideal of relations.
///
/// With generators g1 = (p-1)(u-1), g2 = (p+1)(u-2), g3 = p(u-2) the
/// multipliers are (1, -(p-1), p-1): g2 - g3 = u - 2 and
/// g1 - (p-1)(u-2) = p - 1.
pub fn contradiction_certificate(p: u64) -> Result<Certificate, ChiError> {
    let ledger = contradiction_ledger(p)?;
    let target = ChiExpr::constant(p as i64 - 1);
    let pm1 = BigInt::from(p - 1);
    let expected = [
        ChiExpr::u_minus(1).scale(&pm1),
        ChiExpr::u_minus(2).scale(&BigInt::from(p + 1)),
        ChiExpr::u_minus(2).scale(&BigInt::from(p)),
    ];
    let shaped = ledger.len() == 3
        && ledger
            .generators()
            .iter()
            .zip(&expected)
            .all(|((g, _), e)| g == e);
    let cert = if shaped {
        Certificate {
            generators: ledger.generators().to_vec(),
            multipliers: vec![
                ChiExpr::constant(1),
                ChiExpr::constant(-pm1.clone()),
                ChiExpr::constant(pm1),
            ],
            target,
        }
    } else {
        certify_membership(&ledger, &target, DEFAULT_DEGREE_BOUND)?
    };
    if !cert.verify() {
        return Err(ChiError::BrokenCertificate);
    }
    Ok(cert)
}

/// Value of χ under the specialization u ↦ `u`, as a machine integer.
pub fn specialize(c: &ChiExpr, u: i64) -> Option<i64> {
    c.eval(&BigInt::from(u)).to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldDesc {
        FieldDesc::prime(3).unwrap()
    }

    #[test]
    fn chi_examples() {
        let f = f3();
        let three = ConstructibleSubset::cofinite(
            &f,
            vec![Place::rational(&f, 0), Place::rational(&f, 1), Place::rational(&f, 2)],
        )
        .unwrap();
        assert_eq!(chi_of(&three), ChiExpr::u_minus(3));
        let a1 = ConstructibleSubset::affine_line(&f);
        assert_eq!(chi_of(&a1), ChiExpr::u_minus(1));
        assert_eq!(specialize(&chi_of(&a1), 2), Some(1));
        let quad = ConstructibleSubset::finite(
            &f,
            vec![Place::Finite(Poly::from_i64(&f, &[1, 0, 1]))],
        )
        .unwrap();
        assert_eq!(chi_of(&quad), ChiExpr::constant(2));
    }

    #[test]
    fn set_op_examples() {
        let f = f3();
        let zero = Place::rational(&f, 0);
        let one = Place::rational(&f, 1);
        let a = ConstructibleSubset::cofinite(&f, vec![zero.clone()]).unwrap();
        let b = ConstructibleSubset::finite(&f, vec![zero.clone()]).unwrap();
        assert_eq!(a.union(&b).unwrap(), ConstructibleSubset::projective_line(&f));

        let single = ConstructibleSubset::finite(&f, vec![one.clone()]).unwrap();
        let without = ConstructibleSubset::cofinite(&f, vec![one.clone()]).unwrap();
        assert_eq!(single.intersection(&without).unwrap(), ConstructibleSubset::empty(&f));

        let c = ConstructibleSubset::cofinite(&f, vec![zero.clone(), Place::Infinity]).unwrap();
        let d = c.difference(&single).unwrap();
        assert_eq!(
            d,
            ConstructibleSubset::cofinite(&f, vec![zero, one, Place::Infinity]).unwrap()
        );
        assert_eq!(chi_of(&d), ChiExpr::u_minus(3));
    }

    #[test]
    fn set_op_errors() {
        let f = f3();
        let g = FieldDesc::prime(5).unwrap();
        let a = ConstructibleSubset::empty(&f);
        let b = ConstructibleSubset::empty(&g);
        assert_eq!(a.union(&b).unwrap_err(), ChiError::AmbientMismatch);
        let dup = ConstructibleSubset::finite(&f, vec![Place::Infinity, Place::Infinity]);
        assert!(matches!(dup, Err(ChiError::DuplicatePlace(_))));
        let red = ConstructibleSubset::finite(&f, vec![Place::Finite(Poly::from_i64(&f, &[2, 0, 1]))]);
        assert!(matches!(red, Err(ChiError::InvalidPlace { .. })));
    }

    #[test]
    fn ledger_examples() {
        let l = ConstraintLedger::new();
        let tame = ChiExpr::u_minus(2).scale(&BigInt::from(4));
        let l = l.add(&tame, "t^5").unwrap();
        let l = l.add(&ChiExpr::u_minus(1).scale(&BigInt::from(2)), "t^3 - t").unwrap();
        assert_eq!(l.len(), 2);
        let l2 = l.add(&tame, "again").unwrap();
        assert_eq!(l2, l);
        // negated constraint is the same relation
        assert_eq!(l.add(&-&tame, "neg").unwrap(), l);
        assert_eq!(l.add(&ChiExpr::zero(), "zero").unwrap_err(), ChiError::ZeroConstraint);
    }

    #[test]
    fn membership_examples() {
        let l = ConstraintLedger::new().add(&ChiExpr::u_minus(2), "g").unwrap();
        let target = ChiExpr::u_minus(2).scale(&BigInt::from(5));
        let c = certify_membership(&l, &target, 2).unwrap();
        assert_eq!(c.multipliers, vec![ChiExpr::constant(5)]);

        let mut l = ConstraintLedger::new();
        for (k, c) in [(3, 2), (4, 2), (2, 1)] {
            l = l.add(&ChiExpr::u_minus(c).scale(&BigInt::from(k)), "g").unwrap();
        }
        let c = certify_membership(&l, &ChiExpr::constant(2), 2).unwrap();
        assert!(c.verify());
        assert_eq!(c.expand(), ChiExpr::constant(2));

        for p in [3i64, 5, 7] {
            let l = ConstraintLedger::new()
                .add(&ChiExpr::u_minus(2).scale(&BigInt::from(p)), "g")
                .unwrap();
            assert_eq!(
                certify_membership(&l, &ChiExpr::constant(1), 2).unwrap_err(),
                ChiError::NotFound(2)
            );
        }
    }

    #[test]
    fn contradiction_small_primes() {
        let c = contradiction_certificate(3).unwrap();
        let gens: Vec<_> = c.generators.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(
            gens,
            vec![
                ChiExpr::from_i64(&[-2, 2]),
                ChiExpr::from_i64(&[-8, 4]),
                ChiExpr::from_i64(&[-6, 3])
            ]
        );
        assert_eq!(
            c.multipliers,
            vec![ChiExpr::constant(1), ChiExpr::constant(-2), ChiExpr::constant(2)]
        );
        assert_eq!(c.identity_line(), "2 = 1·[2(u - 1)] - 2·[4(u - 2)] + 2·[3(u - 2)]");
        let c5 = contradiction_certificate(5).unwrap();
        assert_eq!(c5.expand(), ChiExpr::constant(4));
        assert_eq!(contradiction_certificate(2).unwrap_err(), ChiError::BadPrime(2));
        assert_eq!(contradiction_certificate(9).unwrap_err(), ChiError::BadPrime(9));
    }
}
