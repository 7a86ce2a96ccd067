//! Squarefree decomposition, finite-field factorization (distinct-degree
//! followed by Cantor–Zassenhaus equal-degree splitting), Frobenius
//! decomposition and local valuations.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{FieldDesc, FieldElem};
use super::poly::Poly;
use super::AlgebraError;

/// Seed used by [`factor_fq`]; reports stay reproducible.
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

/// Squarefree decomposition of a nonzero polynomial.
///
/// Returns pairs `(part, multiplicity)` sorted by multiplicity, with the
/// parts monic, squarefree and pairwise coprime, such that the product of
/// `part^multiplicity` is `monic(f)`.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut acc: BTreeMap<usize, Poly> = BTreeMap::new();
    sqf_into(&f.monic(), 1, &mut acc)?;
    Ok(acc.into_iter().filter(|(_, g)| !g.is_one()).map(|(m, g)| (g, m)).collect())
}

fn sqf_into(f: &Poly, scale: usize, acc: &mut BTreeMap<usize, Poly>) -> Result<(), AlgebraError> {
    if f.is_constant() {
        return Ok(());
    }
    let field = f.field().clone();
    let fd = f.derivative();
    let mut c = f.gcd(&fd)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let part = w.div_exact(&y)?;
        if !part.is_one() {
            push_part(acc, i * scale, part);
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if !c.is_one() {
        // c is a polynomial in t^p
        let p = field.characteristic() as usize;
        debug_assert!(p > 0, "char 0 always exhausts the loop");
        let d = c.degree().unwrap();
        let root: Vec<FieldElem> = (0..=d / p).map(|k| field.pth_root(&c.coeff(k * p))).collect();
        sqf_into(&Poly::new(&field, root), scale * p, acc)?;
    }
    Ok(())
}

fn push_part(acc: &mut BTreeMap<usize, Poly>, m: usize, part: Poly) {
    let entry = acc.entry(m).or_insert_with(|| Poly::one(part.field()));
    *entry = &*entry * &part;
}

fn require_finite(f: &Poly) -> Result<BigUint, AlgebraError> {
    f.field().cardinality().ok_or(AlgebraError::CharZeroUnsupported)
}

/// Distinct-degree factorization of a monic squarefree polynomial.
/// Returns `(product of all irreducible factors of degree d, d)`.
fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>, AlgebraError> {
    let q = require_finite(f)?;
    let field = f.field().clone();
    let t = Poly::var(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.clone();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((rest.clone(), deg));
            }
            break;
        }
        d += 1;
        h = h.pow_mod(&q, &rest)?;
        let g = rest.gcd(&(&h - &t))?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    Ok(out)
}

/// Split a monic squarefree product of irreducibles of common degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>, AlgebraError> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let q = require_finite(f)?;
    let field = f.field().clone();
    let p = field.characteristic();
    loop {
        let a = Poly::new(&field, (0..n).map(|_| field.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let g0 = f.gcd(&a)?;
        let candidate = if !g0.is_one() {
            g0
        } else if p == 2 {
            // trace map a + a^2 + ... + a^(2^(kd-1))
            let k = field.absolute_degree() as usize * d;
            let mut term = a.clone();
            let mut tr = a.clone();
            for _ in 1..k {
                term = (&term * &term).rem(f)?;
                tr = &tr + &term;
            }
            f.gcd(&tr)?
        } else {
            let e = (num_traits::pow(q.clone(), d) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod(&e, f)?;
            f.gcd(&(&b - &Poly::one(&field)))?
        };
        let cd = candidate.degree().unwrap_or(0);
        if cd > 0 && cd < n {
            let other = f.div_exact(&candidate)?;
            let mut out = equal_degree(&candidate, d, rng)?;
            out.extend(equal_degree(&other, d, rng)?);
            return Ok(out);
        }
    }
}

/// Complete factorization over a finite field into monic irreducibles,
/// using [`DEFAULT_SEED`] for the randomized splitting.
pub fn factor_fq(f: &Poly) -> Result<Vec<(Poly, usize)>, AlgebraError> {
    factor_fq_seeded(f, DEFAULT_SEED)
}

/// Factorization with an explicit RNG seed. Output is sorted by
/// (degree, coefficients), so it does not depend on the seed.
pub fn factor_fq_seeded(f: &Poly, seed: u64) -> Result<Vec<(Poly, usize)>, AlgebraError> {
    require_finite(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, m) in squarefree_decomposition(f)? {
        for (g, d) in distinct_degree(&part)? {
            for h in equal_degree(&g, d, &mut rng)? {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

/// Rabin-style irreducibility test over a finite field.
pub fn is_irreducible(h: &Poly) -> Result<bool, AlgebraError> {
    let q = require_finite(h)?;
    let n = match h.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let h = h.monic();
    let t = Poly::var(h.field());
    let mut x = t.clone();
    for _ in 1..=n / 2 {
        x = x.pow_mod(&q, &h)?;
        if !h.gcd(&(&x - &t))?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Write `f(t) = f_sep(t^(p^m))` with `f_sep' != 0` and `m` maximal.
/// Over the rationals this is `(f, 0)`.
pub fn frobenius_decompose(f: &Poly) -> Result<(Poly, u32), AlgebraError> {
    if f.is_constant() {
        return Err(AlgebraError::ConstantPolynomial);
    }
    let p = f.field().characteristic() as usize;
    let mut g = f.clone();
    let mut m = 0;
    while g.derivative().is_zero() {
        let d = g.degree().unwrap();
        let coeffs = (0..=d / p).map(|k| g.coeff(k * p)).collect();
        g = Poly::new(f.field(), coeffs);
        m += 1;
    }
    Ok((g, m))
}

/// Exact power of `(t - a)` dividing `f`, where `a` lives in `a_field`,
/// an extension (possibly trivial) of `f`'s field.
pub fn local_valuation(f: &Poly, a_field: &FieldDesc, a: &FieldElem) -> Result<usize, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if !a_field.extends(f.field()) {
        return Err(AlgebraError::FieldMismatch);
    }
    let mut g = f.embed_into(a_field)?;
    let lin = Poly::linear_root(a_field, a);
    let mut v = 0;
    loop {
        let (q, r) = g.div_rem(&lin)?;
        if !r.is_zero() {
            return Ok(v);
        }
        v += 1;
        g = q;
    }
}
