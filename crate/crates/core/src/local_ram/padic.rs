//! Finite-precision arithmetic in O_L = Z_p[π], π a root of an Eisenstein
//! polynomial g of degree e.
//!
//! Elements are coordinate vectors in the basis 1, π, …, π^(e-1) with
//! entries in Z/p^N. Since p = π^e·(unit), this ring is exactly
//! O_L / π^(eN), so ν_L is exact below eN.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::LocalError;

/// A p-adic integer known modulo p^precision.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PadicInt {
    p: u64,
    precision: u32,
    digits: BigInt,
}

impl PadicInt {
    pub fn new(p: u64, precision: u32, value: &BigInt) -> Self {
        let m = num_traits::pow(BigInt::from(p), precision as usize);
        PadicInt {
            p,
            precision,
            digits: value.mod_floor(&m),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Residue in [0, p^N).
    pub fn digits(&self) -> &BigInt {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_zero()
    }

    /// ν_p, or `None` when the value is 0 modulo p^N.
    pub fn valuation(&self) -> Option<u32> {
        valuation_p(&self.digits, self.p)
    }
}

fn valuation_p(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        y = q;
        v += 1;
    }
}

/// Totally ramified extension Q_p[x]/(g), g Eisenstein, at precision N.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalExt {
    p: u64,
    g: Vec<BigInt>,
    precision: u32,
    modulus: BigInt,
    /// π^e = Σ reduction[i] π^i
    reduction: Vec<BigInt>,
}

/// An element of O_L / p^N.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OLElem {
    coords: Vec<BigInt>,
}

impl fmt::Debug for OLElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OLElem{:?}", self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl OLElem {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl LocalExt {
    /// Validate `g` (ascending integer coefficients) as Eisenstein at p.
    pub fn new(p: u64, g: &[BigInt], precision: u32) -> Result<Self, LocalError> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(LocalError::BadPrime(p));
        }
        if precision < 2 {
            return Err(LocalError::PrecisionExhausted);
        }
        let mut g = g.to_vec();
        while g.last().is_some_and(|c| c.is_zero()) {
            g.pop();
        }
        let e = g.len().checked_sub(1).ok_or(LocalError::NotEisenstein)?;
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        let eisenstein = e >= 1
            && g[e].is_one()
            && g[..e].iter().all(|c| (c % &pb).is_zero())
            && !(&g[0] % &p2).is_zero();
        if !eisenstein {
            return Err(LocalError::NotEisenstein);
        }
        let modulus = num_traits::pow(pb, precision as usize);
        let reduction = g[..e].iter().map(|c| (-c).mod_floor(&modulus)).collect();
        Ok(LocalExt {
            p,
            g,
            precision,
            modulus,
            reduction,
        })
    }

    pub fn from_i64(p: u64, g: &[i64], precision: u32) -> Result<Self, LocalError> {
        let g: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
        Self::new(p, &g, precision)
    }

    /// Same extension at a different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self, LocalError> {
        Self::new(self.p, &self.g, precision)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Ramification index e = deg g.
    pub fn e(&self) -> usize {
        self.g.len() - 1
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Ascending integer coefficients of g.
    pub fn g(&self) -> &[BigInt] {
        &self.g
    }

    /// Valuations at or above this bound are invisible: eN.
    pub fn valuation_cap(&self) -> u64 {
        self.e() as u64 * self.precision as u64
    }

    pub fn zero(&self) -> OLElem {
        OLElem {
            coords: vec![BigInt::zero(); self.e()],
        }
    }

    pub fn from_int(&self, v: &BigInt) -> OLElem {
        let mut x = self.zero();
        x.coords[0] = v.mod_floor(&self.modulus);
        x
    }

    pub fn one(&self) -> OLElem {
        self.from_int(&BigInt::one())
    }

    /// The uniformizer π, class of x.
    pub fn pi(&self) -> OLElem {
        if self.e() == 1 {
            // g = x + g0, so π = -g0
            return self.from_int(&-&self.g[0]);
        }
        let mut x = self.zero();
        x.coords[1] = BigInt::one();
        x
    }

    /// π^k for k < e.
    pub fn pi_power(&self, k: usize) -> OLElem {
        let mut acc = self.one();
        let pi = self.pi();
        for _ in 0..k {
            acc = self.mul(&acc, &pi);
        }
        acc
    }

    pub fn coord(&self, x: &OLElem, i: usize) -> PadicInt {
        PadicInt::new(self.p, self.precision, &x.coords[i])
    }

    pub fn add(&self, a: &OLElem, b: &OLElem) -> OLElem {
        OLElem {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| (x + y).mod_floor(&self.modulus))
                .collect(),
        }
    }

    pub fn sub(&self, a: &OLElem, b: &OLElem) -> OLElem {
        OLElem {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| (x - y).mod_floor(&self.modulus))
                .collect(),
        }
    }

    pub fn neg(&self, a: &OLElem) -> OLElem {
        self.sub(&self.zero(), a)
    }

    pub fn scale(&self, a: &OLElem, k: &BigInt) -> OLElem {
        OLElem {
            coords: a.coords.iter().map(|x| (x * k).mod_floor(&self.modulus)).collect(),
        }
    }

    pub fn mul(&self, a: &OLElem, b: &OLElem) -> OLElem {
        let e = self.e();
        let mut prod = vec![BigInt::zero(); 2 * e - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c = std::mem::take(&mut prod[k]).mod_floor(&self.modulus);
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.reduction.iter().enumerate() {
                prod[k - e + i] += &c * r;
            }
        }
        prod.truncate(e);
        OLElem {
            coords: prod.into_iter().map(|c| c.mod_floor(&self.modulus)).collect(),
        }
    }

    /// ν_L, or `None` when the element is 0 in O_L / π^(eN).
    pub fn valuation(&self, x: &OLElem) -> Option<u64> {
        let e = self.e() as u64;
        x.coords
            .iter()
            .enumerate()
            .filter_map(|(i, c)| valuation_p(c, self.p).map(|v| e * v as u64 + i as u64))
            .min()
    }

    /// ν_L capped at eN.
    pub fn valuation_capped(&self, x: &OLElem) -> u64 {
        self.valuation(x).unwrap_or_else(|| self.valuation_cap())
    }

    /// Evaluate an integer polynomial (ascending) at x.
    pub fn eval_int_poly(&self, coeffs: &[BigInt], x: &OLElem) -> OLElem {
        coeffs.iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, x), &self.from_int(c))
        })
    }

    /// Evaluate a polynomial with O_L coefficients (ascending) at x.
    pub fn eval_poly(&self, coeffs: &[OLElem], x: &OLElem) -> OLElem {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// Rewrite x = Σ c_i π^i as the polynomial Σ c_i X^i over O_L.
    pub fn as_poly_in_pi(&self, x: &OLElem) -> Vec<OLElem> {
        x.coords.iter().map(|c| self.from_int(c)).collect()
    }

    pub fn g_at(&self, x: &OLElem) -> OLElem {
        self.eval_int_poly(&self.g, x)
    }

    pub fn g_prime_at(&self, x: &OLElem) -> OLElem {
        let d: Vec<BigInt> = self
            .g
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        self.eval_int_poly(&d, x)
    }

    /// Some z with w·z = b in O_L / p^N. The answer is unique up to
    /// elements annihilated by w, i.e. up to π^(eN - ν(w)).
    pub fn divide(&self, b: &OLElem, w: &OLElem) -> Result<OLElem, LocalError> {
        let e = self.e();
        // column j of the matrix is w·π^j
        let mut basis = self.one();
        let pi = self.pi();
        let mut cols = Vec::with_capacity(e);
        for _ in 0..e {
            cols.push(self.mul(w, &basis));
            basis = self.mul(&basis, &pi);
        }
        let mut m: Vec<Vec<BigInt>> = (0..e)
            .map(|r| (0..e).map(|c| cols[c].coords[r].clone()).collect())
            .collect();
        let mut rhs = b.coords.clone();
        let sol = solve_mod_prime_power(&mut m, &mut rhs, self.p, &self.modulus)
            .ok_or(LocalError::PrecisionExhausted)?;
        Ok(OLElem { coords: sol })
    }
}

/// Solve m·z = rhs over Z/p^N by full pivoting on p-adic valuation.
fn solve_mod_prime_power(
    m: &mut [Vec<BigInt>],
    rhs: &mut [BigInt],
    p: u64,
    modulus: &BigInt,
) -> Option<Vec<BigInt>> {
    let n = m.len();
    let pb = BigInt::from(p);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    for s in 0..n {
        let mut best: Option<(u32, usize, usize)> = None;
        for r in s..n {
            for c in s..n {
                if let Some(v) = valuation_p(&m[r][c], p) {
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                    }
                }
            }
        }
        let Some((v, r, c)) = best else { break };
        m.swap(s, r);
        rhs.swap(s, r);
        for row in m.iter_mut() {
            row.swap(s, c);
        }
        perm.swap(s, c);
        let pv = num_traits::pow(pb.clone(), v as usize);
        let unit = &m[s][s] / &pv;
        let unit_inv = mod_inverse(&unit, modulus)?;
        for r in (s + 1)..n {
            if m[r][s].is_zero() {
                continue;
            }
            let factor = (&m[r][s] / &pv * &unit_inv).mod_floor(modulus);
            for c in s..n {
                let t = &factor * &m[s][c];
                m[r][c] = (&m[r][c] - t).mod_floor(modulus);
            }
            let t = &factor * &rhs[s];
            rhs[r] = (&rhs[r] - t).mod_floor(modulus);
        }
        pivots.push((v, pv, unit_inv));
    }
    let rank = pivots.len();
    if rhs[rank..].iter().any(|b| !b.is_zero()) {
        return None;
    }
    let mut z = vec![BigInt::zero(); n];
    for s in (0..rank).rev() {
        let mut num = rhs[s].clone();
        for c in (s + 1)..n {
            num -= &m[s][c] * &z[c];
        }
        let num = num.mod_floor(modulus);
        let (_, pv, unit_inv) = &pivots[s];
        if !(&num % pv).is_zero() {
            return None;
        }
        z[s] = (num / pv * unit_inv).mod_floor(modulus);
    }
    let mut out = vec![BigInt::zero(); n];
    for (pos, &orig) in perm.iter().enumerate() {
        out[orig] = z[pos].clone();
    }
    Some(out)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let eg = a.extended_gcd(m);
    if !eg.gcd.abs().is_one() {
        return None;
    }
    Some((eg.x * eg.gcd.signum()).mod_floor(m))
}

impl fmt::Display for LocalExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .g
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "Q_{}[x]/({}) at precision {}", self.p, terms.join(" + "), self.precision)
    }
}
