//! Conjugates of π inside L by π-adic digit search and Newton lifting.

use num_bigint::BigInt;

use super::padic::{LocalExt, OLElem};
use super::pwl::Q;
use super::LocalError;

/// All e roots of g in O_L, the first being π itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjugates {
    pub roots: Vec<OLElem>,
    /// Leading π-adic digits c_0..c_d that isolate each root.
    pub digits: Vec<Vec<u64>>,
    /// Every root is correct modulo π^accuracy.
    pub accuracy: u64,
    /// ν_L(g'(π)), the valuation of the different.
    pub different: u64,
}

impl Conjugates {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// Find the e conjugates of π.
///
/// The search walks the π-adic digit tree. For a ball y + π^r·O_L, the
/// number of roots of g in it (over an algebraic closure) is the
/// Weierstrass degree of X ↦ g(y + π^r·X), read off the valuations of its
/// Taylor coefficients. Balls without roots are pruned. A ball holding a
/// single root is rational over L, so that root lies in L; once Hensel's
/// condition ν(g(y)) > 2ν(g'(y)) holds it is lifted by Newton's method.
/// Roots outside L show up as balls that lose their roots when refined.
pub fn conjugates(l: &LocalExt) -> Result<Conjugates, LocalError> {
    let e = l.e();
    let cap = l.valuation_cap();
    let pi = l.pi();
    let d = l.valuation(&l.g_prime_at(&pi)).ok_or(LocalError::PrecisionExhausted)?;
    if 2 * d + 2 >= cap {
        return Err(LocalError::PrecisionExhausted);
    }

    let mut found: Vec<(OLElem, Vec<u64>, u64)> = Vec::new();
    let mut nodes: Vec<(OLElem, Vec<u64>)> = vec![(l.zero(), Vec::new())];
    let mut pi_k = l.one();
    let mut k: u64 = 0;
    while !nodes.is_empty() {
        // children are balls of radius k + 1
        if (k + 2) * e as u64 >= cap {
            return Err(LocalError::PrecisionExhausted);
        }
        let mut next = Vec::new();
        for (y, digits) in &nodes {
            for c in 0..l.p() {
                let yc = l.add(y, &l.scale(&pi_k, &BigInt::from(c)));
                let w = roots_in_ball(l, &yc, k + 1);
                if w == 0 {
                    continue;
                }
                let mut ds = digits.clone();
                ds.push(c);
                if w == 1 {
                    let vg = l.valuation_capped(&l.g_at(&yc));
                    let vd = l.valuation_capped(&l.g_prime_at(&yc));
                    if vd < cap && vg > 2 * vd {
                        let (root, acc) = newton(l, yc, vd)?;
                        found.push((root, ds, acc));
                        continue;
                    }
                }
                next.push((yc, ds));
            }
        }
        if next.len() > e {
            return Err(LocalError::NotTotallySplit {
                found: found.len(),
                expected: e,
            });
        }
        nodes = next;
        pi_k = l.mul(&pi_k, &pi);
        k += 1;
    }

    if found.len() < e {
        return Err(LocalError::NotTotallySplit {
            found: found.len(),
            expected: e,
        });
    }
    let accuracy = found.iter().map(|(_, _, a)| *a).min().unwrap();
    if accuracy <= d {
        return Err(LocalError::PrecisionExhausted);
    }

    // Replace the lifted copy of π by π itself and put it first.
    let pos = found
        .iter()
        .position(|(r, _, _)| l.valuation_capped(&l.sub(r, &pi)) >= accuracy)
        .ok_or(LocalError::PrecisionExhausted)?;
    let (_, pi_digits, _) = found.remove(pos);
    found.sort_by(|a, b| a.1.cmp(&b.1));
    let mut roots = vec![pi];
    let mut digits = vec![pi_digits];
    for (r, ds, _) in found {
        roots.push(r);
        digits.push(ds);
    }
    Ok(Conjugates {
        roots,
        digits,
        accuracy,
        different: d,
    })
}

/// Number of roots of g, with multiplicity, in the ball y + π^r·O_L:
/// the largest j minimizing ν(g^(j)(y)/j!) + r·j. The caller keeps
/// r·e below the valuation cap, so the minimum is measured exactly.
fn roots_in_ball(l: &LocalExt, y: &OLElem, r: u64) -> usize {
    let g = l.g();
    let e = l.e();
    let mut powers = vec![l.one()];
    for _ in 1..=e {
        let next = l.mul(powers.last().unwrap(), y);
        powers.push(next);
    }
    let mut best = (u64::MAX, 0);
    for j in 0..=e {
        let mut t = l.zero();
        let mut binom = BigInt::from(1);
        for i in j..=e {
            if i > j {
                binom = binom * BigInt::from(i) / BigInt::from(i - j);
            }
            t = l.add(&t, &l.scale(&powers[i - j], &(&binom * &g[i])));
        }
        let v = l.valuation_capped(&t) + r * j as u64;
        if v <= best.0 {
            best = (v, j);
        }
    }
    best.1
}

/// Newton iteration from y, where ν(g(y)) > 2ν(g'(y)) = 2·vd. Returns the
/// root together with the π-adic accuracy it is known to.
fn newton(l: &LocalExt, mut y: OLElem, vd: u64) -> Result<(OLElem, u64), LocalError> {
    let cap = l.valuation_cap();
    let mut vg = l.valuation_capped(&l.g_at(&y));
    while vg < cap {
        let step = l.divide(&l.g_at(&y), &l.g_prime_at(&y))?;
        let y2 = l.sub(&y, &step);
        let vg2 = l.valuation_capped(&l.g_at(&y2));
        if vg2 <= vg {
            break;
        }
        y = y2;
        vg = vg2;
    }
    Ok((y, vg.min(cap) - vd))
}

/// i(σ_j) = ν_L(ξ_j − π) for each non-identity conjugate, in root order.
pub fn i_values(l: &LocalExt, roots: &Conjugates) -> Result<Vec<Q>, LocalError> {
    let pi = &roots.roots[0];
    roots.roots[1..]
        .iter()
        .map(|r| match l.valuation(&l.sub(r, pi)) {
            Some(v) if v < roots.accuracy => Ok(Q::from_integer(BigInt::from(v))),
            _ => Err(LocalError::PrecisionExhausted),
        })
        .collect()
}
