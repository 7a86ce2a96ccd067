//! Ramification of the map P¹ → P¹, t ↦ f(t), for a polynomial f over Q
//! or a finite field.
//!
//! At a finite place with root a the ramification degree is
//! e_a = ν_{t-a}(f(t) - f(a)) and the Riemann–Hurwitz degree is
//! ẽ_a = 1 + ν_{t-a}(f'(t)). At infinity e_∞ = deg f and
//! ẽ_∞ = deg f + (deg f - deg f' - 1). All of this is applied to the
//! separable part of f.

use num_integer::Integer;
use thiserror::Error;

use crate::algebra::{
    factor_fq_seeded, frobenius_decompose, local_valuation, squarefree_decomposition, AlgebraError,
    DEFAULT_SEED,
    FieldDesc, Poly,
};
use crate::chi_ring::ChiExpr;
use crate::place::Place;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("map is constant")]
    ConstantPolynomial,
    #[error("cover degree {n} is divisible by the characteristic")]
    WildCover { n: u64 },
    #[error("branch polynomial is not squarefree")]
    NotSquarefree,
    #[error("cover degree must be at least 2")]
    BadDegree,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Ramification record at one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamPoint {
    pub place: Place,
    /// Number of geometric points in the place.
    pub place_degree: usize,
    pub e: usize,
    pub e_tilde: usize,
    pub different: usize,
    pub defect: usize,
    pub tame: bool,
}

impl RamPoint {
    fn new(place: Place, place_degree: usize, e: usize, e_tilde: usize) -> Self {
        debug_assert!(e >= 1 && e_tilde >= e);
        let defect = e_tilde - e;
        RamPoint {
            place,
            place_degree,
            e,
            e_tilde,
            different: e_tilde - 1,
            defect,
            tame: defect == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamReport {
    pub f: Poly,
    pub f_sep: Poly,
    /// m with f = f_sep(t^(p^m)).
    pub insep_exponent: u32,
    pub deg_sep: usize,
    pub points: Vec<RamPoint>,
    pub total_defect: usize,
    pub rh_sum: usize,
}

impl RamReport {
    pub fn characteristic(&self) -> u64 {
        self.f.field().characteristic()
    }

    pub fn infinity(&self) -> &RamPoint {
        self.points.last().expect("infinity is always reported")
    }

    pub fn affine_points(&self) -> &[RamPoint] {
        &self.points[..self.points.len() - 1]
    }
}

/// Affine ramification over a finite field: one point per irreducible
/// factor h of f', computed at the class of s in F_q[s]/(h).
fn affine_points_fq(fs: &Poly, fd: &Poly, seed: u64) -> Result<Vec<RamPoint>, CurveError> {
    let base = fs.field();
    let mut out = Vec::new();
    for (h, _mult) in factor_fq_seeded(fd, seed)? {
        let deg = h.degree().unwrap();
        let (ext, a) = if deg == 1 {
            (base.clone(), base.neg(&h.coeff(0)))
        } else {
            let ext = base.extend(&h)?;
            let a = ext.generator().expect("extension has a generator");
            (ext, a)
        };
        let fs_ext = fs.embed_into(&ext)?;
        let shifted = &fs_ext - &Poly::constant(&ext, fs_ext.eval(&a));
        let e = local_valuation(&shifted, &ext, &a)?;
        let e_tilde = 1 + local_valuation(fd, &ext, &a)?;
        out.push(RamPoint::new(Place::Finite(h), deg, e, e_tilde));
    }
    Ok(out)
}

/// Affine ramification over Q without factoring: loci are squarefree
/// pieces of f' on which both the order of vanishing of f' and the first
/// nonvanishing higher derivative of f are constant.
fn affine_points_q(fs: &Poly, fd: &Poly) -> Result<Vec<RamPoint>, CurveError> {
    let deg = fs.degree().unwrap();
    let derivs: Vec<Poly> = std::iter::successors(Some(fd.clone()), |d| Some(d.derivative()))
        .take(deg)
        .collect();
    let mut out = Vec::new();
    for (h, mult) in squarefree_decomposition(fd)? {
        // (piece, j): f^(1..j) vanish on the piece, f^(j) not yet tested
        let mut work = vec![(h, 1usize)];
        while let Some((piece, j)) = work.pop() {
            let g = piece.gcd(&derivs[j - 1])?;
            if g.is_one() {
                let d = piece.degree().unwrap();
                out.push(RamPoint::new(Place::Finite(piece), d, j, 1 + mult));
            } else if g == piece {
                work.push((piece, j + 1));
            } else {
                let rest = piece.div_exact(&g)?;
                work.push((rest, j));
                work.push((g, j + 1));
            }
        }
    }
    Ok(out)
}

/// Ramification data of t ↦ f(t) on P¹, computed on the separable part.
pub fn ramification_report(f: &Poly) -> Result<RamReport, CurveError> {
    ramification_report_seeded(f, DEFAULT_SEED)
}

/// As [`ramification_report`], with an explicit seed for the randomized
/// factorization. The result does not depend on the seed.
pub fn ramification_report_seeded(f: &Poly, seed: u64) -> Result<RamReport, CurveError> {
    let (fs, m) = frobenius_decompose(f).map_err(|e| match e {
        AlgebraError::ConstantPolynomial => CurveError::ConstantPolynomial,
        other => CurveError::Algebra(other),
    })?;
    let field: &FieldDesc = fs.field();
    let deg = fs.degree().unwrap();
    let fd = fs.derivative();
    let deg_fd = fd.degree().expect("separable part has nonzero derivative");

    let mut points = if fd.is_constant() {
        Vec::new()
    } else if field.is_finite() {
        affine_points_fq(&fs, &fd, seed)?
    } else {
        affine_points_q(&fs, &fd)?
    };
    points.sort_by(|a, b| a.place.cmp(&b.place));
    points.push(RamPoint::new(Place::Infinity, 1, deg, deg + (deg - deg_fd - 1)));

    let total_defect = points.iter().map(|p| p.place_degree * p.defect).sum();
    let rh_sum = points.iter().map(|p| p.place_degree * p.different).sum();
    Ok(RamReport {
        f: f.clone(),
        f_sep: fs,
        insep_exponent: m,
        deg_sep: deg,
        points,
        total_defect,
        rh_sum,
    })
}

/// χ(P¹) - (χ(P¹)·deg - Σ deg(x)(e_x - 1)) in Z[u]; Fubini holds for the
/// map in a ring R iff this vanishes there.
pub fn fubini_constraint(r: &RamReport) -> ChiExpr {
    let ram: usize = r.points.iter().map(|p| p.place_degree * (p.e - 1)).sum();
    ChiExpr::from_i64(&[ram as i64, 1 - r.deg_sep as i64])
}

/// Σ deg(x)·(ẽ_x - e_x): the wild part of the ramification.
pub fn fubini_defect(r: &RamReport) -> usize {
    r.points.iter().map(|p| p.place_degree * p.defect).sum()
}

/// Riemann–Hurwitz for P¹ → P¹: Σ deg(x)(ẽ_x - 1) = 2 deg - 2.
pub fn rh_check(r: &RamReport) -> bool {
    r.rh_sum + 2 == 2 * r.deg_sep
}

/// Genus and Euler characteristic of the smooth model of y^n = g(x).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuperellipticGenus {
    pub genus: u64,
    pub chi: i64,
}

/// Tame Riemann–Hurwitz on the x-projection of y^n = g(x): every root of
/// g is totally ramified, and over ∞ there are gcd(n, deg g) points.
pub fn superelliptic_genus(n: u64, g: &Poly) -> Result<SuperellipticGenus, CurveError> {
    if n < 2 {
        return Err(CurveError::BadDegree);
    }
    let ch = g.field().characteristic();
    if ch != 0 && n % ch == 0 {
        return Err(CurveError::WildCover { n });
    }
    let d = match g.degree() {
        Some(d) if d >= 1 => d as i64,
        _ => return Err(CurveError::ConstantPolynomial),
    };
    let parts = squarefree_decomposition(g)?;
    if parts.len() != 1 || parts[0].1 != 1 {
        return Err(CurveError::NotSquarefree);
    }
    let n = n as i64;
    let c = n.gcd(&d);
    let ramification = d * (n - 1) + c * (n / c - 1);
    let chi = 2 * n - ramification;
    debug_assert!(chi % 2 == 0 && chi <= 2);
    Ok(SuperellipticGenus {
        genus: ((2 - chi) / 2) as u64,
        chi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    #[test]
    fn power_map_is_tame() {
        for p in [3u64, 5, 7] {
            let f = fp(p);
            for m in 2..=10usize {
                if m as u64 % p == 0 {
                    continue;
                }
                let r = ramification_report(&Poly::var(&f).pow(m)).unwrap();
                assert_eq!(r.points.len(), 2);
                let zero = &r.points[0];
                assert_eq!(zero.place, Place::rational(&f, 0));
                assert_eq!((zero.e, zero.e_tilde, zero.tame), (m, m, true));
                let inf = r.infinity();
                assert_eq!((inf.e, inf.e_tilde, inf.tame), (m, m, true));
                assert_eq!(r.total_defect, 0);
                assert!(rh_check(&r));
                let expected = &ChiExpr::u_minus(2).scale(&(m as i64 - 1).into()) * &ChiExpr::constant(-1);
                assert_eq!(fubini_constraint(&r), expected);
            }
        }
    }

    #[test]
    fn artin_schreier_is_wild_at_infinity() {
        for p in [2u64, 3, 5, 7] {
            let f = fp(p);
            let t = Poly::var(&f);
            let pu = p as usize;
            let r = ramification_report(&(&t.pow(pu) - &t)).unwrap();
            assert_eq!(r.points.len(), 1);
            let inf = r.infinity();
            assert_eq!((inf.e, inf.e_tilde, inf.defect), (pu, 2 * pu - 1, pu - 1));
            assert!(!inf.tame);
            assert_eq!(fubini_defect(&r), pu - 1);
            assert!(rh_check(&r));
            let expected = &ChiExpr::u_minus(1).scale(&(p as i64 - 1).into()) * &ChiExpr::constant(-1);
            assert_eq!(fubini_constraint(&r), expected);
        }
    }

    #[test]
    fn purely_inseparable_has_no_constraint() {
        for p in [2u64, 3, 5] {
            let f = fp(p);
            let r = ramification_report(&Poly::var(&f).pow(p as usize)).unwrap();
            assert_eq!(r.insep_exponent, 1);
            assert_eq!(r.deg_sep, 1);
            assert!(fubini_constraint(&r).is_zero());
        }
    }

    #[test]
    fn cubic_over_rationals() {
        let q = FieldDesc::rationals();
        let r = ramification_report(&Poly::from_i64(&q, &[0, -3, 0, 1])).unwrap();
        // f' = 3(t^2 - 1): one squarefree locus of degree 2 with e = 2
        let affine = r.affine_points();
        assert_eq!(affine.len(), 1);
        assert_eq!(affine[0].place, Place::Finite(Poly::from_i64(&q, &[-1, 0, 1])));
        assert_eq!((affine[0].place_degree, affine[0].e, affine[0].e_tilde), (2, 2, 2));
        assert_eq!((r.infinity().e, r.infinity().e_tilde), (3, 3));
        assert_eq!(r.rh_sum, 4);
        assert!(rh_check(&r));
    }

    #[test]
    fn mixed_wild_point() {
        // t^(p+1) - t^p
        for p in [3u64, 5] {
            let f = fp(p);
            let t = Poly::var(&f);
            let pu = p as usize;
            let r = ramification_report(&(&t.pow(pu + 1) - &t.pow(pu))).unwrap();
            assert!(rh_check(&r));
            let affine_sum: usize = r
                .affine_points()
                .iter()
                .map(|x| x.place_degree * (x.e_tilde - 1))
                .sum();
            assert_eq!(affine_sum, r.f_sep.derivative().degree().unwrap());
        }
    }

    #[test]
    fn superelliptic_examples() {
        let q = FieldDesc::rationals();
        let g5 = Poly::from_i64(&q, &[1, 1, 0, 0, 0, 1]);
        assert_eq!(superelliptic_genus(2, &g5).unwrap(), SuperellipticGenus { genus: 2, chi: -2 });
        let g6 = Poly::from_i64(&q, &[1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(superelliptic_genus(2, &g6).unwrap().genus, 2);
        let g4 = Poly::from_i64(&q, &[1, 0, 0, 0, 1]);
        assert_eq!(superelliptic_genus(3, &g4).unwrap(), SuperellipticGenus { genus: 3, chi: -4 });
        let sq = Poly::from_i64(&q, &[1, 2, 1]);
        assert_eq!(superelliptic_genus(2, &sq).unwrap_err(), CurveError::NotSquarefree);
        let f3 = fp(3);
        assert_eq!(
            superelliptic_genus(3, &Poly::from_i64(&f3, &[1, 0, 0, 0, 1])).unwrap_err(),
            CurveError::WildCover { n: 3 }
        );
    }

    #[test]
    fn constant_map_rejected() {
        let q = FieldDesc::rationals();
        assert_eq!(
            ramification_report(&Poly::from_i64(&q, &[5])).unwrap_err(),
            CurveError::ConstantPolynomial
        );
    }
}
