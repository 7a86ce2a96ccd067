//! Root clusters: the ball decomposition of g⁻¹(𝔭^x), computed from the
//! pairwise distances of the conjugates, and the two checks tying it to
//! the ramification filtration.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::padic::LocalExt;
use super::profile::RamProfile;
use super::pwl::{q, qi, render_q, StepFunction, Q};
use super::roots::Conjugates;
use super::LocalError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterData {
    /// δ_jk = ν_F(ξ_j − ξ_k); `None` on the diagonal (+∞).
    pub delta: Vec<Vec<Option<Q>>>,
    /// Thresholds: ξ_j and ξ_k share a ball of g⁻¹(𝔭^x) iff x ≤ X_jk.
    pub merge: Vec<Vec<Option<Q>>>,
    /// N(x) = number of balls, on [0, ∞).
    pub ball_count: StepFunction,
}

/// S_j(r) = Σ_k min(r, δ_jk), the valuation of g on the sphere of radius
/// r around ξ_j.
fn sphere_sum(row: &[Option<Q>], r: &Q) -> Q {
    row.iter()
        .map(|d| match d {
            None => r.clone(),
            Some(d) => d.clone().min(r.clone()),
        })
        .sum()
}

pub fn cluster_data(l: &LocalExt, roots: &Conjugates) -> Result<ClusterData, LocalError> {
    let n = roots.len();
    let e = Q::from_integer(BigInt::from(l.e()));
    let mut delta = vec![vec![None; n]; n];
    for j in 0..n {
        for k in (j + 1)..n {
            let v = match l.valuation(&l.sub(&roots.roots[j], &roots.roots[k])) {
                Some(v) if v < roots.accuracy => v,
                _ => return Err(LocalError::PrecisionExhausted),
            };
            let d = Q::from_integer(BigInt::from(v)) / &e;
            delta[j][k] = Some(d.clone());
            delta[k][j] = Some(d);
        }
    }
    Ok(ClusterData::from_delta(delta))
}

impl ClusterData {
    /// Build from a symmetric distance matrix (diagonal `None`).
    ///
    /// The ball of g⁻¹(𝔭^x) around ξ_j has radius r_j(x), the least r with
    /// S_j(r) ≥ x. Two balls coincide iff δ_jk ≥ max(r_j(x), r_k(x)),
    /// i.e. iff x ≤ min(S_j(δ_jk), S_k(δ_jk)).
    pub fn from_delta(delta: Vec<Vec<Option<Q>>>) -> Self {
        let n = delta.len();
        let mut merge = vec![vec![None; n]; n];
        let mut thresholds: Vec<Q> = Vec::new();
        for j in 0..n {
            for k in (j + 1)..n {
                let d = delta[j][k].clone().expect("off-diagonal distance");
                let x = sphere_sum(&delta[j], &d).min(sphere_sum(&delta[k], &d));
                thresholds.push(x.clone());
                merge[j][k] = Some(x.clone());
                merge[k][j] = Some(x);
            }
        }
        thresholds.sort();
        thresholds.dedup();
        let mut cd = ClusterData {
            delta,
            merge,
            ball_count: StepFunction::constant(Q::zero(), 1),
        };
        // N is constant on (X_{m-1}, X_m]; sample each piece at its right end.
        let mut values: Vec<u64> = thresholds.iter().map(|x| cd.count_at(x)).collect();
        values.push(n as u64);
        cd.ball_count = StepFunction::new(Q::zero(), thresholds, values);
        cd
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    /// Class label (least member index) of each root at threshold x.
    pub fn partition_at(&self, x: &Q) -> Vec<usize> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for j in 0..n {
            for k in (j + 1)..n {
                if self.merge[j][k].as_ref().is_some_and(|m| x <= m) {
                    let (a, b) = (find(&mut parent, j), find(&mut parent, k));
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent[hi] = lo;
                }
            }
        }
        (0..n).map(|i| find(&mut parent, i)).collect()
    }

    fn count_at(&self, x: &Q) -> u64 {
        let mut labels = self.partition_at(x);
        labels.sort_unstable();
        labels.dedup();
        labels.len() as u64
    }

    /// δ_ik ≥ min(δ_ij, δ_jk) for all triples of distinct indices.
    pub fn is_ultrametric(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let d = |a: usize, b: usize| self.delta[a][b].as_ref().expect("off-diagonal");
                    if d(i, k) < d(i, j).min(d(j, k)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// ψ(a) = ∫_0^{a+1} N(x) dx − 1 as piecewise-linear functions on
/// [−1, window].
pub fn verify_ball_formula(
    profile: &RamProfile,
    cluster: &ClusterData,
    window: &Q,
) -> Result<bool, LocalError> {
    let required = profile.max_upper_break().cloned().unwrap_or_else(|| qi(-1)) + Q::one();
    if window <= &required {
        return Err(LocalError::WindowTooSmall {
            window: render_q(window),
            required: render_q(&required),
        });
    }
    let lhs = match profile.psi.restrict(&qi(-1), window) {
        Some(f) => f,
        None => profile.psi.extend_to(window),
    };
    let rhs = cluster
        .ball_count
        .integral(&(window + Q::one()))
        .shift(&qi(-1), &qi(-1));
    Ok(lhs == rhs)
}

/// perm[j][k] = index of σ_j(ξ_k), where σ_j is the automorphism π ↦ ξ_j.
/// σ_j(ξ_k) is ξ_k written as a polynomial in π and evaluated at ξ_j,
/// then matched to the unique nearest root.
pub fn permutations(l: &LocalExt, roots: &Conjugates) -> Result<Vec<Vec<usize>>, LocalError> {
    let polys: Vec<_> = roots.roots.iter().map(|r| l.as_poly_in_pi(r)).collect();
    let mut out = Vec::with_capacity(roots.len());
    for xj in &roots.roots {
        let mut row = Vec::with_capacity(roots.len());
        for pk in &polys {
            let img = l.eval_poly(pk, xj);
            let mut scored: Vec<(u64, usize)> = roots
                .roots
                .iter()
                .enumerate()
                .map(|(m, r)| (l.valuation_capped(&l.sub(&img, r)), m))
                .collect();
            scored.sort_by(|a, b| b.0.cmp(&a.0));
            let best = scored[0];
            if let Some(second) = scored.get(1) {
                if best.0 < second.0 + 1 || best.0 <= roots.different {
                    return Err(LocalError::PermutationAmbiguous);
                }
            }
            row.push(best.1);
        }
        out.push(row);
    }
    Ok(out)
}

/// The lower breaks, midpoints between them, breaks ± 1/(2e), plus −1
/// and one past the last break.
pub fn default_samples(profile: &RamProfile) -> Vec<Q> {
    let h = q(1, 2 * profile.e as i64);
    let b = &profile.lower_breaks;
    let mut s = vec![qi(-1)];
    for x in b {
        s.push(x - &h);
        s.push(x.clone());
        s.push(x + &h);
    }
    for w in b.windows(2) {
        s.push((&w[0] + &w[1]) / qi(2));
    }
    s.push(b.last().cloned().unwrap_or_else(|| qi(-1)) + Q::one());
    s.retain(|a| a >= &qi(-1));
    s.sort();
    s.dedup();
    s
}

/// For each sample a: the automorphisms fixing every ball of
/// g⁻¹(𝔭^{η(a)+1}) are exactly G_a.
pub fn verify_action_lemma(
    l: &LocalExt,
    roots: &Conjugates,
    profile: &RamProfile,
    cluster: &ClusterData,
    samples: &[Q],
) -> Result<bool, LocalError> {
    let perms = permutations(l, roots)?;
    if perms[0].iter().enumerate().any(|(k, &m)| k != m) {
        return Ok(false);
    }
    // root order matches profile order only through i-values, so recompute
    let i_of: Vec<Option<Q>> = std::iter::once(None)
        .chain(roots.roots[1..].iter().map(|r| {
            l.valuation(&l.sub(r, &roots.roots[0]))
                .map(|v| Q::from_integer(BigInt::from(v)))
        }))
        .collect();
    for a in samples {
        let Some(eta) = profile.eta_at(a) else {
            return Ok(false);
        };
        let classes = cluster.partition_at(&(eta + Q::one()));
        for (j, perm) in perms.iter().enumerate() {
            let trivial = perm.iter().enumerate().all(|(k, &m)| classes[k] == classes[m]);
            let in_group = RamProfile::in_lower_group(i_of[j].as_ref(), a);
            if trivial != in_group {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
