//! Ramification groups and the Hasse–Herbrand functions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::pwl::{qi, PiecewiseLinear, StepFunction, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamProfile {
    pub e: usize,
    /// Non-identity i-values, ascending; the identity is +∞.
    pub i_values: Vec<Q>,
    /// a ↦ |G_a| on [−1, ∞).
    pub group_sizes: StepFunction,
    /// η on [−1, A] for the default window end A.
    pub eta: PiecewiseLinear,
    /// ψ = η⁻¹ on [−1, η(A)].
    pub psi: PiecewiseLinear,
    pub lower_breaks: Vec<Q>,
    pub upper_breaks: Vec<Q>,
}

/// Build the profile of a Galois extension of degree e from its i-values.
pub fn ram_profile(i_vals: &[Q], e: usize) -> RamProfile {
    assert_eq!(i_vals.len() + 1, e, "need e - 1 i-values");
    let mut iv = i_vals.to_vec();
    iv.sort();

    let mut lower_breaks: Vec<Q> = iv.iter().map(|i| i - Q::one()).collect();
    lower_breaks.dedup();

    // |G_a| = 1 + #{σ ≠ 1 : i(σ) ≥ a + 1}, constant on (b_{j-1}, b_j]
    let sizes: Vec<u64> = std::iter::once(e as u64)
        .chain(lower_breaks.iter().map(|b| {
            1 + iv.iter().filter(|i| **i > b + Q::one()).count() as u64
        }))
        .collect();
    let group_sizes = StepFunction::new(qi(-1), lower_breaks.clone(), sizes);

    let end = lower_breaks.last().cloned().unwrap_or_else(Q::zero).max(Q::zero()) + qi(2);
    let mut xs = vec![qi(-1)];
    xs.extend(lower_breaks.iter().cloned());
    xs.push(end);
    let eta = PiecewiseLinear::from_points(
        xs.into_iter()
            .map(|a| {
                let y = eta_closed_form(&iv, e, &a);
                (a, y)
            })
            .collect(),
    );
    let psi = eta.inverse().expect("η is strictly increasing");
    let upper_breaks = lower_breaks
        .iter()
        .map(|b| eta.eval(b).expect("break inside window"))
        .collect();
    RamProfile {
        e,
        i_values: iv,
        group_sizes,
        eta,
        psi,
        lower_breaks,
        upper_breaks,
    }
}

/// η(a) = −1 + (1/e)·Σ_σ min(i(σ), a + 1), the identity contributing a + 1.
fn eta_closed_form(iv: &[Q], e: usize, a: &Q) -> Q {
    let a1 = a + Q::one();
    let sum: Q = iv.iter().map(|i| i.clone().min(a1.clone())).sum::<Q>() + &a1;
    sum / Q::from_integer(BigInt::from(e)) - Q::one()
}

impl RamProfile {
    /// η(a) for any a ≥ −1, continuing past the stored window.
    pub fn eta_at(&self, a: &Q) -> Option<Q> {
        if a < &qi(-1) {
            return None;
        }
        Some(eta_closed_form(&self.i_values, self.e, a))
    }

    /// ψ(u) for any u ≥ −1.
    pub fn psi_at(&self, u: &Q) -> Option<Q> {
        self.psi.extend_to(u).eval(u)
    }

    /// |G_a|.
    pub fn lower_group_size(&self, a: &Q) -> Option<u64> {
        self.group_sizes.eval(a)
    }

    /// |G^u| = |G_{ψ(u)}|.
    pub fn upper_group_size(&self, u: &Q) -> Option<u64> {
        self.lower_group_size(&self.psi_at(u)?)
    }

    /// Membership of σ in G_a, given i(σ) (`None` for the identity).
    pub fn in_lower_group(i: Option<&Q>, a: &Q) -> bool {
        match i {
            None => true,
            Some(i) => i >= &(a + Q::one()),
        }
    }

    /// η as the integral route: −1 + (1/e)∫_{−1}^a |G_x| dx on the
    /// stored window.
    pub fn eta_by_integral(&self) -> PiecewiseLinear {
        let (_, end) = self.eta.domain();
        let e = Q::from_integer(BigInt::from(self.e));
        let shifted = StepFunction::new(
            Q::zero(),
            self.group_sizes.breaks().iter().map(|b| b + Q::one()).collect(),
            self.group_sizes.values().to_vec(),
        );
        let int = shifted.integral(&(end + Q::one()));
        PiecewiseLinear::from_points(
            int.vertices()
                .iter()
                .map(|(x, y)| (x - Q::one(), y / &e - Q::one()))
                .collect(),
        )
    }

    /// Window end used when the caller does not choose one: two past the
    /// largest upper break, and at least 1.
    pub fn default_window(&self) -> Q {
        self.upper_breaks.last().cloned().unwrap_or_else(Q::zero).max(Q::zero()) + qi(2)
    }

    pub fn max_upper_break(&self) -> Option<&Q> {
        self.upper_breaks.last()
    }
}
