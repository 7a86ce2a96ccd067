//! Ramification of totally ramified Galois extensions L = Q_p[x]/(g), g
//! Eisenstein: conjugates of the uniformizer, i-values, the lower and
//! upper filtrations, Hasse–Herbrand functions, and root-cluster ball
//! counts, with machine checks relating them.

mod cluster;
mod padic;
mod profile;
mod pwl;
mod roots;

use num_bigint::BigInt;
use thiserror::Error;

pub use cluster::{
    cluster_data, default_samples, permutations, verify_action_lemma, verify_ball_formula,
    ClusterData,
};
pub use padic::{LocalExt, OLElem, PadicInt};
pub use profile::{ram_profile, RamProfile};
pub use pwl::{q, qi, render_q, PiecewiseLinear, StepFunction, Q};
pub use roots::{conjugates, i_values, Conjugates};

/// Working precision (p-adic digits) used when the caller gives none.
pub const DEFAULT_PRECISION: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("{0} is not a prime")]
    BadPrime(u64),
    #[error("polynomial is not Eisenstein")]
    NotEisenstein,
    #[error("extension is not Galois: found {found} of {expected} conjugates in L")]
    NotTotallySplit { found: usize, expected: usize },
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("window {window} too small: must exceed {required}")]
    WindowTooSmall { window: String, required: String },
    #[error("cannot match a conjugate to a unique nearest root")]
    PermutationAmbiguous,
}

/// Everything computed for one extension.
#[derive(Debug, Clone)]
pub struct LocalAnalysis {
    pub ext: LocalExt,
    pub roots: Conjugates,
    pub i_values: Vec<Q>,
    pub profile: RamProfile,
    pub cluster: ClusterData,
    pub window: Q,
    pub ball_formula: bool,
    pub action_lemma: bool,
    pub samples: Vec<Q>,
}

/// Full pipeline at one fixed precision.
pub fn analyze_at(ext: &LocalExt, window: Option<&Q>) -> Result<LocalAnalysis, LocalError> {
    let roots = conjugates(ext)?;
    let i_vals = i_values(ext, &roots)?;
    let profile = ram_profile(&i_vals, ext.e());
    let cluster = cluster_data(ext, &roots)?;
    let window = match window {
        Some(w) => w.clone(),
        None => profile.default_window(),
    };
    let ball_formula = verify_ball_formula(&profile, &cluster, &window)?;
    let samples = default_samples(&profile);
    let action_lemma = verify_action_lemma(ext, &roots, &profile, &cluster, &samples)?;
    Ok(LocalAnalysis {
        ext: ext.clone(),
        roots,
        i_values: i_vals,
        profile,
        cluster,
        window,
        ball_formula,
        action_lemma,
        samples,
    })
}

/// Full pipeline, retrying once at doubled precision when the first
/// attempt runs out of digits.
pub fn analyze(
    p: u64,
    g: &[BigInt],
    precision: Option<u32>,
    window: Option<&Q>,
) -> Result<LocalAnalysis, LocalError> {
    let ext = LocalExt::new(p, g, precision.unwrap_or(DEFAULT_PRECISION))?;
    match analyze_at(&ext, window) {
        Err(LocalError::PrecisionExhausted) => {
            let doubled = ext.with_precision(ext.precision().saturating_mul(2))?;
            analyze_at(&doubled, window)
        }
        other => other,
    }
}
