//! Iversen's Riemann–Hurwitz formula for a finite morphism of projective
//! surfaces φ: S₁ → S₂ of degree n, evaluated on user-supplied branch data:
//!
//! χ(S₁) = n·χ(S₂) − Σᵢ (n − nᵢ)·χ(Bᵢ)
//!         + Σ_y ( |φ⁻¹(y)| − n + Σᵢ (n − nᵢ)·mᵢ(y) )
//!
//! Branch loci are not computed here; the caller provides χ of each
//! component, the degrees nᵢ over them, and the special points.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchComponent {
    pub name: String,
    pub chi: i64,
    pub n_i: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchPoint {
    pub name: String,
    pub fiber_size: u64,
    /// component name → number of local branches of that component here
    pub branches: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceCover {
    pub chi_s2: i64,
    pub degree: u64,
    pub components: Vec<BranchComponent>,
    pub points: Vec<BranchPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invalid cover: {}", .0.join("; "))]
    InvalidCover(Vec<String>),
    #[error("malformed branch data: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

impl Finding {
    fn error(message: String) -> Self {
        Finding {
            severity: Severity::Error,
            message,
        }
    }

    fn warning(message: String) -> Self {
        Finding {
            severity: Severity::Warning,
            message,
        }
    }
}

impl SurfaceCover {
    /// Parse the JSON branch-data schema; unknown keys are rejected.
    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        serde_json::from_str(text).map_err(|e| SurfaceError::Malformed(e.to_string()))
    }

    fn component(&self, name: &str) -> Option<&BranchComponent> {
        self.components.iter().find(|c| c.name == name)
    }

    /// Point summand |φ⁻¹(y)| − n + Σᵢ (n − nᵢ)·mᵢ(y). Unknown component
    /// names contribute nothing.
    pub fn point_summand(&self, pt: &BranchPoint) -> i64 {
        let n = self.degree as i64;
        let branch: i64 = pt
            .branches
            .iter()
            .filter_map(|(name, m)| self.component(name).map(|c| (n - c.n_i as i64) * *m as i64))
            .sum();
        pt.fiber_size as i64 - n + branch
    }
}

/// Consistency findings for branch data; an empty list means valid.
pub fn validate_cover(c: &SurfaceCover) -> Vec<Finding> {
    let mut out = Vec::new();
    if c.degree == 0 {
        out.push(Finding::error("cover degree must be positive".into()));
    }
    let mut names = BTreeSet::new();
    for comp in &c.components {
        if !names.insert(comp.name.as_str()) {
            out.push(Finding::error(format!("duplicate component name {:?}", comp.name)));
        }
        if comp.n_i == 0 {
            out.push(Finding::error(format!("component {:?}: degree n_i must be at least 1", comp.name)));
        }
        if comp.n_i > c.degree {
            out.push(Finding::error(format!(
                "component {:?}: component degree exceeds cover degree ({} > {})",
                comp.name, comp.n_i, c.degree
            )));
        }
    }
    let mut seen: BTreeMap<&str, &BranchPoint> = BTreeMap::new();
    for pt in &c.points {
        if pt.fiber_size == 0 {
            out.push(Finding::error(format!("point {:?}: fiber size must be at least 1", pt.name)));
        }
        if pt.fiber_size > c.degree {
            out.push(Finding::error(format!(
                "point {:?}: fiber size exceeds cover degree ({} > {})",
                pt.name, pt.fiber_size, c.degree
            )));
        }
        if pt.branches.is_empty() {
            out.push(Finding::error(format!("point {:?}: lies on no branch component", pt.name)));
        }
        for (comp, m) in &pt.branches {
            if c.component(comp).is_none() {
                out.push(Finding::error(format!(
                    "point {:?}: unknown component {comp:?}",
                    pt.name
                )));
            }
            if *m == 0 {
                out.push(Finding::error(format!(
                    "point {:?}: branch count on {comp:?} must be at least 1 (omit the key instead)",
                    pt.name
                )));
            }
        }
        match seen.get(pt.name.as_str()) {
            Some(prev) if prev.branches != pt.branches || prev.fiber_size != pt.fiber_size => {
                out.push(Finding::warning(format!(
                    "point {:?}: listed more than once with inconsistent branch counts",
                    pt.name
                )));
            }
            Some(_) => out.push(Finding::warning(format!("point {:?}: listed more than once", pt.name))),
            None => {
                seen.insert(&pt.name, pt);
            }
        }
        if !pt.branches.is_empty() && c.point_summand(pt) == 0 {
            out.push(Finding::warning(format!(
                "point {:?}: zero summand: point is generic",
                pt.name
            )));
        }
    }
    out
}

/// χ(S₁) by Iversen's formula. Fails if validation reports any error.
pub fn iversen_chi(c: &SurfaceCover) -> Result<i64, SurfaceError> {
    let errors: Vec<String> = validate_cover(c)
        .into_iter()
        .filter(|f| f.severity == Severity::Error)
        .map(|f| f.message)
        .collect();
    if !errors.is_empty() {
        return Err(SurfaceError::InvalidCover(errors));
    }
    let n = c.degree as i64;
    let curve_term: i64 = c
        .components
        .iter()
        .map(|b| (n - b.n_i as i64) * b.chi)
        .sum();
    let point_term: i64 = c.points.iter().map(|y| c.point_summand(y)).sum();
    Ok(n * c.chi_s2 - curve_term + point_term)
}

/// χ of the normalization of a branch component:
/// χ(B̃) = χ(B) + Σ_{y ∈ B} (m(y) − 1).
pub fn normalization_chi(comp: &BranchComponent, pts: &[BranchPoint]) -> i64 {
    comp.chi
        + pts
            .iter()
            .filter_map(|y| y.branches.get(&comp.name))
            .map(|m| *m as i64 - 1)
            .sum::<i64>()
}
