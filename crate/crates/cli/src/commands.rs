use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use ramification::algebra::{parse_integer_poly, parse_poly, FieldDesc, Poly};
use ramification::chi_ring::{contradiction_certificate, specialize};
use ramification::curve_ram::{
    fubini_constraint, fubini_defect, ramification_report_seeded, rh_check, RamReport,
};
use ramification::local_ram::{analyze, render_q, LocalError, PiecewiseLinear, Q};
use ramification::surface_rh::{
    iversen_chi, normalization_chi, validate_cover, Severity, SurfaceCover,
};

use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precision(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Precision(_) => 3,
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn field_for(ch: u64) -> Result<FieldDesc, CliError> {
    if ch == 0 {
        Ok(FieldDesc::rationals())
    } else {
        FieldDesc::prime(ch).map_err(input_err)
    }
}

fn curve_report(ch: u64, poly: &str, seed: u64) -> Result<(Poly, RamReport), CliError> {
    let field = field_for(ch)?;
    let f = parse_poly(&field, poly).map_err(input_err)?;
    let r = ramification_report_seeded(&f, seed).map_err(input_err)?;
    Ok((f, r))
}

pub fn curve_analyze(ch: u64, poly: &str, seed: u64) -> Result<Report, CliError> {
    let (f, r) = curve_report(ch, poly, seed)?;
    let points: Vec<Value> = r
        .points
        .iter()
        .map(|pt| {
            json!({
                "place": pt.place.to_string(),
                "degree": pt.place_degree,
                "e": pt.e,
                "e_tilde": pt.e_tilde,
                "different": pt.different,
                "defect": pt.defect,
                "tame": pt.tame,
            })
        })
        .collect();
    let defect = fubini_defect(&r);
    let tame_by_e = r
        .points
        .iter()
        .all(|pt| ch == 0 || pt.e as u64 % ch != 0);
    let mut rep = Report::new("curve analyze");
    rep.input("char", ch)
        .input("poly", poly)
        .result("f", f.to_string())
        .result("f_sep", r.f_sep.to_string())
        .result("insep_exponent", r.insep_exponent)
        .result("degree", r.deg_sep)
        .result("points", points)
        .result("total_defect", defect)
        .result("rh_sum", r.rh_sum)
        .result("constraint", fubini_constraint(&r).to_string())
        .result("tame", defect == 0)
        .check("riemann_hurwitz", rh_check(&r))
        .check("tame_iff_zero_defect", (defect == 0) == tame_by_e);
    Ok(rep)
}

pub fn curve_fubini(ch: u64, poly: &str, seed: u64) -> Result<Report, CliError> {
    let (f, r) = curve_report(ch, poly, seed)?;
    let c = fubini_constraint(&r);
    let at_two = specialize(&c, 2).map(Value::from).unwrap_or(Value::Null);
    let mut rep = Report::new("curve fubini");
    rep.input("char", ch)
        .input("poly", poly)
        .result("f", f.to_string())
        .result("degree", r.deg_sep)
        .result("constraint", c.to_string())
        .result("constraint_factored", c.render_factored())
        .result("fubini_defect", fubini_defect(&r))
        .result("constraint_at_u_2", at_two)
        .check("riemann_hurwitz", rh_check(&r));
    Ok(rep)
}

pub fn chi_certificate(p: u64) -> Result<Report, CliError> {
    let cert = contradiction_certificate(p).map_err(input_err)?;
    let gens: Vec<Value> = cert
        .generators
        .iter()
        .zip(&cert.multipliers)
        .map(|((g, from), m)| {
            json!({
                "generator": g.render_factored(),
                "multiplier": m.to_string(),
                "from": from,
            })
        })
        .collect();
    let mut rep = Report::new("chi certificate");
    rep.input("p", p)
        .result("generators", gens)
        .result("target", cert.target.to_string())
        .result("expansion", cert.expand().to_string())
        .result("identity", cert.identity_line())
        .check("certificate_verifies", cert.verify());
    Ok(rep)
}

pub fn surface_iversen(path: &Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => {
            CliError::Input(format!("input file not found: {}", path.display()))
        }
        _ => CliError::Input(format!("cannot read {}: {e}", path.display())),
    })?;
    let cover = SurfaceCover::from_json(&text).map_err(input_err)?;
    let chi = iversen_chi(&cover).map_err(input_err)?;
    let warnings: Vec<Value> = validate_cover(&cover)
        .into_iter()
        .filter(|f| f.severity == Severity::Warning)
        .map(|f| Value::from(f.message))
        .collect();
    let summands: Vec<Value> = cover
        .points
        .iter()
        .map(|y| json!({"point": y.name, "summand": cover.point_summand(y)}))
        .collect();
    let normalizations: Vec<Value> = cover
        .components
        .iter()
        .map(|b| json!({"component": b.name, "chi": normalization_chi(b, &cover.points)}))
        .collect();
    let mut rep = Report::new("surface iversen");
    rep.input("input", path.display().to_string())
        .result("degree", cover.degree)
        .result("chi_s2", cover.chi_s2)
        .result("chi_s1", chi)
        .result("point_summands", summands)
        .result("normalization_chi", normalizations)
        .result("warnings", warnings);
    Ok(rep)
}

fn q_list(xs: &[Q]) -> Vec<Value> {
    xs.iter().map(|x| Value::from(render_q(x))).collect()
}

pub fn local_analyze(
    p: u64,
    eisenstein: &str,
    precision: Option<u32>,
    window: Option<&str>,
) -> Result<Report, CliError> {
    let g = parse_integer_poly(eisenstein).map_err(input_err)?;
    let window: Option<Q> = match window {
        Some(w) => Some(
            w.trim()
                .parse::<Q>()
                .map_err(|_| CliError::Input(format!("window {w:?} is not a rational number")))?,
        ),
        None => None,
    };
    let a = analyze(p, &g, precision, window.as_ref()).map_err(|e| match e {
        LocalError::PrecisionExhausted | LocalError::PermutationAmbiguous => {
            CliError::Precision(e.to_string())
        }
        other => input_err(other),
    })?;
    let prof = &a.profile;
    let delta: Vec<Value> = a
        .cluster
        .delta
        .iter()
        .map(|row| {
            Value::from(
                row.iter()
                    .map(|d| Value::from(d.as_ref().map_or("inf".to_string(), render_q)))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let (lo, hi) = prof.eta.domain();
    let psi_eta = prof.psi.compose(&prof.eta);
    let inverse_ok = psi_eta == Some(PiecewiseLinear::identity(lo.clone(), hi.clone()));
    let i_sum: Q = a.i_values.iter().sum();
    let different = Q::from_integer(a.roots.different.into());

    let mut rep = Report::new("local analyze");
    rep.input("p", p).input("eisenstein", eisenstein);
    rep.input("precision", precision.map(Value::from).unwrap_or(Value::Null));
    rep.input("window", window.as_ref().map(|w| Value::from(render_q(w))).unwrap_or(Value::Null));
    rep.result("e", a.ext.e())
        .result("precision_used", a.ext.precision())
        .result("different", a.roots.different)
        .result("i_values", q_list(&a.i_values))
        .result("lower_breaks", q_list(&prof.lower_breaks))
        .result("upper_breaks", q_list(&prof.upper_breaks))
        .result("group_sizes", prof.group_sizes.to_string())
        .result("eta", prof.eta.table())
        .result("psi", prof.psi.table())
        .result("delta", delta)
        .result("ball_count", a.cluster.ball_count.to_string())
        .result("window", render_q(&a.window))
        .result("samples", q_list(&a.samples))
        .check("ball_formula", a.ball_formula)
        .check("action_lemma", a.action_lemma)
        .check("psi_inverts_eta", inverse_ok)
        .check("different_is_sum_of_i_values", i_sum == different);
    Ok(rep)
}
