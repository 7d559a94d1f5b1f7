//! Class census on both sides of `cok` and hom-dimension comparisons.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::additive::{factoring_dim, is_summand};
use crate::error::{AlgebraError, Result};
use crate::factorization::{fac_hom_basis, fac_stable_hom_dim, nu, FacMap, Factorization};
use crate::field_poly::Scalar;
use crate::functors::{cok, jq_sequence};
use crate::hypersurface_module::{module_iso, HypersurfaceConfig};
use crate::linalg::span_rank;
use crate::monochain::{chain_hom_basis, chain_stable_hom_dim, MonoChain};

use super::enumerate::{chain_indecomposable_classes, enumerate_factorizations, fac_indecomposable_classes, CensusBounds};

#[derive(Clone, Debug, Serialize)]
pub struct FacClass {
    pub rank: usize,
    pub labels: Vec<Vec<i64>>,
    pub factorization: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainClass {
    pub modules: Vec<String>,
    pub chain: serde_json::Value,
}

/// `cok(fac_classes[fac])` is `chain_classes[chain]` moved up by `shift` degrees.
#[derive(Clone, Debug, Serialize)]
pub struct Match {
    pub fac: usize,
    pub chain: Option<usize>,
    pub shift: i64,
}

/// Stable hom dimensions from class `src` to class `tgt` translated by `shift`
/// (labels on the factorization side, the opposite degree shift on the chain side).
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomEntry {
    pub src: usize,
    pub tgt: usize,
    pub shift: i64,
    pub fac: usize,
    pub chain: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub d: usize,
    pub l: usize,
    pub field: String,
    pub bounds: CensusBounds,
    pub fac_classes: Vec<FacClass>,
    pub chain_classes: Vec<ChainClass>,
    pub matching: Vec<Match>,
    pub hom_table: Vec<HomEntry>,
    pub bijective: bool,
    pub hom_tables_agree: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("census mismatch: {reason}")]
    MatchFailure { reason: String, report: Box<CensusReport> },
}

impl CensusReport {
    pub fn is_consistent(&self) -> bool {
        self.bijective && self.hom_tables_agree
    }

    /// Aligned plain-text rendering.
    pub fn table(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "census d={} l={} field={} bounds m={},dim={},window={}",
            self.d, self.l, self.field, self.bounds.m, self.bounds.dim, self.bounds.window
        )?;
        writeln!(f, "{:>4}  {:<40}  {:>5}  cok", "fac", "labels X^0 | … | X^l", "chain")?;
        for m in &self.matching {
            let class = &self.fac_classes[m.fac];
            let labels = class.labels.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(" | ");
            let (idx, mods) = match m.chain {
                Some(c) => (c.to_string(), self.chain_classes[c].modules.join(" ↣ ")),
                None => ("-".to_string(), "unmatched".to_string()),
            };
            writeln!(f, "{:>4}  {:<40}  {:>5}  {}", m.fac, labels, idx, mods)?;
        }
        let disagreements = self.hom_table.iter().filter(|e| e.fac != e.chain).count();
        writeln!(
            f,
            "classes: {} factorization, {} chain; bijection: {}; hom entries: {} ({} disagree)",
            self.fac_classes.len(),
            self.chain_classes.len(),
            if self.bijective { "yes" } else { "no" },
            self.hom_table.len(),
            disagreements
        )
    }
}

/// Degree by which `u` must move so that its top has lowest generator degree 0.
fn top_offset(u: &MonoChain) -> i64 {
    u.top().summands().iter().map(|s| s.1).min().unwrap_or(0)
}

fn same_components(u: &MonoChain, v: &MonoChain) -> bool {
    u.objects().iter().zip(v.objects()).all(|(a, b)| module_iso(a, b))
}

/// Enumerates both sides within `bounds`, matches classes through `cok`, and compares the
/// stable hom dimensions of every pair over all relative shifts that can be nonzero.
pub fn class_census(cfg: HypersurfaceConfig, l: usize, bounds: &CensusBounds) -> std::result::Result<CensusReport, CensusError> {
    let facs = fac_indecomposable_classes(cfg, l, bounds)?;
    let chains: Vec<MonoChain> = chain_indecomposable_classes(cfg, l, bounds)?
        .into_iter()
        .filter(|c| !c.1)
        .map(|c| c.0)
        .collect();
    let images: Vec<MonoChain> = facs.par_iter().map(cok).collect::<Result<_>>()?;

    let matching: Vec<Match> = images
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let shift = top_offset(u);
            let normal = u.shifted(-shift);
            let chain = chains
                .iter()
                .position(|v| same_components(v, &normal) && is_summand(v, &normal) && is_summand(&normal, v));
            Match { fac: i, chain, shift }
        })
        .collect();
    let mut hits = vec![0usize; chains.len()];
    for m in &matching {
        if let Some(c) = m.chain {
            hits[c] += 1;
        }
    }
    let bijective = matching.iter().all(|m| m.chain.is_some()) && hits.iter().all(|&h| h == 1);

    let reach = bounds.window + cfg.d as i64;
    let mut jobs = Vec::new();
    if bijective {
        for a in &matching {
            for b in &matching {
                for t in -reach..=reach {
                    jobs.push((a.clone(), b.clone(), t));
                }
            }
        }
    }
    let hom_table: Vec<HomEntry> = jobs
        .par_iter()
        .map(|(a, b, t)| {
            let (ca, cb) = (a.chain.expect("bijective"), b.chain.expect("bijective"));
            let fac = fac_stable_hom_dim(&facs[a.fac], &facs[b.fac].shifted(*t));
            let chain = chain_stable_hom_dim(&chains[ca].shifted(a.shift), &chains[cb].shifted(b.shift - t));
            HomEntry { src: a.fac, tgt: b.fac, shift: *t, fac, chain }
        })
        .collect();
    let hom_tables_agree = hom_table.iter().all(|e| e.fac == e.chain);

    let report = CensusReport {
        d: cfg.d,
        l,
        field: cfg.field.to_string(),
        bounds: bounds.clone(),
        fac_classes: facs
            .iter()
            .map(|x| FacClass { rank: x.rank(), labels: (0..=l).map(|k| x.labels(k)).collect(), factorization: x.to_json() })
            .collect(),
        chain_classes: chains
            .iter()
            .map(|u| ChainClass { modules: u.objects().iter().map(|m| m.to_string()).collect(), chain: u.to_json() })
            .collect(),
        matching,
        hom_table,
        bijective,
        hom_tables_agree,
    };
    if !report.bijective {
        let reason = match report.matching.iter().find(|m| m.chain.is_none()) {
            Some(m) => format!("cok of factorization class {} matches no chain class", m.fac),
            None => {
                let c = hits.iter().position(|&h| h != 1).expect("some chain class is hit other than once");
                format!("chain class {c} is the image of {} factorization classes", hits[c])
            }
        };
        return Err(CensusError::MatchFailure { reason, report: Box::new(report) });
    }
    if let Some(e) = report.hom_table.iter().find(|e| e.fac != e.chain) {
        let reason = format!(
            "stable hom from class {} to class {} shifted by {}: {} on factorizations, {} on chains",
            e.src, e.tgt, e.shift, e.fac, e.chain
        );
        return Err(CensusError::MatchFailure { reason, report: Box::new(report) });
    }
    Ok(report)
}

/// Hom dimensions on both sides of `cok` modulo maps through `ν^l`-objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomComparison {
    pub lhs: usize,
    pub rhs: usize,
    pub equal: bool,
}

/// `lhs = dim Hom(X, Y)` minus the maps through `j_Y: ν^l(Y^0) → Y`;
/// `rhs = dim Hom(cok X, cok Y)`.
pub fn hom_dim_compare(x: &Factorization, y: &Factorization) -> Result<HomComparison> {
    check_shape(x, y)?;
    let jq = jq_sequence(y)?;
    let lhs = fac_hom_basis(x, y).len() - factoring_dim(x, &jq.source, &jq.j);
    let rhs = chain_hom_basis(&cok(x)?, &cok(y)?).len();
    Ok(HomComparison { lhs, rhs, equal: lhs == rhs })
}

fn check_shape(x: &Factorization, y: &Factorization) -> Result<()> {
    if x.cfg() != y.cfg() || x.l() != y.l() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "factorizations of x^{} with l={} and x^{} with l={}",
            x.d(),
            x.l(),
            y.d(),
            y.l()
        )));
    }
    Ok(())
}

/// Dimensions of the maps `X → Y` factoring through `j_Y: ν^l(Y^0) → Y`, and of the span
/// of composites `X → ν^l(S(n)) → Y` over every rank-one free `S(n)` that can carry a
/// nonzero composite. The two ideals coincide.
pub fn quotient_ideal_dims(x: &Factorization, y: &Factorization) -> Result<(usize, usize)> {
    check_shape(x, y)?;
    let jq = jq_sequence(y)?;
    let through_cover = factoring_dim(x, &jq.source, &jq.j);
    let d = x.d() as i64;
    let labels: Vec<i64> = (0..=x.l()).flat_map(|k| x.labels(k).into_iter().chain(y.labels(k))).collect();
    let (Some(&lo), Some(&hi)) = (labels.iter().min(), labels.iter().max()) else {
        return Ok((through_cover, 0));
    };
    let mut composites: Vec<Vec<Scalar>> = Vec::new();
    for n in lo - d..=hi + d {
        let p = nu(x.cfg(), &[n], x.l(), x.l())?;
        let into = fac_hom_basis(x, &p);
        let out = fac_hom_basis(&p, y);
        for b in &out {
            for a in &into {
                composites.push(b.compose(a).coords());
            }
        }
    }
    let len = FacMap::zero(x, y).coords().len();
    Ok((through_cover, span_rank(x.field(), len, &composites)))
}

/// Every enumerated indecomposable (ν-objects included) at every shift that can meet an
/// object with labels in `[-window - d, 0]`.
pub fn probe_set(cfg: HypersurfaceConfig, l: usize, bounds: &CensusBounds) -> Result<Vec<Factorization>> {
    let base = enumerate_factorizations(cfg, l, bounds.m, bounds.window)?;
    let d = cfg.d as i64;
    let reach = bounds.window + 2 * d;
    Ok(base.iter().flat_map(|b| (-reach..=reach).map(move |t| b.shifted(t))).collect())
}

/// `fac_stable_hom_dim(X, B)` for every probe `B`.
pub fn stable_profile(x: &Factorization, probes: &[Factorization]) -> Vec<usize> {
    probes.par_iter().map(|b| fac_stable_hom_dim(x, b)).collect()
}
