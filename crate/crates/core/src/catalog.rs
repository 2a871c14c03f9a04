//! Admissible signatures per surface, code tables, the orientable versus
//! non-orientable equivalence check, and comparison with reference rows.

use std::io;
use std::ops::RangeInclusive;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derive::{self, DerivedCounts};
use crate::floquet::{self, CodeParams, DMode, DSource, ParamOptions};
use crate::geodist;
use crate::hypgeo::{self, SemiRegularSig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("invalid genus range {0:?}")]
    BadGenusRange(String),
    #[error("genus {genus} ({kind}) {sig}: {source}")]
    Row {
        genus: u32,
        kind: &'static str,
        sig: SemiRegularSig,
        source: Box<crate::Error>,
    },
    #[error("reference table: {0}")]
    Reference(String),
    #[error("output: {0}")]
    Output(String),
}

fn kind(orientable: bool) -> &'static str {
    if orientable {
        "orientable"
    } else {
        "non-orientable"
    }
}

/// Integrality rule deciding whether a signature is listed on a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityRule {
    /// `n_v / m_i` integral for every slot, one color class per slot.
    ColorClasses,
    /// Only the total number of faces of each size must be integral.
    FaceCounts,
}

/// `ColorClasses` on orientable surfaces, `FaceCounts` on non-orientable
/// ones.
pub fn default_rule(orientable: bool) -> AdmissibilityRule {
    if orientable {
        AdmissibilityRule::ColorClasses
    } else {
        AdmissibilityRule::FaceCounts
    }
}

/// Size bound that makes enumeration exhaustive. Even triples satisfy
/// `1/2 - sum 1/m_i >= 1/84`, so `n_v <= 84|chi|`, and a listed face size
/// divides `n_v` times its multiplicity, so `m_i <= 3 n_v`.
pub fn default_m_max(chi: i64) -> u32 {
    252 * chi.unsigned_abs() as u32
}

fn admissible(counts: &DerivedCounts, rule: AdmissibilityRule) -> bool {
    match rule {
        AdmissibilityRule::ColorClasses => counts.color_classes_integral,
        AdmissibilityRule::FaceCounts => true,
    }
}

/// Admissible signatures with the default rule for the orientability.
pub fn enumerate_signatures(genus: u32, orientable: bool, m_max: u32) -> Vec<SemiRegularSig> {
    enumerate_signatures_with(genus, orientable, m_max, default_rule(orientable))
}

/// Sorted hyperbolic triples `a <= b <= c <= m_max` of even sizes whose
/// direct counts are integral on the surface under `rule`.
pub fn enumerate_signatures_with(
    genus: u32,
    orientable: bool,
    m_max: u32,
    rule: AdmissibilityRule,
) -> Vec<SemiRegularSig> {
    if hypgeo::check_genus(genus, orientable).is_err() {
        return Vec::new();
    }
    let chi = hypgeo::euler_characteristic(genus, orientable);
    let mut out = Vec::new();
    for a in (4..=m_max).step_by(2) {
        for b in (a..=m_max).step_by(2) {
            for c in (b..=m_max).step_by(2) {
                let Ok(sig) = SemiRegularSig::new([a, b, c]) else {
                    continue;
                };
                // n_v falls as c grows; stop once c exceeds 3 n_v
                let (fa, fb, fc) = (a as f64, b as f64, c as f64);
                let nv_real = -(chi as f64) / (0.5 - 1.0 / fa - 1.0 / fb - 1.0 / fc);
                if fc > 3.0 * nv_real + 1.0 {
                    break;
                }
                if let Ok(counts) = derive::semiregular_counts_direct(sig, chi) {
                    if admissible(&counts, rule) {
                        out.push(sig);
                    }
                }
            }
        }
    }
    out
}

/// One code of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub genus: u32,
    pub orientable: bool,
    pub signature: SemiRegularSig,
    pub params: CodeParams,
    pub convention_tag: Option<String>,
}

impl TableRow {
    /// `d_source` column: `exact`, or `geometric_estimate:<convention>`.
    pub fn d_source_label(&self) -> String {
        match (&self.params.d_source, &self.convention_tag) {
            (DSource::GeometricEstimate, Some(tag)) => format!("{}:{tag}", self.params.d_source),
            (src, _) => src.to_string(),
        }
    }
}

#[derive(Serialize)]
struct CsvRecord {
    genus: u32,
    orientable: bool,
    signature: String,
    n: usize,
    k: usize,
    d: usize,
    d_source: String,
    k_n: String,
    kd2_n: String,
    d_n: String,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    genus: u32,
    orientable: bool,
    signature: String,
    n: usize,
    k: usize,
    d: usize,
    d_source: DSource,
    convention_tag: &'a Option<String>,
    k_n: f64,
    kd2_n: f64,
    d_n: f64,
}

/// Parses `A..B`, `A..=B` or a single genus.
pub fn parse_genus_range(text: &str) -> Result<RangeInclusive<u32>, CatalogError> {
    let bad = || CatalogError::BadGenusRange(text.to_string());
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (text, text),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// One row per admissible signature per genus, in genus then signature
/// order. Rows are computed in parallel.
pub fn build_table(
    genera: RangeInclusive<u32>,
    orientable: bool,
    d_mode: DMode,
) -> crate::Result<Vec<TableRow>> {
    let opts = ParamOptions { d_mode, ..ParamOptions::default() };
    build_table_with(genera, orientable, &opts)
}

pub fn build_table_with(
    genera: RangeInclusive<u32>,
    orientable: bool,
    opts: &ParamOptions,
) -> crate::Result<Vec<TableRow>> {
    let mut jobs = Vec::new();
    for g in genera {
        hypgeo::check_genus(g, orientable)?;
        let m_max = default_m_max(hypgeo::euler_characteristic(g, orientable));
        for sig in enumerate_signatures(g, orientable, m_max) {
            jobs.push((g, sig));
        }
    }
    let rows: Vec<crate::Result<TableRow>> = jobs
        .par_iter()
        .map(|&(genus, sig)| {
            let rep = floquet::code_params_with(sig, genus, orientable, opts).map_err(|e| {
                CatalogError::Row {
                    genus,
                    kind: kind(orientable),
                    sig,
                    source: Box::new(e),
                }
            })?;
            Ok(TableRow {
                genus,
                orientable,
                signature: sig,
                params: rep.params,
                convention_tag: rep.convention_tag,
            })
        })
        .collect();
    rows.into_iter().collect()
}

pub fn write_csv<W: io::Write>(rows: &[TableRow], out: W) -> Result<(), CatalogError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(CsvRecord {
            genus: r.genus,
            orientable: r.orientable,
            signature: r.signature.to_string(),
            n: r.params.n,
            k: r.params.k,
            d: r.params.d,
            d_source: r.d_source_label(),
            k_n: r.params.k_n.to_string(),
            kd2_n: r.params.kd2_n.to_string(),
            d_n: r.params.d_n.to_string(),
        })
        .map_err(|e| CatalogError::Output(e.to_string()))?;
    }
    if rows.is_empty() {
        w.write_record(["genus", "orientable", "signature", "n", "k", "d", "d_source", "k_n", "kd2_n", "d_n"])
            .map_err(|e| CatalogError::Output(e.to_string()))?;
    }
    w.flush().map_err(|e| CatalogError::Output(e.to_string()))
}

pub fn to_csv(rows: &[TableRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn to_json(rows: &[TableRow]) -> String {
    let recs: Vec<JsonRecord> = rows
        .iter()
        .map(|r| JsonRecord {
            genus: r.genus,
            orientable: r.orientable,
            signature: r.signature.to_string(),
            n: r.params.n,
            k: r.params.k,
            d: r.params.d,
            d_source: r.params.d_source,
            convention_tag: &r.convention_tag,
            k_n: r.params.k_n,
            kd2_n: r.params.kd2_n,
            d_n: r.params.d_n,
        })
        .collect();
    serde_json::to_string_pretty(&recs).expect("rows serialize")
}

/// Side-by-side values of one signature on orientable genus `h` and
/// non-orientable genus `2h`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceRow {
    pub signature: String,
    pub orientable: [usize; 3],
    pub non_orientable: [usize; 3],
    pub d_sources: [DSource; 2],
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub h: u32,
    pub systole_orientable: f64,
    pub systole_non_orientable: f64,
    pub rows: Vec<EquivalenceRow>,
    pub mismatches: Vec<String>,
}

impl EquivalenceReport {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// For every signature admissible on orientable genus `h`, compares
/// `(n, k)` and, when both come from the same source, `d` with the
/// non-orientable genus `2h`. Mismatches are listed, never dropped.
pub fn equivalence_check(h: u32) -> crate::Result<EquivalenceReport> {
    hypgeo::check_genus(h, true)?;
    let g = 2 * h;
    let so = hypgeo::systole(h, true)?;
    let sn = hypgeo::systole(g, false)?;
    let mut mismatches = Vec::new();
    if (so - sn).abs() > 1e-12 {
        mismatches.push(format!("systoles differ: {so} vs {sn}"));
    }
    let m_max = default_m_max(hypgeo::euler_characteristic(h, true));
    let sigs = enumerate_signatures(h, true, m_max);
    let pairs: Vec<crate::Result<(SemiRegularSig, floquet::ParamsReport, floquet::ParamsReport)>> = sigs
        .par_iter()
        .map(|&sig| {
            let opts = ParamOptions::default();
            let o = floquet::code_params_with(sig, h, true, &opts)?;
            let n = floquet::code_params_with(sig, g, false, &opts)?;
            Ok((sig, o, n))
        })
        .collect();
    let mut rows = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let (sig, o, n) = pair?;
        let (po, pn) = (o.params, n.params);
        let mut matches = po.n == pn.n && po.k == pn.k;
        if po.d_source == pn.d_source {
            matches &= po.d == pn.d;
        }
        if !matches {
            mismatches.push(format!("{sig}: {po} on orientable genus {h} vs {pn} on non-orientable genus {g}"));
        }
        rows.push(EquivalenceRow {
            signature: sig.to_string(),
            orientable: [po.n, po.k, po.d],
            non_orientable: [pn.n, pn.k, pn.d],
            d_sources: [po.d_source, pn.d_source],
            matches,
        });
    }
    Ok(EquivalenceReport {
        h,
        systole_orientable: so,
        systole_non_orientable: sn,
        rows,
        mismatches,
    })
}

/// Published `[[n,k,d]]` of one signature on one surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub group: String,
    pub genus: u32,
    pub orientable: bool,
    pub signature: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

impl ReferenceRow {
    pub fn sig(&self) -> Result<SemiRegularSig, CatalogError> {
        parse_signature(&self.signature)
    }
}

/// Parses `[a,b,c]` (spaces allowed).
pub fn parse_signature(text: &str) -> Result<SemiRegularSig, CatalogError> {
    let bad = || CatalogError::Reference(format!("bad signature {text:?}"));
    let inner = text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
    let parts: Vec<u32> = inner
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let m: [u32; 3] = parts.try_into().map_err(|_| bad())?;
    SemiRegularSig::new(m).map_err(|e| CatalogError::Reference(e.to_string()))
}

pub fn read_reference<R: io::Read>(input: R) -> Result<Vec<ReferenceRow>, CatalogError> {
    csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(|e| CatalogError::Reference(e.to_string())))
        .collect()
}

/// Estimated versus published distance of one reference row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub group: String,
    pub genus: u32,
    pub orientable: bool,
    pub signature: String,
    pub published_d: usize,
    pub estimated_d: usize,
    pub deviation: i64,
    pub convention_tag: String,
    pub within_tolerance: bool,
}

/// Geometric estimate for every reference row, with the signed deviation
/// from the published distance.
pub fn distance_deviations(rows: &[ReferenceRow], tolerance: i64) -> Result<Vec<Deviation>, CatalogError> {
    rows.iter()
        .map(|r| {
            let sig = r.sig()?;
            let est = geodist::estimate_distance(sig, r.genus, r.orientable).map_err(|e| CatalogError::Row {
                genus: r.genus,
                kind: kind(r.orientable),
                sig,
                source: Box::new(e.into()),
            })?;
            let deviation = est.d as i64 - r.d as i64;
            Ok(Deviation {
                group: r.group.clone(),
                genus: r.genus,
                orientable: r.orientable,
                signature: r.signature.clone(),
                published_d: r.d,
                estimated_d: est.d,
                deviation,
                convention_tag: est.convention_tag,
                within_tolerance: deviation.abs() <= tolerance,
            })
        })
        .collect()
}

/// `k / n` in exact arithmetic from the genus rule for `k` and
/// `n = chi / (sum 1/m_i - 1/2)`, without requiring `n` to be integral.
pub fn rate_exact(sig: SemiRegularSig, genus: u32, orientable: bool) -> Ratio<i128> {
    let chi = hypgeo::euler_characteristic(genus, orientable) as i128;
    let [a, b, c] = sig.sizes().map(|x| x as i128);
    let curvature = Ratio::new(1, a) + Ratio::new(1, b) + Ratio::new(1, c) - Ratio::new(1, 2);
    let n = Ratio::from_integer(chi) / curvature;
    Ratio::from_integer(floquet::k_rule(genus, orientable) as i128) / n
}

/// Published closed form for `[6,6,p]`: `(g/(g-1)) (p-3)/(3p)`.
pub fn rate_66p_closed_form(genus: i128, p: i128) -> Ratio<i128> {
    Ratio::new(genus, genus - 1) * Ratio::new(p - 3, 3 * p)
}

/// Published closed form for `[2p,2p,2q]`: `(g/(g-1)) (pq-p-2q)/(pq)`.
pub fn rate_2p2p2q_closed_form(genus: i128, p: i128, q: i128) -> Ratio<i128> {
    Ratio::new(genus, genus - 1) * Ratio::new(p * q - p - 2 * q, p * q)
}

/// Convert an exact ratio to `f64`.
pub fn ratio_to_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
