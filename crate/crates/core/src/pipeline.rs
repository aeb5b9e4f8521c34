//! End-to-end verification runs: build the field and defining set, compute
//! the empirical distribution through the transform, evaluate the closed
//! forms, run every check, and emit a serializable report.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::code::{
    build_defining_set, count_zero_coordinates, cross_check_weights, default_t,
    dual_min_distance_upto4, is_minimal_exhaustive, weight_distribution, weight_table_full,
    CodeFamily, DefiningSet, WeightTable,
};
use crate::cyclotomic::{compute_s, kloosterman_subfield, CycInt};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, SubsetTables};
use crate::oracle::{
    ashikhmin_barg, bound_checks, compare, pless_check, predict_cd, predict_cd1, predict_cd2,
    BoundReport, CompareVerdict, PredictedDistribution,
};
use crate::transform::DEFAULT_BUDGET;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Cd,
    Cd1,
    Cd2,
}

impl FamilyKind {
    pub fn parse(s: &str) -> Result<FamilyKind> {
        match s {
            "cd" => Ok(FamilyKind::Cd),
            "cd1" => Ok(FamilyKind::Cd1),
            "cd2" => Ok(FamilyKind::Cd2),
            other => Err(Error::InvalidConfig(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: u32,
    pub t: u32,
    pub poly: Option<Vec<u32>>,
    pub family: FamilyKind,
    /// Module rank for cd1; defaults to m - 1.
    pub r: Option<u32>,
    /// Explicit α-exponents for the cd1 module basis; overrides `r`.
    pub t_basis: Option<Vec<u64>>,
    pub budget: u64,
    pub cache_dir: Option<PathBuf>,
    pub allow_small_t: bool,
    pub seed: u64,
    /// Codewords to cross-check against direct counting when the pair space
    /// is too large for an exhaustive pass.
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            t: 3,
            poly: None,
            family: FamilyKind::Cd,
            r: None,
            t_basis: None,
            budget: DEFAULT_BUDGET,
            cache_dir: None,
            allow_small_t: false,
            seed: 0,
            samples: 1000,
        }
    }
}

impl RunConfig {
    pub fn build_field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.p, self.t, self.poly.as_deref(), self.allow_small_t)
    }

    pub fn build_family(&self, field: &FieldSpec) -> Result<CodeFamily> {
        match self.family {
            FamilyKind::Cd => Ok(CodeFamily::Cd),
            FamilyKind::Cd2 => Ok(CodeFamily::Cd2),
            FamilyKind::Cd1 => {
                let basis = if let Some(exps) = &self.t_basis {
                    let b: Vec<_> = exps.iter().map(|&e| field.alpha_pow(e)).collect();
                    crate::code::validate_t_basis(field, &b)?;
                    b
                } else {
                    let r = self.r.unwrap_or(field.m - 1);
                    default_t(field, r)?
                };
                Ok(CodeFamily::Cd1 { t_basis: basis })
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SBranches {
    pub direct: i64,
    pub series: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub wmin: u32,
    pub wmax: u32,
    pub ratio_pass: bool,
    pub exhaustive: Option<bool>,
    pub exhaustive_skip_reason: Option<String>,
    /// Minimality is only expected of cd1/cd2; for cd the report is
    /// informational and does not gate the verdict.
    pub counts_toward_verdict: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChecksReport {
    pub compare: CompareVerdict,
    pub pless: bool,
    pub bounds: BoundReport,
    pub no_zero_coordinate: bool,
    /// (p-1) times the identically-zero coordinate count; folded into the
    /// Pless check and the cd2 frequency prediction. Zero coordinates can
    /// genuinely occur for cd2 (e.g. p=3, t=3), so for that family the flag
    /// above is informational only.
    pub a1_dual: u64,
    pub zero_coordinate_counts_toward_verdict: bool,
    pub cross_check_samples: usize,
    pub cross_check_pass: bool,
    pub minimality: MinimalityReport,
    pub dual_distance: Option<u32>,
    pub dual_distance_skip_reason: Option<String>,
}

impl ChecksReport {
    pub fn all_pass(&self) -> bool {
        self.compare.pass
            && self.pless
            && self.bounds.pass()
            && (!self.zero_coordinate_counts_toward_verdict || self.no_zero_coordinate)
            && self.cross_check_pass
            && (!self.minimality.counts_toward_verdict
                || (self.minimality.ratio_pass && self.minimality.exhaustive != Some(false)))
            && self
                .dual_distance
                .map_or(self.dual_distance_skip_reason.is_some(), |d| (2..=4).contains(&d))
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Timings {
    pub field_ms: u64,
    pub transform_ms: u64,
    pub checks_ms: u64,
    pub total_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportParams {
    pub p: u32,
    pub t: u32,
    pub m: u32,
    pub q: u32,
    pub poly: Vec<u32>,
    pub family: FamilyKind,
    pub n: u32,
    pub k: u32,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: ReportParams,
    pub s_value: SBranches,
    pub empirical: Vec<(u32, u64)>,
    pub predicted: Vec<(u32, u64)>,
    pub checks: ChecksReport,
    pub timings: Timings,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.all_pass()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// "weight,frequency,source" rows, empirical then predicted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,frequency,source\n");
        for &(w, f) in &self.empirical {
            out.push_str(&format!("{w},{f},empirical\n"));
        }
        for &(w, f) in &self.predicted {
            out.push_str(&format!("{w},{f},predicted\n"));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        out.push_str(&format!(
            "family {:?} over GF({}^{}) (p={}, t={}): [{}, {}] code\n",
            p.family, p.p, p.m, p.p, p.t, p.n, p.k
        ));
        out.push_str(&format!(
            "S = {} (direct) = {} (Kloosterman series)\n",
            self.s_value.direct, self.s_value.series
        ));
        out.push_str("weight distribution (weight: empirical / predicted):\n");
        let pred: std::collections::BTreeMap<u32, u64> = self.predicted.iter().copied().collect();
        for &(w, f) in &self.empirical {
            out.push_str(&format!(
                "  {w}: {f} / {}\n",
                pred.get(&w).copied().unwrap_or(0)
            ));
        }
        let c = &self.checks;
        out.push_str(&format!("compare: {}\n", pass_str(c.compare.pass)));
        for diff in &c.compare.diffs {
            out.push_str(&format!("  diff: {diff}\n"));
        }
        out.push_str(&format!("pless moments: {}\n", pass_str(c.pless)));
        out.push_str(&format!(
            "bounds: {} (|K| max {:.6} <= {:.6}, |S| {} <= {:.6})\n",
            pass_str(c.bounds.pass()),
            c.bounds.kloosterman_max,
            c.bounds.kloosterman_bound,
            c.bounds.s_abs,
            c.bounds.s_bound
        ));
        out.push_str(&format!(
            "zero-coordinate check: {}\n",
            pass_str(c.no_zero_coordinate)
        ));
        out.push_str(&format!(
            "transform vs direct count: {} ({} codewords checked)\n",
            pass_str(c.cross_check_pass),
            c.cross_check_samples
        ));
        let m = &c.minimality;
        out.push_str(&format!(
            "minimality ratio {}/{}: {}{}\n",
            m.wmin,
            m.wmax,
            pass_str(m.ratio_pass),
            if m.counts_toward_verdict { "" } else { " (informational)" }
        ));
        match (&m.exhaustive, &m.exhaustive_skip_reason) {
            (Some(v), _) => out.push_str(&format!("minimality exhaustive: {}\n", pass_str(*v))),
            (None, Some(reason)) => {
                out.push_str(&format!("minimality exhaustive: skipped ({reason})\n"))
            }
            (None, None) => {}
        }
        match (c.dual_distance, &c.dual_distance_skip_reason) {
            (Some(d), _) => out.push_str(&format!("dual distance: {d}\n")),
            (None, Some(reason)) => out.push_str(&format!("dual distance: skipped ({reason})\n")),
            (None, None) => {}
        }
        out.push_str(&format!(
            "verdict: {}\n",
            if self.all_pass() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn pass_str(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

const CACHE_MAGIC: &[u8; 8] = b"FWLWT01\n";

fn cache_path(dir: &Path, field: &FieldSpec) -> PathBuf {
    let mut hasher = DefaultHasher::new();
    field.poly.hash(&mut hasher);
    dir.join(format!(
        "wt_p{}_t{}_{:016x}.bin",
        field.p,
        field.t,
        hasher.finish()
    ))
}

fn store_cache(path: &Path, field: &FieldSpec, table: &WeightTable) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(CACHE_MAGIC)?;
        f.write_all(&field.p.to_le_bytes())?;
        f.write_all(&field.t.to_le_bytes())?;
        f.write_all(&(field.poly.len() as u32).to_le_bytes())?;
        for &c in &field.poly {
            f.write_all(&c.to_le_bytes())?;
        }
        f.write_all(&table.n.to_le_bytes())?;
        for &w in &table.weights {
            f.write_all(&w.to_le_bytes())?;
        }
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn load_cache(path: &Path, field: &FieldSpec) -> Option<WeightTable> {
    let mut f = std::fs::File::open(path).ok()?;
    let mut buf = Vec::new();
    f.read_to_end(&mut buf).ok()?;
    let mut off = 0usize;
    let take4 = |buf: &[u8], off: &mut usize| -> Option<u32> {
        let v = u32::from_le_bytes(buf.get(*off..*off + 4)?.try_into().ok()?);
        *off += 4;
        Some(v)
    };
    if buf.get(..8)? != CACHE_MAGIC {
        return None;
    }
    off += 8;
    if take4(&buf, &mut off)? != field.p || take4(&buf, &mut off)? != field.t {
        return None;
    }
    let poly_len = take4(&buf, &mut off)? as usize;
    if poly_len != field.poly.len() {
        return None;
    }
    for &c in &field.poly {
        if take4(&buf, &mut off)? != c {
            return None;
        }
    }
    let n = take4(&buf, &mut off)?;
    let count = (field.q as usize) * (field.q as usize);
    let mut weights = Vec::with_capacity(count);
    for _ in 0..count {
        weights.push(take4(&buf, &mut off)?);
    }
    (off == buf.len()).then_some(WeightTable {
        q: field.q,
        n,
        weights,
    })
}

/// Transform-backed weight table, consulting the cache directory if set.
pub fn weight_table_cached(
    config: &RunConfig,
    field: &FieldSpec,
    d: &DefiningSet,
) -> Result<WeightTable> {
    let path = config.cache_dir.as_ref().map(|dir| cache_path(dir, field));
    if let Some(path) = &path {
        if let Some(table) = load_cache(path, field) {
            if table.n == d.len() as u32 {
                return Ok(table);
            }
        }
    }
    let table = weight_table_full(field, d, config.budget)?;
    if let Some(path) = &path {
        store_cache(path, field, &table)?;
    }
    Ok(table)
}

/// Exhaustive-scan guard for minimality, the spec's 2^13 codeword cap.
pub const MINIMALITY_GUARD: u128 = 1 << 13;

pub fn run_verify(config: &RunConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let field = config.build_field()?;
    let tables = SubsetTables::build(&field)?;
    let family = config.build_family(&field)?;
    let field_ms = start.elapsed().as_millis() as u64;

    let t0 = Instant::now();
    let d = build_defining_set(&field);
    let table = weight_table_cached(config, &field, &d)?;
    let transform_ms = t0.elapsed().as_millis() as u64;

    let t0 = Instant::now();
    let s = compute_s(&field, &tables)?;
    let empirical = weight_distribution(&field, &family, &table)?;
    let zero_coords = count_zero_coordinates(&field, &family, &d);
    let a1_dual = (field.p as u64 - 1) * zero_coords as u64;
    let predicted: PredictedDistribution = match &family {
        CodeFamily::Cd => predict_cd(&field, s.direct)?,
        CodeFamily::Cd1 { t_basis } => predict_cd1(&field, t_basis.len() as u32)?,
        CodeFamily::Cd2 => predict_cd2(&field, s.direct, a1_dual)?,
    };
    let compare_verdict = compare(&empirical, &predicted);

    // transform vs direct-count cross-check: exhaustive at small sizes,
    // seeded samples otherwise
    let q = field.q as u64;
    let pair_count = q * q;
    let sample_pairs: Vec<_> = if pair_count <= 1 << 12 {
        field
            .elements()
            .flat_map(|a| field.elements().map(move |b| (a, b)))
            .collect()
    } else {
        let mut state = config.seed ^ 0x5bf0_3df4;
        (0..config.samples)
            .map(|_| {
                let a = crate::field::FieldElement((splitmix64(&mut state) % q) as u32);
                let b = crate::field::FieldElement((splitmix64(&mut state) % q) as u32);
                (a, b)
            })
            .collect()
    };
    let cross_check = cross_check_weights(&field, &d, &table, &sample_pairs);

    let pless = pless_check(field.p, &empirical, a1_dual);

    let k_samples: Vec<CycInt> = tables
        .subfield_star
        .iter()
        .map(|&a| kloosterman_subfield(&field, &tables, a))
        .collect::<Result<_>>()?;
    let bounds = bound_checks(&field, s.direct, &k_samples);

    let wmin = empirical.min_nonzero_weight().unwrap_or(0);
    let wmax = empirical.max_weight().unwrap_or(0);
    let ratio_pass = ashikhmin_barg(field.p, &empirical);
    let counts_toward_verdict = !matches!(family, CodeFamily::Cd);
    let codewords = (field.p as u128).pow(empirical.k);
    let (exhaustive, exhaustive_skip_reason) = if codewords <= MINIMALITY_GUARD {
        match is_minimal_exhaustive(&field, &family, &d)? {
            None => (Some(true), None),
            Some(_) => (Some(false), None),
        }
    } else {
        (
            None,
            Some(format!(
                "p^k = {codewords} exceeds exhaustive guard {MINIMALITY_GUARD}; ratio criterion applies"
            )),
        )
    };
    let minimality = MinimalityReport {
        wmin,
        wmax,
        ratio_pass,
        exhaustive,
        exhaustive_skip_reason,
        counts_toward_verdict,
    };

    let (dual_distance, dual_distance_skip_reason) = match family {
        CodeFamily::Cd => (Some(dual_min_distance_upto4(&field, &d)?), None),
        _ => (None, Some("dual-distance interval is stated for family cd".into())),
    };
    let checks_ms = t0.elapsed().as_millis() as u64;

    let report = VerificationReport {
        params: ReportParams {
            p: field.p,
            t: field.t,
            m: field.m,
            q: field.q,
            poly: field.poly.clone(),
            family: config.family,
            n: table.n,
            k: empirical.k,
            seed: config.seed,
        },
        s_value: SBranches {
            direct: s.direct,
            series: s.series,
        },
        empirical: empirical.entries.iter().map(|(&w, &f)| (w, f)).collect(),
        predicted: predicted
            .as_map()
            .iter()
            .map(|(&w, &f)| (w, f))
            .collect(),
        checks: ChecksReport {
            compare: compare_verdict,
            pless,
            bounds,
            no_zero_coordinate: zero_coords == 0,
            a1_dual,
            zero_coordinate_counts_toward_verdict: !matches!(family, CodeFamily::Cd2),
            cross_check_samples: sample_pairs.len(),
            cross_check_pass: cross_check.is_ok(),
            minimality,
            dual_distance,
            dual_distance_skip_reason,
        },
        timings: Timings {
            field_ms,
            transform_ms,
            checks_ms,
            total_ms: start.elapsed().as_millis() as u64,
        },
    };
    Ok(report)
}
