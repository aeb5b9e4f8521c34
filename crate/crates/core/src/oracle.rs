//! Closed-form predictions: the C_D and C_D2 weight tables, the constant
//! weight of C_D1, the four-case codeword-zero count N(a, b), Pless power
//! moments, magnitude bounds, and the minimality ratio.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::WeightDistribution;
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, SubsetTables};

#[derive(Clone, Debug, Serialize)]
pub struct PredictedEntry {
    pub label: &'static str,
    pub weight: u64,
    pub frequency: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictedDistribution {
    pub entries: Vec<PredictedEntry>,
    pub s: i64,
    pub p: u32,
    pub t: u32,
    pub k: u32,
}

impl PredictedDistribution {
    /// Weight → frequency map, merging entries that land on the same weight.
    pub fn as_map(&self) -> BTreeMap<u32, u64> {
        let mut map = BTreeMap::new();
        for e in &self.entries {
            if e.frequency > 0 {
                *map.entry(e.weight as u32).or_insert(0u64) += e.frequency;
            }
        }
        map
    }

    fn check_total(&self) -> Result<()> {
        let total: u128 = self.entries.iter().map(|e| e.frequency as u128).sum();
        let expected = (self.p as u128).pow(self.k);
        if total != expected {
            return Err(Error::DimensionMismatch {
                total,
                expected,
            });
        }
        Ok(())
    }
}

fn ipow(p: u32, e: u32) -> i128 {
    (p as i128).pow(e)
}

fn exact_div(num: i128, den: i128) -> Result<u64> {
    if num % den != 0 {
        return Err(Error::NonIntegralFrequency(num, den));
    }
    let v = num / den;
    u64::try_from(v).map_err(|_| Error::NonIntegralFrequency(num, den))
}

struct TableWeights {
    w1: i128,
    w2: i128,
    w3: i128,
    w4: i128,
}

fn table_weights(field: &FieldSpec, s: i64) -> TableWeights {
    let (p, m, t) = (field.p, field.m, field.t);
    let s = s as i128;
    let pm1 = (p - 1) as i128;
    let base = (ipow(p, 2 * m - 2) - ipow(p, m - 2)) * pm1;
    TableWeights {
        w1: ipow(p, 2 * m - 2) * pm1,
        w2: base - ipow(p, m - 2) * (ipow(p, t) - 1) * s,
        w3: base - ipow(p, m - 2) * (ipow(p, t) * pm1 - s),
        w4: base + ipow(p, m - 2) * (ipow(p, t) + s),
    }
}

/// Four-weight closed-form prediction for C_D.
pub fn predict_cd(field: &FieldSpec, s: i64) -> Result<PredictedDistribution> {
    let (p, m, t) = (field.p, field.m, field.t);
    let w = table_weights(field, s);
    let si = s as i128;
    let pm1 = (p - 1) as i128;
    let f1 = ipow(p, m) * (ipow(p, m) - p as i128 + 1) - 1;
    let f2 = pm1;
    let shared = (ipow(p, t + 1) - ipow(p, t) - p as i128 + 1) * si;
    let f3 = exact_div(pm1 * (ipow(p, m) - 1) + shared, p as i128)?;
    let f4 = exact_div(
        (ipow(p, 2) - 2 * p as i128 + 1) * (ipow(p, m) - 1) - shared,
        p as i128,
    )?;

    let dist = PredictedDistribution {
        entries: vec![
            PredictedEntry { label: "w0", weight: 0, frequency: 1 },
            PredictedEntry { label: "w1", weight: w.w1 as u64, frequency: f1 as u64 },
            PredictedEntry { label: "w2", weight: w.w2 as u64, frequency: f2 as u64 },
            PredictedEntry { label: "w3", weight: w.w3 as u64, frequency: f3 },
            PredictedEntry { label: "w4", weight: w.w4 as u64, frequency: f4 },
        ],
        s,
        p,
        t,
        k: 2 * m,
    };
    dist.check_total()?;
    Ok(dist)
}

/// Constant-weight prediction for C_D1 with |T| = p^r.
pub fn predict_cd1(field: &FieldSpec, r: u32) -> Result<PredictedDistribution> {
    if r == 0 || r > field.m - 1 {
        return Err(Error::InvalidConfig(format!(
            "r = {r} outside 1..={}",
            field.m - 1
        )));
    }
    let (p, m, t) = (field.p, field.m, field.t);
    let weight = (ipow(p, 2 * m - 2) * (p - 1) as i128) as u64;
    let dist = PredictedDistribution {
        entries: vec![
            PredictedEntry { label: "w0", weight: 0, frequency: 1 },
            PredictedEntry {
                label: "w1",
                weight,
                frequency: (ipow(p, m + r) - 1) as u64,
            },
        ],
        s: 0,
        p,
        t,
        k: m + r,
    };
    dist.check_total()?;
    Ok(dist)
}

/// Three-weight closed-form prediction for C_D2; w_2 is absent.
///
/// The base frequencies assume the dual code has no weight-1 words. When the
/// subspace annihilator lands inside D the code picks up identically-zero
/// coordinates (seen at p=3, t=3) and the Pless moments force a shift of
/// `a1_dual * p^{t-1}` codewords from w_4 to w_3; `a1_dual` is the number of
/// weight-1 dual codewords, i.e. (p-1) times the zero-coordinate count.
pub fn predict_cd2(field: &FieldSpec, s: i64, a1_dual: u64) -> Result<PredictedDistribution> {
    let (p, m, t) = (field.p, field.m, field.t);
    if t < 2 {
        return Err(Error::InvalidConfig(
            "cd2 frequencies need t >= 2 for the p^{t-2} factor".into(),
        ));
    }
    let w = table_weights(field, s);
    let si = s as i128;
    let pm1 = (p - 1) as i128;
    let shift = a1_dual as i128 * ipow(p, t - 1);
    let f1 = ipow(p, 2 * m - 1) - 1 - ipow(p, m - 1) * pm1;
    let f3 = pm1 * (ipow(p, t) + si - p as i128 + 1) * ipow(p, t - 2) + shift;
    let f4 = pm1 * (ipow(p, t + 1) - ipow(p, t) + p as i128 - 1 - si) * ipow(p, t - 2) - shift;
    for f in [f1, f3, f4] {
        if f < 0 {
            return Err(Error::NonIntegralFrequency(f, 1));
        }
    }

    let dist = PredictedDistribution {
        entries: vec![
            PredictedEntry { label: "w0", weight: 0, frequency: 1 },
            PredictedEntry { label: "w1", weight: w.w1 as u64, frequency: f1 as u64 },
            PredictedEntry { label: "w3", weight: w.w3 as u64, frequency: f3 as u64 },
            PredictedEntry { label: "w4", weight: w.w4 as u64, frequency: f4 as u64 },
        ],
        s,
        p,
        t,
        k: 2 * m - 1,
    };
    dist.check_total()?;
    Ok(dist)
}

/// The four cases of the codeword-zero count N(a, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairClass {
    ANotUnit,
    BZero,
    VbTraceZero,
    VbTraceNonzero,
}

pub fn classify_pair(
    field: &FieldSpec,
    tables: &SubsetTables,
    a: FieldElement,
    b: FieldElement,
) -> Result<PairClass> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPair);
    }
    if a.is_zero() || a.0 >= field.p {
        return Ok(PairClass::ANotUnit);
    }
    if b.is_zero() {
        return Ok(PairClass::BZero);
    }
    let vb = field.find_v(tables, b)?;
    let probe = field.pow(vb, field.pt() as u64 - 1);
    Ok(if field.abs_trace(probe) == 0 {
        PairClass::VbTraceZero
    } else {
        PairClass::VbTraceNonzero
    })
}

pub fn predict_n(field: &FieldSpec, class: PairClass, s: i64) -> i128 {
    let (p, m, t) = (field.p, field.m, field.t);
    let si = s as i128;
    let pm1 = (p - 1) as i128;
    let base = ipow(p, 2 * m - 2) - 1;
    match class {
        PairClass::ANotUnit => base,
        PairClass::BZero => base + ipow(p, m - 2) * pm1 + ipow(p, m - 2) * (ipow(p, t) - 1) * si,
        PairClass::VbTraceZero => {
            base + (ipow(p, m - 2) + ipow(p, m + t - 2)) * pm1 - ipow(p, m - 2) * si
        }
        PairClass::VbTraceNonzero => {
            base + ipow(p, m - 2) * pm1 - ipow(p, m + t - 2) - ipow(p, m - 2) * si
        }
    }
}

/// First two Pless power moments with the dual's A_1 supplied.
pub fn pless_check(p: u32, dist: &WeightDistribution, a1_dual: u64) -> bool {
    let first: u128 = dist.total();
    let expected_first = (p as u128).pow(dist.k);
    let second: i128 = dist
        .entries
        .iter()
        .map(|(&w, &f)| w as i128 * f as i128)
        .sum();
    let n = dist.n as i128;
    // p^{k-1}·(pn - n - A_1^⊥), written as p^k·(...)/p so k = 0 stays sound
    let numerator = (p as i128).pow(dist.k) * (p as i128 * n - n - a1_dual as i128);
    first == expected_first && numerator % p as i128 == 0 && second == numerator / p as i128
}

pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub kloosterman_bound: f64,
    pub kloosterman_max: f64,
    pub kloosterman_pass: bool,
    pub s_bound: f64,
    pub s_abs: f64,
    pub s_pass: bool,
}

impl BoundReport {
    pub fn pass(&self) -> bool {
        self.kloosterman_pass && self.s_pass
    }
}

/// |K_t(a)| ≤ 2√(p^t) over the supplied nonzero samples, and |S| ≤ 2(p-1)√(p^t).
pub fn bound_checks(field: &FieldSpec, s: i64, kloosterman_samples: &[CycInt]) -> BoundReport {
    let root = (field.pt() as f64).sqrt();
    let k_bound = 2.0 * root;
    let k_max = kloosterman_samples
        .iter()
        .map(|k| k.abs())
        .fold(0.0f64, f64::max);
    let s_bound = 2.0 * (field.p as f64 - 1.0) * root;
    let s_abs = (s as f64).abs();
    BoundReport {
        kloosterman_bound: k_bound,
        kloosterman_max: k_max,
        kloosterman_pass: k_max <= k_bound + BOUND_SLACK,
        s_bound,
        s_abs,
        s_pass: s_abs <= s_bound + BOUND_SLACK,
    }
}

/// Ashikhmin–Barg sufficient condition, compared in exact integers.
pub fn ashikhmin_barg(p: u32, dist: &WeightDistribution) -> bool {
    let (Some(wmin), Some(wmax)) = (dist.min_nonzero_weight(), dist.max_weight()) else {
        return false;
    };
    wmin as u64 * p as u64 > wmax as u64 * (p as u64 - 1)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompareVerdict {
    pub pass: bool,
    pub diffs: Vec<String>,
}

/// Exact-equality comparison of an empirical distribution against a
/// predicted one, with a per-weight diff of any discrepancy.
pub fn compare(empirical: &WeightDistribution, predicted: &PredictedDistribution) -> CompareVerdict {
    let pred = predicted.as_map();
    let mut diffs = Vec::new();
    let weights: std::collections::BTreeSet<u32> = empirical
        .entries
        .keys()
        .chain(pred.keys())
        .copied()
        .collect();
    for w in weights {
        let e = empirical.entries.get(&w).copied().unwrap_or(0);
        let p = pred.get(&w).copied().unwrap_or(0);
        if e != p {
            diffs.push(format!("weight {w}: empirical {e} != predicted {p}"));
        }
    }
    CompareVerdict {
        pass: diffs.is_empty(),
        diffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_defining_set, weight_distribution, weight_table_full, CodeFamily};
    use crate::cyclotomic::{compute_s, kloosterman_subfield};
    use crate::transform::DEFAULT_BUDGET;

    fn gf64() -> (FieldSpec, SubsetTables) {
        let f = FieldSpec::new(2, 3, None, false).unwrap();
        let t = SubsetTables::build(&f).unwrap();
        (f, t)
    }

    #[test]
    fn predict_cd_example_3_2() {
        let (f, _) = gf64();
        let dist = predict_cd(&f, 5).unwrap();
        let expected: BTreeMap<u32, u64> =
            [(0, 1), (448, 1), (960, 49), (1024, 4031), (1216, 14)].into();
        assert_eq!(dist.as_map(), expected);
        let total: u64 = dist.entries.iter().map(|e| e.frequency).sum();
        assert_eq!(total, 4096);
        // four positive, pairwise distinct nonzero weights
        let weights: Vec<u64> = dist.entries.iter().skip(1).map(|e| e.weight).collect();
        let mut dedup = weights.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), 4);
        assert!(weights.iter().all(|&w| w > 0));
    }

    #[test]
    fn predict_cd1_example_3_4() {
        let (f, _) = gf64();
        let dist = predict_cd1(&f, 5).unwrap();
        let expected: BTreeMap<u32, u64> = [(0, 1), (1024, 2047)].into();
        assert_eq!(dist.as_map(), expected);
        // the constant weight coincides with the cd w_1 formula
        assert_eq!(dist.entries[1].weight, predict_cd(&f, 5).unwrap().entries[1].weight);
    }

    #[test]
    fn predict_cd2_example_3_6() {
        let (f, _) = gf64();
        let dist = predict_cd2(&f, 5, 0).unwrap();
        let expected: BTreeMap<u32, u64> = [(0, 1), (960, 24), (1024, 2015), (1216, 8)].into();
        assert_eq!(dist.as_map(), expected);
        assert!(dist.entries.iter().all(|e| e.label != "w2"));
    }

    #[test]
    fn predict_cd2_zero_coordinate_shift() {
        // p=3, t=3: one identically-zero coordinate, so two weight-1 dual
        // words; 18 codewords move from w_4 to w_3 relative to the base table
        let f = FieldSpec::new(3, 3, None, false).unwrap();
        let base = predict_cd2(&f, -16, 0).unwrap();
        let shifted = predict_cd2(&f, -16, 2).unwrap();
        assert_eq!(base.as_map()[&112266] + 18, shifted.as_map()[&112266]);
        assert_eq!(base.as_map()[&118827] - 18, shifted.as_map()[&118827]);
        assert_eq!(base.as_map()[&118098], shifted.as_map()[&118098]);
        shifted.check_total().unwrap();
    }

    #[test]
    fn classify_and_predict_n() {
        let (f, tabs) = gf64();
        assert!(matches!(
            classify_pair(&f, &tabs, FieldElement::ZERO, FieldElement::ZERO),
            Err(Error::ZeroPair)
        ));
        let c = classify_pair(&f, &tabs, f.alpha(), FieldElement::ZERO).unwrap();
        assert_eq!(c, PairClass::ANotUnit);
        assert_eq!(predict_n(&f, c, 5), 1023);
        let c = classify_pair(&f, &tabs, FieldElement::ONE, FieldElement::ZERO).unwrap();
        assert_eq!(c, PairClass::BZero);
        assert_eq!(predict_n(&f, c, 5), 1023 + 16 + 560);
    }

    #[test]
    fn pair_class_prediction_exhaustive() {
        let (f, tabs) = gf64();
        let d = build_defining_set(&f);
        let table = weight_table_full(&f, &d, DEFAULT_BUDGET).unwrap();
        let s = compute_s(&f, &tabs).unwrap().direct;
        let n = d.len() as i128;
        for a in f.elements() {
            for b in f.elements() {
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                let class = classify_pair(&f, &tabs, a, b).unwrap();
                let predicted_weight = n - predict_n(&f, class, s);
                assert_eq!(
                    table.weight(a, b) as i128,
                    predicted_weight,
                    "a={} b={} class={class:?}",
                    a.0,
                    b.0
                );
            }
        }
    }

    #[test]
    fn pless_moments() {
        let (f, _) = gf64();
        let d = build_defining_set(&f);
        let table = weight_table_full(&f, &d, DEFAULT_BUDGET).unwrap();
        let dist = weight_distribution(&f, &CodeFamily::Cd, &table).unwrap();
        assert!(pless_check(2, &dist, 0));
        let dist2 = weight_distribution(&f, &CodeFamily::Cd2, &table).unwrap();
        assert!(pless_check(2, &dist2, 0));
        // trivial code {0}
        let trivial = WeightDistribution {
            entries: [(0u32, 1u64)].into(),
            k: 0,
            n: 5,
        };
        assert!(pless_check(2, &trivial, 5 * 1)); // second moment 0 = p^{-1}... forced
    }

    #[test]
    fn pless_symbolic_instantiation() {
        // Σ A = p^{2m}, Σ jA_j = (p-1) p^{2m-1} n for predicted tables
        for (p, t) in [(2u32, 3u32), (2, 4), (3, 3)] {
            let f = FieldSpec::new(p, t, None, false).unwrap();
            let tabs = SubsetTables::build(&f).unwrap();
            let s = compute_s(&f, &tabs).unwrap().direct;
            let dist = predict_cd(&f, s).unwrap();
            let n = ipow(p, 2 * f.m - 1) - 1;
            let total: i128 = dist.entries.iter().map(|e| e.frequency as i128).sum();
            assert_eq!(total, ipow(p, 2 * f.m));
            let second: i128 = dist
                .entries
                .iter()
                .map(|e| e.weight as i128 * e.frequency as i128)
                .sum();
            assert_eq!(second, (p as i128 - 1) * ipow(p, 2 * f.m - 1) * n);
        }
    }

    #[test]
    fn bounds_pass_at_example() {
        let (f, tabs) = gf64();
        let samples: Vec<CycInt> = tabs
            .subfield_star
            .iter()
            .map(|&a| kloosterman_subfield(&f, &tabs, a).unwrap())
            .collect();
        let report = bound_checks(&f, 5, &samples);
        assert!(report.pass());
        assert!((report.s_bound - 2.0 * 8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ashikhmin_barg_cases() {
        let (f, _) = gf64();
        let d = build_defining_set(&f);
        let table = weight_table_full(&f, &d, DEFAULT_BUDGET).unwrap();
        let cd2 = weight_distribution(&f, &CodeFamily::Cd2, &table).unwrap();
        assert!(ashikhmin_barg(2, &cd2)); // 960/1216 > 1/2
        let toy = WeightDistribution {
            entries: [(0u32, 1u64), (2, 1), (5, 2)].into(),
            k: 2,
            n: 5,
        };
        assert!(!ashikhmin_barg(2, &toy)); // 2/5 < 1/2
    }

    #[test]
    fn compare_detects_perturbation() {
        let (f, _) = gf64();
        let d = build_defining_set(&f);
        let table = weight_table_full(&f, &d, DEFAULT_BUDGET).unwrap();
        let dist = weight_distribution(&f, &CodeFamily::Cd, &table).unwrap();
        assert!(compare(&dist, &predict_cd(&f, 5).unwrap()).pass);
        // S = 6 cannot even produce a table at p = 2: (63 + 7S)/2 demands odd S
        assert!(matches!(
            predict_cd(&f, 6),
            Err(Error::NonIntegralFrequency(..))
        ));
        let verdict = compare(&dist, &predict_cd(&f, 7).unwrap());
        assert!(!verdict.pass);
        assert!(!verdict.diffs.is_empty());
    }
}
