//! Exact arithmetic in Z[ζ_p] and the character sums built on it:
//! Kloosterman sums K_l(a), the Δ-restricted sum, and the scalar S.
//!
//! A value is a length-p integer coefficient vector for Σ c_j ζ^j, kept in
//! the canonical form c_{p-1} = 0 via the relation 1 + ζ + ... + ζ^{p-1} = 0.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldSpec, SubsetTables};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(p: u32) -> CycInt {
        CycInt {
            p,
            coeffs: vec![0; p as usize],
        }
    }

    pub fn one(p: u32) -> CycInt {
        CycInt::integer(p, 1)
    }

    pub fn integer(p: u32, n: i64) -> CycInt {
        let mut coeffs = vec![0; p as usize];
        coeffs[0] = n;
        CycInt { p, coeffs }
    }

    /// ζ^e (exponent reduced mod p).
    pub fn zeta_pow(p: u32, e: u64) -> CycInt {
        let mut c = CycInt::zero(p);
        c.coeffs[(e % p as u64) as usize] = 1;
        c.canonicalize();
        c
    }

    pub fn from_coeffs(p: u32, coeffs: Vec<i64>) -> CycInt {
        assert_eq!(coeffs.len(), p as usize);
        let mut c = CycInt { p, coeffs };
        c.canonicalize();
        c
    }

    /// Histogram of character exponents: counts[j] occurrences of ζ^j.
    pub fn from_histogram(p: u32, counts: &[i64]) -> CycInt {
        CycInt::from_coeffs(p, counts.to_vec())
    }

    fn canonicalize(&mut self) {
        let last = self.coeffs[self.p as usize - 1];
        if last != 0 {
            for c in self.coeffs.iter_mut() {
                *c -= last;
            }
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_rational_integer(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.is_rational_integer().then(|| self.coeffs[0])
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt> {
        assert_eq!(self.p, other.p);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CycInt::from_coeffs(self.p, coeffs))
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, k: i64) -> Result<CycInt> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(CycInt::from_coeffs(self.p, coeffs))
    }

    pub fn mul(&self, other: &CycInt) -> Result<CycInt> {
        assert_eq!(self.p, other.p);
        let p = self.p as usize;
        let mut coeffs = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % p;
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                coeffs[k] = coeffs[k].checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(CycInt::from_coeffs(self.p, coeffs))
    }

    pub fn pow(&self, e: u32) -> Result<CycInt> {
        let mut acc = CycInt::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Numeric embedding at ζ = e^{2πi/p}; used only for magnitude bounds.
    pub fn abs(&self) -> f64 {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (j, &c) in self.coeffs.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / self.p as f64;
            re += c as f64 * theta.cos();
            im += c as f64 * theta.sin();
        }
        (re * re + im * im).sqrt()
    }
}

/// χ(x) = ζ^{Tr(x)} as a cyclotomic integer.
pub fn char_value(field: &Field, x: FieldElement) -> CycInt {
    CycInt::zeta_pow(field.p, field.abs_trace(x) as u64)
}

/// Kloosterman sum K_l(a) = Σ_{x ∈ F_{p^l}^*} χ_l(ax + 1/x), exact.
///
/// Builds a standalone degree-l field; `a` is a coordinate index into it.
pub fn kloosterman(p: u32, l: u32, a: FieldElement) -> Result<CycInt> {
    let field = Field::new(p, l, None)?;
    kloosterman_in(&field, a)
}

/// K_l(a) over an already-built field of degree l.
pub fn kloosterman_in(field: &Field, a: FieldElement) -> Result<CycInt> {
    let mut counts = vec![0i64; field.p as usize];
    for x in field.elements().skip(1) {
        let term = field.add(field.mul(a, x), field.inv(x)?);
        counts[field.abs_trace(term) as usize] += 1;
    }
    Ok(CycInt::from_histogram(field.p, &counts))
}

/// K_t(a) over the intermediate subfield F_{p^t} sitting inside GF(p^{2t}),
/// using the subfield's own trace evaluated in place.
pub fn kloosterman_subfield(spec: &FieldSpec, tables: &SubsetTables, a: FieldElement) -> Result<CycInt> {
    let mut counts = vec![0i64; spec.p as usize];
    for &x in &tables.subfield_star {
        let term = spec.add(spec.mul(a, x), spec.inv(x)?);
        counts[spec.subfield_trace_t(term)? as usize] += 1;
    }
    Ok(CycInt::from_histogram(spec.p, &counts))
}

fn binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        acc = acc * (n as i128 - i) / (i + 1);
    }
    acc
}

/// The always-integral coefficient t/(t-i) · C(t-i, i).
fn lift_coefficient(t: u32, i: u32) -> Result<i64> {
    let num = t as i128 * binomial(t - i, i);
    let den = (t - i) as i128;
    if num % den != 0 {
        return Err(Error::NonIntegerCoefficient { t, i });
    }
    i64::try_from(num / den).map_err(|_| Error::Overflow)
}

/// Lift K_1(a) to K_t(a):
/// K_t(a) = -Σ_{i=0}^{⌊t/2⌋} (-1)^{t-i} (t/(t-i)) C(t-i, i) p^i K_1(a)^{t-2i}.
pub fn kloosterman_lift(p: u32, t: u32, k1: &CycInt) -> Result<CycInt> {
    let mut sum = CycInt::zero(p);
    for i in 0..=t / 2 {
        let sign: i64 = if (t - i) % 2 == 0 { 1 } else { -1 };
        let coeff = lift_coefficient(t, i)?;
        let pi = (p as i64).checked_pow(i).ok_or(Error::Overflow)?;
        let term = k1
            .pow(t - 2 * i)?
            .scale(sign.checked_mul(coeff).ok_or(Error::Overflow)?)?
            .scale(pi)?;
        sum = sum.add(&term)?;
    }
    sum.scale(-1)
}

/// Σ_{x ∈ Δ} χ(ax), exact.
pub fn char_sum_over_delta(spec: &FieldSpec, tables: &SubsetTables, a: FieldElement) -> CycInt {
    let mut counts = vec![0i64; spec.p as usize];
    for &x in &tables.delta {
        counts[spec.abs_trace(spec.mul(a, x)) as usize] += 1;
    }
    CycInt::from_histogram(spec.p, &counts)
}

/// S with both computation branches; must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SValue {
    pub direct: i64,
    pub series: i64,
}

/// S = Σ_{z ∈ F_p^*} Σ_{x ∈ Δ} χ(zx), computed two independent ways:
/// (i) orthogonality collapses the z-sum to p·#{x ∈ Δ : Tr(x) = 0} - |Δ|;
/// (ii) the Kloosterman series Σ_i (-1)^{t-i} (t/(t-i)) C(t-i,i) p^i Σ_z K_1(z²)^{t-2i}.
pub fn compute_s(spec: &FieldSpec, tables: &SubsetTables) -> Result<SValue> {
    let p = spec.p;
    let trace_zero = tables.delta.iter().filter(|&&x| spec.abs_trace(x) == 0).count() as i64;
    let direct = p as i64 * trace_zero - tables.delta.len() as i64;

    let prime = Field::new(p, 1, None)?;
    let mut series_sum = CycInt::zero(p);
    for z in 1..p {
        let z2 = FieldElement((z * z) % p);
        let k1 = kloosterman_in(&prime, z2)?;
        // S picks up -K_t(z²) per z (the Δ-sum identity), and the lift
        // already carries the leading minus.
        series_sum = series_sum.add(&kloosterman_lift(p, spec.t, &k1)?.scale(-1)?)?;
    }
    let series = series_sum
        .as_integer()
        .ok_or_else(|| Error::Internal("series S is not a rational integer".into()))?;

    if direct != series {
        return Err(Error::InconsistentS { direct, series });
    }
    Ok(SValue { direct, series })
}
