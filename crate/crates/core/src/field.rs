//! Exact arithmetic in GF(p^m) with a fixed polynomial basis {1, α, ..., α^{m-1}}.
//!
//! Elements are stored as the base-p integer whose digits are the basis
//! coordinates, least-significant digit = coefficient of α^0. The residue
//! class of the indeterminate is required to generate the multiplicative
//! group, so log/antilog tables drive all products.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::ops::Deref;
use std::path::Path;
use std::sync::Mutex;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Element of GF(p^m), identified by the base-p integer of its coordinate vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(p^m) with precomputed log/antilog and trace tables.
pub struct Field {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    /// Monic primitive polynomial, coefficients low-to-high, length m+1.
    pub poly: Vec<u32>,
    /// Order of α; always q - 1 after construction.
    pub alpha_order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("poly", &self.poly)
            .finish_non_exhaustive()
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("t", &self.t)
            .field("field", &self.field)
            .finish()
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn to_digits(mut x: u32, p: u32, m: u32) -> Vec<u8> {
    let mut out = vec![0u8; m as usize];
    for d in out.iter_mut() {
        *d = (x % p) as u8;
        x /= p;
    }
    out
}

fn from_digits(digits: &[u8], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d as u32)
}

/// Multiply by α in F_p[x]/(poly), coordinates in place.
fn mulx(coords: &mut Vec<u8>, poly: &[u32], p: u32) {
    let m = coords.len();
    let top = coords[m - 1] as u32;
    for i in (1..m).rev() {
        coords[i] = coords[i - 1];
    }
    coords[0] = 0;
    if top != 0 {
        for i in 0..m {
            let v = coords[i] as u32 + top * (p - poly[i] % p) % p;
            coords[i] = (v % p) as u8;
        }
    }
}

/// Built-in and cached polynomial registry, keyed by (p, m).
static REGISTRY: Lazy<Mutex<HashMap<(u32, u32), Vec<u32>>>> = Lazy::new(|| {
    let mut map = HashMap::new();
    // x^6 + x + 1, primitive over F_2
    map.insert((2, 6), vec![1, 1, 0, 0, 0, 0, 1]);
    Mutex::new(map)
});

/// Merge "p m c_0 c_1 ... c_m" lines into the registry. Blank lines and
/// lines starting with '#' are skipped.
pub fn load_registry_file(path: &Path) -> Result<usize> {
    let file = std::fs::File::open(path)?;
    let mut loaded = 0;
    for line in std::io::BufReader::new(file).lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<u32> = line
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| Error::InvalidConfig(format!("bad registry line: {line}"))))
            .collect::<Result<_>>()?;
        if nums.len() < 3 {
            return Err(Error::InvalidConfig(format!("bad registry line: {line}")));
        }
        let (p, m) = (nums[0], nums[1]);
        let coeffs = nums[2..].to_vec();
        if coeffs.len() != m as usize + 1 {
            return Err(Error::InvalidConfig(format!(
                "registry line for p={p} m={m} has {} coefficients, expected {}",
                coeffs.len(),
                m + 1
            )));
        }
        REGISTRY.lock().unwrap().insert((p, m), coeffs);
        loaded += 1;
    }
    Ok(loaded)
}

impl Field {
    /// Build GF(p^m). If `poly` is omitted, take the registry entry or search
    /// for the lexicographically smallest primitive polynomial (coefficient
    /// vector read low-to-high as a base-p number).
    pub fn new(p: u32, m: u32, poly: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidConfig("extension degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= 1 << 26).ok_or(
            Error::InvalidConfig(format!("p^m = {p}^{m} too large for table construction")),
        )? as u32;

        if let Some(poly) = poly {
            if poly.len() != m as usize + 1 || poly[m as usize] != 1 {
                return Err(Error::InvalidConfig(format!(
                    "polynomial must be monic of degree {m}"
                )));
            }
            let poly: Vec<u32> = poly.iter().map(|&c| c % p).collect();
            return Self::try_build(p, m, q, poly);
        }

        if let Some(poly) = REGISTRY.lock().unwrap().get(&(p, m)).cloned() {
            return Self::try_build(p, m, q, poly);
        }

        // Exhaustive search over monic degree-m candidates. A primitive
        // polynomial must have a nonzero constant term.
        for low in 0..q {
            let mut poly: Vec<u32> = to_digits(low, p, m).iter().map(|&d| d as u32).collect();
            if poly[0] == 0 {
                continue;
            }
            poly.push(1);
            if let Ok(field) = Self::try_build(p, m, q, poly) {
                REGISTRY
                    .lock()
                    .unwrap()
                    .insert((p, m), field.poly.clone());
                return Ok(field);
            }
        }
        Err(Error::Internal(format!(
            "no primitive polynomial found for p={p}, m={m}"
        )))
    }

    fn try_build(p: u32, m: u32, q: u32, poly: Vec<u32>) -> Result<Field> {
        // Walk the orbit of 1 under multiplication by α; primitivity means
        // the orbit returns to 1 exactly at step q-1.
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut coords = to_digits(1, p, m);
        for k in 0..q - 1 {
            let idx = from_digits(&coords, p);
            if idx == 0 || (idx == 1 && k > 0) {
                return Err(Error::NotPrimitive(poly, p));
            }
            exp.push(idx);
            log[idx as usize] = k;
            mulx(&mut coords, &poly, p);
        }
        if from_digits(&coords, p) != 1 {
            return Err(Error::NotPrimitive(poly, p));
        }

        let mut field = Field {
            p,
            m,
            q,
            poly,
            alpha_order: q - 1,
            exp,
            log,
            trace: Vec::new(),
        };
        field.trace = (0..q)
            .map(|idx| field.compute_trace(FieldElement(idx)))
            .collect::<Result<_>>()?;
        Ok(field)
    }

    fn compute_trace(&self, x: FieldElement) -> Result<u8> {
        let mut acc = FieldElement::ZERO;
        let mut cur = x;
        for _ in 0..self.m {
            acc = self.add(acc, cur);
            cur = self.frob(cur);
        }
        if acc.0 >= self.p {
            return Err(Error::Internal(format!(
                "trace of element {} left the prime subfield",
                x.0
            )));
        }
        Ok(acc.0 as u8)
    }

    pub fn alpha(&self) -> FieldElement {
        FieldElement(self.exp[1])
    }

    /// α^k for any k (reduced mod q-1).
    pub fn alpha_pow(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    pub fn coords(&self, x: FieldElement) -> Vec<u8> {
        to_digits(x.0, self.p, self.m)
    }

    pub fn from_coords(&self, coords: &[u8]) -> FieldElement {
        debug_assert_eq!(coords.len(), self.m as usize);
        FieldElement(from_digits(coords, self.p))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let (p, mut a, mut b) = (self.p, x.0, y.0);
        let mut out = 0u32;
        let mut place = 1u32;
        while a != 0 || b != 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let (p, mut a) = (self.p, x.0);
        let mut out = 0u32;
        let mut place = 1u32;
        while a != 0 {
            out += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let n = self.q as u64 - 1;
        let e = (self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64) % n;
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let e = (n - self.log[x.0 as usize]) % n;
        Ok(FieldElement(self.exp[e as usize]))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if x.is_zero() {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let n = self.q as u64 - 1;
        let k = (self.log[x.0 as usize] as u64 * (e % n)) % n;
        FieldElement(self.exp[k as usize])
    }

    /// Frobenius x ↦ x^p.
    pub fn frob(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p as u64)
    }

    /// Discrete log base α; None for zero.
    pub fn dlog(&self, x: FieldElement) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize])
        }
    }

    /// Absolute trace Tr_1^m: F_{p^m} → F_p.
    pub fn abs_trace(&self, x: FieldElement) -> u32 {
        self.trace[x.0 as usize] as u32
    }
}

/// GF(p^m) with m = 2t and the structural subsets the code construction needs.
pub struct FieldSpec {
    pub field: Field,
    pub t: u32,
}

impl Deref for FieldSpec {
    type Target = Field;

    fn deref(&self) -> &Field {
        &self.field
    }
}

impl FieldSpec {
    pub fn new(p: u32, t: u32, poly: Option<&[u32]>, allow_small_t: bool) -> Result<FieldSpec> {
        if t == 0 {
            return Err(Error::InvalidConfig("t must be positive".into()));
        }
        if t < 3 && !allow_small_t {
            return Err(Error::InvalidConfig(format!(
                "t = {t} < 3 requires the small-t override (the constructions assume t > 2)"
            )));
        }
        let field = Field::new(p, 2 * t, poly)?;
        Ok(FieldSpec { field, t })
    }

    /// p^t, the order of the intermediate subfield.
    pub fn pt(&self) -> u32 {
        (self.p as u64).pow(self.t) as u32
    }

    /// Relative trace Tr_t^m(x) = x + x^{p^t}; lands in F_{p^t}.
    pub fn rel_trace_t(&self, x: FieldElement) -> FieldElement {
        self.add(x, self.pow(x, self.pt() as u64))
    }

    /// True iff x lies in the intermediate subfield F_{p^t}.
    pub fn in_subfield_t(&self, x: FieldElement) -> bool {
        self.pow(x, self.pt() as u64) == x
    }

    /// Trace of the intermediate subfield F_{p^t} → F_p, evaluated in place.
    pub fn subfield_trace_t(&self, x: FieldElement) -> Result<u32> {
        if !self.in_subfield_t(x) {
            return Err(Error::Internal(format!(
                "subfield trace of {} outside F_{{p^t}}",
                x.0
            )));
        }
        let mut acc = FieldElement::ZERO;
        let mut cur = x;
        for _ in 0..self.t {
            acc = self.add(acc, cur);
            cur = self.frob(cur);
        }
        if acc.0 >= self.p {
            return Err(Error::Internal("subfield trace left F_p".into()));
        }
        Ok(acc.0)
    }

    /// Dual coordinates (Tr(a·α^0), ..., Tr(a·α^{m-1})); pairs with ordinary
    /// coordinates through dot(dual_coords(a), coords(x)) = Tr(a·x) mod p.
    pub fn dual_coords(&self, a: FieldElement) -> Vec<u8> {
        (0..self.m)
            .map(|i| self.abs_trace(self.mul(a, self.alpha_pow(i as u64))) as u8)
            .collect()
    }

    /// Base-p packing of `dual_coords`, used to index transform output.
    pub fn dual_index(&self, a: FieldElement) -> u32 {
        from_digits(&self.dual_coords(a), self.p)
    }
}

/// Δ = ⟨β⟩ with β = α^{p^t-1}, Γ = {α^j : 0 ≤ j ≤ p^t}, and F_{p^t}^* = ⟨α^{p^t+1}⟩.
pub struct SubsetTables {
    pub delta: Vec<FieldElement>,
    pub gamma: Vec<FieldElement>,
    pub subfield_star: Vec<FieldElement>,
}

impl SubsetTables {
    pub fn build(spec: &FieldSpec) -> Result<SubsetTables> {
        let pt = spec.pt() as u64;
        let delta: Vec<FieldElement> = (0..=pt).map(|j| spec.alpha_pow(j * (pt - 1))).collect();
        let gamma: Vec<FieldElement> = (0..=pt).map(|j| spec.alpha_pow(j)).collect();
        let subfield_star: Vec<FieldElement> =
            (0..pt - 1).map(|j| spec.alpha_pow(j * (pt + 1))).collect();

        for &x in &delta {
            if spec.pow(x, pt + 1) != FieldElement::ONE {
                return Err(Error::Internal("Δ member with order not dividing p^t + 1".into()));
            }
        }
        let mut from_gamma: Vec<FieldElement> =
            gamma.iter().map(|&v| spec.pow(v, pt - 1)).collect();
        let mut delta_sorted = delta.clone();
        from_gamma.sort_unstable();
        delta_sorted.sort_unstable();
        if from_gamma != delta_sorted {
            return Err(Error::Internal("Δ != {v^{p^t-1} : v ∈ Γ}".into()));
        }
        Ok(SubsetTables {
            delta,
            gamma,
            subfield_star,
        })
    }
}

impl FieldSpec {
    /// Unique factorization x = u·v with u ∈ F_{p^t}^*, v ∈ Γ.
    pub fn uv_decompose(&self, x: FieldElement) -> Result<(FieldElement, FieldElement)> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        let pt = self.pt() as u64;
        let e = self.dlog(x).unwrap() as u64;
        let j = e % (pt + 1);
        let v = self.alpha_pow(j);
        let u = self.mul(x, self.inv(v)?);
        debug_assert!(self.in_subfield_t(u));
        Ok((u, v))
    }

    /// The unique v ∈ Γ with Tr_t^m(b·v) = 0.
    pub fn find_v(&self, tables: &SubsetTables, b: FieldElement) -> Result<FieldElement> {
        if b.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut found = None;
        for &v in &tables.gamma {
            if self.rel_trace_t(self.mul(b, v)).is_zero() {
                if found.is_some() {
                    return Err(Error::Internal(format!(
                        "multiple v ∈ Γ with Tr_t^m(bv) = 0 for b = {}",
                        b.0
                    )));
                }
                found = Some(v);
            }
        }
        found.ok_or_else(|| Error::Internal(format!("no v ∈ Γ with Tr_t^m(bv) = 0 for b = {}", b.0)))
    }
}
