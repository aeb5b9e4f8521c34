//! Fast character-count transform over Z_p^n with group-algebra values.
//!
//! Each entry is a length-p histogram; entry u, bin c ends up holding
//! #{v ∈ support : u·v ≡ c (mod p)}. A radix-p butterfly runs n rounds over
//! the flattened histogram array, so everything stays in machine integers.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 1 << 26;

#[derive(Clone, Debug)]
pub struct CountSpectrum {
    pub p: u32,
    pub n: u32,
    /// p^n histograms of length p, flattened.
    data: Vec<u32>,
}

impl CountSpectrum {
    pub fn len(&self) -> usize {
        self.data.len() / self.p as usize
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Histogram at index u.
    pub fn histogram(&self, u: usize) -> &[u32] {
        let p = self.p as usize;
        &self.data[u * p..(u + 1) * p]
    }

    /// Count of support points v with u·v ≡ 0.
    pub fn zero_bin(&self, u: usize) -> u32 {
        self.data[u * self.p as usize]
    }
}

/// Transform the indicator of `support` (points given as base-p packed
/// indices, coordinate 0 least significant).
pub fn char_count_transform(
    p: u32,
    n: u32,
    support: impl IntoIterator<Item = usize>,
    budget: u64,
) -> Result<CountSpectrum> {
    let size = (p as u64)
        .checked_pow(n)
        .filter(|&s| s <= budget)
        .ok_or(Error::DimensionTooLarge {
            size: (p as u64).saturating_pow(n),
            budget,
        })? as usize;
    let pu = p as usize;

    let mut data = vec![0u32; size * pu];
    for v in support {
        debug_assert!(v < size);
        data[v * pu] += 1;
    }

    // Round i mixes coordinate i. A support point that has accumulated
    // partial dot product d and digit k at this coordinate contributes to
    // output digit j at bin d + j·k.
    let mut stride = 1usize;
    for _round in 0..n {
        let block = stride * pu; // entries per butterfly group
        let scratch_len = pu * pu;
        data.par_chunks_mut(block * pu).for_each(|chunk| {
            let mut old = vec![0u32; scratch_len];
            for offset in 0..stride {
                for k in 0..pu {
                    let base = (offset + k * stride) * pu;
                    old[k * pu..(k + 1) * pu].copy_from_slice(&chunk[base..base + pu]);
                }
                for j in 0..pu {
                    let base = (offset + j * stride) * pu;
                    for c in 0..pu {
                        let mut acc = 0u32;
                        for k in 0..pu {
                            let shifted = (c + pu - (j * k) % pu) % pu;
                            acc += old[k * pu + shifted];
                        }
                        chunk[base + c] = acc;
                    }
                }
            }
        });
        stride *= pu;
    }

    Ok(CountSpectrum { p, n, data })
}

/// Direct per-point count; the independent oracle for the butterfly.
pub fn naive_count(p: u32, n: u32, support: &[usize], u: usize) -> Vec<u32> {
    let pu = p as usize;
    let mut hist = vec![0u32; pu];
    for &v in support {
        let (mut a, mut b, mut dot) = (u, v, 0usize);
        for _ in 0..n {
            dot += (a % pu) * (b % pu);
            a /= pu;
            b /= pu;
        }
        hist[dot % pu] += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn singleton_zero_support() {
        let spec = char_count_transform(3, 2, [0usize], DEFAULT_BUDGET).unwrap();
        for u in 0..9 {
            assert_eq!(spec.histogram(u), &[1, 0, 0]);
        }
    }

    #[test]
    fn full_support_orthogonality() {
        for (p, n) in [(2u32, 5u32), (3, 3), (5, 2)] {
            let size = (p as usize).pow(n);
            let spec = char_count_transform(p, n, 0..size, DEFAULT_BUDGET).unwrap();
            let mut expect_zero = vec![0u32; p as usize];
            expect_zero[0] = size as u32;
            assert_eq!(spec.histogram(0), &expect_zero[..]);
            let flat = vec![(size / p as usize) as u32; p as usize];
            for u in 1..size {
                assert_eq!(spec.histogram(u), &flat[..], "p={p} n={n} u={u}");
            }
        }
    }

    #[test]
    fn one_dimensional_point_mass() {
        let spec = char_count_transform(3, 1, [1usize], DEFAULT_BUDGET).unwrap();
        for u in 0..3 {
            let mut expect = vec![0u32; 3];
            expect[u] = 1;
            assert_eq!(spec.histogram(u), &expect[..]);
        }
    }

    #[test]
    fn naive_edge_cases() {
        assert_eq!(naive_count(3, 2, &[], 4), vec![0, 0, 0]);
        assert_eq!(naive_count(3, 2, &[1, 4, 8], 0), vec![3, 0, 0]);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            char_count_transform(2, 30, [0usize], DEFAULT_BUDGET),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    fn support_strategy(size: usize) -> impl Strategy<Value = Vec<usize>> {
        prop::collection::btree_set(0..size, 0..=size.min(64)).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #[test]
        fn matches_naive_oracle(
            (p, n) in prop_oneof![Just((2u32, 8u32)), Just((3, 5)), Just((5, 3))],
            seed in 0u64..1 << 32,
        ) {
            let size = (p as usize).pow(n);
            let support = {
                // cheap LCG-driven subset so the strategy stays size-agnostic
                let mut s = std::collections::BTreeSet::new();
                let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
                for _ in 0..64 {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    s.insert((state >> 33) as usize % size);
                }
                s.into_iter().collect::<Vec<_>>()
            };
            let spec = char_count_transform(p, n, support.iter().copied(), DEFAULT_BUDGET).unwrap();
            for u in (0..size).step_by(1 + size / 97) {
                prop_assert_eq!(spec.histogram(u), &naive_count(p, n, &support, u)[..]);
            }
            // bin-sum conservation
            for u in 0..size {
                let total: u32 = spec.histogram(u).iter().sum();
                prop_assert_eq!(total as usize, support.len());
            }
        }

        #[test]
        fn matches_naive_oracle_dense(support in support_strategy(256)) {
            let spec = char_count_transform(2, 8, support.iter().copied(), DEFAULT_BUDGET).unwrap();
            for u in 0..256 {
                prop_assert_eq!(spec.histogram(u), &naive_count(2, 8, &support, u)[..]);
            }
        }
    }

    #[test]
    fn zero_bin_column_sum_identity() {
        // Σ_u #{v : u·v = 0} = |support|·p^{n-1} + (p-1)·p^{n-1}·#(support ∩ {0})
        for (p, n, support) in [
            (2u32, 6u32, vec![0usize, 1, 5, 17, 33]),
            (3, 4, vec![2, 3, 40, 77]),
        ] {
            let size = (p as usize).pow(n);
            let spec = char_count_transform(p, n, support.iter().copied(), DEFAULT_BUDGET).unwrap();
            let total: u64 = (0..size).map(|u| spec.zero_bin(u) as u64).sum();
            let pn1 = (p as u64).pow(n - 1);
            let zero_members = support.iter().filter(|&&v| v == 0).count() as u64;
            let expected = support.len() as u64 * pn1 + (p as u64 - 1) * pn1 * zero_members;
            assert_eq!(total, expected);
            let naive_total: u64 = (0..size)
                .map(|u| naive_count(p, n, &support, u)[0] as u64)
                .sum();
            assert_eq!(total, naive_total);
        }
    }
}
