//! Inputs shared by the benchmarks.

use peakcell::{generate, Series, SyntheticKind, SyntheticSpec};

/// Deterministic pseudo-random series in `[-10, 10)` (64-bit LCG).
pub fn noise(n: usize, seed: u64) -> Series {
    let mut state = seed;
    let values = (0..n)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 20.0 - 10.0
        })
        .collect();
    Series::new(values).expect("finite by construction")
}

pub fn synthetic(kind: SyntheticKind, n: usize) -> Series {
    generate(&SyntheticSpec::new(kind, n)).expect("valid spec")
}
