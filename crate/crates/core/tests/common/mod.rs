//! Reference implementations used only by tests. Nothing here calls into
//! the library's algorithms.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Naive layer-by-layer smoothing: `(layers, masks)` for steps 1..=k.
pub fn naive_iterate(source: &[f64], k: usize) -> (Vec<Vec<f64>>, Vec<Vec<bool>>) {
    let n = source.len();
    let mut layers: Vec<Vec<f64>> = Vec::new();
    let mut masks: Vec<Vec<bool>> = Vec::new();
    let mut prev: Vec<f64> = source.to_vec();
    for _ in 0..k {
        let mut next = vec![0.0; n];
        let mut mask = vec![false; n];
        for t in 0..n {
            if t == 0 || t + 1 >= n {
                next[t] = prev[t];
                continue;
            }
            let left = prev[t - 1];
            let right = prev[t + 1];
            let average = (left + right) / 2.0;
            if prev[t] <= average {
                next[t] = prev[t];
                mask[t] = false;
            } else {
                next[t] = average;
                mask[t] = true;
            }
        }
        layers.push(next.clone());
        masks.push(mask);
        prev = next;
    }
    (layers, masks)
}

/// Minimal PBM P4 reader returning `(width, height, rows)`.
pub fn decode_pbm(bytes: &[u8]) -> (usize, usize, Vec<Vec<bool>>) {
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 3 {
        while bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).unwrap().to_string());
    }
    assert_eq!(fields[0], "P4");
    pos += 1; // single whitespace before raster
    let width: usize = fields[1].parse().unwrap();
    let height: usize = fields[2].parse().unwrap();
    let stride = width.div_ceil(8);
    assert_eq!(bytes.len() - pos, stride * height, "raster size");
    let rows = (0..height)
        .map(|y| {
            let line = &bytes[pos + y * stride..pos + (y + 1) * stride];
            (0..width)
                .map(|x| (line[x / 8] >> (7 - x % 8)) & 1 == 1)
                .collect()
        })
        .collect();
    (width, height, rows)
}

pub fn column_depths(masks: &[Vec<bool>]) -> Vec<usize> {
    let n = masks.first().map_or(0, |r| r.len());
    (0..n)
        .map(|t| masks.iter().filter(|row| row[t]).count())
        .collect()
}

/// Brute-force normalised autocorrelation at `lag`.
pub fn brute_autocorrelation(profile: &[usize], lag: usize) -> f64 {
    let n = profile.len();
    let mut mean = 0.0;
    for &d in profile {
        mean += d as f64;
    }
    mean /= n as f64;
    let mut num = 0.0;
    for t in 0..n - lag {
        num += (profile[t] as f64 - mean) * (profile[t + lag] as f64 - mean);
    }
    let mut den = 0.0;
    for &d in profile {
        den += (d as f64 - mean) * (d as f64 - mean);
    }
    num / den
}

/// Lag in `2..=n/2` that is a local autocorrelation maximum with the greatest height.
pub fn brute_top_period(profile: &[usize]) -> Option<usize> {
    let n = profile.len();
    let r: Vec<f64> = (0..=n / 2 + 1)
        .map(|lag| brute_autocorrelation(profile, lag))
        .collect();
    let mut best: Option<(usize, f64)> = None;
    for lag in 2..=n / 2 {
        let peak = r[lag] > r[lag - 1] && r[lag] >= r[lag + 1];
        if peak && best.map_or(true, |(_, h)| r[lag] > h) {
            best = Some((lag, r[lag]));
        }
    }
    best.map(|(lag, _)| lag)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_values(rng: &mut StdRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-10.0..=10.0)).collect()
}

/// Linear ramp over `0..len` with offsets of alternating sign and random
/// magnitude in `[1, 5]` on `burst`.
pub fn linear_with_alternating_burst(
    rng: &mut StdRng,
    len: usize,
    burst: std::ops::Range<usize>,
) -> Vec<f64> {
    (0..len)
        .map(|t| {
            let base = t as f64;
            if burst.contains(&t) {
                let sign = if (t - burst.start) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                base + sign * rng.random_range(1.0..=5.0)
            } else {
                base
            }
        })
        .collect()
}
