//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use peakcell::*;
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn grid(d: &Diagram) -> Vec<Vec<bool>> {
    d.mask_rows().map(<[bool]>::to_vec).collect()
}

/// The 200 random series shared by criteria 1 and 2: `(values, K)`.
fn random_cases() -> Vec<(Vec<f64>, usize)> {
    let mut r = rng(0x5eed_0001);
    (0..200)
        .map(|_| {
            let n = r.random_range(0..=1000);
            let k = r.random_range(0..=200);
            (random_values(&mut r, n), k)
        })
        .collect()
}

fn c1_oracle_equivalence() -> Outcome {
    let cases = random_cases();
    let started = Instant::now();
    let mut mismatched = 0;
    for (v, k) in &cases {
        let d = iterate(&Series::new(v.clone()).unwrap(), *k).unwrap();
        let (layers, masks) = naive_iterate(v, *k);
        let same_masks = grid(&d) == masks;
        let same_values = d
            .layers()
            .zip(&layers)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits()));
        if !(same_masks && same_values && d.steps() == layers.len()) {
            mismatched += 1;
        }
    }
    let elapsed = started.elapsed();
    outcome(
        mismatched == 0 && elapsed < Duration::from_secs(10),
        format!(
            "{mismatched}/200 mismatches, {:.2}s (limit 10s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn c2_layer_invariants() -> Outcome {
    let mut violations = 0usize;
    for (v, k) in random_cases() {
        let d = iterate(&Series::new(v.clone()).unwrap(), k).unwrap();
        let min = v.iter().copied().fold(f64::INFINITY, f64::min);
        let n = v.len();
        let mut prev: &[f64] = &v;
        for step in 1..=k {
            let layer = d.layer(step).unwrap();
            let mask = d.mask(step).unwrap();
            for t in 0..n {
                let ok = layer[t] <= prev[t]
                    && if mask[t] {
                        layer[t] < prev[t]
                    } else {
                        layer[t].to_bits() == prev[t].to_bits()
                    };
                violations += usize::from(!ok);
            }
            if n > 0 {
                let lmin = layer.iter().copied().fold(f64::INFINITY, f64::min);
                let lmax = layer.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let pmax = prev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                violations += usize::from(lmin != min);
                violations += usize::from(lmax > pmax);
                violations += usize::from(layer[0] != v[0] || layer[n - 1] != v[n - 1]);
            }
            prev = layer;
        }
    }
    outcome(
        violations == 0,
        format!("{violations} violations over 200 series"),
    )
}

fn c3_solid_band() -> Outcome {
    let parabola: Vec<f64> = (0..101).map(|t| -((t as f64 - 50.0).powi(2))).collect();
    let d = iterate(&Series::new(parabola).unwrap(), 40).unwrap();
    let class = classify_convexity(&d).unwrap();
    let row1 = d.mask(1).unwrap();
    let black = row1[1..100].iter().filter(|&&b| b).count();

    let convex: Vec<f64> = (0..101).map(|t| (t as f64).powi(2)).collect();
    let c = iterate(&Series::new(convex).unwrap(), 40).unwrap();
    let cclass = classify_convexity(&c).unwrap();

    outcome(
        class == Convexity::StrictlyConcaveInterior
            && black == 99
            && cclass == Convexity::FixedPoint
            && c.is_all_white(),
        format!(
            "parabola {class:?} with {black}/99 interior black; t^2 {cclass:?}, {} black cells",
            c.black_cells()
        ),
    )
}

fn c4_checkerboard() -> Outcome {
    const W: bool = false;
    const B: bool = true;
    let d = iterate(
        &Series::new(vec![0.0, 2.0, 0.5, 2.0, 0.5, 2.0, 0.0]).unwrap(),
        2,
    )
    .unwrap();
    let want = vec![vec![W, B, W, B, W, B, W], vec![W, W, B, W, B, W, W]];
    let got = grid(&d);
    outcome(
        got == want,
        format!("ascii {:?}", render_ascii(&d).unwrap()),
    )
}

fn c5_harmonics() -> Outcome {
    let sin = generate(&SyntheticSpec::new(SyntheticKind::Sin, 500)).unwrap();
    let d = iterate(&sin, 128).unwrap();
    let est = estimate_periods(&d, 5).unwrap();
    let top = est.first().map(|e| e.period);
    let oracle = brute_top_period(&column_depths(&grid(&d)));
    let sin_ok = top.is_some_and(|p| (48..=52).contains(&p)) && top == oracle;

    let mixed = generate(&SyntheticSpec::new(SyntheticKind::SinPlusCos3x, 600)).unwrap();
    let dm = iterate(&mixed, 128).unwrap();
    let em = estimate_periods(&dm, 5).unwrap();
    let periods: Vec<usize> = em.iter().map(|e| e.period).collect();
    let mut distinct = periods.clone();
    distinct.dedup();
    let has_component = periods
        .iter()
        .any(|p| (48..=52).contains(p) || (15..=18).contains(p));
    let mixed_ok = distinct.len() >= 2 && has_component;

    outcome(
        sin_ok && mixed_ok,
        format!("sin top {top:?} (oracle {oracle:?}); sin+cos3x periods {periods:?}"),
    )
}

fn c6_weekly_and_burst() -> Outcome {
    let weekly = generate(&SyntheticSpec::new(SyntheticKind::Weekly, 140)).unwrap();
    let est = estimate_periods(&iterate(&weekly, 64).unwrap(), 5).unwrap();
    let top = est.first().copied();
    let weekly_ok = top.is_some_and(|e| e.period == 7 && e.strength >= 0.5);

    let mut r = rng(0x5eed_0006);
    let mut worst = 0usize;
    let mut bad = 0;
    for _ in 0..20 {
        let v = linear_with_alternating_burst(&mut r, 240, 100..140);
        let d = iterate(&Series::new(v).unwrap(), 32).unwrap();
        let found = detect_instability(&d, 16, 0.5).unwrap();
        match found.as_slice() {
            [iv] => {
                let slack = iv.start.abs_diff(100).max(iv.end.abs_diff(139));
                worst = worst.max(slack);
                bad += usize::from(slack > 16);
            }
            _ => bad += 1,
        }
    }
    outcome(
        weekly_ok && bad == 0,
        format!(
            "weekly top {:?}; 20 bursts at [100,139]: {bad} failing, worst edge offset {worst} (limit 16)",
            top.map(|e| (e.period, (e.strength * 1000.0).round() / 1000.0))
        ),
    )
}

fn c7_render_round_trip() -> Outcome {
    let mut r = rng(0x5eed_0007);
    let mut bad = 0;
    for _ in 0..50 {
        let n = r.random_range(1..=300);
        let k = r.random_range(1..=60);
        let v = random_values(&mut r, n);
        let d = iterate(&Series::new(v).unwrap(), k).unwrap();
        let (w, h, rows) = decode_pbm(&render_raster(&d, &RenderSpec::default()).unwrap());
        bad += usize::from(w != n || h != k || rows != grid(&d));
    }
    let one = Diagram::from_masks(&[vec![true]]).unwrap();
    let two = Diagram::from_masks(&[vec![true, false], vec![false, true]]).unwrap();
    let one_ok = render_raster(&one, &RenderSpec::default()).unwrap() == b"P4\n1 1\n\x80";
    let two_ok = render_raster(&two, &RenderSpec::default()).unwrap() == b"P4\n2 2\n\x80\x40";
    outcome(
        bad == 0 && one_ok && two_ok,
        format!("{bad}/50 round-trip mismatches; 1x1 bytes {one_ok}, 2x2 bytes {two_ok}"),
    )
}

fn c8_affine_equivariance() -> Outcome {
    let mut r = rng(0x5eed_0008);
    let mut bad = 0;
    let mut earliest: Option<usize> = None;
    for _ in 0..50 {
        let n = r.random_range(3..=1000);
        let k = r.random_range(1..=200);
        let v = random_values(&mut r, n);
        let a = r.random_range(0.1..=10.0);
        let b = r.random_range(-10.0..=10.0);
        let src = Series::new(v).unwrap();
        let d1 = iterate(&src, k).unwrap();
        let d2 = iterate(&src.affine(a, b).unwrap(), k).unwrap();
        let diverged = d1.mask_rows().zip(d2.mask_rows()).position(|(x, y)| x != y);
        if let Some(step) = diverged {
            bad += 1;
            earliest = Some(earliest.map_or(step + 1, |e: usize| e.min(step + 1)));
        }
    }
    outcome(
        bad == 0,
        format!("{bad}/50 triples with differing masks; earliest differing step {earliest:?}"),
    )
}

fn c9_performance() -> Outcome {
    let mut r = rng(0x5eed_0009);
    let v = random_values(&mut r, 10_000);
    let started = Instant::now();
    let d = iterate(&Series::new(v).unwrap(), 1_000).unwrap();
    let bytes = render_raster(&d, &RenderSpec::default()).unwrap();
    let elapsed = started.elapsed();
    let expected = "P4\n10000 1000\n".len() + 1250 * 1000;
    outcome(
        elapsed < Duration::from_secs(5) && bytes.len() == expected,
        format!(
            "N=10000 K=1000 iterate+render {:.3}s (limit 5s)",
            elapsed.as_secs_f64()
        ),
    )
}

type Check = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("C1 oracle equivalence", c1_oracle_equivalence),
        ("C2 layer invariants", c2_layer_invariants),
        ("C3 solid band / fixed point", c3_solid_band),
        ("C4 checkerboard", c4_checkerboard),
        ("C5 harmonic periods", c5_harmonics),
        ("C6 weekly period and burst", c6_weekly_and_burst),
        ("C7 PBM round trip", c7_render_round_trip),
        ("C8 affine mask equivariance", c8_affine_equivariance),
        ("C9 performance", c9_performance),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "{} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
