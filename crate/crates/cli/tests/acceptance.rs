//! End-to-end acceptance checks. Runs without the test harness so that every
//! criterion prints exactly one PASS or FAIL line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use cww_core::codebook::{build_codebook, Codebook, Survey};
use cww_core::encoder::{classify, eia_data_part, encode_word, hma_overlap, ia_data_part, DataInterval, EncoderConfig, EncoderMethod};
use cww_core::engine::{decode_word, iwa, lwa};
use cww_core::it2::{centroid_bounds, centroid_mean, FouClass, It2Fou, TypeReducer};
use cww_core::linguistic::{uniform_partition, Interval, TermSet};
use cww_core::ordinal::{rscm_aggregate, smcm_run, NumericWeights};
use cww_core::scenario::{Entry, Methodology, Outcome, PercInputs, PercMode, PercOperand, Scenario};
use cww_core::t1_methods::{aepcm_run_with, epcm_run, ifscm_run_with, PreferenceVector, RetranslationWeights, WeightVector};
use cww_core::two_tuple::{delta, delta_inv, TwoTuple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// 1

fn two_tuple_exactness() -> Check {
    let ts = TermSet::with_cardinality(7, 0.0, 1.0).unwrap();
    let t = delta(3.2, &ts).unwrap();
    ensure(t == TwoTuple::new(3, 0.2).unwrap() && t.to_string() == "s3+0.2", || format!("delta(3.2) = {t}"))?;
    let t = delta(3.8, &ts).unwrap();
    ensure(t == TwoTuple::new(4, -0.2).unwrap() && t.to_string() == "s4-0.2", || format!("delta(3.8) = {t}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = 0;
    let mut made = 0;
    while made < 10_000 {
        let idx = rng.random_range(0..7usize);
        let alpha = rng.random_range(-0.5..0.5);
        let Ok(t) = TwoTuple::new(idx, alpha) else { continue };
        made += 1;
        if delta(delta_inv(&t), &ts) != Ok(t) {
            failures += 1;
        }
    }
    ensure(failures == 0, || format!("{failures} round-trip failures"))
}

// 2

fn random_fou(rng: &mut ChaCha8Rng) -> It2Fou {
    let a = rng.random_range(0.0..5.0);
    let b = a + rng.random_range(0.0..2.0);
    let c = b + rng.random_range(0.0..2.0);
    let d = c + rng.random_range(0.01..2.0);
    let e = rng.random_range(a..=b);
    let f = rng.random_range(b..=c);
    let g = rng.random_range(f..=c);
    let h = rng.random_range(c..=d);
    let hl = rng.random_range(0.1..=1.0);
    It2Fou::new([a, b, c, d], [e, f, g, h, hl], FouClass::Interior).unwrap()
}

/// Every switch point on the same grid the reducers use.
fn scan_oracle(fou: &It2Fou, n: usize) -> (f64, f64) {
    let (a, d) = fou.support();
    let x: Vec<f64> = (0..n).map(|i| a + i as f64 * (d - a) / (n - 1) as f64).collect();
    let up: Vec<f64> = x.iter().map(|&v| fou.umf().membership(v)).collect();
    let lo: Vec<f64> = x.iter().zip(&up).map(|(&v, &u)| fou.lmf().membership(v).min(u)).collect();
    let weighted = |w: &dyn Fn(usize) -> f64| {
        let (mut num, mut den) = (0.0, 0.0);
        for (i, xi) in x.iter().enumerate() {
            num += xi * w(i);
            den += w(i);
        }
        (den > 0.0).then(|| num / den)
    };
    let (mut cl, mut cr) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..=n {
        if let Some(v) = weighted(&|i| if i < k { up[i] } else { lo[i] }) {
            cl = cl.min(v);
        }
        if let Some(v) = weighted(&|i| if i < k { lo[i] } else { up[i] }) {
            cr = cr.max(v);
        }
    }
    (cl, cr)
}

fn centroid_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let reducers = [TypeReducer::Km, TypeReducer::Ekm, TypeReducer::Eiasc];
    for case in 0..100 {
        let fou = random_fou(&mut rng);
        let (ol, or) = scan_oracle(&fou, 200);
        let got: Vec<_> = reducers.iter().map(|&r| centroid_bounds(&fou, 200, r).unwrap()).collect();
        for (r, ci) in reducers.iter().zip(&got) {
            ensure((ci.c_l - ol).abs() <= 1e-9 && (ci.c_r - or).abs() <= 1e-9, || {
                format!("case {case}: {r:?} gave [{}, {}], scan gave [{ol}, {or}]", ci.c_l, ci.c_r)
            })?;
        }
        for p in &got {
            for q in &got {
                ensure((p.c_l - q.c_l).abs() <= 1e-9 && (p.c_r - q.c_r).abs() <= 1e-9, || format!("case {case}: reducers disagree"))?;
            }
        }
    }
    for case in 0..100 {
        let z = rng.random_range(2.0..8.0);
        let w1 = rng.random_range(0.0..1.0);
        let w2 = w1 + rng.random_range(0.1..2.0);
        let v1 = rng.random_range(0.0..=w1);
        let v2 = rng.random_range(w1..=w2);
        let hl = rng.random_range(0.1..=1.0);
        let fou = It2Fou::new([z - w2, z - w1, z + w1, z + w2], [z - v2, z - v1, z + v1, z + v2, hl], FouClass::Interior).unwrap();
        for r in reducers {
            let m = centroid_mean(&centroid_bounds(&fou, 200, r).unwrap());
            ensure((m - z).abs() <= 1e-6, || format!("symmetric case {case}: mean {m} vs axis {z}"))?;
        }
    }
    Ok(())
}

// 3

/// 50 intervals for a word centred on `centre`, with endpoints clipped to the scale.
fn synthetic_word(rng: &mut ChaCha8Rng, centre: f64, spread: f64) -> Vec<DataInterval> {
    (0..50)
        .map(|i| {
            let a = (centre - spread + rng.random_range(-1.0..1.0)).clamp(0.0, 9.8);
            let b = (centre + spread + rng.random_range(-1.0..1.0)).clamp(a + 0.1, 10.0);
            DataInterval::tagged(a, b, format!("s{i}"))
        })
        .collect()
}

fn synthetic_survey(seed: u64) -> Survey {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    [("tiny", 0.5, 1.0), ("low", 2.5, 1.2), ("medium", 5.0, 1.5), ("high", 7.5, 1.2), ("huge", 9.5, 1.0)]
        .into_iter()
        .map(|(w, c, s)| (w.to_string(), synthetic_word(&mut rng, c, s)))
        .collect()
}

fn encoder_pipeline() -> Check {
    let survey = synthetic_survey(3);
    for method in [EncoderMethod::Ia, EncoderMethod::Eia, EncoderMethod::Hma] {
        let cfg = EncoderConfig { method, ..Default::default() };
        for (word, ivs) in &survey {
            let enc = encode_word(ivs, &cfg).map_err(|e| format!("{method:?} {word}: {e}"))?;
            ensure(enc.trace.is_non_increasing(), || format!("{method:?} {word}: trace {:?}", enc.trace))?;
            let part = match method {
                EncoderMethod::Ia => ia_data_part(ivs, &cfg),
                _ => eia_data_part(ivs, &cfg),
            }
            .unwrap();
            for s in &part.survivors {
                ensure(0.0 <= s.a && s.a < s.b && s.b <= 10.0, || format!("{method:?} {word}: survivor {s:?}"))?;
            }
        }
    }

    // Wide answers with one interval spanning the whole scale.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut wide: Vec<DataInterval> = (0..49)
        .map(|i| DataInterval::tagged(rng.random_range(0.0..0.6), rng.random_range(9.4..10.0), format!("s{i}")))
        .collect();
    wide.push(DataInterval::tagged(0.0, 10.0, "planted"));
    let cfg = EncoderConfig::default();
    let ia = ia_data_part(&wide, &cfg).unwrap();
    let eia = eia_data_part(&wide, &cfg).unwrap();
    ensure(ia.survivors.iter().any(|s| s.subject == "planted"), || "IA dropped the planted interval".into())?;
    ensure(eia.survivors.iter().all(|s| s.length() < 10.0), || "EIA kept an interval of length 10".into())?;
    ensure(eia.counts[1] == 49 && ia.counts[1] == 50, || format!("bad-data counts IA {:?} EIA {:?}", ia.counts, eia.counts))
}

// 4

fn hma_overlap_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = EncoderConfig::default();
    for case in 0..20 {
        let ivs: Vec<DataInterval> = (0..40)
            .map(|_| DataInterval::new(rng.random_range(3.0..4.5), rng.random_range(5.5..7.0)))
            .collect();
        let part = eia_data_part(&ivs, &cfg).unwrap();
        let class = classify(&part.survivors, &cfg);
        ensure(class == FouClass::Interior, || format!("case {case}: classified {class}"))?;
        let (lo, hi) = hma_overlap(&part.survivors, class, 10.0).unwrap();
        let max_a = part.survivors.iter().map(|s| s.a).fold(f64::NEG_INFINITY, f64::max);
        let min_b = part.survivors.iter().map(|s| s.b).fold(f64::INFINITY, f64::min);
        ensure(lo == max_a && hi == min_b, || format!("case {case}: overlap [{lo}, {hi}] vs [{max_a}, {min_b}]"))?;
        for s in &part.survivors {
            ensure(s.a <= lo && hi <= s.b, || format!("case {case}: {s:?} misses the overlap"))?;
        }
    }
    Ok(())
}

// 5

fn term_codebook(ts: &TermSet) -> Codebook {
    let words = uniform_partition(ts)
        .into_iter()
        .zip(ts.labels())
        .map(|(t, l)| (l.clone(), It2Fou::type1([t.l, t.m, t.m, t.r], FouClass::Interior).unwrap()));
    Codebook::from_words(words).unwrap()
}

fn recommended(outcome: &Outcome) -> Option<usize> {
    match outcome {
        Outcome::Term { index, .. } | Outcome::Ifs { index, .. } | Outcome::Ordinal { index, .. } => Some(*index),
        Outcome::TwoTuple { result, .. } => (result.alpha() == 0.0).then(|| result.term_index()),
        _ => None,
    }
}

fn unanimity() -> Check {
    let identity_weights = TermSet::with_cardinality(11, 0.0, 1.0).unwrap();
    let mut checked = 0;
    for size in [5, 7, 9] {
        let ts = TermSet::with_cardinality(size, 0.0, 10.0).unwrap();
        let cb = term_codebook(&ts);
        for j in 0..size {
            for voters in 1..=6 {
                let base = Scenario {
                    methodology: Methodology::Epcm,
                    term_set: ts.clone(),
                    preferences: vec![Entry::Number(j as f64); voters],
                    weights: None,
                    weight_term_set: None,
                    retranslation_weights: RetranslationWeights::default(),
                    perc: None,
                };
                let linguistic = Scenario {
                    weights: Some(vec![Entry::Number(10.0); voters]),
                    weight_term_set: Some(identity_weights.clone()),
                    ..base.clone()
                };
                let skewed: Vec<f64> = (1..=voters).map(|k| k as f64).collect();
                let total: f64 = skewed.iter().sum();
                let numeric = Scenario {
                    weights: Some(skewed.iter().map(|w| Entry::Number(w / total)).collect()),
                    ..base.clone()
                };
                let cases = [
                    (Methodology::Epcm, &base),
                    (Methodology::Aepcm, &linguistic),
                    (Methodology::Ifscm, &linguistic),
                    (Methodology::Smcm, &base),
                    (Methodology::Smcm, &numeric),
                    (Methodology::Rscm, &base),
                    (Methodology::TwoTuple, &base),
                    (Methodology::TwoTuple, &linguistic_two_tuple(&base, voters, size)),
                ];
                for (m, s) in cases {
                    let out = s.run_as(m, None).map_err(|e| format!("{m} j={j}: {e}"))?;
                    ensure(recommended(&out.outcome) == Some(j), || format!("{m} size {size} j={j} voters {voters}: {:?}", out.outcome))?;
                    checked += 1;
                }

                let word = ts.label(j).unwrap().to_string();
                // Weight words skip t0, whose core at zero leaves no mass at the top level.
                for weights in [None, Some((0..voters).map(|k| PercOperand::Word(ts.label(1 + (j + k) % (size - 1)).unwrap().into())).collect())] {
                    let s = Scenario {
                        perc: Some(PercInputs {
                            codebook: String::new(),
                            values: vec![PercOperand::Word(word.clone()); voters],
                            weights,
                            mode: PercMode::Word,
                            n_grid: 200,
                            alpha_levels: 11,
                            reducer: TypeReducer::Eiasc,
                        }),
                        ..base.clone()
                    };
                    match s.run_as(Methodology::Perc, Some(&cb)) {
                        Ok(r) => match r.outcome {
                            Outcome::Word { word: w, .. } if w == word => checked += 1,
                            o => return Err(format!("PERC size {size} j={j}: {o:?}")),
                        },
                        Err(e) => return Err(format!("PERC size {size} j={j}: {e}")),
                    }
                }
            }
        }
    }
    ensure(checked > 1_000, || format!("only {checked} cases ran"))
}

fn linguistic_two_tuple(base: &Scenario, voters: usize, size: usize) -> Scenario {
    Scenario {
        weights: Some((0..voters).map(|k| Entry::Text(format!("s{}", 1 + k % (size - 1)))).collect()),
        ..base.clone()
    }
}

// 6

fn recursive(idx: &[usize], w: &[f64], g: usize) -> usize {
    let round = |x: f64| (x + 0.5).floor();
    let pair = |hi: usize, lo: usize, wh: f64, wl: f64| {
        ((lo as f64 + round((wh - wl + 1.0) / 2.0 * (hi as f64 - lo as f64))) as usize).min(g)
    };
    match idx.len() {
        1 => idx[0],
        2 => pair(idx[0], idx[1], w[0], w[1]),
        _ => {
            let tail: f64 = w[1..].iter().sum();
            let delta: Vec<f64> = if tail > 0.0 {
                w[1..].iter().map(|x| x / tail).collect()
            } else {
                vec![1.0 / (w.len() - 1) as f64; w.len() - 1]
            };
            pair(idx[0], recursive(&idx[1..], &delta, g), w[0], 1.0 - w[0])
        }
    }
}

fn sorted_desc(prefs: &[usize], w: &[f64]) -> (Vec<usize>, Vec<f64>) {
    let mut p: Vec<(usize, f64)> = prefs.iter().copied().zip(w.iter().copied()).collect();
    p.sort_by_key(|e| std::cmp::Reverse(e.0));
    p.into_iter().unzip()
}

fn profiles(n: usize) -> Vec<Vec<f64>> {
    let norm = |v: Vec<f64>| {
        let s: f64 = v.iter().sum();
        v.into_iter().map(|x| x / s).collect::<Vec<f64>>()
    };
    let mut front = vec![0.0; n];
    front[0] = 1.0;
    vec![
        vec![1.0 / n as f64; n],
        norm((1..=n).map(|k| k as f64).collect()),
        norm((1..=n).rev().map(|k| k as f64).collect()),
        front,
        norm((0..n).map(|k| if k % 2 == 0 { 3.0 } else { 1.0 }).collect()),
    ]
}

fn smcm_rscm_recursion() -> Check {
    let ts = TermSet::with_cardinality(5, 0.0, 1.0).unwrap();
    let mut mismatches = Vec::new();
    for len in 1..=5usize {
        for code in 0..5usize.pow(len as u32) {
            let prefs: Vec<usize> = (0..len).map(|k| code / 5usize.pow(k as u32) % 5).collect();
            for w in profiles(len) {
                let nw = NumericWeights::new(w.clone()).map_err(|e| e.to_string())?;
                let (si, sw) = sorted_desc(&prefs, &w);
                if smcm_run(&prefs, &nw, &ts).unwrap() != recursive(&si, &sw, 4) {
                    mismatches.push(format!("SMCM {prefs:?} {w:?}"));
                }
            }
            let distinct = prefs.iter().collect::<std::collections::BTreeSet<_>>().len() as f64;
            let cw: Vec<f64> = prefs
                .iter()
                .map(|p| 1.0 / (distinct * prefs.iter().filter(|q| *q == p).count() as f64))
                .collect();
            let (si, sw) = sorted_desc(&prefs, &cw);
            if rscm_aggregate(&prefs, &ts).unwrap() != recursive(&si, &sw, 4) {
                mismatches.push(format!("RSCM {prefs:?}"));
            }
        }
    }
    ensure(mismatches.is_empty(), || format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))
}

// 7

fn iwa_brute_force() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..500 {
        let n = rng.random_range(1..=4usize);
        let x: Vec<Interval> = (0..n)
            .map(|_| {
                let lo = rng.random_range(-5.0..5.0);
                Interval::new(lo, lo + rng.random_range(0.0..3.0)).unwrap()
            })
            .collect();
        let w: Vec<Interval> = (0..n)
            .map(|_| {
                let lo = rng.random_range(0.0..1.0);
                Interval::new(lo, lo + rng.random_range(0.0..1.0)).unwrap()
            })
            .collect();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for mask in 0u32..1 << (2 * n) {
            let (mut num, mut den) = (0.0, 0.0);
            for i in 0..n {
                let xi = if mask >> i & 1 == 1 { x[i].hi } else { x[i].lo };
                let wi = if mask >> (n + i) & 1 == 1 { w[i].hi } else { w[i].lo };
                num += xi * wi;
                den += wi;
            }
            if den > 0.0 {
                lo = lo.min(num / den);
                hi = hi.max(num / den);
            }
        }
        let got = iwa(&x, &w).map_err(|e| format!("case {case}: {e}"))?;
        ensure(got.lo == lo && got.hi == hi, || format!("case {case}: [{}, {}] vs [{lo}, {hi}]", got.lo, got.hi))?;
    }
    Ok(())
}

// 8

fn lwa_collapse() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let point = |v: f64| It2Fou::type1([v, v, v, v], FouClass::Interior).unwrap();
    for case in 0..200 {
        let n = rng.random_range(1..=6usize);
        let xs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..10.0)).collect();
        let ws: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..1.0)).collect();
        let expected = xs.iter().zip(&ws).map(|(x, w)| x * w).sum::<f64>() / ws.iter().sum::<f64>();
        let y = lwa(&xs.iter().map(|&v| point(v)).collect::<Vec<_>>(), &ws.iter().map(|&v| point(v)).collect::<Vec<_>>(), 11)
            .map_err(|e| e.to_string())?
            .fou;
        for p in y.umf_params().iter().chain(&y.lmf_params()[..4]) {
            ensure((p - expected).abs() <= 1e-9, || format!("case {case}: {p} vs {expected}"))?;
        }
    }

    let cb = build_codebook(&synthetic_survey(8), &EncoderConfig::default()).unwrap();
    ensure(cb.failures().is_empty(), || format!("encoding failed: {:?}", cb.failures()))?;
    for entry in cb.entries() {
        for n in 1..=4 {
            let weights: Vec<It2Fou> = (0..n)
                .map(|_| {
                    let a = rng.random_range(0.0..0.5);
                    let b = a + rng.random_range(0.0..0.3);
                    let c = b + rng.random_range(0.0..0.3);
                    It2Fou::type1([a, b, c, c + rng.random_range(0.01..0.3)], FouClass::Interior).unwrap()
                })
                .collect();
            let y = lwa(&vec![entry.fou; n], &weights, 11).map_err(|e| e.to_string())?.fou;
            let d = decode_word(&y, &cb, 200).map_err(|e| e.to_string())?;
            ensure(d.word == entry.word && d.score >= 0.99, || format!("{} x{n}: decoded {} at {}", entry.word, d.word, d.score))?;
        }
    }
    Ok(())
}

// 9

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let survey = dir.path().join("survey.csv");
    let mut text = String::from("word,subject,left,right\n");
    for (w, ivs) in synthetic_survey(9) {
        for iv in ivs {
            text.push_str(&format!("{w},{},{},{}\n", iv.subject, iv.a, iv.b));
        }
    }
    std::fs::write(&survey, text).unwrap();
    let person = dir.path().join("person.csv");
    std::fs::write(&person, "word,left_min,left_max,right_min,right_max\nsome,1,3,5,8\nmost,5,7,8.5,10\n").unwrap();

    let encode = |input: &std::path::Path, out: &str, extra: &[&str]| -> Result<Vec<u8>, String> {
        let path = dir.path().join(out);
        let status = Command::new(env!("CARGO_BIN_EXE_cww"))
            .arg("encode")
            .arg(input)
            .arg("-o")
            .arg(&path)
            .args(extra)
            .env("CWW_SEED", "17")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), || String::from_utf8_lossy(&status.stderr).into_owned())?;
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    for method in ["ia", "eia", "hma"] {
        let a = encode(&survey, "a.json", &["--method", method])?;
        let b = encode(&survey, "b.json", &["--method", method])?;
        ensure(a == b, || format!("{method} survey codebooks differ"))?;
    }
    let a = encode(&person, "pa.json", &["--person"])?;
    let b = encode(&person, "pb.json", &["--person"])?;
    ensure(a == b, || "person codebooks differ".into())
}

// 10

fn epcm_self_consistency() -> Check {
    let rw = RetranslationWeights::default();
    for size in 3..=11 {
        let ts = TermSet::with_cardinality(size, 0.0, 10.0).unwrap();
        for j in 0..size {
            let out = epcm_run(&PreferenceVector::new(vec![j], &ts).unwrap(), &ts, &rw).unwrap();
            ensure(out.recommended == j, || format!("size {size}: t{j} -> t{}", out.recommended))?;
        }
    }
    let identity = TermSet::with_cardinality(11, 0.0, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..1000 {
        let size = rng.random_range(3..=11usize);
        let q = rng.random_range(1.0..100.0);
        let ts = TermSet::with_cardinality(size, 0.0, q).unwrap();
        let n = rng.random_range(1..=8usize);
        let prefs = PreferenceVector::new((0..n).map(|_| rng.random_range(0..size)).collect(), &ts).unwrap();
        let weights = WeightVector::new(vec![10; n], &prefs, &identity).unwrap();
        let a = aepcm_run_with(&prefs, &weights, &ts, &identity, &rw).unwrap();
        let i = ifscm_run_with(&prefs, &weights, &ts, &identity, &rw).unwrap();
        ensure(a.recommended == i.recommended && a.collective == i.membership, || {
            format!("case {case}: AEPCM t{} vs IFSCM t{}", a.recommended, i.recommended)
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("2-tuple exactness", two_tuple_exactness, Some(Duration::from_secs(1))),
        ("centroid oracle", centroid_oracle, Some(Duration::from_secs(10))),
        ("encoder pipeline", encoder_pipeline, Some(Duration::from_secs(5))),
        ("HMA overlap", hma_overlap_check, None),
        ("unanimity across methodologies", unanimity, None),
        ("SMCM/RSCM recursion", smcm_rscm_recursion, Some(Duration::from_secs(30))),
        ("IWA brute force", iwa_brute_force, None),
        ("LWA degenerate collapse", lwa_collapse, None),
        ("determinism", determinism, None),
        ("EPCM self-consistency", epcm_self_consistency, None),
    ];
    let mut failed = 0;
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let res = res.and_then(|_| match limit {
            Some(l) if elapsed > *l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            _ => Ok(()),
        });
        match res {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({elapsed:.2?})", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({elapsed:.2?}): {e}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
