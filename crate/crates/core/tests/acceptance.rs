//! The ten acceptance checks, one line each. Runs without the libtest
//! harness so the lines are always shown; exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diary_core::codec::{binary_distance, binary_recode, Codec};
use diary_core::diary::{alice_diary, aries_diary, aries_m, check_aries, check_virgo, virgo_diary};
use diary_core::embed::EmbeddingConfig;
use diary_core::harness::{
    classification_census, coarse_sweep, distort, isometry_sweep, write_records, ExperimentConfig, Format,
};
use diary_core::hexgroup::{render_word, side_left_rep, side_sentence, Family, GroupElement};
use diary_core::oracles::{lemmas, EnumerationGrid};
use diary_core::rational::Rational;
use diary_core::statistics::FiniteStatistic;
use diary_core::words::{common_prefix_len, sentence_tree_distance, Letter, Sentence, Word};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn random_word(rng: &mut impl Rng, alphabet: &[char], max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| Letter::Char(alphabet[rng.gen_range(0..alphabet.len())])).collect()
}

fn random_sentence(rng: &mut impl Rng, alphabet: &[char], words: usize, max_len: usize) -> Vec<Word> {
    (0..words).map(|_| random_word(rng, alphabet, max_len)).collect()
}

/// A shared prefix followed by two independent tails.
fn random_pair(rng: &mut impl Rng, alphabet: &[char], max_words: usize, max_len: usize) -> (Sentence, Sentence) {
    let p = rng.gen_range(0..=3);
    let prefix = random_sentence(rng, alphabet, p, max_len);
    let (m, n) = (rng.gen_range(0..=max_words), rng.gen_range(0..=max_words));
    let a: Vec<Word> = prefix.iter().cloned().chain(random_sentence(rng, alphabet, m, max_len)).collect();
    let b: Vec<Word> = prefix.iter().cloned().chain(random_sentence(rng, alphabet, n, max_len)).collect();
    (Sentence::new(a).unwrap(), Sentence::new(b).unwrap())
}

fn tails(alpha: &Sentence, beta: &Sentence) -> (usize, usize) {
    let p = common_prefix_len(alpha.words(), beta.words());
    (alpha.len() - p, beta.len() - p)
}

fn c1_alice_golden() -> Outcome {
    let alpha: Sentence = "abac|cb|accc|bcbc|a".parse().unwrap();
    let got = alice_diary(3, &alpha).unwrap().to_string();
    outcome(got == "cab|bca|ccc|cbc|aba", format!("AD_3 = {got}"))
}

fn c2_isometry() -> Outcome {
    let report = isometry_sweep(5, 10_000, 12, 2024).unwrap();
    outcome(
        report.violations == 0,
        format!(
            "{} ball pairs + {} sampled pairs, {} violations {:?}",
            report.ball_pairs, report.sampled_pairs, report.violations, report.examples
        ),
    )
}

fn c3_a_left_golden() -> Outcome {
    let g: GroupElement = "b1 a2 a3 b2 a1 b1".parse().unwrap();
    let rep = render_word(&side_left_rep(&g, Family::A));
    let f = side_sentence(&g, Family::A).to_string();
    outcome(rep == "a2 a3 b1 a1 b2 b1" && f == "[a2]|[a3]|[b1][a1]", format!("a-left {rep}, F_A {f}"))
}

fn c4_lemmas() -> Outcome {
    let grid = EnumerationGrid::lemma_default();
    let sweeps = [
        ("diary1", lemmas::check_lemma_diary1(&grid).unwrap()),
        ("diary2", lemmas::check_lemma_diary2(&grid).unwrap()),
        ("diary-theorem", lemmas::check_diary_theorem(&grid).unwrap()),
        ("prop-awl", lemmas::check_prop_awl(&grid).unwrap()),
        ("cor-awl", lemmas::check_cor_awl(&grid).unwrap()),
    ];
    let passed = sweeps.iter().all(|(_, s)| s.passed() && s.checked > 0);
    let detail: Vec<String> = sweeps
        .iter()
        .map(|(name, s)| format!("{name} {}/{}", s.checked - s.counterexamples.len() as u64, s.checked))
        .collect();
    let failures: Vec<&String> = sweeps.iter().flat_map(|(_, s)| &s.counterexamples).take(5).collect();
    outcome(passed, format!("{} sentences; {} {:?}", grid.count(), detail.join(", "), failures))
}

fn c5_theorem_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alphabet = ['a', 'b', 'c'];
    let configs: Vec<(Vec<FiniteStatistic>, Rational, usize)> = vec![
        (vec![FiniteStatistic::LastLetter], Rational::new(0, 1), 1),
        (vec![FiniteStatistic::LastLetter], Rational::new(0, 1), 2),
        (vec![FiniteStatistic::TruncKappa { kappa: 2 }], Rational::new(1, 2), 1),
        (vec![FiniteStatistic::LastLetter, FiniteStatistic::TruncKappa { kappa: 3 }], Rational::new(1, 3), 3),
    ];
    let diaries: Vec<_> = configs.iter().map(|(s, d, j)| aries_diary(s, *d, *j).unwrap()).collect();
    let (mut aries, mut aries_bad) = (0, Vec::new());
    let mut attempts = 0;
    while aries < 1000 && attempts < 100_000 {
        attempts += 1;
        let k = attempts % configs.len();
        let (stats, delta, jump) = &configs[k];
        let (alpha, beta) = random_pair(&mut rng, &alphabet, 8, 4);
        if alpha == beta || check_aries(&alpha, &beta, stats, *delta, *jump).unwrap().is_none() {
            continue;
        }
        aries += 1;
        let (m, n) = tails(&alpha, &beta);
        let d = sentence_tree_distance(&diaries[k].apply(&alpha).unwrap(), &diaries[k].apply(&beta).unwrap());
        let big_m = aries_m(*delta, *jump).unwrap();
        if Rational::from_integer(d as u64) * big_m < Rational::from_integer((m + n) as u64) {
            aries_bad.push(format!("{alpha} / {beta}: {d} < {}/{big_m}", m + n));
        }
    }
    let config = EmbeddingConfig::paper();
    let virgo = virgo_diary(&config.linear, &config.virgo).unwrap();
    let (mut virgo_count, mut virgo_bad) = (0, Vec::new());
    attempts = 0;
    while virgo_count < 200 && attempts < 100_000 {
        attempts += 1;
        let (alpha, beta) = random_pair(&mut rng, &alphabet, 12, 6);
        if alpha == beta || check_virgo(&alpha, &beta, &config.linear, &config.virgo).unwrap().is_none() {
            continue;
        }
        virgo_count += 1;
        let (m, n) = tails(&alpha, &beta);
        let d = sentence_tree_distance(&virgo.apply(&alpha).unwrap(), &virgo.apply(&beta).unwrap());
        if 64 * d < m + n {
            virgo_bad.push(format!("{alpha} / {beta}: {d} < {}/64", m + n));
        }
    }
    outcome(
        aries == 1000 && virgo_count == 200 && aries_bad.is_empty() && virgo_bad.is_empty(),
        format!(
            "aries {aries} certified, {} below bound; virgo {virgo_count} certified, {} below bound {:?}",
            aries_bad.len(),
            virgo_bad.len(),
            aries_bad.iter().chain(&virgo_bad).take(3).collect::<Vec<_>>()
        ),
    )
}

fn c6_suffix_or_length() -> Outcome {
    let sweep = lemmas::check_suffix_or_length(30, 3, 14);
    outcome(
        sweep.passed(),
        format!("{} pairs, {} violations {:?}", sweep.checked, sweep.counterexamples.len(), sweep.counterexamples),
    )
}

fn c7_coarse_bounds() -> Outcome {
    let config = EmbeddingConfig::custom(32);
    let r5 = coarse_sweep(5, &config).unwrap();
    let r6 = coarse_sweep(6, &config).unwrap();
    let stable = match (r5.c_emp, r6.c_emp) {
        (Some(a), Some(b)) => (b - a).abs() < 0.25 * a,
        _ => false,
    };
    let passed = r5.upper_violations == 0 && r6.upper_violations == 0 && stable;
    outcome(
        passed,
        format!(
            "radius 5: {} pairs, C_emp {:?}, {} over d_group; radius 6: {} pairs, C_emp {:?}, {} over d_group, {} collisions",
            r5.pairs, r5.c_emp, r5.upper_violations, r6.pairs, r6.c_emp, r6.upper_violations, r6.collisions
        ),
    )
}

fn c8_census() -> Outcome {
    let census = classification_census(6, 12, &EmbeddingConfig::paper()).unwrap();
    outcome(
        census.neither == 0 && census.balanced > 0,
        format!(
            "{} pairs at distance >= 12, {} balanced: leo {}, virgo {}, neither {} {:?}",
            census.far_pairs, census.balanced, census.leo, census.virgo, census.neither, census.examples
        ),
    )
}

fn c9_binary_bracket() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    let mut checked = 0;
    for width in [2usize, 3, 8] {
        let symbols: Vec<Word> = (0..1u32 << width)
            .map(|i| Word::new(vec![Letter::Char(char::from_u32(0x100 + i).unwrap())]))
            .collect();
        let codec = Codec::table(&symbols, width).unwrap();
        let pick = |rng: &mut ChaCha8Rng, n: usize| -> Vec<Word> {
            (0..n).map(|_| symbols[rng.gen_range(0..symbols.len())].clone()).collect()
        };
        for _ in 0..1000 {
            let prefix = {
                let n = rng.gen_range(0..5);
                pick(&mut rng, n)
            };
            let (ta, tb) = (rng.gen_range(0..6), rng.gen_range(0..6));
            let a = Sentence::new(prefix.iter().cloned().chain(pick(&mut rng, ta)).collect()).unwrap();
            let b = Sentence::new(prefix.iter().cloned().chain(pick(&mut rng, tb)).collect()).unwrap();
            let d = sentence_tree_distance(&a, &b);
            let bits = binary_distance(&binary_recode(&a, &codec).unwrap(), &binary_recode(&b, &codec).unwrap());
            checked += 1;
            if bits > width * d || bits + 2 * (width - 1) < width * d {
                bad.push(format!("width {width}: {a} / {b}: d {d}, bits {bits}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} pairs, {} violations {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()))
}

fn c10_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig { radius: 5, samples: 5_000, seed: 42, ..Default::default() };
    let mut files = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("run{run}.jsonl"));
        let (records, _) = distort(&config).unwrap();
        write_records(&records, &path, Format::Jsonl).unwrap();
        files.push((std::fs::read(&path).unwrap(), std::fs::read(path.with_extension("csv")).unwrap()));
    }
    let same = files[0] == files[1] && !files[0].0.is_empty();
    outcome(same, format!("{} bytes of jsonl, {} bytes of csv per run", files[0].0.len(), files[0].1.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("alice diary golden value", c1_alice_golden, Duration::from_secs(1)),
        ("isometric embedding", c2_isometry, Duration::from_secs(120)),
        ("a-left golden value", c3_a_left_golden, Duration::from_secs(1)),
        ("diary lemma suite", c4_lemmas, Duration::from_secs(300)),
        ("theorem bounds", c5_theorem_bounds, Duration::from_secs(600)),
        ("suffix-or-length lemma", c6_suffix_or_length, Duration::from_secs(60)),
        ("composed embedding bounds", c7_coarse_bounds, Duration::from_secs(600)),
        ("classification census", c8_census, Duration::from_secs(600)),
        ("binary recoding bracket", c9_binary_bracket, Duration::from_secs(60)),
        ("determinism", c10_determinism, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let passed = result.passed && elapsed <= *budget;
        if !passed {
            failures += 1;
        }
        let late = if elapsed > *budget { format!(" (over the {budget:?} budget)") } else { String::new() };
        println!(
            "criterion {:>2} {}: {} in {:.2?}{late}; {}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            name,
            elapsed,
            result.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
