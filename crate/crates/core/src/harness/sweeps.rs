//! Pair sweeps over balls in the group.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::embed::{
    appendix_diary, balanced_tails, classify_sentences, dominant, embed_all, f_distance, f_embed, measure, record,
    Class, DistortionRecord, Embedded, EmbeddingConfig,
};
use crate::hexgroup::{bfs_ball, group_distance, random_element_with, reduce, Generator, GroupElement};
use crate::oracles::{descent_length, Sweep, TitsOracle};

use super::{ExperimentConfig, Format, HarnessError};

/// Largest radius the isometry sweep tabulates by breadth-first search.
const ORACLE_TABLE_RADIUS: usize = 10;

fn ball_elements(radius: usize) -> Result<Vec<GroupElement>, HarnessError> {
    Ok(bfs_ball(radius)?.into_iter().map(|(g, _)| g).collect())
}

/// `g⁻¹h` as an unreduced word; every generator is its own inverse.
fn quotient(g: &GroupElement, h: &GroupElement) -> Vec<Generator> {
    g.word().iter().rev().chain(h.word()).copied().collect()
}

/// Index pairs `i < j` below `n`: all of them when `samples` is 0, otherwise
/// `samples` draws, sorted and deduplicated.
pub fn sample_pairs(n: usize, samples: usize, seed: u64) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    if samples == 0 {
        return (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..samples)
        .map(|_| {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            (i.min(j), i.max(j))
        })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IsometryReport {
    pub radius: usize,
    pub ball_pairs: u64,
    pub sampled_pairs: u64,
    pub violations: u64,
    pub examples: Vec<String>,
}

impl IsometryReport {
    fn absorb(&mut self, sweep: Sweep) {
        self.violations += sweep.counterexamples.len() as u64;
        self.examples.extend(sweep.counterexamples.into_iter().take(20 - self.examples.len().min(20)));
    }
}

fn check_isometry(g: &GroupElement, h: &GroupElement, truth: usize, sweep: &mut Sweep) {
    sweep.checked += 1;
    let (d_f, d_g) = (f_distance(g, h), group_distance(g, h));
    if d_f != truth || d_g != truth {
        sweep.fail(format!("{g} / {h}: oracle {truth}, group {d_g}, L1 {d_f}"));
    }
}

/// Compares the L1 distance between `F` images, and the group distance, with
/// the oracle on every pair of `ball(radius)` and on `samples` random pairs
/// of length up to `sample_len`.
pub fn isometry_sweep(
    radius: usize,
    samples: usize,
    sample_len: usize,
    seed: u64,
) -> Result<IsometryReport, HarnessError> {
    let elements = ball_elements(radius)?;
    let oracle = TitsOracle::build((2 * radius).min(ORACLE_TABLE_RADIUS));
    let n = elements.len();
    let ball = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut sweep = Sweep::default();
            for j in i + 1..n {
                let (g, h) = (&elements[i], &elements[j]);
                let truth = oracle.oracle_distance(&quotient(g, h)).expect("within twice the table radius");
                check_isometry(g, h, truth, &mut sweep);
            }
            sweep
        })
        .reduce(Sweep::default, Sweep::merge);
    let mut report = IsometryReport { radius, ball_pairs: ball.checked, ..Default::default() };
    report.absorb(ball);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = Sweep::default();
    for _ in 0..samples {
        let (l1, l2) = (rng.gen_range(0..=sample_len), rng.gen_range(0..=sample_len));
        let g = random_element_with(&mut rng, l1);
        let h = random_element_with(&mut rng, l2);
        check_isometry(&g, &h, descent_length(&quotient(&g, &h)), &mut sampled);
    }
    report.sampled_pairs = sampled.checked;
    report.absorb(sampled);
    Ok(report)
}

/// Word reduction against both oracles for every word up to `max_len` letters.
pub fn reduce_agreement(max_len: usize) -> Sweep {
    let oracle = TitsOracle::build(max_len.div_ceil(2));
    let mut words: Vec<Vec<Generator>> = vec![Vec::new()];
    let mut sweep = Sweep::default();
    for len in 0..=max_len {
        if len > 0 {
            words = words
                .iter()
                .flat_map(|w| {
                    Generator::ALL.iter().map(move |&s| {
                        let mut next = w.clone();
                        next.push(s);
                        next
                    })
                })
                .collect();
        }
        let part = words
            .par_iter()
            .map(|w| {
                let mut sweep = Sweep::default();
                sweep.checked += 1;
                let got = reduce(w).len();
                let bfs = oracle.oracle_distance(w).expect("within twice the radius");
                if got != bfs || got != descent_length(w) {
                    sweep.fail(format!("{}: reduce {got}, oracle {bfs}", crate::hexgroup::render_word(w)));
                }
                sweep
            })
            .reduce(Sweep::default, Sweep::merge);
        sweep = sweep.merge(part);
    }
    sweep
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoarseReport {
    pub radius: usize,
    pub pairs: u64,
    /// Pairs with `d_image > d_group`.
    pub upper_violations: u64,
    /// Distinct pairs whose images coincide.
    pub collisions: u64,
    /// `max d_group / d_image` over distinct pairs, absent after a collision.
    pub c_emp: Option<f64>,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, Copy)]
struct Extremes {
    pairs: u64,
    upper: u64,
    collisions: u64,
    // d_image / d_group as exact fractions
    min: Option<Ratio<u64>>,
    max: Option<Ratio<u64>>,
}

impl Extremes {
    fn empty() -> Self {
        Extremes { pairs: 0, upper: 0, collisions: 0, min: None, max: None }
    }

    fn add(&mut self, d_group: usize, d_image: usize) {
        self.pairs += 1;
        if d_image > d_group {
            self.upper += 1;
        }
        if d_image == 0 {
            self.collisions += 1;
        }
        let r = Ratio::new(d_image as u64, d_group as u64);
        self.min = Some(self.min.map_or(r, |m| m.min(r)));
        self.max = Some(self.max.map_or(r, |m| m.max(r)));
    }

    fn merge(self, other: Extremes) -> Extremes {
        let pick = |a: Option<Ratio<u64>>, b: Option<Ratio<u64>>, f: fn(Ratio<u64>, Ratio<u64>) -> Ratio<u64>| match (a, b)
        {
            (Some(x), Some(y)) => Some(f(x, y)),
            (x, None) => x,
            (None, y) => y,
        };
        Extremes {
            pairs: self.pairs + other.pairs,
            upper: self.upper + other.upper,
            collisions: self.collisions + other.collisions,
            min: pick(self.min, other.min, Ord::min),
            max: pick(self.max, other.max, Ord::max),
        }
    }
}

fn to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Distance bounds of the composed embedding over every pair of `ball(radius)`.
pub fn coarse_sweep(radius: usize, config: &EmbeddingConfig) -> Result<CoarseReport, HarnessError> {
    let diary = appendix_diary(config)?;
    let embedded = embed_all(&ball_elements(radius)?, &diary)?;
    let n = embedded.len();
    let ex = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut ex = Extremes::empty();
            for j in i + 1..n {
                let m = measure(&embedded[i], &embedded[j]);
                ex.add(m.d_group, m.d_image);
            }
            ex
        })
        .reduce(Extremes::empty, Extremes::merge);
    let min = ex.min.unwrap_or(Ratio::from_integer(1));
    Ok(CoarseReport {
        radius,
        pairs: ex.pairs,
        upper_violations: ex.upper,
        collisions: ex.collisions,
        c_emp: (ex.collisions == 0 && ex.pairs > 0).then(|| to_f64(min.recip())),
        min_ratio: to_f64(min),
        max_ratio: to_f64(ex.max.unwrap_or(Ratio::from_integer(1))),
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Pairs at distance at least the floor.
    pub far_pairs: u64,
    /// Of those, pairs with balanced tails on the dominant factor.
    pub balanced: u64,
    pub leo: u64,
    pub virgo: u64,
    pub neither: u64,
    pub examples: Vec<String>,
}

impl Census {
    fn merge(mut self, other: Census) -> Census {
        self.far_pairs += other.far_pairs;
        self.balanced += other.balanced;
        self.leo += other.leo;
        self.virgo += other.virgo;
        self.neither += other.neither;
        for e in other.examples {
            if self.examples.len() < 20 {
                self.examples.push(e);
            }
        }
        self
    }
}

/// Classifies every balanced pair of `ball(radius)` at distance `≥ min_distance`.
pub fn classification_census(
    radius: usize,
    min_distance: usize,
    config: &EmbeddingConfig,
) -> Result<Census, HarnessError> {
    let elements = ball_elements(radius)?;
    let images: Vec<_> = elements.par_iter().map(f_embed).collect();
    let n = elements.len();
    (0..n)
        .into_par_iter()
        .map(|i| -> Result<Census, HarnessError> {
            let mut census = Census::default();
            for j in i + 1..n {
                if elements[i].len() + elements[j].len() < min_distance
                    || group_distance(&elements[i], &elements[j]) < min_distance
                {
                    continue;
                }
                census.far_pairs += 1;
                let (_, alpha, beta) = dominant(&images[i], &images[j]);
                if !balanced_tails(alpha, beta) {
                    continue;
                }
                census.balanced += 1;
                match classify_sentences(alpha, beta, config)?.0 {
                    Class::Leo => census.leo += 1,
                    Class::Virgo => census.virgo += 1,
                    Class::Neither => {
                        census.neither += 1;
                        if census.examples.len() < 20 {
                            census.examples.push(format!("{} / {}", elements[i], elements[j]));
                        }
                    }
                }
            }
            Ok(census)
        })
        .try_reduce(Census::default, |a, b| Ok(a.merge(b)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortSummary {
    pub radius: usize,
    pub mode: String,
    pub pairs: usize,
    pub min_ratio: f64,
    pub median_ratio: f64,
    pub max_ratio: f64,
    pub c_emp: Option<f64>,
    pub classes: BTreeMap<&'static str, u64>,
    /// Pairs breaking `d_image ≤ d_group`.
    pub violations: u64,
    pub collisions: u64,
}

/// Distortion records for sampled pairs of `ball(radius)`, in canonical pair order.
pub fn distort(config: &ExperimentConfig) -> Result<(Vec<DistortionRecord>, DistortSummary), HarnessError> {
    let embedding = config.embedding();
    let diary = appendix_diary(&embedding)?;
    let embedded: Vec<Embedded> = embed_all(&ball_elements(config.radius)?, &diary)?;
    let pairs = sample_pairs(embedded.len(), config.samples, config.seed);
    let records = pairs
        .par_iter()
        .map(|&(i, j)| record(&embedded[i], &embedded[j], &embedding))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ratios: Vec<Ratio<u64>> =
        records.iter().map(|r| Ratio::new(r.d_image as u64, r.d_group as u64)).collect();
    ratios.sort_unstable();
    let mut classes = BTreeMap::new();
    for class in [Class::Leo, Class::Virgo, Class::Neither] {
        classes.insert(class.name(), 0);
    }
    for r in &records {
        *classes.entry(r.class.name()).or_default() += 1;
    }
    let collisions = records.iter().filter(|r| r.d_image == 0).count() as u64;
    let at = |k: usize| ratios.get(k).copied().map_or(0.0, to_f64);
    let summary = DistortSummary {
        radius: config.radius,
        mode: match embedding.mode {
            crate::embed::Mode::Paper => "paper".into(),
            crate::embed::Mode::Custom { kappa } => format!("custom(kappa={kappa})"),
        },
        pairs: records.len(),
        min_ratio: at(0),
        median_ratio: at(ratios.len() / 2),
        max_ratio: if ratios.is_empty() { 0.0 } else { at(ratios.len() - 1) },
        c_emp: (collisions == 0 && !ratios.is_empty()).then(|| to_f64(ratios[0].recip())),
        classes,
        violations: records.iter().filter(|r| r.d_image > r.d_group).count() as u64,
        collisions,
    };
    Ok((records, summary))
}

fn write_jsonl(records: &[DistortionRecord], path: &Path) -> Result<(), HarnessError> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    for r in records {
        serde_json::to_writer(&mut file, r)?;
        file.write_all(b"\n")?;
    }
    file.flush()?;
    Ok(())
}

fn write_csv(records: &[DistortionRecord], path: &Path) -> Result<(), HarnessError> {
    let mut writer = csv::Writer::from_path(path)?;
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes `path` in `format` and a twin in the other format next to it.
pub fn write_records(records: &[DistortionRecord], path: &Path, format: Format) -> Result<(), HarnessError> {
    match format {
        Format::Jsonl => {
            write_jsonl(records, path)?;
            write_csv(records, &path.with_extension("csv"))
        }
        Format::Csv => {
            write_csv(records, path)?;
            write_jsonl(records, &path.with_extension("jsonl"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_sampling() {
        assert_eq!(sample_pairs(3, 0, 0), vec![(0, 1), (0, 2), (1, 2)]);
        let some = sample_pairs(100, 50, 7);
        assert!(some.iter().all(|&(i, j)| i < j && j < 100));
        assert_eq!(some, sample_pairs(100, 50, 7));
        assert!(sample_pairs(1, 10, 0).is_empty());
    }

    #[test]
    fn small_sweeps() {
        let report = isometry_sweep(3, 200, 8, 1).unwrap();
        assert_eq!(report.violations, 0, "{:?}", report.examples);
        assert_eq!(report.ball_pairs, 121 * 120 / 2);
        assert!(reduce_agreement(5).passed());
        let coarse = coarse_sweep(3, &EmbeddingConfig::custom(32)).unwrap();
        assert_eq!(coarse.upper_violations, 0);
    }
}
