use serde::Serialize;

use crate::diary::alice_diary;
use crate::embed::EmbeddingConfig;
use crate::oracles::{lemmas, EnumerationGrid, Sweep};
use crate::words::Sentence;

use super::{coarse_sweep, isometry_sweep, reduce_agreement, HarnessError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub detail: Vec<String>,
}

impl CheckResult {
    fn from_sweep(name: &str, sweep: Sweep) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed: sweep.passed() && sweep.checked > 0,
            checked: sweep.checked,
            detail: sweep.counterexamples,
        }
    }
}

/// The oracle suite at sizes that finish in seconds.
pub fn selftest() -> Result<Vec<CheckResult>, HarnessError> {
    let mut results = Vec::new();
    let golden: Sentence = "abac|cb|accc|bcbc|a".parse().expect("valid sentence");
    let diary = alice_diary(3, &golden)?.to_string();
    results.push(CheckResult {
        name: "alice-golden".into(),
        passed: diary == "cab|bca|ccc|cbc|aba",
        checked: 1,
        detail: vec![diary],
    });
    let grid = EnumerationGrid::lemma_default();
    results.push(CheckResult::from_sweep("replay", lemmas::check_replay_agreement(&grid)?));
    results.push(CheckResult::from_sweep("diary1", lemmas::check_lemma_diary1(&grid)?));
    results.push(CheckResult::from_sweep("diary2", lemmas::check_lemma_diary2(&grid)?));
    results.push(CheckResult::from_sweep("diary3", lemmas::check_lemma_diary3(&grid)?));
    results.push(CheckResult::from_sweep("diary-theorem", lemmas::check_diary_theorem(&grid)?));
    results.push(CheckResult::from_sweep("prop-awl", lemmas::check_prop_awl(&grid)?));
    results.push(CheckResult::from_sweep("cor-awl", lemmas::check_cor_awl(&grid)?));
    results.push(CheckResult::from_sweep("suffix-or-length", lemmas::check_suffix_or_length(30, 3, 12)));
    results.push(CheckResult::from_sweep("reduce-vs-oracle", reduce_agreement(7)));
    let iso = isometry_sweep(4, 1000, 12, 0)?;
    results.push(CheckResult {
        name: "isometry".into(),
        passed: iso.violations == 0,
        checked: iso.ball_pairs + iso.sampled_pairs,
        detail: iso.examples,
    });
    let coarse = coarse_sweep(4, &EmbeddingConfig::custom(32))?;
    results.push(CheckResult {
        name: "lipschitz".into(),
        passed: coarse.upper_violations == 0,
        checked: coarse.pairs,
        detail: Vec::new(),
    });
    Ok(results)
}
