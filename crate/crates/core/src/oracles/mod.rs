//! Brute-force verifiers. Nothing here shares code with the modules it
//! checks: recordings are replayed by rescanning the whole event log, and
//! group lengths come from a linear representation of the group.

mod group;
pub mod lemmas;

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::PathBuf;

use thiserror::Error;

use crate::words::{Letter, Sentence, Word};

pub use group::{descent_length, TitsOracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("grid holds {count} sentences, over the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
    #[error("word of length {len} is beyond twice the oracle radius {radius}")]
    CapExceeded { len: usize, radius: usize },
}

pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Sentences of `1..=max_days` words, each word drawn from a fixed list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationGrid {
    pub alphabet: Vec<Letter>,
    pub max_days: usize,
    pub max_word_len: usize,
    /// Every word is `★` followed by up to `max_word_len - 1` letters.
    pub starred: bool,
    pub kappas: std::ops::RangeInclusive<usize>,
    pub budget: u128,
}

impl EnumerationGrid {
    pub fn plain(alphabet: &str, max_days: usize, max_word_len: usize) -> Self {
        EnumerationGrid {
            alphabet: alphabet.chars().map(Letter::Char).collect(),
            max_days,
            max_word_len,
            starred: false,
            kappas: 1..=1,
            budget: DEFAULT_BUDGET,
        }
    }

    /// Alphabet `{a, b}` plus `★`, up to 3 days, words of at most 3 letters, `κ ≤ 4`.
    pub fn lemma_default() -> Self {
        EnumerationGrid {
            alphabet: vec!['a'.into(), 'b'.into()],
            max_days: 3,
            max_word_len: 3,
            starred: true,
            kappas: 1..=4,
            budget: DEFAULT_BUDGET,
        }
    }

    /// The words allowed on a single day, shortest first, then lexicographic.
    pub fn day_words(&self) -> Vec<Word> {
        let (lead, body_max) = if self.starred {
            (Some(Letter::Star), self.max_word_len.saturating_sub(1))
        } else {
            (None, self.max_word_len)
        };
        let mut out = Vec::new();
        let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
        for len in 0..=body_max {
            if len > 0 {
                layer = layer
                    .iter()
                    .flat_map(|w| {
                        self.alphabet.iter().map(move |a| {
                            let mut next = w.clone();
                            next.push(a.clone());
                            next
                        })
                    })
                    .collect();
            }
            for body in &layer {
                let letters: Vec<Letter> = lead.iter().cloned().chain(body.iter().cloned()).collect();
                if !letters.is_empty() {
                    out.push(Word::new(letters));
                }
            }
        }
        out
    }

    pub fn count(&self) -> u128 {
        let per_day = self.day_words().len() as u128;
        (1..=self.max_days as u32).map(|d| per_day.saturating_pow(d)).fold(0u128, u128::saturating_add)
    }
}

/// Streams every sentence of the grid exactly once: by number of days, then
/// lexicographically in the day-word order.
pub struct SentenceStream {
    words: Vec<Word>,
    max_days: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for SentenceStream {
    type Item = Sentence;

    fn next(&mut self) -> Option<Sentence> {
        if self.done {
            return None;
        }
        let sentence = Sentence::new(self.digits.iter().map(|&i| self.words[i].clone()).collect())
            .expect("grid words are non-empty");
        // advance the odometer, growing by one day when it wraps
        let base = self.words.len();
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                if self.digits.len() == self.max_days {
                    self.done = true;
                } else {
                    self.digits = vec![0; self.digits.len() + 1];
                }
                break;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < base {
                break;
            }
            self.digits[pos] = 0;
        }
        Some(sentence)
    }
}

pub fn enumerate_sentences(grid: &EnumerationGrid) -> Result<SentenceStream, OracleError> {
    let count = grid.count();
    if count > grid.budget {
        return Err(OracleError::BudgetExceeded { count, budget: grid.budget });
    }
    let words = grid.day_words();
    let empty = words.is_empty() || grid.max_days == 0;
    Ok(SentenceStream { words, max_days: grid.max_days, digits: vec![0], done: empty })
}

/// Where a letter ended up: (chapter, page), both 0-based.
pub type Slot = Option<(usize, usize)>;

/// Replays the diary by brute force: for every page, scan the whole log
/// backwards for the newest event not yet written down.
pub fn verify_recording(alpha: &Sentence, kappa: usize) -> BTreeMap<(usize, usize), Slot> {
    replay(alpha, kappa).1
}

/// The chapters the brute-force replay writes, with the recording map.
pub fn replay(alpha: &Sentence, kappa: usize) -> (Vec<Vec<Letter>>, BTreeMap<(usize, usize), Slot>) {
    let mut log: Vec<((usize, usize), Letter, Slot)> = Vec::new();
    let mut chapters = Vec::with_capacity(alpha.len());
    for (day, word) in alpha.words().iter().enumerate() {
        for (pos, letter) in word.letters().iter().enumerate() {
            log.push(((day, pos), letter.clone(), None));
        }
        let mut chapter = Vec::new();
        for page in 0..kappa {
            let newest = (0..log.len()).rev().find(|&i| log[i].2.is_none());
            let Some(i) = newest else { break };
            log[i].2 = Some((day, page));
            chapter.push(log[i].1.clone());
        }
        chapters.push(chapter);
    }
    let map = log.into_iter().map(|(at, _, slot)| (at, slot)).collect();
    (chapters, map)
}

/// Reports oracle mismatches on stderr and, if configured, in a file.
#[derive(Debug, Clone, Default)]
pub struct FailureLog {
    pub path: Option<PathBuf>,
}

impl FailureLog {
    pub fn to_file(path: impl Into<PathBuf>) -> Self {
        FailureLog { path: Some(path.into()) }
    }

    pub fn report(&self, check: &str, counterexample: &str) {
        let line = format!("{check}: {counterexample}");
        eprintln!("{line}");
        if let Some(path) = &self.path {
            if let Ok(mut file) = OpenOptions::new().create(true).append(true).open(path) {
                let _ = writeln!(file, "{line}");
            }
        }
    }
}

/// Result of an exhaustive sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sweep {
    pub checked: u64,
    pub counterexamples: Vec<String>,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub(crate) fn fail(&mut self, text: String) {
        if self.counterexamples.len() < 20 {
            self.counterexamples.push(text);
        } else if self.counterexamples.len() == 20 {
            self.counterexamples.push("…".into());
        }
    }

    pub fn merge(mut self, other: Sweep) -> Sweep {
        self.checked += other.checked;
        for c in other.counterexamples {
            self.fail(c);
        }
        self
    }
}
