//! The hexagonal right-angled Coxeter group
//! `⟨a1, a2, a3, b1, b2, b3 | s² = e, [a_k, b_l] = e for k ≠ l⟩`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::words::{Letter, Sentence, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("ball radius {radius} exceeds the cap {cap}")]
    CapExceeded { radius: usize, cap: usize },
}

pub const DEFAULT_BFS_CAP: usize = 10;
pub const BFS_CAP_ENV: &str = "DIARY_EMBED_BFS_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    A,
    B,
}

impl Family {
    pub fn other(self) -> Family {
        match self {
            Family::A => Family::B,
            Family::B => Family::A,
        }
    }
}

/// One of the six involutions. Ordered `a1 < a2 < a3 < b1 < b2 < b3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub family: Family,
    /// 1, 2 or 3.
    pub index: u8,
}

const NAMES: [&str; 6] = ["a1", "a2", "a3", "b1", "b2", "b3"];

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator { family: Family::A, index: 1 },
        Generator { family: Family::A, index: 2 },
        Generator { family: Family::A, index: 3 },
        Generator { family: Family::B, index: 1 },
        Generator { family: Family::B, index: 2 },
        Generator { family: Family::B, index: 3 },
    ];

    pub fn new(family: Family, index: u8) -> Option<Generator> {
        (1..=3).contains(&index).then_some(Generator { family, index })
    }

    /// Position in [`Generator::ALL`].
    pub fn rank(self) -> usize {
        let base = match self.family {
            Family::A => 0,
            Family::B => 3,
        };
        base + self.index as usize - 1
    }

    pub fn name(self) -> &'static str {
        NAMES[self.rank()]
    }

    pub fn commutes(self, other: Generator) -> bool {
        self == other || (self.family != other.family && self.index != other.index)
    }

    pub fn letter(self) -> Letter {
        Letter::named(self.name())
    }

    pub fn from_letter(letter: &Letter) -> Option<Generator> {
        match letter {
            Letter::Named(name) => name.parse().ok(),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NAMES
            .iter()
            .position(|n| *n == s)
            .map(|i| Generator::ALL[i])
            .ok_or_else(|| GroupError::UnknownGenerator(s.to_string()))
    }
}

/// Parses whitespace-separated generators; `e` (or nothing) is the identity.
pub fn parse_word(text: &str) -> Result<Vec<Generator>, GroupError> {
    let text = text.trim();
    if text == "e" {
        return Ok(Vec::new());
    }
    text.split_whitespace().map(str::parse).collect()
}

pub fn render_word(word: &[Generator]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|g| g.name()).collect::<Vec<_>>().join(" ")
}

pub fn to_letters(word: &[Generator]) -> Word {
    word.iter().map(|g| g.letter()).collect()
}

/// Deletes pairs of equal generators separated only by letters commuting
/// with them. The result is geodesic.
pub fn reduce(word: &[Generator]) -> Vec<Generator> {
    let mut out: Vec<Generator> = Vec::with_capacity(word.len());
    for &s in word {
        push_reduced(&mut out, s);
    }
    out
}

/// Appends `s` to an already reduced word, keeping it reduced.
pub fn push_reduced(out: &mut Vec<Generator>, s: Generator) {
    for i in (0..out.len()).rev() {
        let t = out[i];
        if t == s {
            out.remove(i);
            return;
        }
        if !t.commutes(s) {
            break;
        }
    }
    out.push(s);
}

/// Repeatedly moves the smallest letter that can reach the front, for a
/// reduced word. `prefer` picks among the candidates.
fn greedy_order(word: &[Generator], prefer: impl Fn(&[Generator]) -> Generator) -> Vec<Generator> {
    let mut rest: Vec<Generator> = word.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut available: Vec<Generator> = Vec::new();
        for (i, &s) in rest.iter().enumerate() {
            if rest[..i].iter().all(|&t| t.commutes(s) && t != s) && !available.contains(&s) {
                available.push(s);
            }
        }
        let pick = prefer(&available);
        let at = rest.iter().position(|&t| t == pick).expect("picked letter is present");
        out.push(rest.remove(at));
    }
    out
}

/// Shortlex-least word for the element represented by `word`.
pub fn shortlex(word: &[Generator]) -> Vec<Generator> {
    greedy_order(&reduce(word), |available| *available.iter().min().expect("non-empty"))
}

/// An element of the group, stored as its shortlex-least geodesic word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElement {
    word: Vec<Generator>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn generator(s: Generator) -> Self {
        GroupElement { word: vec![s] }
    }

    pub fn word(&self) -> &[Generator] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn letters(&self) -> Word {
        to_letters(&self.word)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_word(&self.word))
    }
}

impl FromStr for GroupElement {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(canonicalize(&parse_word(s)?))
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn canonicalize(word: &[Generator]) -> GroupElement {
    GroupElement { word: shortlex(word) }
}

pub fn multiply(g: &GroupElement, h: &GroupElement) -> GroupElement {
    let mut word = g.word.clone();
    word.extend_from_slice(&h.word);
    canonicalize(&word)
}

pub fn inverse(g: &GroupElement) -> GroupElement {
    let reversed: Vec<Generator> = g.word.iter().rev().copied().collect();
    canonicalize(&reversed)
}

/// A reduced word for `g⁻¹h`.
pub fn quotient_word(g: &GroupElement, h: &GroupElement) -> Vec<Generator> {
    let mut out = Vec::with_capacity(g.len() + h.len());
    for &s in g.word.iter().rev().chain(&h.word) {
        push_reduced(&mut out, s);
    }
    out
}

pub fn group_distance(g: &GroupElement, h: &GroupElement) -> usize {
    quotient_word(g, h).len()
}

/// The geodesic word for `g` with every `side` letter commuted as far left
/// as it will go.
pub fn side_left_rep(g: &GroupElement, side: Family) -> Vec<Generator> {
    // The letters that can reach the front pairwise commute, so there is at
    // most one of each family among them.
    greedy_order(&g.word, |available| {
        available
            .iter()
            .copied()
            .find(|s| s.family == side)
            .unwrap_or(available[0])
    })
}

/// `true` when every `side` letter of `word` is preceded by the word start,
/// another `side` letter, or a letter it does not commute with.
pub fn is_side_left(word: &[Generator], side: Family) -> bool {
    word.iter().enumerate().all(|(i, &s)| {
        s.family != side || i == 0 || word[i - 1].family == side || !word[i - 1].commutes(s)
    })
}

/// Splits a side-left representation into blocks `u_k s_k` and drops the
/// trailing run of other-family letters.
pub fn side_blocks(word: &[Generator], side: Family) -> Vec<Vec<Generator>> {
    let mut blocks = Vec::new();
    let mut current = Vec::new();
    for &s in word {
        current.push(s);
        if s.family == side {
            blocks.push(std::mem::take(&mut current));
        }
    }
    blocks
}

pub fn bfs_cap() -> usize {
    std::env::var(BFS_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BFS_CAP)
}

/// Every element within `radius` of the identity with its length, sphere by
/// sphere, each sphere in shortlex order.
pub fn bfs_ball(radius: usize) -> Result<Vec<(GroupElement, usize)>, GroupError> {
    let cap = bfs_cap();
    if radius > cap {
        return Err(GroupError::CapExceeded { radius, cap });
    }
    let mut ball = vec![(GroupElement::identity(), 0)];
    let mut sphere = vec![GroupElement::identity()];
    for distance in 1..=radius {
        let mut seen = HashSet::new();
        for g in &sphere {
            for s in Generator::ALL {
                let mut word = g.word.clone();
                push_reduced(&mut word, s);
                if word.len() == distance {
                    seen.insert(canonicalize(&word));
                }
            }
        }
        let mut next: Vec<GroupElement> = seen.into_iter().collect();
        next.sort_by(|a, b| a.word.cmp(&b.word));
        ball.extend(next.iter().map(|g| (g.clone(), distance)));
        sphere = next;
    }
    Ok(ball)
}

/// A random reduced word of `target_length` letters, redrawn until its
/// geodesic length is at least half the target.
pub fn random_element_with<R: Rng>(rng: &mut R, target_length: usize) -> GroupElement {
    loop {
        let word: Vec<Generator> =
            (0..target_length).map(|_| Generator::ALL[rng.gen_range(0..6)]).collect();
        let reduced = reduce(&word);
        if 2 * reduced.len() >= target_length {
            return canonicalize(&reduced);
        }
    }
}

pub fn random_element(target_length: usize, seed: u64) -> GroupElement {
    random_element_with(&mut ChaCha8Rng::seed_from_u64(seed), target_length)
}

/// The sentence `F_side(g)`.
pub fn side_sentence(g: &GroupElement, side: Family) -> Sentence {
    let blocks = side_blocks(&side_left_rep(g, side), side);
    Sentence::new(blocks.iter().map(|b| to_letters(b)).collect()).expect("blocks end in a side letter")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Vec<Generator> {
        parse_word(text).unwrap()
    }

    fn g(text: &str) -> GroupElement {
        text.parse().unwrap()
    }

    #[test]
    fn reductions() {
        assert_eq!(render_word(&reduce(&w("a1 b2 a1"))), "b2");
        assert_eq!(render_word(&reduce(&w("a1 a1"))), "e");
        assert_eq!(render_word(&reduce(&w("a1 b1 a1"))), "a1 b1 a1");
        assert_eq!(group_distance(&GroupElement::identity(), &g("a1 b1 a1 b1")), 4);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(g("a1 b2"), g("b2 a1"));
        assert_eq!(g("b2 a1").to_string(), "a1 b2");
        let x = g("b1 a2 a3 b2 a1 b1");
        assert!(multiply(&x, &inverse(&x)).is_identity());
        assert_eq!(g("b3 a2 a1").to_string(), "a2 a1 b3");
    }

    #[test]
    fn a_left_example() {
        let x = g("b1 a2 a3 b2 a1 b1");
        assert_eq!(render_word(&side_left_rep(&x, Family::A)), "a2 a3 b1 a1 b2 b1");
        assert_eq!(side_sentence(&x, Family::A).to_string(), "[a2]|[a3]|[b1][a1]");
        assert!(side_left_rep(&GroupElement::identity(), Family::A).is_empty());
        assert_eq!(side_sentence(&g("b1 b2"), Family::B).to_string(), "[b1]|[b2]");
    }

    #[test]
    fn small_balls() {
        assert_eq!(bfs_ball(0).unwrap(), vec![(GroupElement::identity(), 0)]);
        assert_eq!(bfs_ball(1).unwrap().len(), 7);
        let sizes: Vec<usize> = {
            let ball = bfs_ball(4).unwrap();
            (0..=4).map(|r| ball.iter().filter(|(_, d)| *d == r).count()).collect()
        };
        assert_eq!(sizes, vec![1, 6, 24, 90, 336]);
        assert!(matches!(bfs_ball(DEFAULT_BFS_CAP + 1), Err(GroupError::CapExceeded { .. })));
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(random_element(12, 7), random_element(12, 7));
        assert!(random_element(0, 1).is_identity());
        for seed in 0..200 {
            assert!(2 * random_element(12, seed).len() >= 12);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_word("a4"), Err(GroupError::UnknownGenerator(_))));
        assert_eq!(parse_word("e").unwrap(), vec![]);
        assert_eq!(parse_word("").unwrap(), vec![]);
    }
}
