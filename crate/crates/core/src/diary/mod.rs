//! Diaries: height- and order-preserving maps from a sentence-tree into the
//! sentence-tree of a finite alphabet of chapters.

mod alice;
mod criteria;
mod virgo;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::codec::Shape;
use crate::rational::Rational;
use crate::statistics::{product_statistic, FiniteStatistic, LinearStatistic, StatisticError};
use crate::words::{Letter, Sentence, Word};

pub use alice::{alice_diary, alice_diary_with_log, AliceDiaryState, Event, Page};
pub use criteria::{check_aries, check_leo, check_taurus, check_virgo, PairView, VirgoParams, Witness};
pub use virgo::{taurus_diary, virgo_diary, virgo_diary_with_kappa, virgo_i_map, VirgoConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiaryError {
    #[error("kappa must be at least 1")]
    ZeroKappa,
    #[error("the two sentences are equal")]
    IdenticalPair,
    #[error("invalid constant: {0}")]
    InvalidConstant(String),
    #[error("at least one statistic is required")]
    EmptyStatistics,
    #[error("diaries are defined over different input alphabets")]
    AlphabetMismatch,
    #[error("letter {0} is outside the diary's input alphabet")]
    ForeignLetter(String),
    #[error(transparent)]
    Statistic(#[from] StatisticError),
}

pub(crate) fn validate_delta(delta: Rational) -> Result<(), DiaryError> {
    if delta >= Rational::one() {
        return Err(DiaryError::InvalidConstant("delta must lie in [0, 1)".into()));
    }
    Ok(())
}

/// The criterion under which a lower bound is guaranteed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "criterion", rename_all = "kebab-case")]
pub enum Criterion {
    Aries {
        #[serde(with = "crate::rational")]
        delta: Rational,
        jump: usize,
    },
    Virgo {
        #[serde(with = "crate::rational")]
        delta: Rational,
        jump: usize,
        #[serde(with = "crate::rational")]
        awl_bound: Rational,
        #[serde(with = "crate::rational")]
        epsilon: Rational,
    },
    Taurus {
        jump: usize,
        #[serde(with = "crate::rational")]
        awl_bound: Rational,
        #[serde(with = "crate::rational")]
        epsilon: Rational,
    },
}

/// `d(Dα, Dβ) ≥ d(α, β) / m` for every pair satisfying `criterion`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    #[serde(flatten)]
    pub criterion: Criterion,
    #[serde(with = "crate::rational")]
    pub m: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "diary", rename_all = "kebab-case")]
pub enum DiaryKind {
    Associated { stat: FiniteStatistic },
    Alice { kappa: usize },
    Virgo { statistics: Vec<LinearStatistic>, constants: VirgoConstants },
    Combined { first: Box<Diary>, second: Box<Diary> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diary {
    #[serde(flatten)]
    pub kind: DiaryKind,
    pub bounds: Vec<LowerBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<Letter>>,
}

impl Diary {
    fn unbounded(kind: DiaryKind) -> Self {
        Diary { kind, bounds: Vec::new(), domain: None }
    }

    /// Restricts the diary to sentences over `alphabet`.
    pub fn with_domain(mut self, alphabet: &[Letter]) -> Self {
        let mut letters = alphabet.to_vec();
        letters.sort();
        letters.dedup();
        self.domain = Some(letters);
        self
    }

    pub fn apply(&self, alpha: &Sentence) -> Result<Sentence, DiaryError> {
        if let Some(domain) = &self.domain {
            for letter in alpha.words().iter().flat_map(|w| w.letters()) {
                if domain.binary_search(letter).is_err() {
                    return Err(DiaryError::ForeignLetter(letter.to_string()));
                }
            }
        }
        self.apply_unchecked(alpha)
    }

    fn apply_unchecked(&self, alpha: &Sentence) -> Result<Sentence, DiaryError> {
        match &self.kind {
            DiaryKind::Associated { stat } => {
                let mut prefix = Sentence::empty();
                let mut chapters = Vec::with_capacity(alpha.len());
                for word in alpha.words() {
                    prefix.push(word.clone()).expect("sentence words are non-empty");
                    chapters.push(Word::new(vec![stat.eval(&prefix)]));
                }
                Ok(Sentence::new(chapters).expect("chapters have one letter"))
            }
            DiaryKind::Alice { kappa } => alice_diary(*kappa, alpha),
            DiaryKind::Virgo { statistics, constants } => {
                alice_diary(constants.kappa, &virgo_i_map(statistics, constants, alpha))
            }
            DiaryKind::Combined { first, second } => {
                let a = first.apply_unchecked(alpha)?;
                let b = second.apply_unchecked(alpha)?;
                let chapters = a
                    .into_words()
                    .into_iter()
                    .zip(b.into_words())
                    .map(|(x, y)| Word::new(vec![Letter::Tuple(vec![Letter::Word(x), Letter::Word(y)])]))
                    .collect();
                Ok(Sentence::new(chapters).expect("chapters have one letter"))
            }
        }
    }

    /// Layout of `Letter::Word(chapter)` for every chapter this diary can
    /// write on sentences over `alphabet`.
    pub fn chapter_shape(&self, alphabet: &[Letter]) -> Shape {
        match &self.kind {
            DiaryKind::Associated { stat } => Shape::Single(Box::new(stat.shape(alphabet))),
            DiaryKind::Alice { kappa } => {
                Shape::Seq { max_len: *kappa, elem: Box::new(Shape::enumeration(alphabet)) }
            }
            DiaryKind::Virgo { statistics, constants } => Shape::Seq {
                max_len: constants.kappa,
                elem: Box::new(Shape::enumeration(&virgo::enlarged_alphabet(statistics, alphabet))),
            },
            DiaryKind::Combined { first, second } => Shape::Single(Box::new(Shape::Tuple(vec![
                first.chapter_shape(alphabet),
                second.chapter_shape(alphabet),
            ]))),
        }
    }

    /// The largest lower-bound constant carried by this diary, if any.
    pub fn lower_bound_m(&self) -> Option<Rational> {
        self.bounds.iter().map(|b| b.m).max()
    }

    pub fn bound_for(&self, pick: impl Fn(&Criterion) -> bool) -> Option<Rational> {
        self.bounds.iter().filter(|b| pick(&b.criterion)).map(|b| b.m).max()
    }

    /// The Alice's Diary parameter used internally, if there is one.
    pub fn kappa(&self) -> Option<usize> {
        match &self.kind {
            DiaryKind::Alice { kappa } => Some(*kappa),
            DiaryKind::Virgo { constants, .. } => Some(constants.kappa),
            _ => None,
        }
    }
}

pub fn associated_diary(stat: FiniteStatistic) -> Diary {
    Diary::unbounded(DiaryKind::Associated { stat })
}

pub fn alice(kappa: usize) -> Result<Diary, DiaryError> {
    if kappa == 0 {
        return Err(DiaryError::ZeroKappa);
    }
    Ok(Diary::unbounded(DiaryKind::Alice { kappa }))
}

pub fn aries_m(delta: Rational, jump: usize) -> Result<Rational, DiaryError> {
    validate_delta(delta)?;
    if jump == 0 {
        return Err(DiaryError::InvalidConstant("J must be at least 1".into()));
    }
    Ok(Rational::from_integer(2 * jump as u64) / (Rational::one() - delta))
}

pub fn aries_diary(stats: &[FiniteStatistic], delta: Rational, jump: usize) -> Result<Diary, DiaryError> {
    if stats.is_empty() {
        return Err(DiaryError::EmptyStatistics);
    }
    let m = aries_m(delta, jump)?;
    let stat = product_statistic(stats)?;
    stat.validate()?;
    let mut diary = associated_diary(stat);
    diary.bounds.push(LowerBound { criterion: Criterion::Aries { delta, jump }, m });
    Ok(diary)
}

pub fn leo_diary(stats: &[FiniteStatistic], jump: usize) -> Result<Diary, DiaryError> {
    aries_diary(stats, Rational::zero(), jump)
}

/// Chapter-wise pairing of two diaries.
pub fn combine_diaries(first: Diary, second: Diary) -> Result<Diary, DiaryError> {
    let domain = match (&first.domain, &second.domain) {
        (Some(a), Some(b)) if a != b => return Err(DiaryError::AlphabetMismatch),
        (Some(a), _) | (_, Some(a)) => Some(a.clone()),
        (None, None) => None,
    };
    let bounds = first.bounds.iter().chain(&second.bounds).cloned().collect();
    Ok(Diary {
        kind: DiaryKind::Combined { first: Box::new(first), second: Box::new(second) },
        bounds,
        domain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::sentence_tree_distance;

    fn s(text: &str) -> Sentence {
        text.parse().unwrap()
    }

    #[test]
    fn last_letter_diary() {
        let diary = associated_diary(FiniteStatistic::LastLetter);
        assert_eq!(diary.apply(&s("abc|bc|aa")).unwrap(), s("c|c|a"));
        assert_eq!(diary.apply(&s("")).unwrap(), s(""));
    }

    #[test]
    fn aries_constant() {
        let diary = aries_diary(&[FiniteStatistic::LastLetter], Rational::zero(), 2).unwrap();
        assert_eq!(diary.lower_bound_m(), Some(Rational::from_integer(4)));
        assert_eq!(diary.kind, associated_diary(FiniteStatistic::LastLetter).kind);
        assert_eq!(aries_diary(&[], Rational::zero(), 2), Err(DiaryError::EmptyStatistics));
        assert!(aries_diary(&[FiniteStatistic::LastLetter], Rational::one(), 2).is_err());
        assert_eq!(aries_m(Rational::new(1, 2), 3).unwrap(), Rational::from_integer(12));
    }

    #[test]
    fn combined_diary_pairs_chapters() {
        let d = associated_diary(FiniteStatistic::LastLetter);
        let both = combine_diaries(d.clone(), alice(2).unwrap()).unwrap();
        let (a, b) = (s("ab|cd|e"), s("ab|ce|e"));
        let db = sentence_tree_distance(&both.apply(&a).unwrap(), &both.apply(&b).unwrap());
        let d1 = sentence_tree_distance(&d.apply(&a).unwrap(), &d.apply(&b).unwrap());
        assert!(db >= d1);
        let diag = combine_diaries(d.clone(), d.clone()).unwrap();
        assert_eq!(
            sentence_tree_distance(&diag.apply(&a).unwrap(), &diag.apply(&b).unwrap()),
            d1
        );
    }

    #[test]
    fn domains() {
        let ab = ['a'.into(), 'b'.into()];
        let d = associated_diary(FiniteStatistic::LastLetter).with_domain(&ab);
        assert!(matches!(d.apply(&s("abc")), Err(DiaryError::ForeignLetter(_))));
        let other = alice(1).unwrap().with_domain(&['a'.into()]);
        assert_eq!(combine_diaries(d.clone(), other), Err(DiaryError::AlphabetMismatch));
        assert!(combine_diaries(d, alice(1).unwrap()).is_ok());
    }

    #[test]
    fn shapes_fit_outputs() {
        let ab: Vec<Letter> = vec!['a'.into(), 'b'.into()];
        let d = combine_diaries(associated_diary(FiniteStatistic::LastLetter), alice(3).unwrap()).unwrap();
        let shape = d.chapter_shape(&ab);
        for chapter in d.apply(&s("abab|b|aaaa")).unwrap().words() {
            let mut bits = Vec::new();
            shape.encode(&Letter::Word(chapter.clone()), &mut bits).unwrap();
            assert_eq!(bits.len(), shape.width());
        }
    }
}
