//! Finite and linear statistics on sentences.
//!
//! A finite statistic maps every sentence into a finite symbol set; its
//! values are returned as a single (possibly composite) [`Letter`]. A linear
//! statistic is a family `stat_c` indexed by `c ≥ 0`, with `stat_c(α)` a word
//! of length at most `τ·c` that only grows (by extension) as `c` increases.
//! Every builtin linear statistic here has a well defined limit word
//! `stat_∞(α)`, and `stat_c(α)` is its first `τ·c` letters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codec::Shape;
use crate::words::{decimal_expansion, Letter, Sentence, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatisticError {
    #[error("unknown statistic kind {0:?}")]
    UnknownKind(String),
    #[error("statistic parameter {name} must be at least 1")]
    ZeroParameter { name: &'static str },
    #[error("malformed statistic descriptor {0:?}")]
    Malformed(String),
    #[error("a product needs at least one statistic")]
    EmptyProduct,
    #[error("{0:?} is a linear statistic where a finite one was expected (or vice versa)")]
    WrongFamily(String),
}

/// A statistic with finite codomain, evaluated on whole sentences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FiniteStatistic {
    /// Last letter of the last word.
    LastLetter,
    /// Final `kappa` letters of the last word, in their original order.
    #[serde(rename = "trunc")]
    TruncKappa { kappa: usize },
    /// `inner` applied to the single word `w_{i-offset+1}` of `w_1 … w_i`.
    Offset { offset: usize, inner: Box<FiniteStatistic> },
    Product { factors: Vec<FiniteStatistic> },
}

impl FiniteStatistic {
    pub fn eval(&self, alpha: &Sentence) -> Letter {
        match self {
            FiniteStatistic::LastLetter => alpha
                .last_word()
                .and_then(Word::last)
                .cloned()
                .unwrap_or(Letter::OutOfRange),
            FiniteStatistic::TruncKappa { kappa } => match alpha.last_word() {
                Some(w) => Letter::Word(w.suffix(*kappa)),
                None => Letter::OutOfRange,
            },
            FiniteStatistic::Offset { offset, inner } => match offset_word(alpha, *offset) {
                Some(single) => inner.eval(&single),
                None => Letter::OutOfRange,
            },
            FiniteStatistic::Product { factors } => {
                Letter::Tuple(factors.iter().map(|f| f.eval(alpha)).collect())
            }
        }
    }

    pub fn validate(&self) -> Result<(), StatisticError> {
        match self {
            FiniteStatistic::LastLetter => Ok(()),
            FiniteStatistic::TruncKappa { kappa } => positive(*kappa, "kappa"),
            FiniteStatistic::Offset { offset, inner } => {
                positive(*offset, "offset")?;
                inner.validate()
            }
            FiniteStatistic::Product { factors } => {
                if factors.is_empty() {
                    return Err(StatisticError::EmptyProduct);
                }
                factors.iter().try_for_each(FiniteStatistic::validate)
            }
        }
    }

    /// Layout of the symbols this statistic can produce over `alphabet`.
    pub fn shape(&self, alphabet: &[Letter]) -> Shape {
        match self {
            FiniteStatistic::LastLetter => Shape::Optional(Box::new(Shape::enumeration(alphabet))),
            FiniteStatistic::TruncKappa { kappa } => Shape::Optional(Box::new(Shape::Seq {
                max_len: *kappa,
                elem: Box::new(Shape::enumeration(alphabet)),
            })),
            FiniteStatistic::Offset { inner, .. } => Shape::Optional(Box::new(inner.shape(alphabet))),
            FiniteStatistic::Product { factors } => {
                Shape::Tuple(factors.iter().map(|f| f.shape(alphabet)).collect())
            }
        }
    }
}

/// Order in which an order-of-priority statistic lists the letters of
/// `w_1 w_2 … w_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Priority {
    Chronological,
    MostRecentFirst,
}

/// A linear statistic `stat_c` of slope `tau`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LinearStatistic {
    /// Final `tau·c` letters of the last word, most recent first.
    #[serde(rename = "ltrunc")]
    LTrunc { tau: usize },
    /// Final `tau·c` decimal digits of the last word's length, least significant first.
    #[serde(rename = "decimal-ltrunc")]
    DecimalLengthLTrunc { tau: usize },
    /// First `tau·c` letters of all letters so far, listed in `priority` order.
    #[serde(rename = "oop")]
    OrderOfPriority { priority: Priority, tau: usize },
    Offset { offset: usize, inner: Box<LinearStatistic> },
}

impl LinearStatistic {
    pub fn tau(&self) -> usize {
        match self {
            LinearStatistic::LTrunc { tau }
            | LinearStatistic::DecimalLengthLTrunc { tau }
            | LinearStatistic::OrderOfPriority { tau, .. } => *tau,
            LinearStatistic::Offset { inner, .. } => inner.tau(),
        }
    }

    /// The limit word `stat_∞(α)`.
    pub fn limit(&self, alpha: &Sentence) -> Word {
        match self {
            LinearStatistic::LTrunc { .. } => {
                alpha.last_word().map(Word::reversed).unwrap_or_default()
            }
            LinearStatistic::DecimalLengthLTrunc { .. } => alpha
                .last_word()
                .map(|w| decimal_expansion(w.len()).reversed())
                .unwrap_or_default(),
            LinearStatistic::OrderOfPriority { priority, .. } => {
                let letters = alpha.words().iter().flat_map(|w| w.letters().iter().cloned());
                match priority {
                    Priority::Chronological => letters.collect(),
                    Priority::MostRecentFirst => {
                        let mut all: Vec<Letter> = letters.collect();
                        all.reverse();
                        Word::new(all)
                    }
                }
            }
            LinearStatistic::Offset { offset, inner } => match offset_word(alpha, *offset) {
                Some(single) => inner.limit(&single),
                None => Word::empty(),
            },
        }
    }

    /// `stat_c(α)`.
    pub fn eval_c(&self, c: usize, alpha: &Sentence) -> Word {
        self.limit(alpha).prefix(self.tau().saturating_mul(c))
    }

    /// The first `n` letters of `stat_∞(α)`.
    pub fn eval_first_n(&self, n: usize, alpha: &Sentence) -> Word {
        self.limit(alpha).prefix(n)
    }

    /// The output alphabet `B`, given the input alphabet.
    pub fn out_alphabet(&self, input: &[Letter]) -> Vec<Letter> {
        match self {
            LinearStatistic::LTrunc { .. } | LinearStatistic::OrderOfPriority { .. } => {
                input.to_vec()
            }
            LinearStatistic::DecimalLengthLTrunc { .. } => {
                ('0'..='9').map(Letter::Char).collect()
            }
            LinearStatistic::Offset { inner, .. } => inner.out_alphabet(input),
        }
    }

    pub fn validate(&self) -> Result<(), StatisticError> {
        match self {
            LinearStatistic::LTrunc { tau }
            | LinearStatistic::DecimalLengthLTrunc { tau }
            | LinearStatistic::OrderOfPriority { tau, .. } => positive(*tau, "tau"),
            LinearStatistic::Offset { offset, inner } => {
                positive(*offset, "offset")?;
                inner.validate()
            }
        }
    }
}

/// `stat_∞` truncated to `n` letters.
pub fn eval_linear_inf(stat: &LinearStatistic, n: usize, alpha: &Sentence) -> Word {
    stat.eval_first_n(n, alpha)
}

fn positive(value: usize, name: &'static str) -> Result<(), StatisticError> {
    if value == 0 {
        Err(StatisticError::ZeroParameter { name })
    } else {
        Ok(())
    }
}

/// The one-word sentence `(w_{i-offset+1})`, if that word exists.
fn offset_word(alpha: &Sentence, offset: usize) -> Option<Sentence> {
    let index = alpha.len().checked_sub(offset)?;
    let word = alpha.word(index)?.clone();
    Some(Sentence::new(vec![word]).expect("sentence words are non-empty"))
}

/// Combines finite statistics into one whose value is the tuple of values.
///
/// A single statistic is returned unchanged.
pub fn product_statistic(stats: &[FiniteStatistic]) -> Result<FiniteStatistic, StatisticError> {
    match stats {
        [] => Err(StatisticError::EmptyProduct),
        [only] => Ok(only.clone()),
        many => Ok(FiniteStatistic::Product { factors: many.to_vec() }),
    }
}

/// Either family of statistic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Statistic {
    Finite(FiniteStatistic),
    Linear(LinearStatistic),
}

impl Statistic {
    pub fn into_finite(self) -> Result<FiniteStatistic, StatisticError> {
        match self {
            Statistic::Finite(f) => Ok(f),
            Statistic::Linear(l) => Err(StatisticError::WrongFamily(l.to_string())),
        }
    }

    pub fn into_linear(self) -> Result<LinearStatistic, StatisticError> {
        match self {
            Statistic::Linear(l) => Ok(l),
            Statistic::Finite(f) => Err(StatisticError::WrongFamily(f.to_string())),
        }
    }
}

/// Builds a builtin statistic from its textual descriptor.
///
/// Descriptors are `last-letter`, `trunc:K`, `ltrunc:T`, `decimal-ltrunc:T`,
/// `oop:chronological:T`, `oop:recent:T`, and `offset:R:<descriptor>`.
pub fn builtin_statistic(descriptor: &str) -> Result<Statistic, StatisticError> {
    let descriptor = descriptor.trim();
    let (kind, rest) = match descriptor.split_once(':') {
        Some((k, r)) => (k, Some(r)),
        None => (descriptor, None),
    };
    let number = |text: Option<&str>| -> Result<usize, StatisticError> {
        text.and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| StatisticError::Malformed(descriptor.to_string()))
    };
    let stat = match kind {
        "last-letter" if rest.is_none() => Statistic::Finite(FiniteStatistic::LastLetter),
        "trunc" => Statistic::Finite(FiniteStatistic::TruncKappa { kappa: number(rest)? }),
        "ltrunc" => Statistic::Linear(LinearStatistic::LTrunc { tau: number(rest)? }),
        "decimal-ltrunc" => {
            Statistic::Linear(LinearStatistic::DecimalLengthLTrunc { tau: number(rest)? })
        }
        "oop" => {
            let (order, tau) = rest
                .and_then(|r| r.split_once(':'))
                .ok_or_else(|| StatisticError::Malformed(descriptor.to_string()))?;
            let priority = match order {
                "chronological" => Priority::Chronological,
                "recent" => Priority::MostRecentFirst,
                _ => return Err(StatisticError::Malformed(descriptor.to_string())),
            };
            Statistic::Linear(LinearStatistic::OrderOfPriority { priority, tau: number(Some(tau))? })
        }
        "offset" => {
            let (offset, inner) = rest
                .and_then(|r| r.split_once(':'))
                .ok_or_else(|| StatisticError::Malformed(descriptor.to_string()))?;
            let offset = number(Some(offset))?;
            match builtin_statistic(inner)? {
                Statistic::Finite(f) => {
                    Statistic::Finite(FiniteStatistic::Offset { offset, inner: Box::new(f) })
                }
                Statistic::Linear(l) => {
                    Statistic::Linear(LinearStatistic::Offset { offset, inner: Box::new(l) })
                }
            }
        }
        "last-letter" => return Err(StatisticError::Malformed(descriptor.to_string())),
        other => return Err(StatisticError::UnknownKind(other.to_string())),
    };
    match &stat {
        Statistic::Finite(f) => f.validate()?,
        Statistic::Linear(l) => l.validate()?,
    }
    Ok(stat)
}

impl FromStr for Statistic {
    type Err = StatisticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        builtin_statistic(s)
    }
}

impl fmt::Display for FiniteStatistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteStatistic::LastLetter => f.write_str("last-letter"),
            FiniteStatistic::TruncKappa { kappa } => write!(f, "trunc:{kappa}"),
            FiniteStatistic::Offset { offset, inner } => write!(f, "offset:{offset}:{inner}"),
            FiniteStatistic::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
                write!(f, "product({})", parts.join(","))
            }
        }
    }
}

impl fmt::Display for LinearStatistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearStatistic::LTrunc { tau } => write!(f, "ltrunc:{tau}"),
            LinearStatistic::DecimalLengthLTrunc { tau } => write!(f, "decimal-ltrunc:{tau}"),
            LinearStatistic::OrderOfPriority { priority, tau } => {
                let order = match priority {
                    Priority::Chronological => "chronological",
                    Priority::MostRecentFirst => "recent",
                };
                write!(f, "oop:{order}:{tau}")
            }
            LinearStatistic::Offset { offset, inner } => write!(f, "offset:{offset}:{inner}"),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::Finite(s) => s.fmt(f),
            Statistic::Linear(s) => s.fmt(f),
        }
    }
}
