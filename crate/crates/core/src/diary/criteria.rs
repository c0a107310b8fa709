//! Predicates deciding whether a pair of sentences satisfies one of the four
//! criteria, returning the first witness found.
//!
//! Pairs are read around their lowest common ancestor: `α = u_1…u_p u_{p+1}…u_{p+m}`
//! and `β = u_1…u_p u'_{p+1}…u'_{p+n}`. Witness indices `j` are 1-based depths
//! below the ancestor and are only searched where both depth-`(p+j)` prefixes
//! exist, scanning `j` upwards and statistics in list order.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::rational::Rational;
use crate::statistics::{FiniteStatistic, LinearStatistic};
use crate::words::{awl_or_zero, common_prefix_len, Sentence, Word};

use super::DiaryError;

/// A depth `j` and the index of the statistic that separates the pair there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub j: usize,
    pub statistic: usize,
}

/// A pair of sentences with its `p`, `m`, `n` decomposition.
#[derive(Debug, Clone, Copy)]
pub struct PairView<'a> {
    pub alpha: &'a Sentence,
    pub beta: &'a Sentence,
    pub p: usize,
    pub m: usize,
    pub n: usize,
}

impl<'a> PairView<'a> {
    pub fn new(alpha: &'a Sentence, beta: &'a Sentence) -> Result<Self, DiaryError> {
        if alpha == beta {
            return Err(DiaryError::IdenticalPair);
        }
        let p = common_prefix_len(alpha.words(), beta.words());
        Ok(PairView { alpha, beta, p, m: alpha.len() - p, n: beta.len() - p })
    }

    pub fn distance(&self) -> usize {
        self.m + self.n
    }

    pub fn min_tail(&self) -> usize {
        self.m.min(self.n)
    }

    /// `u_{p+j}` and `u'_{p+j}`.
    pub fn words_at(&self, j: usize) -> (&'a Word, &'a Word) {
        (&self.alpha.words()[self.p + j - 1], &self.beta.words()[self.p + j - 1])
    }

    pub fn prefixes(&self, j: usize) -> (Sentence, Sentence) {
        (self.alpha.prefix(self.p + j), self.beta.prefix(self.p + j))
    }

    /// Both AWLs of the tails strictly below depth `p+j` are at most `bound`.
    /// An empty tail counts as AWL zero.
    fn tails_below_within(&self, j: usize, bound: Rational) -> bool {
        let below_a = &self.alpha.words()[self.p + j..];
        let below_b = &self.beta.words()[self.p + j..];
        awl_or_zero(below_a) <= bound && awl_or_zero(below_b) <= bound
    }

    /// Largest admissible `j` for a bound of the form `δ·min(m,n) + J`.
    fn j_limit(&self, delta: Rational, jump: usize) -> usize {
        let scaled = (delta * Rational::from_integer(self.min_tail() as u64)).floor();
        let bound = scaled.to_integer().to_usize().unwrap_or(usize::MAX).saturating_add(jump);
        bound.min(self.min_tail())
    }
}

fn first_finite_split(view: &PairView<'_>, j: usize, stats: &[FiniteStatistic]) -> Option<usize> {
    let (a, b) = view.prefixes(j);
    stats.iter().position(|s| s.eval(&a) != s.eval(&b))
}

fn first_linear_split(view: &PairView<'_>, j: usize, stats: &[LinearStatistic]) -> Option<usize> {
    let (a, b) = view.prefixes(j);
    let c = view.distance();
    stats.iter().position(|s| s.eval_c(c, &a) != s.eval_c(c, &b))
}

pub fn check_aries(
    alpha: &Sentence,
    beta: &Sentence,
    stats: &[FiniteStatistic],
    delta: Rational,
    jump: usize,
) -> Result<Option<Witness>, DiaryError> {
    super::validate_delta(delta)?;
    let view = PairView::new(alpha, beta)?;
    Ok((1..=view.j_limit(delta, jump)).find_map(|j| {
        first_finite_split(&view, j, stats).map(|statistic| Witness { j, statistic })
    }))
}

pub fn check_leo(
    alpha: &Sentence,
    beta: &Sentence,
    stats: &[FiniteStatistic],
    jump: usize,
) -> Result<Option<Witness>, DiaryError> {
    check_aries(alpha, beta, stats, Rational::zero(), jump)
}

/// Constants shared by the Virgo criterion and its diary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VirgoParams {
    #[serde(with = "crate::rational")]
    pub delta: Rational,
    pub jump: usize,
    #[serde(with = "crate::rational")]
    pub awl_bound: Rational,
    #[serde(with = "crate::rational")]
    pub epsilon: Rational,
}

impl VirgoParams {
    pub fn validate(&self) -> Result<(), DiaryError> {
        super::validate_delta(self.delta)?;
        if self.jump == 0 {
            return Err(DiaryError::InvalidConstant("J must be at least 1".into()));
        }
        if self.awl_bound.is_zero() {
            return Err(DiaryError::InvalidConstant("N must be positive".into()));
        }
        if self.epsilon.is_zero() {
            return Err(DiaryError::InvalidConstant("epsilon must be positive".into()));
        }
        Ok(())
    }
}

pub fn check_virgo(
    alpha: &Sentence,
    beta: &Sentence,
    stats: &[LinearStatistic],
    params: &VirgoParams,
) -> Result<Option<Witness>, DiaryError> {
    params.validate()?;
    let view = PairView::new(alpha, beta)?;
    let long = params.epsilon * Rational::from_integer(view.distance() as u64);
    for j in 1..=view.j_limit(params.delta, params.jump) {
        if !view.tails_below_within(j, params.awl_bound) {
            continue;
        }
        let (u, u2) = view.words_at(j);
        let differs_or_long = Rational::from_integer(u.len() as u64) >= long
            || Rational::from_integer(u2.len() as u64) >= long
            || u != u2;
        if !differs_or_long {
            continue;
        }
        if let Some(statistic) = first_linear_split(&view, j, stats) {
            return Ok(Some(Witness { j, statistic }));
        }
    }
    Ok(None)
}

pub fn check_taurus(
    alpha: &Sentence,
    beta: &Sentence,
    stats: &[LinearStatistic],
    jump: usize,
    awl_bound: Rational,
    epsilon: Rational,
) -> Result<Option<usize>, DiaryError> {
    VirgoParams { delta: Rational::zero(), jump, awl_bound, epsilon }.validate()?;
    let view = PairView::new(alpha, beta)?;
    let long = epsilon * Rational::from_integer(view.distance() as u64);
    let short = |j: usize| {
        let (u, u2) = view.words_at(j);
        Rational::from_integer(u.len() as u64) <= long
            && Rational::from_integer(u2.len() as u64) <= long
    };
    'candidates: for j in 1..=jump.min(view.min_tail()) {
        if !view.tails_below_within(j, awl_bound) {
            continue;
        }
        // Walk j' downwards while every word strictly between j' and j is short.
        for j_prime in (1..=j).rev() {
            if j_prime < j && !short(j_prime + 1) {
                break;
            }
            if first_linear_split(&view, j_prime, stats).is_none() {
                continue 'candidates;
            }
        }
        return Ok(Some(j));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statistics::LinearStatistic as L;

    fn s(text: &str) -> Sentence {
        text.parse().unwrap()
    }

    fn r(n: u64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn aries_examples() {
        let stats = [FiniteStatistic::LastLetter];
        let hit = check_aries(&s("ab|cd"), &s("ab|ce"), &stats, r(0), 1).unwrap();
        assert_eq!(hit, Some(Witness { j: 1, statistic: 0 }));
        let hit = check_leo(&s("ab|cd"), &s("ab|cx|y"), &stats, 1).unwrap();
        assert_eq!(hit, Some(Witness { j: 1, statistic: 0 }));
        // same last letters at depth 1; the split appears only at depth 2
        assert_eq!(check_leo(&s("ab|cd|e"), &s("ab|xd|f"), &stats, 1).unwrap(), None);
        assert_eq!(
            check_leo(&s("ab|cd|e"), &s("ab|xd|f"), &stats, 2).unwrap(),
            Some(Witness { j: 2, statistic: 0 })
        );
        assert_eq!(check_leo(&s("a"), &s("a"), &stats, 1), Err(DiaryError::IdenticalPair));
    }

    #[test]
    fn aries_delta_widens_range() {
        let stats = [FiniteStatistic::LastLetter];
        let a = s("xa|a|a|a|b");
        let b = s("ya|a|a|a|c");
        assert_eq!(check_aries(&a, &b, &stats, r(0), 1).unwrap(), None);
        // δ·min(m,n) + J = 5·(4/5) + 1 = 5
        let hit = check_aries(&a, &b, &stats, Rational::new(4, 5), 1).unwrap();
        assert_eq!(hit, Some(Witness { j: 5, statistic: 0 }));
    }

    #[test]
    fn virgo_short_tails() {
        let stats = [L::LTrunc { tau: 12 }, L::DecimalLengthLTrunc { tau: 12 }];
        let params = VirgoParams { delta: r(0), jump: 1, awl_bound: r(18), epsilon: r(1) };
        let hit = check_virgo(&s("ab|cd|ee"), &s("ab|ce|e"), &stats, &params).unwrap();
        assert_eq!(hit, Some(Witness { j: 1, statistic: 0 }));
    }

    #[test]
    fn virgo_long_tails_fail() {
        let stats = [L::LTrunc { tau: 12 }];
        let params = VirgoParams { delta: r(0), jump: 2, awl_bound: r(18), epsilon: r(1) };
        let long = "a".repeat(40);
        let a = s(&format!("ab|cd|{long}|{long}"));
        let b = s(&format!("ab|ce|{long}|{long}b"));
        assert_eq!(check_virgo(&a, &b, &stats, &params).unwrap(), None);
    }

    #[test]
    fn virgo_length_only_split() {
        // same last twelve letters, lengths differ
        let stats = [L::LTrunc { tau: 1 }, L::DecimalLengthLTrunc { tau: 1 }];
        let params = VirgoParams { delta: r(0), jump: 1, awl_bound: r(18), epsilon: r(1) };
        let a = s(&format!("{}|q", "a".repeat(12)));
        let b = s(&format!("{}|q", "a".repeat(13)));
        assert_eq!(check_virgo(&a, &b, &stats, &params).unwrap(), Some(Witness { j: 1, statistic: 1 }));
    }

    #[test]
    fn taurus_examples() {
        let stats = [L::LTrunc { tau: 12 }];
        assert_eq!(check_taurus(&s("ab|cd|e"), &s("ab|ce|f"), &stats, 2, r(18), r(1)).unwrap(), Some(1));
        let long = "a".repeat(50);
        let a = s(&format!("ab|cd|{long}|{long}"));
        let b = s(&format!("ab|ce|{long}|{long}"));
        assert_eq!(check_taurus(&a, &b, &stats, 2, r(18), r(1)).unwrap(), None);
        assert!(matches!(
            check_taurus(&s("a"), &s("b"), &stats, 0, r(18), r(1)),
            Err(DiaryError::InvalidConstant(_))
        ));
    }

    #[test]
    fn taurus_cascade_requires_every_short_level() {
        // at j = 2 the depth-2 words differ but depth 1 words agree in the
        // statistic window; with short words in between the cascade fails at j' = 1
        let stats = [L::LTrunc { tau: 1 }];
        let a = s("x|aab|c|d");
        let b = s("x|bab|e|d");
        // m + n = 6, so the window is 6 letters and depth 1 is separated
        assert_eq!(check_taurus(&a, &b, &stats, 2, r(18), r(1)).unwrap(), Some(1));
        let a = s(&format!("x|{}b|c|d", "a".repeat(20)));
        let b = s(&format!("x|{}b|e|d", "c".repeat(20)));
        // window of 6 letters only sees trailing a's / c's at depth 1, which differ
        assert_eq!(check_taurus(&a, &b, &stats, 2, r(18), r(1)).unwrap(), Some(1));
        let a = s(&format!("x|c{}b|c|d", "a".repeat(20)));
        let b = s(&format!("x|d{}b|e|d", "a".repeat(20)));
        // depth 1 is invisible to a 6-letter window, depth 2 differs, and the
        // depth-2 words are short, so j = 2 still needs depth 1 separated
        assert_eq!(check_taurus(&a, &b, &stats, 2, r(100), r(1)).unwrap(), None);
    }
}
