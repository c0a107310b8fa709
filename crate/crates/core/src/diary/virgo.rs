//! The Virgo diary `AD_κ ∘ I` and the Taurus diary built from it.

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::rational::Rational;
use crate::statistics::LinearStatistic;
use crate::words::{Letter, Sentence, Word};

use super::{Criterion, Diary, DiaryError, DiaryKind, LowerBound, VirgoParams};

/// Constants of the Virgo diary, derived from the criterion parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VirgoConstants {
    #[serde(with = "crate::rational")]
    pub delta: Rational,
    pub jump: usize,
    #[serde(with = "crate::rational")]
    pub awl_bound: Rational,
    #[serde(with = "crate::rational")]
    pub epsilon: Rational,
    pub tau: usize,
    pub omega: usize,
    #[serde(with = "crate::rational")]
    pub u: Rational,
    #[serde(with = "crate::rational")]
    pub v: Rational,
    pub kappa: usize,
    #[serde(with = "crate::rational")]
    pub m: Rational,
}

fn int(n: usize) -> Rational {
    Rational::from_integer(n as u64)
}

fn to_usize(value: Rational) -> Result<usize, DiaryError> {
    value
        .to_integer()
        .to_usize()
        .ok_or_else(|| DiaryError::InvalidConstant("constant overflows".into()))
}

impl VirgoConstants {
    pub fn derive(stats: &[LinearStatistic], params: &VirgoParams) -> Result<Self, DiaryError> {
        params.validate()?;
        let tau = stats.iter().map(LinearStatistic::tau).max().ok_or(DiaryError::EmptyStatistics)?;
        for stat in stats {
            stat.validate()?;
        }
        let VirgoParams { delta, jump, awl_bound, epsilon } = *params;
        let slack = Rational::one() - delta;
        let omega = to_usize((int(tau) / epsilon).ceil())?;
        let base = int(omega) * awl_bound + Rational::one();
        let u = int(12 * tau * jump) / slack + base;
        let v = (int(tau) + epsilon) * int(12 * jump) / slack + base;
        let candidates = [
            int(16) * u / slack,
            int(64 * jump * tau) / slack,
            int(16) * v / slack,
            int(64 * jump) * (int(tau) + epsilon) / slack,
        ];
        let largest = candidates.into_iter().max().expect("four candidates");
        let kappa = to_usize(largest.floor())? + 1;
        let m = [int(3), int(8) / slack, int(32 * jump) / slack].into_iter().max().expect("three candidates");
        Ok(VirgoConstants { delta, jump, awl_bound, epsilon, tau, omega, u, v, kappa, m })
    }

    /// Same `ω`, different `κ`. The lower bound no longer applies.
    pub fn with_kappa(mut self, kappa: usize) -> Result<Self, DiaryError> {
        if kappa == 0 {
            return Err(DiaryError::ZeroKappa);
        }
        self.kappa = kappa;
        Ok(self)
    }
}

/// `B^k ∪ {⋆}` for every statistic, and `A' = {★} ∪ (A × Π(B^k ∪ {⋆}))`.
pub(super) fn enlarged_alphabet(stats: &[LinearStatistic], alphabet: &[Letter]) -> Vec<Letter> {
    let mut tuples: Vec<Vec<Letter>> = alphabet.iter().map(|a| vec![a.clone()]).collect();
    for stat in stats {
        let mut column = stat.out_alphabet(alphabet);
        column.push(Letter::Pad);
        column.sort();
        column.dedup();
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                column.iter().map(move |b| {
                    let mut next = t.clone();
                    next.push(b.clone());
                    next
                })
            })
            .collect();
    }
    std::iter::once(Letter::Star).chain(tuples.into_iter().map(Letter::Tuple)).collect()
}

/// The isometric embedding `I` into starred sentences over `A'`.
pub fn virgo_i_map(stats: &[LinearStatistic], constants: &VirgoConstants, alpha: &Sentence) -> Sentence {
    let omega = constants.omega;
    let mut prefix = Sentence::empty();
    let mut out = Vec::with_capacity(alpha.len());
    for word in alpha.words() {
        prefix.push(word.clone()).expect("sentence words are non-empty");
        let width = omega * word.len();
        let columns: Vec<Vec<Letter>> = stats
            .iter()
            .map(|stat| {
                let mut column = stat.eval_first_n(width, &prefix).into_letters();
                column.resize(width, Letter::Pad);
                column.reverse();
                column
            })
            .collect();
        let mut letters = Vec::with_capacity(width + 1);
        letters.push(Letter::Star);
        for t in 0..width {
            let mut tuple = Vec::with_capacity(stats.len() + 1);
            tuple.push(word.letters()[t % word.len()].clone());
            tuple.extend(columns.iter().map(|c| c[t].clone()));
            letters.push(Letter::Tuple(tuple));
        }
        out.push(Word::new(letters));
    }
    Sentence::new(out).expect("starred words are non-empty")
}

pub fn virgo_diary(stats: &[LinearStatistic], params: &VirgoParams) -> Result<Diary, DiaryError> {
    let constants = VirgoConstants::derive(stats, params)?;
    let criterion = Criterion::Virgo {
        delta: params.delta,
        jump: params.jump,
        awl_bound: params.awl_bound,
        epsilon: params.epsilon,
    };
    Ok(Diary {
        kind: DiaryKind::Virgo { statistics: stats.to_vec(), constants },
        bounds: vec![LowerBound { criterion, m: constants.m }],
        domain: None,
    })
}

/// The Virgo construction with an explicit `κ`; carries no lower bound.
pub fn virgo_diary_with_kappa(
    stats: &[LinearStatistic],
    params: &VirgoParams,
    kappa: usize,
) -> Result<Diary, DiaryError> {
    let constants = VirgoConstants::derive(stats, params)?.with_kappa(kappa)?;
    Ok(Diary {
        kind: DiaryKind::Virgo { statistics: stats.to_vec(), constants },
        bounds: Vec::new(),
        domain: None,
    })
}

pub fn taurus_diary(
    stats: &[LinearStatistic],
    jump: usize,
    awl_bound: Rational,
    epsilon: Rational,
) -> Result<Diary, DiaryError> {
    let widened = awl_bound + int(6 * jump * jump) * epsilon;
    let inner = VirgoParams { delta: Rational::zero(), jump, awl_bound: widened, epsilon };
    let mut diary = virgo_diary(stats, &inner)?;
    let m = diary.lower_bound_m().expect("virgo diaries carry a bound").max(int(3));
    diary.bounds.push(LowerBound { criterion: Criterion::Taurus { jump, awl_bound, epsilon }, m });
    Ok(diary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statistics::LinearStatistic as L;

    fn standard_stats() -> Vec<LinearStatistic> {
        vec![L::LTrunc { tau: 12 }, L::DecimalLengthLTrunc { tau: 12 }]
    }

    fn standard_params() -> VirgoParams {
        VirgoParams {
            delta: Rational::zero(),
            jump: 2,
            awl_bound: int(18),
            epsilon: Rational::one(),
        }
    }

    #[test]
    fn standard_constants() {
        let c = VirgoConstants::derive(&standard_stats(), &standard_params()).unwrap();
        assert_eq!((c.tau, c.omega), (12, 12));
        assert_eq!((c.u, c.v), (int(505), int(529)));
        assert_eq!(c.kappa, 8465);
        assert_eq!(c.m, int(64));
    }

    #[test]
    fn taurus_forwards_wider_bound() {
        let d = taurus_diary(&standard_stats(), 2, int(18), Rational::one()).unwrap();
        let DiaryKind::Virgo { constants, .. } = &d.kind else { panic!("expected a virgo diary") };
        assert_eq!(constants.awl_bound, int(42));
        assert_eq!((constants.u, constants.v, constants.kappa), (int(793), int(817), 13073));
        assert_eq!(d.lower_bound_m(), Some(int(64)));
        assert!(taurus_diary(&standard_stats(), 0, int(18), Rational::one()).is_err());
    }

    #[test]
    fn invalid_constants() {
        let mut p = standard_params();
        p.delta = Rational::one();
        assert!(virgo_diary(&standard_stats(), &p).is_err());
        assert_eq!(virgo_diary(&[], &standard_params()), Err(DiaryError::EmptyStatistics));
        let mut p = standard_params();
        p.epsilon = Rational::zero();
        assert!(virgo_diary(&standard_stats(), &p).is_err());
    }

    #[test]
    fn fractional_epsilon_rounds_omega_up() {
        let mut p = standard_params();
        p.epsilon = Rational::new(5, 1);
        let c = VirgoConstants::derive(&standard_stats(), &p).unwrap();
        assert_eq!(c.omega, 3);
    }

    #[test]
    fn i_map_shape() {
        let stats = vec![L::LTrunc { tau: 1 }];
        let p = VirgoParams { delta: Rational::zero(), jump: 1, awl_bound: int(2), epsilon: Rational::new(1, 2) };
        let c = VirgoConstants::derive(&stats, &p).unwrap();
        assert_eq!(c.omega, 2);
        let alpha: Sentence = "ab|c".parse().unwrap();
        let image = virgo_i_map(&stats, &c, &alpha);
        assert_eq!(image.words()[0].len(), 1 + 2 * 2);
        assert_eq!(image.words()[1].len(), 1 + 2);
        // reversed(norm_4(ba)) = ⋆⋆ab
        let first = &image.words()[0].letters()[1..];
        let t = |a: char, b: Letter| Letter::Tuple(vec![a.into(), b]);
        assert_eq!(
            first,
            &[t('a', Letter::Pad), t('b', Letter::Pad), t('a', 'a'.into()), t('b', 'b'.into())]
        );
        assert_eq!(virgo_i_map(&stats, &c, &Sentence::empty()), Sentence::empty());
    }

    #[test]
    fn enlarged_alphabet_size() {
        let gens: Vec<Letter> = ["a1", "a2", "a3", "b1", "b2", "b3"].into_iter().map(Letter::named).collect();
        assert_eq!(enlarged_alphabet(&standard_stats(), &gens).len(), 1 + 6 * 7 * 11);
    }
}
