//! The hexagonal group embedded into a product of two sentence-trees, and
//! from there through a diary into a product of two bounded-valence trees.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::codec::{Codec, Shape};
use crate::diary::{aries_diary, check_leo, check_virgo, combine_diaries, virgo_diary, virgo_diary_with_kappa};
use crate::diary::{Diary, DiaryError, VirgoParams, Witness};
use crate::hexgroup::{group_distance, side_sentence, Family, Generator, GroupElement};
use crate::rational::Rational;
use crate::statistics::{FiniteStatistic, LinearStatistic};
use crate::words::{common_prefix_len, sentence_tree_distance, tree_distance, Letter, Sentence, Word};

pub const DEFAULT_CUSTOM_KAPPA: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// The constants the lower-bound theorem needs.
    Paper,
    /// Same statistics with a small `κ` for experiments.
    Custom { kappa: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingConfig {
    pub finite: Vec<FiniteStatistic>,
    pub j_finite: usize,
    pub linear: Vec<LinearStatistic>,
    pub virgo: VirgoParams,
    pub mode: Mode,
}

impl EmbeddingConfig {
    pub fn paper() -> Self {
        EmbeddingConfig {
            finite: vec![FiniteStatistic::LastLetter],
            j_finite: 2,
            linear: vec![LinearStatistic::LTrunc { tau: 12 }, LinearStatistic::DecimalLengthLTrunc { tau: 12 }],
            virgo: VirgoParams {
                delta: Rational::zero(),
                jump: 2,
                awl_bound: Rational::from_integer(18),
                epsilon: Rational::one(),
            },
            mode: Mode::Paper,
        }
    }

    pub fn custom(kappa: usize) -> Self {
        EmbeddingConfig { mode: Mode::Custom { kappa }, ..EmbeddingConfig::paper() }
    }
}

pub fn generator_alphabet() -> Vec<Letter> {
    Generator::ALL.iter().map(|g| g.letter()).collect()
}

pub fn f_side(g: &GroupElement, side: Family) -> Sentence {
    side_sentence(g, side)
}

pub fn f_embed(g: &GroupElement) -> (Sentence, Sentence) {
    (f_side(g, Family::A), f_side(g, Family::B))
}

pub fn f_distance(g: &GroupElement, h: &GroupElement) -> usize {
    let (a, b) = f_embed(g);
    let (a2, b2) = f_embed(h);
    sentence_tree_distance(&a, &a2) + sentence_tree_distance(&b, &b2)
}

/// The Leo part combined with the Virgo part.
pub fn appendix_diary(config: &EmbeddingConfig) -> Result<Diary, DiaryError> {
    let leo = aries_diary(&config.finite, Rational::zero(), config.j_finite)?;
    let virgo = match config.mode {
        Mode::Paper => virgo_diary(&config.linear, &config.virgo)?,
        Mode::Custom { kappa } => virgo_diary_with_kappa(&config.linear, &config.virgo, kappa)?,
    };
    let alphabet = generator_alphabet();
    combine_diaries(leo.with_domain(&alphabet), virgo.with_domain(&alphabet))
}

pub fn appendix_codec(diary: &Diary) -> Codec {
    Codec::structural(diary.chapter_shape(&generator_alphabet()))
}

pub fn chapter_shape(diary: &Diary) -> Shape {
    diary.chapter_shape(&generator_alphabet())
}

pub fn h2_embed(g: &GroupElement, diary: &Diary) -> Result<(Sentence, Sentence), DiaryError> {
    let (a, b) = f_embed(g);
    Ok((diary.apply(&a)?, diary.apply(&b)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Class {
    Leo,
    Virgo,
    Neither,
}

impl Class {
    pub fn name(self) -> &'static str {
        match self {
            Class::Leo => "leo",
            Class::Virgo => "virgo",
            Class::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: Class,
    pub factor: Family,
    pub witness: Option<Witness>,
}

/// Classifies a pair of sentences from the dominant factor.
pub fn classify_sentences(
    alpha: &Sentence,
    beta: &Sentence,
    config: &EmbeddingConfig,
) -> Result<(Class, Option<Witness>), DiaryError> {
    if let Some(w) = check_leo(alpha, beta, &config.finite, config.j_finite)? {
        return Ok((Class::Leo, Some(w)));
    }
    if let Some(w) = check_virgo(alpha, beta, &config.linear, &config.virgo)? {
        return Ok((Class::Virgo, Some(w)));
    }
    Ok((Class::Neither, None))
}

/// The factor with the larger sentence-tree distance, ties going to A.
pub fn dominant<'a>(fa: &'a (Sentence, Sentence), fb: &'a (Sentence, Sentence)) -> (Family, &'a Sentence, &'a Sentence) {
    let d1 = sentence_tree_distance(&fa.0, &fb.0);
    let d2 = sentence_tree_distance(&fa.1, &fb.1);
    if d1 >= d2 {
        (Family::A, &fa.0, &fb.0)
    } else {
        (Family::B, &fa.1, &fb.1)
    }
}

pub fn classify_pair(
    g: &GroupElement,
    g2: &GroupElement,
    config: &EmbeddingConfig,
) -> Result<Classification, DiaryError> {
    if g == g2 {
        return Err(DiaryError::IdenticalPair);
    }
    let (fa, fb) = (f_embed(g), f_embed(g2));
    let (factor, alpha, beta) = dominant(&fa, &fb);
    let (class, witness) = classify_sentences(alpha, beta, config)?;
    Ok(Classification { class, factor, witness })
}

/// `m, n ≥ (m+n)/3` on the dominant factor.
pub fn balanced_tails(alpha: &Sentence, beta: &Sentence) -> bool {
    let p = common_prefix_len(alpha.words(), beta.words());
    let (m, n) = (alpha.len() - p, beta.len() - p);
    3 * m >= m + n && 3 * n >= m + n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistortionRecord {
    pub g: GroupElement,
    pub g2: GroupElement,
    pub d_group: usize,
    pub d1: usize,
    pub d2: usize,
    pub d_image: usize,
    pub class: Class,
}

/// One element with its sentences and interned diary images.
#[derive(Debug, Clone)]
pub struct Embedded {
    pub element: GroupElement,
    pub f: (Sentence, Sentence),
    pub image: (Vec<u32>, Vec<u32>),
}

/// Embeds every element, interning diary chapters so images compare as
/// integer sequences. Chapter ids are shared between the two factors.
pub fn embed_all(elements: &[GroupElement], diary: &Diary) -> Result<Vec<Embedded>, DiaryError> {
    let raw: Vec<(GroupElement, (Sentence, Sentence), (Sentence, Sentence))> = elements
        .par_iter()
        .map(|g| {
            let f = f_embed(g);
            let images = (diary.apply(&f.0)?, diary.apply(&f.1)?);
            Ok((g.clone(), f, images))
        })
        .collect::<Result<_, DiaryError>>()?;
    let mut ids: HashMap<Word, u32> = HashMap::new();
    let mut intern = |s: Sentence| -> Vec<u32> {
        s.into_words()
            .into_iter()
            .map(|w| {
                let next = ids.len() as u32;
                *ids.entry(w).or_insert(next)
            })
            .collect()
    };
    Ok(raw
        .into_iter()
        .map(|(element, f, (ia, ib))| Embedded { element, f, image: (intern(ia), intern(ib)) })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairMeasure {
    pub d_group: usize,
    pub d1: usize,
    pub d2: usize,
    pub d_image: usize,
}

pub fn measure(a: &Embedded, b: &Embedded) -> PairMeasure {
    let d1 = tree_distance(&a.image.0, &b.image.0);
    let d2 = tree_distance(&a.image.1, &b.image.1);
    PairMeasure { d_group: group_distance(&a.element, &b.element), d1, d2, d_image: d1 + d2 }
}

pub fn classify_embedded(a: &Embedded, b: &Embedded, config: &EmbeddingConfig) -> Result<Class, DiaryError> {
    if a.element == b.element {
        return Err(DiaryError::IdenticalPair);
    }
    let (_, alpha, beta) = dominant(&a.f, &b.f);
    Ok(classify_sentences(alpha, beta, config)?.0)
}

pub fn record(a: &Embedded, b: &Embedded, config: &EmbeddingConfig) -> Result<DistortionRecord, DiaryError> {
    let m = measure(a, b);
    Ok(DistortionRecord {
        g: a.element.clone(),
        g2: b.element.clone(),
        d_group: m.d_group,
        d1: m.d1,
        d2: m.d2,
        d_image: m.d_image,
        class: classify_embedded(a, b, config)?,
    })
}
