//! Fixed-width binary codes for diary symbols.
//!
//! A diary maps into the word-tree over a finite alphabet Ω of chapters.
//! Encoding every chapter with the same number of bits `wdt` turns an
//! Ω-sentence of height `h` into a binary word of length `h·wdt`, which is how
//! the output lands in the rooted binary tree. Tree distances are then
//! distorted at most additively: `wdt·d − 2(wdt−1) ≤ d_binary ≤ wdt·d`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::words::{tree_distance, Letter, Sentence, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("symbol {0} is outside the codec")]
    UnknownSymbol(String),
    #[error("{symbols} symbols do not fit in {width} bits")]
    TooNarrow { symbols: usize, width: usize },
    #[error("codes wider than 64 bits need a structural codec")]
    TooWide,
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Bits needed to distinguish `n` values.
fn bits_for(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

fn push_bits(out: &mut Vec<bool>, value: u64, width: usize) {
    out.extend((0..width).rev().map(|bit| (value >> bit) & 1 == 1));
}

/// Structural layout of a family of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Shape {
    /// One of finitely many plain letters, coded by rank.
    Enum { symbols: Vec<Letter> },
    Tuple(Vec<Shape>),
    /// A word of at most `max_len` letters: a length field, then the letters,
    /// then zero padding.
    Seq { max_len: usize, elem: Box<Shape> },
    /// A word of exactly one letter.
    Single(Box<Shape>),
    /// Either [`Letter::OutOfRange`] or a value of the inner shape.
    Optional(Box<Shape>),
}

impl Shape {
    pub fn enumeration(alphabet: &[Letter]) -> Shape {
        let mut symbols = alphabet.to_vec();
        symbols.sort();
        symbols.dedup();
        Shape::Enum { symbols }
    }

    pub fn width(&self) -> usize {
        match self {
            Shape::Enum { symbols } => bits_for(symbols.len()),
            Shape::Tuple(parts) => parts.iter().map(Shape::width).sum(),
            Shape::Seq { max_len, elem } => bits_for(max_len + 1) + max_len * elem.width(),
            Shape::Single(inner) => inner.width(),
            Shape::Optional(inner) => 1 + inner.width(),
        }
    }

    pub fn encode(&self, letter: &Letter, out: &mut Vec<bool>) -> Result<(), CodecError> {
        let unknown = || CodecError::UnknownSymbol(letter.to_string());
        match (self, letter) {
            (Shape::Enum { symbols }, _) => {
                let rank = symbols.binary_search(letter).map_err(|_| unknown())?;
                push_bits(out, rank as u64, self.width());
            }
            (Shape::Tuple(parts), Letter::Tuple(values)) if parts.len() == values.len() => {
                for (part, value) in parts.iter().zip(values) {
                    part.encode(value, out)?;
                }
            }
            (Shape::Seq { max_len, elem }, Letter::Word(w)) if w.len() <= *max_len => {
                push_bits(out, w.len() as u64, bits_for(max_len + 1));
                for l in w.letters() {
                    elem.encode(l, out)?;
                }
                out.extend(std::iter::repeat(false).take((max_len - w.len()) * elem.width()));
            }
            (Shape::Single(inner), Letter::Word(w)) if w.len() == 1 => {
                inner.encode(&w.letters()[0], out)?;
            }
            (Shape::Optional(inner), Letter::OutOfRange) => {
                out.push(false);
                out.extend(std::iter::repeat(false).take(inner.width()));
            }
            (Shape::Optional(inner), value) => {
                out.push(true);
                inner.encode(value, out)?;
            }
            _ => return Err(unknown()),
        }
        Ok(())
    }
}

/// Assignment of a fixed-width binary code to every chapter symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "codec", rename_all = "kebab-case")]
pub enum Codec {
    /// An explicit code table; codes are assigned in the order given.
    Table { width: usize, codes: BTreeMap<String, u64>, #[serde(skip)] lookup: BTreeMap<Word, u64> },
    /// Codes derived from a chapter shape (the shape describes `Letter::Word(chapter)`).
    Structural { shape: Shape },
}

impl Codec {
    pub fn table(symbols: &[Word], width: usize) -> Result<Codec, CodecError> {
        if width > 64 {
            return Err(CodecError::TooWide);
        }
        if width < 64 && symbols.len() as u128 > 1u128 << width {
            return Err(CodecError::TooNarrow { symbols: symbols.len(), width });
        }
        let lookup: BTreeMap<Word, u64> =
            symbols.iter().enumerate().map(|(i, w)| (w.clone(), i as u64)).collect();
        let codes = lookup.iter().map(|(w, c)| (w.to_string(), *c)).collect();
        Ok(Codec::Table { width, codes, lookup })
    }

    pub fn structural(shape: Shape) -> Codec {
        Codec::Structural { shape }
    }

    pub fn width(&self) -> usize {
        match self {
            Codec::Table { width, .. } => *width,
            Codec::Structural { shape } => shape.width(),
        }
    }

    pub fn encode_chapter(&self, chapter: &Word, out: &mut Vec<bool>) -> Result<(), CodecError> {
        match self {
            Codec::Table { width, lookup, .. } => {
                let code = lookup
                    .get(chapter)
                    .ok_or_else(|| CodecError::UnknownSymbol(chapter.to_string()))?;
                push_bits(out, *code, *width);
                Ok(())
            }
            Codec::Structural { shape } => shape.encode(&Letter::Word(chapter.clone()), out),
        }
    }
}

/// A vertex of the rooted binary tree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BitWord(pub Vec<bool>);

impl BitWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Hex dump, most significant bit first, zero-padded to whole bytes.
    pub fn to_hex(&self) -> String {
        let mut hex = String::with_capacity(self.0.len().div_ceil(4));
        for chunk in self.0.chunks(8) {
            let byte = chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i)));
            write!(hex, "{byte:02x}").expect("writing to a String cannot fail");
        }
        hex
    }
}

impl std::fmt::Display for BitWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &bit in &self.0 {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Concatenates the codes of the chapters of `alpha`.
pub fn binary_recode(alpha: &Sentence, codec: &Codec) -> Result<BitWord, CodecError> {
    let mut bits = Vec::with_capacity(alpha.len() * codec.width());
    for chapter in alpha.words() {
        codec.encode_chapter(chapter, &mut bits)?;
    }
    Ok(BitWord(bits))
}

pub fn binary_distance(a: &BitWord, b: &BitWord) -> usize {
    tree_distance(&a.0, &b.0)
}
