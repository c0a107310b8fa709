//! Letters, words and sentences, and the metrics of the implicit rooted trees
//! they index.
//!
//! A [`Word`] is a vertex of the word-tree `T_A`: the root is the empty word
//! and the children of `w` are `wa` for each letter `a`. A [`Sentence`] is a
//! vertex of the sentence-tree `T_W`, whose edges are labelled by non-empty
//! words. Neither tree is ever built; distances come from longest common
//! prefixes.
//!
//! Text format: letters are single characters, or bracketed tokens such as
//! `[a1]` when they are not a plain ASCII character. Sentences join their
//! words with `|`, e.g. `abac|cb|accc`.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordsError {
    #[error("sentence word {index} is empty")]
    EmptyWord { index: usize },
    #[error("unbalanced bracket in {0:?}")]
    UnbalancedBracket(String),
    #[error("empty bracket token in {0:?}")]
    EmptyToken(String),
    #[error("'|' may only separate words of a sentence")]
    SeparatorInWord,
    #[error("average word length of an empty sentence is undefined")]
    EmptySentence,
    #[error("letter ({word}, {letter}) is outside the sentence")]
    IndexOutOfRange { word: usize, letter: usize },
    #[error("words must be distinct and within tree distance {k} (distance was {distance})")]
    DistinguishPrecondition { k: usize, distance: usize },
    #[error("neither suffix nor length expansion separates the words")]
    Indistinguishable,
}

/// A single letter.
///
/// Letters are compared structurally, so composite letters (tuples, or whole
/// words used as symbols of a larger alphabet) get a total order for free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Char(char),
    Named(Cow<'static, str>),
    /// The sunrise marker `★` that opens every starred word.
    Star,
    /// The padding letter `⋆` used when normalising words to a fixed length.
    Pad,
    /// Returned by statistics that address a word before the sentence start.
    OutOfRange,
    Tuple(Vec<Letter>),
    Word(Word),
}

impl Letter {
    pub fn named(name: &'static str) -> Self {
        Letter::Named(Cow::Borrowed(name))
    }

    fn is_plain(c: char) -> bool {
        c.is_ascii_graphic() && !matches!(c, '|' | '[' | ']' | '(' | ')' | ',' | '{' | '}')
    }

    /// Token text without surrounding brackets.
    fn bare(&self) -> String {
        match self {
            Letter::Char(c) => c.to_string(),
            Letter::Named(s) => s.to_string(),
            Letter::Star => "*".into(),
            Letter::Pad => ".".into(),
            Letter::OutOfRange => "-".into(),
            Letter::Tuple(parts) => {
                let inner: Vec<String> = parts.iter().map(Letter::bare).collect();
                format!("({})", inner.join(","))
            }
            Letter::Word(w) => format!("{{{w}}}"),
        }
    }

    fn from_token(token: &str) -> Letter {
        match token {
            "*" => Letter::Star,
            "." => Letter::Pad,
            "-" => Letter::OutOfRange,
            _ => {
                let mut chars = token.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Letter::Char(c),
                    _ => Letter::Named(Cow::Owned(token.to_string())),
                }
            }
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Char(c) if Letter::is_plain(*c) => write!(f, "{c}"),
            other => write!(f, "[{}]", other.bare()),
        }
    }
}

impl From<char> for Letter {
    fn from(c: char) -> Self {
        Letter::Char(c)
    }
}

/// A finite word. May be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn last(&self) -> Option<&Letter> {
        self.0.last()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// The word written backwards.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }

    /// The first `n` letters (or the whole word if it is shorter).
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    /// The final `n` letters (or the whole word if it is shorter).
    pub fn suffix(&self, n: usize) -> Word {
        let start = self.len().saturating_sub(n);
        Word(self.0[start..].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Parses a word, rejecting the sentence separator.
    pub fn parse(text: &str) -> Result<Word, WordsError> {
        let mut letters = Vec::new();
        let mut chars = text.chars();
        while let Some(c) = chars.next() {
            match c {
                '[' => {
                    let mut token = String::new();
                    loop {
                        match chars.next() {
                            Some(']') => break,
                            Some('[') | None => {
                                return Err(WordsError::UnbalancedBracket(text.to_string()))
                            }
                            Some(inner) => token.push(inner),
                        }
                    }
                    if token.is_empty() {
                        return Err(WordsError::EmptyToken(text.to_string()));
                    }
                    letters.push(Letter::from_token(&token));
                }
                ']' => return Err(WordsError::UnbalancedBracket(text.to_string())),
                '|' => return Err(WordsError::SeparatorInWord),
                c if c.is_whitespace() => {}
                c => letters.push(Letter::Char(c)),
            }
        }
        Ok(Word(letters))
    }
}

impl FromStr for Word {
    type Err = WordsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// A finite sequence of non-empty words; a vertex of the sentence-tree.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sentence(Vec<Word>);

impl Sentence {
    pub fn new(words: Vec<Word>) -> Result<Self, WordsError> {
        if let Some(index) = words.iter().position(Word::is_empty) {
            return Err(WordsError::EmptyWord { index });
        }
        Ok(Sentence(words))
    }

    pub fn empty() -> Self {
        Sentence(Vec::new())
    }

    /// Number of words.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.0
    }

    pub fn word(&self, index: usize) -> Option<&Word> {
        self.0.get(index)
    }

    pub fn last_word(&self) -> Option<&Word> {
        self.0.last()
    }

    pub fn into_words(self) -> Vec<Word> {
        self.0
    }

    pub fn push(&mut self, word: Word) -> Result<(), WordsError> {
        if word.is_empty() {
            return Err(WordsError::EmptyWord { index: self.0.len() });
        }
        self.0.push(word);
        Ok(())
    }

    /// The ancestor at depth `depth` (the first `depth` words).
    pub fn prefix(&self, depth: usize) -> Sentence {
        Sentence(self.0[..depth.min(self.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Sentence) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Total number of letters across all words.
    pub fn letter_count(&self) -> usize {
        self.0.iter().map(Word::len).sum()
    }

    /// Words from `start` to the end, as a sentence.
    pub fn from_depth(&self, start: usize) -> Sentence {
        Sentence(self.0[start.min(self.len())..].to_vec())
    }

    pub fn concat(&self, other: &Sentence) -> Sentence {
        let mut words = self.0.clone();
        words.extend(other.0.iter().cloned());
        Sentence(words)
    }

    pub fn parse(text: &str) -> Result<Sentence, WordsError> {
        if text.trim().is_empty() {
            return Ok(Sentence::empty());
        }
        let words = text
            .split('|')
            .map(Word::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Sentence::new(words)
    }
}

impl FromStr for Sentence {
    type Err = WordsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Sentence::parse(s)
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, word) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{word}")?;
        }
        Ok(())
    }
}

/// Length of the longest common prefix of two sequences.
pub fn common_prefix_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Graph distance between two vertices of a word-tree over any alphabet.
pub fn tree_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.len() + b.len() - 2 * common_prefix_len(a, b)
}

pub fn word_tree_distance(u: &Word, v: &Word) -> usize {
    tree_distance(u.letters(), v.letters())
}

pub fn sentence_tree_distance(alpha: &Sentence, beta: &Sentence) -> usize {
    tree_distance(alpha.words(), beta.words())
}

/// The decomposition `α = common·tail_a`, `β = common·tail_b` around the
/// lowest common ancestor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonSplit {
    pub common: Sentence,
    pub tail_a: Sentence,
    pub tail_b: Sentence,
}

pub fn split_common(alpha: &Sentence, beta: &Sentence) -> CommonSplit {
    let p = common_prefix_len(alpha.words(), beta.words());
    CommonSplit {
        common: alpha.prefix(p),
        tail_a: alpha.from_depth(p),
        tail_b: beta.from_depth(p),
    }
}

pub fn word_reverse(w: &Word) -> Word {
    w.reversed()
}

/// Truncates `u` to `r` letters, or extends it with `pad` up to exactly `r`.
pub fn norm_r(u: &Word, r: usize, pad: &Letter) -> Word {
    let mut letters: Vec<Letter> = u.letters().iter().take(r).cloned().collect();
    letters.resize(r, pad.clone());
    Word(letters)
}

/// Base-10 digits of `n`, most significant first, `"0"` for zero.
pub fn decimal_expansion(n: usize) -> Word {
    n.to_string().chars().map(Letter::Char).collect()
}

/// The final `k` letters of `w`, left-padded with [`Letter::Pad`] to length `k`.
fn final_window(w: &Word, k: usize) -> Vec<Letter> {
    let tail = w.suffix(k).into_letters();
    let mut window = vec![Letter::Pad; k - tail.len()];
    window.extend(tail);
    window
}

/// Which of the two suffix-or-length conditions separates a pair of nearby words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distinguisher {
    SuffixDiffers,
    LengthExpansionDiffers,
}

/// Decides which branch separates two distinct words at tree distance at most `k`.
pub fn nomt_distinguish(w: &Word, w2: &Word, k: usize) -> Result<Distinguisher, WordsError> {
    let distance = word_tree_distance(w, w2);
    if w == w2 || distance > k || k == 0 {
        return Err(WordsError::DistinguishPrecondition { k, distance });
    }
    if final_window(w, k) != final_window(w2, k) {
        return Ok(Distinguisher::SuffixDiffers);
    }
    let digits = decimal_expansion(w.len());
    let digits2 = decimal_expansion(w2.len());
    if final_window(&digits, k) != final_window(&digits2, k) {
        Ok(Distinguisher::LengthExpansionDiffers)
    } else {
        Err(WordsError::Indistinguishable)
    }
}

/// Average word length as an exact rational.
pub fn awl(alpha: &Sentence) -> Result<Ratio<u64>, WordsError> {
    if alpha.is_empty() {
        return Err(WordsError::EmptySentence);
    }
    Ok(Ratio::new(alpha.letter_count() as u64, alpha.len() as u64))
}

/// AWL with the convention that a sentence without words has AWL zero.
pub(crate) fn awl_or_zero(alpha: &[Word]) -> Ratio<u64> {
    if alpha.is_empty() {
        return Ratio::from_integer(0);
    }
    let letters: usize = alpha.iter().map(Word::len).sum();
    Ratio::new(letters as u64, alpha.len() as u64)
}

fn check_letter(alpha: &Sentence, word: usize, letter: usize) -> Result<&Word, WordsError> {
    alpha
        .word(word)
        .filter(|w| letter < w.len())
        .ok_or(WordsError::IndexOutOfRange { word, letter })
}

/// The letter at (`word`, `letter`) (both 0-based) and everything after it.
pub fn tail_sentence(alpha: &Sentence, word: usize, letter: usize) -> Result<Sentence, WordsError> {
    let u = check_letter(alpha, word, letter)?;
    let mut words = vec![Word(u.letters()[letter..].to_vec())];
    words.extend(alpha.words()[word + 1..].iter().cloned());
    Ok(Sentence(words))
}

/// Everything up to and including the letter at (`word`, `letter`).
pub fn head_sentence(alpha: &Sentence, word: usize, letter: usize) -> Result<Sentence, WordsError> {
    let u = check_letter(alpha, word, letter)?;
    let mut words = alpha.words()[..word].to_vec();
    words.push(Word(u.letters()[..=letter].to_vec()));
    Ok(Sentence(words))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn s(text: &str) -> Sentence {
        text.parse().unwrap()
    }

    #[test]
    fn word_distances() {
        assert_eq!(word_tree_distance(&w("abab"), &w("abac")), 2);
        assert_eq!(word_tree_distance(&w("abc"), &w("abc")), 0);
        assert_eq!(word_tree_distance(&w(""), &w("abc")), 3);
    }

    #[test]
    fn sentence_distances() {
        assert_eq!(sentence_tree_distance(&s("ab|aaa|ba"), &s("ab|aa")), 3);
        assert_eq!(sentence_tree_distance(&s("ab|aaa|ba"), &s("ab|aaa|ba")), 0);
        assert_eq!(sentence_tree_distance(&s(""), &s("x|y")), 2);
    }

    #[test]
    fn split_examples() {
        let split = split_common(&s("ab|aaa|ba"), &s("ab|aa"));
        assert_eq!(split.common, s("ab"));
        assert_eq!(split.tail_a, s("aaa|ba"));
        assert_eq!(split.tail_b, s("aa"));

        let split = split_common(&s("x"), &s("x"));
        assert_eq!((split.common, split.tail_a, split.tail_b), (s("x"), s(""), s("")));

        let split = split_common(&s("a|b"), &s("c"));
        assert_eq!((split.common, split.tail_a, split.tail_b), (s(""), s("a|b"), s("c")));
    }

    #[test]
    fn reversal() {
        assert_eq!(word_reverse(&w("abcd")), w("dcba"));
        assert_eq!(word_reverse(&w("")), w(""));
        assert_eq!(word_reverse(&w("aa")), w("aa"));
    }

    #[test]
    fn normalisation() {
        assert_eq!(norm_r(&w("abc"), 5, &Letter::Pad), w("abc[.][.]"));
        assert_eq!(norm_r(&w("abc"), 2, &Letter::Pad), w("ab"));
        assert_eq!(norm_r(&w(""), 0, &Letter::Pad), w(""));
    }

    #[test]
    fn distinguish_examples() {
        assert_eq!(nomt_distinguish(&w("aba"), &w("abb"), 2), Ok(Distinguisher::SuffixDiffers));
        let twelve = w(&"a".repeat(12));
        let thirteen = w(&"a".repeat(13));
        assert_eq!(
            nomt_distinguish(&twelve, &thirteen, 1),
            Ok(Distinguisher::LengthExpansionDiffers)
        );
        assert!(matches!(
            nomt_distinguish(&w("ab"), &w("ab"), 2),
            Err(WordsError::DistinguishPrecondition { .. })
        ));
        assert!(matches!(
            nomt_distinguish(&w("aaaa"), &w("b"), 2),
            Err(WordsError::DistinguishPrecondition { distance: 5, .. })
        ));
    }

    #[test]
    fn average_word_length() {
        assert_eq!(awl(&s("abab|aaa|ba")), Ok(Ratio::from_integer(3)));
        assert_eq!(awl(&s("a")), Ok(Ratio::from_integer(1)));
        assert_eq!(awl(&s("aa|aa")), Ok(Ratio::from_integer(2)));
        assert_eq!(awl(&s("")), Err(WordsError::EmptySentence));
    }

    #[test]
    fn tail_and_head() {
        assert_eq!(tail_sentence(&s("abac|cb"), 0, 1).unwrap(), s("bac|cb"));
        assert_eq!(tail_sentence(&s("ab"), 0, 1).unwrap(), s("b"));
        assert_eq!(tail_sentence(&s("xy|z"), 1, 0).unwrap(), s("z"));
        assert_eq!(head_sentence(&s("abac|cb"), 1, 0).unwrap(), s("abac|c"));
        assert!(tail_sentence(&s("xy|z"), 1, 1).is_err());
        assert!(tail_sentence(&s("xy|z"), 2, 0).is_err());
    }

    #[test]
    fn text_format() {
        let text = "abac|[a1][b2]|[*]x";
        let parsed = s(text);
        assert_eq!(parsed.len(), 3);
        assert_eq!(parsed.words()[1].letters()[0], Letter::named("a1"));
        assert_eq!(parsed.words()[2].letters()[0], Letter::Star);
        assert_eq!(parsed.to_string(), text);
        assert_eq!(Sentence::parse("ab||c"), Err(WordsError::EmptyWord { index: 1 }));
        assert!(Word::parse("a[b").is_err());
        assert!(Word::parse("a|b").is_err());
        let tuple = Letter::Tuple(vec![Letter::named("a1"), Letter::Pad, Letter::Char('3')]);
        assert_eq!(tuple.to_string(), "[(a1,.,3)]");
    }
}
