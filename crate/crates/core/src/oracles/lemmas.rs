//! Exhaustive checks of the Alice's Diary lemmas over an enumeration grid.
//!
//! Diaries come from [`alice_diary`]; which letters were recorded, and where,
//! comes from the brute-force [`replay`].

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::diary::alice_diary;
use crate::words::{awl, common_prefix_len, nomt_distinguish, sentence_tree_distance, tail_sentence};
use crate::words::{decimal_expansion, Distinguisher, Letter, Sentence, Word};

use super::{enumerate_sentences, replay, EnumerationGrid, OracleError, Slot, Sweep};

struct Run {
    sentence: Sentence,
    diary: Sentence,
    slots: BTreeMap<(usize, usize), Slot>,
}

fn runs(grid: &EnumerationGrid, kappa: usize) -> Result<Vec<Run>, OracleError> {
    Ok(enumerate_sentences(grid)?
        .map(|sentence| {
            let diary = alice_diary(kappa, &sentence).expect("grid kappas are positive");
            let slots = replay(&sentence, kappa).1;
            Run { sentence, diary, slots }
        })
        .collect())
}

/// Groups runs whose diaries are equal.
fn by_diary(runs: &[Run]) -> Vec<Vec<&Run>> {
    let mut groups: BTreeMap<&Sentence, Vec<&Run>> = BTreeMap::new();
    for run in runs {
        groups.entry(&run.diary).or_default().push(run);
    }
    groups.into_values().filter(|g| g.len() > 1).collect()
}

/// The implementation and the replay write the same chapters.
pub fn check_replay_agreement(grid: &EnumerationGrid) -> Result<Sweep, OracleError> {
    let mut sweep = Sweep::default();
    for kappa in grid.kappas.clone() {
        for sentence in enumerate_sentences(grid)? {
            let diary = alice_diary(kappa, &sentence).expect("positive kappa");
            let (chapters, slots) = replay(&sentence, kappa);
            let mut recorded_by_chapter = vec![0usize; sentence.len()];
            for slot in slots.values().flatten() {
                recorded_by_chapter[slot.0] += 1;
            }
            let same = diary.words().iter().zip(&chapters).all(|(a, b)| a.letters() == b.as_slice())
                && diary.words().iter().zip(&recorded_by_chapter).all(|(a, n)| a.len() == *n);
            sweep.checked += 1;
            if !same || diary.len() != chapters.len() {
                sweep.fail(format!("kappa={kappa} alpha={sentence} diary={diary}"));
            }
        }
    }
    Ok(sweep)
}

/// If chapter `i` reads `u ★ v` with `u` star-free, day `i` was `★·reverse(u)`.
pub fn check_lemma_diary1(grid: &EnumerationGrid) -> Result<Sweep, OracleError> {
    let mut sweep = Sweep::default();
    for kappa in grid.kappas.clone() {
        for run in runs(grid, kappa)? {
            for (i, chapter) in run.diary.words().iter().enumerate() {
                let Some(star) = chapter.letters().iter().position(|l| *l == Letter::Star) else {
                    continue;
                };
                sweep.checked += 1;
                let u = Word::new(chapter.letters()[..star].to_vec());
                let expected: Word = std::iter::once(Letter::Star).chain(u.reversed().into_letters()).collect();
                if run.sentence.words()[i] != expected {
                    sweep.fail(format!("kappa={kappa} alpha={} chapter {i}", run.sentence));
                }
            }
        }
    }
    Ok(sweep)
}

/// Equal diaries agree on every day whose word fits in one chapter.
pub fn check_lemma_diary2(grid: &EnumerationGrid) -> Result<Sweep, OracleError> {
    let mut sweep = Sweep::default();
    for kappa in grid.kappas.clone() {
        let all = runs(grid, kappa)?;
        for group in by_diary(&all) {
            for a in &group {
                for b in &group {
                    for (i, word) in a.sentence.words().iter().enumerate() {
                        if word.len() > kappa {
                            continue;
                        }
                        sweep.checked += 1;
                        if b.sentence.words().get(i) != Some(word) {
                            sweep.fail(format!("kappa={kappa} {} vs {} day {i}", a.sentence, b.sentence));
                        }
                    }
                }
            }
        }
    }
    Ok(sweep)
}

/// Positions measured from the end of a word.
fn from_end(word: &Word, pos: usize) -> usize {
    word.len() - 1 - pos
}

/// Same-position letters that are recorded in equal diaries are equal.
pub fn check_diary_theorem(grid: &EnumerationGrid) -> Result<Sweep, OracleError> {
    let mut sweep = Sweep::default();
    for kappa in grid.kappas.clone() {
        let all = runs(grid, kappa)?;
        for group in by_diary(&all) {
            for a in &group {
                for b in &group {
                    let days = a.sentence.len().min(b.sentence.len());
                    for i in 0..days {
                        let (u, u2) = (&a.sentence.words()[i], &b.sentence.words()[i]);
                        for pos in 0..u.len() {
                            let back = from_end(u, pos);
                            if back >= u2.len() {
                                continue;
                            }
                            let pos2 = u2.len() - 1 - back;
                            let (sa, sb) = (a.slots[&(i, pos)], b.slots[&(i, pos2)]);
                            if sa.is_none() || sb.is_none() {
                                continue;
                            }
                            sweep.checked += 1;
                            if u.letters()[pos] != u2.letters()[pos2] || sa != sb {
                                sweep.fail(format!(
                                    "kappa={kappa} {} vs {} day {i} letter {pos}",
                                    a.sentence, b.sentence
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(sweep)
}

/// Same-position letters keep the same page while later days have equal lengths.
pub fn check_lemma_diary3(grid: &EnumerationGrid) -> Result<Sweep, OracleError> {
    let mut sweep = Sweep::default();
    for kappa in grid.kappas.clone() {
        let all = runs(grid, kappa)?;
        for a in &all {
            for b in &all {
                let days = a.sentence.len().min(b.sentence.len());
                for i in 0..days {
                    let (u, u2) = (&a.sentence.words()[i], &b.sentence.words()[i]);
                    for pos in 0..u.len() {
                        let back = from_end(u, pos);
                        if back >= u2.len() {
                            continue;
                        }
                        let pos2 = u2.len() - 1 - back;
                        let Some((j, k)) = a.slots[&(i, pos)] else { continue };
                        if j >= days {
                            continue;
                        }
                        let lengths_match = (i + 1..=j)
                            .all(|l| a.sentence.words()[l].len() == b.sentence.words()[l].len());
                        if !lengths_match {
                            continue;
                        }
                        sweep.checked += 1;
                        if b.slots[&(i, pos2)] != Some((j, k)) {
                            sweep.fail(format!(
                                "kappa={kappa} {} vs {} day {i} letter {pos}",
                                a.sentence, b.sentence
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(sweep)
}

/// A letter whose tail-sentence has AWL at most `κ` is recorded.
pub fn check_prop_awl(grid: &EnumerationGrid) -> Result<Sweep, OracleError> {
    let mut sweep = Sweep::default();
    for kappa in grid.kappas.clone() {
        for run in runs(grid, kappa)? {
            for (i, word) in run.sentence.words().iter().enumerate() {
                for pos in 0..word.len() {
                    let tail = tail_sentence(&run.sentence, i, pos).expect("valid address");
                    if awl(&tail).expect("tail is non-empty") > Ratio::from_integer(kappa as u64) {
                        continue;
                    }
                    sweep.checked += 1;
                    if run.slots[&(i, pos)].is_none() {
                        sweep.fail(format!("kappa={kappa} alpha={} letter ({i},{pos})", run.sentence));
                    }
                }
            }
        }
    }
    Ok(sweep)
}

/// The distance bound obtained from one pair of separated, well-recorded letters.
pub fn check_cor_awl(grid: &EnumerationGrid) -> Result<Sweep, OracleError> {
    let mut sweep = Sweep::default();
    for kappa in grid.kappas.clone() {
        let all = runs(grid, kappa)?;
        let k = Ratio::from_integer(kappa as u64);
        for a in &all {
            for b in &all {
                let (alpha, beta) = (&a.sentence, &b.sentence);
                let p = common_prefix_len(alpha.words(), beta.words());
                let (m, n) = (alpha.len() - p, beta.len() - p);
                if m == 0 || n == 0 {
                    continue;
                }
                let d = sentence_tree_distance(alpha, beta);
                let d_diary = sentence_tree_distance(&a.diary, &b.diary);
                // the strongest bound any qualifying letter pair gives
                let mut best: Option<usize> = None;
                for j in 1..=m.min(n) {
                    let (u, u2) = (&alpha.words()[p + j - 1], &beta.words()[p + j - 1]);
                    for pos in 0..u.len() {
                        let back = from_end(u, pos);
                        if back >= u2.len() {
                            continue;
                        }
                        let pos2 = u2.len() - 1 - back;
                        if u.letters()[pos] == u2.letters()[pos2] {
                            continue;
                        }
                        let na = awl(&tail_sentence(alpha, p + j - 1, pos).expect("valid")).expect("non-empty");
                        let nb = awl(&tail_sentence(beta, p + j - 1, pos2).expect("valid")).expect("non-empty");
                        for i in 0..=(m.min(n) - j) {
                            let fa = na * Ratio::new((m - j + 1) as u64, (i + 1) as u64);
                            let fb = nb * Ratio::new((n - j + 1) as u64, (i + 1) as u64);
                            if k >= fa && k >= fb {
                                let bound = d.saturating_sub(2 * j + 2 * i);
                                best = Some(best.map_or(bound, |x: usize| x.max(bound)));
                            }
                        }
                    }
                }
                if let Some(bound) = best {
                    sweep.checked += 1;
                    if d_diary < bound {
                        sweep.fail(format!("kappa={kappa} {alpha} vs {beta}: {d_diary} < {bound}"));
                    }
                }
            }
        }
    }
    Ok(sweep)
}

/// Every word with its final `k` letters padded on the left.
fn window(letters: &[u8], k: usize) -> Vec<u8> {
    let start = letters.len().saturating_sub(k);
    let mut out = vec![0u8; k - (letters.len() - start)];
    out.extend_from_slice(&letters[start..]);
    out
}

/// The suffix-or-length lemma over `{a, b}` words up to `max_len` and `k ≤ max_k`.
///
/// Letters more than three places before the divergence point cannot affect
/// either window, so they are fixed to `a`; words up to `brute_len` are also
/// checked with every prefix.
pub fn check_suffix_or_length(max_len: usize, max_k: usize, brute_len: usize) -> Sweep {
    let mut sweep = Sweep::default();
    let to_word = |bytes: &[u8]| -> Word { bytes.iter().map(|&b| Letter::Char(b as char)).collect() };
    let check = |w: &[u8], w2: &[u8], k: usize, sweep: &mut Sweep| {
        sweep.checked += 1;
        let suffix = window(w, k) != window(w2, k);
        let digits = |n: usize| decimal_expansion(n).letters().iter().map(|l| l.to_string().as_bytes()[0]).collect::<Vec<u8>>();
        let length = window(&digits(w.len()), k) != window(&digits(w2.len()), k);
        let got = nomt_distinguish(&to_word(w), &to_word(w2), k);
        let ok = match got {
            Ok(Distinguisher::SuffixDiffers) => suffix,
            Ok(Distinguisher::LengthExpansionDiffers) => !suffix && length,
            Err(_) => false,
        };
        if !ok {
            sweep.fail(format!(
                "k={k} {} vs {}",
                String::from_utf8_lossy(w),
                String::from_utf8_lossy(w2)
            ));
        }
    };
    // divergent endings: x and y with |x| + |y| ≤ max_k, first letters different
    let mut endings: Vec<Vec<u8>> = vec![Vec::new()];
    for len in 1..=max_k {
        endings.extend(all_words(len));
    }
    for k in 1..=max_k {
        for x in &endings {
            for y in &endings {
                let valid = !(x.is_empty() && y.is_empty())
                    && x.len() + y.len() <= k
                    && (x.is_empty() || y.is_empty() || x[0] != y[0]);
                if !valid {
                    continue;
                }
                let longest = x.len().max(y.len());
                for plen in 0..=(max_len.saturating_sub(longest)) {
                    let tails = all_words(plen.min(max_k));
                    for tail in &tails {
                        let mut prefix = vec![b'a'; plen - tail.len()];
                        prefix.extend_from_slice(tail);
                        let w: Vec<u8> = prefix.iter().chain(x).copied().collect();
                        let w2: Vec<u8> = prefix.iter().chain(y).copied().collect();
                        check(&w, &w2, k, &mut sweep);
                    }
                }
            }
        }
    }
    // plain brute force: every word up to `brute_len`, against every word
    // reached by cutting some letters off the end and appending others
    let short: Vec<Vec<u8>> = (0..=brute_len).flat_map(all_words).collect();
    for k in 1..=max_k {
        for w in &short {
            for cut in 0..=k.min(w.len()) {
                let stem = &w[..w.len() - cut];
                for added in 0..=(k - cut) {
                    for extra in all_words(added) {
                        let w2: Vec<u8> = stem.iter().chain(&extra).copied().collect();
                        if w2 != *w {
                            check(w, &w2, k, &mut sweep);
                        }
                    }
                }
            }
        }
    }
    sweep
}

fn all_words(len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                b"ab".iter().copied().map(move |c| {
                    let mut next = w.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> EnumerationGrid {
        let mut grid = EnumerationGrid::lemma_default();
        grid.max_days = 2;
        grid
    }

    #[test]
    fn lemmas_on_a_small_grid() {
        for (name, sweep) in [
            ("replay", check_replay_agreement(&small()).unwrap()),
            ("diary1", check_lemma_diary1(&small()).unwrap()),
            ("diary2", check_lemma_diary2(&small()).unwrap()),
            ("diary3", check_lemma_diary3(&small()).unwrap()),
            ("theorem", check_diary_theorem(&small()).unwrap()),
            ("prop", check_prop_awl(&small()).unwrap()),
            ("cor", check_cor_awl(&small()).unwrap()),
        ] {
            assert!(sweep.passed(), "{name}: {:?}", sweep.counterexamples);
            assert!(sweep.checked > 0, "{name} checked nothing");
        }
    }

    #[test]
    fn suffix_or_length_small() {
        let sweep = check_suffix_or_length(12, 3, 6);
        assert!(sweep.passed(), "{:?}", sweep.counterexamples);
    }
}
