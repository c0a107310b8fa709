//! Alice's Diary: each day, record up to `κ` letters, always taking the most
//! recent unrecorded event first.

use crate::words::{Letter, Sentence, Word};

use super::DiaryError;

/// Where an event ended up: page `page` (0-based) of chapter `chapter` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Page {
    pub chapter: usize,
    pub page: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub day: usize,
    pub position: usize,
    pub letter: Letter,
    pub recorded: Option<Page>,
}

/// Running state of the diary. Unrecorded events always form a stack: new
/// events are pushed in chronological order and recording pops the newest.
#[derive(Debug, Clone)]
pub struct AliceDiaryState {
    kappa: usize,
    events: Vec<Event>,
    pending: Vec<usize>,
    days: usize,
}

impl AliceDiaryState {
    pub fn new(kappa: usize) -> Result<Self, DiaryError> {
        if kappa == 0 {
            return Err(DiaryError::ZeroKappa);
        }
        Ok(AliceDiaryState { kappa, events: Vec::new(), pending: Vec::new(), days: 0 })
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// Logs the events of one day and returns that day's chapter.
    pub fn write_day(&mut self, word: &Word) -> Word {
        let day = self.days;
        self.days += 1;
        for (position, letter) in word.letters().iter().enumerate() {
            self.pending.push(self.events.len());
            self.events.push(Event { day, position, letter: letter.clone(), recorded: None });
        }
        let mut chapter = Vec::with_capacity(self.kappa.min(self.pending.len()));
        while chapter.len() < self.kappa {
            let Some(index) = self.pending.pop() else { break };
            let event = &mut self.events[index];
            event.recorded = Some(Page { chapter: day, page: chapter.len() });
            chapter.push(event.letter.clone());
        }
        Word::new(chapter)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn unrecorded(&self) -> usize {
        self.pending.len()
    }
}

pub fn alice_diary(kappa: usize, alpha: &Sentence) -> Result<Sentence, DiaryError> {
    Ok(alice_diary_with_log(kappa, alpha)?.0)
}

/// The diary together with, for every letter of `alpha`, where it was recorded.
pub fn alice_diary_with_log(
    kappa: usize,
    alpha: &Sentence,
) -> Result<(Sentence, Vec<Vec<Option<Page>>>), DiaryError> {
    let mut state = AliceDiaryState::new(kappa)?;
    let chapters: Vec<Word> = alpha.words().iter().map(|w| state.write_day(w)).collect();
    let mut pages: Vec<Vec<Option<Page>>> =
        alpha.words().iter().map(|w| vec![None; w.len()]).collect();
    for event in state.events() {
        pages[event.day][event.position] = event.recorded;
    }
    let diary = Sentence::new(chapters).expect("every day records at least its last event");
    Ok((diary, pages))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Sentence {
        text.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let diary = alice_diary(3, &s("abac|cb|accc|bcbc|a")).unwrap();
        assert_eq!(diary, s("cab|bca|ccc|cbc|aba"));
    }

    #[test]
    fn small_kappas() {
        assert_eq!(alice_diary(1, &s("ab|cd")).unwrap(), s("b|d"));
        assert_eq!(alice_diary(10, &s("abac|cb")).unwrap(), s("caba|bc"));
        assert_eq!(alice_diary(2, &s("")).unwrap(), s(""));
        assert_eq!(alice_diary(0, &s("a")), Err(DiaryError::ZeroKappa));
    }

    #[test]
    fn short_chapter_means_nothing_pending() {
        let mut state = AliceDiaryState::new(3).unwrap();
        for day in ["abac", "cb", "a", "b"] {
            let chapter = state.write_day(&day.parse().unwrap());
            if chapter.len() < 3 {
                assert_eq!(state.unrecorded(), 0);
            }
        }
    }

    #[test]
    fn pages_are_reported() {
        let (_, pages) = alice_diary_with_log(3, &s("abac|cb")).unwrap();
        assert_eq!(pages[0][3], Some(Page { chapter: 0, page: 0 }));
        assert_eq!(pages[0][0], Some(Page { chapter: 1, page: 2 }));
        assert_eq!(pages[0][1], Some(Page { chapter: 0, page: 2 }));
    }
}
