use std::collections::{BTreeSet, HashMap};

pub const UNK: &str = "<unk>";
pub const BOS: &str = "<s>";
pub const EOS: &str = "</s>";

/// Word ↔ id mapping. Ids 0, 1, 2 are `<unk>`, `<s>`, `</s>`; the rest
/// follow in lexicographic order so ids never depend on insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocab {
    words: Vec<String>,
    index: HashMap<String, u32>,
}

impl Vocab {
    pub const UNK_ID: u32 = 0;
    pub const BOS_ID: u32 = 1;
    pub const EOS_ID: u32 = 2;

    pub fn from_words<'a, I: IntoIterator<Item = &'a str>>(words: I) -> Self {
        let set: BTreeSet<&str> = words
            .into_iter()
            .filter(|w| !matches!(*w, UNK | BOS | EOS))
            .collect();
        let mut all: Vec<String> = vec![UNK.into(), BOS.into(), EOS.into()];
        all.extend(set.into_iter().map(str::to_owned));
        let index = all
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        Vocab { words: all, index }
    }

    pub fn id(&self, word: &str) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn word(&self, id: u32) -> &str {
        &self.words[id as usize]
    }

    /// Number of ids, specials included.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}
