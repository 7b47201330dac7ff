use std::collections::HashMap;

/// Maps a word to the key used by the stem-matching stage of METEOR.
pub trait Stemmer: Send + Sync {
    fn stem(&self, word: &str) -> String;
}

/// Exact-only matching: every word is its own stem.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoStemmer;

impl Stemmer for NoStemmer {
    fn stem(&self, word: &str) -> String {
        word.to_owned()
    }
}

/// Snowball (Porter 2) English suffix stripping.
pub struct EnglishStemmer(rust_stemmers::Stemmer);

impl Default for EnglishStemmer {
    fn default() -> Self {
        EnglishStemmer(rust_stemmers::Stemmer::create(rust_stemmers::Algorithm::English))
    }
}

impl Stemmer for EnglishStemmer {
    fn stem(&self, word: &str) -> String {
        self.0.stem(&word.to_lowercase()).into_owned()
    }
}

/// Word → lemma lookup, e.g. built from tagged text; unknown words stem to
/// themselves.
#[derive(Debug, Clone, Default)]
pub struct LexiconStemmer {
    lemmas: HashMap<String, String>,
}

impl LexiconStemmer {
    pub fn new(lemmas: HashMap<String, String>) -> Self {
        LexiconStemmer { lemmas }
    }

    /// Builds the lexicon from aligned surface/base token pairs; the first
    /// lemma seen for a surface form wins.
    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, &'a str)>>(pairs: I) -> Self {
        let mut lemmas = HashMap::new();
        for (s, b) in pairs {
            lemmas.entry(s.to_owned()).or_insert_with(|| b.to_owned());
        }
        LexiconStemmer { lemmas }
    }

    pub fn len(&self) -> usize {
        self.lemmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lemmas.is_empty()
    }
}

impl Stemmer for LexiconStemmer {
    fn stem(&self, word: &str) -> String {
        self.lemmas.get(word).cloned().unwrap_or_else(|| word.to_owned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn english_suffixes() {
        let s = EnglishStemmer::default();
        assert_eq!(s.stem("running"), s.stem("runs"));
        assert_eq!(s.stem("cats"), "cat");
    }

    #[test]
    fn lexicon_lookup() {
        let s = LexiconStemmer::from_pairs([("ludzi", "człowiek"), ("ludzi", "lud")]);
        assert_eq!(s.stem("ludzi"), "człowiek");
        assert_eq!(s.stem("kot"), "kot");
    }
}
