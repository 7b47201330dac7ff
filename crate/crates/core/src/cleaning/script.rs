use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Writing system of a letter. Non-letters (digits, punctuation, spaces)
/// belong to no class and are accepted under every configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScriptClass {
    Latin,
    Greek,
    Cyrillic,
    Armenian,
    Hebrew,
    Arabic,
    Devanagari,
    Thai,
    Georgian,
    Hangul,
    Kana,
    Han,
    Other,
}

impl ScriptClass {
    pub const ALL: [ScriptClass; 13] = [
        ScriptClass::Latin,
        ScriptClass::Greek,
        ScriptClass::Cyrillic,
        ScriptClass::Armenian,
        ScriptClass::Hebrew,
        ScriptClass::Arabic,
        ScriptClass::Devanagari,
        ScriptClass::Thai,
        ScriptClass::Georgian,
        ScriptClass::Hangul,
        ScriptClass::Kana,
        ScriptClass::Han,
        ScriptClass::Other,
    ];

    /// Script of `c`, or `None` if `c` is not alphabetic.
    pub fn of(c: char) -> Option<ScriptClass> {
        if !c.is_alphabetic() {
            return None;
        }
        let cp = c as u32;
        let class = match cp {
            0x0041..=0x024F | 0x1E00..=0x1EFF | 0x2C60..=0x2C7F | 0xA720..=0xA7FF | 0xFF21..=0xFF5A => {
                ScriptClass::Latin
            }
            0x0250..=0x02AF | 0x1D00..=0x1DBF => ScriptClass::Latin,
            0x0370..=0x03FF | 0x1F00..=0x1FFF => ScriptClass::Greek,
            0x0400..=0x052F | 0x1C80..=0x1C8F | 0x2DE0..=0x2DFF | 0xA640..=0xA69F => ScriptClass::Cyrillic,
            0x0530..=0x058F => ScriptClass::Armenian,
            0x0590..=0x05FF => ScriptClass::Hebrew,
            0x0600..=0x06FF | 0x0750..=0x077F | 0x08A0..=0x08FF | 0xFB50..=0xFDFF | 0xFE70..=0xFEFF => {
                ScriptClass::Arabic
            }
            0x0900..=0x097F => ScriptClass::Devanagari,
            0x0E00..=0x0E7F => ScriptClass::Thai,
            0x10A0..=0x10FF => ScriptClass::Georgian,
            0x1100..=0x11FF | 0x3130..=0x318F | 0xAC00..=0xD7AF => ScriptClass::Hangul,
            0x3040..=0x30FF | 0x31F0..=0x31FF | 0xFF66..=0xFF9F => ScriptClass::Kana,
            0x3400..=0x4DBF | 0x4E00..=0x9FFF | 0xF900..=0xFAFF | 0x20000..=0x2FA1F => ScriptClass::Han,
            _ => ScriptClass::Other,
        };
        Some(class)
    }

    pub fn name(self) -> &'static str {
        match self {
            ScriptClass::Latin => "latin",
            ScriptClass::Greek => "greek",
            ScriptClass::Cyrillic => "cyrillic",
            ScriptClass::Armenian => "armenian",
            ScriptClass::Hebrew => "hebrew",
            ScriptClass::Arabic => "arabic",
            ScriptClass::Devanagari => "devanagari",
            ScriptClass::Thai => "thai",
            ScriptClass::Georgian => "georgian",
            ScriptClass::Hangul => "hangul",
            ScriptClass::Kana => "kana",
            ScriptClass::Han => "han",
            ScriptClass::Other => "other",
        }
    }
}

impl fmt::Display for ScriptClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScriptClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        ScriptClass::ALL
            .into_iter()
            .find(|c| c.name() == lower)
            .ok_or_else(|| format!("unknown script class `{s}`"))
    }
}

/// Characters that never belong in running text regardless of script:
/// controls, private-use code points, the replacement character, and the
/// arrow / math-operator / box-drawing / dingbat blocks.
pub fn is_symbol_noise(c: char) -> bool {
    let cp = c as u32;
    (c.is_control() && c != '\t')
        || c == '\u{FFFD}'
        || matches!(cp,
            0xE000..=0xF8FF
            | 0xF0000..=0x10FFFF
            | 0x2190..=0x21FF
            | 0x2200..=0x22FF
            | 0x2500..=0x259F
            | 0x25A0..=0x25FF
            | 0x2600..=0x27BF)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifies_letters() {
        assert_eq!(ScriptClass::of('ż'), Some(ScriptClass::Latin));
        assert_eq!(ScriptClass::of('Ł'), Some(ScriptClass::Latin));
        assert_eq!(ScriptClass::of('Ψ'), Some(ScriptClass::Greek));
        assert_eq!(ScriptClass::of('η'), Some(ScriptClass::Greek));
        assert_eq!(ScriptClass::of('ж'), Some(ScriptClass::Cyrillic));
        assert_eq!(ScriptClass::of('字'), Some(ScriptClass::Han));
        assert_eq!(ScriptClass::of('7'), None);
        assert_eq!(ScriptClass::of('.'), None);
        assert_eq!(ScriptClass::of('×'), None);
    }

    #[test]
    fn parses_names() {
        assert_eq!("Latin".parse::<ScriptClass>(), Ok(ScriptClass::Latin));
        assert!("klingon".parse::<ScriptClass>().is_err());
    }

    #[test]
    fn symbol_noise() {
        assert!(is_symbol_noise('\u{FFFD}'));
        assert!(is_symbol_noise('∑'));
        assert!(is_symbol_noise('\u{E000}'));
        assert!(!is_symbol_noise('%'));
        assert!(!is_symbol_noise('ą'));
    }
}
