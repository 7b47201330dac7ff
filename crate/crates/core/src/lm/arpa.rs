use std::io::{BufRead, Write};

use super::model::{Context, NGramModel, Smoothing};
use super::vocab::Vocab;
use super::LmError;

/// Writes `model` in ARPA format. Log probabilities and back-off weights are
/// printed with six decimals; the back-off column appears only for n-grams
/// that are themselves histories.
pub fn write_arpa<W: Write>(model: &NGramModel, mut sink: W) -> Result<(), LmError> {
    let order = model.order();
    let vocab = model.vocab();
    writeln!(sink, "\\data\\")?;
    for n in 1..=order {
        writeln!(sink, "ngram {n}={}", model.ngram_count(n))?;
    }
    for n in 1..=order {
        writeln!(sink)?;
        writeln!(sink, "\\{n}-grams:")?;
        for (gram, lp) in model.ngrams(n) {
            let words: Vec<&str> = gram.iter().map(|&id| vocab.word(id)).collect();
            write!(sink, "{lp:.6}\t{}", words.join(" "))?;
            if n < order {
                if let Some(bow) = model.context(&gram).and_then(|c| c.backoff) {
                    write!(sink, "\t{bow:.6}")?;
                }
            }
            writeln!(sink)?;
        }
    }
    writeln!(sink)?;
    writeln!(sink, "\\end\\")?;
    sink.flush()?;
    Ok(())
}

struct Entry {
    line: usize,
    words: Vec<String>,
    logprob: f64,
    backoff: Option<f64>,
}

fn format_error(line: usize, message: impl Into<String>) -> LmError {
    LmError::ArpaFormatError { line, message: message.into() }
}

fn parse_float(s: &str, line: usize) -> Result<f64, LmError> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format_error(line, format!("invalid number `{s}`")))
}

enum State {
    Preamble,
    Header,
    Section(usize),
    End,
}

/// Reads an ARPA model. Header counts must match the body; every word of a
/// higher-order n-gram must have a unigram entry.
pub fn read_arpa<R: BufRead>(source: R) -> Result<NGramModel, LmError> {
    let mut declared: Vec<(usize, usize)> = Vec::new();
    let mut sections: Vec<Vec<Entry>> = Vec::new();
    let mut state = State::Preamble;
    let mut last_line = 0;

    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let trimmed = line.trim();
        match state {
            State::Preamble => {
                if trimmed == "\\data\\" {
                    state = State::Header;
                }
            }
            State::Header => {
                if trimmed.is_empty() {
                    continue;
                }
                if let Some(rest) = trimmed.strip_prefix("ngram ") {
                    let (n, c) = rest
                        .split_once('=')
                        .ok_or_else(|| format_error(lineno, "expected `ngram N=COUNT`"))?;
                    let n: usize = n.trim().parse().map_err(|_| format_error(lineno, "invalid order"))?;
                    let c: usize = c.trim().parse().map_err(|_| format_error(lineno, "invalid count"))?;
                    if n != declared.len() + 1 {
                        return Err(format_error(lineno, format!("expected order {}", declared.len() + 1)));
                    }
                    declared.push((n, c));
                } else {
                    state = section_start(trimmed, &declared, &mut sections, lineno)?;
                }
            }
            State::Section(n) => {
                if trimmed.is_empty() {
                    continue;
                }
                if trimmed.starts_with('\\') {
                    check_count(&declared, &sections, n, lineno)?;
                    state = section_start(trimmed, &declared, &mut sections, lineno)?;
                    continue;
                }
                let fields: Vec<&str> = trimmed.split_whitespace().collect();
                let backoff = match fields.len() {
                    l if l == n + 1 => None,
                    l if l == n + 2 => Some(parse_float(fields[n + 1], lineno)?),
                    _ => return Err(format_error(lineno, format!("expected a {n}-gram entry"))),
                };
                sections[n - 1].push(Entry {
                    line: lineno,
                    words: fields[1..=n].iter().map(|w| w.to_string()).collect(),
                    logprob: parse_float(fields[0], lineno)?,
                    backoff,
                });
            }
            State::End => {
                if !trimmed.is_empty() {
                    return Err(format_error(lineno, "content after \\end\\"));
                }
            }
        }
    }
    if !matches!(state, State::End) {
        return Err(format_error(last_line, "missing \\end\\"));
    }
    build_model(sections)
}

fn section_start(
    trimmed: &str,
    declared: &[(usize, usize)],
    sections: &mut Vec<Vec<Entry>>,
    lineno: usize,
) -> Result<State, LmError> {
    if trimmed == "\\end\\" {
        if sections.len() != declared.len() {
            return Err(format_error(
                lineno,
                format!("{} sections declared, {} present", declared.len(), sections.len()),
            ));
        }
        return Ok(State::End);
    }
    let n = trimmed
        .strip_prefix('\\')
        .and_then(|s| s.strip_suffix("-grams:"))
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| format_error(lineno, format!("unexpected line `{trimmed}`")))?;
    if n != sections.len() + 1 || n > declared.len() {
        return Err(format_error(lineno, format!("unexpected {n}-gram section")));
    }
    sections.push(Vec::new());
    Ok(State::Section(n))
}

fn check_count(
    declared: &[(usize, usize)],
    sections: &[Vec<Entry>],
    n: usize,
    lineno: usize,
) -> Result<(), LmError> {
    let expected = declared[n - 1].1;
    let found = sections[n - 1].len();
    if expected != found {
        return Err(format_error(
            lineno,
            format!("header declares {expected} {n}-grams, section has {found}"),
        ));
    }
    Ok(())
}

fn build_model(sections: Vec<Vec<Entry>>) -> Result<NGramModel, LmError> {
    let order = sections.len();
    if order == 0 {
        return Err(LmError::EmptyCounts);
    }
    let vocab = Vocab::from_words(sections[0].iter().map(|e| e.words[0].as_str()));
    let mut model = NGramModel::empty(order, vocab, Smoothing::Arpa);
    for (k, entries) in sections.into_iter().enumerate() {
        for e in entries {
            let ids = e
                .words
                .iter()
                .map(|w| model.vocab.id(w))
                .collect::<Option<Vec<u32>>>()
                .filter(|ids| k > 0 || ids[0] != Vocab::UNK_ID || e.words[0] == super::UNK)
                .ok_or_else(|| format_error(e.line, "word without a unigram entry"))?;
            let (h, w) = ids.split_at(k);
            let slot = model.contexts[k].entry(h.into()).or_insert_with(Context::default);
            if slot.probs.insert(w[0], e.logprob).is_some() {
                return Err(format_error(e.line, "duplicate n-gram"));
            }
            if let Some(b) = e.backoff {
                model.contexts[ids.len()]
                    .entry(ids.as_slice().into())
                    .or_insert_with(Context::default)
                    .backoff = Some(b);
            }
        }
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lm::{count_ngrams, estimate_kneser_ney, split_sentences, Vocab};

    fn roundtrip(m: &NGramModel) -> NGramModel {
        let mut buf = Vec::new();
        write_arpa(m, &mut buf).unwrap();
        read_arpa(buf.as_slice()).unwrap()
    }

    #[test]
    fn roundtrip_preserves_scores() {
        let corpus = split_sentences(&["the cat sat", "the dog sat down", "a cat ran"]);
        let m = estimate_kneser_ney(&count_ngrams(&corpus, 3).unwrap()).unwrap();
        let r = roundtrip(&m);
        assert_eq!(r.order(), 3);
        for n in 1..=3 {
            assert_eq!(r.ngram_count(n), m.ngram_count(n));
        }
        for s in corpus.iter().chain(split_sentences(&["dog ran the", "unseen words"]).iter()) {
            let a = m.sentence_logprob(s).log10_prob;
            let b = r.sentence_logprob(s).log10_prob;
            assert!((a - b).abs() < 1e-4, "{a} vs {b}");
        }
    }

    #[test]
    fn header_mismatch_is_rejected() {
        let text = "\\data\\\nngram 1=3\n\n\\1-grams:\n-0.5\ta\n-0.5\tb\n\n\\end\\\n";
        match read_arpa(text.as_bytes()) {
            Err(LmError::ArpaFormatError { line, .. }) => assert_eq!(line, 8),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hand_written_unigram_model() {
        // P(a) = 0.25, P(</s>) = 0.75
        let text = "\\data\\\nngram 1=2\n\n\\1-grams:\n-0.602060\ta\n-0.124939\t</s>\n\n\\end\\\n";
        let m = read_arpa(text.as_bytes()).unwrap();
        assert!((m.prob(&[], m.word_id("a")) - 0.25).abs() < 1e-6);
        assert!((m.prob(&[], Vocab::EOS_ID) - 0.75).abs() < 1e-6);
        assert!(!m.has_unk());
        let s = m.sentence_logprob(&split_sentences(&["a a"])[0]);
        assert!((s.log10_prob - (2.0 * 0.25f64.log10() + 0.75f64.log10())).abs() < 1e-5);
    }

    #[test]
    fn unknown_word_in_bigram_is_rejected() {
        let text = "\\data\\\nngram 1=1\nngram 2=1\n\n\\1-grams:\n-0.3\ta\n\n\\2-grams:\n-0.3\ta b\n\n\\end\\\n";
        assert!(matches!(
            read_arpa(text.as_bytes()),
            Err(LmError::ArpaFormatError { line: 9, .. })
        ));
    }

    #[test]
    fn missing_end_is_rejected() {
        let text = "\\data\\\nngram 1=1\n\n\\1-grams:\n-0.3\ta\n";
        assert!(matches!(read_arpa(text.as_bytes()), Err(LmError::ArpaFormatError { .. })));
    }
}
