use quick_xml::escape::escape;
use quick_xml::events::Event;
use quick_xml::Reader;

use super::encoding::{decode_input, TextEncoding};
use super::{Analysis, TaggedError, TaggedSentence, TaggedToken};

/// Sentinel appended to each input line before tagging so that line
/// boundaries survive the tagger's own segmentation.
pub const DEFAULT_MARKER: &str = "EOLMARKER";

#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Forces the input encoding instead of reading it from the XML declaration.
    pub encoding: Option<TextEncoding>,
    /// Tokens whose orth equals this close the current sentence and are dropped.
    pub marker: Option<String>,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            encoding: None,
            marker: Some(DEFAULT_MARKER.to_owned()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Orth,
    Base,
    Ctag,
}

#[derive(Default)]
struct LexBuilder {
    base: Option<String>,
    ctag: Option<String>,
    disamb: bool,
}

#[derive(Default)]
struct TokBuilder {
    orth: Option<String>,
    analyses: Vec<Analysis>,
    lex: Option<LexBuilder>,
}

struct Parser<'a> {
    reader: Reader<&'a [u8]>,
    opts: &'a ParseOptions,
    sentences: Vec<TaggedSentence>,
    current: Vec<TaggedToken>,
    tok: Option<TokBuilder>,
    field: Option<(Field, String)>,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> TaggedError {
        TaggedError::MalformedXml {
            position: self.reader.buffer_position(),
            message: message.into(),
        }
    }

    fn flush_sentence(&mut self, marker: Option<String>) {
        if !self.current.is_empty() {
            self.sentences.push(TaggedSentence {
                tokens: std::mem::take(&mut self.current),
                marker,
            });
        }
    }

    fn open(&mut self, name: &[u8], e: &quick_xml::events::BytesStart<'_>) -> Result<(), TaggedError> {
        if self.field.is_some() {
            return Err(self.err(format!(
                "element <{}> inside a text field",
                String::from_utf8_lossy(name)
            )));
        }
        match name {
            b"tok" => {
                if self.tok.is_some() {
                    return Err(self.err("nested <tok>"));
                }
                self.tok = Some(TokBuilder::default());
            }
            b"orth" => {
                let tok = self.tok.as_ref().ok_or_else(|| self.err("<orth> outside <tok>"))?;
                if tok.lex.is_some() {
                    return Err(self.err("<orth> inside <lex>"));
                }
                self.field = Some((Field::Orth, String::new()));
            }
            b"lex" => {
                let disamb = e
                    .attributes()
                    .filter_map(Result::ok)
                    .any(|a| a.key.as_ref() == b"disamb" && a.value.as_ref() == b"1");
                let pos = self.reader.buffer_position();
                let tok = self.tok.as_mut().ok_or(TaggedError::MalformedXml {
                    position: pos,
                    message: "<lex> outside <tok>".into(),
                })?;
                if tok.lex.is_some() {
                    return Err(self.err("nested <lex>"));
                }
                tok.lex = Some(LexBuilder {
                    disamb,
                    ..LexBuilder::default()
                });
            }
            b"base" | b"ctag" => {
                let in_lex = self.tok.as_ref().is_some_and(|t| t.lex.is_some());
                if !in_lex {
                    return Err(self.err(format!("<{}> outside <lex>", String::from_utf8_lossy(name))));
                }
                let f = if name == b"base" { Field::Base } else { Field::Ctag };
                self.field = Some((f, String::new()));
            }
            b"sentence" => {
                if self.tok.is_some() {
                    return Err(self.err("<sentence> inside <tok>"));
                }
                self.flush_sentence(None);
            }
            _ => {
                if self.tok.is_some() {
                    return Err(self.err(format!(
                        "unexpected <{}> inside <tok>",
                        String::from_utf8_lossy(name)
                    )));
                }
            }
        }
        Ok(())
    }

    fn close(&mut self, name: &[u8]) -> Result<(), TaggedError> {
        match name {
            b"orth" | b"base" | b"ctag" => {
                let (field, text) = self.field.take().ok_or_else(|| self.err("unbalanced field"))?;
                let text = text.trim().to_owned();
                let tok = self.tok.as_mut().expect("field implies open tok");
                match field {
                    Field::Orth => tok.orth = Some(text),
                    Field::Base => tok.lex.as_mut().expect("base implies lex").base = Some(text),
                    Field::Ctag => tok.lex.as_mut().expect("ctag implies lex").ctag = Some(text),
                }
            }
            b"lex" => {
                let pos = self.reader.buffer_position();
                let tok = self.tok.as_mut().expect("lex implies tok");
                let lex = tok.lex.take().expect("open lex");
                let (Some(base), Some(ctag)) = (lex.base, lex.ctag) else {
                    return Err(TaggedError::MalformedXml {
                        position: pos,
                        message: "<lex> needs both <base> and <ctag>".into(),
                    });
                };
                if ctag.is_empty() || ctag.starts_with(':') {
                    return Err(TaggedError::MalformedXml {
                        position: pos,
                        message: format!("ctag `{ctag}` lacks a grammatical class"),
                    });
                }
                tok.analyses.push(Analysis {
                    base,
                    ctag,
                    disamb: lex.disamb,
                });
            }
            b"tok" => {
                let tok = self.tok.take().expect("open tok");
                let Some(orth) = tok.orth else {
                    return Err(self.err("<tok> without <orth>"));
                };
                if self.opts.marker.as_deref() == Some(orth.as_str()) {
                    self.flush_sentence(Some(orth));
                    return Ok(());
                }
                if tok.analyses.is_empty() {
                    return Err(self.err(format!("<tok> `{orth}` has no <lex>")));
                }
                self.current.push(TaggedToken {
                    orth,
                    analyses: tok.analyses,
                });
            }
            b"sentence" => self.flush_sentence(None),
            _ => {}
        }
        Ok(())
    }

    fn run(mut self) -> Result<Vec<TaggedSentence>, TaggedError> {
        loop {
            let event = self
                .reader
                .read_event()
                .map_err(|e| self.err(e.to_string()))?;
            match event {
                Event::Start(e) => {
                    let name = e.name().as_ref().to_vec();
                    self.open(&name, &e)?;
                }
                Event::Empty(e) => {
                    let name = e.name().as_ref().to_vec();
                    self.open(&name, &e)?;
                    self.close(&name)?;
                }
                Event::End(e) => {
                    let name = e.name().as_ref().to_vec();
                    self.close(&name)?;
                }
                Event::Text(t) => {
                    let text = t.unescape().map_err(|e| self.err(e.to_string()))?;
                    if let Some((_, buf)) = self.field.as_mut() {
                        buf.push_str(&text);
                    }
                }
                Event::CData(t) => {
                    if let Some((_, buf)) = self.field.as_mut() {
                        buf.push_str(&String::from_utf8_lossy(&t));
                    }
                }
                Event::Eof => break,
                _ => {}
            }
        }
        if self.tok.is_some() {
            return Err(self.err("unterminated <tok>"));
        }
        self.flush_sentence(None);
        Ok(self.sentences)
    }
}

/// Parses already-decoded XML text.
pub fn parse_tagged_xml_str(
    text: &str,
    opts: &ParseOptions,
) -> Result<Vec<TaggedSentence>, TaggedError> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(false);
    let parser = Parser {
        reader,
        opts,
        sentences: Vec::new(),
        current: Vec::new(),
        tok: None,
        field: None,
    };
    parser.run()
}

/// Decodes raw bytes (UTF-8 or Windows-1250, from the declaration unless
/// overridden) and parses them. Sentences end at `</sentence>`, at a marker
/// token, or at end of input; a boundary with no tokens before it yields no
/// sentence.
pub fn parse_tagged_xml(bytes: &[u8], opts: &ParseOptions) -> Result<Vec<TaggedSentence>, TaggedError> {
    let text = decode_input(bytes, opts.encoding)?;
    parse_tagged_xml_str(&text, opts)
}

/// Serializes sentences into the same schema, one `<sentence>` per entry;
/// a sentence's marker is written as a trailing marker token.
pub fn write_tagged_xml(sentences: &[TaggedSentence]) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<chunkList>\n<chunk type=\"p\">\n");
    let write_tok = |out: &mut String, orth: &str, analyses: &[Analysis]| {
        out.push_str("<tok>\n<orth>");
        out.push_str(&escape(orth));
        out.push_str("</orth>\n");
        for a in analyses {
            out.push_str(if a.disamb { "<lex disamb=\"1\">" } else { "<lex>" });
            out.push_str("<base>");
            out.push_str(&escape(a.base.as_str()));
            out.push_str("</base><ctag>");
            out.push_str(&escape(a.ctag.as_str()));
            out.push_str("</ctag></lex>\n");
        }
        out.push_str("</tok>\n");
    };
    for s in sentences {
        out.push_str("<sentence>\n");
        for t in &s.tokens {
            write_tok(&mut out, &t.orth, &t.analyses);
        }
        if let Some(m) = &s.marker {
            let a = Analysis {
                base: m.clone(),
                ctag: "interp".into(),
                disamb: true,
            };
            write_tok(&mut out, m, std::slice::from_ref(&a));
        }
        out.push_str("</sentence>\n");
    }
    out.push_str("</chunk>\n</chunkList>\n");
    out
}
