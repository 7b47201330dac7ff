use std::ops::Range;

use crate::corpus::{Segment, TokenScheme};

use super::{CorruptionFinding, FindingKind, Side};

/// An adjacent pair of identical token blocks: `[start, start+len)` followed
/// immediately by `[start+len, start+2*len)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepeatedBlock {
    pub start: usize,
    pub len: usize,
}

impl RepeatedBlock {
    /// Token range of the second copy.
    pub fn copy_span(&self) -> Range<usize> {
        self.start + self.len..self.start + 2 * self.len
    }
}

const SENTENCE_END: [&str; 4] = [".", "!", "?", "…"];

fn ends_sentence(tok: &str) -> bool {
    SENTENCE_END.contains(&tok)
}

/// Scans left to right for adjacent repeated blocks of at least `min_block`
/// tokens, taking the longest block at each start. Reported second copies
/// never overlap.
pub fn find_repeated_blocks<T: PartialEq>(tokens: &[T], min_block: usize) -> Vec<RepeatedBlock> {
    let min_block = min_block.max(1);
    let n = tokens.len();
    let mut out = Vec::new();
    let mut last_end = 0;
    let mut i = 0;
    while i + 2 * min_block <= n {
        let max_len = (n - i) / 2;
        let found = (min_block..=max_len)
            .rev()
            .find(|&len| i + len >= last_end && tokens[i..i + len] == tokens[i + len..i + 2 * len]);
        match found {
            Some(len) => {
                out.push(RepeatedBlock { start: i, len });
                last_end = i + 2 * len;
                i += len;
            }
            None => i += 1,
        }
    }
    out
}

fn classify(tokens: &[String], blocks: &[RepeatedBlock], k: usize) -> FindingKind {
    let b = blocks[k];
    let whole_sentence = ends_sentence(&tokens[b.start + b.len - 1])
        && (b.start == 0 || ends_sentence(&tokens[b.start - 1]));
    if whole_sentence {
        return FindingKind::SentenceRepetition;
    }
    // A A B B: the next pair starts right where this one ends, or vice versa.
    let next_adjacent = blocks
        .get(k + 1)
        .is_some_and(|n| n.start == b.start + 2 * b.len);
    let prev_adjacent = k > 0 && {
        let p = blocks[k - 1];
        p.start + 2 * p.len == b.start
    };
    if next_adjacent || prev_adjacent {
        FindingKind::PartialNesting
    } else {
        FindingKind::BlockDuplication
    }
}

/// Findings for every adjacent duplicate block; each span covers the second copy.
pub fn detect_internal_duplication(
    segment: &Segment,
    side: Side,
    scheme: &TokenScheme,
    min_block: usize,
) -> Vec<CorruptionFinding> {
    let tokens = segment.tokens(scheme);
    duplication_findings(segment.id(), side, &tokens, min_block)
}

pub(crate) fn duplication_findings(
    segment_id: usize,
    side: Side,
    tokens: &[String],
    min_block: usize,
) -> Vec<CorruptionFinding> {
    let blocks = find_repeated_blocks(tokens, min_block);
    blocks
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let span = b.copy_span();
            CorruptionFinding {
                segment_id,
                side,
                kind: classify(tokens, &blocks, k),
                evidence: tokens[span.clone()].to_vec(),
                span,
            }
        })
        .collect()
}

/// Removes the second copy of the leftmost duplicate block and rescans until
/// no adjacent duplicate of `min_block` or more tokens remains. The surviving
/// text keeps its original spacing.
pub fn strip_internal_duplication(
    segment: &Segment,
    scheme: &TokenScheme,
    min_block: usize,
) -> Segment {
    let mut out = segment.clone();
    loop {
        let spans = out.token_spans(scheme);
        let tokens: Vec<&str> = spans.iter().map(|t| t.text.as_str()).collect();
        let Some(first) = find_repeated_blocks(&tokens, min_block).into_iter().next() else {
            return out;
        };
        let copy = first.copy_span();
        // copy.start >= 1: the first copy precedes it
        let cut_from = spans[copy.start - 1].range.end;
        let cut_to = spans[copy.end - 1].range.end;
        let text = out.text();
        let rest = &text[cut_to..];
        let glue = if rest.starts_with(char::is_whitespace) || rest.is_empty() {
            ""
        } else {
            " "
        };
        let new_text = format!("{}{}{}", &text[..cut_from], glue, rest);
        out.replace_text(new_text);
    }
}
