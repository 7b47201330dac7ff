use serde::{Deserialize, Serialize};

use super::Side;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthLimits {
    pub max_len: usize,
    pub max_ratio: f64,
}

impl Default for LengthLimits {
    fn default() -> Self {
        LengthLimits {
            max_len: 80,
            max_ratio: 9.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum DropReason {
    Overlong { side: Side, len: usize, max_len: usize },
    LengthRatio { ratio: f64, max_ratio: f64 },
    ForeignScript { side: Side },
}

#[derive(Debug, Clone, PartialEq)]
pub enum LengthVerdict {
    Keep,
    Drop(DropReason),
}

/// Keeps a pair when both sides have at most `max_len` tokens (inclusive) and
/// longer/shorter does not exceed `max_ratio`. One empty side against a
/// non-empty one counts as an infinite ratio; two empty sides are kept.
pub fn length_filter(src_len: usize, tgt_len: usize, limits: &LengthLimits) -> LengthVerdict {
    for (side, len) in [(Side::Source, src_len), (Side::Target, tgt_len)] {
        if len > limits.max_len {
            return LengthVerdict::Drop(DropReason::Overlong {
                side,
                len,
                max_len: limits.max_len,
            });
        }
    }
    let (long, short) = (src_len.max(tgt_len), src_len.min(tgt_len));
    if long == 0 {
        return LengthVerdict::Keep;
    }
    let ratio = if short == 0 {
        f64::INFINITY
    } else {
        long as f64 / short as f64
    };
    if ratio > limits.max_ratio {
        LengthVerdict::Drop(DropReason::LengthRatio {
            ratio,
            max_ratio: limits.max_ratio,
        })
    } else {
        LengthVerdict::Keep
    }
}
