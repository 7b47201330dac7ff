use serde::Serialize;

use super::{TaggedSentence, TaggedToken};

/// Which string each token contributes to the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SvoForm {
    Surface,
    Base,
}

/// Block a token was assigned to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Subject,
    Verb,
    Object,
    Other,
}

/// Why a sentence was left in its original order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SvoFlag {
    NoSubject,
    NoVerb,
    NoObject,
    /// Finite-verb tokens form more than one contiguous run (several clauses).
    MultipleVerbGroups,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SvoOutcome {
    pub tokens: Vec<String>,
    /// `order[k]` is the input index of output token `k`.
    pub order: Vec<usize>,
    pub roles: Vec<Role>,
    /// Empty when the sentence was reordered.
    pub flags: Vec<SvoFlag>,
}

impl SvoOutcome {
    pub fn reordered(&self) -> bool {
        self.flags.is_empty()
    }
}

const FINITE_VERB: [&str; 7] = ["fin", "praet", "impt", "imps", "bedzie", "winien", "aglt"];
const NOMINAL: [&str; 11] = [
    "subst", "depr", "ppron12", "ppron3", "siebie", "ger", "num", "numcol", "adj", "adjc", "pact",
];
const CASES: [&str; 7] = ["nom", "gen", "dat", "acc", "inst", "loc", "voc"];

fn case_of(tok: &TaggedToken) -> Option<&str> {
    let a = tok.preferred();
    let mut fields = a.ctag.split(':');
    let class = fields.next()?;
    if !NOMINAL.contains(&class) {
        return None;
    }
    fields
        .flat_map(|f| f.split('.'))
        .find(|v| CASES.contains(v))
}

fn is_finite_verb(tok: &TaggedToken) -> bool {
    FINITE_VERB.contains(&tok.preferred().class())
}

/// Assigns each token a block and reorders to subject, verb, object, other,
/// keeping the original order inside each block.
///
/// Nominal groups are maximal runs of adjacent nominal tokens sharing a case.
/// The subject is the first nominative group, the verb block is the single
/// contiguous run of finite-verb tokens, and every other accusative or
/// genitive group is object. If any block is missing, or verbs form more than
/// one run, the sentence comes back unchanged with flags explaining why.
pub fn reorder_svo(sentence: &TaggedSentence, form: SvoForm) -> SvoOutcome {
    let toks = &sentence.tokens;
    let n = toks.len();
    let cases: Vec<Option<&str>> = toks.iter().map(case_of).collect();
    let mut roles = vec![Role::Other; n];

    let mut groups: Vec<(usize, usize, &str)> = Vec::new();
    let mut k = 0;
    while k < n {
        match cases[k] {
            Some(c) => {
                let start = k;
                while k < n && cases[k] == Some(c) {
                    k += 1;
                }
                groups.push((start, k, c));
            }
            None => k += 1,
        }
    }
    let subject = groups.iter().position(|g| g.2 == "nom");
    if let Some(s) = subject {
        let (a, b, _) = groups[s];
        roles[a..b].iter_mut().for_each(|r| *r = Role::Subject);
    }
    let mut has_object = false;
    for (gi, &(a, b, c)) in groups.iter().enumerate() {
        if Some(gi) != subject && (c == "acc" || c == "gen") {
            roles[a..b].iter_mut().for_each(|r| *r = Role::Object);
            has_object = true;
        }
    }
    let verb_idx: Vec<usize> = (0..n).filter(|&i| is_finite_verb(&toks[i])).collect();
    for &i in &verb_idx {
        roles[i] = Role::Verb;
    }
    let verb_runs = verb_idx.windows(2).filter(|w| w[1] != w[0] + 1).count() + usize::from(!verb_idx.is_empty());

    let mut flags = Vec::new();
    if subject.is_none() {
        flags.push(SvoFlag::NoSubject);
    }
    if verb_idx.is_empty() {
        flags.push(SvoFlag::NoVerb);
    }
    if !has_object {
        flags.push(SvoFlag::NoObject);
    }
    if verb_runs > 1 {
        flags.push(SvoFlag::MultipleVerbGroups);
    }

    let order: Vec<usize> = if flags.is_empty() {
        [Role::Subject, Role::Verb, Role::Object, Role::Other]
            .iter()
            .flat_map(|role| (0..n).filter(|&i| roles[i] == *role).collect::<Vec<_>>())
            .collect()
    } else {
        (0..n).collect()
    };
    let tokens = order
        .iter()
        .map(|&i| match form {
            SvoForm::Surface => toks[i].orth.clone(),
            SvoForm::Base => toks[i].preferred().base.clone(),
        })
        .collect();
    SvoOutcome {
        tokens,
        order,
        roles,
        flags,
    }
}

#[cfg(test)]
mod tests {
    use super::super::Analysis;
    use super::*;

    pub(crate) fn tok(orth: &str, ctag: &str) -> TaggedToken {
        TaggedToken {
            orth: orth.into(),
            analyses: vec![Analysis {
                base: orth.to_lowercase(),
                ctag: ctag.into(),
                disamb: true,
            }],
        }
    }

    fn sent(t: Vec<TaggedToken>) -> TaggedSentence {
        TaggedSentence {
            tokens: t,
            marker: None,
        }
    }

    #[test]
    fn object_verb_subject_becomes_svo() {
        let s = sent(vec![
            tok("kota", "subst:sg:acc:m2"),
            tok("ma", "fin:sg:ter:imperf"),
            tok("Ala", "subst:sg:nom:f"),
        ]);
        let out = reorder_svo(&s, SvoForm::Surface);
        assert!(out.reordered());
        assert_eq!(out.tokens, ["Ala", "ma", "kota"]);
        assert_eq!(out.order, [2, 1, 0]);
    }

    #[test]
    fn already_svo_is_fixed_point() {
        let s = sent(vec![
            tok("Ala", "subst:sg:nom:f"),
            tok("ma", "fin:sg:ter:imperf"),
            tok("czarnego", "adj:sg:acc:m2:pos"),
            tok("kota", "subst:sg:acc:m2"),
            tok(".", "interp"),
        ]);
        let out = reorder_svo(&s, SvoForm::Surface);
        assert!(out.reordered());
        assert_eq!(out.tokens, s.surface());
    }

    #[test]
    fn no_finite_verb_falls_back() {
        let s = sent(vec![tok("Piękny", "adj:sg:nom:m3:pos"), tok("dzień", "subst:sg:nom:m3"), tok("dla", "prep:gen"), tok("nas", "ppron12:pl:gen:m1:pri")]);
        let out = reorder_svo(&s, SvoForm::Surface);
        assert_eq!(out.flags, [SvoFlag::NoVerb]);
        assert_eq!(out.tokens, s.surface());
    }

    #[test]
    fn two_clauses_flagged() {
        let s = sent(vec![
            tok("Jan", "subst:sg:nom:m1"),
            tok("czyta", "fin:sg:ter:imperf"),
            tok("książkę", "subst:sg:acc:f"),
            tok("i", "conj"),
            tok("pije", "fin:sg:ter:imperf"),
            tok("herbatę", "subst:sg:acc:f"),
        ]);
        let out = reorder_svo(&s, SvoForm::Surface);
        assert_eq!(out.flags, [SvoFlag::MultipleVerbGroups]);
        assert_eq!(out.order, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn base_forms_and_other_block() {
        let s = sent(vec![
            tok("Wczoraj", "adv:pos"),
            tok("psa", "subst:sg:acc:m2"),
            tok("widzieli", "praet:pl:m1:perf"),
            tok("Chłopcy", "subst:pl:nom:m1"),
        ]);
        let out = reorder_svo(&s, SvoForm::Base);
        assert_eq!(out.tokens, ["chłopcy", "widzieli", "psa", "wczoraj"]);
        assert_eq!(out.roles, [Role::Other, Role::Object, Role::Verb, Role::Subject]);
    }
}
