use std::collections::HashMap;

use crate::textproc::{is_apostrophe, strip_apostrophes, SentenceSpan, Token, TokenList};

use super::ConcretePattern;

/// Literal `n't` in a lexicon stands for the negative contraction clitic:
/// it matches any token ending in `n't` ("don't", "can't", ...).
const CLITIC: &str = "n't";

/// One position of a compiled phrase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    /// Matches tokens whose apostrophe-free form equals the key.
    Key(String),
    NegClitic,
}

impl Elem {
    pub fn from_literal(lit: &str) -> Elem {
        let norm: String = lit.chars().map(|c| if is_apostrophe(c) { '\'' } else { c }).collect();
        if norm == CLITIC {
            Elem::NegClitic
        } else {
            Elem::Key(strip_apostrophes(&norm.to_lowercase()))
        }
    }

    pub fn matches(&self, tok: &Token) -> bool {
        match self {
            Elem::Key(k) => tok.match_key() == k,
            Elem::NegClitic => ends_with_clitic(&tok.normalized),
        }
    }

    pub(crate) fn mentions(&self, key: &str) -> bool {
        match self {
            Elem::Key(k) => k == key,
            Elem::NegClitic => false,
        }
    }
}

fn ends_with_clitic(s: &str) -> bool {
    let mut rev = s.chars().rev();
    matches!(
        (rev.next(), rev.next(), rev.next()),
        (Some('t'), Some(a), Some('n')) if is_apostrophe(a)
    ) && s.chars().count() > 3
}

#[derive(Clone, Debug)]
struct Phrase {
    elems: Vec<Elem>,
    seed: usize,
}

/// A match of one concrete phrase starting at `start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhraseMatch {
    pub phrase: usize,
    pub seed: usize,
    pub start: usize,
}

/// Sentence-scoped multi-token phrase matcher, indexed by first element.
#[derive(Clone, Debug, Default)]
pub struct PhraseMatcher {
    phrases: Vec<Phrase>,
    by_first: HashMap<String, Vec<usize>>,
    clitic_first: Vec<usize>,
}

impl PhraseMatcher {
    pub fn new(concretes: &[ConcretePattern]) -> PhraseMatcher {
        let mut m = PhraseMatcher::default();
        for c in concretes {
            let elems: Vec<Elem> = c.tokens.iter().map(|t| Elem::from_literal(t)).collect();
            if elems.is_empty() {
                continue;
            }
            let idx = m.phrases.len();
            match &elems[0] {
                Elem::Key(k) => m.by_first.entry(k.clone()).or_default().push(idx),
                Elem::NegClitic => m.clitic_first.push(idx),
            }
            m.phrases.push(Phrase {
                elems,
                seed: c.seed,
            });
        }
        m
    }

    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    pub fn phrase_len(&self, phrase: usize) -> usize {
        self.phrases[phrase].elems.len()
    }

    pub(crate) fn mentions(&self, key: &str) -> bool {
        self.phrases
            .iter()
            .any(|p| p.elems.iter().any(|e| e.mentions(key)))
    }

    /// Every (phrase, start) pair that matches inside a single sentence.
    /// Distinct phrases matching at the same place each produce a match.
    pub fn find_all(&self, tokens: &TokenList, spans: &[SentenceSpan]) -> Vec<PhraseMatch> {
        let mut out = Vec::new();
        self.scan(tokens, spans, |m| out.push(m));
        out
    }

    pub fn count(&self, tokens: &TokenList, spans: &[SentenceSpan]) -> usize {
        let mut n = 0;
        self.scan(tokens, spans, |_| n += 1);
        n
    }

    fn scan<F: FnMut(PhraseMatch)>(&self, tokens: &TokenList, spans: &[SentenceSpan], mut f: F) {
        let toks = &tokens.tokens;
        for span in spans {
            for start in span.start_token..span.end_token {
                let tok = &toks[start];
                let keyed = self.by_first.get(tok.match_key()).map(Vec::as_slice).unwrap_or(&[]);
                let clitic: &[usize] = if ends_with_clitic(&tok.normalized) {
                    &self.clitic_first
                } else {
                    &[]
                };
                for &pi in keyed.iter().chain(clitic) {
                    let p = &self.phrases[pi];
                    if start + p.elems.len() > span.end_token {
                        continue;
                    }
                    let hit = p
                        .elems
                        .iter()
                        .zip(&toks[start..])
                        .all(|(e, t)| e.matches(t));
                    if hit {
                        f(PhraseMatch {
                            phrase: pi,
                            seed: p.seed,
                            start,
                        });
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicons::PatternSource;
    use crate::textproc::{split_sentences, tokenize};

    fn concrete(text: &str, seed: usize) -> ConcretePattern {
        ConcretePattern {
            tokens: text.split(' ').map(String::from).collect(),
            seed,
            source: PatternSource::Seed,
        }
    }

    fn count(m: &PhraseMatcher, text: &str) -> usize {
        let tl = tokenize(text);
        m.count(&tl, &split_sentences(&tl))
    }

    #[test]
    fn apostrophe_variants_match_either_way() {
        let m = PhraseMatcher::new(&[concrete("dont", 0)]);
        assert_eq!(count(&m, "I don't know, I dont"), 2);
        let m = PhraseMatcher::new(&[concrete("i don't see", 0)]);
        assert_eq!(count(&m, "I dont see. I don’t see"), 2);
    }

    #[test]
    fn clitic_literal() {
        let m = PhraseMatcher::new(&[concrete("i n't know", 0)]);
        assert_eq!(count(&m, "I don't know. I didn't know. I know"), 2);
        assert!(!ends_with_clitic("n't"));
    }

    #[test]
    fn matches_stay_inside_sentences() {
        let m = PhraseMatcher::new(&[concrete("i see", 0)]);
        assert_eq!(count(&m, "I. See"), 0);
        assert_eq!(count(&m, "i see i see"), 2);
    }
}
