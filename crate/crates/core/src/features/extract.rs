//! The per-post extractors. Each takes a tokenized post and returns plain
//! counts; all of them are pure.

use serde::{Deserialize, Serialize};

use crate::lexicons::{CueEntry, LexiconSet, Polarity, PolarityLexicon, Strength};
use crate::textproc::{split_sentences, SentenceSpan, TokenKind, TokenList};

/// Tokens before an agreement keyword searched for negation.
pub const NEGATION_WINDOW: usize = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarityMode {
    #[default]
    Sum,
    Mean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Duration {
    pub chars: usize,
    pub words: usize,
    pub sentences: usize,
}

/// Agreement keywords that are neither negated (a negation token in the
/// preceding window) nor contrasted (a contrast marker later in the same
/// sentence).
pub fn extract_agreement(tokens: &TokenList, lex: &LexiconSet) -> usize {
    agreement_count(tokens, &split_sentences(tokens), lex)
}

pub(crate) fn agreement_count(tokens: &TokenList, spans: &[SentenceSpan], lex: &LexiconSet) -> usize {
    let toks = &tokens.tokens;
    let mut n = 0;
    for span in spans {
        for m in lex.agreement_matcher().find_all(tokens, std::slice::from_ref(span)) {
            let end = m.start + lex.agreement_matcher().phrase_len(m.phrase);
            let window = m.start.saturating_sub(NEGATION_WINDOW).max(span.start_token);
            let negated = toks[window..m.start]
                .iter()
                .any(|t| lex.negation.iter().any(|e| e.matches(t)));
            let contrasted = toks[end..span.end_token]
                .iter()
                .any(|t| lex.contrast.iter().any(|e| e.matches(t)));
            if !negated && !contrasted {
                n += 1;
            }
        }
    }
    n
}

pub fn extract_denial(tokens: &TokenList, lex: &LexiconSet) -> usize {
    lex.denial_matcher().count(tokens, &split_sentences(tokens))
}

/// One count per cue entry, in lexicon order. The category entry counts
/// matches of the cogmech lexicon.
pub fn extract_cues(tokens: &TokenList, lex: &LexiconSet) -> Vec<usize> {
    cue_counts(tokens, &split_sentences(tokens), lex)
}

pub(crate) fn cue_counts(tokens: &TokenList, spans: &[SentenceSpan], lex: &LexiconSet) -> Vec<usize> {
    lex.cue_entries
        .iter()
        .map(|e| match e {
            CueEntry::Phrase { matcher, .. } => matcher.count(tokens, spans),
            CueEntry::Category { .. } => lex.cogmech_matcher.count(tokens, spans),
        })
        .collect()
}

pub fn extract_hedges(tokens: &TokenList, lex: &LexiconSet) -> usize {
    lex.hedge_matcher().count(tokens, &split_sentences(tokens))
}

pub fn extract_duration(tokens: &TokenList) -> Duration {
    Duration {
        chars: tokens.char_count,
        words: word_count(tokens),
        sentences: split_sentences(tokens).len(),
    }
}

fn word_count(tokens: &TokenList) -> usize {
    tokens.tokens.iter().filter(|t| t.is_wordlike()).count()
}

/// Strongly subjective positive and negative words. Weak clues are
/// ignored; BOTH-polarity clues count on each side.
pub fn extract_polarity(tokens: &TokenList, mpqa: &PolarityLexicon, mode: PolarityMode) -> (f64, f64) {
    let (mut pos, mut neg) = (0usize, 0usize);
    for t in tokens.tokens.iter().filter(|t| t.kind == TokenKind::Word) {
        let entry = mpqa
            .entries
            .get(&t.normalized)
            .or_else(|| t.alt.as_ref().and_then(|a| mpqa.entries.get(a)));
        let Some(e) = entry else { continue };
        if e.strength != Strength::Strong {
            continue;
        }
        match e.polarity {
            Polarity::Positive => pos += 1,
            Polarity::Negative => neg += 1,
            Polarity::Both => {
                pos += 1;
                neg += 1;
            }
            Polarity::Neutral => {}
        }
    }
    match mode {
        PolarityMode::Sum => (pos as f64, neg as f64),
        PolarityMode::Mean => {
            let words = word_count(tokens);
            if words == 0 {
                (0.0, 0.0)
            } else {
                (pos as f64 / words as f64, neg as f64 / words as f64)
            }
        }
    }
}

/// Literal `?` and `!` characters in the source text.
pub fn extract_punctuation(tokens: &TokenList) -> (usize, usize) {
    tokens.text.chars().fold((0, 0), |(q, e), c| match c {
        '?' => (q + 1, e),
        '!' => (q, e + 1),
        _ => (q, e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicons::{load_mpqa, LexiconName};
    use crate::textproc::tokenize;

    fn lex() -> LexiconSet {
        LexiconSet::shipped()
    }

    #[test]
    fn agreement_examples() {
        let l = lex();
        assert_eq!(extract_agreement(&tokenize("Quite right. My mistake."), &l), 1);
        assert_eq!(
            extract_agreement(&tokenize("You may be correct however I do not agree"), &l),
            0
        );
        assert_eq!(extract_agreement(&tokenize(""), &l), 0);
        // negation window is three tokens and stays inside the sentence
        assert_eq!(extract_agreement(&tokenize("not a b c agree"), &l), 1);
        assert_eq!(extract_agreement(&tokenize("I don't agree"), &l), 0);
        assert_eq!(extract_agreement(&tokenize("No. Right"), &l), 1);
        assert_eq!(extract_agreement(&tokenize("Right. But still"), &l), 1);
    }

    #[test]
    fn denial_examples() {
        let l = lex();
        assert!(extract_denial(&tokenize("I don't see why this matters."), &l) >= 1);
        assert_eq!(extract_denial(&tokenize("Lovely weather today."), &l), 0);

        let tl = tokenize("How can you say that? How can we know?");
        let spans = split_sentences(&tl);
        let seed = l
            .denial
            .patterns
            .iter()
            .position(|p| p.text() == "how can <pron>")
            .unwrap();
        let hits = l
            .denial_matcher()
            .find_all(&tl, &spans)
            .into_iter()
            .filter(|m| m.seed == seed)
            .count();
        assert_eq!(hits, 2);
    }

    #[test]
    fn cue_examples() {
        let l = lex();
        let labels = l.cue_labels();
        let at = |name: &str| labels.iter().position(|x| x == name).unwrap();
        let c = extract_cues(&tokenize("Well, many have argued ..."), &l);
        assert!(c[at("well")] >= 1);
        let c = extract_cues(&tokenize("so what? so so"), &l);
        assert_eq!(c[at("so")], 3);
        let c = extract_cues(&tokenize("zzz qqq"), &l);
        assert_eq!(c, vec![0; 18]);
        let c = extract_cues(&tokenize("but I think you mean it, because"), &l);
        assert_eq!(c[at("you mean")], 1);
        assert_eq!(c[at("i think")], 1);
        // cogmech approximation: but, think, mean, because
        assert_eq!(c[at("@cogmech")], 4);
    }

    #[test]
    fn hedge_examples() {
        let l = lex();
        assert_eq!(
            extract_hedges(
                &tokenize("Perhaps not in this particular thread ... essentially the same."),
                &l
            ),
            2
        );
        assert_eq!(extract_hedges(&tokenize("I'm wondering."), &l), 1);
        assert_eq!(extract_hedges(&tokenize(""), &l), 0);
    }

    #[test]
    fn duration_examples() {
        let d = extract_duration(&tokenize("Quite right. My mistake."));
        assert_eq!((d.words, d.sentences, d.chars), (4, 2, 24));
        let d = extract_duration(&tokenize(""));
        assert_eq!((d.chars, d.words, d.sentences), (0, 0, 0));
        let d = extract_duration(&tokenize("one two three"));
        assert_eq!((d.words, d.sentences), (3, 1));
    }

    #[test]
    fn polarity_examples() {
        let src = "type=strongsubj len=1 word1=great pos1=adj stemmed1=n priorpolarity=positive\n\
                   type=strongsubj len=1 word1=superb pos1=adj stemmed1=n priorpolarity=positive\n\
                   type=strongsubj len=1 word1=awful pos1=adj stemmed1=n priorpolarity=negative\n\
                   type=weaksubj len=1 word1=fine pos1=adj stemmed1=n priorpolarity=positive\n\
                   type=weaksubj len=1 word1=bad pos1=adj stemmed1=n priorpolarity=negative\n";
        let (mpqa, _) = load_mpqa(src.as_bytes()).unwrap();
        let tl = tokenize("Great and superb but awful one two three four five");
        assert_eq!(extract_polarity(&tl, &mpqa, PolarityMode::Sum), (2.0, 1.0));
        let (p, n) = extract_polarity(&tl, &mpqa, PolarityMode::Mean);
        assert!((p - 0.2).abs() < 1e-12 && (n - 0.1).abs() < 1e-12);
        assert_eq!(
            extract_polarity(&tokenize("fine but bad"), &mpqa, PolarityMode::Sum),
            (0.0, 0.0)
        );
        assert_eq!(extract_polarity(&tokenize(""), &mpqa, PolarityMode::Mean), (0.0, 0.0));
    }

    #[test]
    fn punctuation_examples() {
        let tl = tokenize(
            "What in Vishnu's name does this have ANYTHING to do with evolution vs creation???",
        );
        assert_eq!(extract_punctuation(&tl), (3, 0));
        assert_eq!(extract_punctuation(&tokenize("!!")), (0, 2));
        assert_eq!(extract_punctuation(&tokenize("")), (0, 0));
    }

    #[test]
    fn cue_lexicon_is_shipped_one() {
        assert_eq!(lex().cue.name, LexiconName::Cue);
    }
}
