//! Text generator, extractor invariants and the documented boundary
//! examples, shared by the core tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use stancecue::corpus::{AnnotatedPair, Label, LabeledPair, Post};
use stancecue::features::{
    build_vocabulary, extract_agreement, extract_cues, extract_denial, extract_duration, extract_hedges,
    extract_polarity, extract_punctuation, featurize, featurize_text, FeatureGroup, FeatureOptions, FeatureSetSpec,
    FeatureSpace, PolarityMode,
};
use stancecue::lexicons::{
    expand_generalizations, load_lexicon, load_mpqa, validate_lexicon, LexiconError, LexiconName, LexiconSet,
    Polarity, Slot, Strength,
};
use stancecue::textproc::{
    ngrams, split_sentences, tokenize, NgramOptions, NgramScope, TokenKind, TokenList,
};

/// Words the shipped lexicons react to, mixed into generated text so the
/// invariants exercise real matches.
const LEXICON_WORDS: &[&str] = &[
    "well", "so", "oh", "uh", "yes", "no", "yeah", "just", "and", "you", "i", "I", "claim", "because", "don't",
    "dont", "Don't", "agree", "agreed", "correct", "right", "Right", "but", "yet", "however", "not", "never",
    "can't", "isn't", "how", "How", "can", "could", "we", "they", "think", "mean", "see", "know", "understand",
    "perhaps", "Perhaps", "essentially", "maybe", "actually", "rather", "suppose", "whatever", "somewhat", "I'm",
    "im", "wondering", "what", "is", "does", "do", "that", "this", "it", "point", "liar", "show", "me", "if",
    "prove", "missed", "my", "have", "problem", "with", "why", "great", "love", "wrong", "stupid", "fine", "bad",
    "nonsense", "thanks", "excellent", "sure", "evidence", "there",
];

const TOPIC_WORDS: &[&str] = &[
    "evolution", "gun", "abortion", "penguin", "theory", "Genesis", "clinic", "sonogram", "species", "court",
    "amendment", "Darwin", "fossil", "law", "state", "vote", "tax", "x", "q", "hummingbird", "lobster",
];

fn word() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => prop::sample::select(LEXICON_WORDS).prop_map(str::to_string),
        2 => prop::sample::select(TOPIC_WORDS).prop_map(str::to_string),
        2 => "[a-z]{1,9}",
        1 => "[A-Z][a-z]{0,7}",
        1 => "[a-z]{1,5}'[a-z]{1,2}",
        1 => "[0-9]{1,4}",
    ]
}

fn trailing() -> impl Strategy<Value = &'static str> {
    prop::sample::select(&["", "", "", "", "", ",", ",", ";", ":", "\"", ")"][..])
}

fn leading() -> impl Strategy<Value = &'static str> {
    prop::sample::select(&["", "", "", "", "", "", "\"", "("][..])
}

fn terminal() -> impl Strategy<Value = &'static str> {
    prop::sample::select(&[".", ".", ".", "?", "!", "???", "!!", "?!", "...."][..])
}

fn sentence() -> impl Strategy<Value = String> {
    (prop::collection::vec((leading(), word(), trailing()), 1..12), terminal()).prop_map(|(ws, end)| {
        let body: Vec<String> = ws.into_iter().map(|(l, w, t)| format!("{l}{w}{t}")).collect();
        format!("{}{end}", body.join(" "))
    })
}

/// Forum-like text: zero or more sentences, each ending in terminal
/// punctuation, words separated by single spaces.
pub fn text() -> impl Strategy<Value = String> {
    prop::collection::vec(sentence(), 0..6).prop_map(|s| s.join(" "))
}

pub fn pair(id: &str, response: &str, label: Label) -> LabeledPair {
    let score = if label == Label::Agreement { 2.0 } else { -2.0 };
    LabeledPair {
        pair: AnnotatedPair {
            pair_id: id.to_string(),
            topic: "t".to_string(),
            prior: Post {
                post_id: format!("{id}-p"),
                text: "prior".to_string(),
                author: None,
            },
            response: Post {
                post_id: format!("{id}-r"),
                text: response.to_string(),
                author: None,
            },
            mean_agreement: score,
        },
        label,
    }
}

fn ends_with_clitic(normalized: &str) -> bool {
    let s: String = normalized.chars().map(|c| if c == '\u{2019}' { '\'' } else { c }).collect();
    s.len() > 3 && s.ends_with("n't")
}

/// Letters-only token of `len` characters that no lexicon knows.
pub fn nonsense(len: usize, lex: &LexiconSet) -> String {
    for salt in 0..26u8 {
        let w: String = (0..len)
            .map(|i| (b'a' + ((i as u8 * 7 + salt + 16) % 26)) as char)
            .collect();
        if !lex.mentions(&w) {
            return w;
        }
    }
    panic!("no free nonsense word of length {len}");
}

/// Replaces every WORD token that no lexicon mentions by a nonsense token
/// of the same character length. Works on the whitespace chunks of `text`.
pub fn replace_topic_words(text: &str, lex: &LexiconSet) -> String {
    let mut out = Vec::new();
    for chunk in text.split(' ') {
        let toks = tokenize(chunk);
        let mut rebuilt = String::new();
        for t in &toks.tokens {
            let keep = t.kind != TokenKind::Word || lex.mentions(t.match_key()) || ends_with_clitic(&t.normalized);
            if keep {
                rebuilt.push_str(&t.surface);
            } else {
                rebuilt.push_str(&nonsense(t.surface.chars().count(), lex));
            }
        }
        out.push(rebuilt);
    }
    out.join(" ")
}

fn tm_space(lex: &LexiconSet) -> FeatureSpace {
    FeatureSpace::for_spec(&FeatureSetSpec::all_tm(), &[], lex, FeatureOptions::default()).unwrap()
}

fn tm_values(text: &str, space: &FeatureSpace, lex: &LexiconSet) -> Vec<f64> {
    featurize_text(text, None, space, lex).unwrap().values.to_dense()
}

/// Tokenizer, sentence splitter and ngram invariants on one text.
pub fn check_textproc(text: &str) -> Result<(), String> {
    let tl = tokenize(text);
    let joined: String = tl.tokens.iter().map(|t| t.surface.as_str()).collect();
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if joined != compact {
        return Err(format!("surfaces {joined:?} do not rebuild {compact:?}"));
    }
    if tl.char_count != text.chars().count() {
        return Err(format!("char_count {} for {text:?}", tl.char_count));
    }
    for t in &tl.tokens {
        match t.kind {
            TokenKind::Word if t.normalized != t.surface.to_lowercase() => {
                return Err(format!("word {:?} normalized to {:?}", t.surface, t.normalized))
            }
            TokenKind::Punct if t.surface.chars().count() != 1 => {
                return Err(format!("multi-character punct token {:?}", t.surface))
            }
            _ => {}
        }
    }
    let spans = split_sentences(&tl);
    let mut next = 0;
    for s in &spans {
        if s.start_token != next || s.end_token <= s.start_token {
            return Err(format!("spans {spans:?} do not partition {} tokens", tl.len()));
        }
        next = s.end_token;
    }
    if next != tl.len() {
        return Err(format!("spans {spans:?} do not cover {} tokens", tl.len()));
    }
    let normalized: Vec<&str> = tl.tokens.iter().map(|t| t.normalized.as_str()).collect();
    let again = tokenize(&normalized.join(" "));
    let again: Vec<&str> = again.tokens.iter().map(|t| t.normalized.as_str()).collect();
    if again != normalized {
        return Err(format!("retokenizing {normalized:?} gave {again:?}"));
    }
    for scope in [NgramScope::WithPunct, NgramScope::WordsOnly] {
        let opts = NgramOptions {
            scope,
            sentence_scoped: true,
        };
        for n in 1..=3 {
            let total: usize = ngrams(&tl, n, opts).unwrap().values().sum();
            let expected: usize = spans
                .iter()
                .map(|s| {
                    let eligible = tl.tokens[s.start_token..s.end_token]
                        .iter()
                        .filter(|t| scope == NgramScope::WithPunct || t.is_wordlike())
                        .count();
                    (eligible + 1).saturating_sub(n)
                })
                .sum();
            if total != expected {
                return Err(format!("{total} ngram positions for n={n} {scope:?}, expected {expected}"));
            }
        }
    }
    Ok(())
}

/// Feature invariants on a pair of texts: purity, finiteness and
/// non-negativity, topic-word replacement invariance, and monotonicity
/// under concatenation (unigram+bigram counts included).
pub fn check_features(a: &str, b: &str, lex: &LexiconSet) -> Result<(), String> {
    let space = tm_space(lex);
    let va = tm_values(a, &space, lex);
    if va != tm_values(a, &space, lex) {
        return Err(format!("featurize is not deterministic on {a:?}"));
    }
    if let Some(x) = va.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(format!("value {x} on {a:?}"));
    }

    let replaced = replace_topic_words(a, lex);
    let vr = tm_values(&replaced, &space, lex);
    if va != vr {
        let diff: Vec<String> = space
            .names()
            .iter()
            .zip(va.iter().zip(&vr))
            .filter(|(_, (x, y))| x != y)
            .map(|(n, (x, y))| format!("{n}: {x} -> {y}"))
            .collect();
        return Err(format!("replacement changed {diff:?}: {a:?} -> {replaced:?}"));
    }

    let joined = format!("{a} {b}");
    let pairs = [
        pair("a", a, Label::Agreement),
        pair("b", b, Label::Disagreement),
        pair("ab", &joined, Label::Agreement),
    ];
    let opts = FeatureOptions::default();
    let mut spec = FeatureSetSpec::ngram(2);
    spec.groups.extend(FeatureGroup::TM);
    let vocab_ok = !a.trim().is_empty() || !b.trim().is_empty();
    let space = if vocab_ok {
        FeatureSpace::for_spec(&spec, &pairs, lex, opts).map_err(|e| e.to_string())?
    } else {
        space
    };
    let dense = |p: &LabeledPair| featurize(p, &space, lex).unwrap().values.to_dense();
    let (fa, fb, fab) = (dense(&pairs[0]), dense(&pairs[1]), dense(&pairs[2]));
    for (i, name) in space.names().iter().enumerate() {
        if fab[i] < fa[i] || fab[i] < fb[i] {
            return Err(format!(
                "{name}: concatenation {} below parts {} / {} for {a:?} + {b:?}",
                fab[i], fa[i], fb[i]
            ));
        }
    }
    Ok(())
}

fn expect(failures: &mut Vec<String>, ok: bool, what: &str) {
    if !ok {
        failures.push(what.to_string());
    }
}

fn norm(tl: &TokenList) -> Vec<&str> {
    tl.tokens.iter().map(|t| t.normalized.as_str()).collect()
}

fn concretes(text: &str, name: LexiconName) -> BTreeSet<String> {
    let lex = load_lexicon(text.as_bytes(), name).unwrap();
    expand_generalizations(&lex).unwrap().concretes.iter().map(|c| c.text()).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Every documented boundary example of the text, lexicon and feature
/// operations. Returns a description of each one that does not hold.
pub fn boundary_failures(lex: &LexiconSet) -> Vec<String> {
    let mut f = Vec::new();

    // Tokenizer.
    let tl = tokenize("Can you?");
    let kinds: Vec<(&str, TokenKind)> = tl.tokens.iter().map(|t| (t.surface.as_str(), t.kind)).collect();
    expect(
        &mut f,
        kinds == [("Can", TokenKind::Word), ("you", TokenKind::Word), ("?", TokenKind::Punct)],
        "tokenize(\"Can you?\")",
    );
    let tl = tokenize("I don't think");
    expect(
        &mut f,
        norm(&tl) == ["i", "don't", "think"] && tl.tokens[1].match_key() == "dont",
        "tokenize(\"I don't think\") keeps don't whole, dont matchable",
    );
    let tl = tokenize("");
    expect(&mut f, tl.is_empty() && tl.char_count == 0, "tokenize(\"\")");

    // Sentences.
    let count = |s: &str| split_sentences(&tokenize(s)).len();
    expect(&mut f, count("Quite right. My mistake.") == 2, "two sentences");
    expect(&mut f, count("Really???") == 1, "punctuation run is one sentence");
    expect(&mut f, count("no terminal punct") == 1, "unterminated sentence");

    // Ngrams.
    let opts = NgramOptions::default();
    let g = ngrams(&tokenize("i see"), 2, opts).unwrap();
    expect(&mut f, g.len() == 1 && g.get("i see") == Some(&1), "bigram of \"i see\"");
    expect(
        &mut f,
        ngrams(&tokenize("a b. c d."), 4, opts).unwrap().is_empty(),
        "order above every sentence length",
    );
    let g = ngrams(&tokenize("a b a b"), 2, opts).unwrap();
    expect(
        &mut f,
        g.len() == 2 && g.get("a b") == Some(&2) && g.get("b a") == Some(&1),
        "bigrams of a b a b",
    );
    expect(&mut f, ngrams(&tokenize("a"), 0, opts).is_err(), "ngram order 0 is an error");

    // Lexicon loading and expansion.
    let l = load_lexicon("class pron = you we they i\nhow can <pron>\n".as_bytes(), LexiconName::Denial).unwrap();
    expect(
        &mut f,
        l.patterns.len() == 1 && l.patterns[0].slots.iter().filter(|s| matches!(s, Slot::Class(_))).count() == 1,
        "how can <pron> is one pattern with one class slot",
    );
    expect(
        &mut f,
        matches!(
            load_lexicon("x <foo>\n".as_bytes(), LexiconName::Denial),
            Err(LexiconError::UnknownClass { .. })
        ),
        "undeclared class",
    );
    expect(
        &mut f,
        load_lexicon("".as_bytes(), LexiconName::Hedge).map(|l| l.patterns.is_empty()) == Ok(true),
        "empty lexicon",
    );
    expect(
        &mut f,
        concretes("class pron = you we they\nhow can <pron>\n", LexiconName::Denial)
            == set(&["how can you", "how can we", "how can they"]),
        "how can <pron> expansion",
    );
    expect(
        &mut f,
        concretes("plain words\n", LexiconName::Denial) == set(&["plain words"]),
        "pattern without classes expands to itself",
    );
    expect(
        &mut f,
        concretes("class pron = i you we they\n<pron> can't <pron>\n", LexiconName::Denial).len() == 16,
        "<pron> can't <pron> gives 16",
    );

    // MPQA.
    let (m, _) =
        load_mpqa("type=strongsubj len=1 word1=abuse pos1=anypos stemmed1=y priorpolarity=negative\n".as_bytes())
            .unwrap();
    expect(
        &mut f,
        m.entries
            .get("abuse")
            .is_some_and(|e| e.strength == Strength::Strong && e.polarity == Polarity::Negative),
        "abuse is strong negative",
    );
    let (m, d) = load_mpqa(
        "type=strongsubj len=1 word1=odd pos1=adj stemmed1=n priorpolarity=positive\n\
         type=strongsubj len=1 word1=odd pos1=adj stemmed1=n priorpolarity=negative\n"
            .as_bytes(),
    )
    .unwrap();
    expect(
        &mut f,
        m.entries["odd"].polarity == Polarity::Both && d.conflicts.len() == 1,
        "conflicting duplicate resolves to both and is logged",
    );
    expect(
        &mut f,
        load_mpqa("".as_bytes()).map(|(m, _)| m.entries.is_empty()) == Ok(true),
        "empty mpqa stream",
    );

    // Validation.
    let report = validate_lexicon(&lex.denial);
    expect(
        &mut f,
        report.to_string().contains("expansions >= 300: PASS"),
        "shipped denial passes the expansion gate",
    );
    let dup = load_lexicon("class pron = you we\nhow can <pron>\nhow can you\n".as_bytes(), LexiconName::Denial)
        .unwrap();
    let report = validate_lexicon(&dup);
    expect(
        &mut f,
        report
            .warnings
            .iter()
            .any(|w| w.contains("how can <pron>") && w.contains("\"how can you\"")),
        "duplicate expansion names both seeds",
    );
    let words: Vec<String> = (0..17).map(|i| format!("w{i}")).collect();
    let short = load_lexicon(words.join("\n").as_bytes(), LexiconName::Cue).unwrap();
    expect(
        &mut f,
        validate_lexicon(&short).to_string().contains("cue count = 18: FAIL"),
        "17 cue entries fail",
    );

    // Extractors.
    let t = |s: &str| tokenize(s);
    expect(&mut f, extract_agreement(&t("Quite right. My mistake."), lex) == 1, "Quite right");
    expect(
        &mut f,
        extract_agreement(&t("You may be correct however I do not agree"), lex) == 0,
        "guarded agreement",
    );
    expect(&mut f, extract_agreement(&t(""), lex) == 0, "agreement on empty");
    expect(&mut f, extract_denial(&t("I don't see why this matters."), lex) >= 1, "I don't see");
    let how_can = lex.denial.patterns.iter().position(|p| p.text() == "how can <pron>");
    let spans = |s: &str| (t(s), split_sentences(&t(s)));
    let (tl, sp) = spans("How can you say that? How can we know?");
    let generalized = lex
        .denial_matcher()
        .find_all(&tl, &sp)
        .iter()
        .filter(|m| Some(m.seed) == how_can)
        .count();
    expect(&mut f, generalized == 2, "two matches of how can <pron>");
    expect(&mut f, extract_denial(&t("zorp blick."), lex) == 0, "denial without lexicon tokens");
    let labels = lex.cue_labels();
    let cue = |s: &str, label: &str| extract_cues(&t(s), lex)[labels.iter().position(|l| l == label).unwrap()];
    expect(&mut f, cue("Well, many have argued ...", "well") >= 1, "well");
    expect(&mut f, cue("so what? so so", "so") == 3, "so so so");
    expect(&mut f, extract_cues(&t(""), lex) == vec![0; 18], "18 zero cues");
    expect(
        &mut f,
        extract_hedges(&t("Perhaps not in this particular thread ... essentially the same."), lex) == 2,
        "perhaps and essentially",
    );
    expect(&mut f, extract_hedges(&t("I'm wondering."), lex) == 1, "I'm wondering");
    expect(&mut f, extract_hedges(&t(""), lex) == 0, "hedges on empty");
    let d = extract_duration(&t("Quite right. My mistake."));
    expect(&mut f, d.words == 4 && d.sentences == 2, "duration of Quite right. My mistake.");
    let d = extract_duration(&t(""));
    expect(&mut f, (d.chars, d.words, d.sentences) == (0, 0, 0), "duration of empty");
    let d = extract_duration(&t("one two three"));
    expect(&mut f, d.words == 3 && d.sentences == 1, "duration of one two three");
    let (toy, _) = load_mpqa(
        "type=strongsubj len=1 word1=great pos1=adj stemmed1=n priorpolarity=positive\n\
         type=strongsubj len=1 word1=superb pos1=adj stemmed1=n priorpolarity=positive\n\
         type=strongsubj len=1 word1=awful pos1=adj stemmed1=n priorpolarity=negative\n\
         type=weaksubj len=1 word1=fine pos1=adj stemmed1=n priorpolarity=positive\n"
            .as_bytes(),
    )
    .unwrap();
    let ten = t("great superb awful one two three four five six seven");
    expect(&mut f, extract_polarity(&ten, &toy, PolarityMode::Sum) == (2.0, 1.0), "polarity sum");
    let (p, n) = extract_polarity(&ten, &toy, PolarityMode::Mean);
    expect(&mut f, (p - 0.2).abs() < 1e-12 && (n - 0.1).abs() < 1e-12, "polarity mean");
    expect(
        &mut f,
        extract_polarity(&t("fine fine"), &toy, PolarityMode::Sum) == (0.0, 0.0),
        "weak words do not count",
    );
    expect(
        &mut f,
        extract_punctuation(&t(
            "What in Vishnu's name does this have ANYTHING to do with evolution vs creation???",
        )) == (3, 0),
        "three question marks",
    );
    expect(&mut f, extract_punctuation(&t("!!")) == (0, 2), "two exclamations");
    expect(&mut f, extract_punctuation(&t("")) == (0, 0), "punctuation on empty");

    // Vocabulary.
    let corpus = [pair("1", "a b", Label::Agreement), pair("2", "b c", Label::Disagreement)];
    let v = build_vocabulary(&corpus, 1, 1, opts).unwrap();
    expect(&mut f, v.entries == ["b", "a", "c"], "vocabulary union in frequency order");
    expect(
        &mut f,
        build_vocabulary(&corpus, 1, 3, opts).map(|v| v.is_empty()) == Ok(true),
        "min_count above every frequency",
    );
    let v2 = build_vocabulary(&corpus, 2, 1, opts).unwrap();
    expect(
        &mut f,
        v2.entries == ["b", "a", "a b", "b c", "c"],
        "frequency ties broken lexicographically",
    );
    expect(&mut f, build_vocabulary(&corpus, 3, 1, opts).is_err(), "order 3 vocabulary");

    // Featurize.
    let space = tm_space(lex);
    expect(
        &mut f,
        featurize(&pair("1", "Quite right.", Label::Agreement), &space, lex).map(|v| v.len()) == Ok(28),
        "ALL-TM vector has 28 values",
    );
    let punct = FeatureSpace::for_spec(
        &FeatureSetSpec::single(FeatureGroup::Punctuation),
        &[],
        lex,
        FeatureOptions::default(),
    )
    .unwrap();
    expect(
        &mut f,
        featurize(&pair("1", "Why?!", Label::Agreement), &punct, lex).map(|v| v.values.to_dense())
            == Ok(vec![1.0, 1.0]),
        "punctuation-only vector",
    );
    let uni = FeatureSpace::for_spec(&FeatureSetSpec::ngram(1), &corpus, lex, FeatureOptions::default()).unwrap();
    expect(
        &mut f,
        featurize(&pair("3", "zzz yyy", Label::Agreement), &uni, lex)
            .map(|v| v.values.to_dense().iter().all(|x| *x == 0.0))
            == Ok(true),
        "unigram vector of unseen words is zero",
    );

    f
}
