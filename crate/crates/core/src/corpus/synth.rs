//! Synthetic corpora with known structure.
//!
//! Each response is a shuffled sequence of sentences: filler sentences of
//! topic-specific pseudo-words, one sentence per planted cue (content
//! prefix, cue phrase, content suffix), and optionally the decoy token.
//! Cue phrases are drawn from the shipped lexicons. The decoy is a content
//! token whose correlation with AGREEMENT flips sign between train and test
//! topics, so a learner that keys on topic vocabulary is punished on the
//! held-out topics.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{AnnotatedPair, CorpusError, Label, Post};
use crate::features::extract::{agreement_count, cue_counts, extract_polarity, PolarityMode};
use crate::lexicons::{expand_generalizations, LexiconSet, Polarity, Strength};
use crate::textproc::{split_sentences, tokenize};

const DEFAULT_SPEC: &str = include_str!("../../data/synthetic/default.toml");

/// Judgment assigned to generated pairs.
pub const SYNTHETIC_AGREEMENT: f64 = 3.0;

const CONSONANTS: &[&str] = &["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"];
const VOWELS: &[&str] = &["a", "e", "i", "o", "u"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CueFamily {
    Agreement,
    GuardedAgreement,
    Denial,
    Cue,
    Hedge,
    Positive,
    Negative,
    Question,
    Exclamation,
}

impl CueFamily {
    pub const ALL: [CueFamily; 9] = [
        CueFamily::Agreement,
        CueFamily::GuardedAgreement,
        CueFamily::Denial,
        CueFamily::Cue,
        CueFamily::Hedge,
        CueFamily::Positive,
        CueFamily::Negative,
        CueFamily::Question,
        CueFamily::Exclamation,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopicRole {
    Train,
    Test,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopicSpec {
    pub name: String,
    pub role: TopicRole,
    pub agree: usize,
    pub disagree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecoySpec {
    pub token: String,
    /// Phi correlation of decoy presence with AGREEMENT on train topics.
    pub train_correlation: f64,
    pub test_correlation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContentSpec {
    /// Pseudo-words per topic.
    pub vocab_size: usize,
    pub min_words: usize,
    pub max_words: usize,
    pub min_filler: usize,
    pub max_filler: usize,
    pub prior_sentences: usize,
}

/// Per-response probability of planting one sentence of each family.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Probabilities {
    pub agreement: f64,
    pub guarded_agreement: f64,
    pub denial: f64,
    pub cue: f64,
    pub hedge: f64,
    pub positive: f64,
    pub negative: f64,
    pub question: f64,
    pub exclamation: f64,
}

impl Probabilities {
    pub fn get(&self, f: CueFamily) -> f64 {
        match f {
            CueFamily::Agreement => self.agreement,
            CueFamily::GuardedAgreement => self.guarded_agreement,
            CueFamily::Denial => self.denial,
            CueFamily::Cue => self.cue,
            CueFamily::Hedge => self.hedge,
            CueFamily::Positive => self.positive,
            CueFamily::Negative => self.negative,
            CueFamily::Question => self.question,
            CueFamily::Exclamation => self.exclamation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelSpec {
    /// Every response carries at least one of these families.
    pub signature: Vec<CueFamily>,
    pub probabilities: Probabilities,
    /// Cue-lexicon entries the CUE family draws from.
    #[serde(default)]
    pub cue_words: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    pub version: String,
    pub content: ContentSpec,
    pub decoy: DecoySpec,
    pub topics: Vec<TopicSpec>,
    pub agreement: LabelSpec,
    pub disagreement: LabelSpec,
}

impl SyntheticSpec {
    pub fn from_toml(text: &str) -> Result<SyntheticSpec, CorpusError> {
        toml::from_str(text).map_err(|e| CorpusError::Argument(format!("synthetic spec: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    /// The versioned spec shipped with the crate.
    pub fn shipped() -> SyntheticSpec {
        SyntheticSpec::from_toml(DEFAULT_SPEC).expect("shipped synthetic spec parses")
    }

    pub fn label(&self, label: Label) -> &LabelSpec {
        match label {
            Label::Agreement => &self.agreement,
            Label::Disagreement => &self.disagreement,
        }
    }

    pub fn topics_with_role(&self, role: TopicRole) -> BTreeSet<String> {
        self.topics
            .iter()
            .filter(|t| t.role == role)
            .map(|t| t.name.clone())
            .collect()
    }

    /// Probability that a response with `label` on a topic with `role`
    /// contains the decoy: `(1 + rho) / 2` for AGREEMENT and `(1 - rho) / 2`
    /// for DISAGREEMENT, which gives phi = rho on balanced topics.
    pub fn decoy_probability(&self, role: TopicRole, label: Label) -> f64 {
        let rho = match role {
            TopicRole::Train => self.decoy.train_correlation,
            TopicRole::Test => self.decoy.test_correlation,
        };
        match label {
            Label::Agreement => (1.0 + rho) / 2.0,
            Label::Disagreement => (1.0 - rho) / 2.0,
        }
    }
}

/// Which families a text exhibits, as a featurizer would see them.
pub fn families_present(text: &str, lex: &LexiconSet) -> BTreeSet<CueFamily> {
    let tokens = tokenize(text);
    let spans = split_sentences(&tokens);
    let mut out = BTreeSet::new();
    let keywords = lex.agreement_matcher().find_all(&tokens, &spans).len();
    let agreed = agreement_count(&tokens, &spans, lex);
    if agreed > 0 {
        out.insert(CueFamily::Agreement);
    }
    if keywords > agreed {
        out.insert(CueFamily::GuardedAgreement);
    }
    if lex.denial_matcher().count(&tokens, &spans) > 0 {
        out.insert(CueFamily::Denial);
    }
    if cue_counts(&tokens, &spans, lex).iter().any(|&c| c > 0) {
        out.insert(CueFamily::Cue);
    }
    if lex.hedge_matcher().count(&tokens, &spans) > 0 {
        out.insert(CueFamily::Hedge);
    }
    let (pos, neg) = extract_polarity(&tokens, &lex.mpqa, PolarityMode::Sum);
    if pos > 0.0 {
        out.insert(CueFamily::Positive);
    }
    if neg > 0.0 {
        out.insert(CueFamily::Negative);
    }
    if text.contains('?') {
        out.insert(CueFamily::Question);
    }
    if text.contains('!') {
        out.insert(CueFamily::Exclamation);
    }
    out
}

fn arg(msg: String) -> CorpusError {
    CorpusError::Argument(msg)
}

fn validate(spec: &SyntheticSpec) -> Result<(), CorpusError> {
    let c = &spec.content;
    if c.vocab_size == 0 {
        return Err(arg("empty vocabulary: content.vocab_size is 0".into()));
    }
    if c.min_words == 0 || c.min_words > c.max_words {
        return Err(arg("content.min_words must be in 1..=max_words".into()));
    }
    if c.min_filler > c.max_filler {
        return Err(arg("content.min_filler exceeds max_filler".into()));
    }
    if c.prior_sentences == 0 {
        return Err(arg("content.prior_sentences must be positive".into()));
    }
    let d = &spec.decoy;
    if d.token.is_empty() || !d.token.chars().all(|ch| ch.is_ascii_lowercase()) {
        return Err(arg(format!("decoy token {:?} must be lowercase ASCII letters", d.token)));
    }
    for (name, rho) in [("train_correlation", d.train_correlation), ("test_correlation", d.test_correlation)] {
        if !(-1.0..=1.0).contains(&rho) {
            return Err(arg(format!("decoy.{name} = {rho} is outside [-1, 1]")));
        }
    }
    let mut names = BTreeSet::new();
    for t in &spec.topics {
        if t.name.trim().is_empty() || !names.insert(t.name.as_str()) {
            return Err(arg(format!("topic name {:?} is empty or repeated", t.name)));
        }
    }
    for label in Label::ALL {
        let own = spec.label(label);
        let other = spec.label(other_label(label));
        for f in CueFamily::ALL {
            let p = own.probabilities.get(f);
            if !(0.0..=1.0).contains(&p) {
                return Err(arg(format!("{label} probability for {f:?} is {p}, outside [0, 1]")));
            }
        }
        if own.signature.is_empty() {
            return Err(arg(format!("zero-probability label {label}: empty signature")));
        }
        for f in &own.signature {
            if own.probabilities.get(*f) <= 0.0 {
                return Err(arg(format!(
                    "zero-probability label {label}: signature family {f:?} has probability 0"
                )));
            }
            if other.probabilities.get(*f) > 0.0 {
                return Err(arg(format!(
                    "signature family {f:?} of {label} is also planted for {}",
                    other_label(label)
                )));
            }
        }
        if own.probabilities.cue > 0.0 && own.cue_words.is_empty() {
            return Err(arg(format!("empty vocabulary: {label} cue_words is empty")));
        }
    }
    Ok(())
}

fn other_label(l: Label) -> Label {
    match l {
        Label::Agreement => Label::Disagreement,
        Label::Disagreement => Label::Agreement,
    }
}

/// Phrases each family can plant for one label, with every phrase that
/// would also exhibit a signature family of the other label removed.
struct PhrasePools {
    pools: Vec<(CueFamily, Vec<String>)>,
}

impl PhrasePools {
    fn build(spec: &LabelSpec, forbidden: &BTreeSet<CueFamily>, lex: &LexiconSet) -> Result<PhrasePools, CorpusError> {
        let concretes = |l| -> Result<Vec<String>, CorpusError> {
            Ok(expand_generalizations(l)
                .map_err(|e| arg(e.to_string()))?
                .concretes
                .iter()
                .map(|c| c.text())
                .collect())
        };
        let mut pools = Vec::new();
        for f in CueFamily::ALL {
            if spec.probabilities.get(f) <= 0.0 {
                continue;
            }
            let raw: Vec<String> = match f {
                CueFamily::Agreement => concretes(&lex.agreement)?,
                CueFamily::GuardedAgreement => {
                    let negs: Vec<&String> = lex
                        .agreement
                        .classes
                        .get("neg")
                        .map(|m| m.iter().filter(|w| w.as_str() != "n't").collect())
                        .unwrap_or_default();
                    let kws = concretes(&lex.agreement)?;
                    negs.iter()
                        .flat_map(|n| kws.iter().map(move |k| format!("{n} {k}")))
                        .collect()
                }
                CueFamily::Denial => concretes(&lex.denial)?,
                CueFamily::Hedge => concretes(&lex.hedge)?,
                CueFamily::Cue => {
                    let labels = lex.cue_labels();
                    for w in &spec.cue_words {
                        if !labels.contains(w) {
                            return Err(arg(format!("cue word {w:?} is not an entry of the cue lexicon")));
                        }
                    }
                    spec.cue_words.clone()
                }
                CueFamily::Positive | CueFamily::Negative => {
                    let want = if f == CueFamily::Positive {
                        Polarity::Positive
                    } else {
                        Polarity::Negative
                    };
                    lex.mpqa
                        .entries
                        .iter()
                        .filter(|(_, e)| e.strength == Strength::Strong && e.polarity == want)
                        .map(|(w, _)| w.clone())
                        .collect()
                }
                CueFamily::Question | CueFamily::Exclamation => vec![String::new()],
            };
            let kept: Vec<String> = raw
                .into_iter()
                .filter(|p| {
                    let present = families_present(p, lex);
                    present.is_disjoint(forbidden)
                        && (p.is_empty() || f == CueFamily::Cue || present.contains(&f))
                })
                .collect();
            if kept.is_empty() {
                return Err(arg(format!("empty vocabulary for cue family {f:?}")));
            }
            pools.push((f, kept));
        }
        Ok(PhrasePools { pools })
    }

    fn get(&self, f: CueFamily) -> &[String] {
        self.pools
            .iter()
            .find(|(g, _)| *g == f)
            .map(|(_, v)| v.as_slice())
            .unwrap_or(&[])
    }
}

/// Pseudo-words of two or three syllables that no lexicon mentions.
fn content_pool(lex: &LexiconSet, decoy: &str, needed: usize, rng: &mut ChaCha8Rng) -> Result<Vec<String>, CorpusError> {
    let syllables: Vec<String> = CONSONANTS
        .iter()
        .flat_map(|c| VOWELS.iter().map(move |v| format!("{c}{v}")))
        .collect();
    let mut words = BTreeSet::new();
    for a in &syllables {
        for b in &syllables {
            words.insert(format!("{a}{b}"));
            for c in ["", "n", "r", "s"] {
                words.insert(format!("{a}{b}{c}"));
            }
        }
    }
    let mut pool: Vec<String> = words
        .into_iter()
        .filter(|w| w != decoy && !lex.mentions(w))
        .collect();
    if pool.len() < needed {
        return Err(arg(format!(
            "requested {needed} content words but only {} pseudo-words are available",
            pool.len()
        )));
    }
    pool.shuffle(rng);
    pool.truncate(needed);
    Ok(pool)
}

fn content_words(vocab: &[String], rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Vec<String> {
    let n = rng.gen_range(lo..=hi);
    (0..n).map(|_| vocab[rng.gen_range(0..vocab.len())].clone()).collect()
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn sentence(words: Vec<String>, end: char) -> String {
    format!("{}{end}", capitalize(&words.join(" ")))
}

struct Generator<'a> {
    spec: &'a SyntheticSpec,
    pools: [PhrasePools; 2],
}

impl Generator<'_> {
    fn planted(&self, family: CueFamily, label: Label, vocab: &[String], rng: &mut ChaCha8Rng) -> String {
        let pool = self.pools[label.index()].get(family);
        let phrase = &pool[rng.gen_range(0..pool.len())];
        let mut words = content_words(vocab, rng, 0, 2);
        if !phrase.is_empty() {
            words.push(phrase.clone());
        }
        words.extend(content_words(vocab, rng, 1, 2));
        let end = match family {
            CueFamily::Question => '?',
            CueFamily::Exclamation => '!',
            _ => '.',
        };
        sentence(words, end)
    }

    fn response(&self, label: Label, role: TopicRole, vocab: &[String], rng: &mut ChaCha8Rng) -> String {
        let ls = self.spec.label(label);
        let c = &self.spec.content;
        let mut planted: Vec<CueFamily> = CueFamily::ALL
            .into_iter()
            .filter(|f| {
                let p = ls.probabilities.get(*f);
                p > 0.0 && rng.gen_bool(p)
            })
            .collect();
        if !planted.iter().any(|f| ls.signature.contains(f)) {
            planted.push(ls.signature[rng.gen_range(0..ls.signature.len())]);
        }
        let mut sentences: Vec<String> = planted
            .into_iter()
            .map(|f| self.planted(f, label, vocab, rng))
            .collect();
        for _ in 0..rng.gen_range(c.min_filler..=c.max_filler) {
            sentences.push(sentence(content_words(vocab, rng, c.min_words, c.max_words), '.'));
        }
        if rng.gen_bool(self.spec.decoy_probability(role, label)) {
            let mut words = content_words(vocab, rng, 1, 3);
            let at = rng.gen_range(0..=words.len());
            words.insert(at, self.spec.decoy.token.clone());
            sentences.push(sentence(words, '.'));
        }
        sentences.shuffle(rng);
        sentences.join(" ")
    }

    fn prior(&self, vocab: &[String], rng: &mut ChaCha8Rng) -> String {
        let c = &self.spec.content;
        (0..c.prior_sentences)
            .map(|_| sentence(content_words(vocab, rng, c.min_words, c.max_words), '.'))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Generates a corpus from the shipped lexicons. A pure function of
/// `(seed, spec)`.
pub fn generate_synthetic(seed: u64, spec: &SyntheticSpec) -> Result<Vec<AnnotatedPair>, CorpusError> {
    generate_synthetic_with(seed, spec, &LexiconSet::shipped())
}

pub fn generate_synthetic_with(
    seed: u64,
    spec: &SyntheticSpec,
    lex: &LexiconSet,
) -> Result<Vec<AnnotatedPair>, CorpusError> {
    validate(spec)?;
    let forbidden = |l: Label| -> BTreeSet<CueFamily> { spec.label(other_label(l)).signature.iter().copied().collect() };
    let gen = Generator {
        spec,
        pools: [
            PhrasePools::build(&spec.agreement, &forbidden(Label::Agreement), lex)?,
            PhrasePools::build(&spec.disagreement, &forbidden(Label::Disagreement), lex)?,
        ],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = content_pool(lex, &spec.decoy.token, spec.content.vocab_size * spec.topics.len(), &mut rng)?;

    let mut out = Vec::new();
    for (ti, topic) in spec.topics.iter().enumerate() {
        let vocab = &pool[ti * spec.content.vocab_size..(ti + 1) * spec.content.vocab_size];
        let mut labels: Vec<Label> = std::iter::repeat_n(Label::Agreement, topic.agree)
            .chain(std::iter::repeat_n(Label::Disagreement, topic.disagree))
            .collect();
        labels.shuffle(&mut rng);
        for (i, label) in labels.into_iter().enumerate() {
            let pair_id = format!("{}-{:05}", topic.name, i);
            let prior = gen.prior(vocab, &mut rng);
            let response = gen.response(label, topic.role, vocab, &mut rng);
            out.push(AnnotatedPair {
                topic: topic.name.clone(),
                prior: Post {
                    post_id: format!("{pair_id}-p"),
                    text: prior,
                    author: None,
                },
                response: Post {
                    post_id: format!("{pair_id}-r"),
                    text: response,
                    author: None,
                },
                mean_agreement: match label {
                    Label::Agreement => SYNTHETIC_AGREEMENT,
                    Label::Disagreement => -SYNTHETIC_AGREEMENT,
                },
                pair_id,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{filter_by_threshold, write_pairs};

    fn small(agree: usize, disagree: usize) -> SyntheticSpec {
        let mut spec = SyntheticSpec::shipped();
        for t in &mut spec.topics {
            t.agree = agree;
            t.disagree = disagree;
        }
        spec
    }

    fn bytes(pairs: &[AnnotatedPair]) -> Vec<u8> {
        let mut buf = Vec::new();
        write_pairs(pairs, &mut buf).unwrap();
        buf
    }

    #[test]
    fn same_seed_same_bytes() {
        let spec = small(30, 30);
        let a = generate_synthetic(7, &spec).unwrap();
        let b = generate_synthetic(7, &spec).unwrap();
        assert_eq!(bytes(&a), bytes(&b));
        let c = generate_synthetic(8, &spec).unwrap();
        assert_ne!(bytes(&a), bytes(&c));
    }

    #[test]
    fn shipped_spec_round_trips_through_toml() {
        let spec = SyntheticSpec::shipped();
        assert_eq!(SyntheticSpec::from_toml(&spec.to_toml()).unwrap(), spec);
    }

    #[test]
    fn certain_denial_always_matches() {
        let mut spec = small(0, 100);
        spec.disagreement.probabilities.denial = 1.0;
        let lex = LexiconSet::shipped();
        for p in generate_synthetic(3, &spec).unwrap() {
            let tl = tokenize(&p.response.text);
            assert!(lex.denial_matcher().count(&tl, &split_sentences(&tl)) >= 1, "{}", p.response.text);
        }
    }

    #[test]
    fn labels_are_recoverable_from_cues() {
        let spec = small(100, 100);
        let lex = LexiconSet::shipped();
        let pairs = generate_synthetic(11, &spec).unwrap();
        for lp in filter_by_threshold(&pairs, -1.0, 1.0).unwrap() {
            let present = families_present(&lp.pair.response.text, &lex);
            let own: BTreeSet<CueFamily> = spec.label(lp.label).signature.iter().copied().collect();
            let other: BTreeSet<CueFamily> = spec.label(other_label(lp.label)).signature.iter().copied().collect();
            assert!(!present.is_disjoint(&own), "{}", lp.pair.response.text);
            assert!(present.is_disjoint(&other), "{}", lp.pair.response.text);
        }
    }

    #[test]
    fn content_words_are_disjoint_and_lexicon_free() {
        let spec = small(50, 50);
        let lex = LexiconSet::shipped();
        let pairs = generate_synthetic(5, &spec).unwrap();
        let mut seen: Vec<BTreeSet<String>> = Vec::new();
        for t in &spec.topics {
            let words: BTreeSet<String> = pairs
                .iter()
                .filter(|p| p.topic == t.name)
                .flat_map(|p| tokenize(&p.prior.text).tokens)
                .filter(|t| t.kind == crate::textproc::TokenKind::Word)
                .map(|t| t.normalized)
                .collect();
            assert!(words.iter().all(|w| !lex.mentions(w) && *w != spec.decoy.token));
            for other in &seen {
                assert!(other.is_disjoint(&words));
            }
            seen.push(words);
        }
    }

    #[test]
    fn decoy_correlation_matches_spec() {
        let mut spec = SyntheticSpec::shipped();
        spec.topics = vec![
            TopicSpec {
                name: "tr".into(),
                role: TopicRole::Train,
                agree: 1000,
                disagree: 1000,
            },
            TopicSpec {
                name: "te".into(),
                role: TopicRole::Test,
                agree: 1000,
                disagree: 1000,
            },
        ];
        let pairs = generate_synthetic(2024, &spec).unwrap();
        for (topic, want) in [("tr", 0.9), ("te", -0.9)] {
            let xs: Vec<(bool, bool)> = pairs
                .iter()
                .filter(|p| p.topic == topic)
                .map(|p| {
                    let has = tokenize(&p.response.text)
                        .tokens
                        .iter()
                        .any(|t| t.normalized == spec.decoy.token);
                    (has, p.mean_agreement > 0.0)
                })
                .collect();
            let phi = phi(&xs);
            assert!((phi - want).abs() <= 0.05, "{topic}: phi {phi}");
        }
    }

    fn phi(xs: &[(bool, bool)]) -> f64 {
        let n = |a: bool, b: bool| xs.iter().filter(|&&x| x == (a, b)).count() as f64;
        let (n11, n10, n01, n00) = (n(true, true), n(true, false), n(false, true), n(false, false));
        (n11 * n00 - n10 * n01) / ((n11 + n10) * (n01 + n00) * (n11 + n01) * (n10 + n00)).sqrt()
    }

    #[test]
    fn argument_errors() {
        let mut spec = small(1, 1);
        spec.agreement.signature.clear();
        assert!(matches!(generate_synthetic(1, &spec), Err(CorpusError::Argument(m)) if m.contains("zero-probability")));

        let mut spec = small(1, 1);
        spec.agreement.probabilities.agreement = 0.0;
        spec.agreement.probabilities.positive = 0.0;
        assert!(generate_synthetic(1, &spec).is_err());

        let mut spec = small(1, 1);
        spec.content.vocab_size = 0;
        assert!(matches!(generate_synthetic(1, &spec), Err(CorpusError::Argument(m)) if m.contains("empty vocabulary")));

        let mut spec = small(1, 1);
        spec.disagreement.probabilities.hedge = 1.5;
        assert!(generate_synthetic(1, &spec).is_err());
    }

    #[test]
    fn zero_counts_give_empty_corpus() {
        assert!(generate_synthetic(1, &small(0, 0)).unwrap().is_empty());
    }
}
