//! Pattern lexicons for the theoretically motivated feature groups, and
//! the MPQA-format polarity lexicon.
//!
//! Lexicon files are line oriented:
//!
//! ```text
//! # comment
//! name: denial
//! version: 1
//! class pron = i you we they
//! how can <pron>
//! @cogmech
//! ```
//!
//! `<name>` is a class slot, `@name` refers to another lexicon as a whole
//! (the CUE lexicon uses it for its CogMech entry), anything else is a
//! literal token.

mod matcher;
mod mpqa;
mod shipped;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use matcher::{Elem, PhraseMatch, PhraseMatcher};
pub use mpqa::{
    load_mpqa, write_mpqa, MpqaDiagnostics, Polarity, PolarityEntry, PolarityLexicon, Strength,
};

/// Upper bound on concrete expansions of a single pattern.
pub const MAX_EXPANSIONS: usize = 10_000;
pub const MIN_DENIAL_EXPANSIONS: usize = 300;
pub const CUE_ENTRY_COUNT: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LexiconName {
    Agreement,
    Denial,
    Cue,
    Hedge,
    Cogmech,
}

impl LexiconName {
    pub const ALL: [LexiconName; 5] = [
        LexiconName::Agreement,
        LexiconName::Denial,
        LexiconName::Cue,
        LexiconName::Hedge,
        LexiconName::Cogmech,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LexiconName::Agreement => "agreement",
            LexiconName::Denial => "denial",
            LexiconName::Cue => "cue",
            LexiconName::Hedge => "hedge",
            LexiconName::Cogmech => "cogmech",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.lex", self.as_str())
    }
}

impl fmt::Display for LexiconName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LexiconName {
    type Err = LexiconError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LexiconName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| LexiconError::Parse {
                line: 0,
                message: format!("unknown lexicon name {s:?}"),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Literal(String),
    Class(String),
    Category(String),
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Literal(s) => f.write_str(s),
            Slot::Class(c) => write!(f, "<{c}>"),
            Slot::Category(c) => write!(f, "@{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternSource {
    Seed,
    Generalized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub slots: Vec<Slot>,
    pub source: PatternSource,
    /// 1-based line in the source file.
    pub line: usize,
}

impl Pattern {
    pub fn text(&self) -> String {
        self.slots
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn category(&self) -> Option<&str> {
        match self.slots.as_slice() {
            [Slot::Category(c)] => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternLexicon {
    pub name: LexiconName,
    pub version: String,
    pub approximation: bool,
    /// Patterns in file order.
    pub patterns: Vec<Pattern>,
    pub classes: BTreeMap<String, Vec<String>>,
}

impl PatternLexicon {
    pub fn empty(name: LexiconName) -> PatternLexicon {
        PatternLexicon {
            name,
            version: String::new(),
            approximation: false,
            patterns: Vec::new(),
            classes: BTreeMap::new(),
        }
    }

    /// Every literal and class member mentioned anywhere in the file.
    pub fn vocabulary(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self.classes.values().flatten().cloned().collect();
        for p in &self.patterns {
            for s in &p.slots {
                if let Slot::Literal(l) = s {
                    out.insert(l.clone());
                }
            }
        }
        out
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: reference to undeclared class <{class}>")]
    UnknownClass { line: usize, class: String },
    #[error("pattern {pattern:?} expands to {count} concrete ngrams (limit {MAX_EXPANSIONS})")]
    Explosion { pattern: String, count: usize },
    #[error("lexicon {0} is required but was not supplied")]
    Missing(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

fn parse_slot(tok: &str, line: usize) -> Result<Slot, LexiconError> {
    if let Some(inner) = tok.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        if inner.is_empty() {
            return Err(LexiconError::Parse {
                line,
                message: "empty class reference <>".into(),
            });
        }
        return Ok(Slot::Class(inner.to_lowercase()));
    }
    if let Some(cat) = tok.strip_prefix('@').filter(|c| !c.is_empty()) {
        return Ok(Slot::Category(cat.to_lowercase()));
    }
    Ok(Slot::Literal(tok.to_lowercase()))
}

const META_KEYS: [&str; 4] = ["name", "version", "approximation", "description"];

fn split_meta(line: &str) -> Option<(&str, &str)> {
    let (key, value) = line.split_once(':')?;
    let key = key.trim();
    META_KEYS
        .contains(&key)
        .then_some((key, value.trim()))
}

/// Parses a lexicon file. Class references are resolved (undeclared ones
/// fail) but nothing is expanded yet.
pub fn load_lexicon<R: Read>(mut source: R, name: LexiconName) -> Result<PatternLexicon, LexiconError> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| LexiconError::Parse {
            line: 0,
            message: e.to_string(),
        })?;
    parse_lexicon(&text, name)
}

pub fn parse_lexicon(text: &str, name: LexiconName) -> Result<PatternLexicon, LexiconError> {
    let mut lex = PatternLexicon::empty(name);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some((key, value)) = split_meta(body) {
            match key {
                "name" => {
                    let declared: LexiconName = value.parse().map_err(|_| LexiconError::Parse {
                        line,
                        message: format!("unknown lexicon name {value:?}"),
                    })?;
                    if declared != name {
                        return Err(LexiconError::Parse {
                            line,
                            message: format!("file declares lexicon {declared}, expected {name}"),
                        });
                    }
                }
                "version" => lex.version = value.to_string(),
                "approximation" => {
                    lex.approximation = match value {
                        "true" | "yes" => true,
                        "false" | "no" => false,
                        other => {
                            return Err(LexiconError::Parse {
                                line,
                                message: format!("approximation must be true or false, got {other:?}"),
                            })
                        }
                    }
                }
                _ => {}
            }
            continue;
        }
        if let Some(decl) = body.strip_prefix("class ") {
            let (cname, members) = decl.split_once('=').ok_or_else(|| LexiconError::Parse {
                line,
                message: "class declaration needs '='".into(),
            })?;
            let cname = cname.trim().to_lowercase();
            if cname.is_empty() || cname.contains(char::is_whitespace) {
                return Err(LexiconError::Parse {
                    line,
                    message: format!("bad class name {cname:?}"),
                });
            }
            let members: Vec<String> = members.split_whitespace().map(str::to_lowercase).collect();
            lex.classes.insert(cname, members);
            continue;
        }
        let slots = body
            .split_whitespace()
            .map(|t| parse_slot(t, line))
            .collect::<Result<Vec<_>, _>>()?;
        if slots.iter().any(|s| matches!(s, Slot::Category(_))) && slots.len() > 1 {
            return Err(LexiconError::Parse {
                line,
                message: "a category reference must be the whole pattern".into(),
            });
        }
        let source = if slots.iter().any(|s| matches!(s, Slot::Class(_))) {
            PatternSource::Generalized
        } else {
            PatternSource::Seed
        };
        lex.patterns.push(Pattern {
            slots,
            source,
            line,
        });
    }
    for p in &lex.patterns {
        for s in &p.slots {
            if let Slot::Class(c) = s {
                if !lex.classes.contains_key(c) {
                    return Err(LexiconError::UnknownClass {
                        line: p.line,
                        class: c.clone(),
                    });
                }
            }
        }
    }
    Ok(lex)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcretePattern {
    pub tokens: Vec<String>,
    /// Index into `PatternLexicon::patterns` of the seed that produced it.
    pub seed: usize,
    pub source: PatternSource,
}

impl ConcretePattern {
    pub fn text(&self) -> String {
        self.tokens.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicateExpansion {
    pub text: String,
    pub seeds: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expansion {
    /// Sorted by token sequence, no duplicates.
    pub concretes: Vec<ConcretePattern>,
    pub duplicates: Vec<DuplicateExpansion>,
}

fn expand_pattern(p: &Pattern, classes: &BTreeMap<String, Vec<String>>) -> Result<Vec<Vec<String>>, LexiconError> {
    let mut count: usize = 1;
    for s in &p.slots {
        if let Slot::Class(c) = s {
            count = count.saturating_mul(classes.get(c).map_or(0, Vec::len));
        }
    }
    if count > MAX_EXPANSIONS {
        return Err(LexiconError::Explosion {
            pattern: p.text(),
            count,
        });
    }
    let mut out: Vec<Vec<String>> = vec![Vec::new()];
    for s in &p.slots {
        match s {
            Slot::Literal(l) => out.iter_mut().for_each(|v| v.push(l.clone())),
            Slot::Class(c) => {
                let members = classes.get(c).ok_or_else(|| LexiconError::UnknownClass {
                    line: p.line,
                    class: c.clone(),
                })?;
                out = out
                    .into_iter()
                    .flat_map(|prefix| {
                        members.iter().map(move |m| {
                            let mut v = prefix.clone();
                            v.push(m.clone());
                            v
                        })
                    })
                    .collect();
            }
            Slot::Category(_) => return Ok(Vec::new()),
        }
    }
    Ok(out)
}

/// Cartesian expansion of every class slot. Category patterns produce no
/// concrete ngrams. When two seeds produce the same ngram, the seed whose
/// text sorts first is kept, so the result does not depend on file order.
pub fn expand_generalizations(lex: &PatternLexicon) -> Result<Expansion, LexiconError> {
    let mut by_tokens: BTreeMap<Vec<String>, Vec<usize>> = BTreeMap::new();
    for (idx, p) in lex.patterns.iter().enumerate() {
        for toks in expand_pattern(p, &lex.classes)? {
            by_tokens.entry(toks).or_default().push(idx);
        }
    }
    let mut exp = Expansion::default();
    for (tokens, seeds) in by_tokens {
        let mut names: Vec<(String, usize)> =
            seeds.iter().map(|&i| (lex.patterns[i].text(), i)).collect();
        names.sort();
        let seed = names[0].1;
        if seeds.len() > 1 {
            let mut listed: Vec<String> = names.into_iter().map(|(t, _)| t).collect();
            listed.dedup();
            exp.duplicates.push(DuplicateExpansion {
                text: tokens.join(" "),
                seeds: listed,
            });
        }
        exp.concretes.push(ConcretePattern {
            tokens,
            seed,
            source: lex.patterns[seed].source,
        });
    }
    Ok(exp)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{}: {verdict} ({})", c.name, c.detail)?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

pub fn validate_lexicon(lex: &PatternLexicon) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (name, members) in &lex.classes {
        if members.is_empty() {
            report.warnings.push(format!("class <{name}> is empty"));
        }
    }
    match expand_generalizations(lex) {
        Ok(exp) => {
            for d in &exp.duplicates {
                report.warnings.push(format!(
                    "duplicate expansion {:?} from seeds {}",
                    d.text,
                    d.seeds.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>().join(", ")
                ));
            }
            if lex.name == LexiconName::Denial {
                let n = exp.concretes.len();
                report.checks.push(Check {
                    name: format!("expansions >= {MIN_DENIAL_EXPANSIONS}"),
                    passed: n >= MIN_DENIAL_EXPANSIONS,
                    detail: format!("{n} concrete ngrams"),
                });
            }
        }
        Err(e) => report.checks.push(Check {
            name: "expansion".into(),
            passed: false,
            detail: e.to_string(),
        }),
    }
    if lex.name == LexiconName::Cue {
        let n = lex.patterns.len();
        report.checks.push(Check {
            name: format!("cue count = {CUE_ENTRY_COUNT}"),
            passed: n == CUE_ENTRY_COUNT,
            detail: format!("{n} entries"),
        });
    }
    report
}

/// A cue entry and how it is matched.
#[derive(Clone, Debug)]
pub enum CueEntry {
    Phrase { label: String, matcher: PhraseMatcher },
    Category { label: String },
}

impl CueEntry {
    pub fn label(&self) -> &str {
        match self {
            CueEntry::Phrase { label, .. } | CueEntry::Category { label } => label,
        }
    }
}

/// All lexicons a featurizer needs, compiled for matching. Immutable after
/// construction.
#[derive(Clone, Debug)]
pub struct LexiconSet {
    pub agreement: PatternLexicon,
    pub denial: PatternLexicon,
    pub cue: PatternLexicon,
    pub hedge: PatternLexicon,
    pub cogmech: PatternLexicon,
    pub mpqa: PolarityLexicon,
    pub mpqa_version: String,
    pub(crate) agreement_keywords: PhraseMatcher,
    pub(crate) negation: Vec<Elem>,
    pub(crate) contrast: Vec<Elem>,
    pub(crate) denial_matcher: PhraseMatcher,
    pub(crate) hedge_matcher: PhraseMatcher,
    pub(crate) cogmech_matcher: PhraseMatcher,
    pub(crate) cue_entries: Vec<CueEntry>,
}

impl LexiconSet {
    pub fn new(
        agreement: PatternLexicon,
        denial: PatternLexicon,
        cue: PatternLexicon,
        hedge: PatternLexicon,
        cogmech: PatternLexicon,
        mpqa: PolarityLexicon,
        mpqa_version: impl Into<String>,
    ) -> Result<LexiconSet, LexiconError> {
        let class_elems = |lex: &PatternLexicon, class: &str| -> Result<Vec<Elem>, LexiconError> {
            lex.classes
                .get(class)
                .map(|m| m.iter().map(|t| Elem::from_literal(t)).collect())
                .ok_or_else(|| LexiconError::Missing(format!("class <{class}> in the agreement lexicon")))
        };
        let negation = class_elems(&agreement, "neg")?;
        let contrast = class_elems(&agreement, "contrast")?;
        let agreement_keywords = PhraseMatcher::new(&expand_generalizations(&agreement)?.concretes);
        let denial_matcher = PhraseMatcher::new(&expand_generalizations(&denial)?.concretes);
        let hedge_matcher = PhraseMatcher::new(&expand_generalizations(&hedge)?.concretes);
        let cogmech_matcher = PhraseMatcher::new(&expand_generalizations(&cogmech)?.concretes);

        let mut cue_entries = Vec::with_capacity(cue.patterns.len());
        for (idx, p) in cue.patterns.iter().enumerate() {
            if let Some(cat) = p.category() {
                if cat != LexiconName::Cogmech.as_str() {
                    return Err(LexiconError::Parse {
                        line: p.line,
                        message: format!("unsupported category @{cat}"),
                    });
                }
                cue_entries.push(CueEntry::Category { label: p.text() });
                continue;
            }
            let single = PatternLexicon {
                patterns: vec![p.clone()],
                ..cue.clone()
            };
            let concretes: Vec<ConcretePattern> = expand_generalizations(&single)?
                .concretes
                .into_iter()
                .map(|c| ConcretePattern { seed: idx, ..c })
                .collect();
            cue_entries.push(CueEntry::Phrase {
                label: p.text(),
                matcher: PhraseMatcher::new(&concretes),
            });
        }

        Ok(LexiconSet {
            agreement,
            denial,
            cue,
            hedge,
            cogmech,
            mpqa,
            mpqa_version: mpqa_version.into(),
            agreement_keywords,
            negation,
            contrast,
            denial_matcher,
            hedge_matcher,
            cogmech_matcher,
            cue_entries,
        })
    }

    /// The lexicons distributed with the crate.
    pub fn shipped() -> LexiconSet {
        shipped::load().expect("shipped lexicons are valid")
    }

    /// Loads `<name>.lex` for every lexicon from `dir`, plus an MPQA clue
    /// file. Anything not supplied (no `dir`, a file missing from `dir`, no
    /// MPQA path) falls back to the shipped copy.
    pub fn load_dir(dir: Option<&Path>, mpqa_path: Option<&Path>) -> Result<LexiconSet, LexiconError> {
        let read = |path: &Path| -> Result<String, LexiconError> {
            std::fs::read_to_string(path).map_err(|e| LexiconError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })
        };
        let mut lexes = Vec::new();
        for name in LexiconName::ALL {
            let text = match dir.map(|d| d.join(name.file_name())) {
                Some(path) if path.exists() => read(&path)?,
                _ => shipped::text(name).to_string(),
            };
            lexes.push(parse_lexicon(&text, name)?);
        }
        let (mpqa, mpqa_version) = match mpqa_path {
            Some(p) => {
                let (lex, _) = load_mpqa(read(p)?.as_bytes())?;
                let version = p
                    .file_name()
                    .map(|f| f.to_string_lossy().into_owned())
                    .unwrap_or_default();
                (lex, version)
            }
            None => (shipped::mpqa()?, shipped::MPQA_VERSION.to_string()),
        };
        let mut it = lexes.into_iter();
        let mut next = || it.next().expect("five lexicons");
        LexiconSet::new(next(), next(), next(), next(), next(), mpqa, mpqa_version)
    }

    pub fn cue_labels(&self) -> Vec<String> {
        self.cue_entries.iter().map(|e| e.label().to_string()).collect()
    }

    pub fn versions(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = [
            &self.agreement,
            &self.denial,
            &self.cue,
            &self.hedge,
            &self.cogmech,
        ]
        .iter()
        .map(|l| (l.name.to_string(), l.version.clone()))
        .collect();
        out.push(("mpqa".into(), self.mpqa_version.clone()));
        out
    }

    /// True when `key` (an apostrophe-free lowercase form) appears in any
    /// pattern lexicon or in the polarity lexicon.
    pub fn mentions(&self, key: &str) -> bool {
        let in_patterns = [
            &self.agreement_keywords,
            &self.denial_matcher,
            &self.hedge_matcher,
            &self.cogmech_matcher,
        ]
        .iter()
        .any(|m| m.mentions(key))
            || self.cue_entries.iter().any(|e| match e {
                CueEntry::Phrase { matcher, .. } => matcher.mentions(key),
                CueEntry::Category { .. } => false,
            })
            || self.negation.iter().chain(&self.contrast).any(|e| e.mentions(key));
        in_patterns || self.mpqa.entries.contains_key(key)
    }

    pub fn denial_matcher(&self) -> &PhraseMatcher {
        &self.denial_matcher
    }

    pub fn hedge_matcher(&self) -> &PhraseMatcher {
        &self.hedge_matcher
    }

    pub fn agreement_matcher(&self) -> &PhraseMatcher {
        &self.agreement_keywords
    }
}
