//! Reader and writer for the MPQA subjectivity clue format:
//!
//! ```text
//! type=strongsubj len=1 word1=abuse pos1=anypos stemmed1=y priorpolarity=negative
//! ```
//!
//! Part-of-speech fields are ignored: a word matches regardless of use.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::LexiconError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Strength {
    Weak,
    Strong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarityEntry {
    pub strength: Strength,
    pub polarity: Polarity,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolarityLexicon {
    pub entries: BTreeMap<String, PolarityEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MpqaDiagnostics {
    /// Lines skipped because `type`, `word1` or `priorpolarity` was absent.
    pub skipped_lines: Vec<usize>,
    /// One message per duplicate word that needed the conflict rule.
    pub conflicts: Vec<String>,
}

fn parse_polarity(v: &str) -> Option<Polarity> {
    match v {
        "positive" => Some(Polarity::Positive),
        "negative" | "weakneg" | "strongneg" => Some(Polarity::Negative),
        "neutral" => Some(Polarity::Neutral),
        "both" => Some(Polarity::Both),
        _ => None,
    }
}

fn polarity_name(p: Polarity) -> &'static str {
    match p {
        Polarity::Positive => "positive",
        Polarity::Negative => "negative",
        Polarity::Neutral => "neutral",
        Polarity::Both => "both",
    }
}

/// Stronger entries replace weaker ones; equal strength with different
/// polarities collapses to `Both`.
fn merge(old: PolarityEntry, new: PolarityEntry) -> PolarityEntry {
    match old.strength.cmp(&new.strength) {
        std::cmp::Ordering::Greater => old,
        std::cmp::Ordering::Less => new,
        std::cmp::Ordering::Equal if old.polarity == new.polarity => old,
        std::cmp::Ordering::Equal => PolarityEntry {
            strength: old.strength,
            polarity: Polarity::Both,
        },
    }
}

pub fn load_mpqa<R: Read>(mut source: R) -> Result<(PolarityLexicon, MpqaDiagnostics), LexiconError> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| LexiconError::Parse {
            line: 0,
            message: e.to_string(),
        })?;
    let mut lex = PolarityLexicon::default();
    let mut diag = MpqaDiagnostics::default();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut fields = BTreeMap::new();
        for kv in body.split_whitespace() {
            let (k, v) = kv.split_once('=').ok_or_else(|| LexiconError::Parse {
                line,
                message: format!("expected key=value, found {kv:?}"),
            })?;
            fields.insert(k, v);
        }
        let (Some(kind), Some(word), Some(pol)) =
            (fields.get("type"), fields.get("word1"), fields.get("priorpolarity"))
        else {
            diag.skipped_lines.push(line);
            continue;
        };
        let strength = match *kind {
            "strongsubj" => Strength::Strong,
            "weaksubj" => Strength::Weak,
            other => {
                return Err(LexiconError::Parse {
                    line,
                    message: format!("unknown clue type {other:?}"),
                })
            }
        };
        let polarity = parse_polarity(pol).ok_or_else(|| LexiconError::Parse {
            line,
            message: format!("unknown priorpolarity {pol:?}"),
        })?;
        let entry = PolarityEntry { strength, polarity };
        let key = word.to_lowercase();
        match lex.entries.get(&key).copied() {
            Some(old) if old != entry => {
                let merged = merge(old, entry);
                diag.conflicts.push(format!(
                    "line {line}: {key:?} {old:?} vs {entry:?}, kept {merged:?}"
                ));
                lex.entries.insert(key, merged);
            }
            Some(_) => {}
            None => {
                lex.entries.insert(key, entry);
            }
        }
    }
    Ok((lex, diag))
}

pub fn write_mpqa<W: Write>(lex: &PolarityLexicon, mut out: W) -> std::io::Result<()> {
    for (word, e) in &lex.entries {
        let kind = match e.strength {
            Strength::Strong => "strongsubj",
            Strength::Weak => "weaksubj",
        };
        writeln!(
            out,
            "type={kind} len=1 word1={word} pos1=anypos stemmed1=n priorpolarity={}",
            polarity_name(e.polarity)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_published_record() {
        let (lex, diag) = load_mpqa(
            "type=strongsubj len=1 word1=abuse pos1=anypos stemmed1=y priorpolarity=negative\n".as_bytes(),
        )
        .unwrap();
        assert_eq!(
            lex.entries["abuse"],
            PolarityEntry {
                strength: Strength::Strong,
                polarity: Polarity::Negative
            }
        );
        assert!(diag.skipped_lines.is_empty());
    }

    #[test]
    fn conflict_rule() {
        let src = "type=weaksubj len=1 word1=Fine pos1=adj stemmed1=n priorpolarity=positive\n\
                   type=strongsubj len=1 word1=fine pos1=noun stemmed1=n priorpolarity=negative\n\
                   type=strongsubj len=1 word1=odd pos1=adj stemmed1=n priorpolarity=positive\n\
                   type=strongsubj len=1 word1=odd pos1=noun stemmed1=n priorpolarity=negative\n\
                   type=weaksubj len=1 word1=odd pos1=verb stemmed1=n priorpolarity=neutral\n";
        let (lex, diag) = load_mpqa(src.as_bytes()).unwrap();
        assert_eq!(lex.entries["fine"].strength, Strength::Strong);
        assert_eq!(lex.entries["fine"].polarity, Polarity::Negative);
        assert_eq!(lex.entries["odd"].polarity, Polarity::Both);
        assert_eq!(diag.conflicts.len(), 3);
    }

    #[test]
    fn missing_key_skips_bad_field_fails() {
        let (lex, diag) = load_mpqa("type=weaksubj len=1 word1=x\n".as_bytes()).unwrap();
        assert!(lex.entries.is_empty());
        assert_eq!(diag.skipped_lines, vec![1]);
        assert!(matches!(
            load_mpqa("\ntype=weaksubj word1\n".as_bytes()),
            Err(LexiconError::Parse { line: 2, .. })
        ));
        let (lex, _) = load_mpqa("".as_bytes()).unwrap();
        assert!(lex.entries.is_empty());
    }

    fn arb_entry() -> impl Strategy<Value = PolarityEntry> {
        (
            prop_oneof![Just(Strength::Weak), Just(Strength::Strong)],
            prop_oneof![
                Just(Polarity::Positive),
                Just(Polarity::Negative),
                Just(Polarity::Neutral),
                Just(Polarity::Both)
            ],
        )
            .prop_map(|(strength, polarity)| PolarityEntry { strength, polarity })
    }

    proptest! {
        #[test]
        fn write_then_load_keeps_entries(entries in prop::collection::btree_map("[a-z]{1,8}", arb_entry(), 0..20)) {
            let lex = PolarityLexicon { entries };
            let mut buf = Vec::new();
            write_mpqa(&lex, &mut buf).unwrap();
            let (back, diag) = load_mpqa(&buf[..]).unwrap();
            prop_assert_eq!(back, lex);
            prop_assert!(diag.conflicts.is_empty());
        }
    }
}
