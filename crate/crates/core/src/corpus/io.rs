use std::collections::HashSet;
use std::io::{Read, Write};

use super::{AnnotatedPair, CorpusError, Post, MAX_AGREEMENT, MIN_AGREEMENT, UNKNOWN_TOPIC};

const REQUIRED: [&str; 5] = ["pair_id", "topic", "prior_text", "response_text", "mean_agreement"];
const OPTIONAL: [&str; 4] = ["prior_id", "response_id", "prior_author", "response_author"];

fn unescape(field: &str) -> String {
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some('\\') => out.push('\\'),
            Some(other) => {
                out.push('\\');
                out.push(other);
            }
            None => out.push('\\'),
        }
    }
    out
}

fn escape(field: &str) -> String {
    let mut out = String::with_capacity(field.len());
    for c in field.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

struct Columns {
    required: [usize; 5],
    optional: [Option<usize>; 4],
    width: usize,
}

impl Columns {
    fn from_header(header: &str) -> Result<Columns, CorpusError> {
        let names: Vec<&str> = header.split('\t').map(str::trim).collect();
        let find = |name: &str| names.iter().position(|n| *n == name);
        let mut required = [0; 5];
        for (slot, name) in required.iter_mut().zip(REQUIRED) {
            *slot = find(name).ok_or_else(|| CorpusError::Schema(name.to_string()))?;
        }
        let mut optional = [None; 4];
        for (slot, name) in optional.iter_mut().zip(OPTIONAL) {
            *slot = find(name);
        }
        Ok(Columns {
            required,
            optional,
            width: names.len(),
        })
    }
}

/// Reads a tab-separated corpus. Rows keep file order; the first
/// malformed row aborts the load with its 1-based line number.
pub fn load_pairs<R: Read>(mut source: R) -> Result<Vec<AnnotatedPair>, CorpusError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;

    let mut columns: Option<Columns> = None;
    let mut seen = HashSet::new();
    let mut pairs = Vec::new();

    for (idx, raw) in bytes.split(|&b| b == b'\n').enumerate() {
        let line_no = idx + 1;
        let line = std::str::from_utf8(raw).map_err(|_| CorpusError::Decode { line: line_no })?;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(cols) = &columns else {
            columns = Some(Columns::from_header(line)?);
            continue;
        };

        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != cols.width {
            return Err(CorpusError::Malformed {
                line: line_no,
                reason: format!("expected {} fields, found {}", cols.width, cells.len()),
            });
        }
        let [id_c, topic_c, prior_c, resp_c, score_c] = cols.required;

        let pair_id = unescape(cells[id_c]);
        if pair_id.trim().is_empty() {
            return Err(CorpusError::Malformed {
                line: line_no,
                reason: "empty pair_id".into(),
            });
        }
        if !seen.insert(pair_id.clone()) {
            return Err(CorpusError::DuplicatePair {
                line: line_no,
                id: pair_id,
            });
        }

        let topic = unescape(cells[topic_c]).trim().to_string();
        let topic = if topic.is_empty() {
            UNKNOWN_TOPIC.to_string()
        } else {
            topic
        };

        let score_cell = cells[score_c].trim();
        let mean_agreement: f64 = score_cell.parse().map_err(|_| CorpusError::Malformed {
            line: line_no,
            reason: format!("mean_agreement {score_cell:?} is not a number"),
        })?;
        if !(MIN_AGREEMENT..=MAX_AGREEMENT).contains(&mean_agreement) {
            return Err(CorpusError::Range {
                line: line_no,
                value: mean_agreement,
            });
        }

        let optional = |i: usize| cols.optional[i].map(|c| unescape(cells[c]));
        let prior = make_post(
            line_no,
            "prior",
            unescape(cells[prior_c]),
            optional(0).unwrap_or_else(|| format!("{pair_id}/prior")),
            optional(2),
        )?;
        let response = make_post(
            line_no,
            "response",
            unescape(cells[resp_c]),
            optional(1).unwrap_or_else(|| format!("{pair_id}/response")),
            optional(3),
        )?;

        pairs.push(AnnotatedPair {
            pair_id,
            topic,
            prior,
            response,
            mean_agreement,
        });
    }
    Ok(pairs)
}

fn make_post(
    line: usize,
    field: &'static str,
    text: String,
    post_id: String,
    author: Option<String>,
) -> Result<Post, CorpusError> {
    if text.trim().is_empty() {
        return Err(CorpusError::EmptyPost { line, field });
    }
    Ok(Post {
        post_id,
        text,
        author: author.filter(|a| !a.is_empty()),
    })
}

/// Writes pairs in the format `load_pairs` reads. Post ids and authors get
/// their own columns only when some pair carries non-default values.
pub fn write_pairs<W: Write>(pairs: &[AnnotatedPair], mut out: W) -> Result<(), CorpusError> {
    let extended = pairs.iter().any(|p| {
        p.prior.post_id != format!("{}/prior", p.pair_id)
            || p.response.post_id != format!("{}/response", p.pair_id)
            || p.prior.author.is_some()
            || p.response.author.is_some()
    });
    let mut header: Vec<&str> = REQUIRED.to_vec();
    if extended {
        header.extend(OPTIONAL);
    }
    writeln!(out, "{}", header.join("\t"))?;
    for p in pairs {
        let mut row = vec![
            escape(&p.pair_id),
            escape(&p.topic),
            escape(&p.prior.text),
            escape(&p.response.text),
            format!("{}", p.mean_agreement),
        ];
        if extended {
            row.push(escape(&p.prior.post_id));
            row.push(escape(&p.response.post_id));
            row.push(escape(p.prior.author.as_deref().unwrap_or("")));
            row.push(escape(p.response.author.as_deref().unwrap_or("")));
        }
        writeln!(out, "{}", row.join("\t"))?;
    }
    Ok(())
}
