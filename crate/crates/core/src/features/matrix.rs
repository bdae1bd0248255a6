//! Feature matrix interchange: an optional `#space` line carrying the
//! space options as JSON, a header `pair_id<TAB>attr...<TAB>label`, then
//! one row per instance. An empty label cell means unlabeled.

use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use super::{Attribute, FeatureError, FeatureOptions, FeatureSpace, FeatureValues, FeatureVector, NgramVocab, NGRAM_PREFIX};
use crate::corpus::Label;

const SPACE_MARKER: &str = "#space\t";

#[derive(Serialize, Deserialize)]
struct SpaceMeta {
    options: FeatureOptions,
    cue_labels: Vec<String>,
    ngram_max_n: Option<usize>,
    ngram_min_count: Option<usize>,
}

fn io_err(e: std::io::Error) -> FeatureError {
    FeatureError::Matrix {
        line: 0,
        message: e.to_string(),
    }
}

pub fn write_matrix<W: Write>(
    space: &FeatureSpace,
    ids: &[String],
    rows: &[FeatureVector],
    mut out: W,
) -> Result<(), FeatureError> {
    if ids.len() != rows.len() {
        return Err(FeatureError::Argument(format!(
            "{} ids for {} rows",
            ids.len(),
            rows.len()
        )));
    }
    let meta = SpaceMeta {
        options: space.options,
        cue_labels: space.cue_labels.clone(),
        ngram_max_n: space.ngram_vocab.as_ref().map(|v| v.max_n),
        ngram_min_count: space.ngram_vocab.as_ref().map(|v| v.min_count),
    };
    let json = serde_json::to_string(&meta).map_err(|e| FeatureError::Argument(e.to_string()))?;
    writeln!(out, "{SPACE_MARKER}{json}").map_err(io_err)?;
    let mut header = vec!["pair_id"];
    header.extend(space.names());
    header.push("label");
    writeln!(out, "{}", header.join("\t")).map_err(io_err)?;
    for (id, row) in ids.iter().zip(rows) {
        if row.len() != space.len() {
            return Err(FeatureError::SpaceMismatch(format!(
                "row {id:?} has {} values, space has {}",
                row.len(),
                space.len()
            )));
        }
        let mut line = String::with_capacity(16 + 2 * space.len());
        line.push_str(id);
        for x in row.values.to_dense() {
            line.push('\t');
            line.push_str(&x.to_string());
        }
        line.push('\t');
        if let Some(l) = row.label {
            line.push_str(l.as_str());
        }
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}

/// Reads a matrix written by [`write_matrix`]. Attribute groups are
/// recovered from names; the ngram vocabulary is rebuilt from the `ng:`
/// attributes.
pub fn read_matrix<R: Read>(source: R) -> Result<(FeatureSpace, Vec<String>, Vec<FeatureVector>), FeatureError> {
    let reader = BufReader::new(source);
    let mut meta: Option<SpaceMeta> = None;
    let mut header: Option<Vec<Attribute>> = None;
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| FeatureError::Matrix {
            line: lineno,
            message: e.to_string(),
        })?;
        if let Some(json) = line.strip_prefix(SPACE_MARKER) {
            meta = Some(serde_json::from_str(json).map_err(|e| FeatureError::Matrix {
                line: lineno,
                message: e.to_string(),
            })?);
            continue;
        }
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split('\t').collect();
        let Some(attrs) = &header else {
            if cells.len() < 2 || cells[0] != "pair_id" || cells[cells.len() - 1] != "label" {
                return Err(FeatureError::Matrix {
                    line: lineno,
                    message: "header must start with pair_id and end with label".into(),
                });
            }
            let attrs = cells[1..cells.len() - 1]
                .iter()
                .map(|n| Attribute::from_name(n))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| FeatureError::Matrix {
                    line: lineno,
                    message: e.to_string(),
                })?;
            header = Some(attrs);
            continue;
        };
        if cells.len() != attrs.len() + 2 {
            return Err(FeatureError::Matrix {
                line: lineno,
                message: format!("expected {} cells, found {}", attrs.len() + 2, cells.len()),
            });
        }
        let values = cells[1..cells.len() - 1]
            .iter()
            .map(|c| {
                c.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| FeatureError::Matrix {
                        line: lineno,
                        message: format!("bad value {c:?}"),
                    })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let label_cell = cells[cells.len() - 1];
        let label = if label_cell.is_empty() {
            None
        } else {
            Some(label_cell.parse::<Label>().map_err(|e| FeatureError::Matrix {
                line: lineno,
                message: e.to_string(),
            })?)
        };
        ids.push(cells[0].to_string());
        rows.push((values, label));
    }
    let attributes = header.ok_or_else(|| FeatureError::Matrix {
        line: 0,
        message: "no header row".into(),
    })?;

    let grams: Vec<String> = attributes
        .iter()
        .filter_map(|a| a.name.strip_prefix(NGRAM_PREFIX).map(String::from))
        .collect();
    let (options, cue_labels, max_n, min_count) = match meta {
        Some(m) => (m.options, m.cue_labels, m.ngram_max_n, m.ngram_min_count),
        None => (FeatureOptions::default(), Vec::new(), None, None),
    };
    let has_ngrams = attributes.iter().any(|a| a.group == super::FeatureGroup::Ngram);
    let vocab = has_ngrams.then(|| {
        let n = max_n.unwrap_or_else(|| grams.iter().map(|g| g.split(' ').count()).max().unwrap_or(1));
        NgramVocab::new(n, min_count.unwrap_or(1), options.ngram, grams)
    });
    let space = FeatureSpace {
        attributes,
        ngram_vocab: vocab,
        options,
        cue_labels,
    };
    let sparse = space.ngram_vocab.is_some();
    let rows = rows
        .into_iter()
        .map(|(values, label)| FeatureVector {
            values: if sparse {
                FeatureValues::Sparse {
                    len: values.len(),
                    entries: values
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| **x != 0.0)
                        .map(|(i, x)| (i as u32, *x))
                        .collect(),
                }
            } else {
                FeatureValues::Dense(values)
            },
            label,
        })
        .collect();
    Ok((space, ids, rows))
}
