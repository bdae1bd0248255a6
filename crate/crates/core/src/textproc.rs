//! Tokenization, sentence segmentation and ngram extraction.
//!
//! Every feature extractor works on a [`TokenList`]. The tokenizer is a
//! total function: it never drops a non-whitespace character, so the
//! concatenated token surfaces always equal the input with whitespace
//! removed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Placeholder used for NUMBER tokens in ngram space.
pub const NUMBER_PLACEHOLDER: &str = "<num>";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    Word,
    Punct,
    Number,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub normalized: String,
    /// Apostrophe-free variant of `normalized`, present only when it differs.
    pub alt: Option<String>,
    pub kind: TokenKind,
}

impl Token {
    fn new(surface: &str, kind: TokenKind) -> Token {
        let normalized = match kind {
            TokenKind::Word => surface.to_lowercase(),
            _ => surface.to_string(),
        };
        let alt = if kind == TokenKind::Word && normalized.chars().any(is_apostrophe) {
            Some(strip_apostrophes(&normalized))
        } else {
            None
        };
        Token {
            surface: surface.to_string(),
            normalized,
            alt,
            kind,
        }
    }

    /// The form lexicon matching compares against: `normalized` with
    /// apostrophes removed.
    pub fn match_key(&self) -> &str {
        self.alt.as_deref().unwrap_or(&self.normalized)
    }

    /// The token as it appears in ngram space.
    pub fn ngram_form(&self) -> &str {
        match self.kind {
            TokenKind::Number => NUMBER_PLACEHOLDER,
            _ => &self.normalized,
        }
    }

    pub fn is_wordlike(&self) -> bool {
        matches!(self.kind, TokenKind::Word | TokenKind::Number)
    }

    fn is_terminal(&self) -> bool {
        self.kind == TokenKind::Punct && matches!(self.surface.as_str(), "." | "?" | "!")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TokenList {
    pub tokens: Vec<Token>,
    /// Number of characters (not bytes) in the source text, whitespace included.
    pub char_count: usize,
    pub text: String,
}

impl TokenList {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Half-open token range `[start_token, end_token)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SentenceSpan {
    pub start_token: usize,
    pub end_token: usize,
}

impl SentenceSpan {
    pub fn len(&self) -> usize {
        self.end_token - self.start_token
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NgramScope {
    WordsOnly,
    #[default]
    WithPunct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NgramOptions {
    pub scope: NgramScope,
    /// When false, ngrams may span sentence boundaries.
    pub sentence_scoped: bool,
}

impl Default for NgramOptions {
    fn default() -> Self {
        NgramOptions {
            scope: NgramScope::WithPunct,
            sentence_scoped: true,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TextError {
    #[error("ngram order must be at least 1, got {0}")]
    InvalidOrder(usize),
}

pub fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

pub fn strip_apostrophes(s: &str) -> String {
    s.chars().filter(|&c| !is_apostrophe(c)).collect()
}

fn is_core_char(c: char) -> bool {
    c.is_alphanumeric()
}

fn is_number(core: &str) -> bool {
    core.starts_with(|c: char| c.is_ascii_digit())
        && core.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
}

pub fn tokenize(text: &str) -> TokenList {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        tokenize_chunk(chunk, &mut tokens);
    }
    TokenList {
        tokens,
        char_count: text.chars().count(),
        text: text.to_string(),
    }
}

/// Splits a whitespace-free chunk. `?`, `!` and runs of two or more periods
/// always become standalone PUNCT tokens; the remaining pieces have their
/// leading and trailing non-alphanumeric characters peeled off one by one.
fn tokenize_chunk(chunk: &str, out: &mut Vec<Token>) {
    let chars: Vec<(usize, char)> = chunk.char_indices().collect();
    let mut piece_start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let (byte, c) = chars[i];
        let is_break = if c == '?' || c == '!' {
            Some(1)
        } else if c == '.' {
            let run = chars[i..].iter().take_while(|(_, ch)| *ch == '.').count();
            (run >= 2).then_some(run)
        } else {
            None
        };
        match is_break {
            Some(run) => {
                push_piece(&chunk[piece_start..byte], out);
                for &(b, ch) in &chars[i..i + run] {
                    out.push(Token::new(&chunk[b..b + ch.len_utf8()], TokenKind::Punct));
                }
                i += run;
                piece_start = chars.get(i).map_or(chunk.len(), |&(b, _)| b);
            }
            None => i += 1,
        }
    }
    push_piece(&chunk[piece_start..], out);
}

fn push_piece(piece: &str, out: &mut Vec<Token>) {
    if piece.is_empty() {
        return;
    }
    let Some(first) = piece.find(is_core_char) else {
        for (b, c) in piece.char_indices() {
            out.push(Token::new(&piece[b..b + c.len_utf8()], TokenKind::Punct));
        }
        return;
    };
    let last = piece
        .char_indices()
        .rev()
        .find(|&(_, c)| is_core_char(c))
        .map(|(b, c)| b + c.len_utf8())
        .unwrap_or(piece.len());

    for (b, c) in piece[..first].char_indices() {
        out.push(Token::new(&piece[b..b + c.len_utf8()], TokenKind::Punct));
    }
    let core = &piece[first..last];
    let kind = if is_number(core) {
        TokenKind::Number
    } else {
        TokenKind::Word
    };
    out.push(Token::new(core, kind));
    for (b, c) in piece[last..].char_indices() {
        let b = last + b;
        out.push(Token::new(&piece[b..b + c.len_utf8()], TokenKind::Punct));
    }
}

/// A boundary follows every `.`, `?` or `!` token (a run of them counts once).
/// Trailing tokens without terminal punctuation form the last sentence.
pub fn split_sentences(tokens: &TokenList) -> Vec<SentenceSpan> {
    let toks = &tokens.tokens;
    let mut spans = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < toks.len() {
        if toks[i].is_terminal() {
            while i + 1 < toks.len() && toks[i + 1].is_terminal() {
                i += 1;
            }
            spans.push(SentenceSpan {
                start_token: start,
                end_token: i + 1,
            });
            start = i + 1;
        }
        i += 1;
    }
    if start < toks.len() {
        spans.push(SentenceSpan {
            start_token: start,
            end_token: toks.len(),
        });
    }
    spans
}

/// Segments of eligible tokens within which ngrams are formed.
fn ngram_segments<'a>(
    tokens: &'a TokenList,
    spans: &[SentenceSpan],
    opts: NgramOptions,
) -> Vec<Vec<&'a str>> {
    let eligible = |t: &Token| opts.scope == NgramScope::WithPunct || t.is_wordlike();
    let collect = |range: std::ops::Range<usize>| -> Vec<&'a str> {
        tokens.tokens[range]
            .iter()
            .filter(|t| eligible(t))
            .map(Token::ngram_form)
            .collect()
    };
    if opts.sentence_scoped {
        spans
            .iter()
            .map(|s| collect(s.start_token..s.end_token))
            .collect()
    } else {
        vec![collect(0..tokens.tokens.len())]
    }
}

/// Calls `f` once per ngram position of order `n`. The ngram is passed as
/// its space-joined form; tokens never contain whitespace, so the joined
/// form identifies the tuple.
pub fn for_each_ngram<F: FnMut(String)>(
    tokens: &TokenList,
    spans: &[SentenceSpan],
    n: usize,
    opts: NgramOptions,
    mut f: F,
) -> Result<(), TextError> {
    if n < 1 {
        return Err(TextError::InvalidOrder(n));
    }
    for seg in ngram_segments(tokens, spans, opts) {
        if seg.len() < n {
            continue;
        }
        for w in seg.windows(n) {
            f(w.join(" "));
        }
    }
    Ok(())
}

/// Multiset of ngrams keyed by their space-joined normalized tokens.
pub fn ngrams(
    tokens: &TokenList,
    n: usize,
    opts: NgramOptions,
) -> Result<BTreeMap<String, usize>, TextError> {
    let spans = split_sentences(tokens);
    let mut counts = BTreeMap::new();
    for_each_ngram(tokens, &spans, n, opts, |g| *counts.entry(g).or_insert(0) += 1)?;
    Ok(counts)
}
