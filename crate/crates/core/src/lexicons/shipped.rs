use super::{load_mpqa, parse_lexicon, LexiconError, LexiconName, LexiconSet, PolarityLexicon};

pub(crate) const MPQA_VERSION: &str = "subjclues_sample.tff@1";

const AGREEMENT: &str = include_str!("../../data/lexicons/agreement.lex");
const DENIAL: &str = include_str!("../../data/lexicons/denial.lex");
const CUE: &str = include_str!("../../data/lexicons/cue.lex");
const HEDGE: &str = include_str!("../../data/lexicons/hedge.lex");
const COGMECH: &str = include_str!("../../data/lexicons/cogmech.lex");
const MPQA: &str = include_str!("../../data/mpqa/subjclues_sample.tff");

pub(crate) fn text(name: LexiconName) -> &'static str {
    match name {
        LexiconName::Agreement => AGREEMENT,
        LexiconName::Denial => DENIAL,
        LexiconName::Cue => CUE,
        LexiconName::Hedge => HEDGE,
        LexiconName::Cogmech => COGMECH,
    }
}

pub(crate) fn mpqa() -> Result<PolarityLexicon, LexiconError> {
    load_mpqa(MPQA.as_bytes()).map(|(lex, _)| lex)
}

pub(crate) fn load() -> Result<LexiconSet, LexiconError> {
    let parse = |n| parse_lexicon(text(n), n);
    LexiconSet::new(
        parse(LexiconName::Agreement)?,
        parse(LexiconName::Denial)?,
        parse(LexiconName::Cue)?,
        parse(LexiconName::Hedge)?,
        parse(LexiconName::Cogmech)?,
        mpqa()?,
        MPQA_VERSION,
    )
}
