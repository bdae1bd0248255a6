//! Lexicon gates: expansion and entry counts of the shipped lexicons, and
//! the quoted stance ngrams each matched in their sentence context.
#![allow(dead_code)]

use stancecue::features::{extract_agreement, extract_cues, extract_denial, extract_hedges};
use stancecue::lexicons::{expand_generalizations, LexiconSet};
use stancecue::textproc::{tokenize, TokenList};

#[derive(Clone, Copy, Debug)]
pub enum Family {
    Agreement,
    Denial,
    Hedge,
    /// One cue entry, by label.
    Cue(&'static str),
    /// Any pattern lexicon.
    Any,
}

pub struct Quoted {
    pub ngram: &'static str,
    pub context: &'static str,
    pub family: Family,
}

const fn q(ngram: &'static str, context: &'static str, family: Family) -> Quoted {
    Quoted { ngram, context, family }
}

use Family::*;

const DONT_SEE: &str = "I don't see why this matters.";
const WONDERING: &str = "I'm wondering.";
const DEBATES: &str = "What do we call someone who debates feverishly on scientific theories, yet admittedly does not \
                   understand the concepts they are arguing against?";
const GENESIS: &str = "Well, many have argued that if you don't except a literal Genesis, you're damned.";
const THREAD: &str = "Perhaps not in this particular thread, but the arguments are essentially the same.";
const IGNORANCE: &str = "To say 'you don't know all the answers' is just the logical fallacy known as 'argument from \
                  ignorance'.";
const KIND_Q: &str = "So we can't base our definition of \"kind\" on mere appearances?";
const KIND_DEF: &str = "I mean if we are going to put things into categories and call the category \"kind\", we should \
                   do this by common appearances.";
const PENGUIN: &str = "A penguin is in the same kind as a hummingbird, but is a lobster in the same kind as an oyster?";
const CORRECT: &str = "I think you are entirely correct.";
const QUITE_RIGHT: &str = "Quite right.";
const BEST_THREAD: &str = "yeah, this is clearly the best thread on these forums in probably the past year....";

/// Stance ngrams quoted for the feature families, with the sentence they
/// appear in when an example post shows them, else the ngram alone.
pub const QUOTED: &[Quoted] = &[
    // Disagreement indicators and their generalizations.
    q("I don't see", DONT_SEE, Denial),
    q("Can you", "Can you", Denial),
    q("liar", "liar", Denial),
    q("no", "no", Cue("no")),
    q("don't", "don't", Cue("dont")),
    q("I don't", "I don't", Any),
    q("How can", "How can", Denial),
    q("If I", "If I", Denial),
    q("how could", "how could", Denial),
    q("show me", "show me", Denial),
    q("I don't agree", "I don't agree", Denial),
    q("how can you", "how can you", Denial),
    q("point is that", "point is that", Denial),
    q("I do not understand", "I do not understand", Denial),
    q("how can we", "how can we", Denial),
    q("how can they", "how can they", Denial),
    q("You don't know", IGNORANCE, Denial),
    q("That does not", "That does not", Denial),
    q("I don't think", "I don't think", Denial),
    q("what is", "what is", Denial),
    q("This has nothing", "This has nothing", Denial),
    q("do you mean", "do you mean", Denial),
    q("Prove that", "Prove that", Denial),
    q("I'm not sure", "I'm not sure", Denial),
    q("does not mean", "does not mean", Denial),
    q("I still don't", "I still don't", Denial),
    q("you missed my", "you missed my", Denial),
    q("I have no", "I have no", Denial),
    q("Problem with that", "Problem with that", Denial),
    q("I do not", "I do not", Denial),
    q("does not", DEBATES, Denial),
    q("why do", "why do", Denial),
    q("But I don't", "But I don't", Denial),
    q("You do not", "You do not", Denial),
    // Agreement keywords.
    q("right", QUITE_RIGHT, Agreement),
    q("correct", CORRECT, Agreement),
    q("agree", "agree", Agreement),
    // Cue words.
    q("Well", GENESIS, Cue("well")),
    q("So", KIND_Q, Cue("so")),
    q("but", PENGUIN, Cue("@cogmech")),
    q("yeah", BEST_THREAD, Cue("yeah")),
    q("I think", CORRECT, Cue("i think")),
    q("oh", "oh", Cue("oh")),
    q("so", "so", Cue("so")),
    q("uh", "uh", Cue("uh")),
    q("yes", "yes", Cue("yes")),
    q("dont", "dont", Cue("dont")),
    q("claim", "claim", Cue("claim")),
    q("i", "i", Cue("i")),
    q("because", "because", Cue("because")),
    q("well", "well", Cue("well")),
    q("just", "just", Cue("just")),
    q("and", "and", Cue("and")),
    q("you", "you", Cue("you")),
    q("you mean", "you mean", Cue("you mean")),
    q("i see", "i see", Cue("i see")),
    // Hedges.
    q("Perhaps", THREAD, Hedge),
    q("essentially", THREAD, Hedge),
    q("I mean", KIND_DEF, Hedge),
    q("I'm wondering", WONDERING, Hedge),
    q("I think", CORRECT, Hedge),
    q("Im wondering", "Im wondering", Hedge),
    q("I am wondering", "I am wondering", Hedge),
    q("whatever", "whatever", Hedge),
    q("somewhat", "somewhat", Hedge),
    q("may be", "may be", Hedge),
    q("maybe", "maybe", Hedge),
    q("seems to me", "seems to me", Hedge),
    q("my view", "my view", Hedge),
    q("actually", "actually", Hedge),
    q("my opinion", "my opinion", Hedge),
    q("my perspective", "my perspective", Hedge),
    q("rather", "rather", Hedge),
    q("suppose", "suppose", Hedge),
    q("perhaps", "perhaps", Hedge),
];

fn family_count(tl: &TokenList, family: Family, lex: &LexiconSet) -> Result<usize, String> {
    Ok(match family {
        Agreement => extract_agreement(tl, lex),
        Denial => extract_denial(tl, lex),
        Hedge => extract_hedges(tl, lex),
        Cue(label) => {
            let i = lex
                .cue_labels()
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| format!("no cue entry {label:?}"))?;
            extract_cues(tl, lex)[i]
        }
        Any => {
            extract_agreement(tl, lex)
                + extract_denial(tl, lex)
                + extract_hedges(tl, lex)
                + extract_cues(tl, lex).iter().sum::<usize>()
        }
    })
}

/// The quoted ngram is matched when the family count on its context drops
/// once the ngram's tokens are blanked out with same-length filler.
pub fn check_quoted(item: &Quoted, lex: &LexiconSet) -> Result<(), String> {
    let ctx = tokenize(item.context);
    let gram = tokenize(item.ngram);
    let keys: Vec<&str> = gram.tokens.iter().map(|t| t.match_key()).collect();
    let start = ctx
        .tokens
        .windows(keys.len())
        .position(|w| w.iter().zip(&keys).all(|(t, k)| t.match_key() == *k))
        .ok_or_else(|| format!("{:?} does not occur in {:?}", item.ngram, item.context))?;
    let surfaces: Vec<String> = ctx.tokens.iter().map(|t| t.surface.clone()).collect();
    let mut blanked = surfaces.clone();
    for s in &mut blanked[start..start + keys.len()] {
        *s = "z".repeat(s.chars().count());
    }
    let with = family_count(&tokenize(&surfaces.join(" ")), item.family, lex)?;
    let without = family_count(&tokenize(&blanked.join(" ")), item.family, lex)?;
    if with > without {
        Ok(())
    } else {
        Err(format!(
            "{:?} ({:?}) not matched in {:?}: count {with} with, {without} without",
            item.ngram, item.family, item.context
        ))
    }
}

/// All lexicon gates; returns one message per failure.
pub fn gate_failures(lex: &LexiconSet) -> Vec<String> {
    let mut f = Vec::new();
    match expand_generalizations(&lex.denial) {
        Ok(e) if e.concretes.len() >= 300 => {}
        Ok(e) => f.push(format!("denial expands to {} concrete ngrams", e.concretes.len())),
        Err(e) => f.push(format!("denial expansion failed: {e}")),
    }
    if lex.cue.patterns.len() != 18 {
        f.push(format!("cue lexicon has {} entries", lex.cue.patterns.len()));
    }
    f.extend(QUOTED.iter().filter_map(|item| check_quoted(item, lex).err()));
    f
}
