use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::word::Letter;
use crate::words::layout::test_set;
use crate::words::MAX_EXACT_LETTER;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Good,
    Bad,
    Neither,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Good => "good",
            Verdict::Bad => "bad",
            Verdict::Neither => "neither",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "good" => Ok(Verdict::Good),
            "bad" => Ok(Verdict::Bad),
            "neither" => Ok(Verdict::Neither),
            _ => Err(Error::Parse(format!("unknown verdict {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// `None` for words that are neither good nor bad.
    pub minimal: Option<bool>,
}

/// `max_i (1 + α_i − i)`, at least 1.
pub fn horizon(word: &[Letter]) -> Result<u32> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let h = word
        .iter()
        .enumerate()
        .map(|(i, &a)| 1 + a as i64 - (i as i64 + 1))
        .max()
        .unwrap();
    Ok(h.max(1) as u32)
}

/// Whether the last move of `word`, started from `x`, advances the front.
pub fn is_x_good(word: &[Letter], x: &Configuration) -> Result<bool> {
    let (&last, prefix) = word.split_last().ok_or(Error::EmptyWord)?;
    let mut y = x.clone();
    y.apply_word(prefix);
    Ok(last as u64 <= y.front_count())
}

/// `ε_X(α)`; the empty suffix of a one-letter word counts as not `X`-good.
pub fn epsilon(word: &[Letter], x: &Configuration) -> Result<i8> {
    let whole = is_x_good(word, x)? as i8;
    let suffix = if word.len() > 1 {
        is_x_good(&word[1..], x)? as i8
    } else {
        0
    };
    Ok(whole - suffix)
}

fn check_letters(word: &[Letter]) -> Result<()> {
    if let Some(&a) = word.iter().find(|&&a| a > MAX_EXACT_LETTER) {
        return Err(Error::SizeLimit {
            what: "letter",
            value: a as u64,
            limit: MAX_EXACT_LETTER as u64,
        });
    }
    Ok(())
}

/// Verdict of `word` over the layouts of its horizon.
pub fn verdict(word: &[Letter]) -> Result<Verdict> {
    check_letters(word)?;
    verdict_on(word, &test_set(horizon(word)?)?)
}

/// Verdict of `word` over an explicit set of start configurations.
pub fn verdict_on(word: &[Letter], configs: &[Configuration]) -> Result<Verdict> {
    let mut any_good = false;
    let mut any_bad = false;
    for x in configs {
        if is_x_good(word, x)? {
            any_good = true;
        } else {
            any_bad = true;
        }
        if any_good && any_bad {
            return Ok(Verdict::Neither);
        }
    }
    Ok(if any_good {
        Verdict::Good
    } else {
        Verdict::Bad
    })
}

/// Classifier with a verdict memo shared by all suffix queries.
#[derive(Debug, Default, Clone)]
pub struct Classifier {
    memo: HashMap<Vec<Letter>, Verdict>,
}

impl Classifier {
    pub fn new() -> Self {
        Self::default()
    }

    /// Seeds the memo with an already known verdict.
    pub fn insert_known(&mut self, word: Vec<Letter>, verdict: Verdict) {
        self.memo.insert(word, verdict);
    }

    pub fn known(&self) -> impl Iterator<Item = (&[Letter], Verdict)> {
        self.memo.iter().map(|(w, v)| (w.as_slice(), *v))
    }

    pub fn verdict(&mut self, word: &[Letter]) -> Result<Verdict> {
        if let Some(&v) = self.memo.get(word) {
            return Ok(v);
        }
        let v = verdict(word)?;
        self.memo.insert(word.to_vec(), v);
        Ok(v)
    }

    pub fn classify(&mut self, word: &[Letter]) -> Result<Classification> {
        let verdict = self.verdict(word)?;
        let minimal = match verdict {
            Verdict::Neither => None,
            v => {
                let mut minimal = true;
                for k in 1..word.len() {
                    if self.verdict(&word[k..])? == v {
                        minimal = false;
                        break;
                    }
                }
                Some(minimal)
            }
        };
        Ok(Classification { verdict, minimal })
    }
}

/// Classifies a single word with a throwaway memo.
pub fn classify(word: &[Letter]) -> Result<Classification> {
    Classifier::new().classify(word)
}
