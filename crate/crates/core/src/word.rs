use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

/// A finite sequence of moves, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::InvalidLetter(0));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }

    /// `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The suffix starting at the 1-based position `k`.
    pub fn suffix_from(&self, k: usize) -> Word {
        Word(self.0[k - 1..].to_vec())
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl TryFrom<Vec<Letter>> for Word {
    type Error = Error;

    fn try_from(v: Vec<Letter>) -> Result<Self> {
        Word::new(v)
    }
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Parses `"2,3,2,2"`, optionally wrapped in parentheses.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let v: i64 = part
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer letter: {part:?}")))?;
            if v < 1 || v > Letter::MAX as i64 {
                return Err(Error::InvalidLetter(v));
            }
            letters.push(v as Letter);
        }
        Ok(Word(letters))
    }
}

#[macro_export]
macro_rules! word {
    ($($a:expr),* $(,)?) => {
        $crate::word::Word::new(vec![$($a),*]).expect("letters must be positive")
    };
}
