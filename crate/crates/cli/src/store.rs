//! Append-only store of classified words, one JSON record per line.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use infbin::words::{Classification, Classifier, Verdict};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const STORE_ENV: &str = "INFBIN_WORD_STORE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordStoreRecord {
    pub word: Vec<u32>,
    pub verdict: Verdict,
    pub minimal: Option<bool>,
}

#[derive(Debug, Error)]
#[error("word store disagrees on {word:?}: stored {stored:?}, computed {computed:?}")]
pub struct Contradiction {
    pub word: Vec<u32>,
    pub stored: WordStoreRecord,
    pub computed: WordStoreRecord,
}

pub struct WordStore {
    path: PathBuf,
    records: HashMap<Vec<u32>, WordStoreRecord>,
}

impl WordStore {
    pub fn open(path: &Path) -> Result<Self> {
        let mut records = HashMap::new();
        if path.exists() {
            let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            for (i, line) in BufReader::new(f).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let r: WordStoreRecord = serde_json::from_str(&line)
                    .with_context(|| format!("{}:{}: bad record", path.display(), i + 1))?;
                records.insert(r.word.clone(), r);
            }
        }
        Ok(WordStore {
            path: path.to_path_buf(),
            records,
        })
    }

    #[cfg(test)]
    pub fn get(&self, word: &[u32]) -> Option<&WordStoreRecord> {
        self.records.get(word)
    }

    /// Seeds a classifier with every stored verdict.
    pub fn prime(&self, c: &mut Classifier) {
        for r in self.records.values() {
            c.insert_known(r.word.clone(), r.verdict);
        }
    }

    /// Appends records not yet stored. A record that contradicts a stored
    /// one is an error and nothing is written.
    pub fn append(&mut self, new: impl IntoIterator<Item = WordStoreRecord>) -> Result<usize> {
        let mut fresh = Vec::new();
        for r in new {
            match self.records.get(&r.word) {
                Some(old)
                    if old.verdict != r.verdict
                        || (old.minimal.is_some()
                            && r.minimal.is_some()
                            && old.minimal != r.minimal) =>
                {
                    return Err(Contradiction {
                        word: r.word.clone(),
                        stored: old.clone(),
                        computed: r,
                    }
                    .into());
                }
                Some(_) => {}
                None => fresh.push(r),
            }
        }
        if fresh.is_empty() {
            return Ok(0);
        }
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .with_context(|| format!("opening {}", self.path.display()))?;
        let mut buf = String::new();
        for r in &fresh {
            buf.push_str(&serde_json::to_string(r)?);
            buf.push('\n');
        }
        f.write_all(buf.as_bytes())?;
        let n = fresh.len();
        for r in fresh {
            self.records.insert(r.word.clone(), r);
        }
        Ok(n)
    }
}

pub fn record(word: &[u32], c: Classification) -> WordStoreRecord {
    WordStoreRecord {
        word: word.to_vec(),
        verdict: c.verdict,
        minimal: c.minimal,
    }
}
