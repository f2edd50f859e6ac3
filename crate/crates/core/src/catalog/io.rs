//! Presentation files: JSON with 1-based generator indices.
//!
//! ```json
//! { "name": "heisenberg(3)", "prime": 3, "ngens": 3,
//!   "powers": [[], [], []],
//!   "commutators": [ {"j": 2, "i": 1, "word": [[3, 1]]} ] }
//! ```
//!
//! powers[i] is the word for g_{i+1}^p; a word is a list of
//! [generator, exponent] pairs with strictly increasing generators and
//! exponents in [1, p). Pairs absent from "commutators" commute.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pcgroup::{consistency_check, PcGroup, PcPresentation, Word};

use super::CatalogEntry;

#[derive(Serialize, Deserialize)]
struct FileEntry {
    name: String,
    prime: u32,
    ngens: usize,
    powers: Vec<Vec<(usize, u32)>>,
    commutators: Vec<FileCommutator>,
}

#[derive(Serialize, Deserialize)]
struct FileCommutator {
    j: usize,
    i: usize,
    word: Vec<(usize, u32)>,
}

/// Serialize an entry in the documented file format.
pub fn entry_to_json(entry: &CatalogEntry) -> String {
    let pres = entry.presentation();
    let file = FileEntry {
        name: pres.name().to_string(),
        prime: pres.p(),
        ngens: pres.ngens(),
        powers: (0..pres.ngens()).map(|i| word_to_file(pres.power_word(i))).collect(),
        commutators: pres
            .commutator_entries()
            .map(|(j, i, w)| FileCommutator { j: j + 1, i: i + 1, word: word_to_file(w) })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
    text.push('\n');
    text
}

/// Parse, validate, and consistency-check an entry from file text.
pub fn entry_from_json(text: &str) -> Result<CatalogEntry> {
    let file: FileEntry =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("presentation file: {e}")))?;
    if file.powers.len() != file.ngens {
        return Err(Error::Parse(format!(
            "presentation file: {} power words for ngens = {}",
            file.powers.len(),
            file.ngens
        )));
    }
    let powers: Vec<Word> = file
        .powers
        .iter()
        .enumerate()
        .map(|(i, w)| word_from_file(w, &format!("power word of g{}", i + 1)))
        .collect::<Result<_>>()?;
    let mut commutators = BTreeMap::new();
    for c in &file.commutators {
        if c.j == 0 || c.i == 0 {
            return Err(Error::Parse(
                "presentation file: generator indices are 1-based; found 0".to_string(),
            ));
        }
        let what = format!("word of [g{}, g{}]", c.j, c.i);
        let word = word_from_file(&c.word, &what)?;
        if commutators.insert((c.j - 1, c.i - 1), word).is_some() {
            return Err(Error::Parse(format!(
                "presentation file: duplicate commutator pair [g{}, g{}]",
                c.j, c.i
            )));
        }
    }
    let pres = PcPresentation::new(file.name, file.prime, file.ngens, powers, commutators)?;
    let grp = PcGroup::new(pres.clone())?;
    let report = consistency_check(&grp, 0);
    if !report.passed {
        let triple = report
            .witness
            .as_ref()
            .map(|w| {
                w.iter().map(|x| grp.format_element(x)).collect::<Vec<_>>().join(", ")
            })
            .unwrap_or_else(|| "unknown".to_string());
        return Err(Error::Input(format!(
            "inconsistent presentation: associativity fails on ({triple})"
        )));
    }
    Ok(CatalogEntry::from_parts(pres, "presentation file", Vec::new()))
}

pub fn load(path: &Path) -> Result<CatalogEntry> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    entry_from_json(&text).map_err(|e| prefix_path(path, e))
}

pub fn save(entry: &CatalogEntry, path: &Path) -> Result<()> {
    fs::write(path, entry_to_json(entry))
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn prefix_path(path: &Path, err: Error) -> Error {
    match err {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn word_to_file(word: &Word) -> Vec<(usize, u32)> {
    word.iter().map(|&(idx, exp)| (idx + 1, exp)).collect()
}

fn word_from_file(word: &[(usize, u32)], what: &str) -> Result<Word> {
    let mut out = Word::with_capacity(word.len());
    for &(idx, exp) in word {
        if idx == 0 {
            return Err(Error::Parse(format!(
                "{what}: generator indices are 1-based; found 0"
            )));
        }
        out.push((idx - 1, exp));
    }
    Ok(out)
}
