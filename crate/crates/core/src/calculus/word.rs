use std::fmt;

use crate::error::{Error, Result};

/// A word in the letters `g_1, ..., g_d`; letters are stored 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::Input("word letters are numbered from 1".into()));
        }
        Ok(Word { letters })
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(k: usize) -> Self {
        Word::new(vec![k]).expect("letter index from 1")
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_letter(&self) -> usize {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        Word { letters: self.letters.iter().chain(&other.letters).copied().collect() }
    }

    /// `self` with `g_k` inserted before position `at`.
    pub fn insert(&self, at: usize, k: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.insert(at, k);
        Word { letters }
    }

    /// All words of length exactly `len` over `d` letters, in lexicographic order.
    pub fn all(d: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out.iter().flat_map(|w| (1..=d).map(move |k| w.insert(w.len(), k))).collect();
        }
        out
    }

    /// Parses `g1g2g1`; the empty word is written `e` or as an empty string.
    pub fn parse(text: &str) -> Result<Word> {
        let t = text.trim();
        if t.is_empty() || t == "e" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for part in t.split('g').skip(1) {
            match part.parse::<usize>() {
                Ok(k) if k >= 1 => letters.push(k),
                _ => return Err(Error::Input(format!("bad word {text:?}: expected letters like g1g2"))),
            }
        }
        if !t.starts_with('g') {
            return Err(Error::Input(format!("bad word {text:?}: expected letters like g1g2")));
        }
        Ok(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for k in &self.letters {
            write!(f, "g{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = Word::parse("g1g2g10").unwrap();
        assert_eq!(w.letters(), &[1, 2, 10]);
        assert_eq!(w.to_string(), "g1g2g10");
        assert_eq!(Word::parse("e").unwrap(), Word::empty());
        assert_eq!(Word::parse("").unwrap().to_string(), "e");
        assert!(Word::parse("g0").is_err());
        assert!(Word::parse("x1").is_err());
        assert!(Word::parse("g1g").is_err());
    }

    #[test]
    fn enumeration() {
        let ws = Word::all(2, 2);
        let texts: Vec<_> = ws.iter().map(Word::to_string).collect();
        assert_eq!(texts, ["g1g1", "g1g2", "g2g1", "g2g2"]);
        assert_eq!(Word::all(3, 0), vec![Word::empty()]);
    }
}
