//! Words over the two-letter alphabet `{x, y}`, with `z_k = y x^{k-1}`.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Index, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `z_{k_1} ... z_{k_r}`.
    pub fn from_index(k: &Index) -> Self {
        let mut v = Vec::with_capacity(k.weight() as usize);
        for &e in k.entries() {
            v.push(Letter::Y);
            v.extend(std::iter::repeat_n(Letter::X, e as usize - 1));
        }
        Word(v)
    }

    pub fn x_power(n: u32) -> Self {
        Word(vec![Letter::X; n as usize])
    }

    pub fn in_h1(&self) -> bool {
        self.0.first().is_none_or(|&l| l == Letter::Y)
    }

    pub fn in_h0(&self) -> bool {
        self.0.is_empty() || (self.0[0] == Letter::Y && self.0[self.0.len() - 1] == Letter::X)
    }

    /// Inverse of [`Word::from_index`] on `H^1`.
    pub fn to_index(&self) -> Result<Index> {
        if !self.in_h1() {
            return Err(Error::NotInH1(self.to_string()));
        }
        let mut v: Vec<u32> = Vec::new();
        for &l in &self.0 {
            match l {
                Letter::Y => v.push(1),
                Letter::X => *v.last_mut().expect("H^1 word starts with y") += 1,
            }
        }
        Ok(Index::from_vec_unchecked(v))
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "1" || t == "∅" {
            return Ok(Word::empty());
        }
        t.chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                _ => Err(Error::Parse(format!("`{s}` contains letter `{c}` outside {{x, y}}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}
