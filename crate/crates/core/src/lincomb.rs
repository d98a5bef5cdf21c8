//! Finite rational linear combinations of words, with the harmonic (stuffle)
//! and shuffle products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Index, Result, Word};

/// Which of the two products a computation is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Bullet {
    #[serde(rename = "star")]
    Star,
    #[serde(rename = "sh")]
    Shuffle,
}

impl Bullet {
    pub const ALL: [Bullet; 2] = [Bullet::Star, Bullet::Shuffle];

    pub fn name(self) -> &'static str {
        match self {
            Bullet::Star => "star",
            Bullet::Shuffle => "sh",
        }
    }

    pub fn product(self, a: &LinComb, b: &LinComb) -> Result<LinComb> {
        match self {
            Bullet::Star => a.harmonic(b),
            Bullet::Shuffle => Ok(a.shuffle(b)),
        }
    }
}

impl fmt::Display for Bullet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Bullet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "star" | "*" | "harmonic" | "stuffle" => Ok(Bullet::Star),
            "sh" | "shuffle" => Ok(Bullet::Shuffle),
            other => Err(Error::Parse(format!("unknown product `{other}` (expected star or sh)"))),
        }
    }
}

/// Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<Word, BigRational>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    /// The empty word with coefficient 1.
    pub fn one() -> Self {
        LinComb::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        LinComb::monomial(w, BigRational::one())
    }

    pub fn monomial(w: Word, c: BigRational) -> Self {
        let mut out = LinComb::zero();
        out.add_term(w, c);
        out
    }

    /// `z_k`.
    pub fn from_index(k: &Index) -> Self {
        LinComb::from_word(Word::from_index(k))
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_index_term(&mut self, k: &Index, c: BigRational) {
        self.add_term(Word::from_index(k), c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn in_h1(&self) -> bool {
        self.terms.keys().all(Word::in_h1)
    }

    pub fn in_h0(&self) -> bool {
        self.terms.keys().all(Word::in_h0)
    }

    /// Terms re-keyed by index; fails outside `H^1`.
    pub fn index_terms(&self) -> Result<Vec<(Index, BigRational)>> {
        self.terms.iter().map(|(w, c)| Ok((w.to_index()?, c.clone()))).collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = LinComb::zero();
        if c.is_zero() {
            return out;
        }
        for (w, d) in &self.terms {
            out.terms.insert(w.clone(), d * c);
        }
        out
    }

    pub fn add(&self, other: &LinComb) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &LinComb) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &LinComb) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    /// Bilinear extension of word concatenation.
    pub fn concat(&self, other: &LinComb) -> Self {
        let mut out = LinComb::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn append_word(&self, w: &Word) -> Self {
        let mut out = LinComb::zero();
        for (u, a) in &self.terms {
            out.terms.insert(u.concat(w), a.clone());
        }
        out
    }

    /// Harmonic product on `H^1`.
    pub fn harmonic(&self, other: &LinComb) -> Result<LinComb> {
        let left = self.index_terms()?;
        let right = other.index_terms()?;
        let mut out = LinComb::zero();
        for (k, a) in &left {
            for (l, b) in &right {
                let ab = a * b;
                for (m, n) in harmonic_indices(k.entries(), l.entries()) {
                    out.add_term(Word::from_index(&Index::from_vec_unchecked(m)), &ab * BigRational::from_integer(n));
                }
            }
        }
        Ok(out)
    }

    /// Shuffle product on words.
    pub fn shuffle(&self, other: &LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a * b;
                for (w, n) in shuffle_words(u.letters(), v.letters()) {
                    out.add_term(Word::from_letters(w), &ab * BigRational::from_integer(n));
                }
            }
        }
        out
    }
}

type Counts<T> = HashMap<Vec<T>, BigInt>;

fn extend_all<T: Clone + Eq + std::hash::Hash>(src: &Counts<T>, last: T, dst: &mut Counts<T>) {
    for (w, n) in src {
        let mut v = w.clone();
        v.push(last.clone());
        *dst.entry(v).or_insert_with(BigInt::zero) += n;
    }
}

/// Multiset of `a * b` on index entries: `table[i][j]` is the product of prefixes
/// of lengths `i` and `j`, filled row by row.
pub fn harmonic_indices(a: &[u32], b: &[u32]) -> Counts<u32> {
    let unit: Counts<u32> = HashMap::from([(Vec::new(), BigInt::one())]);
    let mut prev: Vec<Counts<u32>> = Vec::with_capacity(b.len() + 1);
    prev.push(unit);
    for j in 1..=b.len() {
        let mut cur = Counts::new();
        extend_all(&prev[j - 1], b[j - 1], &mut cur);
        prev.push(cur);
    }
    for i in 1..=a.len() {
        let mut row: Vec<Counts<u32>> = Vec::with_capacity(b.len() + 1);
        let mut first = Counts::new();
        extend_all(&prev[0], a[i - 1], &mut first);
        row.push(first);
        for j in 1..=b.len() {
            let mut cur = Counts::new();
            extend_all(&prev[j], a[i - 1], &mut cur);
            extend_all(&row[j - 1], b[j - 1], &mut cur);
            extend_all(&prev[j - 1], a[i - 1] + b[j - 1], &mut cur);
            row.push(cur);
        }
        prev = row;
    }
    prev.pop().unwrap_or_default()
}

/// Multiset of shuffles of two letter sequences.
pub fn shuffle_words<T: Clone + Eq + std::hash::Hash>(a: &[T], b: &[T]) -> Counts<T> {
    let unit: Counts<T> = HashMap::from([(Vec::new(), BigInt::one())]);
    let mut prev: Vec<Counts<T>> = Vec::with_capacity(b.len() + 1);
    prev.push(unit);
    for j in 1..=b.len() {
        let mut cur = Counts::new();
        extend_all(&prev[j - 1], b[j - 1].clone(), &mut cur);
        prev.push(cur);
    }
    for i in 1..=a.len() {
        let mut row: Vec<Counts<T>> = Vec::with_capacity(b.len() + 1);
        let mut first = Counts::new();
        extend_all(&prev[0], a[i - 1].clone(), &mut first);
        row.push(first);
        for j in 1..=b.len() {
            let mut cur = Counts::new();
            extend_all(&prev[j], a[i - 1].clone(), &mut cur);
            extend_all(&row[j - 1], b[j - 1].clone(), &mut cur);
            row.push(cur);
        }
        prev = row;
    }
    prev.pop().unwrap_or_default()
}

impl fmt::Display for LinComb {
    /// `c1*w1 + c2*w2`, with `1` for the empty word and `0` for the zero combination.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let word = if w.is_empty() { "1".to_string() } else { w.to_string() };
            write!(f, "{c}*{word}")?;
        }
        Ok(())
    }
}

impl FromStr for LinComb {
    type Err = Error;

    /// Accepts `c*w + c*w` or bare words; see the `Display` form.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let mut out = LinComb::zero();
        if t == "0" || t.is_empty() {
            return Ok(out);
        }
        for part in t.split(" + ") {
            let part = part.trim();
            let (c, w) = match part.split_once('*') {
                Some((c, w)) => (crate::scalar::parse_rational(c)?, w.parse::<Word>()?),
                None => (BigRational::one(), part.parse::<Word>()?),
            };
            out.add_term(w, c);
        }
        Ok(out)
    }
}
