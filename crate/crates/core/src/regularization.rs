//! Harmonic and shuffle regularizations as polynomials in `T` whose
//! coefficients are rational combinations of admissible multiple zeta symbols.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::index::{b_binom, compositions_below};
use crate::{Bullet, Error, Index, LinComb, Result};

/// Rational combination of symbols `zeta(k)` with `k` admissible.
/// Invariant: no zero coefficients; the empty index stands for 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MzvCombo(BTreeMap<Index, BigRational>);

impl MzvCombo {
    pub fn zero() -> Self {
        MzvCombo::default()
    }

    pub fn one() -> Self {
        MzvCombo::symbol(Index::empty())
    }

    pub fn symbol(k: Index) -> Self {
        debug_assert!(k.is_admissible());
        MzvCombo(BTreeMap::from([(k, BigRational::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Index, &BigRational)> {
        self.0.iter()
    }

    pub fn coefficient(&self, k: &Index) -> BigRational {
        self.0.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, k: Index, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &MzvCombo) -> MzvCombo {
        let mut out = self.clone();
        for (k, c) in &other.0 {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MzvCombo {
        let mut out = MzvCombo::zero();
        for (k, d) in &self.0 {
            out.add_term(k.clone(), d * c);
        }
        out
    }

    fn from_lincomb(w: &LinComb) -> Result<MzvCombo> {
        let mut out = MzvCombo::zero();
        for (k, c) in w.index_terms()? {
            if !k.is_admissible() {
                return Err(Error::NotAdmissible(k.to_string()));
            }
            out.add_term(k, c);
        }
        Ok(out)
    }

    fn to_lincomb(&self) -> LinComb {
        let mut w = LinComb::zero();
        for (k, c) in &self.0 {
            w.add_index_term(k, c.clone());
        }
        w
    }

    /// Symbol product, normalized through the bullet product of words.
    pub fn product(&self, other: &MzvCombo, bullet: Bullet) -> MzvCombo {
        let w = bullet
            .product(&self.to_lincomb(), &other.to_lincomb())
            .expect("admissible words lie in H^1");
        MzvCombo::from_lincomb(&w).expect("products of admissible words are admissible")
    }
}

impl fmt::Display for MzvCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, c)| if k.is_empty() { c.to_string() } else { format!("{c}*z({k})") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Serialize for MzvCombo {
    /// `{"index": "p/q"}`; the key `""` is the constant term.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, c) in &self.0 {
            map.serialize_entry(&k.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

/// Polynomial in `T`: `coeffs[j]` multiplies `T^j`. Invariant: no trailing zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RegPolynomial {
    coeffs: Vec<MzvCombo>,
}

impl RegPolynomial {
    pub fn zero() -> Self {
        RegPolynomial::default()
    }

    pub fn constant(c: MzvCombo) -> Self {
        RegPolynomial { coeffs: vec![c] }.normalized()
    }

    pub fn coeffs(&self) -> &[MzvCombo] {
        &self.coeffs
    }

    /// Degree in `T`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> MzvCombo {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(MzvCombo::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, other: &RegPolynomial) -> RegPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|j| {
                let a = self.coeffs.get(j).cloned().unwrap_or_default();
                match other.coeffs.get(j) {
                    Some(b) => a.add(b),
                    None => a,
                }
            })
            .collect();
        RegPolynomial { coeffs }.normalized()
    }

    pub fn scale(&self, c: &BigRational) -> RegPolynomial {
        RegPolynomial { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }.normalized()
    }

    pub fn times_t(&self) -> RegPolynomial {
        if self.coeffs.is_empty() {
            return RegPolynomial::zero();
        }
        let mut coeffs = vec![MzvCombo::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        RegPolynomial { coeffs }
    }

    pub fn product(&self, other: &RegPolynomial, bullet: Bullet) -> RegPolynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return RegPolynomial::zero();
        }
        let mut coeffs = vec![MzvCombo::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.product(b, bullet));
            }
        }
        RegPolynomial { coeffs }.normalized()
    }
}

impl fmt::Display for RegPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("({c})"),
                1 => format!("({c})*T"),
                _ => format!("({c})*T^{j}"),
            })
            .collect();
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Regularizes monomials by peeling trailing `z_1`s, memoized per call.
struct Regularizer {
    bullet: Bullet,
    memo: HashMap<Index, RegPolynomial>,
}

impl Regularizer {
    fn index(&mut self, k: &Index) -> RegPolynomial {
        if let Some(p) = self.memo.get(k) {
            return p.clone();
        }
        let result = if k.is_admissible() {
            RegPolynomial::constant(MzvCombo::symbol(k.clone()))
        } else {
            // z_{k'} . z_1 = m z_k + (terms with fewer trailing ones)
            let m = k.trailing_ones();
            let head = k.prefix(k.depth() - 1).expect("non-admissible index is non-empty");
            let one = Index::from_vec_unchecked(vec![1]);
            let product = self
                .bullet
                .product(&LinComb::from_index(&head), &LinComb::from_index(&one))
                .expect("index words lie in H^1");
            let mut acc = self.index(&head).times_t();
            for (h, c) in product.index_terms().expect("products stay in H^1") {
                if &h == k {
                    debug_assert_eq!(c, BigRational::from_integer(BigInt::from(m)));
                    continue;
                }
                acc = acc.add(&self.index(&h).scale(&-c));
            }
            acc.scale(&BigRational::new(BigInt::one(), BigInt::from(m)))
        };
        self.memo.insert(k.clone(), result.clone());
        result
    }
}

/// Unique algebra map to `Z[T]`-polynomials fixing `H^0` and sending `z_1` to `T`.
pub fn regularize(w: &LinComb, bullet: Bullet) -> Result<RegPolynomial> {
    let mut reg = Regularizer { bullet, memo: HashMap::new() };
    let mut acc = RegPolynomial::zero();
    for (k, c) in w.index_terms()? {
        acc = acc.add(&reg.index(&k).scale(&c));
    }
    Ok(acc)
}

pub fn zeta_reg(k: &Index, bullet: Bullet) -> RegPolynomial {
    Regularizer { bullet, memo: HashMap::new() }.index(k)
}

/// Constant term of the regularization.
pub fn zeta_reg_at_zero(k: &Index, bullet: Bullet) -> MzvCombo {
    zeta_reg(k, bullet).constant_term()
}

/// Coefficients of `t^0 .. t^{N-1}` as symbol combinations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicSeries {
    pub order: usize,
    pub coeffs: Vec<MzvCombo>,
}

impl SymbolicSeries {
    pub fn sub(&self, other: &SymbolicSeries) -> SymbolicSeries {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(&b.scale(&-BigRational::one())))
            .collect();
        SymbolicSeries { order: self.order, coeffs }
    }
}

/// Limit of the bullet t-adic symmetric value, expressed through regularized symbols.
pub fn zeta_hat_symbolic(k: &Index, bullet: Bullet, order: usize) -> Result<SymbolicSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("series order N must be at least 1".into()));
    }
    let mut reg = Regularizer { bullet, memo: HashMap::new() };
    let mut coeffs = vec![MzvCombo::zero(); order];
    for i in 0..=k.depth() {
        let (prefix, _, suffix) = k.slices(i)?;
        let head = reg.index(&prefix).constant_term();
        if head.is_zero() {
            continue;
        }
        let sign = if suffix.weight() % 2 == 1 { -BigRational::one() } else { BigRational::one() };
        for l in compositions_below(suffix.depth(), order as u32) {
            let c = BigRational::from_integer(b_binom(suffix.entries(), &l)?) * &sign;
            let tail = reg.index(&suffix.add_composition(&l)?.reversed()).constant_term();
            let w: u32 = l.iter().sum();
            coeffs[w as usize] = coeffs[w as usize].add(&head.product(&tail, bullet).scale(&c));
        }
    }
    Ok(SymbolicSeries { order, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn combo(terms: &[(&str, i64, i64)]) -> MzvCombo {
        let mut c = MzvCombo::zero();
        for &(k, n, d) in terms {
            c.add_term(idx(k), q(n, d));
        }
        c
    }

    #[test]
    fn regularized_double_ones() {
        // (T^2 - zeta(2)) / 2 and T^2 / 2
        let star = zeta_reg(&idx("1,1"), Bullet::Star);
        assert_eq!(star.coeffs(), &[combo(&[("2", -1, 2)]), MzvCombo::zero(), combo(&[("", 1, 2)])]);
        let sh = zeta_reg(&idx("1,1"), Bullet::Shuffle);
        assert_eq!(sh.coeffs(), &[MzvCombo::zero(), MzvCombo::zero(), combo(&[("", 1, 2)])]);
    }

    #[test]
    fn single_one_is_t() {
        for b in Bullet::ALL {
            let r = zeta_reg(&idx("1"), b);
            assert_eq!(r.degree(), Some(1));
            assert!(r.constant_term().is_zero());
        }
    }

    #[test]
    fn admissible_is_fixed() {
        let w = LinComb::from_index(&idx("2,3")).scale(&q(3, 1));
        assert_eq!(
            regularize(&w, Bullet::Shuffle).unwrap(),
            RegPolynomial::constant(combo(&[("2,3", 3, 1)]))
        );
        assert!(regularize(&LinComb::from_word("x".parse().unwrap()), Bullet::Star).is_err());
    }

    #[test]
    fn symbolic_empty_and_admissible_depth_one() {
        let s = zeta_hat_symbolic(&idx(""), Bullet::Star, 2).unwrap();
        assert_eq!(s.coeffs, vec![MzvCombo::one(), MzvCombo::zero()]);
        // zeta_hat(2) = 2 zeta(2) + 2 zeta(3) t + ...
        let s = zeta_hat_symbolic(&idx("2"), Bullet::Star, 2).unwrap();
        assert_eq!(s.coeffs, vec![combo(&[("2", 2, 1)]), combo(&[("3", 2, 1)])]);
    }

    fn small_index() -> impl Strategy<Value = Index> {
        proptest::collection::vec(1u32..4, 0..4).prop_map(|v| Index::new(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn degree_counts_trailing_ones(k in small_index()) {
            for b in Bullet::ALL {
                prop_assert_eq!(zeta_reg(&k, b).degree(), Some(k.trailing_ones()));
            }
        }

        #[test]
        fn regularization_is_multiplicative(k in small_index(), l in small_index()) {
            for b in Bullet::ALL {
                let w = b.product(&LinComb::from_index(&k), &LinComb::from_index(&l)).unwrap();
                let lhs = regularize(&w, b).unwrap();
                let rhs = zeta_reg(&k, b).product(&zeta_reg(&l, b), b);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
