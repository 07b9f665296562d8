//! Finite formal linear combinations with exact rational coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` as an `i64`.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A linear combination `Σ c_k · k` over keys `K`. Zero coefficients are never stored,
/// so two combinations are equal iff their term maps are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Linear<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Linear<K> {
    fn default() -> Self {
        Linear {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Linear<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Rational::one())
    }

    pub fn term(key: K, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
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

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Rational> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &Rational) {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), -c.clone());
        }
    }

    pub fn scaled(&self, scale: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, scale);
        out
    }

    pub fn scaled_int(&self, scale: i64) -> Self {
        self.scaled(&rat(scale))
    }

    pub fn neg(&self) -> Self {
        self.scaled_int(-1)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign_ref(other);
        out
    }

    /// Linear extension of a key map `k ↦ Σ c·k'`.
    pub fn map_linear<K2, F>(&self, mut f: F) -> Linear<K2>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Linear<K2>,
    {
        let mut out = Linear::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn try_map_linear<K2, E, F>(&self, mut f: F) -> Result<Linear<K2>, E>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> Result<Linear<K2>, E>,
    {
        let mut out = Linear::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn into_terms(self) -> BTreeMap<K, Rational> {
        self.terms
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Linear<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a Linear<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Linear<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Writes `Σ c·name(k)` as `c*name + ...`, `0` when empty.
pub fn format_linear<K, F>(lin: &Linear<K>, mut name: F) -> String
where
    K: Ord + Clone,
    F: FnMut(&K) -> String,
{
    if lin.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in lin.iter().enumerate() {
        let key = name(k);
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = key == "1";
        if abs.is_one() {
            out.push_str(&key);
        } else if unit {
            out.push_str(&abs.to_string());
        } else {
            out.push_str(&format!("{abs}*{key}"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut a = Linear::term("x", rat(2));
        a.add_term("x", rat(-2));
        assert!(a.is_zero());
        assert_eq!(a, Linear::zero());
    }

    #[test]
    fn formatting() {
        let mut a: Linear<&str> = Linear::zero();
        a.add_term("x", rat(1));
        a.add_term("y", rat_frac(-3, 7));
        a.add_term("1", rat(2));
        assert_eq!(format_linear(&a, |k| k.to_string()), "2 + x - 3/7*y");
        assert_eq!(
            format_linear(&Linear::<&str>::zero(), |k| k.to_string()),
            "0"
        );
    }

    #[test]
    fn sign_pow_handles_negative_exponents() {
        assert_eq!(sign_pow(-1), -1);
        assert_eq!(sign_pow(-4), 1);
        assert_eq!(sign_pow(3), -1);
    }
}
