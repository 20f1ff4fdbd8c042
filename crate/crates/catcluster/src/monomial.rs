//! Highest-weight monomials in the variables `i_p` (Dynkin node `i`,
//! spectral exponent `p`).
//!
//! Text grammar: terms `<int>_<int>` with an optional `^<uint>` multiplicity,
//! separated by whitespace or `*`; the empty string is the trivial monomial.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// One variable `i_p`.
pub type Var = (i32, i32);

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Monomial {
    factors: BTreeMap<Var, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(node: i32, spectral: i32) -> Self {
        let mut factors = BTreeMap::new();
        factors.insert((node, spectral), 1);
        Monomial { factors }
    }

    pub fn from_factors(pairs: &[(Var, u32)]) -> Self {
        let mut m = Monomial::one();
        for &(v, k) in pairs {
            m.mul_var(v, k);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors.get(&v).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.factors.iter().map(|(&v, &k)| (v, k))
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn mul_var(&mut self, v: Var, k: u32) {
        if k == 0 {
            return;
        }
        *self.factors.entry(v).or_insert(0) += k;
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (v, k) in other.factors() {
            out.mul_var(v, k);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut out = Monomial::one();
        for (v, e) in self.factors() {
            out.mul_var(v, e * k);
        }
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.factors()
            .all(|(v, k)| other.exponent(v) >= k)
    }

    /// Exact quotient `self / other`, `None` when not divisible.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.clone();
        for (v, k) in other.factors() {
            let e = out.factors.get_mut(&v)?;
            if *e < k {
                return None;
            }
            *e -= k;
            if *e == 0 {
                out.factors.remove(&v);
            }
        }
        Some(out)
    }

    /// Largest `k` with `other^k | self`; `other` must not be trivial.
    pub fn max_power_of(&self, other: &Monomial) -> u32 {
        debug_assert!(!other.is_one());
        other
            .factors()
            .map(|(v, k)| self.exponent(v) / k)
            .min()
            .unwrap_or(0)
    }

    /// Shifts every spectral exponent by `delta`.
    pub fn spectral_shift(&self, delta: i32) -> Monomial {
        let factors = self
            .factors
            .iter()
            .map(|(&(i, p), &k)| ((i, p + delta), k))
            .collect();
        Monomial { factors }
    }

    pub fn parse(text: &str) -> Result<Monomial> {
        let mut m = Monomial::one();
        for token in text.split(|c: char| c.is_whitespace() || c == '*') {
            if token.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("malformed monomial token `{token}`"));
            let (var_part, mult) = match token.split_once('^') {
                None => (token, 1u32),
                Some((v, m)) => {
                    let mult: u32 = m.parse().map_err(|_| bad())?;
                    if mult == 0 {
                        return Err(Error::Parse(format!(
                            "nonpositive multiplicity in `{token}`"
                        )));
                    }
                    (v, mult)
                }
            };
            let (node, spectral) = var_part.split_once('_').ok_or_else(bad)?;
            let node: i32 = node.parse().map_err(|_| bad())?;
            let spectral: i32 = spectral.parse().map_err(|_| bad())?;
            m.mul_var((node, spectral), mult);
        }
        Ok(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&(i, p), &k) in &self.factors {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{i}_{p}")?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_simple() {
        let m = Monomial::parse("3_0 3_4").unwrap();
        assert_eq!(m.exponent((3, 0)), 1);
        assert_eq!(m.exponent((3, 4)), 1);
        assert_eq!(m.total_degree(), 2);
    }

    #[test]
    fn parse_round_trip_with_powers() {
        let text = "1_1 1_3^4 2_1^3";
        let m = Monomial::parse(text).unwrap();
        assert_eq!(m.to_string(), text);
        assert_eq!(Monomial::parse(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn empty_is_trivial() {
        assert!(Monomial::parse("").unwrap().is_one());
        assert_eq!(Monomial::parse("").unwrap().to_string(), "1");
    }

    #[test]
    fn merged_multiplicities() {
        let m = Monomial::parse("2_1 2_1 2_1^2").unwrap();
        assert_eq!(m.exponent((2, 1)), 4);
    }

    #[test]
    fn negative_spectral_parameter() {
        let m = Monomial::parse("1_-1 3_2").unwrap();
        assert_eq!(m.exponent((1, -1)), 1);
    }

    #[test]
    fn malformed_tokens_rejected() {
        assert!(Monomial::parse("3_").is_err());
        assert!(Monomial::parse("x_1").is_err());
        assert!(Monomial::parse("3_1^0").is_err());
    }

    #[test]
    fn division_and_powers() {
        let m = Monomial::parse("1_1^3 2_1").unwrap();
        let d = Monomial::parse("1_1 2_1").unwrap();
        assert_eq!(m.div(&d).unwrap(), Monomial::parse("1_1^2").unwrap());
        assert!(d.div(&m).is_none());
        assert_eq!(m.max_power_of(&Monomial::parse("1_1").unwrap()), 3);
    }
}
