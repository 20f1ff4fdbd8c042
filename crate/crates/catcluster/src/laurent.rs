//! Exact multivariate Laurent polynomials over arbitrary-precision integers.
//!
//! Cluster variables live in `Z[x_i^{±1}, f_j]`: Laurent in the exchangeable
//! initial variables, polynomial in the frozen ones. Exponent vectors are
//! maps keyed by variable id (stored densely with trailing zeros trimmed),
//! coefficients are [`BigInt`]s, and division is exact division with any
//! nonzero remainder reported as a hard error.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector of one Laurent monomial, indexed by variable id.
///
/// Trailing zeros are trimmed so that equal maps compare equal regardless of
/// how many variables a context declares. Ordering is lexicographic by
/// variable id with missing entries read as zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exponents(Vec<i32>);

impl Exponents {
    pub fn new() -> Self {
        Exponents(Vec::new())
    }

    pub fn var(id: usize, power: i32) -> Self {
        if power == 0 {
            return Exponents::new();
        }
        let mut v = vec![0; id + 1];
        v[id] = power;
        Exponents(v)
    }

    pub fn from_vec(mut v: Vec<i32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Exponents(v)
    }

    pub fn get(&self, id: usize) -> i32 {
        self.0.get(id).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Ids with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        let n = self.0.len().max(other.0.len());
        Exponents::from_vec((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }

    pub fn sub(&self, other: &Exponents) -> Exponents {
        let n = self.0.len().max(other.0.len());
        Exponents::from_vec((0..n).map(|i| self.get(i) - other.get(i)).collect())
    }

    pub fn mul_scalar(&self, k: i32) -> Exponents {
        Exponents::from_vec(self.0.iter().map(|&e| e * k).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => {}
                ne => return ne,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate Laurent polynomial with `BigInt` coefficients.
///
/// The zero polynomial is the empty term map; no zero coefficients are
/// stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents::new(), c);
        }
        LaurentPoly { terms }
    }

    /// The generator `x_id`.
    pub fn variable(id: usize) -> Self {
        LaurentPoly::monomial(Exponents::var(id, 1), BigInt::one())
    }

    pub fn monomial(e: Exponents, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading term in the lexicographic order.
    pub fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Minimum exponent of variable `id` over all terms; `0` for the zero
    /// polynomial.
    pub fn min_exponent(&self, id: usize) -> i32 {
        self.terms.keys().map(|e| e.get(id)).min().unwrap_or(0)
    }

    pub fn max_var_id(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.support().map(|(i, _)| i + 1).max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    fn insert_add(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_term(&self, e: &Exponents, c: &BigInt) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        if c.is_zero() {
            return out;
        }
        for (e1, c1) in &self.terms {
            out.terms.insert(e1.add(e), c1 * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact division in the Laurent ring.
    ///
    /// Repeated leading-term elimination in the lexicographic order: when the
    /// quotient exists its leading terms are discovered one by one and the
    /// loop runs exactly `|quotient|` steps. A coefficient that fails to
    /// divide, or a quotient exponent escaping the box spanned by
    /// `min(num)-max(den)` and `max(num)-min(den)`, certifies a nonzero
    /// remainder and aborts.
    pub fn div_exact(&self, den: &LaurentPoly) -> Result<LaurentPoly> {
        if den.is_zero() {
            return Err(Error::InvariantViolation("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let nvars = self.max_var_id().max(den.max_var_id());
        let mut lo = vec![i64::MAX; nvars];
        let mut hi = vec![i64::MIN; nvars];
        for (e, _) in self.terms() {
            for i in 0..nvars {
                lo[i] = lo[i].min(e.get(i) as i64);
                hi[i] = hi[i].max(e.get(i) as i64);
            }
        }
        let (mut dlo, mut dhi) = (vec![i64::MAX; nvars], vec![i64::MIN; nvars]);
        for (e, _) in den.terms() {
            for i in 0..nvars {
                dlo[i] = dlo[i].min(e.get(i) as i64);
                dhi[i] = dhi[i].max(e.get(i) as i64);
            }
        }
        let in_box = |e: &Exponents| {
            (0..nvars).all(|i| {
                let v = e.get(i) as i64;
                v >= lo[i] - dhi[i] && v <= hi[i] - dlo[i]
            })
        };

        let (dlead_e, dlead_c) = den.leading().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((rlead_e, rlead_c)) = rem.leading() {
            let qe = rlead_e.sub(dlead_e);
            let (qc, rest) = num_integer::Integer::div_rem(rlead_c, dlead_c);
            if !rest.is_zero() || !in_box(&qe) {
                return Err(Error::InvariantViolation(
                    "Laurent division left a nonzero remainder".into(),
                ));
            }
            rem = rem.sub(&den.mul_term(&qe, &qc));
            quot.insert_add(qe, qc);
        }
        Ok(quot)
    }

    /// Renders with the supplied variable names, terms in descending
    /// lexicographic order.
    pub fn display_with<'a>(&'a self, names: &'a dyn Fn(usize) -> String) -> LaurentDisplay<'a> {
        LaurentDisplay { poly: self, names }
    }
}

pub struct LaurentDisplay<'a> {
    poly: &'a LaurentPoly,
    names: &'a dyn Fn(usize) -> String,
}

impl fmt::Display for LaurentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.poly.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let mut head = String::new();
            if !mag.is_one() || e.is_unit() {
                head.push_str(&mag.to_string());
            }
            for (id, p) in e.support() {
                if !head.is_empty() {
                    head.push('*');
                }
                head.push_str(&(self.names)(id));
                if p != 1 {
                    head.push_str(&format!("^{p}"));
                }
            }
            write!(f, "{head}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::variable(i)
    }

    #[test]
    fn exponent_order_pads_with_zeros() {
        let a = Exponents::from_vec(vec![1, -1]);
        let b = Exponents::from_vec(vec![1]);
        assert!(a < b);
        assert_eq!(Exponents::from_vec(vec![1, 0]), b);
    }

    #[test]
    fn mul_and_add() {
        let p = x(0).add(&x(1));
        let q = p.mul(&p);
        assert_eq!(q.num_terms(), 3);
        assert_eq!(q.coeff(&Exponents::from_vec(vec![1, 1])), BigInt::from(2));
    }

    #[test]
    fn exact_division_round_trip() {
        let p = x(0).add(&x(1)).add(&LaurentPoly::one());
        let q = x(0).mul(&x(1)).sub(&LaurentPoly::constant(BigInt::from(3)));
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&p).unwrap(), q);
        assert_eq!(prod.div_exact(&q).unwrap(), p);
    }

    #[test]
    fn division_by_laurent_monomial() {
        let p = x(0).add(&x(1));
        let m = LaurentPoly::monomial(Exponents::var(0, -2), BigInt::from(1));
        let q = p.div_exact(&m).unwrap();
        assert_eq!(q.min_exponent(0), 2);
    }

    #[test]
    fn inexact_division_is_an_error() {
        let p = x(0).add(&LaurentPoly::one());
        let d = x(1).add(&LaurentPoly::one());
        assert!(p.div_exact(&d).is_err());
        let telescoping = x(0).pow(5).sub(&LaurentPoly::one());
        let lin = x(0).sub(&LaurentPoly::one());
        assert_eq!(telescoping.div_exact(&lin).unwrap().num_terms(), 5);
    }
}
