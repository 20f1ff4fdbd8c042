//! Seeds: an exchange matrix together with exact Laurent cluster variables
//! and optional highest-weight-monomial labels.
//!
//! Seeds are immutable values; mutation returns a new seed. Frozen variables
//! are fixed points of every mutation, and the exchange relation is carried
//! out by exact Laurent division, with a nonzero remainder reported as a
//! breach of the Laurent phenomenon.

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::{ExchangeMatrix, NodeId};
use crate::monomial::Monomial;
use crate::roots::RootVec;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Seed {
    pub matrix: ExchangeMatrix,
    vars: BTreeMap<NodeId, LaurentPoly>,
    pub labels: Option<BTreeMap<NodeId, Monomial>>,
    /// Fixed assignment node -> Laurent variable id, shared by every seed
    /// reachable from the same initial seed.
    var_index: BTreeMap<NodeId, usize>,
}

impl Seed {
    /// The initial seed on `matrix`: each node carries its own generator.
    pub fn initial(matrix: ExchangeMatrix) -> Seed {
        let mut var_index = BTreeMap::new();
        let mut nodes: Vec<NodeId> = matrix.nodes().to_vec();
        nodes.sort_unstable();
        for (idx, &n) in nodes.iter().enumerate() {
            var_index.insert(n, idx);
        }
        let vars = var_index
            .iter()
            .map(|(&n, &idx)| (n, LaurentPoly::variable(idx)))
            .collect();
        Seed {
            matrix,
            vars,
            labels: None,
            var_index,
        }
    }

    pub fn with_labels(mut self, labels: BTreeMap<NodeId, Monomial>) -> Seed {
        self.labels = Some(labels);
        self
    }

    pub fn var(&self, node: NodeId) -> Result<&LaurentPoly> {
        self.vars
            .get(&node)
            .ok_or(Error::UnknownNode { index: node })
    }

    pub fn vars(&self) -> impl Iterator<Item = (NodeId, &LaurentPoly)> {
        self.vars.iter().map(|(&n, p)| (n, p))
    }

    pub fn label(&self, node: NodeId) -> Option<&Monomial> {
        self.labels.as_ref().and_then(|l| l.get(&node))
    }

    pub fn var_id(&self, node: NodeId) -> Option<usize> {
        self.var_index.get(&node).copied()
    }

    /// The two exchange products at `k`: `(∏_{b_jk>0} x_j^{b_jk},
    /// ∏_{b_jk<0} x_j^{-b_jk})`.
    fn exchange_products(&self, k: NodeId) -> (LaurentPoly, LaurentPoly) {
        let mut plus = LaurentPoly::one();
        let mut minus = LaurentPoly::one();
        for &j in self.matrix.nodes() {
            let b = self.matrix.get(j, k);
            if b > 0 {
                plus = plus.mul(&self.vars[&j].pow(b as u32));
            } else if b < 0 {
                minus = minus.mul(&self.vars[&j].pow((-b) as u32));
            }
        }
        (plus, minus)
    }

    /// Mutation at `k`. Labels are dropped; see [`Seed::mutate_labeled`] for
    /// the monomial-tracking variant.
    pub fn mutate(&self, k: NodeId) -> Result<Seed> {
        if !self.matrix.is_exchangeable(k) {
            return Err(Error::NotExchangeable { index: k });
        }
        let old = self.var(k)?;
        if old.is_zero() {
            return Err(Error::InvariantViolation(format!(
                "cluster variable at node {k} is zero"
            )));
        }
        let (plus, minus) = self.exchange_products(k);
        let new_var = plus.add(&minus).div_exact(old).map_err(|_| {
            Error::InvariantViolation(format!(
                "Laurent phenomenon breach: exchange at node {k} left a remainder"
            ))
        })?;
        let mut vars = self.vars.clone();
        vars.insert(k, new_var);
        Ok(Seed {
            matrix: self.matrix.mutate(k)?,
            vars,
            labels: None,
            var_index: self.var_index.clone(),
        })
    }

    /// The exchange-rule label candidates at `k`:
    /// `∏_{b_jk>0} m_j^{b_jk} / m_k` and `∏_{b_jk<0} m_j^{-b_jk} / m_k`,
    /// kept only when the division is exact.
    pub fn label_candidates(&self, k: NodeId) -> Result<(Option<Monomial>, Option<Monomial>)> {
        let labels = self
            .labels
            .as_ref()
            .ok_or_else(|| Error::InvariantViolation("seed carries no labels".into()))?;
        let mut plus = Monomial::one();
        let mut minus = Monomial::one();
        for &j in self.matrix.nodes() {
            let b = self.matrix.get(j, k);
            let lj = labels
                .get(&j)
                .ok_or_else(|| Error::InvariantViolation(format!("missing label at node {j}")))?;
            if b > 0 {
                plus = plus.mul(&lj.pow(b as u32));
            } else if b < 0 {
                minus = minus.mul(&lj.pow((-b) as u32));
            }
        }
        let mk = &labels[&k];
        Ok((plus.div(mk), minus.div(mk)))
    }

    /// Mutation at `k` with monomial-label tracking.
    ///
    /// Exactly one exchange candidate is a genuine monomial in typical
    /// mutations; when both divide, `disambiguate` receives the two
    /// candidates and the new Laurent variable and must say whether the
    /// first is the label.
    pub fn mutate_labeled(
        &self,
        k: NodeId,
        disambiguate: Option<&dyn Fn(&Monomial, &Monomial, &LaurentPoly) -> Result<bool>>,
    ) -> Result<Seed> {
        let (cand_plus, cand_minus) = self.label_candidates(k)?;
        let mut out = self.mutate(k)?;
        let new_var = out.var(k)?.clone();
        let chosen = match (cand_plus, cand_minus) {
            (Some(m), None) | (None, Some(m)) => m,
            (Some(a), Some(b)) => {
                if a == b {
                    a
                } else {
                    let pick = disambiguate.ok_or_else(|| {
                        Error::InvariantViolation(format!(
                            "both exchange candidates at node {k} are monomials and no \
                             disambiguator is available"
                        ))
                    })?;
                    if pick(&a, &b, &new_var)? {
                        a
                    } else {
                        b
                    }
                }
            }
            (None, None) => {
                return Err(Error::InvariantViolation(format!(
                    "neither exchange candidate at node {k} is a genuine monomial"
                )))
            }
        };
        let mut labels = self.labels.clone().expect("checked above");
        labels.insert(k, chosen);
        out.labels = Some(labels);
        Ok(out)
    }

    /// Denominator vector of `y` with respect to the initial cluster, in the
    /// simple-root order given by `order` (`order[t]` is the exchangeable
    /// node identified with `α_t`).
    pub fn d_vector(&self, y: &LaurentPoly, order: &[NodeId]) -> Result<RootVec> {
        if y.is_zero() {
            return Err(Error::InvariantViolation(
                "d-vector of the zero element".into(),
            ));
        }
        let coords = order
            .iter()
            .map(|&n| {
                let idx = self
                    .var_index
                    .get(&n)
                    .ok_or(Error::UnknownNode { index: n })?;
                Ok(-(y.min_exponent(*idx) as i64))
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(RootVec::new(coords))
    }

    /// Frozen generators must appear with nonnegative exponents everywhere.
    pub fn frozen_exponents_nonnegative(&self) -> bool {
        let frozen_ids: Vec<usize> = self
            .matrix
            .frozen()
            .filter_map(|n| self.var_id(n))
            .collect();
        self.vars.values().all(|p| {
            frozen_ids
                .iter()
                .all(|&id| p.min_exponent(id) >= 0)
        })
    }

    /// Hash over the canonical content (matrix entries + variables); used to
    /// bucket seeds during exchange-graph searches.
    pub fn content_hash(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        for (i, j, v) in self.matrix.stored_entries() {
            (i, j, v).hash(&mut h);
        }
        for (n, p) in &self.vars {
            n.hash(&mut h);
            for (e, c) in p.terms() {
                e.hash(&mut h);
                c.hash(&mut h);
            }
        }
        h.finish()
    }
}

/// The tuple of denominator vectors of one cluster, tracked tropically.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct DVectorTuple {
    entries: BTreeMap<NodeId, RootVec>,
}

impl DVectorTuple {
    /// Initial tuple: `d[order[t]] = -α_t`.
    pub fn initial(order: &[NodeId]) -> DVectorTuple {
        let dim = order.len();
        let entries = order
            .iter()
            .enumerate()
            .map(|(t, &n)| {
                let mut coords = vec![0i64; dim];
                coords[t] = -1;
                (n, RootVec::new(coords))
            })
            .collect();
        DVectorTuple { entries }
    }

    pub fn get(&self, node: NodeId) -> Option<&RootVec> {
        self.entries.get(&node)
    }

    pub fn vectors(&self) -> impl Iterator<Item = (NodeId, &RootVec)> {
        self.entries.iter().map(|(&n, v)| (n, v))
    }

    /// Tropical d-vector mutation: only the entry at `k` changes, to
    /// `-d(y_k) + max(Σ_{b_ik>0} b_ik d(y_i), Σ_{b_ik<0} -b_ik d(y_i))`
    /// taken coordinatewise.
    pub fn mutate(&self, matrix: &ExchangeMatrix, k: NodeId) -> Result<DVectorTuple> {
        if !matrix.is_exchangeable(k) {
            return Err(Error::NotExchangeable { index: k });
        }
        let dk = self
            .entries
            .get(&k)
            .ok_or(Error::UnknownNode { index: k })?;
        let dim = dk.dim();
        let mut pos = RootVec::zero(dim);
        let mut neg = RootVec::zero(dim);
        for (&i, di) in &self.entries {
            let b = matrix.get(i, k);
            if b > 0 {
                pos = pos.add(&di.scale(b));
            } else if b < 0 {
                neg = neg.add(&di.scale(-b));
            }
        }
        let maxed = RootVec::new(
            (0..dim)
                .map(|t| pos.coord(t).max(neg.coord(t)))
                .collect(),
        );
        let mut entries = self.entries.clone();
        entries.insert(k, maxed.sub(dk));
        Ok(DVectorTuple { entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Quiver;

    fn single_node_seed() -> Seed {
        let mut q = Quiver::default();
        q.add_node(0, false);
        Seed::initial(q.to_matrix().unwrap())
    }

    fn a2_seed() -> Seed {
        let mut q = Quiver::default();
        q.add_node(0, false);
        q.add_node(1, false);
        q.add_arrow(0, 1, 1);
        Seed::initial(q.to_matrix().unwrap())
    }

    #[test]
    fn single_node_exchange_has_empty_products() {
        let s = single_node_seed();
        let m = s.mutate(0).unwrap();
        // (1 + 1)/x_0 = 2 x_0^{-1}
        let y = m.var(0).unwrap();
        assert_eq!(y.num_terms(), 1);
        assert_eq!(y.min_exponent(0), -1);
        assert_eq!(
            y.coeff(&crate::laurent::Exponents::var(0, -1)),
            num_bigint::BigInt::from(2)
        );
    }

    #[test]
    fn mutation_involution_on_a2() {
        let s = a2_seed();
        for k in [0u32, 1] {
            let back = s.mutate(k).unwrap().mutate(k).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn frozen_vars_never_move() {
        let mut q = Quiver::default();
        q.add_node(0, false);
        q.add_node(1, true);
        q.add_arrow(1, 0, 1);
        let s = Seed::initial(q.to_matrix().unwrap());
        let m = s.mutate(0).unwrap();
        assert_eq!(m.var(1).unwrap(), s.var(1).unwrap());
        assert!(m.frozen_exponents_nonnegative());
    }

    #[test]
    fn d_vector_of_generators_and_quotients() {
        let s = a2_seed();
        let order = [0u32, 1];
        let d0 = s.d_vector(s.var(0).unwrap(), &order).unwrap();
        assert_eq!(d0, RootVec::new(vec![-1, 0]));
        let m = s.mutate(0).unwrap();
        let d = s.d_vector(m.var(0).unwrap(), &order).unwrap();
        assert_eq!(d, RootVec::new(vec![1, 0]));
    }

    #[test]
    fn tropical_tuple_matches_laurent_d_vectors() {
        let s = a2_seed();
        let order = [0u32, 1];
        let mut tuple = DVectorTuple::initial(&order);
        let mut seed = s.clone();
        for &k in &[0u32, 1, 0, 1, 0] {
            tuple = tuple.mutate(&seed.matrix, k).unwrap();
            seed = seed.mutate(k).unwrap();
            for &n in &order {
                let lau = s.d_vector(seed.var(n).unwrap(), &order).unwrap();
                assert_eq!(tuple.get(n).unwrap(), &lau, "node {n}");
            }
        }
    }

    #[test]
    fn tropical_single_node_involution() {
        let s = single_node_seed();
        let order = [0u32];
        let t = DVectorTuple::initial(&order);
        let t1 = t.mutate(&s.matrix, 0).unwrap();
        assert_eq!(t1.get(0).unwrap(), &RootVec::new(vec![1]));
        let t2 = t1.mutate(&s.matrix.mutate(0).unwrap(), 0).unwrap();
        assert_eq!(t, t2);
    }
}
