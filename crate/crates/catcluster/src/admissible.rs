//! Admissible sequences, Q-data, the bijection between them, interval
//! quivers and interval seeds with Kirillov–Reshetikhin monomial labels.
//!
//! An admissible sequence is determined by its defining window
//! `s_1, …, s_l` (`l` the longest length); beyond the window it continues by
//! `s_{k+l} = (ι_k^*, p_k + h)` with `*` the diagram involution of the
//! longest element and `h` the Coxeter number. Validation re-derives this:
//! condition (3) fails on every other continuation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::{NodeId, Quiver};
use crate::monomial::Monomial;
use crate::roots::FiniteType;
use crate::seed::Seed;

/// An admissible sequence in `I × Z`, stored as the defining window
/// `s_1..s_l` plus the finite type driving its periodic continuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSequence {
    fin: FiniteType,
    window: Vec<(usize, i32)>,
}

/// A height function on the Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDatum {
    fin: FiniteType,
    xi: BTreeMap<usize, i32>,
}

impl QDatum {
    pub fn new(fin: FiniteType, xi: BTreeMap<usize, i32>) -> Result<QDatum> {
        for (a, b) in fin.edges() {
            let d = (xi[&a] - xi[&b]).abs();
            if d != 1 {
                return Err(Error::Parse(format!(
                    "|ξ({a})-ξ({b})| = {d}, not 1: not a height function"
                )));
            }
        }
        Ok(QDatum { fin, xi })
    }

    pub fn height(&self, i: usize) -> i32 {
        self.xi[&i]
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.fin
            .edges()
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .all(|j| self.xi[&i] < self.xi[&j])
    }

    /// Sink update: `(s_i ξ)(j) = ξ(j) + 2δ_ij`.
    pub fn reflect(&self, i: usize) -> QDatum {
        let mut xi = self.xi.clone();
        *xi.get_mut(&i).unwrap() += 2;
        QDatum {
            fin: self.fin,
            xi,
        }
    }
}

impl AdmissibleSequence {
    /// Builds the sequence from its defining window `s_1..s_l`.
    pub fn from_window(fin: FiniteType, window: Vec<(usize, i32)>) -> Result<AdmissibleSequence> {
        let l = fin.longest_length();
        if window.len() != l {
            return Err(Error::Parse(format!(
                "defining window has length {}, longest length is {l}",
                window.len()
            )));
        }
        let seq = AdmissibleSequence { fin, window };
        seq.validate()?;
        Ok(seq)
    }

    pub fn finite_type(&self) -> FiniteType {
        self.fin
    }

    pub fn longest_length(&self) -> usize {
        self.window.len()
    }

    /// The term `(ι_k, p_k)` for any `k ∈ Z` (`k = 1..l` is the window).
    pub fn term(&self, k: i64) -> (usize, i32) {
        let l = self.window.len() as i64;
        let h = self.fin.coxeter_number();
        // shift k into 1..=l by multiples of l
        let q = (k - 1).div_euclid(l);
        let r = (k - 1).rem_euclid(l) as usize;
        let (mut node, mut p) = self.window[r];
        if q != 0 {
            p += h * q as i32;
            if q.rem_euclid(2) == 1 {
                node = self.fin.w0_involution(node);
            }
        }
        (node, p)
    }

    /// Position of the previous occurrence of the same node, `s^-`.
    pub fn prev_occurrence(&self, k: i64) -> i64 {
        let node = self.term(k).0;
        let mut j = k - 1;
        loop {
            if self.term(j).0 == node {
                return j;
            }
            j -= 1;
        }
    }

    /// Position of the next occurrence of the same node, `s^+`.
    pub fn next_occurrence(&self, k: i64) -> i64 {
        let node = self.term(k).0;
        let mut j = k + 1;
        loop {
            if self.term(j).0 == node {
                return j;
            }
            j += 1;
        }
    }

    /// Checks conditions (1)–(3) over the defining window extended one
    /// period each way.
    pub fn validate(&self) -> Result<()> {
        let l = self.window.len() as i64;
        let lo = 1 - l;
        let hi = 2 * l;
        // (1): p_{s^+} = p_s + 2
        for s in lo..=hi {
            let nxt = self.next_occurrence(s);
            if nxt <= hi && self.term(nxt).1 != self.term(s).1 + 2 {
                return Err(Error::NotAdmissible {
                    position: s,
                    condition: 1,
                });
            }
        }
        // (2): p_t = p_s + 1 when c_{ι_s ι_t} = -1 and t^- < s < t < s^+
        for s in lo..=hi {
            let (ns, ps) = self.term(s);
            let splus = self.next_occurrence(s);
            for t in s + 1..splus.min(hi + 1) {
                let (nt, pt) = self.term(t);
                if self.fin.cartan(ns, nt) == -1 && self.prev_occurrence(t) < s && pt != ps + 1 {
                    return Err(Error::NotAdmissible {
                        position: t,
                        condition: 2,
                    });
                }
            }
        }
        // (3): every length-l window multiplies to w_0
        for start in 1..=l {
            let word: Vec<usize> = (start..start + l).map(|k| self.term(k).0).collect();
            if !self.fin.word_product_is_w0(&word) {
                return Err(Error::NotAdmissible {
                    position: start,
                    condition: 3,
                });
            }
        }
        Ok(())
    }

    /// The bijection to (Q-datum, adapted reduced word): `ξ(i) = p_{ϑ_i}`
    /// with `ϑ_i` the first window position carrying `i`, and the word is
    /// the window's node sequence.
    pub fn rho(&self) -> Result<(QDatum, Vec<usize>)> {
        let mut xi = BTreeMap::new();
        for k in 1..=self.window.len() as i64 {
            let (node, p) = self.term(k);
            xi.entry(node).or_insert(p);
        }
        let q = QDatum::new(self.fin, xi)?;
        let word = self.window.iter().map(|&(n, _)| n).collect();
        Ok((q, word))
    }

    /// Inverse of [`AdmissibleSequence::rho`]: rebuilds the window from a
    /// Q-datum and a word that must be adapted to it (each letter a sink of
    /// the successively updated datum).
    pub fn rho_inverse(q: &QDatum, word: &[usize]) -> Result<AdmissibleSequence> {
        let mut cur = q.clone();
        let mut window = Vec::with_capacity(word.len());
        for (step, &i) in word.iter().enumerate() {
            if !cur.is_sink(i) {
                return Err(Error::NotAdapted {
                    letter: i as u32,
                    step,
                });
            }
            window.push((i, cur.height(i)));
            cur = cur.reflect(i);
        }
        AdmissibleSequence::from_window(q.fin, window)
    }

    /// The interval quiver: vertices `a..=b`, arrows `s → t` when
    /// `t^- < s < t < s^+` and `c_{ι_s ι_t} = -1`, plus `s → s^-`. Arrows
    /// between frozen vertices are kept here; the exchange matrix drops
    /// them.
    pub fn gls_quiver(&self, a: i64, b: i64) -> Quiver {
        let mut q = Quiver::default();
        for s in a..=b {
            let frozen = self.prev_occurrence(s) < a;
            q.add_node(s as NodeId, frozen);
        }
        for s in a..=b {
            let sm = self.prev_occurrence(s);
            if sm >= a {
                q.add_arrow(s as NodeId, sm as NodeId, 1);
            }
            let (ns, _) = self.term(s);
            let splus = self.next_occurrence(s);
            for t in s + 1..=b.min(splus - 1) {
                let (nt, _) = self.term(t);
                if self.fin.cartan(ns, nt) == -1 && self.prev_occurrence(t) < s {
                    q.add_arrow(s as NodeId, t as NodeId, 1);
                }
            }
        }
        q
    }

    /// The Kirillov–Reshetikhin label at position `k` within `[a, b]`:
    /// the chain `Y_{ι_k, p_k} Y_{ι_{k^+}, p_{k^+}} ⋯` up to the last
    /// occurrence of `ι_k` in the interval.
    pub fn kr_label(&self, k: i64, b: i64) -> Monomial {
        let mut m = Monomial::one();
        let mut at = k;
        while at <= b {
            let (node, p) = self.term(at);
            m.mul_var((node as i32, p), 1);
            at = self.next_occurrence(at);
        }
        m
    }

    /// The interval seed of the monoidal categorification theorem: the GLS
    /// exchange matrix on `[a, b]`, frozen set `{s : s^- < a}`, fresh
    /// cluster generators, and KR monomial labels.
    pub fn interval_seed(&self, a: i64, b: i64) -> Result<Seed> {
        let quiver = self.gls_quiver(a, b).strip_frozen_frozen();
        let matrix = quiver.to_matrix()?;
        let labels = (a..=b)
            .map(|k| (k as NodeId, self.kr_label(k, b)))
            .collect();
        Ok(Seed::initial(matrix).with_labels(labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2_s1() -> AdmissibleSequence {
        AdmissibleSequence::from_window(FiniteType::A(2), vec![(2, 0), (1, 1), (2, 2)]).unwrap()
    }

    fn d4_s2() -> AdmissibleSequence {
        // (ι_{1+k}, 2p+1) for k=0,1,2 and (ι_4, 2p+2), ι = (1,2,4,3)
        let mut w = Vec::new();
        for p in 0..3 {
            w.push((1, 2 * p + 1));
            w.push((2, 2 * p + 1));
            w.push((4, 2 * p + 1));
            w.push((3, 2 * p + 2));
        }
        AdmissibleSequence::from_window(FiniteType::D(4), w).unwrap()
    }

    #[test]
    fn a2_window_and_continuation() {
        let s = a2_s1();
        assert_eq!(s.term(1), (2, 0));
        assert_eq!(s.term(2), (1, 1));
        assert_eq!(s.term(3), (2, 2));
        // involution-extended continuation
        assert_eq!(s.term(4), (1, 3));
        assert_eq!(s.term(5), (2, 4));
        assert_eq!(s.term(11), (2, 10));
        assert_eq!(s.term(0), (1, -1));
    }

    #[test]
    fn condition_one_violation_detected() {
        let bad = AdmissibleSequence {
            fin: FiniteType::A(2),
            window: vec![(1, 0), (1, 1), (2, 1)],
        };
        assert!(matches!(
            bad.validate(),
            Err(Error::NotAdmissible { condition: 1, .. })
                | Err(Error::NotAdmissible { condition: 3, .. })
        ));
    }

    #[test]
    fn d4_s2_is_admissible_with_l_12() {
        let s = d4_s2();
        assert_eq!(s.longest_length(), 12);
        s.validate().unwrap();
    }

    #[test]
    fn rho_of_d4_s2() {
        let s = d4_s2();
        let (q, word) = s.rho().unwrap();
        assert_eq!(q.height(1), 1);
        assert_eq!(q.height(2), 1);
        assert_eq!(q.height(4), 1);
        assert_eq!(q.height(3), 2);
        assert_eq!(word, [1, 2, 4, 3].repeat(3));
    }

    #[test]
    fn rho_round_trip() {
        for s in [a2_s1(), d4_s2()] {
            let (q, word) = s.rho().unwrap();
            let back = AdmissibleSequence::rho_inverse(&q, &word).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn rho_inverse_rejects_non_adapted_words() {
        let (q, _) = d4_s2().rho().unwrap();
        // node 3 has maximal height: not a sink at step 0
        let err = AdmissibleSequence::rho_inverse(&q, &[3, 1, 2, 4].repeat(3)).unwrap_err();
        assert!(matches!(err, Error::NotAdapted { letter: 3, step: 0 }));
    }

    #[test]
    fn singleton_interval_has_no_arrows() {
        let s = a2_s1();
        let q = s.gls_quiver(1, 1);
        assert!(q.arrows.is_empty());
        assert_eq!(q.frozen.len(), 1);
        let seed = s.interval_seed(1, 1).unwrap();
        assert_eq!(
            seed.label(1).unwrap(),
            &Monomial::parse("2_0").unwrap()
        );
    }

    #[test]
    fn a2_interval_1_11_kr_labels() {
        let s = a2_s1();
        let seed = s.interval_seed(1, 11).unwrap();
        assert_eq!(
            seed.label(1).unwrap(),
            &Monomial::parse("2_0 2_2 2_4 2_6 2_8 2_10").unwrap()
        );
        assert_eq!(
            seed.label(2).unwrap(),
            &Monomial::parse("1_1 1_3 1_5 1_7 1_9").unwrap()
        );
        let frozen: Vec<NodeId> = seed.matrix.frozen().collect();
        assert_eq!(frozen, vec![1, 2]);
    }

    #[test]
    fn d4_s2_interval_1_11_labels_match_figure() {
        let s = d4_s2();
        let seed = s.interval_seed(1, 11).unwrap();
        let expect = [
            (1, "1_1 1_3 1_5"),
            (2, "2_1 2_3 2_5"),
            (3, "4_1 4_3 4_5"),
            (4, "3_2 3_4"),
            (5, "1_3 1_5"),
            (8, "3_4"),
            (11, "4_5"),
        ];
        for (node, text) in expect {
            assert_eq!(
                seed.label(node).unwrap(),
                &Monomial::parse(text).unwrap(),
                "node {node}"
            );
        }
        let frozen: Vec<NodeId> = seed.matrix.frozen().collect();
        assert_eq!(frozen, vec![1, 2, 3, 4]);
    }

    #[test]
    fn gls_arrow_rule_on_d4_s1() {
        // D_4 s^1: (3,0),(4,1),(2,1),(1,1) period
        let mut w = Vec::new();
        for p in 0..3 {
            w.push((3, 2 * p));
            w.push((4, 2 * p + 1));
            w.push((2, 2 * p + 1));
            w.push((1, 2 * p + 1));
        }
        let s = AdmissibleSequence::from_window(FiniteType::D(4), w).unwrap();
        let q = s.gls_quiver(1, 9);
        // s -> s^-
        assert!(q.arrows.contains_key(&(5, 1)));
        assert!(q.arrows.contains_key(&(9, 5)));
        // neighbor rule: 1 -> 2, 1 -> 3, 1 -> 4; 5 -> 6,7,8
        for t in [2u32, 3, 4] {
            assert!(q.arrows.contains_key(&(1, t)));
        }
        for t in [6u32, 7, 8] {
            assert!(q.arrows.contains_key(&(5, t)));
        }
        assert!(!q.arrows.contains_key(&(1, 5)));
    }
}
