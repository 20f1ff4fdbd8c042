//! Reduced words of finite Weyl groups, the commutation/braid move graph,
//! and the piecewise-linear transition maps between the parameter tuples of
//! dual-canonical elements attached to different reduced words.
//!
//! A braid move `i j i → j i j` acts on the three affected coordinates by
//! `(a, b, c) ↦ (b + c − min(a,c), min(a,c), a + b − min(a,c))`; a
//! commutation swap exchanges its two coordinates. Composites along any
//! move path agree, which the tests exercise as path independence.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::roots::FiniteType;

/// A reduced expression of the longest element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ReducedWord {
    fin: FiniteType,
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(fin: FiniteType, letters: Vec<usize>) -> Result<ReducedWord> {
        if letters.len() != fin.longest_length() || !fin.word_product_is_w0(&letters) {
            return Err(Error::NotReducedWord);
        }
        if letters.iter().any(|&i| i == 0 || i > fin.rank()) {
            return Err(Error::Parse("letter out of range".into()));
        }
        Ok(ReducedWord { fin, letters })
    }

    pub fn parse(fin: FiniteType, text: &str) -> Result<ReducedWord> {
        let letters: Vec<usize> = text
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad letter `{c}`")))
            })
            .collect::<Result<_>>()?;
        ReducedWord::new(fin, letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn finite_type(&self) -> FiniteType {
        self.fin
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl std::fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// One elementary move between reduced words.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Move {
    /// Swap of commuting letters at positions `(at, at+1)`.
    Commutation { at: usize },
    /// Braid move `i j i → j i j` at positions `(at, at+1, at+2)`.
    Braid { at: usize },
}

impl Move {
    pub fn position(&self) -> usize {
        match *self {
            Move::Commutation { at } | Move::Braid { at } => at,
        }
    }
}

/// All words one move away, each with its move descriptor.
pub fn braid_neighbors(w: &ReducedWord) -> Vec<(ReducedWord, Move)> {
    let mut out = Vec::new();
    let l = w.letters.len();
    for at in 0..l.saturating_sub(1) {
        let (i, j) = (w.letters[at], w.letters[at + 1]);
        if i != j && w.fin.cartan(i, j) == 0 {
            let mut letters = w.letters.clone();
            letters.swap(at, at + 1);
            out.push((
                ReducedWord {
                    fin: w.fin,
                    letters,
                },
                Move::Commutation { at },
            ));
        }
    }
    for at in 0..l.saturating_sub(2) {
        let (i, j, k) = (w.letters[at], w.letters[at + 1], w.letters[at + 2]);
        if i == k && i != j && w.fin.cartan(i, j) == -1 {
            let mut letters = w.letters.clone();
            letters[at] = j;
            letters[at + 1] = i;
            letters[at + 2] = j;
            out.push((
                ReducedWord {
                    fin: w.fin,
                    letters,
                },
                Move::Braid { at },
            ));
        }
    }
    out
}

/// Breadth-first move path from `from` to `to` in the Matsumoto graph.
///
/// Empty for equal words; exceeding the node budget is an error, never a
/// claim of impossibility.
pub fn find_move_path(from: &ReducedWord, to: &ReducedWord, budget: usize) -> Result<Vec<Move>> {
    if from.fin != to.fin {
        return Err(Error::Parse("words of different types".into()));
    }
    if from == to {
        return Ok(Vec::new());
    }
    let mut parents: HashMap<Vec<usize>, (Vec<usize>, Move)> = HashMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(from.clone());
    let mut visited: HashMap<Vec<usize>, ()> = HashMap::new();
    visited.insert(from.letters.clone(), ());
    while let Some(w) = queue.pop_front() {
        for (next, mv) in braid_neighbors(&w) {
            if visited.contains_key(&next.letters) {
                continue;
            }
            visited.insert(next.letters.clone(), ());
            parents.insert(next.letters.clone(), (w.letters.clone(), mv));
            if next == *to {
                let mut path = Vec::new();
                let mut cur = to.letters.clone();
                while cur != from.letters {
                    let (prev, mv) = parents[&cur].clone();
                    path.push(mv);
                    cur = prev;
                }
                path.reverse();
                return Ok(path);
            }
            queue.push_back(next);
        }
        if visited.len() > budget {
            return Err(Error::BudgetExhausted(format!(
                "Matsumoto search visited more than {budget} words"
            )));
        }
    }
    Err(Error::NotReducedWord)
}

/// Parameter tuple of a dual-canonical element with respect to a reduced
/// word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LusztigTuple(pub Vec<u64>);

impl LusztigTuple {
    pub fn parse(text: &str) -> Result<LusztigTuple> {
        let entries: Vec<u64> = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad tuple entry `{t}`")))
            })
            .collect::<Result<_>>()?;
        Ok(LusztigTuple(entries))
    }
}

impl std::fmt::Display for LusztigTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// Applies one move's piecewise-linear action on a tuple.
pub fn apply_move(tuple: &LusztigTuple, mv: Move) -> LusztigTuple {
    let mut c = tuple.0.clone();
    match mv {
        Move::Commutation { at } => c.swap(at, at + 1),
        Move::Braid { at } => {
            let (a, b, cc) = (c[at], c[at + 1], c[at + 2]);
            let m = a.min(cc);
            c[at] = b + cc - m;
            c[at + 1] = m;
            c[at + 2] = a + b - m;
        }
    }
    LusztigTuple(c)
}

/// The transition map between the parametrizations attached to two reduced
/// words: composes the per-move maps along a breadth-first move path.
pub fn transition_tuple(
    from: &ReducedWord,
    to: &ReducedWord,
    tuple: &LusztigTuple,
    budget: usize,
) -> Result<LusztigTuple> {
    if tuple.0.len() != from.len() {
        return Err(Error::Parse(format!(
            "tuple length {} does not match word length {}",
            tuple.0.len(),
            from.len()
        )));
    }
    let path = find_move_path(from, to, budget)?;
    Ok(path
        .into_iter()
        .fold(tuple.clone(), |t, mv| apply_move(&t, mv)))
}

pub const DEFAULT_WORD_BUDGET: usize = 1_000_000;

#[cfg(test)]
mod tests {
    use super::*;

    fn a2(text: &str) -> ReducedWord {
        ReducedWord::parse(FiniteType::A(2), text).unwrap()
    }

    fn d4(text: &str) -> ReducedWord {
        ReducedWord::parse(FiniteType::D(4), text).unwrap()
    }

    #[test]
    fn a2_neighbors() {
        let w = a2("121");
        let nb = braid_neighbors(&w);
        assert_eq!(nb.len(), 1);
        assert_eq!(nb[0].0.to_string(), "212");
        assert_eq!(nb[0].1, Move::Braid { at: 0 });
    }

    #[test]
    fn word_validation() {
        assert!(ReducedWord::parse(FiniteType::A(2), "12").is_err());
        assert!(ReducedWord::parse(FiniteType::A(2), "111").is_err());
        assert!(ReducedWord::parse(FiniteType::D(4), "312431243124").is_ok());
    }

    #[test]
    fn commutation_neighbors_in_d4() {
        // 1 and 4 commute in D_4
        let w = d4("312431243124");
        let nb = braid_neighbors(&w);
        assert!(nb
            .iter()
            .any(|(_, m)| matches!(m, Move::Commutation { .. })));
    }

    #[test]
    fn path_to_self_is_empty() {
        let w = d4("312431243124");
        assert!(find_move_path(&w, &w, 1000).unwrap().is_empty());
    }

    #[test]
    fn a2_single_braid_path() {
        let path = find_move_path(&a2("121"), &a2("212"), 100).unwrap();
        assert_eq!(path, vec![Move::Braid { at: 0 }]);
    }

    #[test]
    fn braid_formula_edge_case() {
        let t = LusztigTuple(vec![1, 0, 0]);
        let out = apply_move(&t, Move::Braid { at: 0 });
        assert_eq!(out.0, vec![0, 0, 1]);
    }

    #[test]
    fn d4_transition_first_identity() {
        let i0 = d4("312431243124");
        let i1 = d4("132413241324");
        let c = LusztigTuple(vec![1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0]);
        let out = transition_tuple(&i0, &i1, &c, DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!(out.0, vec![0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0]);
        // inverse consistency
        let back = transition_tuple(&i1, &i0, &out, DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!(back, c);
    }
}
