//! `Φ_c`, `c`-compatibility and the unique `c`-cluster expansion.
//!
//! Real expansions are found by walking the denominator-vector fan with the
//! tropical mutation rule: at each cluster solve `γ = Σ c_i d_i` exactly
//! over the rationals and either accept (all `c_i` nonnegative integers) or
//! pivot at the smallest index with a negative coefficient. Imaginary
//! expansions peel `kδ` and decompose the remainder over `Λ_c^re`. A
//! brute-force enumerator over a bounded candidate set serves as the
//! independent oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ExchangeMatrix, NodeId};
use crate::roots::{
    c_orbit_classify, default_orbit_cap, lambda_c_by_orbit, AffineSystem, CoxeterElement,
    OrbitClass, RootVec,
};
use crate::seed::DVectorTuple;

type Rat = BigRational;

trait RatExt {
    fn to_u32(&self) -> Option<u32>;
}

impl RatExt for BigRational {
    fn to_u32(&self) -> Option<u32> {
        if !self.is_integer() {
            return None;
        }
        self.to_integer().try_into().ok()
    }
}

/// Fraction-free Bareiss elimination plus back-substitution over `i128`.
/// Outer `None` signals overflow (retry with big integers), inner `None` a
/// singular matrix. Columns of the system are the d-vectors.
fn solve_i128(cols: &[&RootVec], gamma: &RootVec) -> Option<Option<Vec<BigRational>>> {
    let dim = cols.len();
    let mut a: Vec<Vec<i128>> = (0..dim)
        .map(|r| {
            let mut row: Vec<i128> = cols.iter().map(|c| c.coord(r) as i128).collect();
            row.push(gamma.coord(r) as i128);
            row
        })
        .collect();
    let mut prev: i128 = 1;
    for k in 0..dim {
        let Some(p) = (k..dim).find(|&r| a[r][k] != 0) else {
            return Some(None);
        };
        a.swap(k, p);
        for i in k + 1..dim {
            for j in k + 1..=dim {
                let t = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    // back-substitution with exact rationals
    let mut num = vec![0i128; dim];
    let mut den = vec![1i128; dim];
    for r in (0..dim).rev() {
        // a[r][r] x_r = a[r][dim] - Σ_{j>r} a[r][j] x_j
        let mut sn: i128 = a[r][dim];
        let mut sd: i128 = 1;
        for j in r + 1..dim {
            if a[r][j] != 0 {
                sn = sn
                    .checked_mul(den[j])?
                    .checked_sub(a[r][j].checked_mul(num[j])?.checked_mul(sd)?)?;
                sd = sd.checked_mul(den[j])?;
                let g = num_integer::gcd(sn.abs(), sd.abs()).max(1);
                sn /= g;
                sd /= g;
            }
        }
        let mut n = sn;
        let mut d = sd.checked_mul(a[r][r])?;
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = num_integer::gcd(n.abs(), d).max(1);
        num[r] = n / g;
        den[r] = d / g;
    }
    Some(Some(
        (0..dim)
            .map(|i| BigRational::new(BigInt::from(num[i]), BigInt::from(den[i])))
            .collect(),
    ))
}

/// Arbitrary-precision fallback of [`solve_i128`]; `None` = singular.
fn solve_bigrational(cols: &[&RootVec], gamma: &RootVec) -> Option<Vec<BigRational>> {
    let dim = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<BigRational> = cols
                .iter()
                .map(|c| BigRational::from(BigInt::from(c.coord(r))))
                .collect();
            row.push(BigRational::from(BigInt::from(gamma.coord(r))));
            row
        })
        .collect();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].clone();
        for c in col..=dim {
            a[col][c] = &a[col][c] / &inv;
        }
        for r in 0..dim {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=dim {
                    a[r][c] = &a[r][c] - &f * &a[col][c];
                }
            }
        }
    }
    Some((0..dim).map(|r| a[r][dim].clone()).collect())
}

/// An element of `Φ_c = Φ_c^re ∪ {δ}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum PhiCElement {
    Real(RootVec),
    Delta,
}

impl std::fmt::Display for PhiCElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PhiCElement::Real(v) => write!(f, "{v}"),
            PhiCElement::Delta => write!(f, "d"),
        }
    }
}

/// A finitely supported map `Φ_c → Z_{>0}`: the `c`-cluster expansion.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Expansion {
    pub delta: u32,
    pub real: BTreeMap<RootVec, u32>,
}

impl Expansion {
    pub fn pure_delta(k: u32) -> Expansion {
        Expansion {
            delta: k,
            real: BTreeMap::new(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.delta == 0
    }

    pub fn support(&self) -> Vec<PhiCElement> {
        let mut s: Vec<PhiCElement> = self
            .real
            .keys()
            .cloned()
            .map(PhiCElement::Real)
            .collect();
        if self.delta > 0 {
            s.push(PhiCElement::Delta);
        }
        s
    }

    /// `Σ m_α α` with `δ` counted.
    pub fn total(&self, sys: &AffineSystem) -> RootVec {
        let mut t = sys.delta().scale(self.delta as i64);
        for (v, &m) in &self.real {
            t = t.add(&v.scale(m as i64));
        }
        t
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "delta": self.delta,
            "real": self.real.iter().map(|(v, m)| serde_json::json!({
                "root": v.to_string(),
                "mult": m,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Certificate of a successful fan walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealCertificate {
    /// Mutation word applied to the initial cluster, in order.
    pub word: Vec<NodeId>,
    /// Exponents over the final cluster, keyed by node.
    pub exponents: BTreeMap<NodeId, u32>,
    pub expansion: Expansion,
}

#[derive(Clone, Debug)]
enum WalkOutcome {
    Found(RealCertificate),
    /// Revisited a d-tuple: the deterministic walk cycled, no cone found.
    Cycle,
    /// Step budget exhausted, or a cone with fractional coordinates.
    Exhausted(String),
}

/// Context for one affine cluster algebra: acyclic initial exchange matrix
/// on nodes `0..=n` identified with the simple roots, plus derived data.
pub struct AffineCtx {
    sys: AffineSystem,
    b0: ExchangeMatrix,
    coxeter: CoxeterElement,
    lambda: Vec<RootVec>,
    lambda_set: BTreeSet<RootVec>,
    budget_factor: usize,
    compat_cache: RwLock<HashMap<(PhiCElement, PhiCElement), bool>>,
}

impl AffineCtx {
    /// Builds the context from a principal exchange matrix whose nodes are
    /// exactly `0..=sys.rank()`.
    pub fn new(sys: AffineSystem, b0: ExchangeMatrix) -> Result<AffineCtx> {
        let expected: Vec<NodeId> = (0..sys.dim() as NodeId).collect();
        let mut nodes: Vec<NodeId> = b0.exchangeable().collect();
        nodes.sort_unstable();
        if nodes != expected {
            return Err(Error::InvalidQuiver(
                "expansion context needs exchangeable nodes 0..=n".into(),
            ));
        }
        let coxeter = CoxeterElement::from_matrix(&b0)?;
        let lambda = lambda_c_by_orbit(&sys, &coxeter);
        let lambda_set = lambda.iter().cloned().collect();
        Ok(AffineCtx {
            sys,
            b0,
            coxeter,
            lambda,
            lambda_set,
            budget_factor: 4096,
            compat_cache: RwLock::new(HashMap::new()),
        })
    }

    /// Overrides the fan-walk node budget factor (default 4096 explored
    /// clusters per unit of height).
    pub fn with_budget_factor(mut self, factor: usize) -> AffineCtx {
        self.budget_factor = factor;
        self
    }

    pub fn system(&self) -> &AffineSystem {
        &self.sys
    }

    pub fn initial_matrix(&self) -> &ExchangeMatrix {
        &self.b0
    }

    pub fn coxeter(&self) -> &CoxeterElement {
        &self.coxeter
    }

    pub fn lambda_c(&self) -> &[RootVec] {
        &self.lambda
    }

    pub fn in_lambda_c(&self, v: &RootVec) -> bool {
        self.lambda_set.contains(v)
    }

    /// Membership in `Φ_c^re = -Π ∪ {infinite-orbit positive roots} ∪ Λ_c^re`.
    pub fn in_phi_c_re(&self, v: &RootVec) -> bool {
        let dim = self.sys.dim();
        if (0..dim).any(|i| *v == RootVec::simple(dim, i).neg()) {
            return true;
        }
        if self.lambda_set.contains(v) {
            return true;
        }
        if v.is_nonnegative() && self.sys.is_real_root(v) {
            let cap = default_orbit_cap(&self.sys);
            return matches!(
                c_orbit_classify(&self.sys, &self.coxeter, v, cap),
                OrbitClass::Infinite { .. }
            );
        }
        false
    }

    fn node_order(&self) -> Vec<NodeId> {
        (0..self.sys.dim() as NodeId).collect()
    }

    /// The fan walk: best-first search over the exchange graph.
    ///
    /// From each cluster, `γ = Σ c_i d_i` is solved exactly; all mutations
    /// are candidate moves, states are deduplicated on d-tuples, and the
    /// frontier is ordered by the violation `Σ max(0, −c_i)`. Restricting to
    /// negative-coefficient crossings is not complete here: cones on the far
    /// side of the `δ` ray are reachable only through detours whose crossed
    /// wall has a nonnegative coefficient, while the greedy single-pivot
    /// walk diverges outright along the cluster ladders accumulating at the
    /// ray. Callers screen out γ with imaginary expansions first, so the
    /// walk only runs when a containing cone exists; the node budget is a
    /// hard error.
    fn walk(&self, gamma: &RootVec) -> Result<WalkOutcome> {
        struct Node {
            matrix: ExchangeMatrix,
            tuple: DVectorTuple,
            coeffs: BTreeMap<NodeId, Rat>,
            parent: usize,
            pivot: NodeId,
        }
        let order = self.node_order();
        let budget = self.budget_factor * (1 + gamma.height_abs().unsigned_abs() as usize);
        let violation = |coeffs: &BTreeMap<NodeId, Rat>| -> Rat {
            coeffs
                .values()
                .filter(|c| c.is_negative())
                .fold(Rat::zero(), |acc, c| acc - c)
        };
        let root_tuple = DVectorTuple::initial(&order);
        let root_coeffs = self.solve_in_basis(&root_tuple, gamma, &order)?;
        let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(Rat, usize)>> =
            std::collections::BinaryHeap::new();
        heap.push(std::cmp::Reverse((violation(&root_coeffs), 0)));
        let mut arena: Vec<Node> = vec![Node {
            matrix: self.b0.clone(),
            tuple: root_tuple,
            coeffs: root_coeffs,
            parent: usize::MAX,
            pivot: 0,
        }];
        let mut visited: BTreeSet<DVectorTuple> = BTreeSet::new();
        visited.insert(arena[0].tuple.clone());
        while let Some(std::cmp::Reverse((_, at))) = heap.pop() {
            let no_negatives = order.iter().all(|n| !arena[at].coeffs[n].is_negative());
            if no_negatives && order.iter().all(|n| arena[at].coeffs[n].is_integer()) {
                let mut exponents = BTreeMap::new();
                let mut expansion = Expansion::default();
                for &n in &order {
                    let m = arena[at].coeffs[&n].to_u32().ok_or_else(|| {
                        Error::InvariantViolation("expansion coefficient overflow".into())
                    })?;
                    if m > 0 {
                        exponents.insert(n, m);
                        let d = arena[at].tuple.get(n).expect("tuple is total").clone();
                        *expansion.real.entry(d).or_insert(0) += m;
                    }
                }
                let mut word = Vec::new();
                let mut cur = at;
                while arena[cur].parent != usize::MAX {
                    word.push(arena[cur].pivot);
                    cur = arena[cur].parent;
                }
                word.reverse();
                return Ok(WalkOutcome::Found(RealCertificate {
                    word,
                    exponents,
                    expansion,
                }));
            }
            for pivot in order.iter().copied() {
                let tuple = arena[at].tuple.mutate(&arena[at].matrix, pivot)?;
                if visited.insert(tuple.clone()) {
                    let matrix = arena[at].matrix.mutate(pivot)?;
                    let coeffs = self.solve_in_basis(&tuple, gamma, &order)?;
                    let idx = arena.len();
                    heap.push(std::cmp::Reverse((violation(&coeffs), idx)));
                    arena.push(Node {
                        matrix,
                        tuple,
                        coeffs,
                        parent: at,
                        pivot,
                    });
                    if arena.len() > budget {
                        return Ok(WalkOutcome::Exhausted(format!(
                            "fan walk for {gamma} exceeded {budget} explored clusters"
                        )));
                    }
                }
            }
        }
        Ok(WalkOutcome::Cycle)
    }

    /// Solves `γ = Σ_n c_n d_n` exactly; errors on a singular basis.
    fn solve_in_basis(
        &self,
        tuple: &DVectorTuple,
        gamma: &RootVec,
        order: &[NodeId],
    ) -> Result<BTreeMap<NodeId, Rat>> {
        let dim = order.len();
        let cols: Vec<&RootVec> = order.iter().map(|&n| tuple.get(n).unwrap()).collect();
        match solve_i128(&cols, gamma) {
            Some(Some(sol)) => Ok(order.iter().copied().zip(sol).collect()),
            Some(None) => Err(Error::InvariantViolation(format!(
                "singular d-vector basis during expansion of {gamma}"
            ))),
            None => {
                // overflow: redo with arbitrary precision
                let sol = solve_bigrational(&cols, gamma).ok_or_else(|| {
                    Error::InvariantViolation(format!(
                        "singular d-vector basis during expansion of {gamma}"
                    ))
                })?;
                Ok(order.iter().copied().zip(sol).collect())
            }
        }
    }

    /// Fan-walk search for a real `c`-cluster expansion of `γ`.
    ///
    /// An imaginary expansion is probed first: when one exists, uniqueness
    /// rules out a real one without walking (the walk diverges along the
    /// `δ` ray). `Ok(None)` is a definitive verdict; budget exhaustion is an
    /// error.
    pub fn real_expansion(&self, gamma: &RootVec) -> Result<Option<RealCertificate>> {
        if !self.delta_candidates(gamma, 0)?.is_empty() {
            return Ok(None);
        }
        match self.walk(gamma)? {
            WalkOutcome::Found(cert) => Ok(Some(cert)),
            WalkOutcome::Cycle => Ok(None),
            WalkOutcome::Exhausted(msg) => Err(Error::BudgetExhausted(msg)),
        }
    }

    /// `c`-compatibility of two distinct elements of `Φ_c`: two real roots
    /// are compatible iff the expansion of their sum is `{a:1, b:1}`; `δ` is
    /// compatible exactly with `Λ_c^re`.
    pub fn compatible(&self, a: &PhiCElement, b: &PhiCElement) -> Result<bool> {
        self.compatible_at(a, b, 0)
    }

    fn compatible_at(&self, a: &PhiCElement, b: &PhiCElement, depth: usize) -> Result<bool> {
        if a == b {
            return Err(Error::InvariantViolation(
                "compatibility is defined for distinct roots".into(),
            ));
        }
        let key = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if let Some(&v) = self.compat_cache.read().unwrap().get(&key) {
            return Ok(v);
        }
        let verdict = match (&key.0, &key.1) {
            (PhiCElement::Delta, PhiCElement::Real(x))
            | (PhiCElement::Real(x), PhiCElement::Delta) => self.in_lambda_c(x),
            (PhiCElement::Real(x), PhiCElement::Real(y)) => {
                let sum = x.add(y);
                if !self.delta_candidates(&sum, depth + 1)?.is_empty() {
                    // the unique expansion of the sum is imaginary
                    false
                } else {
                    match self.walk(&sum)? {
                        WalkOutcome::Found(cert) => {
                            let mut expect = Expansion::default();
                            *expect.real.entry(x.clone()).or_insert(0) += 1;
                            *expect.real.entry(y.clone()).or_insert(0) += 1;
                            cert.expansion == expect
                        }
                        WalkOutcome::Cycle => false,
                        WalkOutcome::Exhausted(_) => {
                            return Err(Error::Indeterminate {
                                a: key.0.to_string(),
                                b: key.1.to_string(),
                            })
                        }
                    }
                }
            }
            (PhiCElement::Delta, PhiCElement::Delta) => unreachable!("distinct"),
        };
        self.compat_cache.write().unwrap().insert(key, verdict);
        Ok(verdict)
    }

    /// All decompositions of `target` over `Λ_c^re` with pairwise-compatible
    /// support (each element is `δ`-compatible by construction).
    fn lambda_decompositions(&self, target: &RootVec, depth: usize) -> Result<Vec<Expansion>> {
        #[allow(clippy::too_many_arguments)]
        fn dfs(
            ctx: &AffineCtx,
            lambda: &[RootVec],
            idx: usize,
            remaining: &RootVec,
            chosen: &mut Vec<(RootVec, u32)>,
            out: &mut Vec<Expansion>,
            depth: usize,
        ) -> Result<()> {
            if remaining.is_zero() {
                let mut exp = Expansion::default();
                for (v, m) in chosen.iter() {
                    exp.real.insert(v.clone(), *m);
                }
                out.push(exp);
                // multiplicity-0 continuations would duplicate this solution
                return Ok(());
            }
            if idx == lambda.len() {
                return Ok(());
            }
            dfs(ctx, lambda, idx + 1, remaining, chosen, out, depth)?;
            let cand = &lambda[idx];
            let compat_ok = {
                let c = PhiCElement::Real(cand.clone());
                chosen
                    .iter()
                    .map(|(v, _)| ctx.compatible_at(&PhiCElement::Real(v.clone()), &c, depth))
                    .collect::<Result<Vec<bool>>>()?
                    .into_iter()
                    .all(|b| b)
            };
            if !compat_ok {
                return Ok(());
            }
            let mut mult = 0;
            let mut rem = remaining.clone();
            loop {
                rem = rem.sub(cand);
                if !rem.is_nonnegative() {
                    break;
                }
                mult += 1;
                chosen.push((cand.clone(), mult));
                dfs(ctx, lambda, idx + 1, &rem, chosen, out, depth)?;
                chosen.pop();
            }
            Ok(())
        }
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        dfs(self, &self.lambda, 0, target, &mut chosen, &mut out, depth)?;
        Ok(out)
    }

    /// All imaginary expansions `γ = kδ + Σ m_α α`, `k ≥ 1`, support in
    /// `Λ_c^re` and pairwise compatible. Complete: with `m_δ ≥ 1` no
    /// negative simple can appear, so `m_δ` is bounded by the largest
    /// coordinate of `γ`.
    fn delta_candidates(&self, gamma: &RootVec, depth: usize) -> Result<Vec<Expansion>> {
        const MAX_DEPTH: usize = 16;
        if depth > MAX_DEPTH {
            return Err(Error::BudgetExhausted(
                "compatibility recursion exceeded the depth bound".into(),
            ));
        }
        let k_max = gamma.coords().iter().copied().max().unwrap_or(0);
        let mut found: Vec<Expansion> = Vec::new();
        for k in 1..=k_max.max(0) {
            let residual = gamma.sub(&self.sys.delta().scale(k));
            if !residual.is_nonnegative() {
                continue;
            }
            for mut exp in self.lambda_decompositions(&residual, depth)? {
                exp.delta = k as u32;
                found.push(exp);
            }
        }
        Ok(found)
    }

    /// The unique `c`-cluster expansion of `γ`.
    ///
    /// Attempts a real expansion first; on a definitive miss, collects the
    /// `γ − kδ` decompositions over `Λ_c^re` for `k = 1.."max coordinate"`.
    /// Finding no expansion, or more than one, is a hard error.
    pub fn cluster_expansion(&self, gamma: &RootVec) -> Result<Expansion> {
        if let Some(cert) = self.real_expansion(gamma)? {
            return Ok(cert.expansion);
        }
        let mut found = self.delta_candidates(gamma, 0)?;
        match found.len() {
            0 => Err(Error::InvariantViolation(format!(
                "no c-cluster expansion found for {gamma} within bounds"
            ))),
            1 => Ok(found.pop().expect("one element")),
            n => Err(Error::InvariantViolation(format!(
                "uniqueness breach: {n} c-cluster expansions found for {gamma}"
            ))),
        }
    }

    /// Exhaustive enumeration of candidate expansions of `γ`: nonnegative
    /// solutions of `γ = m_δ δ + Σ m_α α` over a height-bounded candidate
    /// set with all multiplicities at most `box_bound`, filtered by pairwise
    /// compatibility. The independent oracle for `cluster_expansion`.
    pub fn brute_force_expansion_oracle(
        &self,
        gamma: &RootVec,
        box_bound: u32,
    ) -> Result<Vec<Expansion>> {
        let dim = self.sys.dim();
        let b = box_bound as i64;
        let coord_cap = gamma.coords().iter().copied().max().unwrap_or(0) + b;
        let positives: Vec<RootVec> = self
            .sys
            .positive_real_roots_bounded(coord_cap)
            .into_iter()
            .filter(|v| self.in_phi_c_re(v))
            .collect();
        let negatives: Vec<RootVec> = (0..dim).map(|i| RootVec::simple(dim, i).neg()).collect();

        let mut out: Vec<Expansion> = Vec::new();
        // m_δ, then the negative simples, then positive roots
        for m_delta in 0..=box_bound {
            let after_delta = gamma.sub(&self.sys.delta().scale(m_delta as i64));
            let mut support: Vec<(PhiCElement, u32)> = Vec::new();
            if m_delta > 0 {
                support.push((PhiCElement::Delta, m_delta));
            }
            self.oracle_negatives(
                &after_delta,
                &negatives,
                0,
                box_bound,
                &positives,
                &mut support,
                &mut out,
            )?;
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn oracle_negatives(
        &self,
        target: &RootVec,
        negatives: &[RootVec],
        idx: usize,
        box_bound: u32,
        positives: &[RootVec],
        support: &mut Vec<(PhiCElement, u32)>,
        out: &mut Vec<Expansion>,
    ) -> Result<()> {
        if idx == negatives.len() {
            return self.oracle_positives(target, positives, 0, box_bound, support, out);
        }
        self.oracle_negatives(target, negatives, idx + 1, box_bound, positives, support, out)?;
        let cand = PhiCElement::Real(negatives[idx].clone());
        let compatible_so_far = support
            .iter()
            .map(|(s, _)| self.compatible(s, &cand))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        if !compatible_so_far {
            return Ok(());
        }
        for mult in 1..=box_bound {
            let rest = target.sub(&negatives[idx].scale(mult as i64));
            support.push((cand.clone(), mult));
            self.oracle_negatives(&rest, negatives, idx + 1, box_bound, positives, support, out)?;
            support.pop();
        }
        Ok(())
    }

    fn oracle_positives(
        &self,
        target: &RootVec,
        positives: &[RootVec],
        idx: usize,
        box_bound: u32,
        support: &mut Vec<(PhiCElement, u32)>,
        out: &mut Vec<Expansion>,
    ) -> Result<()> {
        if target.is_zero() {
            let mut exp = Expansion::default();
            for (el, m) in support.iter() {
                match el {
                    PhiCElement::Delta => exp.delta = *m,
                    PhiCElement::Real(v) => {
                        exp.real.insert(v.clone(), *m);
                    }
                }
            }
            out.push(exp);
            return Ok(());
        }
        if idx == positives.len() || !target.is_nonnegative() {
            return Ok(());
        }
        self.oracle_positives(target, positives, idx + 1, box_bound, support, out)?;
        let cand_vec = &positives[idx];
        let cand = PhiCElement::Real(cand_vec.clone());
        let compatible_so_far = support
            .iter()
            .map(|(s, _)| self.compatible(s, &cand))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        if !compatible_so_far {
            return Ok(());
        }
        let mut rem = target.clone();
        for mult in 1..=box_bound {
            rem = rem.sub(cand_vec);
            if !rem.is_nonnegative() {
                break;
            }
            support.push((cand.clone(), mult));
            self.oracle_positives(&rem, positives, idx + 1, box_bound, support, out)?;
            support.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{AffineType, Quiver};

    fn d4_ctx() -> AffineCtx {
        let sys = AffineSystem::standard(AffineType::D(4));
        let mut q = Quiver::default();
        for i in 0..5 {
            q.add_node(i, false);
        }
        for i in [0u32, 1, 2, 4] {
            q.add_arrow(i, 3, 1);
        }
        AffineCtx::new(sys, q.to_matrix().unwrap()).unwrap()
    }

    fn rv(c: &[i64]) -> RootVec {
        RootVec::new(c.to_vec())
    }

    #[test]
    fn initial_cone_is_found_without_walking() {
        let ctx = d4_ctx();
        let gamma = rv(&[-1, -1, 0, 0, 0]); // -α_0 - α_1
        let cert = ctx.real_expansion(&gamma).unwrap().unwrap();
        assert!(cert.word.is_empty());
        assert_eq!(cert.expansion.real.len(), 2);
        assert_eq!(cert.expansion.real[&rv(&[-1, 0, 0, 0, 0])], 1);
        assert_eq!(cert.expansion.real[&rv(&[0, -1, 0, 0, 0])], 1);
    }

    #[test]
    fn zero_vector_has_empty_expansion() {
        let ctx = d4_ctx();
        let exp = ctx.cluster_expansion(&rv(&[0, 0, 0, 0, 0])).unwrap();
        assert_eq!(exp, Expansion::default());
    }

    #[test]
    fn two_delta_minus_alpha1_is_a_d_vector() {
        let ctx = d4_ctx();
        let gamma = ctx.system().delta().scale(2).sub(&RootVec::simple(5, 1));
        let cert = ctx.real_expansion(&gamma).unwrap().unwrap();
        assert_eq!(cert.expansion.real.len(), 1);
        assert_eq!(cert.expansion.real[&gamma], 1);
    }

    #[test]
    fn delta_has_no_real_expansion() {
        let ctx = d4_ctx();
        assert!(ctx.real_expansion(ctx.system().delta()).unwrap().is_none());
        let exp = ctx.cluster_expansion(ctx.system().delta()).unwrap();
        assert_eq!(exp, Expansion::pure_delta(1));
    }

    #[test]
    fn two_delta_expands_as_delta_squared() {
        let ctx = d4_ctx();
        let exp = ctx
            .cluster_expansion(&ctx.system().delta().scale(2))
            .unwrap();
        assert_eq!(exp, Expansion::pure_delta(2));
    }

    #[test]
    fn compatibility_basics() {
        let ctx = d4_ctx();
        let neg = |i: usize| PhiCElement::Real(RootVec::simple(5, i).neg());
        assert!(ctx.compatible(&neg(1), &neg(2)).unwrap());
        // (δ, α_1+α_3+α_4) compatible: the root is in Λ_c
        let lam = PhiCElement::Real(rv(&[0, 1, 0, 1, 1]));
        assert!(ctx.compatible(&PhiCElement::Delta, &lam).unwrap());
        // (δ, -α_1) not compatible
        assert!(!ctx.compatible(&PhiCElement::Delta, &neg(1)).unwrap());
        // symmetric on a sample
        assert_eq!(
            ctx.compatible(&lam, &PhiCElement::Delta).unwrap(),
            ctx.compatible(&PhiCElement::Delta, &lam).unwrap()
        );
    }

    #[test]
    fn lambda_pairs_within_component_are_incompatible() {
        let ctx = d4_ctx();
        let d = ctx.system().delta().clone();
        let beta = rv(&[0, 1, 1, 1, 0]);
        let comp = PhiCElement::Real(d.sub(&beta));
        let b = PhiCElement::Real(beta);
        assert!(!ctx.compatible(&b, &comp).unwrap());
    }

    #[test]
    fn oracle_on_simple_inputs() {
        let ctx = d4_ctx();
        let survivors = ctx
            .brute_force_expansion_oracle(&rv(&[-1, 0, 0, 0, 0]), 2)
            .unwrap();
        assert_eq!(survivors.len(), 1);
        assert_eq!(survivors[0].real[&rv(&[-1, 0, 0, 0, 0])], 1);

        let survivors = ctx
            .brute_force_expansion_oracle(ctx.system().delta(), 2)
            .unwrap();
        assert_eq!(survivors.len(), 1);
        assert_eq!(survivors[0], Expansion::pure_delta(1));
    }

    #[test]
    fn expansion_total_reproduces_gamma() {
        let ctx = d4_ctx();
        for gamma in [
            rv(&[1, 1, 1, 2, 1]),
            rv(&[-1, 2, 0, 1, 0]),
            rv(&[0, 1, 1, 1, 0]),
            rv(&[2, 0, 0, 1, 1]),
        ] {
            let exp = ctx.cluster_expansion(&gamma).unwrap();
            assert_eq!(exp.total(ctx.system()), gamma, "gamma {gamma}");
        }
    }
}
