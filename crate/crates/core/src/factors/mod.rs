//! Fractional factors and the (δ, I') sufficiency predicates.
//!
//! A fractional `[a, b]`-factor is an edge weighting `h: E → [0, 1]` whose
//! weighted degree lies in `[a, b]` at every vertex. Existence is decided on
//! the bipartite double cover: each vertex `v` gets a left copy fed from the
//! source and a right copy draining to the sink, both with bounds `[a, b]`,
//! and every edge `{u, v}` becomes unit arcs `u_L → v_R` and `v_L → u_R`. An
//! integral feasible flow halves into a fractional factor and every
//! fractional factor doubles into a feasible (hence integral) flow, so the
//! decision is exact.

mod flow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::RationalValue;
use crate::toughness;

use flow::BoundedNetwork;

/// Degree window `[a, b]`; `a = b = k` is the fractional k-factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorSpec {
    a: u32,
    b: u32,
}

impl FactorSpec {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a < 1 || a > b {
            return Err(Error::invalid(format!("need 1 <= a <= b, got a = {a}, b = {b}")));
        }
        Ok(FactorSpec { a, b })
    }

    pub fn k_factor(k: u32) -> Result<Self> {
        Self::new(k, k)
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }
}

/// A witness weighting, stored doubled so every weight is an integer in `0..=2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionalFactor {
    pub doubled: Vec<((usize, usize), u8)>,
}

impl FractionalFactor {
    pub fn weight(&self, u: usize, v: usize) -> RationalValue {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.doubled
            .iter()
            .find(|(e, _)| *e == (u, v))
            .map_or(RationalValue::ZERO, |&(_, w)| RationalValue::new(w as u64, 2))
    }

    /// Twice the weighted degree of every vertex of an order-`n` graph.
    pub fn doubled_degrees(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for &((u, v), w) in &self.doubled {
            out[u] += w as u32;
            out[v] += w as u32;
        }
        out
    }
}

pub fn has_fractional_factor(g: &Graph, spec: FactorSpec) -> bool {
    fractional_factor(g, spec).is_some()
}

/// Finds a fractional factor, or `None` when none exists.
pub fn fractional_factor(g: &Graph, spec: FactorSpec) -> Option<FractionalFactor> {
    let n = g.order();
    if n == 0 {
        return Some(FractionalFactor { doubled: Vec::new() });
    }
    let (a, b) = (spec.a as i64, spec.b as i64);
    let (source, sink) = (0, 1);
    let left = |v: usize| 2 + v;
    let right = |v: usize| 2 + n + v;
    let mut net = BoundedNetwork::new(2 + 2 * n);
    for v in 0..n {
        net.add_arc(source, left(v), a, b);
        net.add_arc(right(v), sink, a, b);
    }
    let edges = g.edges();
    let mut handles = Vec::with_capacity(edges.len());
    for &(u, v) in &edges {
        let uv = net.add_arc(left(u), right(v), 0, 1);
        let vu = net.add_arc(left(v), right(u), 0, 1);
        handles.push((uv, vu));
    }
    net.add_arc(sink, source, 0, b * n as i64);
    let flows = net.solve()?;
    let doubled = edges
        .into_iter()
        .zip(handles)
        .map(|(e, (uv, vu))| (e, (flows[uv] + flows[vu]) as u8))
        .collect();
    Some(FractionalFactor { doubled })
}

/// The I' threshold `k + (k − 1)/(t + 1)` for `δ = k + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RequirementThreshold {
    pub k: u32,
    pub t: u32,
    pub bound: RationalValue,
}

impl RequirementThreshold {
    pub fn new(k: u32, t: u32) -> Self {
        let bound = RationalValue::integer(k as u64) + RationalValue::new(k as u64 - 1, t as u64 + 1);
        RequirementThreshold { k, t, bound }
    }

    /// Strict comparison: meeting the bound with equality is not enough.
    pub fn exceeded_by(&self, i_prime: RationalValue) -> bool {
        i_prime > self.bound
    }
}

/// Inclusive range of minimum degrees considered for an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaScope {
    pub lo: u32,
    pub hi: u32,
}

impl DeltaScope {
    /// Every minimum degree from `k` up, used where no order-based cap applies.
    pub fn unbounded(k: u32) -> Self {
        DeltaScope { lo: k, hi: u32::MAX }
    }

    pub fn contains(&self, delta: u32) -> bool {
        (self.lo..=self.hi).contains(&delta)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }
}

/// Minimum degrees worth searching for order `n` and capacity `k`.
///
/// When `n >= 4k − 5`, a minimum degree of at least `n/2` already forces a
/// fractional k-factor, so the scope stops strictly below `n/2`; otherwise
/// it runs up to `n − 1`.
///
/// ```
/// use netinverse::factors::delta_scope;
/// let scope = delta_scope(15, 2).unwrap();
/// assert_eq!((scope.lo, scope.hi), (2, 7));
/// ```
pub fn delta_scope(n: usize, k: u32) -> Result<DeltaScope> {
    if n < 3 || k < 2 {
        return Err(Error::invalid(format!("need n >= 3 and k >= 2, got n = {n}, k = {k}")));
    }
    let n32 = n as u32;
    let hi = if n32 + 5 >= 4 * k {
        n32.div_ceil(2) - 1
    } else {
        n32 - 1
    };
    if hi < k {
        return Err(Error::InfeasibleScope { n, k: k as usize });
    }
    Ok(DeltaScope { lo: k, hi })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    DegreeTooLow,
    OutOfScope,
    BoundNotExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub delta: u32,
    pub i_prime: RationalValue,
    /// Threshold for this δ; absent when δ < k.
    pub bound: Option<RationalValue>,
    pub rejection: Option<RejectReason>,
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        self.rejection.is_none()
    }
}

/// Accepts iff `δ >= k`, δ lies in `scope`, and `I' > k + (k − 1)/(δ − k + 1)`.
pub fn check_values(delta: u32, i_prime: RationalValue, k: u32, scope: DeltaScope) -> Verdict {
    let mut verdict = Verdict {
        delta,
        i_prime,
        bound: None,
        rejection: None,
    };
    if delta < k {
        verdict.rejection = Some(RejectReason::DegreeTooLow);
        return verdict;
    }
    let threshold = RequirementThreshold::new(k, delta - k);
    verdict.bound = Some(threshold.bound);
    if !scope.contains(delta) {
        verdict.rejection = Some(RejectReason::OutOfScope);
    } else if !threshold.exceeded_by(i_prime) {
        verdict.rejection = Some(RejectReason::BoundNotExceeded);
    }
    verdict
}

/// [`check_values`] with δ and the exact I' computed from `g`.
pub fn requirement_check(g: &Graph, k: u32, scope: DeltaScope) -> Result<Verdict> {
    if k < 2 {
        return Err(Error::invalid("the requirement needs k >= 2"));
    }
    let i_prime = toughness::isolated_toughness_variant_value(g)?;
    Ok(check_values(g.min_degree(), i_prime, k, scope))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k: u32,
    pub verdict: Verdict,
    pub factor_exists: bool,
}

impl Certificate {
    /// True when the (δ, I') condition held and the factor was confirmed.
    pub fn certified(&self) -> bool {
        self.verdict.accepted() && self.factor_exists
    }
}

/// Checks the sufficiency condition on `g` (any δ >= k) and, when it holds,
/// confirms the fractional k-factor with the flow checker.
///
/// A graph that satisfies the condition but has no factor is reported as
/// [`Error::ConsistencyViolation`]: the sufficiency result rules that out,
/// so it can only mean a bug.
pub fn theorem1_certify(g: &Graph, k: u32) -> Result<Certificate> {
    let verdict = requirement_check(g, k, DeltaScope::unbounded(k))?;
    let factor_exists = has_fractional_factor(g, FactorSpec::k_factor(k)?);
    if verdict.accepted() && !factor_exists {
        return Err(Error::ConsistencyViolation(format!(
            "graph {} has δ = {} and I' = {} above the bound but no fractional {k}-factor",
            g.bit_string(),
            verdict.delta,
            verdict.i_prime
        )));
    }
    Ok(Certificate {
        k,
        verdict,
        factor_exists,
    })
}
