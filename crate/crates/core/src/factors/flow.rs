//! Dinic max-flow with lower-bounded arcs, integral throughout.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
}

#[derive(Debug, Clone)]
struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add_node(&mut self) -> usize {
        self.out.push(Vec::new());
        self.out.len() - 1
    }

    /// Adds `u → v` and its residual twin; returns the forward arc id.
    fn add_arc(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to: v, cap });
        self.arcs.push(Arc { to: u, cap: 0 });
        self.out[u].push(id);
        self.out[v].push(id + 1);
        id
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        let mut level = vec![-1i32; self.out.len()];
        let mut cursor = vec![0usize; self.out.len()];
        loop {
            level.fill(-1);
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &id in &self.out[u] {
                    let arc = &self.arcs[id];
                    if arc.cap > 0 && level[arc.to] < 0 {
                        level[arc.to] = level[u] + 1;
                        queue.push_back(arc.to);
                    }
                }
            }
            if level[t] < 0 {
                return total;
            }
            cursor.fill(0);
            loop {
                let pushed = self.augment(s, t, i64::MAX, &level, &mut cursor);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(&mut self, u: usize, t: usize, limit: i64, level: &[i32], cursor: &mut [usize]) -> i64 {
        if u == t {
            return limit;
        }
        while cursor[u] < self.out[u].len() {
            let id = self.out[u][cursor[u]];
            let (to, cap) = (self.arcs[id].to, self.arcs[id].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let pushed = self.augment(to, t, limit.min(cap), level, cursor);
                if pushed > 0 {
                    self.arcs[id].cap -= pushed;
                    self.arcs[id ^ 1].cap += pushed;
                    return pushed;
                }
            }
            cursor[u] += 1;
        }
        0
    }
}

/// A flow network whose arcs carry `[lower, upper]` bounds. Feasibility is
/// decided by the usual reduction to a max-flow between a super source and
/// a super sink that absorb the lower-bound imbalances.
#[derive(Debug, Clone)]
pub(crate) struct BoundedNetwork {
    net: Network,
    excess: Vec<i64>,
    lower: Vec<(usize, i64, i64)>,
}

impl BoundedNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        BoundedNetwork {
            net: Network::new(nodes),
            excess: vec![0; nodes],
            lower: Vec::new(),
        }
    }

    /// Returns a handle for reading the arc's flow after [`Self::solve`].
    pub(crate) fn add_arc(&mut self, u: usize, v: usize, lower: i64, upper: i64) -> usize {
        debug_assert!(0 <= lower && lower <= upper);
        let id = self.net.add_arc(u, v, upper - lower);
        self.excess[v] += lower;
        self.excess[u] -= lower;
        self.lower.push((id, lower, upper - lower));
        self.lower.len() - 1
    }

    /// Finds a feasible circulation; returns the flow on every arc handle, or
    /// `None` when the bounds cannot be met.
    pub(crate) fn solve(mut self) -> Option<Vec<i64>> {
        let source = self.net.add_node();
        let sink = self.net.add_node();
        let mut demand = 0;
        for (v, &e) in self.excess.iter().enumerate() {
            if e > 0 {
                self.net.add_arc(source, v, e);
                demand += e;
            } else if e < 0 {
                self.net.add_arc(v, sink, -e);
            }
        }
        if self.net.max_flow(source, sink) != demand {
            return None;
        }
        Some(
            self.lower
                .iter()
                .map(|&(id, lower, cap)| lower + cap - self.net.arcs[id].cap)
                .collect(),
        )
    }
}
