//! Slow, definition-level oracles shared by the integration tests. Nothing
//! here reuses the library's algorithms beyond building graphs.
#![allow(dead_code)]

use num_rational::Ratio;
use netinverse::{Graph, RationalValue};

pub type Q = Ratio<i64>;

/// Adjacency matrix, to keep the oracles off the library's bitmasks.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Isolated vertices of G − S, by looking at every remaining pair.
pub fn isolated_after(m: &[Vec<bool>], removed: &[bool]) -> usize {
    let n = m.len();
    (0..n)
        .filter(|&x| !removed[x] && (0..n).all(|y| y == x || removed[y] || !m[x][y]))
        .count()
}

/// `None` stands for infinity.
fn brute(g: &Graph, offset: i64) -> Option<Ratio<i64>> {
    let m = matrix(g);
    let n = m.len();
    let mut best: Option<Ratio<i64>> = None;
    for mask in 0u32..(1 << n) {
        let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let i = isolated_after(&m, &removed) as i64;
        if i < 2 {
            continue;
        }
        let r = Ratio::new(mask.count_ones() as i64, i - offset);
        if best.map_or(true, |b| r < b) {
            best = Some(r);
        }
    }
    best
}

pub fn brute_i(g: &Graph) -> Option<Ratio<i64>> {
    brute(g, 0)
}

pub fn brute_i_prime(g: &Graph) -> Option<Ratio<i64>> {
    brute(g, 1)
}

pub fn same(value: RationalValue, oracle: Option<Ratio<i64>>) -> bool {
    match (value.numer(), value.denom(), oracle) {
        (None, None, None) => true,
        (Some(p), Some(q), Some(r)) => Ratio::new(p as i64, q as i64) == r,
        _ => false,
    }
}

/// Minimum degree from the matrix.
pub fn brute_delta(g: &Graph) -> u32 {
    let m = matrix(g);
    m.iter().map(|row| row.iter().filter(|&&b| b).count() as u32).min().unwrap_or(0)
}

/// Decides whether some h: E → [0,1] has every weighted degree in [a, b],
/// by phase-one simplex in exact rationals with Bland's rule.
pub fn lp_fractional_factor(g: &Graph, a: i64, b: i64) -> bool {
    let m = matrix(g);
    let n = m.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| m[u][v])
        .collect();
    let e = edges.len();
    // Columns: h (e) | surplus per vertex (n) | slack per vertex (n) | slack per edge (e) | artificial per vertex (n)
    let (h0, sur0, sl0, ue0, art0) = (0, e, e + n, e + 2 * n, 2 * e + 2 * n);
    let cols = 2 * e + 3 * n;
    let rows = 2 * n + e;
    let zero = Q::from_integer(0);
    let one = Q::from_integer(1);
    let mut t = vec![vec![zero; cols + 1]; rows];
    let mut basis = vec![0usize; rows];
    for v in 0..n {
        // Σ h − surplus + artificial = a
        let r = v;
        for (j, &(x, y)) in edges.iter().enumerate() {
            if x == v || y == v {
                t[r][h0 + j] = one;
            }
        }
        t[r][sur0 + v] = -one;
        t[r][art0 + v] = one;
        t[r][cols] = Q::from_integer(a);
        basis[r] = art0 + v;
        // Σ h + slack = b
        let r = n + v;
        for (j, &(x, y)) in edges.iter().enumerate() {
            if x == v || y == v {
                t[r][h0 + j] = one;
            }
        }
        t[r][sl0 + v] = one;
        t[r][cols] = Q::from_integer(b);
        basis[r] = sl0 + v;
    }
    for j in 0..e {
        let r = 2 * n + j;
        t[r][h0 + j] = one;
        t[r][ue0 + j] = one;
        t[r][cols] = one;
        basis[r] = ue0 + j;
    }
    // Reduced costs of "minimize Σ artificials".
    let mut cost = vec![zero; cols + 1];
    for r in 0..n {
        for c in 0..=cols {
            cost[c] -= t[r][c];
        }
    }
    for v in 0..n {
        cost[art0 + v] = zero;
    }
    loop {
        let Some(enter) = (0..cols).find(|&c| cost[c] < zero) else {
            break;
        };
        let mut leave: Option<usize> = None;
        for r in 0..rows {
            if t[r][enter] > zero {
                let ratio = t[r][cols] / t[r][enter];
                leave = match leave {
                    None => Some(r),
                    Some(l) => {
                        let cur = t[l][cols] / t[l][enter];
                        if ratio < cur || (ratio == cur && basis[r] < basis[l]) {
                            Some(r)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
        }
        let l = leave.expect("phase one is bounded below by zero");
        let p = t[l][enter];
        for c in 0..=cols {
            t[l][c] /= p;
        }
        for r in 0..rows {
            if r != l && t[r][enter] != zero {
                let f = t[r][enter];
                for c in 0..=cols {
                    let d = f * t[l][c];
                    t[r][c] -= d;
                }
            }
        }
        let f = cost[enter];
        for c in 0..=cols {
            let d = f * t[l][c];
            cost[c] -= d;
        }
        basis[l] = enter;
    }
    // Objective value is −cost[rhs].
    cost[cols] == zero
}

pub fn graph_from_code(n: usize, code: u64) -> Graph {
    let d = n * (n - 1) / 2;
    let bits: Vec<bool> = (0..d).map(|i| code >> i & 1 == 1).collect();
    Graph::from_bits(n, &bits).unwrap()
}
