//! Maximum-weight antichain in a finite poset by a minimum-flow reduction.
//!
//! Units of flow travel along chains; forcing at least `w_v` units through
//! every element and minimizing the total gives, by LP duality (the
//! weighted form of the chain/antichain min-max), exactly the maximum
//! weight of an antichain. The minimum flow is computed with two Dinic
//! passes: a feasibility circulation, then a reduction along residual
//! `t → s` paths.

#[derive(Clone, Copy)]
struct Edge {
    to: usize,
    cap: u64,
    rev: usize,
}

struct Dinic {
    graph: Vec<Vec<Edge>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

const INF: u64 = u64::MAX / 4;

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            graph: vec![Vec::new(); n],
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    /// Returns the edge handle (node, index) for later capacity inspection.
    fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> (usize, usize) {
        let rev_from = self.graph[to].len();
        let rev_to = self.graph[from].len();
        self.graph[from].push(Edge { to, cap, rev: rev_from });
        self.graph[to].push(Edge {
            to: from,
            cap: 0,
            rev: rev_to,
        });
        (from, rev_to)
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for e in &self.graph[v] {
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[v] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, f: u64) -> u64 {
        if v == t {
            return f;
        }
        while self.iter[v] < self.graph[v].len() {
            let e = self.graph[v][self.iter[v]];
            if e.cap > 0 && self.level[v] < self.level[e.to] {
                let d = self.dfs(e.to, t, f.min(e.cap));
                if d > 0 {
                    self.graph[v][self.iter[v]].cap -= d;
                    let rev = e.rev;
                    self.graph[e.to][rev].cap += d;
                    return d;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, INF);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.graph.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for e in &self.graph[v] {
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}

pub struct AntichainResult {
    /// Maximum antichain weight.
    pub weight: u64,
    /// Indices of a realizing antichain.
    pub antichain: Vec<usize>,
}

/// `less(u, v)` must be a strict partial order (irreflexive, transitive).
/// Weights must be positive.
pub fn max_weight_antichain(
    weights: &[u64],
    less: impl Fn(usize, usize) -> bool,
) -> AntichainResult {
    let n = weights.len();
    if n == 0 {
        return AntichainResult {
            weight: 0,
            antichain: Vec::new(),
        };
    }
    // node layout: s, t, super-source, super-sink, then v_in/v_out pairs
    let s = 0;
    let t = 1;
    let ss = 2;
    let tt = 3;
    let v_in = |v: usize| 4 + 2 * v;
    let v_out = |v: usize| 5 + 2 * v;

    let mut net = Dinic::new(4 + 2 * n);
    // lower-bounded edges v_in → v_out: capacity ∞ − w, plus the
    // excess-transfer edges of the feasibility transform
    let mut inner_edges = Vec::with_capacity(n);
    for v in 0..n {
        let w = weights[v];
        let handle = net.add_edge(v_in(v), v_out(v), INF - w);
        inner_edges.push(handle);
        net.add_edge(ss, v_out(v), w);
        net.add_edge(v_in(v), tt, w);
        net.add_edge(s, v_in(v), INF);
        net.add_edge(v_out(v), t, INF);
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && less(u, v) {
                net.add_edge(v_out(u), v_in(v), INF);
            }
        }
    }
    // circulation closure
    let (ts_node, ts_idx) = net.add_edge(t, s, INF);

    let need: u64 = weights.iter().sum();
    let got = net.max_flow(ss, tt);
    assert_eq!(got, need, "feasibility flow must saturate all lower bounds");

    // flow currently pushed s → t equals the reverse capacity of (t, s)
    let feasible_value = {
        let e = net.graph[ts_node][ts_idx];
        net.graph[e.to][e.rev].cap
    };
    // remove the closure edge, then push back t → s as much as possible
    {
        let e = net.graph[ts_node][ts_idx];
        let (to, rev) = (e.to, e.rev);
        net.graph[ts_node][ts_idx].cap = 0;
        net.graph[to][rev].cap = 0;
    }
    let reduction = net.max_flow(t, s);
    let min_flow = feasible_value - reduction;

    // recover the antichain: nodes reachable from t in the final residual;
    // v is in the antichain iff v_out is reached but v_in is not (the
    // lower-bound edge is tight and separates the cut)
    let reach = net.reachable_from(t);
    let mut antichain = Vec::new();
    let mut weight_sum = 0u64;
    for v in 0..n {
        if reach[v_out(v)] && !reach[v_in(v)] {
            antichain.push(v);
            weight_sum += weights[v];
        }
    }
    assert_eq!(
        weight_sum, min_flow,
        "antichain recovery must witness the min-flow value"
    );
    AntichainResult {
        weight: min_flow,
        antichain,
    }
}

/// Exhaustive reference: all subsets (≤ ~20 elements).
pub fn max_weight_antichain_brute_force(
    weights: &[u64],
    less: impl Fn(usize, usize) -> bool,
) -> u64 {
    let n = weights.len();
    assert!(n <= 22, "brute force is exponential");
    let mut best = 0u64;
    'outer: for mask in 0u32..(1u32 << n) {
        let chosen: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        for (a, &i) in chosen.iter().enumerate() {
            for &j in chosen.iter().skip(a + 1) {
                if less(i, j) || less(j, i) {
                    continue 'outer;
                }
            }
        }
        best = best.max(chosen.iter().map(|&i| weights[i]).sum());
    }
    best
}
