//! Dinic max-flow on integer capacities.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    rev: usize,
    cap: BigInt,
}

pub(crate) struct FlowNetwork {
    graph: Vec<Vec<Edge>>,
    level: Vec<i64>,
    iter: Vec<usize>,
}

/// Handle to a forward edge, used to read back its flow.
#[derive(Clone, Copy, Debug)]
pub(crate) struct EdgeId {
    from: usize,
    index: usize,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNetwork { graph: vec![Vec::new(); nodes], level: vec![-1; nodes], iter: vec![0; nodes] }
    }

    pub(crate) fn add_edge(&mut self, from: usize, to: usize, cap: BigInt) -> EdgeId {
        let index = self.graph[from].len();
        let rev = self.graph[to].len() + usize::from(from == to);
        self.graph[from].push(Edge { to, rev, cap });
        self.graph[to].push(Edge { to: from, rev: index, cap: BigInt::zero() });
        EdgeId { from, index }
    }

    /// Flow pushed through a forward edge: the capacity its reverse edge gained.
    pub(crate) fn flow(&self, id: EdgeId) -> BigInt {
        let e = &self.graph[id.from][id.index];
        self.graph[e.to][e.rev].cap.clone()
    }

    fn bfs(&mut self, source: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for e in &self.graph[v] {
                if e.cap.is_positive() && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[v] + 1;
                    queue.push_back(e.to);
                }
            }
        }
    }

    fn dfs(&mut self, v: usize, sink: usize, limit: BigInt) -> BigInt {
        if v == sink {
            return limit;
        }
        while self.iter[v] < self.graph[v].len() {
            let i = self.iter[v];
            let (to, rev, cap) = {
                let e = &self.graph[v][i];
                (e.to, e.rev, e.cap.clone())
            };
            if cap.is_positive() && self.level[v] < self.level[to] {
                let pushed = self.dfs(to, sink, if cap < limit { cap } else { limit.clone() });
                if pushed.is_positive() {
                    self.graph[v][i].cap -= &pushed;
                    self.graph[to][rev].cap += &pushed;
                    return pushed;
                }
            }
            self.iter[v] += 1;
        }
        BigInt::zero()
    }

    pub(crate) fn max_flow(&mut self, source: usize, sink: usize) -> BigInt {
        let mut total = BigInt::zero();
        let unbounded: BigInt = self
            .graph[source]
            .iter()
            .fold(BigInt::zero(), |acc, e| acc + &e.cap);
        loop {
            self.bfs(source);
            if self.level[sink] < 0 {
                return total;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let pushed = self.dfs(source, sink, unbounded.clone());
                if pushed.is_zero() {
                    break;
                }
                total += pushed;
            }
        }
    }
}
