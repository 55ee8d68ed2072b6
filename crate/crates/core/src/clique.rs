//! Exact maximum clique by branch and bound over bitsets, with greedy
//! colouring bounds and a degeneracy ordering.

use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn empty(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn difference_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn intersection(&self, other: &Bitset) -> Bitset {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// Simple undirected graph on vertices `0..len`.
#[derive(Debug, Clone)]
pub struct Graph {
    len: usize,
    adj: Vec<Bitset>,
}

impl Graph {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            adj: vec![Bitset::empty(len); len],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Vertices in degeneracy order, densest core first; ties broken by
    /// vertex index.
    fn degeneracy_order(&self) -> Vec<usize> {
        let mut degree: Vec<usize> = (0..self.len).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.len];
        let mut order = Vec::with_capacity(self.len);
        for _ in 0..self.len {
            let v = (0..self.len)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (degree[v], v))
                .expect("vertex left");
            removed[v] = true;
            order.push(v);
            for u in self.adj[v].iter() {
                if !removed[u] {
                    degree[u] -= 1;
                }
            }
        }
        order.reverse();
        order
    }

    /// Copy of the graph with vertex `order[i]` renamed to `i`.
    fn relabel(&self, order: &[usize]) -> Graph {
        let mut position = vec![0; self.len];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut g = Graph::new(self.len);
        for (i, &v) in order.iter().enumerate() {
            for u in self.adj[v].iter() {
                g.adj[i].insert(position[u]);
            }
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueOutcome {
    /// Vertices of the best clique found, ascending.
    pub clique: Vec<usize>,
    /// The search ran to completion, so `clique` is maximum.
    pub optimal: bool,
    pub nodes: u64,
}

struct Search<'a> {
    g: &'a Graph,
    deadline: Option<Instant>,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    timed_out: bool,
}

impl Search<'_> {
    fn out_of_time(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if self.nodes % 1024 == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    /// Greedy sequential colouring of `p`; returns vertices with their
    /// colour number, in non-decreasing colour order.
    fn colour(&self, p: &Bitset) -> Vec<(usize, usize)> {
        let mut uncoloured = p.clone();
        let mut out = Vec::with_capacity(p.count());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut candidates = uncoloured.clone();
            while let Some(v) = candidates.first() {
                candidates.remove(v);
                candidates.difference_with(&self.g.adj[v]);
                uncoloured.remove(v);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut p: Bitset) {
        self.nodes += 1;
        if self.out_of_time() {
            return;
        }
        let coloured = self.colour(&p);
        for &(v, colour) in coloured.iter().rev() {
            if self.current.len() + colour <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = p.intersection(&self.g.adj[v]);
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            if self.timed_out {
                return;
            }
            p.remove(v);
        }
    }
}

/// Greedy clique: repeatedly take the first candidate, in degeneracy order.
fn greedy(g: &Graph) -> Vec<usize> {
    let mut clique = Vec::new();
    let mut p = Bitset::full(g.len);
    while let Some(v) = p.first() {
        clique.push(v);
        p.intersect_with(&g.adj[v]);
    }
    clique
}

/// A maximum clique of `graph`, or the best found before `deadline`.
pub fn maximum_clique(graph: &Graph, deadline: Option<Instant>) -> CliqueOutcome {
    if graph.is_empty() {
        return CliqueOutcome {
            clique: Vec::new(),
            optimal: true,
            nodes: 0,
        };
    }
    let order = graph.degeneracy_order();
    let g = graph.relabel(&order);
    let mut search = Search {
        g: &g,
        deadline,
        best: greedy(&g),
        current: Vec::new(),
        nodes: 0,
        timed_out: false,
    };
    search.expand(Bitset::full(g.len));
    let mut clique: Vec<usize> = search.best.iter().map(|&i| order[i]).collect();
    clique.sort_unstable();
    CliqueOutcome {
        clique,
        optimal: !search.timed_out,
        nodes: search.nodes,
    }
}
