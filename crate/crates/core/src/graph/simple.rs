use std::fmt;

use crate::error::{Error, Result};

/// Simple undirected graph on at most 64 vertices, stored as adjacency
/// bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub const MAX_VERTICES: usize = 64;

    pub fn empty(n: usize) -> Result<Self> {
        if n > Self::MAX_VERTICES {
            return Err(Error::TooLarge(format!(
                "simple graphs are limited to {} vertices",
                Self::MAX_VERTICES
            )));
        }
        Ok(SimpleGraph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b)?;
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut g = Self::empty(a + b)?;
        for i in 0..a {
            for j in 0..b {
                g.add_edge(i, a + j)?;
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.n || b >= self.n {
            return Err(Error::IndexOutOfRange {
                what: "vertex",
                index: a.max(b) + 1,
                max: self.n,
            });
        }
        if a == b {
            return Err(Error::InvalidGraph(format!("loop at v{}", a + 1)));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        if a < self.n && b < self.n {
            self.adj[a] &= !(1 << b);
            self.adj[b] &= !(1 << a);
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.has_edge(v, w))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Common degree when the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0.min(self.n.saturating_sub(1)));
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 0u64;
            let mut frontier = 1u64 << start;
            while frontier != 0 {
                comp |= frontier;
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[v];
                }
                frontier = next & !comp;
            }
            seen |= comp;
            out.push((0..self.n).filter(|&v| comp >> v & 1 == 1).collect());
        }
        out
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for (a, b) in self.edges() {
            g.adj[perm[a]] |= 1 << perm[b];
            g.adj[perm[b]] |= 1 << perm[a];
        }
        g
    }

    /// Human-readable structural name built from components: `K2`, `C5`,
    /// `K2+K2`, `K3,3`, ... Components that are neither complete, cycles nor
    /// complete bipartite are named `G<order>d<degree>`.
    pub fn describe(&self) -> String {
        let comps = self.components();
        let mut names: Vec<String> = comps.iter().map(|c| self.describe_component(c)).collect();
        names.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        if names.is_empty() {
            "empty".into()
        } else {
            names.join("+")
        }
    }

    fn describe_component(&self, comp: &[usize]) -> String {
        let n = comp.len();
        let degs: Vec<usize> = comp.iter().map(|&v| self.degree(v)).collect();
        let edges: usize = degs.iter().sum::<usize>() / 2;
        if n == 1 {
            return "K1".into();
        }
        if n >= 3 && degs.iter().all(|&d| d == 2) {
            return format!("C{n}");
        }
        if edges == n * (n - 1) / 2 {
            return format!("K{n}");
        }
        // Complete bipartite: two-colorable with all cross edges present.
        let mut side = vec![None; self.n];
        side[comp[0]] = Some(0u8);
        let mut stack = vec![comp[0]];
        let mut bipartite = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(1 - side[v].unwrap_or(0));
                        stack.push(w);
                    }
                    Some(s) if Some(s) == side[v] => bipartite = false,
                    _ => {}
                }
            }
        }
        if bipartite {
            let a = comp.iter().filter(|&&v| side[v] == Some(0)).count();
            let b = n - a;
            if edges == a * b {
                return format!("K{},{}", a.min(b), a.max(b));
            }
        }
        let d = degs[0];
        if degs.iter().all(|&x| x == d) {
            format!("G{n}d{d}")
        } else {
            format!("G{n}")
        }
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|(a, b)| format!("{}-{}", a + 1, b + 1))
            .collect();
        write!(f, "{} [{}]", self.describe(), edges.join(" "))
    }
}
