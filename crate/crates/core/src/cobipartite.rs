//! Maximum clique in a cobipartite unit-disk subgraph.
//!
//! When the vertex set splits into two cliques `A` and `B`, the complement
//! graph is bipartite with edges only between `A` and `B`. A maximum clique
//! is a maximum independent set of that complement, which König's theorem
//! reads off a maximum matching.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::geometry::{is_clique, CliqueResult, PointSet};

/// Two disjoint cliques of `ps`.
#[derive(Debug, Clone, Copy)]
pub struct CobipartiteInstance<'a> {
    pub ps: &'a PointSet,
    pub side_a: &'a [usize],
    pub side_b: &'a [usize],
}

impl<'a> CobipartiteInstance<'a> {
    pub fn new(ps: &'a PointSet, side_a: &'a [usize], side_b: &'a [usize]) -> Self {
        Self { ps, side_a, side_b }
    }

    /// Checks both sides are cliques and disjoint.
    pub fn check(&self) -> Result<()> {
        for side in [self.side_a, self.side_b] {
            if !is_clique(self.ps, side)? {
                return Err(Error::Contract(format!("side {side:?} is not a clique")));
            }
        }
        if let Some(id) = self.side_a.iter().find(|a| self.side_b.contains(a)) {
            return Err(Error::Contract(format!("point {id} is on both sides")));
        }
        Ok(())
    }
}

/// Bipartite graph with adjacency stored from the left side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        Self {
            left,
            right,
            adj: vec![Vec::new(); left],
        }
    }

    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(left, right);
        for &(a, b) in edges {
            debug_assert!(a < left && b < right);
            if !g.adj[a].contains(&b) {
                g.adj[a].push(b);
            }
        }
        g
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub match_of_left: Vec<Option<usize>>,
    pub size: usize,
}

impl Matching {
    pub fn match_of_right(&self, right: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; right];
        for (a, m) in self.match_of_left.iter().enumerate() {
            if let Some(b) = *m {
                out[b] = Some(a);
            }
        }
        out
    }
}

/// Complement edges between the sides: `(a, b)` iff the points are farther
/// than 1 apart. Local ids index into `side_a` and `side_b`.
pub fn complement_bipartite(inst: &CobipartiteInstance) -> BipartiteGraph {
    let mut g = BipartiteGraph::new(inst.side_a.len(), inst.side_b.len());
    for (a, &pa) in inst.side_a.iter().enumerate() {
        for (b, &pb) in inst.side_b.iter().enumerate() {
            if !inst.ps.adjacent(pa, pb) {
                g.adj[a].push(b);
            }
        }
    }
    g
}

const FREE: usize = usize::MAX;

/// Hopcroft–Karp maximum matching.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let mut mate_l = vec![FREE; g.left];
    let mut mate_r = vec![FREE; g.right];
    let mut dist = vec![0usize; g.left];
    let mut size = 0;

    loop {
        // BFS layers from free left vertices.
        let mut queue = VecDeque::new();
        for a in 0..g.left {
            if mate_l[a] == FREE {
                dist[a] = 0;
                queue.push_back(a);
            } else {
                dist[a] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(a) = queue.pop_front() {
            for &b in &g.adj[a] {
                let next = mate_r[b];
                if next == FREE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[a] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; g.left];
        for a in 0..g.left {
            if mate_l[a] == FREE && augment(g, a, &mut mate_l, &mut mate_r, &mut dist, &mut cursor)
            {
                size += 1;
            }
        }
    }

    Matching {
        match_of_left: mate_l
            .into_iter()
            .map(|b| (b != FREE).then_some(b))
            .collect(),
        size,
    }
}

fn augment(
    g: &BipartiteGraph,
    a: usize,
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    cursor: &mut [usize],
) -> bool {
    while cursor[a] < g.adj[a].len() {
        let b = g.adj[a][cursor[a]];
        cursor[a] += 1;
        let next = mate_r[b];
        if next == FREE
            || (dist[next] == dist[a] + 1 && augment(g, next, mate_l, mate_r, dist, cursor))
        {
            mate_l[a] = b;
            mate_r[b] = a;
            return true;
        }
    }
    dist[a] = usize::MAX;
    false
}

/// A vertex cover as membership flags per side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCover {
    pub left: Vec<bool>,
    pub right: Vec<bool>,
}

impl VertexCover {
    pub fn size(&self) -> usize {
        self.left.iter().chain(&self.right).filter(|&&c| c).count()
    }

    pub fn covers(&self, g: &BipartiteGraph) -> bool {
        g.adj
            .iter()
            .enumerate()
            .all(|(a, bs)| self.left[a] || bs.iter().all(|&b| self.right[b]))
    }
}

/// König's construction from a maximum matching.
///
/// Let `Z` be the vertices reachable from free left vertices along
/// alternating paths. The cover is `(L \ Z) ∪ (R ∩ Z)`.
pub fn min_vertex_cover(g: &BipartiteGraph, m: &Matching) -> VertexCover {
    let mate_r = m.match_of_right(g.right);
    let mut seen_l = vec![false; g.left];
    let mut seen_r = vec![false; g.right];
    let mut queue: VecDeque<usize> = (0..g.left)
        .filter(|&a| m.match_of_left[a].is_none())
        .collect();
    for &a in &queue {
        seen_l[a] = true;
    }
    while let Some(a) = queue.pop_front() {
        for &b in &g.adj[a] {
            if seen_r[b] {
                continue;
            }
            seen_r[b] = true;
            if let Some(next) = mate_r[b] {
                if !seen_l[next] {
                    seen_l[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    VertexCover {
        left: seen_l.iter().map(|&z| !z).collect(),
        right: seen_r,
    }
}

/// Maximum clique of `side_a ∪ side_b`, verified before return.
pub fn max_clique_cobipartite(inst: &CobipartiteInstance) -> Result<CliqueResult> {
    #[cfg(debug_assertions)]
    inst.check()?;

    let g = complement_bipartite(inst);
    let m = max_matching(&g);
    let cover = min_vertex_cover(&g, &m);
    let ids: Vec<usize> = inst
        .side_a
        .iter()
        .zip(&cover.left)
        .chain(inst.side_b.iter().zip(&cover.right))
        .filter(|(_, &covered)| !covered)
        .map(|(&id, _)| id)
        .collect();

    let expect = inst.side_a.len() + inst.side_b.len() - m.size;
    if ids.len() != expect {
        return Err(Error::Contract(format!(
            "König identity failed: {} + {} - {} != {}",
            inst.side_a.len(),
            inst.side_b.len(),
            m.size,
            ids.len()
        )));
    }
    CliqueResult::new(ids, "cobipartite").verified(inst.ps)
}
