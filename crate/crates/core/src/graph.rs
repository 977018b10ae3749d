//! Zero-divisor graphs over quaternion and matrix rings, with exact
//! distance, diameter, girth, completeness, and export.
//!
//! Vertices are the nonzero zero divisors, ordered by canonical code.
//! Directed edges are `x -> y` iff `xy = 0`; the undirected graph joins
//! `x` and `y` iff `xy = 0` or `yx = 0`. Self-loops are never stored,
//! even for elements with `x^2 = 0` (their count is kept as a statistic).

use crate::bits::{iter_ones, BitMatrix, BitSet};
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::mat2::{enumerate_matrix_class, Mat2};
use crate::matn::{enumerate_matn_class, MatN};
use crate::quat::{enumerate_class, ElementClass, Quat};
use crate::ring::{mul_mod, RingSpec};
use rayon::prelude::*;
use serde::Serialize;

/// Which ring the graph lives over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    /// `Z_n[i,j,k]`.
    Quat(RingSpec),
    /// `M_2(Z_m)`.
    Mat2 { modulus: u64 },
    /// `M_dim(F_q)`, prime `q`.
    MatN { dim: usize, q: u64 },
    /// Hand-built graph for tests; codes are `0..vertex_count`.
    Fixture,
}

impl RingKind {
    fn zero_divisor_codes(&self, budgets: &Budgets) -> Result<Vec<u64>> {
        match self {
            RingKind::Quat(spec) => Ok(enumerate_class(spec, ElementClass::ZeroDivisor, budgets)?
                .map(|z| z.code())
                .collect()),
            RingKind::Mat2 { modulus } => Ok(enumerate_matrix_class(
                *modulus,
                ElementClass::ZeroDivisor,
                budgets,
            )?
            .map(|x| x.code())
            .collect()),
            RingKind::MatN { dim, q } => Ok(enumerate_matn_class(
                *dim,
                *q,
                ElementClass::ZeroDivisor,
                budgets,
            )?
            .map(|x| x.code())
            .collect()),
            RingKind::Fixture => Err(Error::Internal(
                "fixture graphs are built from explicit edges".into(),
            )),
        }
    }

    pub fn label_of_code(&self, code: u64) -> String {
        match self {
            RingKind::Quat(spec) => Quat::from_code(code, spec.modulus()).label(),
            RingKind::Mat2 { modulus } => Mat2::from_code(code, *modulus).label(),
            RingKind::MatN { dim, q } => MatN::from_code(code, *dim, *q).label(),
            RingKind::Fixture => format!("v{code}"),
        }
    }
}

/// Decoded vertex elements, kept for implicit adjacency and on-demand
/// products. Quaternion products are pre-screened by the norm: `zw = 0`
/// forces `|z||w| = 0 mod n`.
#[derive(Debug)]
enum Elems {
    Quat {
        items: Vec<Quat>,
        norms: Vec<u64>,
        n: u64,
    },
    Mat2(Vec<Mat2>),
    MatN(Vec<MatN>),
    Fixture,
}

impl Elems {
    fn build(kind: &RingKind, codes: &[u64]) -> Elems {
        match kind {
            RingKind::Quat(spec) => {
                let n = spec.modulus();
                let items: Vec<Quat> = codes.iter().map(|&c| Quat::from_code(c, n)).collect();
                let norms = items.iter().map(|z| z.norm().value()).collect();
                Elems::Quat { items, norms, n }
            }
            RingKind::Mat2 { modulus } => {
                Elems::Mat2(codes.iter().map(|&c| Mat2::from_code(c, *modulus)).collect())
            }
            RingKind::MatN { dim, q } => Elems::MatN(
                codes
                    .iter()
                    .map(|&c| MatN::from_code(c, *dim, *q))
                    .collect(),
            ),
            RingKind::Fixture => Elems::Fixture,
        }
    }

    fn product_is_zero(&self, i: usize, j: usize) -> bool {
        match self {
            Elems::Quat { items, norms, n } => {
                mul_mod(norms[i], norms[j], *n) == 0 && items[i].mul_raw(&items[j]).is_zero()
            }
            Elems::Mat2(items) => items[i].mul_raw(&items[j]).is_zero(),
            Elems::MatN(items) => items[i]
                .mul(&items[j])
                .expect("same ring by construction")
                .is_zero(),
            Elems::Fixture => unreachable!("fixture graphs are always explicit"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMode {
    Explicit,
    Implicit,
}

/// A shortest path certifying a distance or diameter claim; `path` lists
/// vertex codes from `from` to `to` inclusive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPath {
    pub from: u64,
    pub to: u64,
    pub path: Vec<u64>,
}

#[derive(Debug)]
pub struct ZdGraph {
    kind: RingKind,
    directed: bool,
    codes: Vec<u64>,
    elems: Elems,
    adj: Option<BitMatrix>,
    self_annihilating: u64,
}

impl ZdGraph {
    pub fn build(
        kind: RingKind,
        directed: bool,
        mode: GraphMode,
        budgets: &Budgets,
    ) -> Result<ZdGraph> {
        let codes = kind.zero_divisor_codes(budgets)?;
        let v = codes.len();
        let elems = Elems::build(&kind, &codes);
        let self_annihilating = (0..v).filter(|&i| elems.product_is_zero(i, i)).count() as u64;
        let adj = match mode {
            GraphMode::Implicit => None,
            GraphMode::Explicit => {
                let bits = BitMatrix::storage_bits(v, v);
                if bits > budgets.mem_bits {
                    return Err(Error::BudgetExceeded {
                        what: "explicit adjacency bit-matrix (retry in implicit mode)",
                        required: bits,
                        budget: budgets.mem_bits,
                    });
                }
                let mut m = BitMatrix::build_parallel(v, v, |i, row| {
                    for j in 0..v {
                        if i != j && elems.product_is_zero(i, j) {
                            row[j / 64] |= 1 << (j % 64);
                        }
                    }
                });
                if !directed {
                    m.symmetrize();
                }
                Some(m)
            }
        };
        Ok(ZdGraph {
            kind,
            directed,
            codes,
            elems,
            adj,
            self_annihilating,
        })
    }

    /// Hand-built graph on vertices `0..vertex_count` for tests and
    /// operation sanity checks; always explicit.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)], directed: bool) -> Result<ZdGraph> {
        let mut adj = BitMatrix::new(vertex_count, vertex_count);
        for &(a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::NotAVertex {
                    code: a.max(b) as u64,
                });
            }
            if a == b {
                return Err(Error::Internal("self-loops are not representable".into()));
            }
            adj.set(a, b);
            if !directed {
                adj.set(b, a);
            }
        }
        Ok(ZdGraph {
            kind: RingKind::Fixture,
            directed,
            codes: (0..vertex_count as u64).collect(),
            elems: Elems::Fixture,
            adj: Some(adj),
            self_annihilating: 0,
        })
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub(crate) fn adjacency(&self) -> Option<&BitMatrix> {
        self.adj.as_ref()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_explicit(&self) -> bool {
        self.adj.is_some()
    }

    pub fn vertex_count(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    /// Vertices with `x^2 = 0`; they carry no loop in the graph.
    pub fn self_annihilating_count(&self) -> u64 {
        self.self_annihilating
    }

    pub fn index_of_code(&self, code: u64) -> Result<usize> {
        self.codes
            .binary_search(&code)
            .map_err(|_| Error::NotAVertex { code })
    }

    /// Adjacency in index space, honoring orientation for directed graphs.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        match &self.adj {
            Some(m) => m.get(i, j),
            None => {
                if self.directed {
                    self.elems.product_is_zero(i, j)
                } else {
                    self.elems.product_is_zero(i, j) || self.elems.product_is_zero(j, i)
                }
            }
        }
    }

    /// Arc count for directed graphs, unordered edge count otherwise.
    pub fn edge_count(&self) -> u64 {
        let total = match &self.adj {
            Some(m) => m.count_all(),
            None => {
                let v = self.vertex_count();
                (0..v)
                    .into_par_iter()
                    .map(|i| (0..v).filter(|&j| self.adjacent(i, j)).count() as u64)
                    .sum()
            }
        };
        if self.directed {
            total
        } else {
            total / 2
        }
    }

    fn neighbors_out(&self, i: usize) -> Vec<usize> {
        match &self.adj {
            Some(m) => iter_ones(m.row(i)).collect(),
            None => (0..self.vertex_count())
                .filter(|&j| self.adjacent(i, j))
                .collect(),
        }
    }

    fn neighbors_in(&self, j: usize) -> Vec<usize> {
        if !self.directed {
            return self.neighbors_out(j);
        }
        match &self.adj {
            Some(m) => (0..self.vertex_count()).filter(|&i| m.get(i, j)).collect(),
            None => (0..self.vertex_count())
                .filter(|&i| i != j && self.elems.product_is_zero(i, j))
                .collect(),
        }
    }

    /// Closed neighborhood `N[i]` in the undirected sense.
    pub fn closed_neighborhood(&self, i: usize) -> Result<BitSet> {
        self.require_undirected()?;
        let mut set = BitSet::new(self.vertex_count());
        match &self.adj {
            Some(m) => set.or_words(m.row(i)),
            None => {
                for j in self.neighbors_out(i) {
                    set.set(j);
                }
            }
        }
        set.set(i);
        Ok(set)
    }

    fn require_undirected(&self) -> Result<()> {
        if self.directed {
            Err(Error::DirectedGraph)
        } else {
            Ok(())
        }
    }

    fn require_directed(&self) -> Result<()> {
        if self.directed {
            Ok(())
        } else {
            Err(Error::UndirectedGraph)
        }
    }

    /// BFS over out-edges (or in-edges when `reverse`); returns distances
    /// and parents, `u32::MAX` marking unreached.
    fn bfs(&self, src: usize, reverse: bool) -> (Vec<u32>, Vec<u32>) {
        let v = self.vertex_count();
        let mut dist = vec![u32::MAX; v];
        let mut parent = vec![u32::MAX; v];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let nbrs = if reverse {
                self.neighbors_in(u)
            } else {
                self.neighbors_out(u)
            };
            for w in nbrs {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u as u32;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    fn path_from_parents(&self, parent: &[u32], mut to: usize) -> Vec<u64> {
        let mut rev = vec![self.codes[to]];
        while parent[to] != u32::MAX {
            to = parent[to] as usize;
            rev.push(self.codes[to]);
        }
        rev.reverse();
        rev
    }

    /// Shortest-path distance and one shortest path between two vertex
    /// codes; `None` when unreachable. Directed graphs follow orientation.
    pub fn distance(&self, from_code: u64, to_code: u64) -> Result<Option<(u32, Vec<u64>)>> {
        let a = self.index_of_code(from_code)?;
        let b = self.index_of_code(to_code)?;
        if a == b {
            return Err(Error::Internal(
                "distance endpoints must be distinct vertices".into(),
            ));
        }
        let (dist, parent) = self.bfs(a, false);
        if dist[b] == u32::MAX {
            return Ok(None);
        }
        Ok(Some((dist[b], self.path_from_parents(&parent, b))))
    }

    /// Checks reachability from vertex 0 (and to vertex 0 for directed
    /// graphs), erroring with a concrete unreachable pair.
    fn assert_connected(&self) -> Result<()> {
        if self.vertex_count() == 0 {
            return Ok(());
        }
        let (dist, _) = self.bfs(0, false);
        if let Some(i) = dist.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Disconnected {
                from_code: self.codes[0],
                to_code: self.codes[i],
            });
        }
        if self.directed {
            let (rdist, _) = self.bfs(0, true);
            if let Some(i) = rdist.iter().position(|&d| d == u32::MAX) {
                return Err(Error::Disconnected {
                    from_code: self.codes[i],
                    to_code: self.codes[0],
                });
            }
        }
        Ok(())
    }

    /// Exact diameter with a witness path attaining it.
    ///
    /// Explicit graphs take the staged path: completeness, then an
    /// all-pairs distance-2 check via row ORs, then distance-3 coverage;
    /// anything beyond falls back to all-sources BFS (as does implicit
    /// mode). Disconnected graphs error.
    pub fn diameter(&self) -> Result<(u32, WitnessPath)> {
        let v = self.vertex_count();
        if v == 0 {
            return Err(Error::Internal("diameter of an empty graph".into()));
        }
        if v == 1 {
            return Ok((
                0,
                WitnessPath {
                    from: self.codes[0],
                    to: self.codes[0],
                    path: vec![self.codes[0]],
                },
            ));
        }
        self.assert_connected()?;
        let ordered_pairs = (v as u64) * (v as u64 - 1);
        let arcs = match &self.adj {
            Some(m) => m.count_all(),
            None => {
                if self.directed {
                    self.edge_count()
                } else {
                    self.edge_count() * 2
                }
            }
        };
        if arcs == ordered_pairs {
            let path = vec![self.codes[0], self.codes[1]];
            return Ok((
                1,
                WitnessPath {
                    from: self.codes[0],
                    to: self.codes[1],
                    path,
                },
            ));
        }
        if let Some(adj) = &self.adj {
            return self.diameter_explicit(adj);
        }
        self.diameter_bfs()
    }

    fn diameter_explicit(&self, adj: &BitMatrix) -> Result<(u32, WitnessPath)> {
        let v = self.vertex_count();
        let reach2 = BitMatrix::build_parallel(v, v, |i, row| {
            row.copy_from_slice(adj.row(i));
            for j in iter_ones(adj.row(i)) {
                for (w, r) in row.iter_mut().zip(adj.row(j)) {
                    *w |= r;
                }
            }
        });
        // first ordered pair further apart than 2, in code order
        let far_pair = (0..v)
            .find_map(|i| {
                (0..v)
                    .find(|&j| j != i && !adj.get(i, j) && !reach2.get(i, j))
                    .map(|j| (i, j))
            });
        let Some((fi, fj)) = far_pair else {
            // diameter 2: witness is the first non-adjacent pair
            let (i, j) = (0..v)
                .find_map(|i| {
                    (0..v)
                        .find(|&j| j != i && !adj.get(i, j))
                        .map(|j| (i, j))
                })
                .expect("non-complete graph has a non-adjacent pair");
            let mid = (0..v)
                .find(|&k| adj.get(i, k) && adj.get(k, j))
                .expect("distance-2 pair has a middle vertex");
            return Ok((
                2,
                WitnessPath {
                    from: self.codes[i],
                    to: self.codes[j],
                    path: vec![self.codes[i], self.codes[mid], self.codes[j]],
                },
            ));
        };
        let within_three = (0..v).into_par_iter().all(|i| {
            let mut acc = BitSet::new(v);
            acc.or_words(reach2.row(i));
            for j in iter_ones(adj.row(i)) {
                acc.or_words(reach2.row(j));
            }
            acc.set(i);
            acc.is_full()
        });
        if within_three {
            let (dist, parent) = self.bfs(fi, false);
            debug_assert_eq!(dist[fj], 3);
            return Ok((
                3,
                WitnessPath {
                    from: self.codes[fi],
                    to: self.codes[fj],
                    path: self.path_from_parents(&parent, fj),
                },
            ));
        }
        self.diameter_bfs()
    }

    /// All-sources BFS diameter; the maximizing pair is the smallest in
    /// (source, target) code order so parallel runs agree.
    fn diameter_bfs(&self) -> Result<(u32, WitnessPath)> {
        let v = self.vertex_count();
        let best = (0..v)
            .into_par_iter()
            .map(|s| {
                let (dist, _) = self.bfs(s, false);
                let mut ecc = 0;
                let mut arg = s;
                for (j, &d) in dist.iter().enumerate() {
                    if d != u32::MAX && d > ecc {
                        ecc = d;
                        arg = j;
                    }
                }
                (ecc, s, arg)
            })
            .reduce(
                || (0, usize::MAX, usize::MAX),
                |a, b| {
                    if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) {
                        b
                    } else {
                        a
                    }
                },
            );
        let (ecc, s, t) = best;
        let (_, parent) = self.bfs(s, false);
        Ok((
            ecc,
            WitnessPath {
                from: self.codes[s],
                to: self.codes[t],
                path: self.path_from_parents(&parent, t),
            },
        ))
    }

    /// Shortest cycle length with a witness cycle (vertex codes, no repeat
    /// of the starting vertex). `None` for acyclic graphs. Directed graphs
    /// count 2-cycles; undirected cycles have length >= 3.
    pub fn girth(&self) -> Result<Option<(u32, Vec<u64>)>> {
        if self.directed {
            self.girth_directed()
        } else {
            self.girth_undirected()
        }
    }

    fn girth_undirected(&self) -> Result<Option<(u32, Vec<u64>)>> {
        let v = self.vertex_count();
        // triangle fast path, first (i, j, k) in scan order
        if let Some(adj) = &self.adj {
            for i in 0..v {
                for j in iter_ones(adj.row(i)).filter(|&j| j > i) {
                    if let Some(k) = adj.first_common_bit(i, j) {
                        return Ok(Some((3, vec![self.codes[i], self.codes[j], self.codes[k]])));
                    }
                }
            }
        } else {
            for i in 0..v {
                let nbrs = self.neighbors_out(i);
                for &j in nbrs.iter().filter(|&&j| j > i) {
                    if let Some(&k) = nbrs.iter().find(|&&k| k != j && self.adjacent(j, k)) {
                        return Ok(Some((3, vec![self.codes[i], self.codes[j], self.codes[k]])));
                    }
                }
            }
        }
        // no triangles: exact girth by BFS from every root
        let per_root: Vec<Option<(u32, Vec<u64>)>> = (0..v)
            .into_par_iter()
            .map(|r| self.shortest_cycle_through_bfs(r))
            .collect();
        Ok(per_root
            .into_iter()
            .flatten()
            .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1))))
    }

    /// Shortest cycle discovered from one BFS root via non-tree edges,
    /// with the cycle reconstructed exactly (paths trimmed at their
    /// lowest common ancestor).
    fn shortest_cycle_through_bfs(&self, root: usize) -> Option<(u32, Vec<u64>)> {
        let (dist, parent) = self.bfs(root, false);
        let v = self.vertex_count();
        let mut best: Option<(u32, Vec<u64>)> = None;
        for u in 0..v {
            if dist[u] == u32::MAX {
                continue;
            }
            for w in self.neighbors_out(u) {
                if w <= u || dist[w] == u32::MAX || parent[u] == w as u32 || parent[w] == u as u32
                {
                    continue;
                }
                let bound = dist[u] + dist[w] + 1;
                if let Some((len, _)) = &best {
                    if bound >= *len {
                        continue;
                    }
                }
                if let Some(cycle) = self.reconstruct_cycle(&parent, u, w) {
                    let len = cycle.len() as u32;
                    if best.as_ref().map_or(true, |(l, _)| len < *l) {
                        best = Some((len, cycle));
                    }
                }
            }
        }
        best
    }

    /// Joins the two BFS-tree paths of `u` and `w` at their lowest common
    /// ancestor and closes with the `u`-`w` edge; `None` if degenerate.
    fn reconstruct_cycle(&self, parent: &[u32], u: usize, w: usize) -> Option<Vec<u64>> {
        let chain = |mut x: usize| {
            let mut path = vec![x];
            while parent[x] != u32::MAX {
                x = parent[x] as usize;
                path.push(x);
            }
            path
        };
        let pu = chain(u);
        let pw = chain(w);
        if pu.contains(&w) || pw.contains(&u) {
            return None; // ancestor edge, not a cycle chord
        }
        // trim the common suffix down to the LCA
        let mut iu = pu.len();
        let mut iw = pw.len();
        while iu > 0 && iw > 0 && pu[iu - 1] == pw[iw - 1] {
            iu -= 1;
            iw -= 1;
        }
        let lca_u = &pu[..=iu.min(pu.len() - 1)];
        let lca_w = &pw[..iw];
        let mut cycle: Vec<usize> = Vec::new();
        cycle.extend(lca_u.iter().rev()); // lca .. u
        cycle.extend(lca_w.iter()); // w .. just below lca
        if cycle.len() < 3 {
            return None;
        }
        Some(cycle.into_iter().map(|i| self.codes[i]).collect())
    }

    fn girth_directed(&self) -> Result<Option<(u32, Vec<u64>)>> {
        self.require_directed()?;
        let v = self.vertex_count();
        // 2-cycle fast path
        for i in 0..v {
            if let Some(j) = self
                .neighbors_out(i)
                .into_iter()
                .find(|&j| j > i && self.adjacent(j, i))
            {
                return Ok(Some((2, vec![self.codes[i], self.codes[j]])));
            }
        }
        // per-source shortest returning walk
        let per_source: Vec<Option<(u32, Vec<u64>)>> = (0..v)
            .into_par_iter()
            .map(|s| {
                let (dist, parent) = self.bfs(s, false);
                let mut best: Option<(u32, usize)> = None;
                for u in 0..v {
                    if u == s || dist[u] == u32::MAX || !self.adjacent(u, s) {
                        continue;
                    }
                    let len = dist[u] + 1;
                    if best.map_or(true, |(l, _)| len < l) {
                        best = Some((len, u));
                    }
                }
                best.map(|(len, u)| (len, self.path_from_parents(&parent, u)))
            })
            .collect();
        Ok(per_source
            .into_iter()
            .flatten()
            .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1))))
    }

    /// Complete iff every unordered pair is adjacent.
    pub fn is_complete(&self) -> Result<bool> {
        self.require_undirected()?;
        let v = self.vertex_count() as u64;
        Ok(self.edge_count() == v * (v - 1) / 2)
    }

    /// Two-colors each component, then demands every cross pair be an
    /// edge: bipartite with `|A| * |B|` edges and both sides nonempty.
    pub fn is_complete_bipartite(&self) -> Result<bool> {
        self.require_undirected()?;
        let v = self.vertex_count();
        let mut color = vec![2u8; v];
        for start in 0..v {
            if color[start] != 2 {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors_out(u) {
                    if color[w] == 2 {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return Ok(false); // odd cycle
                    }
                }
            }
        }
        let a = color.iter().filter(|&&c| c == 0).count() as u64;
        let b = v as u64 - a;
        Ok(a > 0 && b > 0 && self.edge_count() == a * b)
    }

    /// True iff every arc has its reverse; defined for directed graphs.
    pub fn is_symmetric_digraph(&self) -> Result<bool> {
        self.require_directed()?;
        match &self.adj {
            Some(m) => Ok(m.is_symmetric()),
            None => {
                let v = self.vertex_count();
                Ok((0..v).into_par_iter().all(|i| {
                    (i + 1..v).all(|j| self.adjacent(i, j) == self.adjacent(j, i))
                }))
            }
        }
    }

    /// DOT output: nodes by canonical code with element labels, then
    /// edges, both in ascending code order; byte-stable.
    pub fn export_dot(&self) -> String {
        let v = self.vertex_count();
        let (header, connector) = if self.directed {
            ("digraph zd {", " -> ")
        } else {
            ("graph zd {", " -- ")
        };
        let mut out = String::from(header);
        out.push('\n');
        for &code in &self.codes {
            out.push_str(&format!(
                "  {} [label=\"{}\"];\n",
                code,
                self.kind.label_of_code(code)
            ));
        }
        for i in 0..v {
            for j in 0..v {
                if self.adjacent(i, j) && (self.directed || j > i) {
                    out.push_str(&format!(
                        "  {}{}{};\n",
                        self.codes[i], connector, self.codes[j]
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Edge list: one `u v` per line in ascending `(u, v)` code order;
    /// undirected lines have `u < v`; newline-terminated.
    pub fn export_edge_list(&self) -> String {
        let v = self.vertex_count();
        let mut out = String::new();
        for i in 0..v {
            for j in 0..v {
                if self.adjacent(i, j) && (self.directed || j > i) {
                    out.push_str(&format!("{} {}\n", self.codes[i], self.codes[j]));
                }
            }
        }
        out
    }
}
