//! Stallings core graphs of finitely generated subgroups of free groups.
//!
//! A subgroup `H = <w_1, ..., w_k> <= F_n` is represented by its folded core
//! graph: the wedge of one petal per generator, folded until no vertex has
//! two equally labelled edges in the same direction, then trimmed of hanging
//! trees. The first Betti number of the result is the rank of `H`, reading a
//! word from the base vertex decides membership, and a spanning tree yields a
//! free basis.
//!
//! Folding also tracks, for every edge, a word in the *input* generators
//! whose image is the edge's contribution to a closed path. This lets a
//! member of `H` be rewritten as a product of the original `w_i`, not just of
//! the computed basis.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::words::{GeneratorId, Letter, Word};

/// Directed edge, read forwards as `gen` and backwards as its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub gen: GeneratorId,
}

/// An unfolded edge, optionally labelled by a word in the input generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub source: usize,
    pub target: usize,
    pub gen: GeneratorId,
    pub label: Word,
}

/// Folded core graph of a subgroup, relabelled canonically: the base is
/// vertex 0 and the remaining vertices are numbered in breadth-first order,
/// exploring letters in canonical order. Two graphs are equal iff the
/// subgroups they present are equal.
#[derive(Clone, Debug)]
pub struct FoldedGraph {
    ambient_rank: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
    labels: Vec<Word>,
    // adj[v][letter key] = (neighbour, edge index)
    adj: Vec<Vec<Option<(usize, usize)>>>,
    tree_edge: Vec<bool>,
    prefix: Vec<Word>,
    prefix_label: Vec<Word>,
    basis_edges: Vec<usize>,
    basis_index: Vec<Option<usize>>,
}

impl PartialEq for FoldedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Eq for FoldedGraph {}

/// Builds the core graph of the subgroup generated by `tuple` in `F_rank`.
pub fn build_graph(rank: usize, tuple: &[Word]) -> FoldedGraph {
    let (vertex_count, edges) = petal_edges(tuple);
    FoldedGraph::fold(rank, vertex_count, 0, edges)
}

/// Wedge of petals, one per tuple word, based at vertex 0. The closing edge
/// of petal `i` carries the label `t_i`.
pub fn petal_edges(tuple: &[Word]) -> (usize, Vec<RawEdge>) {
    let mut vertex_count = 1;
    let mut edges = Vec::new();
    for (i, w) in tuple.iter().enumerate() {
        let n = w.len();
        if n == 0 {
            continue;
        }
        let mut prev = 0;
        for (k, &l) in w.letters().iter().enumerate() {
            let next = if k + 1 == n {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            let label = if k + 1 == n { Word::generator(i) } else { Word::identity() };
            edges.push(if l.inverse {
                RawEdge { source: next, target: prev, gen: l.gen, label: label.inverse() }
            } else {
                RawEdge { source: prev, target: next, gen: l.gen, label }
            });
            prev = next;
        }
    }
    (vertex_count, edges)
}

#[derive(Clone, Copy)]
enum Shared {
    Source,
    Target,
}

struct Folder {
    base: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    gen: Vec<usize>,
    label: Vec<Word>,
    alive: Vec<bool>,
    mapped: Vec<bool>,
    out_map: Vec<Vec<Option<usize>>>,
    in_map: Vec<Vec<Option<usize>>>,
    incident: Vec<Vec<usize>>,
    vertex_alive: Vec<bool>,
    pending: VecDeque<usize>,
}

impl Folder {
    fn new(rank: usize, vertex_count: usize, base: usize, edges: Vec<RawEdge>) -> Self {
        let mut f = Folder {
            base,
            src: Vec::new(),
            tgt: Vec::new(),
            gen: Vec::new(),
            label: Vec::new(),
            alive: Vec::new(),
            mapped: Vec::new(),
            out_map: vec![vec![None; rank]; vertex_count],
            in_map: vec![vec![None; rank]; vertex_count],
            incident: vec![Vec::new(); vertex_count],
            vertex_alive: vec![true; vertex_count],
            pending: VecDeque::new(),
        };
        for (id, e) in edges.into_iter().enumerate() {
            assert!(e.gen.index() < rank, "edge label outside the ambient alphabet");
            f.src.push(e.source);
            f.tgt.push(e.target);
            f.gen.push(e.gen.index());
            f.label.push(e.label);
            f.alive.push(true);
            f.mapped.push(false);
            f.incident[e.source].push(id);
            f.incident[e.target].push(id);
            f.pending.push_back(id);
        }
        f
    }

    fn run(&mut self) {
        while let Some(e) = self.pending.pop_front() {
            if !self.alive[e] || self.mapped[e] {
                continue;
            }
            let (s, t, g) = (self.src[e], self.tgt[e], self.gen[e]);
            if let Some(e1) = self.out_map[s][g] {
                self.fold(e1, e, Shared::Source);
                continue;
            }
            if let Some(e1) = self.in_map[t][g] {
                self.fold(e1, e, Shared::Target);
                continue;
            }
            self.out_map[s][g] = Some(e);
            self.in_map[t][g] = Some(e);
            self.mapped[e] = true;
        }
    }

    /// Identifies `e2` (unmapped) with `e1` (mapped), merging their free endpoints.
    fn fold(&mut self, e1: usize, e2: usize, shared: Shared) {
        let (a, b) = match shared {
            Shared::Source => (self.tgt[e1], self.tgt[e2]),
            Shared::Target => (self.src[e1], self.src[e2]),
        };
        let l1 = self.label[e1].clone();
        let l2 = self.label[e2].clone();
        self.alive[e2] = false;
        if a == b {
            return;
        }
        // The gauge keeps every closed path's label a preimage of its reading.
        let (keep, drop, gamma) = if b != self.base {
            let g = match shared {
                Shared::Source => l1.inverse().concat(&l2),
                Shared::Target => l1.concat(&l2.inverse()),
            };
            (a, b, g)
        } else {
            let g = match shared {
                Shared::Source => l2.inverse().concat(&l1),
                Shared::Target => l2.concat(&l1.inverse()),
            };
            (b, a, g)
        };
        self.merge(drop, keep, &gamma);
    }

    fn merge(&mut self, drop: usize, keep: usize, gamma: &Word) {
        let mut ids = std::mem::take(&mut self.incident[drop]);
        ids.sort_unstable();
        ids.dedup();
        let gamma_inv = gamma.inverse();
        for e in ids {
            if !self.alive[e] {
                continue;
            }
            if self.mapped[e] {
                let (s, t, g) = (self.src[e], self.tgt[e], self.gen[e]);
                if self.out_map[s][g] == Some(e) {
                    self.out_map[s][g] = None;
                }
                if self.in_map[t][g] == Some(e) {
                    self.in_map[t][g] = None;
                }
                self.mapped[e] = false;
            }
            if self.src[e] == drop {
                self.label[e] = gamma.concat(&self.label[e]);
                self.src[e] = keep;
            }
            if self.tgt[e] == drop {
                self.label[e] = self.label[e].concat(&gamma_inv);
                self.tgt[e] = keep;
            }
            self.incident[keep].push(e);
            self.pending.push_back(e);
        }
        self.vertex_alive[drop] = false;
    }

    fn trim(&mut self) {
        let n = self.vertex_alive.len();
        let mut degree = vec![0usize; n];
        for e in 0..self.alive.len() {
            if self.alive[e] {
                degree[self.src[e]] += 1;
                degree[self.tgt[e]] += 1;
            }
        }
        let mut queue: VecDeque<usize> =
            (0..n).filter(|&v| self.vertex_alive[v] && v != self.base && degree[v] <= 1).collect();
        while let Some(v) = queue.pop_front() {
            if !self.vertex_alive[v] || degree[v] > 1 {
                continue;
            }
            for &e in &self.incident[v] {
                if !self.alive[e] {
                    continue;
                }
                self.alive[e] = false;
                let w = if self.src[e] == v { self.tgt[e] } else { self.src[e] };
                degree[v] -= 1;
                degree[w] -= 1;
                if w != self.base && degree[w] <= 1 {
                    queue.push_back(w);
                }
            }
            self.vertex_alive[v] = false;
        }
    }
}

impl FoldedGraph {
    /// Folds and trims an arbitrary edge set, processing edges in the given
    /// order. The result does not depend on that order.
    pub fn fold(rank: usize, vertex_count: usize, base: usize, edges: Vec<RawEdge>) -> FoldedGraph {
        let mut folder = Folder::new(rank, vertex_count, base, edges);
        folder.run();
        folder.trim();
        Self::canonical(rank, &folder)
    }

    fn canonical(rank: usize, f: &Folder) -> FoldedGraph {
        let n = f.vertex_alive.len();
        let mut old_adj: Vec<Vec<Option<(usize, usize)>>> = vec![vec![None; 2 * rank]; n];
        for e in 0..f.alive.len() {
            if f.alive[e] {
                old_adj[f.src[e]][2 * f.gen[e]] = Some((f.tgt[e], e));
                old_adj[f.tgt[e]][2 * f.gen[e] + 1] = Some((f.src[e], e));
            }
        }
        let mut new_id = vec![usize::MAX; n];
        let mut order = vec![f.base];
        new_id[f.base] = 0;
        let mut discovery: Vec<Option<usize>> = vec![None];
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &(v, e) in old_adj[u].iter().flatten() {
                if new_id[v] == usize::MAX {
                    new_id[v] = order.len();
                    order.push(v);
                    discovery.push(Some(e));
                }
            }
        }

        let mut edge_list: Vec<(Edge, usize)> = (0..f.alive.len())
            .filter(|&e| f.alive[e])
            .map(|e| {
                (Edge { source: new_id[f.src[e]], target: new_id[f.tgt[e]], gen: GeneratorId::new(f.gen[e]) }, e)
            })
            .collect();
        edge_list.sort();
        let mut old_to_new_edge = vec![usize::MAX; f.alive.len()];
        for (i, &(_, e)) in edge_list.iter().enumerate() {
            old_to_new_edge[e] = i;
        }
        let edges: Vec<Edge> = edge_list.iter().map(|x| x.0).collect();
        let labels: Vec<Word> = edge_list.iter().map(|&(_, e)| f.label[e].clone()).collect();

        let vertex_count = order.len();
        let mut adj = vec![vec![None; 2 * rank]; vertex_count];
        for (i, e) in edges.iter().enumerate() {
            adj[e.source][2 * e.gen.index()] = Some((e.target, i));
            adj[e.target][2 * e.gen.index() + 1] = Some((e.source, i));
        }

        let mut tree_edge = vec![false; edges.len()];
        let mut prefix = vec![Word::identity(); vertex_count];
        let mut prefix_label = vec![Word::identity(); vertex_count];
        for v in 1..vertex_count {
            let e = old_to_new_edge[discovery[v].expect("non-base vertex has a discovery edge")];
            tree_edge[e] = true;
            let edge = edges[e];
            // BFS order guarantees the parent already has its prefix.
            if edge.target == v {
                prefix[v] = prefix[edge.source].concat(&Word::letter(Letter { gen: edge.gen, inverse: false }));
                prefix_label[v] = prefix_label[edge.source].concat(&labels[e]);
            } else {
                prefix[v] = prefix[edge.target].concat(&Word::letter(Letter { gen: edge.gen, inverse: true }));
                prefix_label[v] = prefix_label[edge.target].concat(&labels[e].inverse());
            }
        }
        let basis_edges: Vec<usize> = (0..edges.len()).filter(|&e| !tree_edge[e]).collect();
        let mut basis_index = vec![None; edges.len()];
        for (i, &e) in basis_edges.iter().enumerate() {
            basis_index[e] = Some(i);
        }

        FoldedGraph {
            ambient_rank: rank,
            vertex_count,
            edges,
            labels,
            adj,
            tree_edge,
            prefix,
            prefix_label,
            basis_edges,
            basis_index,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn base(&self) -> usize {
        0
    }

    /// First Betti number of the core graph, which is the subgroup's rank.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree_edge[e]
    }

    /// The vertex reached by reading `w` from the base, if the path exists.
    pub fn read(&self, w: &Word) -> Option<usize> {
        let mut v = 0;
        for l in w.letters() {
            v = self.adj[v].get(l.key())?.as_ref()?.0;
        }
        Some(v)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.read(w) == Some(0)
    }

    /// Free basis: one element per non-tree edge `u -x-> v`, namely
    /// `prefix(u) * x * prefix(v)^-1`.
    pub fn basis(&self) -> Vec<Word> {
        self.basis_edges
            .iter()
            .map(|&e| {
                let edge = self.edges[e];
                self.prefix[edge.source]
                    .concat(&Word::letter(Letter { gen: edge.gen, inverse: false }))
                    .concat(&self.prefix[edge.target].inverse())
            })
            .collect()
    }

    /// Rewrites a member of the subgroup as a word in [`Self::basis`]
    /// (generator `i` standing for basis element `i`). `None` if `w` is not
    /// a member.
    pub fn express(&self, w: &Word) -> Option<Word> {
        let mut v = 0;
        let mut out = Vec::new();
        for l in w.letters() {
            let (next, e) = (*self.adj[v].get(l.key())?)?;
            if let Some(i) = self.basis_index[e] {
                out.push(Letter::new(i, l.inverse));
            }
            v = next;
        }
        (v == 0).then(|| Word::reduce(out))
    }

    /// Rewrites a member of the subgroup as a word in the tuple the graph was
    /// built from (generator `i` standing for tuple entry `i`).
    ///
    /// Only meaningful for graphs produced by [`build_graph`] or from labelled
    /// raw edges.
    pub fn express_in_generators(&self, w: &Word) -> Option<Word> {
        let mut v = 0;
        let mut out = Word::identity();
        for l in w.letters() {
            let (next, e) = (*self.adj[v].get(l.key())?)?;
            out = if l.inverse { out.concat(&self.labels[e].inverse()) } else { out.concat(&self.labels[e]) };
            v = next;
        }
        (v == 0).then_some(out)
    }

    /// Each basis element written in the input tuple's generators.
    pub fn basis_in_generators(&self) -> Vec<Word> {
        self.basis_edges
            .iter()
            .map(|&e| {
                let edge = self.edges[e];
                self.prefix_label[edge.source].concat(&self.labels[e]).concat(&self.prefix_label[edge.target].inverse())
            })
            .collect()
    }

    /// Line-based edge list for debugging: a header line, then one
    /// `source target generator` line per edge (1-based generator, edge read
    /// forwards from source to target).
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("graph rank={} vertices={} base=0 edges={}\n", self.ambient_rank, self.vertex_count, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(s, "{} {} x{}", e.source, e.target, e.gen.index() + 1);
        }
        s
    }
}
