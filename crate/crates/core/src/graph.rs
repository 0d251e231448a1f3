//! Finite simple loopless graphs: cycles, cliques, direct powers and the
//! odd-distance graph `D_k`, together with homomorphism checks.
//!
//! Vertices are `0..vertex_count`. Every unordered edge `{u, v}` is stored once
//! as `(min, max)` and the list of edges is sorted lexicographically, which
//! gives each edge a canonical index and a canonical orientation (from the
//! smaller vertex to the larger one).

use serde::{Deserialize, Serialize};

use crate::error::{invalid_argument, invalid_parameter, Result};

#[derive(Debug, Clone)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    // (neighbour, edge index), sorted by neighbour
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an arbitrary list of unordered pairs. Duplicates
    /// (in either orientation) are merged; loops and out-of-range endpoints
    /// are rejected.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if vertex_count == 0 {
            return Err(invalid_parameter("a graph needs at least one vertex"));
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(invalid_argument(format!(
                    "edge ({u},{v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(invalid_argument(format!("loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_edges(vertex_count, list))
    }

    fn from_sorted_edges(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, idx));
            adjacency[v].push((u, idx));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            vertex_count,
            edges,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonically oriented edges `(u, v)` with `u < v`, in index order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Index of the unordered edge `{u, v}`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|pos| list[pos].1)
    }

    /// Index of the edge together with the sign of the oriented edge `[u, v]`
    /// relative to the canonical orientation: `+1` when `u < v`, `-1` otherwise.
    pub fn oriented_edge(&self, u: usize, v: usize) -> Option<(usize, i64)> {
        self.edge_index(u, v)
            .map(|idx| (idx, if u < v { 1 } else { -1 }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile::from(self)).expect("graph serialization")
    }

    /// Parses the `{"vertices": n, "edges": [[u, v], ...]}` format. The input
    /// must be canonical: `u < v` and edges strictly increasing.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)
            .map_err(|e| invalid_argument(format!("malformed graph JSON: {e}")))?;
        Graph::try_from(file)
    }
}

/// On-disk form of a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        GraphFile {
            vertices: g.vertex_count,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphFile> for Graph {
    type Error = crate::Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        for pair in file.edges.windows(2) {
            if pair[0] >= pair[1] {
                return Err(invalid_argument(format!(
                    "edges not strictly sorted: {:?} before {:?}",
                    pair[0], pair[1]
                )));
            }
        }
        if let Some(e) = file.edges.iter().find(|e| e[0] >= e[1]) {
            return Err(invalid_argument(format!(
                "edge {e:?} is not canonically oriented (need u < v)"
            )));
        }
        Graph::new(file.vertices, file.edges.iter().map(|e| (e[0], e[1])))
    }
}

/// Mixed-radix encoding of `n`-tuples over `{0..base-1}`, first component most
/// significant. Shared by power graphs and function tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleCodec {
    base: usize,
    arity: usize,
    size: usize,
}

impl TupleCodec {
    pub fn new(base: usize, arity: usize) -> Result<Self> {
        if base == 0 || arity == 0 {
            return Err(invalid_parameter("tuple base and arity must be positive"));
        }
        let size = u32::try_from(arity)
            .ok()
            .and_then(|a| base.checked_pow(a))
            .ok_or_else(|| invalid_parameter(format!("{base}^{arity} overflows")))?;
        Ok(TupleCodec { base, arity, size })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of tuples, `base^arity`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        tuple.iter().fold(0, |acc, &x| {
            debug_assert!(x < self.base);
            acc * self.base + x
        })
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        self.decode_into(index, &mut out);
        out
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = index % self.base;
            index /= self.base;
        }
    }

    /// Positional weight of coordinate `i` (0-based): `base^(arity-1-i)`.
    pub fn weight(&self, i: usize) -> usize {
        self.base.pow((self.arity - 1 - i) as u32)
    }
}

/// The cycle `C_k` on `0..k` with edges `(i, i+1 mod k)`.
pub fn make_cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(invalid_parameter(format!(
            "cycle length must be >= 3, got {k}"
        )));
    }
    Graph::new(k, (0..k).map(|i| (i, (i + 1) % k)))
}

/// The complete graph `K_k`.
pub fn make_complete(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(invalid_parameter(format!(
            "clique size must be >= 2, got {k}"
        )));
    }
    Graph::new(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))
}

/// The `n`-th direct (tensor) power of `g`. Tuples are encoded with
/// [`TupleCodec`]; two tuples are adjacent iff they are adjacent in every
/// coordinate.
pub fn make_power(g: &Graph, n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid_parameter("power exponent must be >= 1"));
    }
    let codec = TupleCodec::new(g.vertex_count(), n)?;
    let mut edges = Vec::new();
    let mut tuple = vec![0; n];
    for u in 0..codec.size() {
        codec.decode_into(u, &mut tuple);
        for_each_neighbor_tuple(g, &tuple, |other| {
            let v = codec.encode(other);
            if u < v {
                edges.push((u, v));
            }
        });
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_edges(codec.size(), edges))
}

/// Calls `visit` with every tuple adjacent to `tuple` in the direct power of `g`.
pub fn for_each_neighbor_tuple(g: &Graph, tuple: &[usize], mut visit: impl FnMut(&[usize])) {
    let n = tuple.len();
    let choices: Vec<&[(usize, usize)]> =
        tuple.iter().map(|&x| g.adjacency[x].as_slice()).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut pos = vec![0usize; n];
    let mut other: Vec<usize> = choices.iter().map(|c| c[0].0).collect();
    loop {
        visit(&other);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < choices[i].len() {
                other[i] = choices[i][pos[i]].0;
                break;
            }
            pos[i] = 0;
            other[i] = choices[i][0].0;
        }
    }
}

/// Shortest-path distance between `u` and `v` on `C_k`.
pub fn cycle_distance(k: usize, u: usize, v: usize) -> Result<usize> {
    if u >= k || v >= k {
        return Err(invalid_parameter(format!(
            "vertices ({u},{v}) out of range for C_{k}"
        )));
    }
    let d = u.abs_diff(v);
    Ok(d.min(k - d))
}

/// `D_k` for odd `k` and odd `max_distance`: vertices of `C_k`, joined when
/// their cycle distance is odd and at most `max_distance`.
pub fn make_dk(k: usize, max_distance: usize) -> Result<Graph> {
    if k < 3 || k % 2 == 0 {
        return Err(invalid_parameter(format!("D_k needs odd k >= 3, got {k}")));
    }
    if max_distance == 0 || max_distance % 2 == 0 || max_distance > k {
        return Err(invalid_parameter(format!(
            "D_k needs odd distance bound 1 <= N <= k, got {max_distance}"
        )));
    }
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            let d = cycle_distance(k, u, v)?;
            if d % 2 == 1 && d <= max_distance {
                edges.push((u, v));
            }
        }
    }
    Graph::new(k, edges)
}

/// A homomorphism `C_k -> C_m` for odd `3 <= m <= k`: identity below `m`, then
/// alternating between `0` and `m - 1`.
pub fn fold_hom(k: usize, m: usize) -> Result<Vec<usize>> {
    if k % 2 == 0 || m % 2 == 0 || m < 3 || m > k {
        return Err(invalid_parameter(format!(
            "fold needs odd 3 <= m <= k, got k={k}, m={m}"
        )));
    }
    Ok((0..k)
        .map(|x| match x {
            x if x < m => x,
            x if (x - m) % 2 == 0 => 0,
            _ => m - 1,
        })
        .collect())
}

/// The first edge of `g` whose image under `f` is not an edge of `h`.
pub fn find_violation(g: &Graph, h: &Graph, f: &[usize]) -> Result<Option<(usize, usize)>> {
    check_vertex_map(g, h, f)?;
    Ok(g.edges()
        .iter()
        .copied()
        .find(|&(u, v)| !h.has_edge(f[u], f[v])))
}

/// Whether `f` maps every edge of `g` onto an edge of `h`.
pub fn is_homomorphism(g: &Graph, h: &Graph, f: &[usize]) -> Result<bool> {
    Ok(find_violation(g, h, f)?.is_none())
}

pub(crate) fn check_vertex_map(g: &Graph, h: &Graph, f: &[usize]) -> Result<()> {
    if f.len() != g.vertex_count() {
        return Err(invalid_parameter(format!(
            "vertex map has {} entries, source graph has {} vertices",
            f.len(),
            g.vertex_count()
        )));
    }
    if let Some((v, &x)) = f.iter().enumerate().find(|(_, &x)| x >= h.vertex_count()) {
        return Err(invalid_parameter(format!(
            "vertex {v} maps to {x}, outside the target's {} vertices",
            h.vertex_count()
        )));
    }
    Ok(())
}
