//! Vertex and edge chains: the free abelian groups generated by the vertices
//! and the oriented edges of a graph, with the relation `[u,v] = -[v,u]`.
//!
//! Both kinds are sparse maps with no stored zero coefficients. An edge chain
//! is keyed by the canonical edge index of its host graph, and the coefficient
//! refers to the canonical orientation (smaller vertex to larger).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid_argument, invalid_parameter, Error, Result};
use crate::graph::{self, Graph, TupleCodec};

fn same_host(a: &Graph, b: &Graph) -> bool {
    std::ptr::eq(a, b) || a == b
}

fn accumulate(map: &mut BTreeMap<usize, i64>, key: usize, c: i64) {
    if c == 0 {
        return;
    }
    let entry = map.entry(key).or_insert(0);
    *entry += c;
    if *entry == 0 {
        map.remove(&key);
    }
}

fn merge(a: &BTreeMap<usize, i64>, b: &BTreeMap<usize, i64>) -> BTreeMap<usize, i64> {
    let mut out = a.clone();
    for (&k, &c) in b {
        accumulate(&mut out, k, c);
    }
    out
}

fn scaled(a: &BTreeMap<usize, i64>, c: i64) -> BTreeMap<usize, i64> {
    if c == 0 {
        return BTreeMap::new();
    }
    a.iter().map(|(&k, &v)| (k, v * c)).collect()
}

/// An element of the vertex chain group of `host`.
#[derive(Clone)]
pub struct VertexChain<'g> {
    host: &'g Graph,
    coeffs: BTreeMap<usize, i64>,
}

impl<'g> VertexChain<'g> {
    pub fn zero(host: &'g Graph) -> Self {
        VertexChain {
            host,
            coeffs: BTreeMap::new(),
        }
    }

    /// The generator `[v]`.
    pub fn vertex(host: &'g Graph, v: usize) -> Result<Self> {
        let mut c = Self::zero(host);
        c.add_term(v, 1)?;
        Ok(c)
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn add_term(&mut self, v: usize, c: i64) -> Result<()> {
        if v >= self.host.vertex_count() {
            return Err(invalid_argument(format!("vertex {v} not in host graph")));
        }
        accumulate(&mut self.coeffs, v, c);
        Ok(())
    }

    pub fn coefficient(&self, v: usize) -> i64 {
        self.coeffs.get(&v).copied().unwrap_or(0)
    }

    /// Non-zero terms `(vertex, coefficient)` in vertex order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&v, &c)| (v, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !same_host(self.host, other.host) {
            return Err(invalid_argument("vertex chains live over different graphs"));
        }
        Ok(VertexChain {
            host: self.host,
            coeffs: merge(&self.coeffs, &other.coeffs),
        })
    }

    pub fn scale(&self, c: i64) -> Self {
        VertexChain {
            host: self.host,
            coeffs: scaled(&self.coeffs, c),
        }
    }
}

impl PartialEq for VertexChain<'_> {
    fn eq(&self, other: &Self) -> bool {
        same_host(self.host, other.host) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for VertexChain<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

/// An element of the edge chain group of `host`.
#[derive(Clone)]
pub struct EdgeChain<'g> {
    host: &'g Graph,
    coeffs: BTreeMap<usize, i64>,
}

impl<'g> EdgeChain<'g> {
    pub fn zero(host: &'g Graph) -> Self {
        EdgeChain {
            host,
            coeffs: BTreeMap::new(),
        }
    }

    /// The generator `[u, v]` (which equals `-[v, u]`).
    pub fn edge(host: &'g Graph, u: usize, v: usize) -> Result<Self> {
        let mut c = Self::zero(host);
        c.add_oriented(u, v, 1)?;
        Ok(c)
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    /// Adds `c * [u, v]`.
    pub fn add_oriented(&mut self, u: usize, v: usize, c: i64) -> Result<()> {
        let (idx, sign) = self
            .host
            .oriented_edge(u, v)
            .ok_or_else(|| invalid_argument(format!("[{u},{v}] is not an edge of the host")))?;
        accumulate(&mut self.coeffs, idx, sign * c);
        Ok(())
    }

    /// Coefficient of the oriented edge `[u, v]`; zero for non-edges.
    pub fn coefficient(&self, u: usize, v: usize) -> i64 {
        match self.host.oriented_edge(u, v) {
            Some((idx, sign)) => sign * self.coeffs.get(&idx).copied().unwrap_or(0),
            None => 0,
        }
    }

    /// Non-zero terms `(u, v, c)` with `u < v`, in edge-index order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.coeffs.iter().map(|(&idx, &c)| {
            let (u, v) = self.host.edges()[idx];
            (u, v, c)
        })
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !same_host(self.host, other.host) {
            return Err(invalid_argument("edge chains live over different graphs"));
        }
        Ok(EdgeChain {
            host: self.host,
            coeffs: merge(&self.coeffs, &other.coeffs),
        })
    }

    pub fn scale(&self, c: i64) -> Self {
        EdgeChain {
            host: self.host,
            coeffs: scaled(&self.coeffs, c),
        }
    }

    /// `[[u, v, c], ...]` in canonical orientation, sorted by edge index.
    pub fn to_json(&self) -> String {
        let triples: Vec<(usize, usize, i64)> = self.terms().collect();
        serde_json::to_string(&triples).expect("chain serialization")
    }

    pub fn from_json(host: &'g Graph, text: &str) -> Result<Self> {
        let triples: Vec<(usize, usize, i64)> = serde_json::from_str(text)
            .map_err(|e| invalid_argument(format!("malformed chain JSON: {e}")))?;
        let mut chain = Self::zero(host);
        let mut last = None;
        for (u, v, c) in triples {
            if u >= v || c == 0 {
                return Err(invalid_argument(format!(
                    "term [{u},{v},{c}] is not canonical"
                )));
            }
            let idx = host
                .edge_index(u, v)
                .ok_or_else(|| invalid_argument(format!("[{u},{v}] is not an edge")))?;
            if last.is_some_and(|prev| prev >= idx) {
                return Err(invalid_argument("chain terms not sorted by edge index"));
            }
            last = Some(idx);
            chain.coeffs.insert(idx, c);
        }
        Ok(chain)
    }
}

impl PartialEq for EdgeChain<'_> {
    fn eq(&self, other: &Self) -> bool {
        same_host(self.host, other.host) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for EdgeChain<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms()).finish()
    }
}

pub fn chain_add<'g>(a: &EdgeChain<'g>, b: &EdgeChain<'g>) -> Result<EdgeChain<'g>> {
    a.add(b)
}

pub fn chain_scale<'g>(c: i64, a: &EdgeChain<'g>) -> EdgeChain<'g> {
    a.scale(c)
}

/// `[u, v] -> [v] - [u]`, extended linearly.
pub fn boundary<'g>(w: &EdgeChain<'g>) -> VertexChain<'g> {
    let mut out = VertexChain::zero(w.host);
    for (u, v, c) in w.terms() {
        accumulate(&mut out.coeffs, v, c);
        accumulate(&mut out.coeffs, u, -c);
    }
    out
}

fn require_homomorphism(g: &Graph, h: &Graph, f: &[usize]) -> Result<()> {
    if let Some((u, v)) = graph::find_violation(g, h, f).map_err(|e| match e {
        Error::InvalidParameter(m) => Error::InvalidArgument(m),
        other => other,
    })? {
        return Err(invalid_argument(format!(
            "not a homomorphism: edge ({u},{v}) maps to non-edge ({},{})",
            f[u], f[v]
        )));
    }
    Ok(())
}

/// The chain map `f_V` induced by a homomorphism `f: g -> h`.
pub fn induced_vertex_map<'h>(
    g: &Graph,
    h: &'h Graph,
    f: &[usize],
    a: &VertexChain<'_>,
) -> Result<VertexChain<'h>> {
    if !same_host(a.host, g) {
        return Err(invalid_argument(
            "vertex chain does not live over the source graph",
        ));
    }
    require_homomorphism(g, h, f)?;
    let mut out = VertexChain::zero(h);
    for (v, c) in a.terms() {
        accumulate(&mut out.coeffs, f[v], c);
    }
    Ok(out)
}

/// The chain map `f_E` induced by a homomorphism `f: g -> h`.
pub fn induced_edge_map<'h>(
    g: &Graph,
    h: &'h Graph,
    f: &[usize],
    w: &EdgeChain<'_>,
) -> Result<EdgeChain<'h>> {
    if !same_host(w.host, g) {
        return Err(invalid_argument(
            "edge chain does not live over the source graph",
        ));
    }
    require_homomorphism(g, h, f)?;
    Ok(push_forward(h, w.terms(), |x| f[x]))
}

/// Accumulates `sum c * [f(u), f(v)]` over `h` without re-validating `f`.
/// Callers guarantee every image pair is an edge of `h`.
pub(crate) fn push_forward<'h>(
    h: &'h Graph,
    terms: impl IntoIterator<Item = (usize, usize, i64)>,
    f: impl Fn(usize) -> usize,
) -> EdgeChain<'h> {
    let mut out = EdgeChain::zero(h);
    for (u, v, c) in terms {
        let (idx, sign) = h
            .oriented_edge(f(u), f(v))
            .expect("push_forward called with a non-homomorphism");
        accumulate(&mut out.coeffs, idx, sign * c);
    }
    out
}

fn cycle_length(host: &Graph) -> Result<usize> {
    let k = host.vertex_count();
    let is_cycle =
        k >= 3 && host.edge_count() == k && (0..k).all(|i| host.has_edge(i, (i + 1) % k));
    if is_cycle {
        Ok(k)
    } else {
        Err(invalid_argument("host graph is not a cycle C_k"))
    }
}

/// `O_k = [0,1] + [1,2] + ... + [k-1,0]` over the cycle `host`.
pub fn oriented_cycle_chain(host: &Graph) -> Result<EdgeChain<'_>> {
    let k = cycle_length(host)?;
    let mut chain = EdgeChain::zero(host);
    for i in 0..k {
        chain.add_oriented(i, (i + 1) % k, 1)?;
    }
    Ok(chain)
}

/// Solves `w = d * O_l` over a cycle host. Returns `None` when `w` is not a
/// multiple of `O_l`, which happens exactly when its boundary is non-zero.
pub fn cycle_multiple(w: &EdgeChain<'_>) -> Result<Option<i64>> {
    let l = cycle_length(w.host)?;
    let d = w.coefficient(0, 1);
    Ok((1..l)
        .all(|j| w.coefficient(j, (j + 1) % l) == d)
        .then_some(d))
}

/// Geometry of `C_k^n` shared by the power-chain constructors.
#[derive(Debug, Clone, Copy)]
pub struct PowerShape {
    pub k: usize,
    pub n: usize,
    codec: TupleCodec,
}

impl PowerShape {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 3 {
            return Err(invalid_parameter(format!(
                "cycle length must be >= 3, got {k}"
            )));
        }
        Ok(PowerShape {
            k,
            n,
            codec: TupleCodec::new(k, n)?,
        })
    }

    pub fn codec(&self) -> &TupleCodec {
        &self.codec
    }

    fn check_host(&self, host: &Graph) -> Result<()> {
        let expected_edges = (1usize << (self.n - 1)) * self.codec.size();
        if host.vertex_count() != self.codec.size() || host.edge_count() != expected_edges {
            return Err(invalid_argument(format!(
                "host graph is not C_{}^{}",
                self.k, self.n
            )));
        }
        Ok(())
    }

    fn check_coordinate(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(invalid_parameter(format!(
                "coordinate {i} out of range for arity {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Every oriented edge `[a, b]` of `C_k^n` whose coordinates listed in
    /// `increasing` all step forward (`b_j = a_j + 1 mod k`). With a single
    /// coordinate this yields one orientation of every edge.
    pub fn for_each_forward_edge(&self, increasing: &[usize], mut visit: impl FnMut(usize, usize)) {
        let k = self.k;
        let n = self.n;
        let mut a = vec![0; n];
        let mut b = vec![0; n];
        let mut step = vec![0u8; n];
        let free: Vec<usize> = (0..n).filter(|j| !increasing.contains(j)).collect();
        for ai in 0..self.codec.size() {
            self.codec.decode_into(ai, &mut a);
            // every sign choice for the free coordinates
            for mask in 0..(1usize << free.len()) {
                for (bit, &j) in free.iter().enumerate() {
                    step[j] = ((mask >> bit) & 1) as u8;
                }
                for j in 0..n {
                    b[j] = if increasing.contains(&j) || step[j] == 0 {
                        (a[j] + 1) % k
                    } else {
                        (a[j] + k - 1) % k
                    };
                }
                visit(ai, self.codec.encode(&b));
            }
        }
    }
}

/// `O_{k,i}^n`: every edge of `C_k^n`, oriented so that coordinate `i`
/// (0-based) increases.
pub fn oriented_power_chain<'g>(
    host: &'g Graph,
    k: usize,
    n: usize,
    i: usize,
) -> Result<EdgeChain<'g>> {
    let shape = PowerShape::new(k, n)?;
    shape.check_coordinate(i)?;
    shape.check_host(host)?;
    let mut chain = EdgeChain::zero(host);
    let mut err = None;
    shape.for_each_forward_edge(&[i], |a, b| {
        if let Err(e) = chain.add_oriented(a, b, 1) {
            err.get_or_insert(e);
        }
    });
    err.map_or(Ok(chain), Err)
}

/// `O_{k,{1,2}}^n`: oriented edges of `C_k^n` increasing in both of the first
/// two coordinates.
pub fn joint_chain<'g>(host: &'g Graph, k: usize, n: usize) -> Result<EdgeChain<'g>> {
    if n < 2 {
        return Err(invalid_parameter("joint chain needs arity >= 2"));
    }
    let shape = PowerShape::new(k, n)?;
    shape.check_host(host)?;
    let mut chain = EdgeChain::zero(host);
    let mut err = None;
    shape.for_each_forward_edge(&[0, 1], |a, b| {
        if let Err(e) = chain.add_oriented(a, b, 1) {
            err.get_or_insert(e);
        }
    });
    err.map_or(Ok(chain), Err)
}

/// The oriented edges of `e x_i O_k`, as pairs of encoded vertices of
/// `C_k^n`. `e = (u, v)` is an edge of `C_k^{n-1}` given by encoded indices.
pub fn edge_times_cycle_edges(
    k: usize,
    n: usize,
    i: usize,
    e: (usize, usize),
) -> Result<Vec<(usize, usize)>> {
    if n < 2 {
        return Err(invalid_parameter("e x_i O_k needs arity >= 2"));
    }
    let shape = PowerShape::new(k, n)?;
    shape.check_coordinate(i)?;
    let low = TupleCodec::new(k, n - 1)?;
    if e.0 >= low.size() || e.1 >= low.size() {
        return Err(invalid_argument("edge endpoints out of range"));
    }
    let (u, v) = (low.decode(e.0), low.decode(e.1));
    let adjacent = u
        .iter()
        .zip(&v)
        .all(|(&x, &y)| matches!(graph::cycle_distance(k, x, y), Ok(1)));
    if !adjacent {
        return Err(invalid_argument(format!(
            "({u:?}, {v:?}) is not an edge of C_{k}^{}",
            n - 1
        )));
    }
    let lift = |rest: &[usize], a: usize| {
        let mut t = Vec::with_capacity(n);
        t.extend_from_slice(&rest[..i]);
        t.push(a);
        t.extend_from_slice(&rest[i..]);
        shape.codec.encode(&t)
    };
    let mut out = Vec::with_capacity(2 * k);
    for a in 0..k {
        let next = (a + 1) % k;
        out.push((lift(&u, a), lift(&v, next)));
        out.push((lift(&v, a), lift(&u, next)));
    }
    Ok(out)
}

/// `e x_i O_k` as a chain over `host = C_k^n`.
pub fn edge_times_cycle<'g>(
    host: &'g Graph,
    k: usize,
    n: usize,
    i: usize,
    e: (usize, usize),
) -> Result<EdgeChain<'g>> {
    let edges = edge_times_cycle_edges(k, n, i, e)?;
    PowerShape::new(k, n)?.check_host(host)?;
    let mut chain = EdgeChain::zero(host);
    for (a, b) in edges {
        chain.add_oriented(a, b, 1)?;
    }
    Ok(chain)
}
