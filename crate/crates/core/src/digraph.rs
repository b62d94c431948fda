//! Finite simple digraphs, directed cycles and paths, and their cartesian
//! and strong products.
//!
//! Vertices are `0..order`. Adjacency is stored in both directions because
//! domination checks walk in-neighborhoods almost exclusively. Digraphs are
//! immutable after construction and safe to share across threads.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite simple digraph: no self-loops, no duplicate arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    order: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arc_count: usize,
}

impl Digraph {
    /// Builds a digraph from an arc list. Self-loops, duplicate arcs and
    /// out-of-range endpoints are rejected with distinct errors.
    pub fn from_arcs(order: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyDigraph);
        }
        let mut out = vec![Vec::new(); order];
        let mut inn = vec![Vec::new(); order];
        let mut arc_count = 0usize;
        for (u, v) in arcs {
            if u >= order {
                return Err(Error::ArcOutOfRange { vertex: u, order });
            }
            if v >= order {
                return Err(Error::ArcOutOfRange { vertex: v, order });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            out[u].push(v);
            inn[v].push(u);
            arc_count += 1;
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
        }
        for (u, list) in out.iter().enumerate() {
            if let Some(pair) = list.windows(2).find(|pair| pair[0] == pair[1]) {
                return Err(Error::DuplicateArc(u, pair[0]));
            }
        }
        Ok(Self {
            order,
            out,
            inn,
            arc_count,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.order && self.out[u].binary_search(&v).is_ok()
    }

    /// Out-neighbors of `u` in increasing order. Panics if `u >= order`.
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    /// In-neighbors of `v` in increasing order. Panics if `v >= order`.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> usize {
        self.inn.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edge-list text form: first line the order, then one `u v` line per
    /// arc, 0-based.
    pub fn to_edge_list(&self) -> String {
        let mut text = String::with_capacity(8 * (self.arc_count + 1));
        writeln!(text, "{}", self.order).unwrap();
        for (u, v) in self.arcs() {
            writeln!(text, "{u} {v}").unwrap();
        }
        text
    }
}

/// The directed cycle on `m >= 2` vertices with arcs `i -> (i+1) mod m`.
/// A 1-cycle would be a self-loop, so it is rejected.
pub fn directed_cycle(m: usize) -> Result<Digraph> {
    if m < 2 {
        return Err(Error::CycleOrder(m));
    }
    Digraph::from_arcs(m, (0..m).map(|i| (i, (i + 1) % m)))
}

/// The directed path on `m >= 1` vertices with arcs `i -> i+1`.
pub fn directed_path(m: usize) -> Result<Digraph> {
    if m < 1 {
        return Err(Error::PathOrder);
    }
    Digraph::from_arcs(m, (1..m).map(|i| (i - 1, i)))
}

/// Cartesian product: `(x1,x2) -> (y1,y2)` iff one coordinate is fixed and
/// the other moves along a factor arc. Vertex `(x, y)` gets id
/// `x * order(b) + y`.
pub fn cartesian_product(a: &Digraph, b: &Digraph) -> Digraph {
    let nb = b.order();
    let id = |x: usize, y: usize| x * nb + y;
    let mut arcs = Vec::with_capacity(a.order() * b.arc_count() + nb * a.arc_count());
    for x in 0..a.order() {
        for (y, y2) in b.arcs() {
            arcs.push((id(x, y), id(x, y2)));
        }
    }
    for (x, x2) in a.arcs() {
        for y in 0..nb {
            arcs.push((id(x, y), id(x2, y)));
        }
    }
    Digraph::from_arcs(a.order() * nb, arcs).expect("product of simple digraphs is simple")
}

/// Strong product: the cartesian arcs plus the diagonal arcs that move along
/// both factors at once.
pub fn strong_product(a: &Digraph, b: &Digraph) -> Digraph {
    let nb = b.order();
    let id = |x: usize, y: usize| x * nb + y;
    let mut arcs = Vec::with_capacity(
        a.order() * b.arc_count() + nb * a.arc_count() + a.arc_count() * b.arc_count(),
    );
    for x in 0..a.order() {
        for (y, y2) in b.arcs() {
            arcs.push((id(x, y), id(x, y2)));
        }
    }
    for (x, x2) in a.arcs() {
        for y in 0..nb {
            arcs.push((id(x, y), id(x2, y)));
        }
    }
    for (x, x2) in a.arcs() {
        for (y, y2) in b.arcs() {
            arcs.push((id(x, y), id(x2, y2)));
        }
    }
    Digraph::from_arcs(a.order() * nb, arcs).expect("product of simple digraphs is simple")
}

/// Which product combines the two cycle factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Cartesian,
    Strong,
}

impl ProductKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Strong => "strong",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cartesian" => Ok(ProductKind::Cartesian),
            "strong" => Ok(ProductKind::Strong),
            other => Err(Error::Parameter(format!(
                "unknown product kind {other:?} (expected \"cartesian\" or \"strong\")"
            ))),
        }
    }
}

/// A symbolic `C_m <product> C_n` instance. Carrying the structure
/// separately from the expanded [`Digraph`] lets structure-aware solvers
/// skip the generic representation.
///
/// Vertex `(i, j)` (row `i` indexing `C_m`, column `j` indexing `C_n`,
/// both 0-based) has id `i * n + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductInstance {
    kind: ProductKind,
    m: usize,
    n: usize,
}

impl ProductInstance {
    /// Both factors must have at least 2 vertices to stay simple.
    pub fn new(kind: ProductKind, m: usize, n: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::FactorTooSmall(m));
        }
        if n < 2 {
            return Err(Error::FactorTooSmall(n));
        }
        Ok(Self { kind, m, n })
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.m * self.n
    }

    pub fn vertex_id(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.m && j < self.n);
        i * self.n + j
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        debug_assert!(v < self.order());
        (v / self.n, v % self.n)
    }

    /// The factor-swapped instance; both products are isomorphic under
    /// `(i, j) -> (j, i)`.
    pub fn swapped(&self) -> Self {
        Self {
            kind: self.kind,
            m: self.n,
            n: self.m,
        }
    }

    /// Expands the instance into its concrete product digraph.
    pub fn digraph(&self) -> Digraph {
        let cm = directed_cycle(self.m).expect("m >= 2");
        let cn = directed_cycle(self.n).expect("n >= 2");
        match self.kind {
            ProductKind::Cartesian => cartesian_product(&cm, &cn),
            ProductKind::Strong => strong_product(&cm, &cn),
        }
    }
}

impl fmt::Display for ProductInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}x{}", self.kind, self.m, self.n)
    }
}
