//! Undirected reachability encoded in the Brandt semigroup `B(V)`.
//!
//! Element `u_xy` (the map `x ↦ y`) has table index `x·n + y` and zero has
//! index `n²`; `e_x = u_xx`.

use thiserror::Error;

use crate::table::{CayleyTable, CtSystem};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge}: endpoint out of range")]
    BadVertex { edge: usize },
    #[error("edge {edge}: self-loop")]
    SelfLoop { edge: usize },
    #[error("vertex {0} out of range")]
    BadQuery(usize),
}

/// A simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(GraphError::BadVertex { edge: i });
            }
            if a == b {
                return Err(GraphError::SelfLoop { edge: i });
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn connected(&self, s: usize, t: usize) -> bool {
        let mut uf = UnionFind::new(self.n);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.same(s, t)
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            return Err(GraphError::BadQuery(v));
        }
        Ok(())
    }
}

/// Cayley table of `B(V)` for `|V| = n`.
pub fn brandt_table(n: usize) -> CayleyTable {
    let zero = n * n;
    let mul = |a: usize, b: usize| {
        if a == zero || b == zero {
            return zero;
        }
        let (x, y) = (a / n, a % n);
        let (z, w) = (b / n, b % n);
        if y == z {
            x * n + w
        } else {
            zero
        }
    };
    let rows = (0..=zero).map(|a| (0..=zero).map(|b| mul(a, b)).collect()).collect();
    CayleyTable::new(rows).expect("Brandt semigroups are inverse")
}

/// `Σ = {e_x} ∪ {u_xy, u_yx : xy ∈ E}` as table indices.
pub fn ugap_generators(g: &Graph) -> Vec<usize> {
    let n = g.n;
    let mut gens: Vec<usize> = (0..n).map(|x| x * n + x).collect();
    for &(a, b) in &g.edges {
        for idx in [a * n + b, b * n + a] {
            if !gens.contains(&idx) {
                gens.push(idx);
            }
        }
    }
    gens
}

/// Conjugacy instance: `e_s ∼_U e_t` iff `s` and `t` are connected.
#[derive(Clone, Debug)]
pub struct UgapConj {
    pub system: CtSystem,
    pub s: usize,
    pub t: usize,
}

pub fn gen_ugap_conj_with(table: &CayleyTable, g: &Graph, s: usize, t: usize) -> Result<UgapConj, GraphError> {
    g.check(s)?;
    g.check(t)?;
    let system = CtSystem::new(table.clone(), ugap_generators(g)).expect("valid indices");
    Ok(UgapConj { system, s: s * g.n + s, t: t * g.n + t })
}

pub fn gen_ugap_conj(g: &Graph, s: usize, t: usize) -> Result<UgapConj, GraphError> {
    gen_ugap_conj_with(&brandt_table(g.n), g, s, t)
}

/// Membership instance in `B(V) × Y₂`: `(e_t, 0) ∈ <(e_s, 0), Σ × {1}>`.
/// Pair `(a, b)` has index `2a + b`, with `0` the zero of `Y₂`.
#[derive(Clone, Debug)]
pub struct UgapMember {
    pub system: CtSystem,
    pub target: usize,
}

/// The table of `B(V) × Y₂`.
pub fn ugap_member_table(n: usize) -> CayleyTable {
    brandt_table(n).product_with(&CayleyTable::y2())
}

pub fn gen_ugap_member_with(table: &CayleyTable, g: &Graph, s: usize, t: usize) -> Result<UgapMember, GraphError> {
    g.check(s)?;
    g.check(t)?;
    let n = g.n;
    let mut gens = vec![2 * (s * n + s)];
    gens.extend(ugap_generators(g).into_iter().map(|x| 2 * x + 1));
    let system = CtSystem::new(table.clone(), gens).expect("valid indices");
    Ok(UgapMember { system, target: 2 * (t * n + t) })
}

pub fn gen_ugap_member(g: &Graph, s: usize, t: usize) -> Result<UgapMember, GraphError> {
    gen_ugap_member_with(&ugap_member_table(g.n), g, s, t)
}
