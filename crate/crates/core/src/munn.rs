//! Orbits of a generated subsemigroup on the point set, large elements, and
//! the graph whose vertices are the idempotents `e_Δ u ū` and whose edges
//! are the large generators.
//!
//! A basis at a vertex `e` picks, for each vertex `f` in the component of
//! `e`, an element `γ(f)` carrying `e` to `f`. Together with the edges this
//! gives generators `e λ(u)` of the `H`-class group of `e`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::partial::{PartialBijection, PbSystem};
use crate::slp::SlpArena;
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MunnError {
    #[error("point set is not invariant under the generators")]
    NotInvariant,
    #[error("basis invariant failed: {0}")]
    BasisInvariant(&'static str),
    #[error("idempotent is not a vertex of the graph")]
    NotAVertex,
}

/// Connected components of the Schreier graph of `Σ` on the point set.
/// Points with no incident generator edge belong to no orbit.
#[derive(Clone, Debug)]
pub struct Orbits {
    comp: Vec<Option<usize>>,
    members: Vec<Vec<usize>>,
}

impl Orbits {
    pub fn new(sys: &PbSystem) -> Orbits {
        let n = sys.degree();
        let mut uf = UnionFind::new(n);
        let mut touched = vec![false; n];
        for g in sys.gens() {
            for x in g.domain() {
                let y = g.image(x).expect("domain");
                touched[x] = true;
                touched[y] = true;
                uf.union(x, y);
            }
        }
        let labels = uf.labels();
        let mut remap = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut comp = vec![None; n];
        for x in 0..n {
            if !touched[x] {
                continue;
            }
            let l = labels[x];
            if remap[l] == usize::MAX {
                remap[l] = members.len();
                members.push(Vec::new());
            }
            comp[x] = Some(remap[l]);
            members[remap[l]].push(x);
        }
        Orbits { comp, members }
    }

    pub fn orbit_of(&self, x: usize) -> Option<usize> {
        self.comp.get(x).copied().flatten()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.members
    }

    /// `X^U`: the points reachable from `X` along generator edges.
    pub fn closure<'a, I: IntoIterator<Item = &'a usize>>(&self, xs: I) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut out = BTreeSet::new();
        for &x in xs {
            if let Some(c) = self.orbit_of(x) {
                if seen.insert(c) {
                    out.extend(self.members[c].iter().copied());
                }
            }
        }
        out
    }

    pub fn is_invariant(&self, delta: &BTreeSet<usize>) -> bool {
        &self.closure(delta) == delta
    }

    /// `(dom(u) ∩ Δ)^U = Δ` for an invariant `Δ`: `dom(u)` meets every
    /// orbit contained in `Δ`.
    pub fn is_large(&self, u: &PartialBijection, delta: &BTreeSet<usize>) -> bool {
        let dom: Vec<usize> = u.domain().into_iter().filter(|x| delta.contains(x)).collect();
        self.closure(&dom) == *delta
    }
}

/// `X^U` for the system `Σ`.
pub fn orbit_closure(sys: &PbSystem, xs: &BTreeSet<usize>) -> BTreeSet<usize> {
    Orbits::new(sys).closure(xs)
}

pub fn is_delta_large(sys: &PbSystem, u: &PartialBijection, delta: &BTreeSet<usize>) -> bool {
    Orbits::new(sys).is_large(u, delta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MunnEdge {
    /// Index into `Σ`.
    pub gen: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug)]
pub struct MunnGraph {
    pub delta: BTreeSet<usize>,
    /// Indices of the `Δ`-large generators, in list order.
    pub large: Vec<usize>,
    /// Vertex idempotents `e_Δ u ū`, in order of first appearance.
    pub vertices: Vec<PartialBijection>,
    pub edges: Vec<MunnEdge>,
    /// Component label per vertex.
    pub component: Vec<usize>,
}

impl MunnGraph {
    pub fn new(sys: &PbSystem, orbits: &Orbits, delta: &BTreeSet<usize>) -> Result<MunnGraph, MunnError> {
        if !orbits.is_invariant(delta) {
            return Err(MunnError::NotInvariant);
        }
        let n = sys.degree();
        let restrict = |pts: Vec<usize>| PartialBijection::partial_identity(n, pts.into_iter().filter(|x| delta.contains(x)));
        let mut vertices: Vec<PartialBijection> = Vec::new();
        let vertex_of = |v: PartialBijection, vertices: &mut Vec<PartialBijection>| match vertices.iter().position(|w| *w == v) {
            Some(k) => k,
            None => {
                vertices.push(v);
                vertices.len() - 1
            }
        };
        let mut large = Vec::new();
        let mut edges = Vec::new();
        for (i, u) in sys.gens().iter().enumerate() {
            if !orbits.is_large(u, delta) {
                continue;
            }
            large.push(i);
            let from = vertex_of(restrict(u.domain()), &mut vertices);
            let to = vertex_of(restrict(u.range()), &mut vertices);
            edges.push(MunnEdge { gen: i, from, to });
        }
        let mut uf = UnionFind::new(vertices.len());
        for e in &edges {
            uf.union(e.from, e.to);
        }
        let component = uf.labels();
        Ok(MunnGraph { delta: delta.clone(), large, vertices, edges, component })
    }

    pub fn vertex(&self, e: &PartialBijection) -> Option<usize> {
        self.vertices.iter().position(|v| v == e)
    }

    /// First vertex `e'` with `e <= e'`.
    pub fn vertex_above(&self, e: &PartialBijection) -> Option<usize> {
        self.vertices.iter().position(|v| v.domain_contains(e))
    }

    pub fn connected(&self, a: usize, b: usize) -> bool {
        self.component[a] == self.component[b]
    }

    /// Graphviz rendering, vertices labelled by their point sets (1-based).
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph munn {\n");
        for (k, v) in self.vertices.iter().enumerate() {
            let pts: Vec<String> = v.domain().iter().map(|x| (x + 1).to_string()).collect();
            writeln!(s, "  v{k} [label=\"{{{}}}\"];", pts.join(",")).expect("string write");
        }
        for e in &self.edges {
            writeln!(s, "  v{} -> v{} [label=\"g{}\"];", e.from, e.to, e.gen).expect("string write");
        }
        s.push_str("}\n");
        s
    }
}

/// An element together with its program node.
#[derive(Clone, Debug)]
pub struct Tracked {
    pub value: PartialBijection,
    pub node: usize,
}

#[derive(Clone, Debug)]
pub struct Basis {
    pub root: usize,
    /// `ẽ`: product of `u ū` over component edges with `u ū >= e`.
    pub cover: Tracked,
    /// `γ(f)` per vertex of the root component, `None` elsewhere.
    pub gamma: Vec<Option<Tracked>>,
    /// `λ(u)` per edge of the root component, `None` elsewhere.
    pub lambda: Vec<Option<Tracked>>,
}

impl Basis {
    /// Builds the basis at `root`, with nodes recorded in `arena` over `Σ`.
    pub fn new(sys: &PbSystem, graph: &MunnGraph, arena: &mut SlpArena, root: usize) -> Result<Basis, MunnError> {
        let comp = graph.component[root];
        let e = &graph.vertices[root];
        let mut cover: Option<Tracked> = None;
        for edge in graph.edges.iter().filter(|ed| graph.component[ed.from] == comp) {
            let u = &sys.gens()[edge.gen];
            if !u.domain_contains(e) {
                continue;
            }
            let uu = u.domain_idempotent();
            let g = arena.gen(edge.gen);
            let gi = arena.gen(sys.inverse_index(edge.gen));
            let n = arena.mul(g, gi);
            cover = Some(match cover {
                None => Tracked { value: uu, node: n },
                Some(c) => Tracked { value: &c.value * &uu, node: arena.mul(c.node, n) },
            });
        }
        // A vertex is e_Δ u ū for some large u, and that u lies above it.
        let cover = cover.ok_or(MunnError::BasisInvariant("no generator above the root"))?;
        let mut gamma: Vec<Option<Tracked>> = vec![None; graph.vertices.len()];
        gamma[root] = Some(cover.clone());
        let mut queue = vec![root];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for edge in graph.edges.iter().filter(|ed| ed.from == v) {
                if gamma[edge.to].is_some() {
                    continue;
                }
                let gv = gamma[v].clone().expect("visited");
                let g = arena.gen(edge.gen);
                gamma[edge.to] = Some(Tracked { value: &gv.value * &sys.gens()[edge.gen], node: arena.mul(gv.node, g) });
                queue.push(edge.to);
            }
        }
        let mut lambda: Vec<Option<Tracked>> = vec![None; graph.edges.len()];
        for (k, edge) in graph.edges.iter().enumerate() {
            let (Some(a), Some(b)) = (&gamma[edge.from], &gamma[edge.to]) else { continue };
            let g = arena.gen(edge.gen);
            let bi = arena.inv(b.node);
            let left = arena.mul(a.node, g);
            let node = arena.mul(left, bi);
            let value = &(&a.value * &sys.gens()[edge.gen]) * &b.value.inverse();
            lambda[k] = Some(Tracked { value, node });
        }
        let basis = Basis { root, cover, gamma, lambda };
        basis.check(sys, graph)?;
        Ok(basis)
    }

    fn check(&self, sys: &PbSystem, graph: &MunnGraph) -> Result<(), MunnError> {
        let e = &graph.vertices[self.root];
        let ge = &self.cover.value;
        if !ge.is_idempotent() || !ge.domain_contains(e) {
            return Err(MunnError::BasisInvariant("γ(e) is not an idempotent above e"));
        }
        for (k, g) in self.gamma.iter().enumerate() {
            let Some(g) = g else { continue };
            let f = &graph.vertices[k];
            let gi = g.value.inverse();
            if !ge.domain_contains(&(&g.value * &gi)) {
                return Err(MunnError::BasisInvariant("γ(e) is not above γ(f) γ(f)‾"));
            }
            if &(&(&gi * e) * &g.value) != f || &(&(&g.value * f) * &gi) != e {
                return Err(MunnError::BasisInvariant("γ(f) does not carry e to f"));
            }
        }
        for (k, edge) in graph.edges.iter().enumerate() {
            let Some(l) = &self.lambda[k] else { continue };
            let inv_gen = sys.inverse_index(edge.gen);
            let Some(j) = graph
                .edges
                .iter()
                .position(|ed| ed.gen == inv_gen && ed.from == edge.to && ed.to == edge.from)
            else {
                return Err(MunnError::BasisInvariant("inverse edge missing"));
            };
            let li = self.lambda[j].as_ref().expect("same component");
            if li.value != l.value.inverse() {
                return Err(MunnError::BasisInvariant("λ(ū) is not λ(u)‾"));
            }
            if &l.value * &li.value != &li.value * &l.value {
                return Err(MunnError::BasisInvariant("λ(u) λ(ū) and λ(ū) λ(u) differ"));
            }
        }
        Ok(())
    }

    /// Generators `e λ(u)` of the `H`-class group of the root.
    pub fn hclass_generators(&self, arena: &mut SlpArena, e: &Tracked) -> Vec<Tracked> {
        let mut out = Vec::new();
        for l in self.lambda.iter().flatten() {
            out.push(Tracked { value: &e.value * &l.value, node: arena.mul(e.node, l.node) });
        }
        out
    }
}

/// The least idempotent of `U` above `e`, or `None` when only `1` is.
pub fn sis_min_idempotent(
    sys: &PbSystem,
    orbits: &Orbits,
    arena: &mut SlpArena,
    e: &PartialBijection,
) -> Result<Option<Tracked>, MunnError> {
    let delta = orbits.closure(&e.domain());
    let graph = MunnGraph::new(sys, orbits, &delta)?;
    let Some(root) = graph.vertex_above(e) else { return Ok(None) };
    let basis = Basis::new(sys, &graph, arena, root)?;
    let mut acc: Option<Tracked> = None;
    for l in basis.lambda.iter().flatten() {
        let li = arena.inv(l.node);
        let n = arena.mul(l.node, li);
        let v = l.value.domain_idempotent();
        acc = Some(match acc {
            None => Tracked { value: v, node: n },
            Some(a) => Tracked { value: &a.value * &v, node: arena.mul(a.node, n) },
        });
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial::brandt;

    fn pb(s: &str) -> PartialBijection {
        s.parse().unwrap()
    }

    fn path_b3() -> PbSystem {
        let b = brandt(3, false);
        let names = ["u11", "u22", "u33", "u12", "u21", "u23", "u32"];
        PbSystem::from_gens(3, names.iter().map(|n| b.element(n).unwrap().clone()).collect()).unwrap()
    }

    #[test]
    fn path_graph_has_three_vertices() {
        let sys = path_b3();
        let orbits = Orbits::new(&sys);
        let delta: BTreeSet<usize> = [0, 1, 2].into();
        let g = MunnGraph::new(&sys, &orbits, &delta).unwrap();
        assert_eq!(g.vertices.len(), 3);
        assert!(g.connected(0, 2));
    }

    #[test]
    fn non_invariant_set_is_rejected() {
        let sys = path_b3();
        let orbits = Orbits::new(&sys);
        let delta: BTreeSet<usize> = [0, 1].into();
        assert_eq!(MunnGraph::new(&sys, &orbits, &delta).unwrap_err(), MunnError::NotInvariant);
    }

    #[test]
    fn min_idempotent_in_path() {
        let sys = path_b3();
        let orbits = Orbits::new(&sys);
        let mut arena = SlpArena::new();
        let e1 = pb("1 _ _");
        let m = sis_min_idempotent(&sys, &orbits, &mut arena, &e1).unwrap().unwrap();
        assert_eq!(m.value, e1);
        assert_eq!(arena.extract(m.node).eval(&sys).unwrap(), e1);
    }

    #[test]
    fn orbit_closure_drops_isolated_points() {
        let sys = PbSystem::from_gens(4, vec![pb("2 1 _ _")]).unwrap();
        let xs: BTreeSet<usize> = [0, 3].into();
        assert_eq!(orbit_closure(&sys, &xs), [0, 1].into());
    }
}
