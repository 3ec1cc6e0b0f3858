//! Decision procedures in the Cayley-table model.
//!
//! `R_U`-equivalence and conjugacy are connectivity questions in undirected
//! graphs on `S` whose edges depend only on `S` and `Σ`, so both graphs are
//! built once per [`CtSolver`] and answered by union-find. Membership runs
//! the greedy descent loop over `R_U`-classes.
//!
//! The solver always works in `S¹` with an adjoined identity at index
//! `|S|`, even when the table already has an identity: that identity need
//! not lie in `U`, and the loop starts outside `U`.

use crate::answer::{ConjAnswer, MemberAnswer};
use crate::error::AlgebraError;
use crate::oracle::Conjugator;
use crate::slp::SlpArena;
use crate::table::{CayleyTable, CtSystem};
use crate::unionfind::UnionFind;

/// Labelled undirected graph with union-find over its components.
#[derive(Clone, Debug)]
struct EdgeGraph {
    uf: UnionFind,
    /// `(neighbour, generator)`: moving along the edge multiplies by `Σ[g]`.
    adj: Vec<Vec<(usize, usize)>>,
}

impl EdgeGraph {
    fn new(n: usize) -> Self {
        EdgeGraph { uf: UnionFind::new(n), adj: vec![Vec::new(); n] }
    }

    fn add(&mut self, x: usize, y: usize, g: usize, g_inv: usize) {
        if x == y {
            return;
        }
        self.uf.union(x, y);
        self.adj[x].push((y, g));
        self.adj[y].push((x, g_inv));
    }

    /// Generator labels along a BFS path from `a` to `b`.
    fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        if a == b {
            return Some(Vec::new());
        }
        let n = self.adj.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[a] = true;
        let mut queue = std::collections::VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for &(y, g) in &self.adj[x] {
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                prev[y] = Some((x, g));
                if y == b {
                    let mut word = Vec::new();
                    let mut cur = b;
                    while let Some((p, g)) = prev[cur] {
                        word.push(g);
                        cur = p;
                    }
                    word.reverse();
                    return Some(word);
                }
                queue.push_back(y);
            }
        }
        None
    }
}

/// One executed step of the greedy membership loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GreedyStep {
    pub from: usize,
    pub y: usize,
    pub gen: usize,
    pub to: usize,
}

#[derive(Clone, Debug)]
pub struct GreedyTrace {
    pub answer: MemberAnswer,
    pub steps: Vec<GreedyStep>,
    /// The final value of `x`.
    pub last: usize,
}

/// Precomputed `R_U` and conjugation graphs for one generator system.
#[derive(Clone, Debug)]
pub struct CtSolver {
    sys: CtSystem,
    n: usize,
    r: EdgeGraph,
    conj: EdgeGraph,
    /// Members of each `R_U`-class in ascending order, keyed by label.
    r_classes: Vec<Vec<usize>>,
    r_label: Vec<usize>,
}

impl CtSolver {
    pub fn new(table: CayleyTable, gens: Vec<usize>) -> Result<Self, AlgebraError> {
        Ok(Self::from_system(CtSystem::new(table, gens)?))
    }

    pub fn from_system(sys: CtSystem) -> Self {
        let n = sys.ambient().size();
        let mut solver = CtSolver { n, r: EdgeGraph::new(n + 1), conj: EdgeGraph::new(n + 1), r_classes: Vec::new(), r_label: Vec::new(), sys };
        for (g, &u) in solver.sys.gens().iter().enumerate() {
            let gi = solver.sys.inverse_index(g);
            let ui = solver.sys.gens()[gi];
            for x in 0..=n {
                let y = solver.mul(x, u);
                if solver.mul(y, ui) == x {
                    solver.r.add(x, y, g, gi);
                }
                let y = solver.mul(solver.mul(ui, x), u);
                if solver.mul(solver.mul(u, y), ui) == x {
                    solver.conj.add(x, y, g, gi);
                }
            }
        }
        let labels = solver.r.uf.labels();
        let mut classes = vec![Vec::new(); labels.iter().max().map_or(0, |m| m + 1)];
        for (x, &l) in labels.iter().enumerate() {
            classes[l].push(x);
        }
        solver.r_classes = classes;
        solver.r_label = labels;
        solver
    }

    pub fn system(&self) -> &CtSystem {
        &self.sys
    }

    /// Index of the adjoined identity.
    pub fn one(&self) -> usize {
        self.n
    }

    /// Product in `S¹`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if a == self.n {
            b
        } else if b == self.n {
            a
        } else {
            self.sys.ambient().product(a, b)
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        if a == self.n {
            a
        } else {
            self.sys.ambient().inv(a)
        }
    }

    fn check(&self, x: usize) -> Result<(), AlgebraError> {
        if x > self.n {
            return Err(AlgebraError::NotInAmbient(format!("index {x} in a table of size {}", self.n)));
        }
        Ok(())
    }

    /// `s R_U t` in `S¹`, with a word `w` over `Σ` such that `s w = t`.
    pub fn r_path(&mut self, s: usize, t: usize) -> Result<Option<Vec<usize>>, AlgebraError> {
        self.check(s)?;
        self.check(t)?;
        if !self.r.uf.same(s, t) {
            return Ok(None);
        }
        Ok(self.r.path(s, t))
    }

    pub fn r_equiv(&mut self, s: usize, t: usize) -> Result<bool, AlgebraError> {
        self.check(s)?;
        self.check(t)?;
        Ok(self.r.uf.same(s, t))
    }

    /// `s L_U t`, reduced to `s̄ R_U t̄`.
    pub fn l_equiv(&mut self, s: usize, t: usize) -> Result<bool, AlgebraError> {
        self.check(s)?;
        self.check(t)?;
        let (a, b) = (self.inv(s), self.inv(t));
        Ok(self.r.uf.same(a, b))
    }

    /// `s ∼_U t`. A non-identity conjugator is the product of the edge
    /// labels along a path from `s` to `t`.
    pub fn conjugate(&mut self, s: usize, t: usize) -> Result<ConjAnswer<usize>, AlgebraError> {
        self.check(s)?;
        self.check(t)?;
        if s == t {
            return Ok(ConjAnswer::identity());
        }
        if !self.conj.uf.same(s, t) {
            return Ok(ConjAnswer::no());
        }
        let word = self.conj.path(s, t).expect("same component");
        let u = self.sys.eval_word(&word).expect("nonempty path");
        let ui = self.inv(u);
        debug_assert!(self.mul(self.mul(ui, s), u) == t && self.mul(self.mul(u, t), ui) == s);
        Ok(ConjAnswer {
            conjugate: true,
            conjugator: Some(Conjugator::Element(u)),
            witness: Some(crate::slp::Slp::from_word(&word)),
        })
    }

    pub fn member(&mut self, t: usize) -> Result<MemberAnswer, AlgebraError> {
        Ok(self.member_traced(t)?.answer)
    }

    /// The greedy loop: starting from `x = 1`, repeatedly pick the first
    /// `y R_U x` and `u ∈ Σ` with `y u ū ≠ y` and `y u ū ȳ t = t`, and move
    /// to `x = y u`. Then `t ∈ U` iff `x R_U t` at the end.
    pub fn member_traced(&mut self, t: usize) -> Result<GreedyTrace, AlgebraError> {
        self.check(t)?;
        if t == self.n {
            // The adjoined identity is in U¹ by convention and has no program over Σ.
            let answer = MemberAnswer { member: true, witness: None };
            return Ok(GreedyTrace { answer, steps: Vec::new(), last: t });
        }
        let mut arena = SlpArena::new();
        let mut x = self.n;
        let mut node: Option<usize> = None;
        let mut steps = Vec::new();
        loop {
            let xi = self.inv(x);
            assert_eq!(self.mul(self.mul(x, xi), t), t, "x x̄ t = t must hold");
            let Some((y, g)) = self.pick(x, t) else { break };
            let path = self.r.path(x, y).expect("same R-class");
            let mut v = x;
            for &h in &path {
                v = self.mul(v, self.sys.gens()[h]);
            }
            assert_eq!(v, y, "R-class path must lead to y");
            let pn = arena.word(&path);
            node = arena.mul_opt(node, pn);
            let gn = arena.gen(g);
            node = arena.mul_opt(node, Some(gn));
            let next = self.mul(y, self.sys.gens()[g]);
            steps.push(GreedyStep { from: x, y, gen: g, to: next });
            assert!(steps.len() <= self.n + 1, "greedy loop exceeded |S| iterations");
            x = next;
        }
        if !self.r.uf.same(x, t) {
            return Ok(GreedyTrace { answer: MemberAnswer::no(), steps, last: x });
        }
        let path = self.r.path(x, t).expect("same R-class");
        let pn = arena.word(&path);
        let node = arena.mul_opt(node, pn).expect("t is not the identity");
        let slp = arena.extract(node);
        debug_assert_eq!(slp.eval(&self.sys).ok(), Some(t));
        Ok(GreedyTrace { answer: MemberAnswer::yes(slp), steps, last: x })
    }

    fn pick(&self, x: usize, t: usize) -> Option<(usize, usize)> {
        let class = &self.r_classes[self.r_label[x]];
        for &y in class {
            let yi = self.inv(y);
            for (g, &u) in self.sys.gens().iter().enumerate() {
                let e = self.mul(self.mul(y, u), self.sys.gens()[self.sys.inverse_index(g)]);
                if e != y && self.mul(self.mul(e, yi), t) == t {
                    return Some((y, g));
                }
            }
        }
        None
    }
}

pub fn ct_r_equiv(sys: &CtSystem, s: usize, t: usize) -> Result<bool, AlgebraError> {
    CtSolver::from_system(sys.clone()).r_equiv(s, t)
}

pub fn ct_conjugate(sys: &CtSystem, s: usize, t: usize) -> Result<ConjAnswer<usize>, AlgebraError> {
    CtSolver::from_system(sys.clone()).conjugate(s, t)
}

pub fn ct_member(sys: &CtSystem, t: usize) -> Result<MemberAnswer, AlgebraError> {
    CtSolver::from_system(sys.clone()).member(t)
}
