//! Nondeterministic constraint logic machines and the reductions from NCL
//! reachability to idempotent conjugacy, idempotent membership and
//! intersection non-emptiness of inverse automata.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::automata::InverseAutomaton;
use crate::partial::{PartialBijection, PbSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NclError {
    #[error("edge {edge}: endpoint out of range")]
    BadVertex { edge: usize },
    #[error("edge {edge}: self-loop")]
    SelfLoop { edge: usize },
    #[error("edge {edge}: parallel to an earlier edge")]
    ParallelEdge { edge: usize },
    #[error("edge {edge}: weight must be 1 or 2")]
    BadWeight { edge: usize },
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    Degree { vertex: usize, degree: usize },
    #[error("configuration has {got} orientations for {expected} edges")]
    ConfigLength { expected: usize, got: usize },
    #[error("configuration has in-flow below 2 at vertex {vertex}")]
    InFlow { vertex: usize },
    #[error("more than 64 edges")]
    TooManyEdges,
}

/// An edge orientation per edge: `true` points toward the first endpoint.
pub type Config = Vec<bool>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NclMachine {
    vertices: usize,
    edges: Vec<(usize, usize, u8)>,
    incident: Vec<Vec<usize>>,
}

/// One generator `u(c1, c'2)`: reversal of `edge` from `tail -> head` to
/// `head -> tail`, applicable when the local configurations are `c1`, `c2`.
/// Local configurations are indices into [`NclMachine::local_configs`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub edge: usize,
    pub tail: usize,
    pub head: usize,
    pub c1: usize,
    pub c1_after: usize,
    pub c2: usize,
    pub c2_after: usize,
}

impl NclMachine {
    pub fn new(vertices: usize, edges: Vec<(usize, usize, u8)>) -> Result<Self, NclError> {
        if edges.len() > 64 {
            return Err(NclError::TooManyEdges);
        }
        let mut incident = vec![Vec::new(); vertices];
        let mut seen = std::collections::HashSet::new();
        for (i, &(a, b, w)) in edges.iter().enumerate() {
            if a >= vertices || b >= vertices {
                return Err(NclError::BadVertex { edge: i });
            }
            if a == b {
                return Err(NclError::SelfLoop { edge: i });
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(NclError::ParallelEdge { edge: i });
            }
            if w != 1 && w != 2 {
                return Err(NclError::BadWeight { edge: i });
            }
            incident[a].push(i);
            incident[b].push(i);
        }
        for (v, inc) in incident.iter().enumerate() {
            if inc.len() != 3 {
                return Err(NclError::Degree { vertex: v, degree: inc.len() });
            }
        }
        Ok(NclMachine { vertices, edges, incident })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, u8)] {
        &self.edges
    }

    fn head(&self, c: &[bool], e: usize) -> usize {
        let (a, b, _) = self.edges[e];
        if c[e] {
            a
        } else {
            b
        }
    }

    /// Bitmask of `c` restricted to `v`: bit `j` is set when the `j`-th
    /// incident edge points into `v`.
    pub fn local_mask(&self, c: &[bool], v: usize) -> u8 {
        let mut m = 0;
        for (j, &e) in self.incident[v].iter().enumerate() {
            if self.head(c, e) == v {
                m |= 1 << j;
            }
        }
        m
    }

    fn inflow(&self, v: usize, mask: u8) -> u32 {
        self.incident[v].iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &e)| self.edges[e].2 as u32).sum()
    }

    /// Local configurations at `v` in binary counting order of their masks.
    pub fn local_configs(&self, v: usize) -> Vec<u8> {
        (0u8..8).filter(|&m| self.inflow(v, m) >= 2).collect()
    }

    pub fn is_config(&self, c: &[bool]) -> bool {
        c.len() == self.edges.len() && (0..self.vertices).all(|v| self.inflow(v, self.local_mask(c, v)) >= 2)
    }

    pub fn check_config(&self, c: &[bool]) -> Result<(), NclError> {
        if c.len() != self.edges.len() {
            return Err(NclError::ConfigLength { expected: self.edges.len(), got: c.len() });
        }
        for v in 0..self.vertices {
            if self.inflow(v, self.local_mask(c, v)) < 2 {
                return Err(NclError::InFlow { vertex: v });
            }
        }
        Ok(())
    }

    /// All configurations, by binary counting over edge orientations.
    pub fn configurations(&self) -> Vec<Config> {
        let m = self.edges.len();
        (0u64..1 << m).map(|bits| (0..m).map(|i| bits >> i & 1 == 1).collect::<Config>()).filter(|c| self.is_config(c)).collect()
    }

    /// BFS over configurations with single-edge reversals. Returns the
    /// reversed edges in order.
    pub fn reach_bruteforce(&self, from: &[bool], to: &[bool]) -> Option<Vec<usize>> {
        let pack = |c: &[bool]| c.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
        let (s, t) = (pack(from), pack(to));
        let mut prev: HashMap<u64, (u64, usize)> = HashMap::new();
        let mut queue = VecDeque::from([s]);
        prev.insert(s, (s, usize::MAX));
        while let Some(x) = queue.pop_front() {
            if x == t {
                let mut path = Vec::new();
                let mut cur = x;
                while cur != s {
                    let (p, e) = prev[&cur];
                    path.push(e);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for e in 0..self.edges.len() {
                let y = x ^ (1 << e);
                if prev.contains_key(&y) {
                    continue;
                }
                let c: Config = (0..self.edges.len()).map(|i| y >> i & 1 == 1).collect();
                let (a, b, _) = self.edges[e];
                if self.inflow(a, self.local_mask(&c, a)) >= 2 && self.inflow(b, self.local_mask(&c, b)) >= 2 {
                    prev.insert(y, (x, e));
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Every applicable reversal, for both orientations of every edge.
    pub fn moves(&self) -> Vec<Move> {
        let locals: Vec<Vec<u8>> = (0..self.vertices).map(|v| self.local_configs(v)).collect();
        let index = |v: usize, m: u8| locals[v].iter().position(|&x| x == m);
        let mut out = Vec::new();
        for (e, &(a, b, _)) in self.edges.iter().enumerate() {
            for (tail, head) in [(a, b), (b, a)] {
                let bt = 1u8 << self.incident[tail].iter().position(|&x| x == e).expect("incident");
                let bh = 1u8 << self.incident[head].iter().position(|&x| x == e).expect("incident");
                for (c1, &m1) in locals[tail].iter().enumerate() {
                    if m1 & bt != 0 {
                        continue;
                    }
                    let Some(c1_after) = index(tail, m1 | bt) else { continue };
                    for (c2, &m2) in locals[head].iter().enumerate() {
                        if m2 & bh == 0 {
                            continue;
                        }
                        let Some(c2_after) = index(head, m2 & !bh) else { continue };
                        out.push(Move { edge: e, tail, head, c1, c1_after, c2, c2_after });
                    }
                }
            }
        }
        out
    }
}

/// The point set `Ω_Γ`: local configurations of every vertex, in vertex
/// order, and the generators `u(c1, c'2)`.
#[derive(Clone, Debug)]
pub struct NclEncoding {
    pub machine: NclMachine,
    pub offsets: Vec<usize>,
    pub locals: Vec<Vec<u8>>,
    pub moves: Vec<Move>,
    pub degree: usize,
}

impl NclEncoding {
    pub fn new(machine: &NclMachine) -> Self {
        let locals: Vec<Vec<u8>> = (0..machine.vertices).map(|v| machine.local_configs(v)).collect();
        let mut offsets = Vec::with_capacity(locals.len());
        let mut degree = 0;
        for l in &locals {
            offsets.push(degree);
            degree += l.len();
        }
        NclEncoding { machine: machine.clone(), offsets, locals, moves: machine.moves(), degree }
    }

    pub fn point(&self, v: usize, local: usize) -> usize {
        self.offsets[v] + local
    }

    fn local_of(&self, c: &[bool], v: usize) -> usize {
        let m = self.machine.local_mask(c, v);
        self.locals[v].iter().position(|&x| x == m).expect("valid configuration")
    }

    /// `e(C)`: the identity on the points `C|_v`.
    pub fn idempotent(&self, c: &[bool]) -> PartialBijection {
        PartialBijection::partial_identity(self.degree, (0..self.machine.vertices).map(|v| self.point(v, self.local_of(c, v))))
    }

    /// Decodes `e(C)`; `None` for elements outside that form.
    pub fn decode(&self, e: &PartialBijection) -> Option<Config> {
        if !e.is_idempotent() || e.rank() != self.machine.vertices {
            return None;
        }
        let mut masks = Vec::with_capacity(self.machine.vertices);
        for v in 0..self.machine.vertices {
            let hits: Vec<usize> = (0..self.locals[v].len()).filter(|&j| e.is_defined(self.point(v, j))).collect();
            if hits.len() != 1 {
                return None;
            }
            masks.push(self.locals[v][hits[0]]);
        }
        let m = self.machine.edges.len();
        let mut c = vec![false; m];
        for (e, &(a, b, _)) in self.machine.edges.iter().enumerate() {
            let ja = self.machine.incident[a].iter().position(|&x| x == e).expect("incident");
            let jb = self.machine.incident[b].iter().position(|&x| x == e).expect("incident");
            let (into_a, into_b) = (masks[a] >> ja & 1 == 1, masks[b] >> jb & 1 == 1);
            if into_a == into_b {
                return None;
            }
            c[e] = into_a;
        }
        Some(c)
    }

    /// `u(c1, c'2)` as a partial bijection of `Ω_Γ`.
    pub fn generator(&self, mv: &Move) -> PartialBijection {
        let mut img: Vec<Option<usize>> = (0..self.degree).map(Some).collect();
        for (v, loc) in [(mv.tail, (mv.c1, mv.c1_after)), (mv.head, (mv.c2, mv.c2_after))] {
            for j in 0..self.locals[v].len() {
                img[self.point(v, j)] = None;
            }
            img[self.point(v, loc.0)] = Some(self.point(v, loc.1));
        }
        PartialBijection::new(&img).expect("bijective")
    }

    pub fn generators(&self) -> Vec<PartialBijection> {
        self.moves.iter().map(|m| self.generator(m)).collect()
    }

    /// Index of the move undoing `moves[i]`.
    pub fn inverse_move(&self, i: usize) -> usize {
        let m = self.moves[i];
        self.moves
            .iter()
            .position(|x| x.edge == m.edge && x.tail == m.head && x.c1 == m.c2_after && x.c2 == m.c1_after)
            .expect("moves come in inverse pairs")
    }

    /// Applies a move sequence to `c`, failing on an inapplicable step.
    pub fn replay(&self, c: &[bool], word: &[usize]) -> Option<Config> {
        let mut cur = c.to_vec();
        for &i in word {
            let m = self.moves.get(i)?;
            if self.local_of(&cur, m.tail) != m.c1 || self.local_of(&cur, m.head) != m.c2 {
                return None;
            }
            if self.machine.head(&cur, m.edge) != m.head {
                return None;
            }
            cur[m.edge] = !cur[m.edge];
            if !self.machine.is_config(&cur) {
                return None;
            }
        }
        Some(cur)
    }
}

/// Idempotent conjugacy instance `(Σ_Γ, e(C_s), e(C_t))`.
#[derive(Clone, Debug)]
pub struct NclConj {
    pub encoding: NclEncoding,
    pub system: PbSystem,
    pub s: PartialBijection,
    pub t: PartialBijection,
}

pub fn gen_ncl_conj(machine: &NclMachine, cs: &[bool], ct: &[bool]) -> Result<NclConj, NclError> {
    machine.check_config(cs)?;
    machine.check_config(ct)?;
    let encoding = NclEncoding::new(machine);
    let system = PbSystem::from_gens(encoding.degree, encoding.generators()).expect("generators on Ω_Γ");
    assert_eq!(system.len(), encoding.moves.len(), "Σ_Γ is inverse closed");
    let (s, t) = (encoding.idempotent(cs), encoding.idempotent(ct));
    Ok(NclConj { encoding, system, s, t })
}

/// Idempotent membership instance over `Ω_Γ ⊔ {∗}` with `∗` the last point.
#[derive(Clone, Debug)]
pub struct NclMember {
    pub system: PbSystem,
    pub target: PartialBijection,
}

pub fn gen_ncl_member(machine: &NclMachine, cs: &[bool], ct: &[bool]) -> Result<NclMember, NclError> {
    let conj = gen_ncl_conj(machine, cs, ct)?;
    let n = conj.encoding.degree;
    let star = n;
    let with_star = |x: &PartialBijection, keep: bool| {
        let mut img: Vec<Option<usize>> = x.images().collect();
        img.push(keep.then_some(star));
        PartialBijection::new(&img).expect("bijective")
    };
    let mut gens: Vec<PartialBijection> = conj.system.gens().iter().map(|g| with_star(g, true)).collect();
    gens.push(with_star(&conj.s, false));
    gens.push(with_star(&conj.t, true));
    let system = PbSystem::from_gens(n + 1, gens).expect("generators on Ω_Γ ⊔ {∗}");
    Ok(NclMember { system, target: with_star(&conj.t, false) })
}

/// One two-state automaton per local configuration, state 0 meaning the
/// configuration holds and state 1 that it does not. The alphabet is the
/// move list of [`NclEncoding`].
pub fn gen_ncl_automata(machine: &NclMachine, cs: &[bool], ct: &[bool]) -> Result<(NclEncoding, Vec<InverseAutomaton>), NclError> {
    machine.check_config(cs)?;
    machine.check_config(ct)?;
    let enc = NclEncoding::new(machine);
    let involution: Vec<usize> = (0..enc.moves.len()).map(|i| enc.inverse_move(i)).collect();
    let (top, bot) = (0usize, 1usize);
    let mut out = Vec::new();
    for v in 0..machine.vertices {
        for c in 0..enc.locals[v].len() {
            let trans: Vec<Vec<(usize, usize)>> = enc
                .moves
                .iter()
                .map(|m| {
                    let here = if m.tail == v {
                        Some((m.c1, m.c1_after))
                    } else if m.head == v {
                        Some((m.c2, m.c2_after))
                    } else {
                        None
                    };
                    match here {
                        None => vec![(top, top), (bot, bot)],
                        Some((before, _)) if before == c => vec![(top, bot)],
                        Some((_, after)) if after == c => vec![(bot, top)],
                        Some(_) => vec![(bot, bot)],
                    }
                })
                .collect();
            let start = if enc.local_of(cs, v) == c { top } else { bot };
            let accept = if enc.local_of(ct, v) == c { top } else { bot };
            out.push(InverseAutomaton::new(2, involution.clone(), &trans, start, &[accept]).expect("valid inverse automaton"));
        }
    }
    Ok((enc, out))
}

/// Conjugation-orbit search from idempotent `s` to idempotent `t`: BFS over
/// `ū e u` for generators `u`, keeping only steps that preserve rank. A
/// rank drop can never be undone, so the search is exact for idempotents.
/// Returns the generator word of a conjugator.
pub fn idempotent_conjugation_bfs(sys: &PbSystem, s: &PartialBijection, t: &PartialBijection) -> Option<Vec<usize>> {
    idempotent_conjugation_bfs_with(sys, s, t, |_, _, _| {})
}

/// As [`idempotent_conjugation_bfs`], calling `observe(e, u, ū e u)` on
/// every step taken.
pub fn idempotent_conjugation_bfs_with<F>(sys: &PbSystem, s: &PartialBijection, t: &PartialBijection, mut observe: F) -> Option<Vec<usize>>
where
    F: FnMut(&PartialBijection, usize, &PartialBijection),
{
    if s == t {
        return Some(Vec::new());
    }
    let rank = s.rank();
    let mut nodes: Vec<(PartialBijection, usize, usize)> = vec![(s.clone(), usize::MAX, usize::MAX)];
    let mut seen: HashMap<PartialBijection, ()> = HashMap::from([(s.clone(), ())]);
    let mut head = 0;
    while head < nodes.len() {
        let e = nodes[head].0.clone();
        for (g, u) in sys.gens().iter().enumerate() {
            let f = &(&u.inverse() * &e) * u;
            observe(&e, g, &f);
            if f.rank() != rank || seen.contains_key(&f) {
                continue;
            }
            seen.insert(f.clone(), ());
            nodes.push((f.clone(), head, g));
            if &f == t {
                let mut word = Vec::new();
                let mut cur = nodes.len() - 1;
                while nodes[cur].1 != usize::MAX {
                    word.push(nodes[cur].2);
                    cur = nodes[cur].1;
                }
                word.reverse();
                return Some(word);
            }
        }
        head += 1;
    }
    None
}
