//! Permutation groups: deterministic Schreier–Sims, sifting, backtrack
//! search over the stabilizer chain, and the wrappers that treat a group of
//! partial bijections with a common domain as a permutation group.
//!
//! Every transversal element and strong generator carries a node in an
//! [`SlpArena`] over the input generators, so positive answers come with a
//! straight-line program.

use thiserror::Error;

use crate::answer::{ConjAnswer, MemberAnswer};
use crate::oracle::Conjugator;
use crate::partial::{PartialBijection, PbSystem};
use crate::slp::{Slp, SlpArena};

/// Visited-node budget for backtrack searches.
pub const SEARCH_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generators do not share a common domain and range")]
    NotAGroup,
    #[error("backtrack search exceeded {0} nodes")]
    SearchBudget(u64),
}

type Perm = Vec<u32>;

fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn invert(a: &[u32]) -> Perm {
    let mut out = vec![0; a.len()];
    for (x, &y) in a.iter().enumerate() {
        out[y as usize] = x as u32;
    }
    out
}

fn is_identity(a: &[u32]) -> bool {
    a.iter().enumerate().all(|(x, &y)| x as u32 == y)
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    strong: Vec<usize>,
    orbit: Vec<usize>,
    /// Coset representative `u_γ` with `point^u_γ = γ`, and its node.
    /// `None` node means the identity.
    trans: Vec<Option<(Perm, Option<usize>)>>,
}

/// A base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    levels: Vec<Level>,
    strong: Vec<(Perm, usize)>,
    arena: SlpArena,
    ngens: usize,
}

impl PermGroup {
    /// Runs Schreier–Sims on the given permutations (images of `0..degree`).
    /// Base points are chosen as the smallest moved point.
    pub fn new(degree: usize, gens: &[Vec<u32>]) -> PermGroup {
        let mut g = PermGroup { degree, levels: Vec::new(), strong: Vec::new(), arena: SlpArena::new(), ngens: gens.len() };
        for (i, p) in gens.iter().enumerate() {
            assert_eq!(p.len(), degree, "permutation degree");
            let node = g.arena.gen(i);
            if !is_identity(p) {
                g.strong.push((p.clone(), node));
            }
        }
        for s in 0..g.strong.len() {
            let perm = g.strong[s].0.clone();
            if g.levels.iter().all(|l| perm[l.point] as usize == l.point) {
                let pt = first_moved(&perm).expect("nonidentity");
                g.push_level(pt);
            }
        }
        for l in 0..g.levels.len() {
            g.levels[l].strong = (0..g.strong.len()).filter(|&s| g.fixes_prefix(s, l)).collect();
            g.recompute_orbit(l);
        }
        g.complete();
        g
    }

    fn push_level(&mut self, point: usize) {
        self.levels.push(Level { point, strong: Vec::new(), orbit: Vec::new(), trans: Vec::new() });
    }

    fn fixes_prefix(&self, s: usize, l: usize) -> bool {
        let p = &self.strong[s].0;
        self.levels[..l].iter().all(|lv| p[lv.point] as usize == lv.point)
    }

    fn recompute_orbit(&mut self, l: usize) {
        let n = self.degree;
        let point = self.levels[l].point;
        let mut trans: Vec<Option<(Perm, Option<usize>)>> = vec![None; n];
        trans[point] = Some(((0..n as u32).collect(), None));
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let b = orbit[head];
            head += 1;
            for &s in &self.levels[l].strong {
                let (sp, sn) = &self.strong[s];
                let c = sp[b] as usize;
                if trans[c].is_none() {
                    let (up, un) = trans[b].clone().expect("in orbit");
                    let rep = compose(&up, sp);
                    let node = self.arena.mul_opt(un, Some(*sn));
                    trans[c] = Some((rep, node));
                    orbit.push(c);
                }
            }
        }
        self.levels[l].orbit = orbit;
        self.levels[l].trans = trans;
    }

    /// Sifts from level `from`; returns the residue, its node and the level
    /// where sifting stopped.
    fn strip(&mut self, mut g: Perm, mut node: Option<usize>, from: usize) -> (Perm, Option<usize>, usize) {
        for l in from..self.levels.len() {
            let b = g[self.levels[l].point] as usize;
            let Some((u, un)) = self.levels[l].trans[b].clone() else {
                return (g, node, l);
            };
            g = compose(&g, &invert(&u));
            let ui = un.map(|n| self.arena.inv(n));
            node = self.arena.mul_opt(node, ui);
        }
        let k = self.levels.len();
        (g, node, k)
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let l = i as usize;
            let orbit = self.levels[l].orbit.clone();
            let strong = self.levels[l].strong.clone();
            for &b in &orbit {
                for &s in &strong {
                    let (up, un) = self.levels[l].trans[b].clone().expect("orbit point");
                    let (sp, sn) = self.strong[s].clone();
                    let c = sp[b] as usize;
                    let (vp, vn) = self.levels[l].trans[c].clone().expect("orbit closed");
                    let g = compose(&compose(&up, &sp), &invert(&vp));
                    if is_identity(&g) {
                        continue;
                    }
                    let t = self.arena.mul_opt(un, Some(sn));
                    let vi = vn.map(|n| self.arena.inv(n));
                    let node = self.arena.mul_opt(t, vi);
                    let (h, hn, j) = self.strip(g, node, l + 1);
                    if j == self.levels.len() && is_identity(&h) {
                        continue;
                    }
                    if j == self.levels.len() {
                        let pt = first_moved(&h).expect("nonidentity residue");
                        self.push_level(pt);
                    }
                    let idx = self.strong.len();
                    // A residue always has a node: it is a nonidentity product.
                    self.strong.push((h, hn.expect("residue node")));
                    for lv in (l + 1)..=j {
                        self.levels[lv].strong.push(idx);
                        self.recompute_orbit(lv);
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.saturating_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        let mut g = p.to_vec();
        for l in &self.levels {
            let b = g[l.point] as usize;
            let Some((u, _)) = &l.trans[b] else { return false };
            g = compose(&g, &invert(u));
        }
        is_identity(&g)
    }

    fn identity_slp(&self) -> Slp {
        let mut a = SlpArena::new();
        let g = a.gen(0);
        let gi = a.inv(g);
        let n = a.mul(g, gi);
        a.extract(n)
    }

    fn node_slp(&self, node: Option<usize>) -> Slp {
        match node {
            Some(n) => self.arena.extract(n),
            None => self.identity_slp(),
        }
    }

    /// Sifts `p`; on success returns a program for it over the generators.
    pub fn sift_witness(&mut self, p: &[u32]) -> Option<Slp> {
        let mut g = p.to_vec();
        let mut factors: Vec<Option<usize>> = Vec::new();
        for l in 0..self.levels.len() {
            let b = g[self.levels[l].point] as usize;
            let (u, un) = self.levels[l].trans[b].clone()?;
            g = compose(&g, &invert(&u));
            factors.push(un);
        }
        if !is_identity(&g) {
            return None;
        }
        if self.ngens == 0 {
            return None;
        }
        // p = u_{k-1} ... u_0
        let mut node = None;
        for f in factors.into_iter().rev() {
            node = self.arena.mul_opt(node, f);
        }
        Some(self.node_slp(node))
    }

    /// Depth-first search over all group elements `r_{k-1} ⋯ r_0`, choosing
    /// `r_0` first so that base images get fixed one level at a time.
    /// `partial(point, image)` prunes; `full` accepts.
    pub fn search<P, F>(&mut self, mut partial: P, mut full: F) -> Result<Option<(Perm, Slp)>, GroupError>
    where
        P: FnMut(usize, usize) -> bool,
        F: FnMut(&[u32]) -> bool,
    {
        let k = self.levels.len();
        let id: Perm = (0..self.degree as u32).collect();
        let mut visited = 0u64;
        let mut choice: Vec<usize> = Vec::new();
        let found = self.dfs(0, k, &id, &mut choice, &mut visited, &mut partial, &mut full)?;
        let Some(p) = found else { return Ok(None) };
        let mut node = None;
        // g = r_{k-1} ⋯ r_0
        for l in (0..choice.len()).rev() {
            let (_, un) = self.levels[l].trans[choice[l]].clone().expect("orbit point");
            node = self.arena.mul_opt(node, un);
        }
        let slp = self.node_slp(node);
        Ok(Some((p, slp)))
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs<P, F>(
        &self,
        l: usize,
        k: usize,
        q: &Perm,
        choice: &mut Vec<usize>,
        visited: &mut u64,
        partial: &mut P,
        full: &mut F,
    ) -> Result<Option<Perm>, GroupError>
    where
        P: FnMut(usize, usize) -> bool,
        F: FnMut(&[u32]) -> bool,
    {
        *visited += 1;
        if *visited > SEARCH_BUDGET {
            return Err(GroupError::SearchBudget(SEARCH_BUDGET));
        }
        if l == k {
            return Ok(if full(q) { Some(q.clone()) } else { None });
        }
        let point = self.levels[l].point;
        let mut orbit = self.levels[l].orbit.clone();
        orbit.sort_unstable();
        for g in orbit {
            // The image of this base point under the final element.
            let img = q[g] as usize;
            if !partial(point, img) {
                continue;
            }
            let (u, _) = self.levels[l].trans[g].as_ref().expect("orbit point");
            let next = compose(u, q);
            choice.push(g);
            if let Some(p) = self.dfs(l + 1, k, &next, choice, visited, partial, full)? {
                return Ok(Some(p));
            }
            choice.pop();
        }
        Ok(None)
    }

    /// All elements, in search order.
    pub fn elements(&mut self) -> Vec<Perm> {
        let mut out = Vec::new();
        let _ = self.search(
            |_, _| true,
            |p| {
                out.push(p.to_vec());
                false
            },
        );
        out
    }

    /// An element mapping the set `from` onto the set `to`.
    pub fn set_transporter(&mut self, from: &[bool], to: &[bool]) -> Result<Option<(Perm, Slp)>, GroupError> {
        if from.iter().filter(|&&b| b).count() != to.iter().filter(|&&b| b).count() {
            return Ok(None);
        }
        let n = self.degree;
        self.search(
            |b, c| from[b] == to[c],
            |p| (0..n).all(|x| from[x] == to[p[x] as usize]),
        )
    }
}

fn first_moved(p: &[u32]) -> Option<usize> {
    p.iter().enumerate().find(|&(x, &y)| x as u32 != y).map(|(x, _)| x)
}

/// A group of partial bijections with common domain `D`, viewed as a
/// permutation group on `D`.
#[derive(Clone, Debug)]
pub struct PbGroup {
    degree: usize,
    domain: Vec<usize>,
    pos: Vec<Option<usize>>,
    perms: Vec<Perm>,
    group: PermGroup,
}

impl PbGroup {
    pub fn new(sys: &PbSystem) -> Result<PbGroup, GroupError> {
        let gens = sys.gens();
        let dom = gens[0].domain();
        for g in gens {
            if g.domain() != dom || g.range() != dom {
                return Err(GroupError::NotAGroup);
            }
        }
        let degree = sys.degree();
        let mut pos = vec![None; degree];
        for (i, &x) in dom.iter().enumerate() {
            pos[x] = Some(i);
        }
        let perms: Vec<Perm> = gens
            .iter()
            .map(|g| dom.iter().map(|&x| pos[g.image(x).expect("domain")].expect("range") as u32).collect())
            .collect();
        let group = PermGroup::new(dom.len(), &perms);
        Ok(PbGroup { degree, domain: dom, pos, perms, group })
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn perm_group(&self) -> &PermGroup {
        &self.group
    }

    /// `x` as a permutation of `D`, if `dom(x) = ran(x) = D`.
    pub fn to_perm(&self, x: &PartialBijection) -> Option<Perm> {
        if x.domain() != self.domain || x.range() != self.domain {
            return None;
        }
        Some(self.domain.iter().map(|&p| self.pos[x.image(p).expect("domain")].expect("range") as u32).collect())
    }

    pub fn from_perm(&self, p: &[u32]) -> PartialBijection {
        let mut images = vec![None; self.degree];
        for (i, &x) in self.domain.iter().enumerate() {
            images[x] = Some(self.domain[p[i] as usize]);
        }
        PartialBijection::new(&images).expect("permutation of the domain")
    }

    /// True when `x` is defined only inside `D` and maps into `D`.
    pub fn supported(&self, x: &PartialBijection) -> bool {
        x.domain().iter().all(|&p| self.pos[p].is_some()) && x.range().iter().all(|&p| self.pos[p].is_some())
    }

    pub fn member(&mut self, t: &PartialBijection) -> MemberAnswer {
        match self.to_perm(t) {
            Some(p) => match self.group.sift_witness(&p) {
                Some(w) => MemberAnswer::yes(w),
                None => MemberAnswer::no(),
            },
            None => MemberAnswer::no(),
        }
    }

    /// Conjugacy of `s` and `t` by an element of the group, reduced to a
    /// set transporter for their graphs under the diagonal action on `D×D`.
    pub fn conjugate(&self, s: &PartialBijection, t: &PartialBijection) -> Result<ConjAnswer<PartialBijection>, GroupError> {
        if s == t {
            return Ok(ConjAnswer::identity());
        }
        if !self.supported(s) || !self.supported(t) {
            return Ok(ConjAnswer::no());
        }
        let m = self.domain.len();
        let pair = |a: usize, b: usize| a * m + b;
        let pair_gens: Vec<Perm> = self
            .perms
            .iter()
            .map(|p| {
                let mut q = vec![0u32; m * m];
                for a in 0..m {
                    for b in 0..m {
                        q[pair(a, b)] = pair(p[a] as usize, p[b] as usize) as u32;
                    }
                }
                q
            })
            .collect();
        let graph = |x: &PartialBijection| {
            let mut g = vec![false; m * m];
            for p in x.domain() {
                let a = self.pos[p].expect("supported");
                let b = self.pos[x.image(p).expect("domain")].expect("supported");
                g[pair(a, b)] = true;
            }
            g
        };
        let (gs, gt) = (graph(s), graph(t));
        let mut pg = PermGroup::new(m * m, &pair_gens);
        let Some((q, slp)) = pg.set_transporter(&gs, &gt)? else {
            return Ok(ConjAnswer::no());
        };
        let perm: Perm = (0..m).map(|a| (q[pair(a, a)] as usize / m) as u32).collect();
        let u = self.from_perm(&perm);
        debug_assert!(crate::semigroup::InverseSemigroup::conjugates_by(
            &crate::partial::SymmetricInverseMonoid::new(self.degree),
            s,
            t,
            &u
        ));
        Ok(ConjAnswer { conjugate: true, conjugator: Some(Conjugator::Element(u)), witness: Some(slp) })
    }
}

/// Membership in the group generated by `Σ`.
pub fn pb_group_member(sys: &PbSystem, t: &PartialBijection) -> Result<MemberAnswer, GroupError> {
    Ok(PbGroup::new(sys)?.member(t))
}

/// Conjugacy relative to the group generated by `Σ`.
pub fn group_conjugate(
    sys: &PbSystem,
    s: &PartialBijection,
    t: &PartialBijection,
) -> Result<ConjAnswer<PartialBijection>, GroupError> {
    if s == t {
        return Ok(ConjAnswer::identity());
    }
    PbGroup::new(sys)?.conjugate(s, t)
}

/// Set transporter in the group generated by `Σ`: an element `g` with
/// `from^g = to`, as a partial bijection on the common domain.
pub fn set_transporter(
    sys: &PbSystem,
    from: &[usize],
    to: &[usize],
) -> Result<Option<(PartialBijection, Slp)>, GroupError> {
    let mut g = PbGroup::new(sys)?;
    let m = g.domain.len();
    let mark = |xs: &[usize]| -> Option<Vec<bool>> {
        let mut v = vec![false; m];
        for &x in xs {
            v[g.pos.get(x).copied().flatten()?] = true;
        }
        Some(v)
    };
    let (Some(a), Some(b)) = (mark(from), mark(to)) else { return Ok(None) };
    Ok(g.group.set_transporter(&a, &b)?.map(|(p, w)| (g.from_perm(&p), w)))
}
