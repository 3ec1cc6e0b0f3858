//! Routing of membership and conjugacy instances in the partial-bijection
//! model, and the solvers for Clifford and strict inverse subsemigroups.
//!
//! Both solvers reduce the question to a permutation group: the `H`-class
//! group of a minimal idempotent above the target. For Clifford
//! subsemigroups that idempotent is a plain product of generator
//! idempotents; for strict inverse ones it comes from a basis of the graph
//! of large generators.

use thiserror::Error;

use crate::answer::{ConjAnswer, MemberAnswer};
use crate::classify::{classify_generated, Classification, VarietyTag};
use crate::error::AlgebraError;
use crate::group::{GroupError, PbGroup};
use crate::munn::{sis_min_idempotent, Basis, MunnError, MunnGraph, Orbits, Tracked};
use crate::oracle::{close, Caps, Conjugator, OracleError};
use crate::partial::{PartialBijection, PbSystem, SymmetricInverseMonoid};
use crate::semigroup::InverseSemigroup;
use crate::slp::{Slp, SlpArena};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Munn(#[from] MunnError),
    #[error("subsemigroup is {tag}; no polynomial-time solver applies")]
    Refused { tag: VarietyTag },
    #[error("solver produced an invalid witness: {0}")]
    Verification(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Auto,
    Oracle,
    Group,
    Clifford,
    Sis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Oracle,
    Semilattice,
    Group,
    Clifford,
    StrictInverse,
}

#[derive(Clone, Copy, Debug)]
pub struct DispatchOptions {
    pub solver: Solver,
    /// Skip classification and treat the subsemigroup as this variety.
    pub assume: Option<VarietyTag>,
    /// Use the oracle for subsemigroups outside the tractable varieties.
    pub allow_oracle: bool,
    pub caps: Caps,
    pub explain: bool,
}

impl Default for DispatchOptions {
    fn default() -> Self {
        DispatchOptions { solver: Solver::Auto, assume: None, allow_oracle: true, caps: Caps::default(), explain: false }
    }
}

#[derive(Clone, Debug)]
pub struct Report<T> {
    pub route: Route,
    pub classification: Option<Classification>,
    pub answer: T,
    /// Intermediate objects, filled when `explain` is set.
    pub trace: Vec<String>,
}

struct Ctx<'a> {
    sys: &'a PbSystem,
    orbits: Orbits,
    arena: SlpArena,
    trace: Option<Vec<String>>,
}

impl<'a> Ctx<'a> {
    fn new(sys: &'a PbSystem, explain: bool) -> Self {
        Ctx { sys, orbits: Orbits::new(sys), arena: SlpArena::new(), trace: explain.then(Vec::new) }
    }

    fn note(&mut self, f: impl FnOnce() -> String) {
        if let Some(t) = &mut self.trace {
            t.push(f());
        }
    }

    fn degree(&self) -> usize {
        self.sys.degree()
    }

    /// A permutation-group system for tracked generators, with program
    /// nodes for every generator including appended inverses.
    fn group_system(&mut self, gens: &[Tracked]) -> Result<(PbSystem, Vec<usize>), SolveError> {
        let sub = PbSystem::from_gens(self.degree(), gens.iter().map(|g| g.value.clone()).collect())?;
        let mut nodes: Vec<usize> = gens.iter().map(|g| g.node).collect();
        for i in gens.len()..sub.len() {
            let j = sub.inverse_index(i);
            let n = self.arena.inv(nodes[j]);
            nodes.push(n);
        }
        Ok((sub, nodes))
    }

    fn finish_member(&self, node: usize, t: &PartialBijection) -> Result<MemberAnswer, SolveError> {
        let slp = self.arena.extract(node);
        if slp.eval(self.sys).ok().as_ref() != Some(t) {
            return Err(SolveError::Verification("membership program does not evaluate to the target"));
        }
        Ok(MemberAnswer::yes(slp))
    }

    fn finish_conj(&self, s: &PartialBijection, t: &PartialBijection, u: Tracked) -> Result<ConjAnswer<PartialBijection>, SolveError> {
        let amb = SymmetricInverseMonoid::new(self.degree());
        if !amb.conjugates_by(s, t, &u.value) {
            return Err(SolveError::Verification("conjugator fails the conjugacy equations"));
        }
        let slp = self.arena.extract(u.node);
        if slp.eval(self.sys).ok().as_ref() != Some(&u.value) {
            return Err(SolveError::Verification("conjugator program does not evaluate"));
        }
        Ok(ConjAnswer { conjugate: true, conjugator: Some(Conjugator::Element(u.value)), witness: Some(slp) })
    }
}

fn check_degree(sys: &PbSystem, x: &PartialBijection) -> Result<(), SolveError> {
    if x.degree() != sys.degree() {
        return Err(AlgebraError::DegreeMismatch { left: sys.degree(), right: x.degree() }.into());
    }
    Ok(())
}

fn union_idempotent(n: usize, xs: &[&PartialBijection]) -> PartialBijection {
    let mut pts = Vec::new();
    for x in xs {
        pts.extend(x.domain());
        pts.extend(x.range());
    }
    PartialBijection::partial_identity(n, pts)
}

/// Membership for a semilattice: `t` must be idempotent and equal to the
/// product of the generators above it.
pub fn semilattice_member(sys: &PbSystem, t: &PartialBijection) -> MemberAnswer {
    if !t.is_idempotent() {
        return MemberAnswer::no();
    }
    let above: Vec<usize> = (0..sys.len()).filter(|&i| t.natural_leq(&sys.gens()[i])).collect();
    match sys.eval_word(&above) {
        Some(p) if &p == t => MemberAnswer::yes(Slp::from_word(&above)),
        _ => MemberAnswer::no(),
    }
}

fn clifford_min(ctx: &mut Ctx, e: &PartialBijection) -> Option<Tracked> {
    let mut acc: Option<Tracked> = None;
    for (i, u) in ctx.sys.gens().iter().enumerate() {
        if !u.domain_contains(e) {
            continue;
        }
        let g = ctx.arena.gen(i);
        let gi = ctx.arena.gen(ctx.sys.inverse_index(i));
        let n = ctx.arena.mul(g, gi);
        let v = u.domain_idempotent();
        acc = Some(match acc {
            None => Tracked { value: v, node: n },
            Some(a) => Tracked { value: &a.value * &v, node: ctx.arena.mul(a.node, n) },
        });
    }
    acc
}

/// Least idempotent of `U` above `e` for a Clifford subsemigroup, or `None`
/// when no idempotent of `U` lies above `e`.
pub fn clifford_min_idempotent(sys: &PbSystem, e: &PartialBijection) -> Option<PartialBijection> {
    clifford_min(&mut Ctx::new(sys, false), e).map(|t| t.value)
}

fn clifford_hclass(ctx: &mut Ctx, e: &Tracked) -> Vec<Tracked> {
    let mut out = Vec::new();
    for (i, u) in ctx.sys.gens().iter().enumerate() {
        if u.domain_contains(&e.value) {
            let g = ctx.arena.gen(i);
            out.push(Tracked { value: &e.value * u, node: ctx.arena.mul(e.node, g) });
        }
    }
    out
}

fn clifford_member_in(ctx: &mut Ctx, t: &PartialBijection) -> Result<MemberAnswer, SolveError> {
    let e = t.domain_idempotent();
    let Some(hat) = clifford_min(ctx, &e) else {
        ctx.note(|| "no generator idempotent lies above t t̄".to_string());
        return Ok(MemberAnswer::no());
    };
    ctx.note(|| format!("ê = [{}]", hat.value));
    let hgens = clifford_hclass(ctx, &hat);
    let (sub, nodes) = ctx.group_system(&hgens)?;
    ctx.note(|| format!("H-class generators: {}", fmt_list(sub.gens())));
    let ans = PbGroup::new(&sub)?.member(t);
    match ans.witness {
        Some(w) if ans.member => {
            let node = ctx.arena.inline(&w, &nodes);
            ctx.finish_member(node, t)
        }
        _ => Ok(MemberAnswer::no()),
    }
}

pub fn clifford_member(sys: &PbSystem, t: &PartialBijection) -> Result<MemberAnswer, SolveError> {
    check_degree(sys, t)?;
    clifford_member_in(&mut Ctx::new(sys, false), t)
}

fn clifford_conjugate_in(ctx: &mut Ctx, s: &PartialBijection, t: &PartialBijection) -> Result<ConjAnswer<PartialBijection>, SolveError> {
    if s == t {
        return Ok(ConjAnswer::identity());
    }
    let e = union_idempotent(ctx.degree(), &[s, t]);
    let Some(hat) = clifford_min(ctx, &e) else { return Ok(ConjAnswer::no()) };
    ctx.note(|| format!("ê = [{}]", hat.value));
    let hgens = clifford_hclass(ctx, &hat);
    let (sub, nodes) = ctx.group_system(&hgens)?;
    ctx.note(|| format!("H-class generators: {}", fmt_list(sub.gens())));
    let ans = PbGroup::new(&sub)?.conjugate(s, t)?;
    conj_from_group(ctx, s, t, ans, &nodes, None)
}

pub fn clifford_conjugate(sys: &PbSystem, s: &PartialBijection, t: &PartialBijection) -> Result<ConjAnswer<PartialBijection>, SolveError> {
    check_degree(sys, s)?;
    check_degree(sys, t)?;
    clifford_conjugate_in(&mut Ctx::new(sys, false), s, t)
}

/// Lifts a conjugacy answer from an `H`-class group, optionally followed by
/// a transport element: the conjugator becomes `w · after`.
fn conj_from_group(
    ctx: &mut Ctx,
    s: &PartialBijection,
    t: &PartialBijection,
    ans: ConjAnswer<PartialBijection>,
    nodes: &[usize],
    after: Option<&Tracked>,
) -> Result<ConjAnswer<PartialBijection>, SolveError> {
    if !ans.conjugate {
        return Ok(ConjAnswer::no());
    }
    let w = match (&ans.conjugator, &ans.witness) {
        (Some(Conjugator::Element(u)), Some(p)) => Some(Tracked { value: u.clone(), node: ctx.arena.inline(p, nodes) }),
        _ => None,
    };
    let u = match (w, after) {
        (Some(w), Some(a)) => Tracked { value: &w.value * &a.value, node: ctx.arena.mul(w.node, a.node) },
        (Some(w), None) => w,
        (None, Some(a)) => a.clone(),
        (None, None) => return Ok(ConjAnswer::identity()),
    };
    ctx.finish_conj(s, t, u)
}

fn sis_member_in(ctx: &mut Ctx, t: &PartialBijection) -> Result<MemberAnswer, SolveError> {
    let e = t.domain_idempotent();
    let f = t.range_idempotent();
    let delta = ctx.orbits.closure(&e.domain());
    if delta != ctx.orbits.closure(&f.domain()) {
        ctx.note(|| "dom(t)^U and ran(t)^U differ".to_string());
        return Ok(MemberAnswer::no());
    }
    ctx.note(|| format!("Δ = {}", fmt_set(&delta)));
    let (sys, orbits) = (ctx.sys, ctx.orbits.clone());
    let Some(e_hat) = sis_min_idempotent(sys, &orbits, &mut ctx.arena, &e)? else { return Ok(MemberAnswer::no()) };
    let Some(f_hat) = sis_min_idempotent(sys, &orbits, &mut ctx.arena, &f)? else { return Ok(MemberAnswer::no()) };
    if e_hat.value != e || f_hat.value != f {
        ctx.note(|| format!("ê = [{}], f̂ = [{}]: not both minimal", e_hat.value, f_hat.value));
        return Ok(MemberAnswer::no());
    }
    let graph = MunnGraph::new(sys, &orbits, &delta)?;
    ctx.note(|| graph.to_dot());
    let (Some(ie), Some(jf)) = (graph.vertex(&e), graph.vertex(&f)) else { return Ok(MemberAnswer::no()) };
    if !graph.connected(ie, jf) {
        return Ok(MemberAnswer::no());
    }
    let basis = Basis::new(sys, &graph, &mut ctx.arena, ie)?;
    let hgens = basis.hclass_generators(&mut ctx.arena, &e_hat);
    let (sub, nodes) = ctx.group_system(&hgens)?;
    let gf = basis.gamma[jf].clone().expect("component vertex");
    let t_prime = t * &gf.value.inverse();
    ctx.note(|| format!("basis at [{}]; γ(f) = [{}]", e, gf.value));
    ctx.note(|| format!("group instance: gens {} target [{}]", fmt_list(sub.gens()), t_prime));
    let ans = PbGroup::new(&sub)?.member(&t_prime);
    match ans.witness {
        Some(w) if ans.member => {
            let n = ctx.arena.inline(&w, &nodes);
            let node = ctx.arena.mul(n, gf.node);
            ctx.finish_member(node, t)
        }
        _ => Ok(MemberAnswer::no()),
    }
}

pub fn sis_member(sys: &PbSystem, t: &PartialBijection) -> Result<MemberAnswer, SolveError> {
    check_degree(sys, t)?;
    sis_member_in(&mut Ctx::new(sys, false), t)
}

fn sis_conjugate_in(ctx: &mut Ctx, s: &PartialBijection, t: &PartialBijection) -> Result<ConjAnswer<PartialBijection>, SolveError> {
    if s == t {
        return Ok(ConjAnswer::identity());
    }
    let n = ctx.degree();
    let e = union_idempotent(n, &[s]);
    let f = union_idempotent(n, &[t]);
    let (sys, orbits) = (ctx.sys, ctx.orbits.clone());
    let Some(e_hat) = sis_min_idempotent(sys, &orbits, &mut ctx.arena, &e)? else { return Ok(ConjAnswer::no()) };
    let Some(f_hat) = sis_min_idempotent(sys, &orbits, &mut ctx.arena, &f)? else { return Ok(ConjAnswer::no()) };
    let delta = orbits.closure(&e_hat.value.domain());
    if delta != orbits.closure(&f_hat.value.domain()) {
        return Ok(ConjAnswer::no());
    }
    ctx.note(|| format!("Δ = {}; ê = [{}]; f̂ = [{}]", fmt_set(&delta), e_hat.value, f_hat.value));
    let graph = MunnGraph::new(sys, &orbits, &delta)?;
    ctx.note(|| graph.to_dot());
    let ie = graph.vertex(&e_hat.value).ok_or(MunnError::NotAVertex)?;
    let jf = graph.vertex(&f_hat.value).ok_or(MunnError::NotAVertex)?;
    if !graph.connected(ie, jf) {
        return Ok(ConjAnswer::no());
    }
    let basis = Basis::new(sys, &graph, &mut ctx.arena, ie)?;
    let hgens = basis.hclass_generators(&mut ctx.arena, &e_hat);
    let (sub, nodes) = ctx.group_system(&hgens)?;
    let gf = basis.gamma[jf].clone().expect("component vertex");
    let t_prime = &(&gf.value * t) * &gf.value.inverse();
    ctx.note(|| format!("group instance: gens {} s [{}] t' [{}]", fmt_list(sub.gens()), s, t_prime));
    let ans = PbGroup::new(&sub)?.conjugate(s, &t_prime)?;
    conj_from_group(ctx, s, t, ans, &nodes, Some(&gf))
}

pub fn sis_conjugate(sys: &PbSystem, s: &PartialBijection, t: &PartialBijection) -> Result<ConjAnswer<PartialBijection>, SolveError> {
    check_degree(sys, s)?;
    check_degree(sys, t)?;
    sis_conjugate_in(&mut Ctx::new(sys, false), s, t)
}

fn fmt_list(xs: &[PartialBijection]) -> String {
    let v: Vec<String> = xs.iter().map(|x| format!("[{x}]")).collect();
    v.join(" ")
}

fn fmt_set(xs: &std::collections::BTreeSet<usize>) -> String {
    let v: Vec<String> = xs.iter().map(|x| (x + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn choose_route(sys: &PbSystem, opts: &DispatchOptions) -> Result<(Route, Option<Classification>), SolveError> {
    match opts.solver {
        Solver::Oracle => return Ok((Route::Oracle, None)),
        Solver::Group => return Ok((Route::Group, None)),
        Solver::Clifford => return Ok((Route::Clifford, None)),
        Solver::Sis => return Ok((Route::StrictInverse, None)),
        Solver::Auto => {}
    }
    let (tag, class) = match opts.assume {
        Some(tag) => (tag, None),
        None => {
            let c = classify_generated(sys, opts.caps)?;
            (c.tag, Some(c))
        }
    };
    let route = match tag {
        VarietyTag::Trivial | VarietyTag::Group => Route::Group,
        VarietyTag::Semilattice => Route::Semilattice,
        VarietyTag::Clifford => Route::Clifford,
        VarietyTag::StrictInverse => Route::StrictInverse,
        VarietyTag::General if opts.allow_oracle => Route::Oracle,
        VarietyTag::General => return Err(SolveError::Refused { tag }),
    };
    Ok((route, class))
}

/// Decides `t ∈ <Σ>` by the route the options select.
pub fn dispatch_member(sys: &PbSystem, t: &PartialBijection, opts: &DispatchOptions) -> Result<Report<MemberAnswer>, SolveError> {
    check_degree(sys, t)?;
    let (route, classification) = choose_route(sys, opts)?;
    let mut ctx = Ctx::new(sys, opts.explain);
    let answer = match route {
        Route::Oracle => {
            let c = close(sys, opts.caps)?;
            match c.index_of(t) {
                Some(k) => MemberAnswer::yes(Slp::from_word(&c.word(k))),
                None => MemberAnswer::no(),
            }
        }
        Route::Semilattice => semilattice_member(sys, t),
        Route::Group => {
            let mut g = PbGroup::new(sys)?;
            ctx.note(|| format!("group of order {} on {} points", g.order(), g.domain().len()));
            g.member(t)
        }
        Route::Clifford => clifford_member_in(&mut ctx, t)?,
        Route::StrictInverse => sis_member_in(&mut ctx, t)?,
    };
    if let Some(w) = &answer.witness {
        if w.eval(sys).ok().as_ref() != Some(t) {
            return Err(SolveError::Verification("membership program does not evaluate to the target"));
        }
    }
    Ok(Report { route, classification, answer, trace: ctx.trace.unwrap_or_default() })
}

/// Decides `s ∼ t` relative to `<Σ>` by the route the options select.
pub fn dispatch_conjugate(
    sys: &PbSystem,
    s: &PartialBijection,
    t: &PartialBijection,
    opts: &DispatchOptions,
) -> Result<Report<ConjAnswer<PartialBijection>>, SolveError> {
    check_degree(sys, s)?;
    check_degree(sys, t)?;
    let (route, classification) = choose_route(sys, opts)?;
    let mut ctx = Ctx::new(sys, opts.explain);
    let answer = match route {
        Route::Oracle => {
            let c = close(sys, opts.caps)?;
            match c.conjugator(sys.ambient(), s, t) {
                None => ConjAnswer::no(),
                Some((Conjugator::Identity, _)) => ConjAnswer::identity(),
                Some((u, k)) => {
                    let k = k.expect("element conjugator");
                    ConjAnswer { conjugate: true, conjugator: Some(u), witness: Some(Slp::from_word(&c.word(k))) }
                }
            }
        }
        Route::Semilattice => {
            if s == t {
                ConjAnswer::identity()
            } else {
                ConjAnswer::no()
            }
        }
        Route::Group => PbGroup::new(sys)?.conjugate(s, t)?,
        Route::Clifford => clifford_conjugate_in(&mut ctx, s, t)?,
        Route::StrictInverse => sis_conjugate_in(&mut ctx, s, t)?,
    };
    if answer.conjugate {
        let u = answer.conjugator.clone().ok_or(SolveError::Verification("missing conjugator"))?;
        if !crate::oracle::check_conjugator(sys.ambient(), s, t, &u) {
            return Err(SolveError::Verification("conjugator fails the conjugacy equations"));
        }
    }
    Ok(Report { route, classification, answer, trace: ctx.trace.unwrap_or_default() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{naive_conjugate, naive_member};
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
    fn path_member_u13() {
        let sys = path_b3();
        let u13 = pb("3 _ _");
        let r = dispatch_member(&sys, &u13, &DispatchOptions::default()).unwrap();
        assert_eq!(r.route, Route::StrictInverse);
        assert!(r.answer.member);
        assert_eq!(r.answer.witness.unwrap().eval(&sys).unwrap(), u13);
    }

    #[test]
    fn path_conjugacy() {
        let sys = path_b3();
        let (e1, e3) = (pb("1 _ _"), pb("_ _ 3"));
        let r = dispatch_conjugate(&sys, &e1, &e3, &DispatchOptions::default()).unwrap();
        assert!(r.answer.conjugate);
        // Disconnected: drop the 2-3 edges.
        let b = brandt(3, false);
        let sys2 = PbSystem::from_gens(3, ["u11", "u22", "u33", "u12", "u21"].iter().map(|n| b.element(n).unwrap().clone()).collect()).unwrap();
        assert!(!dispatch_conjugate(&sys2, &e1, &e3, &DispatchOptions::default()).unwrap().answer.conjugate);
    }

    #[test]
    fn wreath_example_is_strict() {
        let c = pb("2 3 1 _ _ _");
        let u = pb("4 5 6 _ _ _");
        let sys = PbSystem::from_gens(6, vec![c, u]).unwrap();
        let cls = classify_generated(&sys, Caps::default()).unwrap();
        assert_eq!(cls.tag, VarietyTag::StrictInverse);
        let closure = close(&sys, Caps::default()).unwrap();
        for t in closure.elements() {
            assert!(dispatch_member(&sys, t, &DispatchOptions::default()).unwrap().answer.member);
        }
        let target = pb("_ _ _ 5 6 4");
        assert!(dispatch_member(&sys, &target, &DispatchOptions::default()).unwrap().answer.member);
        let not = pb("_ _ _ 5 4 6");
        assert!(!dispatch_member(&sys, &not, &DispatchOptions::default()).unwrap().answer.member);
    }

    #[test]
    fn clifford_group_route_agrees_with_oracle() {
        let sys = PbSystem::from_gens(4, vec![pb("2 1 _ _"), pb("1 2 3 4"), pb("2 1 4 3")]).unwrap();
        assert_eq!(classify_generated(&sys, Caps::default()).unwrap().tag, VarietyTag::Clifford);
        for t in ["2 1 _ _", "1 2 _ _", "2 1 3 4", "1 2 4 3", "2 1 4 3", "_ _ 4 3"] {
            let t = pb(t);
            let fast = dispatch_member(&sys, &t, &DispatchOptions::default()).unwrap().answer.member;
            let slow = naive_member(&sys, &t, Caps::default()).unwrap().is_some();
            assert_eq!(fast, slow, "{t:?}");
        }
        let s = pb("2 1 _ _");
        for t in ["1 2 _ _", "2 1 _ _", "_ _ 4 3"] {
            let t = pb(t);
            let fast = dispatch_conjugate(&sys, &s, &t, &DispatchOptions::default()).unwrap().answer.conjugate;
            let slow = naive_conjugate(&sys, &s, &t, Caps::default()).unwrap().is_some();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn general_is_refused_without_oracle() {
        let b = brandt(2, true);
        let opts = DispatchOptions { allow_oracle: false, ..DispatchOptions::default() };
        let t = b.element("u12").unwrap();
        assert!(matches!(dispatch_member(&b.system, t, &opts), Err(SolveError::Refused { .. })));
        assert!(dispatch_member(&b.system, t, &DispatchOptions::default()).unwrap().answer.member);
    }

    #[test]
    fn semilattice_route() {
        let sys = PbSystem::from_gens(3, vec![pb("1 2 _"), pb("_ 2 3")]).unwrap();
        let r = dispatch_member(&sys, &pb("_ 2 _"), &DispatchOptions::default()).unwrap();
        assert_eq!(r.route, Route::Semilattice);
        assert!(r.answer.member);
        assert!(!dispatch_member(&sys, &pb("1 _ _"), &DispatchOptions::default()).unwrap().answer.member);
    }
}
