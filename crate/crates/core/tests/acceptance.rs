//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use common::{all_partial_bijections, bfs_connected, random_partial_identity, sample, target, Family, FAMILIES};
use invsemi::automata::intersect_nonempty;
use invsemi::ct::CtSolver;
use invsemi::hardness::ncl::{gen_ncl_automata, gen_ncl_conj, gen_ncl_member, idempotent_conjugation_bfs, NclMachine};
use invsemi::hardness::ugap::{brandt_table, gen_ugap_conj_with, gen_ugap_member_with, ugap_member_table, Graph};
use invsemi::hardness::{gen_equation, gen_mgs};
use invsemi::meta::{mgs_decide, solve_equations, MgsCount};
use invsemi::munn::{MunnGraph, Orbits};
use invsemi::oracle::{check_conjugator, close, naive_conjugate, naive_member, pruned_member};
use invsemi::reduction::{dispatch_conjugate, dispatch_member, DispatchOptions};
use invsemi::slp::{slp_group, slp_semilattice, slp_verify};
use invsemi::{preston_wagner, Caps, CayleyTable, Conjugator, CtSystem, InverseSemigroup, PartialBijection, PbSystem, Slp, SymmetricInverseMonoid};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fail<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

fn route_counts(counts: &BTreeMap<String, usize>) -> String {
    counts.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

const MEMBER_INSTANCES: usize = 10_000;

fn criterion_1() -> Outcome {
    let mut r = rng(1);
    let opts = DispatchOptions::default();
    let mut routes = BTreeMap::new();
    let mut positives = 0;
    for i in 0..MEMBER_INSTANCES {
        let s = sample(&mut r, FAMILIES[i % 5], 1..=6, 1..=4, 2000);
        let t = target(&mut r, &s);
        let rep = dispatch_member(&s.system, &t, &opts).map_err(|e| format!("instance {i}: {e}"))?;
        let oracle = naive_member(&s.system, &t, Caps::default()).map_err(|e| e.to_string())?.is_some();
        if rep.answer.member != oracle {
            return fail(format!("instance {i}: dispatch {} oracle {oracle} for {t:?}", rep.answer.member));
        }
        if let Some(w) = &rep.answer.witness {
            if !slp_verify(&s.system, w, &t) {
                return fail(format!("instance {i}: witness does not evaluate to target"));
            }
        }
        positives += oracle as usize;
        *routes.entry(format!("{:?}", rep.route)).or_insert(0) += 1;
    }
    Ok(format!("{MEMBER_INSTANCES} instances, {positives} positive, 0 disagreements; routes {}", route_counts(&routes)))
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let opts = DispatchOptions::default();
    let mut routes = BTreeMap::new();
    let mut positives = 0;
    for i in 0..MEMBER_INSTANCES {
        let smp = sample(&mut r, FAMILIES[i % 5], 1..=6, 1..=4, 2000);
        let el = smp.closure.elements();
        let s = el.choose(&mut r).unwrap().clone();
        let t = if r.gen_bool(0.5) {
            let u = el.choose(&mut r).unwrap();
            &(&u.inverse() * &s) * u
        } else {
            el.choose(&mut r).unwrap().clone()
        };
        let rep = dispatch_conjugate(&smp.system, &s, &t, &opts).map_err(|e| format!("instance {i}: {e}"))?;
        let oracle = naive_conjugate(&smp.system, &s, &t, Caps::default()).map_err(|e| e.to_string())?;
        if rep.answer.conjugate != oracle.is_some() {
            return fail(format!("instance {i}: dispatch {} oracle {} for {s:?} ~ {t:?}", rep.answer.conjugate, oracle.is_some()));
        }
        if rep.answer.conjugate {
            positives += 1;
            let amb = smp.system.ambient();
            let c = rep.answer.conjugator.as_ref().ok_or(format!("instance {i}: no conjugator"))?;
            if !check_conjugator(amb, &s, &t, c) {
                return fail(format!("instance {i}: conjugator fails the defining equations"));
            }
            if let Conjugator::Element(u) = c {
                if !smp.closure.contains(u) {
                    return fail(format!("instance {i}: conjugator outside the subsemigroup"));
                }
                if let Some(w) = &rep.answer.witness {
                    if !slp_verify(&smp.system, w, u) {
                        return fail(format!("instance {i}: conjugator program does not evaluate"));
                    }
                }
            }
        }
        *routes.entry(format!("{:?}", rep.route)).or_insert(0) += 1;
    }
    Ok(format!("{MEMBER_INSTANCES} instances, {positives} positive, 0 disagreements; routes {}", route_counts(&routes)))
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut queries = 0;
    let mut tables = 0;
    let mut max_ratio = 0.0f64;
    while queries < MEMBER_INSTANCES {
        let smp = sample(&mut r, FAMILIES[tables % 5], 1..=5, 1..=3, 200);
        tables += 1;
        let table = CayleyTable::from_closure(smp.system.ambient(), smp.closure.elements()).map_err(|e| e.to_string())?;
        let n = table.size();
        for _ in 0..50 {
            let k = r.gen_range(1..=4);
            let gens: Vec<usize> = (0..k).map(|_| r.gen_range(0..n)).collect();
            let t = r.gen_range(0..n);
            let sys = CtSystem::new(table.clone(), gens).map_err(|e| e.to_string())?;
            let mut solver = CtSolver::from_system(sys.clone());
            let trace = solver.member_traced(t).map_err(|e| e.to_string())?;
            let oracle = naive_member(&sys, &t, Caps::default()).map_err(|e| e.to_string())?.is_some();
            if trace.answer.member != oracle {
                return fail(format!("table {tables}: greedy {} oracle {oracle}", trace.answer.member));
            }
            if trace.steps.len() > n {
                return fail(format!("table {tables}: {} iterations on {n} elements", trace.steps.len()));
            }
            if let Some(w) = &trace.answer.witness {
                if !slp_verify(&sys, w, &t) {
                    return fail(format!("table {tables}: witness does not evaluate"));
                }
            }
            max_ratio = max_ratio.max(trace.steps.len() as f64 / n as f64);
            queries += 1;
        }
    }
    Ok(format!("{queries} queries over {tables} tables, 0 disagreements, max iterations/|S| = {max_ratio:.2}"))
}

fn restrict_to(delta: &BTreeSet<usize>, n: usize, pts: Vec<usize>) -> PartialBijection {
    PartialBijection::partial_identity(n, pts.into_iter().filter(|x| delta.contains(x)))
}

/// Whether the word is a walk in the graph from `from` to `to`.
fn is_path(g: &MunnGraph, sys: &PbSystem, word: &[usize], from: &PartialBijection, to: &PartialBijection) -> bool {
    let n = sys.degree();
    let mut cur = from.clone();
    for &i in word {
        if !g.large.contains(&i) {
            return false;
        }
        let u = &sys.gens()[i];
        if restrict_to(&g.delta, n, u.domain()) != cur {
            return false;
        }
        cur = restrict_to(&g.delta, n, u.range());
    }
    &cur == to
}

fn words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..letters {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut seen = HashSet::new();
    let mut systems = 0;
    let mut checks = [0usize; 4];
    let mut attempts = 0;
    while systems < 300 && attempts < 20_000 {
        attempts += 1;
        let fam = [Family::Semilattice, Family::Group, Family::Clifford, Family::Strict, Family::Strict][attempts % 5];
        let smp = sample(&mut r, fam, 1..=6, 1..=3, 200);
        let el = smp.closure.elements();
        let class = invsemi::classify(smp.system.ambient(), el);
        if !class.is_strict_inverse {
            continue;
        }
        let mut key: Vec<PartialBijection> = el.to_vec();
        key.sort();
        if !seen.insert(key) {
            continue;
        }
        systems += 1;
        let sys = &smp.system;
        let n = sys.degree();
        let amb = sys.ambient();
        let orbits = Orbits::new(sys);
        // orbit partition
        for orbit in orbits.orbits() {
            let o: BTreeSet<usize> = orbit.iter().copied().collect();
            let parts: Vec<BTreeSet<usize>> = el.iter().map(|s| s.domain_set().intersection(&o).copied().collect()).collect();
            for a in &parts {
                for b in &parts {
                    checks[0] += 1;
                    if a != b && !a.is_disjoint(b) {
                        return fail(format!("orbit partition fails in system {systems}: {a:?} vs {b:?}"));
                    }
                }
            }
        }
        let idempotents: Vec<&PartialBijection> = el.iter().filter(|e| e.is_idempotent()).collect();
        let mut deltas = BTreeSet::new();
        let ws = words(sys.len(), 3);
        for e in &idempotents {
            let delta = orbits.closure(&e.domain());
            let g = MunnGraph::new(sys, &orbits, &delta).map_err(|x| x.to_string())?;
            // vertex characterisation
            checks[2] += 1;
            let v = g.vertex(e).ok_or(format!("system {systems}: {e:?} is not a vertex at its own closure"))?;
            let class: BTreeSet<&PartialBijection> = idempotents.iter().copied().filter(|f| smp.closure.conjugator(amb, e, f).is_some()).collect();
            let comp: BTreeSet<&PartialBijection> = (0..g.vertices.len()).filter(|&w| g.connected(v, w)).map(|w| &g.vertices[w]).collect();
            if class != comp {
                return fail(format!("system {systems}: conjugacy class of {e:?} is not a component"));
            }
            if !deltas.insert(delta.clone()) {
                continue;
            }
            // path correspondence
            for w in &ws {
                let u = sys.eval_word(w).expect("nonempty");
                let ui = u.inverse();
                for es in &g.vertices {
                    for et in &g.vertices {
                        checks[1] += 1;
                        let conj = &(&ui * es) * &u == *et;
                        if conj != is_path(&g, sys, w, es, et) {
                            return fail(format!("system {systems}: path correspondence fails for word {w:?}"));
                        }
                    }
                }
            }
            // absorption of large elements
            let e_delta = PartialBijection::partial_identity(n, delta.iter().copied());
            for s in el {
                if !orbits.is_large(s, &delta) {
                    continue;
                }
                let es = &e_delta * s;
                for t in el {
                    let et = &e_delta * t;
                    if amb.natural_leq(&es, &et) {
                        checks[3] += 1;
                        if !orbits.is_large(t, &delta) || es != et {
                            return fail(format!("system {systems}: absorption fails for {s:?} <= {t:?}"));
                        }
                    }
                }
            }
        }
    }
    if systems < 300 {
        return fail(format!("only {systems} distinct strict inverse closures found"));
    }
    Ok(format!(
        "{systems} closures; partition {} pairs, paths {} checks, classes {} idempotents, absorption {} pairs; 0 violations",
        checks[0], checks[1], checks[2], checks[3]
    ))
}

fn cycle(n: usize, gens_imgs: &[Vec<usize>]) -> PbSystem {
    let gens = gens_imgs.iter().map(|g| PartialBijection::from_permutation(g).unwrap()).collect();
    PbSystem::from_gens(n, gens).unwrap()
}

fn group_bound_check(name: &str, sys: &PbSystem, targets: &[PartialBijection], worst: &mut f64) -> Result<usize, String> {
    for g in targets {
        let p = slp_group(sys, g).map_err(|e| format!("{name}: {e}"))?;
        if !slp_verify(sys, &p.slp, g) {
            return fail(format!("{name}: program does not evaluate"));
        }
        if p.slp.len() > p.bound() {
            return fail(format!("{name}: length {} exceeds {}", p.slp.len(), p.bound()));
        }
        *worst = worst.max(p.constant());
    }
    Ok(targets.len())
}

fn quaternion() -> PbSystem {
    // Q8 = {±1, ±i, ±j, ±k} as 0..8 in that order: 2m is +, 2m+1 is -.
    let mul = |a: usize, b: usize| -> usize {
        let (x, y) = (a / 2, b / 2);
        let sign = (a % 2) ^ (b % 2);
        // units 1, i, j, k with i j = k etc.
        let table = [[(0, 0), (1, 0), (2, 0), (3, 0)], [(1, 0), (0, 1), (3, 0), (2, 1)], [(2, 0), (3, 1), (0, 1), (1, 0)], [(3, 0), (2, 0), (1, 1), (0, 1)]];
        let (z, s) = table[x][y];
        2 * z + (sign ^ s)
    };
    let right = |g: usize| (0..8).map(|x| mul(x, g)).collect::<Vec<_>>();
    cycle(8, &[right(2), right(4)])
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let opts = DispatchOptions::default();
    let mut round_trips = 0;
    let mut i = 0;
    while round_trips < MEMBER_INSTANCES {
        let s = sample(&mut r, FAMILIES[i % 5], 1..=6, 1..=4, 2000);
        i += 1;
        let t = s.closure.elements().choose(&mut r).unwrap().clone();
        let rep = dispatch_member(&s.system, &t, &opts).map_err(|e| e.to_string())?;
        let w = rep.answer.witness.ok_or("member without witness")?;
        let back = Slp::parse(&w.to_text()).map_err(|e| e.to_string())?;
        if back != w || !slp_verify(&s.system, &back, &t) {
            return fail(format!("round trip fails on instance {i}"));
        }
        round_trips += 1;
    }
    let mut worst = 0.0f64;
    let mut group_targets = 0;
    // every order up to 64, then a spread up to 1024
    let orders: BTreeSet<usize> = (2..=64).chain((65..=1024).step_by(13)).chain([127, 128, 255, 256, 511, 512, 1000, 1023, 1024]).collect();
    for n in orders {
        let sys = cycle(n, &[(1..=n).map(|x| x % n).collect()]);
        let rotate = |k: usize| PartialBijection::from_permutation(&(0..n).map(|x| (x + k) % n).collect::<Vec<_>>()).unwrap();
        let ks: Vec<usize> = (0..4).map(|_| r.gen_range(1..=n)).chain([1, n / 2, n - 1]).collect();
        let targets: Vec<PartialBijection> = ks.into_iter().map(rotate).collect();
        group_targets += group_bound_check(&format!("C{n}"), &sys, &targets, &mut worst)?;
    }
    for n in 3..=256usize {
        let rot: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
        let sys = cycle(n, &[rot, refl]);
        let targets: Vec<PartialBijection> = (0..4).map(|_| sys.eval_word(&(0..r.gen_range(1..20)).map(|_| r.gen_range(0..sys.len())).collect::<Vec<_>>()).unwrap()).collect();
        group_targets += group_bound_check(&format!("D{n}"), &sys, &targets, &mut worst)?;
    }
    for (name, sys) in [("S4", cycle(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]])), ("A4", cycle(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])), ("Q8", quaternion())] {
        let all = close(&sys, Caps::default()).map_err(|e| e.to_string())?;
        group_targets += group_bound_check(name, &sys, all.elements(), &mut worst)?;
    }
    let mut lattices = 0;
    let mut worst_sl = 0.0f64;
    let mut attempts = 0;
    while lattices < 300 && attempts < 10_000 {
        attempts += 1;
        let n = r.gen_range(1..=9);
        let gens: Vec<PartialBijection> = (0..r.gen_range(1..=9)).map(|_| random_partial_identity(&mut r, n, 0.7)).collect();
        let sys = PbSystem::from_gens(n, gens).unwrap();
        let Ok(c) = close(&sys, Caps::elements(512)) else { continue };
        lattices += 1;
        let bound = 2.0 * ((c.len() + 1) as f64).log2();
        for e in c.elements() {
            let p = slp_semilattice(&sys, e).map_err(|x| x.to_string())?;
            if !slp_verify(&sys, &p, e) || p.len() as f64 > bound {
                return fail(format!("semilattice of size {}: length {} exceeds {bound:.2}", c.len(), p.len()));
            }
            worst_sl = worst_sl.max(p.len() as f64 / bound);
        }
    }
    Ok(format!(
        "{round_trips} round trips; {group_targets} group targets, max len/log2²|G| = {worst:.2} (bound 16); {lattices} semilattices, max len/(2 log2(|E|+1)) = {worst_sl:.2}"
    ))
}

fn all_graphs(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u32..1 << pairs.len()).map(move |mask| pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect())
}

fn criterion_6() -> Outcome {
    let mut graphs = 0;
    let mut checks = 0;
    for n in 1..=6 {
        let conj_table = brandt_table(n);
        let member_table = ugap_member_table(n);
        for edges in all_graphs(n) {
            graphs += 1;
            let g = Graph::new(n, edges.clone()).map_err(|e| e.to_string())?;
            let base = gen_ugap_conj_with(&conj_table, &g, 0, 0).unwrap();
            let mut solver = CtSolver::from_system(base.system);
            for s in 0..n {
                let mem = gen_ugap_member_with(&member_table, &g, s, 0).unwrap();
                let mut msolver = CtSolver::from_system(mem.system);
                for t in 0..n {
                    let truth = bfs_connected(n, &edges, s, t);
                    let c = solver.conjugate(s * n + s, t * n + t).map_err(|e| e.to_string())?.conjugate;
                    let m = msolver.member(2 * (t * n + t)).map_err(|e| e.to_string())?.member;
                    checks += 2;
                    if c != truth || m != truth {
                        return fail(format!("graph {edges:?}, s={s}, t={t}: conj {c} member {m} connected {truth}"));
                    }
                }
            }
        }
    }
    Ok(format!("{graphs} graphs on at most 6 vertices, {checks} instances, 0 disagreements"))
}

fn prism() -> Vec<(usize, usize)> {
    vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
}

fn k4() -> Vec<(usize, usize)> {
    vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let mut machines = 0;
    let mut reachable = 0;
    let mut attempts = 0;
    while machines < 120 && attempts < 100_000 {
        attempts += 1;
        let (v, shape) = if machines % 2 == 0 { (4, k4()) } else { (6, prism()) };
        let edges: Vec<(usize, usize, u8)> = shape.iter().map(|&(a, b)| (a, b, if r.gen_bool(0.7) { 2 } else { 1 })).collect();
        let Ok(m) = NclMachine::new(v, edges) else { continue };
        let confs = m.configurations();
        if confs.is_empty() {
            continue;
        }
        let cs = confs.choose(&mut r).unwrap().clone();
        let ct = if r.gen_bool(0.5) {
            // random walk from cs
            let mut c = cs.clone();
            for _ in 0..r.gen_range(0..12) {
                let e = r.gen_range(0..c.len());
                c[e] = !c[e];
                if !m.is_config(&c) {
                    c[e] = !c[e];
                }
            }
            c
        } else {
            confs.choose(&mut r).unwrap().clone()
        };
        machines += 1;
        let truth = m.reach_bruteforce(&cs, &ct).is_some();
        reachable += truth as usize;
        let conj = gen_ncl_conj(&m, &cs, &ct).map_err(|e| e.to_string())?;
        let w = idempotent_conjugation_bfs(&conj.system, &conj.s, &conj.t);
        if w.is_some() != truth {
            return fail(format!("machine {machines}: conjugation search {} brute force {truth}", w.is_some()));
        }
        if let Some(w) = w {
            if conj.encoding.replay(&cs, &w) != Some(ct.clone()) {
                return fail(format!("machine {machines}: conjugator word does not replay"));
            }
        }
        let mem = gen_ncl_member(&m, &cs, &ct).map_err(|e| e.to_string())?;
        let mw = pruned_member(&mem.system, &mem.target, Caps::default()).map_err(|e| format!("machine {machines}: {e}"))?;
        if mw.is_some() != truth {
            return fail(format!("machine {machines}: membership {} brute force {truth}", mw.is_some()));
        }
        if let Some(w) = mw {
            if mem.system.eval_word(&w).as_ref() != Some(&mem.target) {
                return fail(format!("machine {machines}: membership word does not evaluate"));
            }
        }
        let (enc, auts) = gen_ncl_automata(&m, &cs, &ct).map_err(|e| e.to_string())?;
        let aw = intersect_nonempty(&auts).map_err(|e| e.to_string())?;
        if aw.is_some() != truth {
            return fail(format!("machine {machines}: automata {} brute force {truth}", aw.is_some()));
        }
        if let Some(w) = aw {
            if enc.replay(&cs, &w) != Some(ct.clone()) {
                return fail(format!("machine {machines}: automata word does not replay"));
            }
        }
    }
    if machines < 100 {
        return fail(format!("only {machines} machines with valid configurations"));
    }
    Ok(format!("{machines} machines (K4 and prism), {reachable} reachable pairs; all three encodings agree"))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut mgs_instances = 0;
    let mut mgs_yes = 0;
    let mut i = 0;
    while mgs_instances < 1000 {
        let s = sample(&mut r, FAMILIES[i % 5], 1..=5, 1..=2, 60);
        i += 1;
        if s.system.len() > 3 {
            continue;
        }
        let t = target(&mut r, &s);
        let truth = naive_member(&s.system, &t, Caps::default()).map_err(|e| e.to_string())?.is_some();
        let (big, k) = gen_mgs(&s.system, &t).map_err(|e| e.to_string())?;
        let (yes, res) = mgs_decide(&big, k, MgsCount::Plain, Caps::default()).map_err(|e| e.to_string())?;
        if yes != truth {
            return fail(format!("mgs instance {mgs_instances}: decide {yes} member {truth}"));
        }
        if yes {
            mgs_yes += 1;
            let whole = close(&big, Caps::default()).map_err(|e| e.to_string())?;
            let sub = close(&PbSystem::from_gens(big.degree(), res.witness.clone()).unwrap(), Caps::default()).map_err(|e| e.to_string())?;
            let (mut a, mut b) = (whole.elements().to_vec(), sub.elements().to_vec());
            a.sort();
            b.sort();
            if a != b || res.witness.len() > k {
                return fail(format!("mgs instance {mgs_instances}: witness does not re-verify"));
            }
        }
        mgs_instances += 1;
    }
    let mut eq_instances = 0;
    let mut eq_yes = 0;
    let mut i = 0;
    while eq_instances < 1000 {
        let s = sample(&mut r, FAMILIES[i % 5], 1..=5, 1..=4, 500);
        i += 1;
        let idem: Vec<&PartialBijection> = s.closure.elements().iter().filter(|e| e.is_idempotent()).collect();
        let es = (*idem.choose(&mut r).unwrap()).clone();
        let same: Vec<&&PartialBijection> = idem.iter().filter(|e| e.rank() == es.rank()).collect();
        let et = (**same.choose(&mut r).unwrap()).clone();
        let truth = naive_conjugate(&s.system, &es, &et, Caps::default()).map_err(|e| e.to_string())?.is_some();
        let eq = gen_equation(&s.system, &es, &et).map_err(|e| e.to_string())?;
        let sol = solve_equations(&eq, &s.system, Caps::default()).map_err(|e| e.to_string())?;
        if sol.is_some() != truth {
            return fail(format!("equation instance {eq_instances}: solver {} conjugacy {truth}", sol.is_some()));
        }
        if let Some(a) = sol {
            eq_yes += 1;
            let amb = SymmetricInverseMonoid::new(s.system.degree());
            let cons = eq.variables[0].constraint.as_ref().unwrap();
            if !eq.satisfied(&amb, &a) || naive_member(cons, &a[0], Caps::default()).map_err(|e| e.to_string())?.is_none() {
                return fail(format!("equation instance {eq_instances}: assignment does not re-verify"));
            }
        }
        eq_instances += 1;
    }
    Ok(format!("{mgs_instances} generating-set instances ({mgs_yes} positive), {eq_instances} equation instances ({eq_yes} positive), 0 disagreements"))
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let mut tables = vec![CayleyTable::y2()];
    for n in 1..=5 {
        tables.push(brandt_table(n));
    }
    tables.push(brandt_table(2).product_with(&CayleyTable::y2()));
    let mut i = 0;
    while tables.len() < 400 {
        let s = sample(&mut r, FAMILIES[i % 5], 1..=4, 1..=3, 30);
        i += 1;
        tables.push(CayleyTable::from_closure(s.system.ambient(), s.closure.elements()).map_err(|e| e.to_string())?);
    }
    for (k, t) in tables.iter().enumerate() {
        let rho = preston_wagner(t);
        let amb = SymmetricInverseMonoid::new(t.size());
        let distinct: HashSet<&PartialBijection> = rho.iter().collect();
        if distinct.len() != t.size() {
            return fail(format!("table {k}: representation is not injective"));
        }
        for a in 0..t.size() {
            if rho[t.inv(a)] != rho[a].inverse() {
                return fail(format!("table {k}: inverse not preserved at {a}"));
            }
            for b in 0..t.size() {
                if rho[t.product(a, b)] != amb.multiply(&rho[a], &rho[b]) {
                    return fail(format!("table {k}: product not preserved at ({a}, {b})"));
                }
            }
        }
    }
    let mut pairs = 0;
    for n in 0..=4 {
        let amb = SymmetricInverseMonoid::new(n);
        let all = all_partial_bijections(n);
        let idem: Vec<&PartialBijection> = all.iter().filter(|e| amb.is_idempotent(e)).collect();
        for e in &idem {
            for f in &idem {
                if amb.multiply(e, f) != amb.multiply(f, e) {
                    return fail(format!("degree {n}: idempotents do not commute"));
                }
            }
        }
        for a in &all {
            let inverses: Vec<&PartialBijection> = all.iter().filter(|x| amb.multiply(&amb.multiply(a, x), a) == *a && amb.multiply(&amb.multiply(x, a), x) == **x).collect();
            if inverses != [&amb.inverse(a)] {
                return fail(format!("degree {n}: {a:?} has inverses {inverses:?}"));
            }
            for b in &all {
                pairs += 1;
                let left = amb.multiply(&amb.left_idempotent(a), b) == *a;
                let right = amb.multiply(b, &amb.right_idempotent(a)) == *a;
                let graph = a.domain().iter().all(|&x| b.image(x) == a.image(x));
                if left != right || left != graph || left != amb.natural_leq(a, b) {
                    return fail(format!("degree {n}: order forms disagree on {a:?} <= {b:?}"));
                }
            }
        }
    }
    Ok(format!("{} tables with at most 30 elements; {pairs} order pairs at degree <= 4; 0 violations", tables.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence, membership", criterion_1),
        ("oracle equivalence, conjugacy", criterion_2),
        ("Cayley-table greedy membership", criterion_3),
        ("Munn graph invariants", criterion_4),
        ("straight-line program bounds", criterion_5),
        ("UGAP reduction soundness", criterion_6),
        ("NCL reduction soundness", criterion_7),
        ("generating sets and equations", criterion_8),
        ("core validity", criterion_9),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != k + 1) {
            continue;
        }
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {}: PASS {name} ({msg}; {secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({msg}; {secs:.1}s)", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
