//! Search-based deciders for minimum generating sets and for equations
//! with constrained variables.

use std::collections::HashMap;

use crate::oracle::{close, Caps, OracleError};
use crate::semigroup::{GeneratorSystem, InverseSemigroup};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MgsResult<E> {
    /// Size of a smallest generating set under the chosen count.
    pub minimum: usize,
    pub witness: Vec<E>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MgsCount {
    /// `|Ξ|` with inverses added only during generation.
    Plain,
    /// `|Ξ ∪ Ξ̄|`, so self-inverse elements count once and others twice.
    InverseClosed,
}

/// Index-based view of a closed element list.
struct Table<'a, A: InverseSemigroup> {
    amb: &'a A,
    elems: &'a [A::Element],
    index: HashMap<&'a A::Element, usize>,
}

impl<'a, A: InverseSemigroup> Table<'a, A> {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.amb.multiply(&self.elems[a], &self.elems[b])]
    }

    fn inv(&self, a: usize) -> usize {
        self.index[&self.amb.inverse(&self.elems[a])]
    }
}

/// The `J`-classes of a closed inverse semigroup, with the order between
/// them. In an inverse semigroup `J = D`, and `D` is generated by the
/// pairs `(x x̄, x̄ x)`; `A ≥_J B` iff an idempotent of `B` lies below one of `A`.
fn j_classes<A: InverseSemigroup>(t: &Table<A>) -> (Vec<usize>, Vec<Vec<bool>>) {
    let n = t.elems.len();
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        let xi = t.inv(x);
        let (l, r) = (t.mul(x, xi), t.mul(xi, x));
        uf.union(x, l);
        uf.union(l, r);
    }
    let label = uf.labels();
    let k = label.iter().max().map_or(0, |m| m + 1);
    let idems: Vec<usize> = (0..n).filter(|&x| t.mul(x, x) == x).collect();
    let mut geq = vec![vec![false; k]; k];
    for &e in &idems {
        for &f in &idems {
            if t.mul(f, e) == f {
                geq[label[e]][label[f]] = true;
            }
        }
    }
    (label, geq)
}

/// Elements of class `j` generated by `gens`, searching only inside the
/// classes `keep` (products leaving them never come back up to `j`).
fn generated_in<A: InverseSemigroup>(t: &Table<A>, label: &[usize], keep: &[bool], gens: &[usize], j: usize) -> Vec<bool> {
    let n = t.elems.len();
    let mut all: Vec<usize> = Vec::new();
    for &g in gens {
        all.push(g);
        all.push(t.inv(g));
    }
    all.sort_unstable();
    all.dedup();
    let mut seen = vec![false; n];
    let mut queue = Vec::new();
    for &g in &all {
        if keep[label[g]] && !seen[g] {
            seen[g] = true;
            queue.push(g);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in &all {
            let y = t.mul(x, g);
            if !seen[y] && keep[label[y]] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    (0..n).map(|x| seen[x] && label[x] == j).collect()
}

/// Smallest generating set of `<Σ>`, solved one `J`-class at a time from
/// the top: a class needs exactly the fewest own elements that, together
/// with everything above it, generate the class.
pub fn mgs_minimum<A: InverseSemigroup>(sys: &GeneratorSystem<A>, count: MgsCount, caps: Caps) -> Result<MgsResult<A::Element>, OracleError> {
    let closure = close(sys, caps)?;
    let elems = closure.elements();
    let index = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let t = Table { amb: sys.ambient(), elems, index };
    let (label, geq) = j_classes(&t);
    let k = geq.len();
    // Linear extension of the J-order: classes with more classes below first.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(geq[c].iter().filter(|&&b| b).count()), c));
    let mut chosen: Vec<usize> = Vec::new();
    for &j in &order {
        let keep: Vec<bool> = (0..k).map(|c| geq[c][j]).collect();
        let members: Vec<usize> = (0..elems.len()).filter(|&x| label[x] == j).collect();
        let best = best_for_class(&t, &label, &keep, &chosen, &members, j, count);
        chosen.extend(best);
    }
    let minimum = match count {
        MgsCount::Plain => chosen.len(),
        MgsCount::InverseClosed => weight(&t, &chosen),
    };
    Ok(MgsResult { minimum, witness: chosen.iter().map(|&x| elems[x].clone()).collect() })
}

fn weight<A: InverseSemigroup>(t: &Table<A>, xs: &[usize]) -> usize {
    let mut all: Vec<usize> = xs.iter().flat_map(|&x| [x, t.inv(x)]).collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn best_for_class<A: InverseSemigroup>(
    t: &Table<A>,
    label: &[usize],
    keep: &[bool],
    above: &[usize],
    members: &[usize],
    j: usize,
    count: MgsCount,
) -> Vec<usize> {
    let covered = |extra: &[usize]| {
        let mut gens = above.to_vec();
        gens.extend_from_slice(extra);
        let g = generated_in(t, label, keep, &gens, j);
        members.iter().all(|&x| g[x])
    };
    if covered(&[]) {
        return Vec::new();
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for size in 1..=members.len() {
        if let Some((w, _)) = &best {
            // Weight is at least the number of chosen elements.
            if size >= *w {
                break;
            }
        }
        let mut cur = Vec::new();
        search(t, label, keep, above, members, j, size, 0, &mut cur, &mut |xs| {
            if covered(xs) {
                let w = match count {
                    MgsCount::Plain => xs.len(),
                    MgsCount::InverseClosed => weight(t, xs),
                };
                if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                    best = Some((w, xs.to_vec()));
                }
                count == MgsCount::Plain
            } else {
                false
            }
        });
        if count == MgsCount::Plain && best.is_some() {
            break;
        }
    }
    best.expect("the whole class generates itself").1
}

/// Enumerates `size`-subsets of `members` in index order, never adding an
/// element that the current partial choice already generates. Stops when
/// `visit` returns true.
#[allow(clippy::too_many_arguments)]
fn search<A: InverseSemigroup, F: FnMut(&[usize]) -> bool>(
    t: &Table<A>,
    label: &[usize],
    keep: &[bool],
    above: &[usize],
    members: &[usize],
    j: usize,
    size: usize,
    from: usize,
    cur: &mut Vec<usize>,
    visit: &mut F,
) -> bool {
    if cur.len() == size {
        return visit(cur);
    }
    let mut gens = above.to_vec();
    gens.extend_from_slice(cur);
    let have = generated_in(t, label, keep, &gens, j);
    for i in from..members.len() {
        if members.len() - i < size - cur.len() {
            break;
        }
        let x = members[i];
        if have[x] {
            continue;
        }
        cur.push(x);
        let stop = search(t, label, keep, above, members, j, size, i + 1, cur, visit);
        cur.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Decides whether `<Σ>` has a generating set of size at most `k`.
pub fn mgs_decide<A: InverseSemigroup>(
    sys: &GeneratorSystem<A>,
    k: usize,
    count: MgsCount,
    caps: Caps,
) -> Result<(bool, MgsResult<A::Element>), OracleError> {
    let r = mgs_minimum(sys, count, caps)?;
    Ok((r.minimum <= k, r))
}

/// A symbol in an equation word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Symbol<E> {
    Const(E),
    Var(usize),
    /// `X̄`.
    VarInv(usize),
}

#[derive(Clone, Debug)]
pub struct Variable<A: InverseSemigroup> {
    pub name: String,
    /// Candidates come from `<constraint>`, or from the ambient system.
    pub constraint: Option<GeneratorSystem<A>>,
}

/// A word over constants and variables.
pub type Word<E> = Vec<Symbol<E>>;

/// An equation `lhs = rhs`.
pub type Equation<E> = (Word<E>, Word<E>);

#[derive(Clone, Debug)]
pub struct EquationSystem<A: InverseSemigroup> {
    pub variables: Vec<Variable<A>>,
    pub equations: Vec<Equation<A::Element>>,
}

impl<A: InverseSemigroup> EquationSystem<A> {
    pub fn eval(&self, amb: &A, word: &[Symbol<A::Element>], assignment: &[A::Element]) -> Option<A::Element> {
        let mut acc: Option<A::Element> = None;
        for s in word {
            let v = match s {
                Symbol::Const(c) => c.clone(),
                Symbol::Var(i) => assignment.get(*i)?.clone(),
                Symbol::VarInv(i) => amb.inverse(assignment.get(*i)?),
            };
            acc = Some(match acc {
                None => v,
                Some(a) => amb.multiply(&a, &v),
            });
        }
        acc
    }

    /// Checks every equation under a full assignment.
    pub fn satisfied(&self, amb: &A, assignment: &[A::Element]) -> bool {
        self.equations.iter().all(|(l, r)| {
            let (a, b) = (self.eval(amb, l, assignment), self.eval(amb, r, assignment));
            a.is_some() && a == b
        })
    }

    fn last_var(word: &[Symbol<A::Element>]) -> Option<usize> {
        word.iter()
            .filter_map(|s| match s {
                Symbol::Var(i) | Symbol::VarInv(i) => Some(*i),
                Symbol::Const(_) => None,
            })
            .max()
    }

    /// Candidate lists per variable, in closure enumeration order.
    pub fn candidates(&self, ambient: &GeneratorSystem<A>, caps: Caps) -> Result<Vec<Vec<A::Element>>, OracleError>
    where
        A: Clone,
    {
        let mut amb_closure: Option<Vec<A::Element>> = None;
        let mut out = Vec::with_capacity(self.variables.len());
        for v in &self.variables {
            let c = match &v.constraint {
                Some(sys) => close(sys, caps)?.elements().to_vec(),
                None => {
                    if amb_closure.is_none() {
                        amb_closure = Some(close(ambient, caps)?.elements().to_vec());
                    }
                    amb_closure.clone().expect("just set")
                }
            };
            out.push(c);
        }
        Ok(out)
    }
}

/// Backtracking in declaration order. Each equation is checked as soon as
/// its last variable is assigned. Returns the first satisfying assignment.
pub fn solve_equations<A: InverseSemigroup + Clone>(
    sys: &EquationSystem<A>,
    ambient: &GeneratorSystem<A>,
    caps: Caps,
) -> Result<Option<Vec<A::Element>>, OracleError> {
    let cands = sys.candidates(ambient, caps)?;
    let amb = ambient.ambient();
    let nv = sys.variables.len();
    // Equations grouped by the point at which they become checkable.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); nv + 1];
    for (i, (l, r)) in sys.equations.iter().enumerate() {
        let last = EquationSystem::<A>::last_var(l).max(EquationSystem::<A>::last_var(r));
        due[last.map_or(0, |v| v + 1)].push(i);
    }
    let check = |assign: &[A::Element], level: usize| {
        due[level].iter().all(|&i| {
            let (l, r) = &sys.equations[i];
            let (a, b) = (sys.eval(amb, l, assign), sys.eval(amb, r, assign));
            a.is_some() && a == b
        })
    };
    if !check(&[], 0) {
        return Ok(None);
    }
    let mut assign: Vec<A::Element> = Vec::with_capacity(nv);
    let mut pos: Vec<usize> = vec![0; nv];
    let mut level = 0;
    if nv == 0 {
        return Ok(Some(assign));
    }
    loop {
        if pos[level] >= cands[level].len() {
            if level == 0 {
                return Ok(None);
            }
            pos[level] = 0;
            level -= 1;
            assign.pop();
            pos[level] += 1;
            continue;
        }
        assign.truncate(level);
        assign.push(cands[level][pos[level]].clone());
        if check(&assign, level + 1) {
            if level + 1 == nv {
                debug_assert!(sys.satisfied(amb, &assign));
                return Ok(Some(assign));
            }
            level += 1;
            pos[level] = 0;
        } else {
            assign.pop();
            pos[level] += 1;
        }
    }
}
