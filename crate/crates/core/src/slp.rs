//! Straight-line programs over a generator list.
//!
//! A program is a list of items, each a generator, a product of two earlier
//! items or the inverse of an earlier item. Text form, one item per line:
//!
//! ```text
//! g 0
//! g 1
//! m 0 1
//! inv 2
//! target 3
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::oracle::{close, Caps, OracleError};
use crate::semigroup::{GeneratorSystem, InverseSemigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlpItem {
    Gen(usize),
    Mul(usize, usize),
    Inv(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slp {
    pub items: Vec<SlpItem>,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlpError {
    #[error("program has no items")]
    Empty,
    #[error("item {item} refers to item {refers}, which is not earlier")]
    ForwardReference { item: usize, refers: usize },
    #[error("item {item} uses generator {gen}, but there are only {count}")]
    GeneratorOutOfRange { item: usize, gen: usize, count: usize },
    #[error("target {target} is out of range")]
    TargetOutOfRange { target: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("target is not in the generated subsemigroup")]
    NotInSubsemigroup,
    #[error("generators are not all idempotent")]
    NotSemilattice,
    #[error("generators do not form a group")]
    NotAGroup,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Slp {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// One generator per letter, then a left-to-right product chain.
    pub fn from_word(word: &[usize]) -> Slp {
        let mut a = SlpArena::new();
        let node = a.word(word).expect("nonempty word");
        a.extract(node)
    }

    pub fn check(&self, gens: usize) -> Result<(), SlpError> {
        if self.items.is_empty() {
            return Err(SlpError::Empty);
        }
        for (k, it) in self.items.iter().enumerate() {
            let refs: &[usize] = match it {
                SlpItem::Gen(g) => {
                    if *g >= gens {
                        return Err(SlpError::GeneratorOutOfRange { item: k, gen: *g, count: gens });
                    }
                    &[]
                }
                SlpItem::Mul(i, j) => &[*i, *j],
                SlpItem::Inv(i) => std::slice::from_ref(i),
            };
            if let Some(&r) = refs.iter().find(|&&r| r >= k) {
                return Err(SlpError::ForwardReference { item: k, refers: r });
            }
        }
        if self.target >= self.items.len() {
            return Err(SlpError::TargetOutOfRange { target: self.target });
        }
        Ok(())
    }

    /// Evaluates the program over `Σ`.
    pub fn eval<A: InverseSemigroup>(&self, sys: &GeneratorSystem<A>) -> Result<A::Element, SlpError> {
        self.check(sys.len())?;
        let amb = sys.ambient();
        let mut vals: Vec<A::Element> = Vec::with_capacity(self.items.len());
        for it in &self.items {
            let v = match *it {
                SlpItem::Gen(g) => sys.gens()[g].clone(),
                SlpItem::Mul(i, j) => amb.multiply(&vals[i], &vals[j]),
                SlpItem::Inv(i) => amb.inverse(&vals[i]),
            };
            vals.push(v);
        }
        Ok(vals.swap_remove(self.target))
    }

    /// Expands to a word over `Σ`, using the inverse map for `Inv` items.
    /// Gives up once the word would exceed `limit` letters.
    pub fn expand_word(&self, inverse_of: &[usize], limit: usize) -> Option<Vec<usize>> {
        let mut lens: Vec<usize> = Vec::with_capacity(self.items.len());
        for it in &self.items {
            let l = match *it {
                SlpItem::Gen(_) => 1,
                SlpItem::Mul(i, j) => lens[i].saturating_add(lens[j]),
                SlpItem::Inv(i) => lens[i],
            };
            lens.push(l);
        }
        if lens[self.target] > limit {
            return None;
        }
        let mut out = Vec::with_capacity(lens[self.target]);
        // Explicit stack of (item, inverted).
        let mut stack = vec![(self.target, false)];
        while let Some((k, inv)) = stack.pop() {
            match self.items[k] {
                SlpItem::Gen(g) => out.push(if inv { *inverse_of.get(g)? } else { g }),
                SlpItem::Inv(i) => stack.push((i, !inv)),
                SlpItem::Mul(i, j) => {
                    if inv {
                        // (ab)‾ = b̄ ā
                        stack.push((i, true));
                        stack.push((j, true));
                    } else {
                        stack.push((j, false));
                        stack.push((i, false));
                    }
                }
            }
        }
        Some(out)
    }

    /// Canonical form: only items reachable from the target, in post-order.
    pub fn canonical(&self) -> Slp {
        let mut a = SlpArena::new();
        let node = a.inline(self, &[]);
        a.extract(node)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for it in &self.items {
            match it {
                SlpItem::Gen(g) => writeln!(s, "g {g}"),
                SlpItem::Mul(i, j) => writeln!(s, "m {i} {j}"),
                SlpItem::Inv(i) => writeln!(s, "inv {i}"),
            }
            .expect("string write");
        }
        writeln!(s, "target {}", self.target).expect("string write");
        s
    }

    /// Parses the text form. Blank lines and `%` comments are skipped.
    pub fn parse(text: &str) -> Result<Slp, SlpError> {
        let mut items = Vec::new();
        let mut target = None;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('%').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| SlpError::Parse { line: ln + 1, msg: msg.to_string() };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |i: usize| -> Result<usize, SlpError> {
                toks.get(i).ok_or_else(|| err("missing operand"))?.parse().map_err(|_| err("bad number"))
            };
            if target.is_some() {
                return Err(err("items after target"));
            }
            match (toks[0], toks.len()) {
                ("g", 2) => items.push(SlpItem::Gen(num(1)?)),
                ("m", 3) => items.push(SlpItem::Mul(num(1)?, num(2)?)),
                ("inv", 2) => items.push(SlpItem::Inv(num(1)?)),
                ("target", 2) => target = Some(num(1)?),
                _ => return Err(err("unknown item")),
            }
        }
        let target = target.ok_or(SlpError::Parse { line: 0, msg: "missing target".to_string() })?;
        let slp = Slp { items, target };
        // Structural checks that do not need the generator count.
        slp.check(usize::MAX)?;
        Ok(slp)
    }
}

/// A hash-consed pool of program items. Node ids index into the pool.
#[derive(Clone, Debug, Default)]
pub struct SlpArena {
    items: Vec<SlpItem>,
    memo: HashMap<SlpItem, usize>,
}

impl SlpArena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn push(&mut self, it: SlpItem) -> usize {
        if let Some(&k) = self.memo.get(&it) {
            return k;
        }
        let k = self.items.len();
        self.items.push(it);
        self.memo.insert(it, k);
        k
    }

    pub fn gen(&mut self, g: usize) -> usize {
        self.push(SlpItem::Gen(g))
    }

    pub fn mul(&mut self, a: usize, b: usize) -> usize {
        self.push(SlpItem::Mul(a, b))
    }

    pub fn inv(&mut self, a: usize) -> usize {
        if let SlpItem::Inv(x) = self.items[a] {
            return x;
        }
        self.push(SlpItem::Inv(a))
    }

    /// Product where `None` stands for a neutral factor.
    pub fn mul_opt(&mut self, a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(self.mul(a, b)),
        }
    }

    pub fn product(&mut self, nodes: &[usize]) -> Option<usize> {
        let mut acc = None;
        for &n in nodes {
            acc = self.mul_opt(acc, Some(n));
        }
        acc
    }

    pub fn word(&mut self, word: &[usize]) -> Option<usize> {
        let nodes: Vec<usize> = word.iter().map(|&g| self.gen(g)).collect();
        self.product(&nodes)
    }

    /// Copies `p` into the pool, replacing `Gen(i)` by `gen_nodes[i]`.
    /// An empty `gen_nodes` keeps generators as they are.
    pub fn inline(&mut self, p: &Slp, gen_nodes: &[usize]) -> usize {
        let mut map = Vec::with_capacity(p.items.len());
        for it in &p.items {
            let n = match *it {
                SlpItem::Gen(g) if gen_nodes.is_empty() => self.gen(g),
                SlpItem::Gen(g) => gen_nodes[g],
                SlpItem::Mul(i, j) => self.mul(map[i], map[j]),
                SlpItem::Inv(i) => self.inv(map[i]),
            };
            map.push(n);
        }
        map[p.target]
    }

    /// The sub-program reachable from `target`, renumbered in post-order.
    pub fn extract(&self, target: usize) -> Slp {
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut items = Vec::new();
        let mut stack = vec![(target, false)];
        while let Some((k, expanded)) = stack.pop() {
            if index.contains_key(&k) {
                continue;
            }
            let it = self.items[k];
            if !expanded {
                stack.push((k, true));
                match it {
                    SlpItem::Gen(_) => {}
                    SlpItem::Mul(i, j) => {
                        stack.push((j, false));
                        stack.push((i, false));
                    }
                    SlpItem::Inv(i) => stack.push((i, false)),
                }
                continue;
            }
            let new = match it {
                SlpItem::Gen(g) => SlpItem::Gen(g),
                SlpItem::Mul(i, j) => SlpItem::Mul(index[&i], index[&j]),
                SlpItem::Inv(i) => SlpItem::Inv(index[&i]),
            };
            index.insert(k, items.len());
            items.push(new);
        }
        Slp { target: index[&target], items }
    }
}

/// Verifies that `p` evaluates to `target` over `Σ`.
pub fn slp_verify<A: InverseSemigroup>(sys: &GeneratorSystem<A>, p: &Slp, target: &A::Element) -> bool {
    p.eval(sys).is_ok_and(|v| &v == target)
}

/// SLP for an idempotent `e` over a list of idempotent generators.
///
/// Takes every generator above `e` and then drops factors greedily in list
/// order while the product stays `e`. The surviving factors `f_1..f_m`
/// give `2^m - 1` distinct partial products, so `m <= log2(|E|+1)`.
pub fn slp_semilattice<A: InverseSemigroup>(sys: &GeneratorSystem<A>, e: &A::Element) -> Result<Slp, SlpError> {
    let amb = sys.ambient();
    if !sys.gens().iter().all(|g| amb.is_idempotent(g)) {
        return Err(SlpError::NotSemilattice);
    }
    let vals: Vec<A::Element> = sys.gens().to_vec();
    let chosen = semilattice_factors(amb, &vals, e)?;
    let mut a = SlpArena::new();
    let node = a.word(&chosen).ok_or(SlpError::NotInSubsemigroup)?;
    Ok(a.extract(node))
}

/// Indices of an inclusion-minimal set of idempotents from `vals` whose
/// product is `e`.
fn semilattice_factors<A: InverseSemigroup>(amb: &A, vals: &[A::Element], e: &A::Element) -> Result<Vec<usize>, SlpError> {
    let mut seen = HashSet::new();
    let mut chosen: Vec<usize> = Vec::new();
    for (i, v) in vals.iter().enumerate() {
        if amb.natural_leq(e, v) && seen.insert(v.clone()) {
            chosen.push(i);
        }
    }
    let prod = |idx: &[usize]| -> Option<A::Element> {
        let mut it = idx.iter();
        let mut acc = vals[*it.next()?].clone();
        for &i in it {
            acc = amb.multiply(&acc, &vals[i]);
        }
        Some(acc)
    };
    if prod(&chosen).as_ref() != Some(e) {
        return Err(SlpError::NotInSubsemigroup);
    }
    let mut k = 0;
    while k < chosen.len() {
        let mut trial = chosen.clone();
        trial.remove(k);
        if prod(&trial).as_ref() == Some(e) {
            chosen = trial;
        } else {
            k += 1;
        }
    }
    Ok(chosen)
}

/// Bound constant for group programs: length `<= 16·⌈log2 |G|⌉²`.
pub const GROUP_BOUND_CONSTANT: usize = 16;
/// Groups up to this order also get a shortest-word candidate.
pub const BFS_FALLBACK_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupSlpMethod {
    Identity,
    CubeDoubling,
    PowerChain,
    ShortestWord,
}

#[derive(Clone, Debug)]
pub struct GroupSlp {
    pub slp: Slp,
    pub method: GroupSlpMethod,
    pub group_order: usize,
}

impl GroupSlp {
    /// `⌈log2 |G|⌉`.
    pub fn log_order(&self) -> usize {
        ceil_log2(self.group_order)
    }

    pub fn bound(&self) -> usize {
        GROUP_BOUND_CONSTANT * self.log_order() * self.log_order()
    }

    /// Measured length divided by `⌈log2 |G|⌉²`.
    pub fn constant(&self) -> f64 {
        let l = self.log_order().max(1);
        self.slp.len() as f64 / (l * l) as f64
    }
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// SLP for an element of the group generated by `Σ`.
///
/// Candidates are the cube-doubling construction, a square-and-multiply
/// chain when `g` is a power of a single generator, and a shortest word for
/// small groups. The shortest candidate wins.
pub fn slp_group<A: InverseSemigroup>(sys: &GeneratorSystem<A>, g: &A::Element) -> Result<GroupSlp, SlpError> {
    let amb = sys.ambient();
    let id = amb.left_idempotent(&sys.gens()[0]);
    for x in sys.gens() {
        if amb.left_idempotent(x) != id || amb.right_idempotent(x) != id {
            return Err(SlpError::NotAGroup);
        }
    }
    let closure = close(sys, Caps::default())?;
    let gk = closure.index_of(g).ok_or(SlpError::NotInSubsemigroup)?;
    let order = closure.len();
    if *g == id {
        let slp = Slp { items: vec![SlpItem::Gen(0), SlpItem::Inv(0), SlpItem::Mul(0, 1)], target: 2 };
        return Ok(GroupSlp { slp, method: GroupSlpMethod::Identity, group_order: order });
    }
    let mut best = (cube_doubling(sys, &id, closure.elements(), g), GroupSlpMethod::CubeDoubling);
    if let Some(p) = power_chain(sys, &id, g) {
        if p.len() < best.0.len() {
            best = (p, GroupSlpMethod::PowerChain);
        }
    }
    if order <= BFS_FALLBACK_LIMIT {
        let p = Slp::from_word(&closure.word(gk));
        if p.len() < best.0.len() {
            best = (p, GroupSlpMethod::ShortestWord);
        }
    }
    debug_assert!(slp_verify(sys, &best.0, g));
    Ok(GroupSlp { slp: best.0, method: best.1, group_order: order })
}

fn cube_doubling<A: InverseSemigroup>(sys: &GeneratorSystem<A>, id: &A::Element, group: &[A::Element], g: &A::Element) -> Slp {
    let amb = sys.ambient();
    let mut arena = SlpArena::new();
    let mut z_nodes: Vec<usize> = Vec::new();
    let mut z_vals: Vec<A::Element> = Vec::new();
    // Cube elements with their masks; mask bit j selects z_j.
    let mut cube: Vec<(A::Element, u64)> = vec![(id.clone(), 0)];
    // K̄K with one (a, b) mask pair per element, in insertion order.
    let mut kk: Vec<A::Element> = vec![id.clone()];
    let mut kk_mask: HashMap<A::Element, (u64, u64)> = HashMap::from([(id.clone(), (0, 0))]);
    let mut mask_node: HashMap<u64, usize> = HashMap::new();

    fn cube_node(arena: &mut SlpArena, z: &[usize], memo: &mut HashMap<u64, usize>, mask: u64) -> Option<usize> {
        if mask == 0 {
            return None;
        }
        if let Some(&n) = memo.get(&mask) {
            return Some(n);
        }
        let top = 63 - mask.leading_zeros() as usize;
        let rest = cube_node(arena, z, memo, mask & !(1u64 << top));
        let n = arena.mul_opt(rest, Some(z[top])).expect("nonempty");
        memo.insert(mask, n);
        Some(n)
    }
    let mut quotient_node = |arena: &mut SlpArena, z: &[usize], (ma, mb): (u64, u64)| -> Option<usize> {
        let a = cube_node(arena, z, &mut mask_node, ma);
        let b = cube_node(arena, z, &mut mask_node, mb);
        let ai = a.map(|a| arena.inv(a));
        arena.mul_opt(ai, b)
    };

    while kk.len() < group.len() {
        // First x in K̄K and σ in Σ with xσ outside K̄K.
        let mut found = None;
        'scan: for x in &kk {
            for (si, s) in sys.gens().iter().enumerate() {
                let y = amb.multiply(x, s);
                if !kk_mask.contains_key(&y) {
                    found = Some((x.clone(), si, y));
                    break 'scan;
                }
            }
        }
        let (x, si, z) = found.expect("K̄K is a proper subset of a group generated by Σ");
        let xn = quotient_node(&mut arena, &z_nodes, kk_mask[&x]);
        let sn = arena.gen(si);
        let zn = arena.mul_opt(xn, Some(sn)).expect("nonempty");
        let bit = 1u64 << z_nodes.len();
        z_nodes.push(zn);
        z_vals.push(z.clone());
        let zi = amb.inverse(&z);
        // K̄K grows by K̄K z, z̄ K̄K and z̄ K̄K z.
        let old: Vec<A::Element> = kk.clone();
        for y in &old {
            let (ma, mb) = kk_mask[y];
            let cands = [
                (amb.multiply(y, &z), (ma, mb | bit)),
                (amb.multiply(&zi, y), (ma | bit, mb)),
                (amb.multiply(&amb.multiply(&zi, y), &z), (ma | bit, mb | bit)),
            ];
            for (v, m) in cands {
                if !kk_mask.contains_key(&v) {
                    kk_mask.insert(v.clone(), m);
                    kk.push(v);
                }
            }
        }
        let grown: Vec<(A::Element, u64)> = cube.iter().map(|(c, m)| (amb.multiply(c, &z), m | bit)).collect();
        cube.extend(grown);
    }
    let node = quotient_node(&mut arena, &z_nodes, kk_mask[g]).expect("g is not the identity");
    arena.extract(node)
}

/// Square-and-multiply program for `g = σ^k` or `g = (σ^k)‾`.
fn power_chain<A: InverseSemigroup>(sys: &GeneratorSystem<A>, id: &A::Element, g: &A::Element) -> Option<Slp> {
    let amb = sys.ambient();
    let mut best: Option<Slp> = None;
    let mut tried = HashSet::new();
    for (si, s) in sys.gens().iter().enumerate() {
        if !tried.insert(s.clone()) {
            continue;
        }
        let mut p = s.clone();
        let mut k = 1usize;
        let mut hit = None;
        loop {
            if &p == g {
                hit = Some(k);
            }
            if &p == id {
                break;
            }
            p = amb.multiply(&p, s);
            k += 1;
        }
        let Some(k) = hit else { continue };
        let mut cands = vec![binary_power(si, k, false)];
        let m = {
            let mut q = s.clone();
            let mut m = 1;
            while &q != id {
                q = amb.multiply(&q, s);
                m += 1;
            }
            m
        };
        if m > k {
            cands.push(binary_power(si, m - k, true));
        }
        for c in cands {
            if best.as_ref().is_none_or(|b| c.len() < b.len()) {
                best = Some(c);
            }
        }
    }
    best
}

fn binary_power(gen: usize, k: usize, invert: bool) -> Slp {
    let mut a = SlpArena::new();
    let base = a.gen(gen);
    let mut node = base;
    let bits = usize::BITS - k.leading_zeros();
    for b in (0..bits - 1).rev() {
        node = a.mul(node, node);
        if (k >> b) & 1 == 1 {
            node = a.mul(node, base);
        }
    }
    if invert {
        node = a.inv(node);
    }
    a.extract(node)
}

/// SLP for `t` in a Clifford subsemigroup: first a semilattice program for
/// `t t̄` over `{s s̄}`, then a group program in the `H`-class of `t t̄`
/// over `{t t̄ s : s s̄ >= t t̄}`, inlined over the original `Σ`.
pub fn slp_clifford<A: InverseSemigroup>(sys: &GeneratorSystem<A>, t: &A::Element) -> Result<Slp, SlpError> {
    let amb = sys.ambient();
    let e = amb.left_idempotent(t);
    let idems: Vec<A::Element> = sys.gens().iter().map(|s| amb.left_idempotent(s)).collect();
    let factors = semilattice_factors(amb, &idems, &e)?;
    let mut arena = SlpArena::new();
    let mut e_nodes = Vec::new();
    for &i in &factors {
        let g = arena.gen(i);
        let gi = arena.gen(sys.inverse_index(i));
        e_nodes.push(arena.mul(g, gi));
    }
    let e_node = arena.product(&e_nodes).ok_or(SlpError::NotInSubsemigroup)?;
    let mut sub_gens = Vec::new();
    let mut sub_nodes = Vec::new();
    for (i, s) in sys.gens().iter().enumerate() {
        if amb.natural_leq(&e, &idems[i]) {
            sub_gens.push(amb.multiply(&e, s));
            let g = arena.gen(i);
            sub_nodes.push(arena.mul(e_node, g));
        }
    }
    let sub = GeneratorSystem::new(amb, sub_gens).map_err(|_| SlpError::NotInSubsemigroup)?;
    for i in sub_nodes.len()..sub.len() {
        let n = arena.inv(sub_nodes[sub.inverse_index(i)]);
        sub_nodes.push(n);
    }
    let gp = slp_group(&sub, t)?;
    let node = arena.inline(&gp.slp, &sub_nodes);
    Ok(arena.extract(node))
}
