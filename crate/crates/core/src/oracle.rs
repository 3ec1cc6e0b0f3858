//! Brute-force reference procedures: closure, membership, conjugacy and
//! Green's relations relative to a generated inverse subsemigroup.
//!
//! Everything here works by enumerating `U = <Σ>`. Results are exact but
//! exponential in the worst case, so every enumeration is capped.

use std::collections::HashMap;

use thiserror::Error;

use crate::semigroup::{GeneratorSystem, InverseSemigroup};

pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;
pub const DEFAULT_MAX_PRODUCTS: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_elements: usize,
    pub max_products: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_elements: DEFAULT_MAX_ELEMENTS, max_products: DEFAULT_MAX_PRODUCTS }
    }
}

impl Caps {
    pub fn elements(max_elements: usize) -> Self {
        Caps { max_elements, ..Caps::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("closure exceeds {limit} elements")]
    ElementCap { limit: usize },
    #[error("closure exceeds {limit} product evaluations")]
    ProductCap { limit: u64 },
}

/// How an element of the closure was first reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The element is generator `Σ[i]`.
    Generator(usize),
    /// The element is `elements[i] · elements[j]`.
    Product(usize, usize),
}

/// The enumerated closure `U = <Σ>` in breadth-first order.
#[derive(Clone, Debug)]
pub struct Closure<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    /// Element index of the predecessor and the generator appended to it.
    parent: Vec<Option<(usize, usize)>>,
    first_gen: Vec<usize>,
    gen_element: Vec<usize>,
}

/// Relations of Green relative to `U`, with `U¹` multipliers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Green {
    R,
    L,
    J,
    H,
    /// Identified with `J` in the finite case.
    D,
}

impl<E: Clone + Eq + std::hash::Hash + Ord> Closure<E> {
    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    pub fn witness(&self, k: usize) -> Witness {
        match self.parent[k] {
            None => Witness::Generator(self.first_gen[k]),
            Some((p, g)) => Witness::Product(p, self.gen_element[g]),
        }
    }

    /// A shortest word over generator indices evaluating to element `k`.
    pub fn word(&self, k: usize) -> Vec<usize> {
        let mut rev = Vec::new();
        let mut cur = k;
        loop {
            match self.parent[cur] {
                None => {
                    rev.push(self.first_gen[cur]);
                    break;
                }
                Some((p, g)) => {
                    rev.push(g);
                    cur = p;
                }
            }
        }
        rev.reverse();
        rev
    }
}

/// Enumerates `<Σ>` breadth-first by word length. Generators come first in
/// list order; each later layer is sorted by element encoding.
pub fn close<A: InverseSemigroup>(sys: &GeneratorSystem<A>, caps: Caps) -> Result<Closure<A::Element>, OracleError> {
    let amb = sys.ambient();
    let gens = sys.gens();
    let mut c = Closure {
        elements: Vec::new(),
        index: HashMap::new(),
        parent: Vec::new(),
        first_gen: Vec::new(),
        gen_element: Vec::with_capacity(gens.len()),
    };
    for (i, g) in gens.iter().enumerate() {
        let k = match c.index.get(g) {
            Some(&k) => k,
            None => {
                let k = c.elements.len();
                c.elements.push(g.clone());
                c.index.insert(g.clone(), k);
                c.parent.push(None);
                c.first_gen.push(i);
                k
            }
        };
        c.gen_element.push(k);
    }
    if c.elements.len() > caps.max_elements {
        return Err(OracleError::ElementCap { limit: caps.max_elements });
    }
    let mut products: u64 = 0;
    let mut frontier: Vec<usize> = (0..c.elements.len()).collect();
    while !frontier.is_empty() {
        let mut layer: Vec<(A::Element, usize, usize)> = Vec::new();
        let mut fresh: HashMap<A::Element, ()> = HashMap::new();
        for &x in &frontier {
            for (gi, g) in gens.iter().enumerate() {
                products += 1;
                if products > caps.max_products {
                    return Err(OracleError::ProductCap { limit: caps.max_products });
                }
                let p = amb.multiply(&c.elements[x], g);
                if c.index.contains_key(&p) || fresh.contains_key(&p) {
                    continue;
                }
                fresh.insert(p.clone(), ());
                layer.push((p, x, gi));
                if c.elements.len() + layer.len() > caps.max_elements {
                    return Err(OracleError::ElementCap { limit: caps.max_elements });
                }
            }
        }
        layer.sort_by(|a, b| a.0.cmp(&b.0));
        frontier.clear();
        for (p, x, gi) in layer {
            let k = c.elements.len();
            c.index.insert(p.clone(), k);
            c.elements.push(p);
            c.parent.push(Some((x, gi)));
            c.first_gen.push(gi);
            frontier.push(k);
        }
    }
    Ok(c)
}

/// Membership by enumeration. Returns a shortest witness word if `t ∈ U`.
pub fn naive_member<A: InverseSemigroup>(
    sys: &GeneratorSystem<A>,
    t: &A::Element,
    caps: Caps,
) -> Result<Option<Vec<usize>>, OracleError> {
    let c = close(sys, caps)?;
    Ok(c.index_of(t).map(|k| c.word(k)))
}

/// A conjugator from `U¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugator<E> {
    Identity,
    Element(E),
}

impl<E: Clone> Conjugator<E> {
    pub fn element(&self) -> Option<&E> {
        match self {
            Conjugator::Identity => None,
            Conjugator::Element(e) => Some(e),
        }
    }
}

/// Checks both conjugacy equations for a conjugator from `U¹`.
pub fn check_conjugator<A: InverseSemigroup>(amb: &A, s: &A::Element, t: &A::Element, u: &Conjugator<A::Element>) -> bool {
    match u {
        Conjugator::Identity => s == t,
        Conjugator::Element(u) => amb.conjugates_by(s, t, u),
    }
}

impl<E: Clone + Eq + std::hash::Hash + Ord + std::fmt::Debug> Closure<E> {
    /// First `u ∈ U¹` (identity first, then closure order) with
    /// `ū s u = t` and `s = u t ū`.
    pub fn conjugator<A: InverseSemigroup<Element = E>>(&self, amb: &A, s: &E, t: &E) -> Option<(Conjugator<E>, Option<usize>)> {
        if s == t {
            return Some((Conjugator::Identity, None));
        }
        self.elements
            .iter()
            .position(|u| amb.conjugates_by(s, t, u))
            .map(|k| (Conjugator::Element(self.elements[k].clone()), Some(k)))
    }

    /// `s ≤ t` in the relative preorder of `rel` (`H` is the meet of `R`
    /// and `L`).
    pub fn green_leq<A: InverseSemigroup<Element = E>>(&self, amb: &A, rel: Green, s: &E, t: &E) -> bool {
        if s == t {
            return true;
        }
        match rel {
            Green::R => self.elements.iter().any(|u| &amb.multiply(t, u) == s),
            Green::L => self.elements.iter().any(|u| &amb.multiply(u, t) == s),
            Green::H => self.green_leq(amb, Green::R, s, t) && self.green_leq(amb, Green::L, s, t),
            Green::J | Green::D => {
                let mut right: Vec<E> = vec![t.clone()];
                right.extend(self.elements.iter().map(|v| amb.multiply(t, v)));
                right.sort();
                right.dedup();
                if right.binary_search(s).is_ok() {
                    return true;
                }
                self.elements.iter().any(|u| right.iter().any(|x| &amb.multiply(u, x) == s))
            }
        }
    }

    pub fn green<A: InverseSemigroup<Element = E>>(&self, amb: &A, rel: Green, s: &E, t: &E) -> bool {
        self.green_leq(amb, rel, s, t) && self.green_leq(amb, rel, t, s)
    }
}

pub fn naive_conjugate<A: InverseSemigroup>(
    sys: &GeneratorSystem<A>,
    s: &A::Element,
    t: &A::Element,
    caps: Caps,
) -> Result<Option<Conjugator<A::Element>>, OracleError> {
    let c = close(sys, caps)?;
    Ok(c.conjugator(sys.ambient(), s, t).map(|(u, _)| u))
}

pub fn naive_green<A: InverseSemigroup>(
    sys: &GeneratorSystem<A>,
    rel: Green,
    s: &A::Element,
    t: &A::Element,
    caps: Caps,
) -> Result<bool, OracleError> {
    let c = close(sys, caps)?;
    Ok(c.green(sys.ambient(), rel, s, t))
}

/// Membership search restricted to prefixes `x` with `x x̄ t = t`.
///
/// Every prefix of a word for `t` satisfies this, so the restricted search
/// is exact while visiting far fewer elements than the full closure.
pub fn pruned_member<A: InverseSemigroup>(
    sys: &GeneratorSystem<A>,
    t: &A::Element,
    caps: Caps,
) -> Result<Option<Vec<usize>>, OracleError> {
    let amb = sys.ambient();
    let gens = sys.gens();
    let tt = amb.left_idempotent(t);
    let keep = |x: &A::Element| {
        let xx = amb.left_idempotent(x);
        amb.multiply(&xx, &tt) == tt
    };
    let mut elements: Vec<A::Element> = Vec::new();
    let mut parent: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashMap<A::Element, usize> = HashMap::new();
    let word_of = |parent: &[(usize, usize)], mut k: usize| {
        let mut w = Vec::new();
        loop {
            let (p, g) = parent[k];
            w.push(g);
            if p == usize::MAX {
                break;
            }
            k = p;
        }
        w.reverse();
        w
    };
    for (i, g) in gens.iter().enumerate() {
        if keep(g) && !seen.contains_key(g) {
            seen.insert(g.clone(), elements.len());
            elements.push(g.clone());
            parent.push((usize::MAX, i));
        }
    }
    if let Some(&k) = seen.get(t) {
        return Ok(Some(word_of(&parent, k)));
    }
    let mut products = 0u64;
    let mut head = 0;
    while head < elements.len() {
        for (gi, g) in gens.iter().enumerate() {
            products += 1;
            if products > caps.max_products {
                return Err(OracleError::ProductCap { limit: caps.max_products });
            }
            let p = amb.multiply(&elements[head], g);
            if seen.contains_key(&p) || !keep(&p) {
                continue;
            }
            let k = elements.len();
            seen.insert(p.clone(), k);
            parent.push((head, gi));
            if &p == t {
                return Ok(Some(word_of(&parent, k)));
            }
            elements.push(p);
            if elements.len() > caps.max_elements {
                return Err(OracleError::ElementCap { limit: caps.max_elements });
            }
        }
        head += 1;
    }
    Ok(None)
}
