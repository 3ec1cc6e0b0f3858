//! The inverse-semigroup abstraction shared by both representation models.
//!
//! Elements of a finite inverse semigroup are given either as partial
//! bijections of a finite set or as indices into a Cayley table. Everything
//! above this layer is written against [`InverseSemigroup`] so that the
//! oracle, the classifier and the straight-line-program engine work in both.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::AlgebraError;

/// An ambient finite inverse semigroup.
pub trait InverseSemigroup {
    type Element: Clone + Eq + Hash + Ord + Debug;

    /// Product `ab`, applying `a` first.
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    /// The unique inverse `ā`.
    fn inverse(&self, a: &Self::Element) -> Self::Element;

    /// Checks that `a` belongs to this ambient semigroup.
    fn validate(&self, a: &Self::Element) -> Result<(), AlgebraError>;

    fn is_idempotent(&self, a: &Self::Element) -> bool {
        &self.multiply(a, a) == a
    }

    /// Natural partial order: `x <= y` iff `x = x x̄ y`.
    fn natural_leq(&self, x: &Self::Element, y: &Self::Element) -> bool {
        let xx = self.multiply(x, &self.inverse(x));
        &self.multiply(&xx, y) == x
    }

    /// `x x̄`.
    fn left_idempotent(&self, x: &Self::Element) -> Self::Element {
        self.multiply(x, &self.inverse(x))
    }

    /// `x̄ x`.
    fn right_idempotent(&self, x: &Self::Element) -> Self::Element {
        self.multiply(&self.inverse(x), x)
    }

    /// The idempotent power `x^ω`.
    fn idempotent_power(&self, x: &Self::Element) -> Self::Element {
        // <x> contains exactly one idempotent, and it is a power of x.
        let mut p = x.clone();
        while !self.is_idempotent(&p) {
            p = self.multiply(&p, x);
        }
        p
    }

    /// Checks `ū s u = t` and `s = u t ū`.
    fn conjugates_by(&self, s: &Self::Element, t: &Self::Element, u: &Self::Element) -> bool {
        let ui = self.inverse(u);
        let lhs = self.multiply(&self.multiply(&ui, s), u);
        if &lhs != t {
            return false;
        }
        let back = self.multiply(&self.multiply(u, t), &ui);
        &back == s
    }
}

/// An ambient inverse semigroup together with an inverse-closed generator
/// list `Σ`. Generators are kept in the order given; missing inverses are
/// appended after the declared generators.
#[derive(Clone, Debug)]
pub struct GeneratorSystem<A: InverseSemigroup> {
    ambient: A,
    gens: Vec<A::Element>,
    inverse_of: Vec<usize>,
    declared: usize,
}

impl<A: InverseSemigroup> GeneratorSystem<A> {
    pub fn new(ambient: A, gens: Vec<A::Element>) -> Result<Self, AlgebraError> {
        if gens.is_empty() {
            return Err(AlgebraError::EmptyGenerators);
        }
        for g in &gens {
            ambient.validate(g)?;
        }
        let declared = gens.len();
        let mut gens = gens;
        let mut i = 0;
        while i < gens.len() {
            let inv = ambient.inverse(&gens[i]);
            if !gens.contains(&inv) {
                gens.push(inv);
            }
            i += 1;
        }
        let inverse_of = gens
            .iter()
            .map(|g| {
                let inv = ambient.inverse(g);
                gens.iter().position(|h| *h == inv).expect("inverse closed")
            })
            .collect();
        Ok(GeneratorSystem { ambient, gens, inverse_of, declared })
    }

    pub fn ambient(&self) -> &A {
        &self.ambient
    }

    pub fn gens(&self) -> &[A::Element] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Number of generators given explicitly, before inverse completion.
    pub fn declared(&self) -> usize {
        self.declared
    }

    /// Index of the inverse of generator `i`.
    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse_of[i]
    }

    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse_of
    }

    /// Evaluates a nonempty word over generator indices.
    pub fn eval_word(&self, word: &[usize]) -> Option<A::Element> {
        let (first, rest) = word.split_first()?;
        let mut acc = self.gens.get(*first)?.clone();
        for &i in rest {
            acc = self.ambient.multiply(&acc, self.gens.get(i)?);
        }
        Some(acc)
    }

    pub fn map_ambient<B, F>(&self, ambient: B, f: F) -> Result<GeneratorSystem<B>, AlgebraError>
    where
        B: InverseSemigroup,
        F: Fn(&A::Element) -> B::Element,
    {
        GeneratorSystem::new(ambient, self.gens[..self.declared].iter().map(f).collect())
    }
}

impl<T: InverseSemigroup + ?Sized> InverseSemigroup for &T {
    type Element = T::Element;

    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        (**self).multiply(a, b)
    }

    fn inverse(&self, a: &Self::Element) -> Self::Element {
        (**self).inverse(a)
    }

    fn validate(&self, a: &Self::Element) -> Result<(), AlgebraError> {
        (**self).validate(a)
    }

    fn is_idempotent(&self, a: &Self::Element) -> bool {
        (**self).is_idempotent(a)
    }

    fn natural_leq(&self, x: &Self::Element, y: &Self::Element) -> bool {
        (**self).natural_leq(x, y)
    }

    fn left_idempotent(&self, x: &Self::Element) -> Self::Element {
        (**self).left_idempotent(x)
    }

    fn right_idempotent(&self, x: &Self::Element) -> Self::Element {
        (**self).right_idempotent(x)
    }
}
