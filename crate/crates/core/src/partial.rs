//! Partial bijections of `{0, .., n-1}` and the symmetric inverse monoid.
//!
//! Composition is left to right: `x^(ab) = (x^a)^b`. Text form is 1-based
//! with `_` for an undefined image, e.g. `2 _ 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::AlgebraError;
use crate::semigroup::{GeneratorSystem, InverseSemigroup};

const UNDEF: u32 = u32::MAX;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    images: Vec<u32>,
}

impl PartialBijection {
    /// Builds a partial bijection from 0-based images.
    pub fn new(images: &[Option<usize>]) -> Result<Self, AlgebraError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for (x, img) in images.iter().enumerate() {
            match *img {
                None => out.push(UNDEF),
                Some(y) => {
                    if y >= n {
                        return Err(AlgebraError::ImageOutOfRange { point: x + 1, image: y + 1, degree: n });
                    }
                    if seen[y] {
                        return Err(AlgebraError::NotInjective { image: y + 1 });
                    }
                    seen[y] = true;
                    out.push(y as u32);
                }
            }
        }
        Ok(PartialBijection { images: out })
    }

    /// Builds from 0-based images without validation. Callers guarantee
    /// injectivity.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        PartialBijection { images }
    }

    #[cfg(test)]
    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    /// Builds a total permutation from 0-based images.
    pub fn from_permutation(images: &[usize]) -> Result<Self, AlgebraError> {
        let v: Vec<Option<usize>> = images.iter().map(|&y| Some(y)).collect();
        Self::new(&v)
    }

    pub fn identity(n: usize) -> Self {
        PartialBijection { images: (0..n as u32).collect() }
    }

    pub fn empty(n: usize) -> Self {
        PartialBijection { images: vec![UNDEF; n] }
    }

    /// The partial identity `e_X` on the given points.
    pub fn partial_identity<I: IntoIterator<Item = usize>>(n: usize, points: I) -> Self {
        let mut images = vec![UNDEF; n];
        for p in points {
            images[p] = p as u32;
        }
        PartialBijection { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, x: usize) -> Option<usize> {
        match self.images.get(x) {
            Some(&y) if y != UNDEF => Some(y as usize),
            _ => None,
        }
    }

    pub fn images(&self) -> impl Iterator<Item = Option<usize>> + '_ {
        self.images.iter().map(|&y| if y == UNDEF { None } else { Some(y as usize) })
    }

    pub fn is_defined(&self, x: usize) -> bool {
        self.images.get(x).is_some_and(|&y| y != UNDEF)
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&x| self.is_defined(x)).collect()
    }

    pub fn range(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.images.iter().filter(|&&y| y != UNDEF).map(|&y| y as usize).collect();
        r.sort_unstable();
        r
    }

    pub fn domain_set(&self) -> BTreeSet<usize> {
        self.domain().into_iter().collect()
    }

    pub fn range_set(&self) -> BTreeSet<usize> {
        self.range().into_iter().collect()
    }

    pub fn rank(&self) -> usize {
        self.images.iter().filter(|&&y| y != UNDEF).count()
    }

    /// Composition `self` then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.degree() != other.degree() {
            return Err(AlgebraError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Self) -> Self {
        let images = self
            .images
            .iter()
            .map(|&y| if y == UNDEF { UNDEF } else { other.images[y as usize] })
            .collect();
        PartialBijection { images }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![UNDEF; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            if y != UNDEF {
                images[y as usize] = x as u32;
            }
        }
        PartialBijection { images }
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| y == UNDEF || y as usize == x)
    }

    /// True when the domain equals the range.
    pub fn is_permutation_of_domain(&self) -> bool {
        let mut hit = vec![false; self.degree()];
        for &y in &self.images {
            if y != UNDEF {
                hit[y as usize] = true;
            }
        }
        self.images.iter().zip(hit).all(|(&y, h)| (y != UNDEF) == h)
    }

    /// Natural order: `self` is a restriction of `other`.
    pub fn natural_leq(&self, other: &Self) -> bool {
        self.degree() == other.degree()
            && self.images.iter().zip(&other.images).all(|(&a, &b)| a == UNDEF || a == b)
    }

    /// `dom(other) ⊆ dom(self)`.
    pub fn domain_contains(&self, other: &Self) -> bool {
        other.images.iter().zip(&self.images).all(|(&b, &a)| b == UNDEF || a != UNDEF)
    }

    /// `self x̄ self` style idempotent on the domain, `x x̄`.
    pub fn domain_idempotent(&self) -> Self {
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(x, &y)| if y == UNDEF { UNDEF } else { x as u32 })
            .collect();
        PartialBijection { images }
    }

    /// `x̄ x`.
    pub fn range_idempotent(&self) -> Self {
        let mut images = vec![UNDEF; self.degree()];
        for &y in &self.images {
            if y != UNDEF {
                images[y as usize] = y;
            }
        }
        PartialBijection { images }
    }

    /// Restriction of `self` to the points in `keep`.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Self {
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(x, &y)| if keep.contains(&x) { y } else { UNDEF })
            .collect();
        PartialBijection { images }
    }

    /// Extends the degree to `n`, leaving new points undefined.
    pub fn extend(&self, n: usize) -> Self {
        let mut images = self.images.clone();
        images.resize(n.max(self.degree()), UNDEF);
        PartialBijection { images }
    }

    /// Writes the 1-based text form.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Mul for &PartialBijection {
    type Output = PartialBijection;

    fn mul(self, rhs: &PartialBijection) -> PartialBijection {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        self.compose_unchecked(rhs)
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match img {
                Some(y) => write!(f, "{}", y + 1)?,
                None => f.write_str("_")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for PartialBijection {
    type Err = AlgebraError;

    /// Parses 1-based images separated by whitespace, `_` for undefined.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let n = toks.len();
        let mut images = Vec::with_capacity(n);
        for (x, tok) in toks.iter().enumerate() {
            if *tok == "_" {
                images.push(None);
                continue;
            }
            let y: usize = tok
                .parse()
                .map_err(|_| AlgebraError::NotInAmbient(format!("bad image token {tok:?}")))?;
            if y == 0 || y > n {
                return Err(AlgebraError::ImageOutOfRange { point: x + 1, image: y, degree: n });
            }
            images.push(Some(y - 1));
        }
        PartialBijection::new(&images)
    }
}

/// The symmetric inverse monoid `I(Ω)` on `degree` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricInverseMonoid {
    pub degree: usize,
}

impl SymmetricInverseMonoid {
    pub fn new(degree: usize) -> Self {
        SymmetricInverseMonoid { degree }
    }
}

impl InverseSemigroup for SymmetricInverseMonoid {
    type Element = PartialBijection;

    fn multiply(&self, a: &PartialBijection, b: &PartialBijection) -> PartialBijection {
        a * b
    }

    fn inverse(&self, a: &PartialBijection) -> PartialBijection {
        a.inverse()
    }

    fn validate(&self, a: &PartialBijection) -> Result<(), AlgebraError> {
        if a.degree() == self.degree {
            Ok(())
        } else {
            Err(AlgebraError::DegreeMismatch { left: self.degree, right: a.degree() })
        }
    }

    fn is_idempotent(&self, a: &PartialBijection) -> bool {
        a.is_idempotent()
    }

    fn natural_leq(&self, x: &PartialBijection, y: &PartialBijection) -> bool {
        x.natural_leq(y)
    }

    fn left_idempotent(&self, x: &PartialBijection) -> PartialBijection {
        x.domain_idempotent()
    }

    fn right_idempotent(&self, x: &PartialBijection) -> PartialBijection {
        x.range_idempotent()
    }
}

/// Generator system in the partial-bijection model.
pub type PbSystem = GeneratorSystem<SymmetricInverseMonoid>;

impl PbSystem {
    pub fn from_gens(degree: usize, gens: Vec<PartialBijection>) -> Result<Self, AlgebraError> {
        GeneratorSystem::new(SymmetricInverseMonoid::new(degree), gens)
    }

    pub fn degree(&self) -> usize {
        self.ambient().degree
    }
}

/// Direct product realised on the disjoint union of the point sets.
pub fn direct_product(parts: &[PartialBijection]) -> PartialBijection {
    let mut images = Vec::new();
    let mut offset = 0u32;
    for p in parts {
        images.extend(p.images.iter().map(|&y| if y == UNDEF { UNDEF } else { y + offset }));
        offset += p.degree() as u32;
    }
    PartialBijection { images }
}

/// A Brandt semigroup `B(n)` (optionally with identity) as partial
/// bijections of `n` points, together with element names.
#[derive(Clone, Debug)]
pub struct Brandt {
    pub system: PbSystem,
    pub elements: Vec<(String, PartialBijection)>,
}

impl Brandt {
    pub fn element(&self, name: &str) -> Option<&PartialBijection> {
        self.elements.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }
}

fn brandt_name(n: usize, x: usize, y: usize) -> String {
    if n < 10 {
        format!("u{}{}", x + 1, y + 1)
    } else {
        format!("u{}_{}", x + 1, y + 1)
    }
}

/// The Brandt semigroup `{u_xy} ∪ {0}`, with `1` adjoined when asked.
/// Generators are all `u_xy` in row-major order, then `0`, then `1`.
pub fn brandt(n: usize, with_identity: bool) -> Brandt {
    let mut elements = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let mut images = vec![UNDEF; n];
            images[x] = y as u32;
            elements.push((brandt_name(n, x, y), PartialBijection { images }));
        }
    }
    elements.push(("0".to_string(), PartialBijection::empty(n)));
    if with_identity {
        elements.push(("1".to_string(), PartialBijection::identity(n)));
    }
    let system = PbSystem::from_gens(n, elements.iter().map(|(_, e)| e.clone()).collect())
        .expect("Brandt generators are valid");
    Brandt { system, elements }
}

/// The two-element semilattice `Y₂ = {1, 0}` on one point.
pub fn y2() -> PbSystem {
    PbSystem::from_gens(1, vec![PartialBijection::identity(1), PartialBijection::empty(1)])
        .expect("valid")
}
