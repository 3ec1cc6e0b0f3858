//! Cayley tables of finite inverse semigroups and the Preston–Wagner
//! representation.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::AlgebraError;
use crate::partial::PartialBijection;
use crate::semigroup::{GeneratorSystem, InverseSemigroup};

/// Tables up to this size are checked for associativity exhaustively.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;
/// Number of random triples checked above the exhaustive limit.
pub const SAMPLED_TRIPLES: usize = 1_000_000;

/// A validated `n×n` multiplication table on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl CayleyTable {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if n == 0 {
            return Err(AlgebraError::EmptyTable);
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::NotSquare { row: r, len: row.len(), n });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(AlgebraError::EntryOutOfRange { row: r, col: c, value: v });
                }
                table.push(v as u32);
            }
        }
        let mut t = CayleyTable { n, table, inverse: Vec::new() };
        t.check_associative()?;
        t.inverse = t.compute_inverses()?;
        Ok(t)
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.n;
        let check = |a: usize, b: usize, c: usize| {
            if self.product(self.product(a, b), c) != self.product(a, self.product(b, c)) {
                Err(AlgebraError::NotAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    fn compute_inverses(&self) -> Result<Vec<u32>, AlgebraError> {
        let n = self.n;
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let mut found = None;
            let mut count = 0;
            for y in 0..n {
                let xy = self.product(x, y);
                if self.product(xy, x) == x && self.product(self.product(y, x), y) == y {
                    count += 1;
                    found.get_or_insert(y);
                }
            }
            if count != 1 {
                return Err(AlgebraError::InverseNotUnique { element: x, count });
            }
            inv.push(found.unwrap() as u32);
        }
        Ok(inv)
    }

    /// Builds the table of a closed element list of some ambient semigroup.
    /// The ambient is assumed associative, so only closure is checked.
    pub fn from_closure<A: InverseSemigroup>(ambient: &A, elements: &[A::Element]) -> Result<Self, AlgebraError> {
        let n = elements.len();
        if n == 0 {
            return Err(AlgebraError::EmptyTable);
        }
        let index: HashMap<&A::Element, u32> = elements.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
        let mut table = Vec::with_capacity(n * n);
        for a in elements {
            for b in elements {
                let p = ambient.multiply(a, b);
                table.push(*index.get(&p).ok_or(AlgebraError::NotClosed)?);
            }
        }
        let inverse = elements
            .iter()
            .map(|a| index.get(&ambient.inverse(a)).copied().ok_or(AlgebraError::NotClosed))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CayleyTable { n, table, inverse })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.product(a, b)).collect()).collect()
    }

    /// A two-sided identity of the table, if one exists.
    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.product(e, x) == x && self.product(x, e) == x))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.product(x, x) == x).collect()
    }

    /// The two-element semilattice with `0` at index 0 and `1` at index 1.
    pub fn y2() -> Self {
        CayleyTable::new(vec![vec![0, 0], vec![0, 1]]).expect("valid")
    }

    /// Direct product; element `(a, b)` has index `a * other.size() + b`.
    pub fn product_with(&self, other: &CayleyTable) -> CayleyTable {
        let m = other.n;
        let n = self.n * m;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (a1, a2) = (a / m, a % m);
                let (b1, b2) = (b / m, b % m);
                table.push((self.product(a1, b1) * m + other.product(a2, b2)) as u32);
            }
        }
        let inverse = (0..n).map(|a| (self.inv(a / m) * m + other.inv(a % m)) as u32).collect();
        CayleyTable { n, table, inverse }
    }
}

impl InverseSemigroup for CayleyTable {
    type Element = usize;

    fn multiply(&self, a: &usize, b: &usize) -> usize {
        self.product(*a, *b)
    }

    fn inverse(&self, a: &usize) -> usize {
        self.inv(*a)
    }

    fn validate(&self, a: &usize) -> Result<(), AlgebraError> {
        if *a < self.n {
            Ok(())
        } else {
            Err(AlgebraError::NotInAmbient(format!("index {a} in a table of size {}", self.n)))
        }
    }
}

/// Generator system in the Cayley-table model.
pub type CtSystem = GeneratorSystem<CayleyTable>;

/// Preston–Wagner representation: `t ρ_s = ts` when `t s s̄ = t`,
/// undefined otherwise. The result is a faithful embedding into `I(S)`.
pub fn preston_wagner(table: &CayleyTable) -> Vec<PartialBijection> {
    let n = table.size();
    (0..n)
        .map(|s| {
            let ss = table.product(s, table.inv(s));
            let images: Vec<u32> = (0..n)
                .map(|t| if table.product(t, ss) == t { table.product(t, s) as u32 } else { u32::MAX })
                .collect();
            PartialBijection::from_raw(images)
        })
        .collect()
}
