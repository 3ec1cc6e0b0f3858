//! Membership of a finite inverse semigroup in the varieties that govern
//! which solver applies.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::oracle::{close, Caps, OracleError};
use crate::semigroup::{GeneratorSystem, InverseSemigroup};
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyTag {
    Trivial,
    Semilattice,
    Group,
    Clifford,
    StrictInverse,
    General,
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VarietyTag::Trivial => "Trivial",
            VarietyTag::Semilattice => "Semilattice",
            VarietyTag::Group => "Group",
            VarietyTag::Clifford => "Clifford",
            VarietyTag::StrictInverse => "StrictInverse",
            VarietyTag::General => "General",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for VarietyTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "trivial" => Ok(VarietyTag::Trivial),
            "semilattice" | "sl" => Ok(VarietyTag::Semilattice),
            "group" | "g" => Ok(VarietyTag::Group),
            "clifford" | "cl" => Ok(VarietyTag::Clifford),
            "strictinverse" | "strict-inverse" | "sis" => Ok(VarietyTag::StrictInverse),
            "general" => Ok(VarietyTag::General),
            other => Err(format!("unknown variety {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub tag: VarietyTag,
    pub is_semilattice: bool,
    pub is_group: bool,
    pub is_clifford: bool,
    pub is_strict_inverse: bool,
    pub divides_y2: bool,
    pub divides_b2: bool,
    pub divides_b21: bool,
}

impl Classification {
    pub fn is_tractable(&self) -> bool {
        self.tag != VarietyTag::General
    }
}

/// Classifies a closed element list of an inverse semigroup.
pub fn classify<A: InverseSemigroup>(amb: &A, elements: &[A::Element]) -> Classification {
    let is_semilattice = elements.iter().all(|x| amb.is_idempotent(x));
    let lefts: Vec<A::Element> = elements.iter().map(|x| amb.left_idempotent(x)).collect();
    let rights: Vec<A::Element> = elements.iter().map(|x| amb.right_idempotent(x)).collect();
    let is_group = lefts.windows(2).all(|w| w[0] == w[1]);
    let is_clifford = lefts.iter().zip(&rights).all(|(l, r)| l == r);
    let is_strict_inverse = is_clifford || strict_condition(amb, elements, &lefts, &rights);
    let tag = if elements.len() == 1 {
        VarietyTag::Trivial
    } else if is_semilattice {
        VarietyTag::Semilattice
    } else if is_group {
        VarietyTag::Group
    } else if is_clifford {
        VarietyTag::Clifford
    } else if is_strict_inverse {
        VarietyTag::StrictInverse
    } else {
        VarietyTag::General
    };
    Classification {
        tag,
        is_semilattice,
        is_group,
        is_clifford,
        is_strict_inverse,
        divides_y2: !is_group,
        divides_b2: !is_clifford,
        divides_b21: !is_strict_inverse,
    }
}

/// No idempotent lies above two distinct `J`-equivalent idempotents.
fn strict_condition<A: InverseSemigroup>(
    amb: &A,
    elements: &[A::Element],
    lefts: &[A::Element],
    rights: &[A::Element],
) -> bool {
    let idem: Vec<&A::Element> = elements.iter().filter(|x| amb.is_idempotent(x)).collect();
    let pos: HashMap<&A::Element, usize> = idem.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    // For idempotents J coincides with D, and e D f iff e = s s̄, f = s̄ s.
    let mut uf = UnionFind::new(idem.len());
    for (l, r) in lefts.iter().zip(rights) {
        uf.union(pos[l], pos[r]);
    }
    for e in &idem {
        let mut classes = HashSet::new();
        for (j, f) in idem.iter().enumerate() {
            if amb.natural_leq(f, e) && !classes.insert(uf.find(j)) {
                return false;
            }
        }
    }
    true
}

/// Closes `Σ` under the cap and classifies the result.
pub fn classify_generated<A: InverseSemigroup>(sys: &GeneratorSystem<A>, caps: Caps) -> Result<Classification, OracleError> {
    let c = close(sys, caps)?;
    Ok(classify(sys.ambient(), c.elements()))
}
