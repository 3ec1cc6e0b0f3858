//! Instance generators for the hardness reductions, with the brute-force
//! deciders used to check them on small inputs.

pub mod ncl;
pub mod ugap;

use thiserror::Error;

use crate::meta::{EquationSystem, Symbol, Variable};
use crate::partial::{PartialBijection, PbSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("degree mismatch between generators and target")]
    Degree,
    #[error("both targets must be idempotents of the same rank")]
    NotConjugateInAmbient,
}

/// Minimum-generating-set instance for `t ∈ <Σ>`, using the inverse-closed
/// list `Σ`. Each pair `(u, i)`, `i ∈ {1, 2}`, acts as `u` and also fixes a
/// private point `n + 2·idx(u) + (i - 1)`. Returns `(Σ', k)` with
/// `k = 2|Σ|`: `<Σ'>` has a generating set of size `k` iff `t ∈ <Σ>`.
pub fn gen_mgs(sys: &PbSystem, t: &PartialBijection) -> Result<(PbSystem, usize), HardnessError> {
    let n = sys.degree();
    if t.degree() != n {
        return Err(HardnessError::Degree);
    }
    let m = sys.len();
    let degree = n + 2 * m;
    let mut gens = vec![t.extend(degree)];
    for (idx, u) in sys.gens().iter().enumerate() {
        for i in 0..2 {
            let mut img: Vec<Option<usize>> = u.images().collect();
            img.resize(degree, None);
            let p = n + 2 * idx + i;
            img[p] = Some(p);
            gens.push(PartialBijection::new(&img).expect("bijective"));
        }
    }
    let out = PbSystem::from_gens(degree, gens).expect("same degree");
    Ok((out, 2 * m))
}

/// Equation `X̄ e_s X = e_t` with `X ∈ <Σ ∪ {e_s, e_t}>`, solvable iff
/// `e_s ∼_U e_t`. Constants `S` and `T` stand for `e_s` and `e_t`.
pub fn gen_equation(sys: &PbSystem, es: &PartialBijection, et: &PartialBijection) -> Result<EquationSystem<crate::partial::SymmetricInverseMonoid>, HardnessError> {
    let n = sys.degree();
    if es.degree() != n || et.degree() != n {
        return Err(HardnessError::Degree);
    }
    // Two idempotents are conjugate in I(Ω) iff their ranks agree.
    if !es.is_idempotent() || !et.is_idempotent() || es.rank() != et.rank() {
        return Err(HardnessError::NotConjugateInAmbient);
    }
    let mut gens = sys.gens()[..sys.declared()].to_vec();
    gens.push(es.clone());
    gens.push(et.clone());
    let constraint = PbSystem::from_gens(n, gens).expect("same degree");
    Ok(EquationSystem {
        variables: vec![Variable { name: "X".into(), constraint: Some(constraint) }],
        equations: vec![(vec![Symbol::VarInv(0), Symbol::Const(es.clone()), Symbol::Var(0)], vec![Symbol::Const(et.clone())])],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meta::{mgs_decide, solve_equations, MgsCount};
    use crate::oracle::{naive_member, Caps};
    use crate::partial::brandt;

    fn pb(s: &str) -> PartialBijection {
        s.parse().unwrap()
    }

    #[test]
    fn mgs_instance_tracks_membership() {
        let sys = PbSystem::from_gens(3, vec![pb("2 3 1"), pb("1 2 _")]).unwrap();
        for t in [pb("3 1 2"), pb("1 _ _"), pb("2 1 3")] {
            let member = naive_member(&sys, &t, Caps::default()).unwrap().is_some();
            let (big, k) = gen_mgs(&sys, &t).unwrap();
            let (yes, _) = mgs_decide(&big, k, MgsCount::Plain, Caps::default()).unwrap();
            assert_eq!(yes, member, "{t:?}");
        }
    }

    #[test]
    fn equation_for_equal_idempotents() {
        let b = brandt(2, false);
        let e = b.element("u11").unwrap().clone();
        let eq = gen_equation(&b.system, &e, &e).unwrap();
        assert!(solve_equations(&eq, &b.system, Caps::default()).unwrap().is_some());
        assert!(gen_equation(&b.system, &e, &PartialBijection::identity(2)).is_err());
    }
}
