//! Answer types shared by the fast solvers.

use crate::oracle::Conjugator;
use crate::slp::Slp;

/// A membership decision. Positive answers carry a program for the target
/// over the generator list that was passed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberAnswer {
    pub member: bool,
    pub witness: Option<Slp>,
}

impl MemberAnswer {
    pub fn no() -> Self {
        MemberAnswer { member: false, witness: None }
    }

    pub fn yes(witness: Slp) -> Self {
        MemberAnswer { member: true, witness: Some(witness) }
    }
}

/// A conjugacy decision with a verified conjugator from `U¹`. When the
/// conjugator is not the identity, `witness` is a program for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjAnswer<E> {
    pub conjugate: bool,
    pub conjugator: Option<Conjugator<E>>,
    pub witness: Option<Slp>,
}

impl<E> ConjAnswer<E> {
    pub fn no() -> Self {
        ConjAnswer { conjugate: false, conjugator: None, witness: None }
    }

    pub fn identity() -> Self {
        ConjAnswer { conjugate: true, conjugator: Some(Conjugator::Identity), witness: None }
    }
}
