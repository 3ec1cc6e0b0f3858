//! Inverse automata and intersection non-emptiness.
//!
//! Each letter acts on the states as a partial bijection, and the alphabet
//! carries an involution `a ↦ ā` under which `δ_ā` is the converse of `δ_a`.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::error::AlgebraError;
use crate::partial::{PartialBijection, PbSystem};

pub const PRODUCT_STATE_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    StateOutOfRange { letter: usize, state: usize },
    NotDeterministic { letter: usize, state: usize },
    NotInjective { letter: usize, state: usize },
    NotConverse { letter: usize },
    BadInvolution { letter: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::StateOutOfRange { letter, state } => write!(f, "letter {letter}: state {state} out of range"),
            Violation::NotDeterministic { letter, state } => write!(f, "letter {letter}: two transitions leave state {state}"),
            Violation::NotInjective { letter, state } => write!(f, "letter {letter}: not injective, two transitions enter state {state}"),
            Violation::NotConverse { letter } => write!(f, "letter {letter}: its partner does not act as the converse"),
            Violation::BadInvolution { letter } => write!(f, "letter {letter}: involution is not an involution"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("invalid inverse automaton: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("start or accepting state {0} out of range")]
    BadState(usize),
    #[error("automata do not share an alphabet with the same involution")]
    AlphabetMismatch,
    #[error("no automata given")]
    Empty,
    #[error("product search exceeded {limit} states")]
    StateCap { limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseAutomaton {
    states: usize,
    involution: Vec<usize>,
    delta: Vec<PartialBijection>,
    start: usize,
    accepting: Vec<bool>,
}

/// Checks both defining conditions and reports every violation found.
pub fn validate(states: usize, involution: &[usize], transitions: &[Vec<(usize, usize)>]) -> Vec<Violation> {
    let mut out = Vec::new();
    let k = transitions.len();
    for a in 0..k {
        if involution.get(a).is_none_or(|&b| b >= k || involution[b] != a) {
            out.push(Violation::BadInvolution { letter: a });
        }
    }
    let mut maps: Vec<Option<Vec<Option<usize>>>> = Vec::with_capacity(k);
    for (a, ts) in transitions.iter().enumerate() {
        let mut img = vec![None; states];
        let mut hit = vec![false; states];
        let mut ok = true;
        for &(q, r) in ts {
            if q >= states || r >= states {
                out.push(Violation::StateOutOfRange { letter: a, state: q.max(r) });
                ok = false;
                continue;
            }
            if img[q].is_some_and(|x| x != r) {
                out.push(Violation::NotDeterministic { letter: a, state: q });
                ok = false;
            } else if img[q].is_none() {
                if hit[r] {
                    out.push(Violation::NotInjective { letter: a, state: r });
                    ok = false;
                }
                hit[r] = true;
                img[q] = Some(r);
            }
        }
        maps.push(ok.then_some(img));
    }
    for a in 0..k {
        let Some(&b) = involution.get(a) else { continue };
        if b >= k {
            continue;
        }
        if let (Some(fa), Some(fb)) = (&maps[a], &maps[b]) {
            let converse = (0..states).all(|q| match fa[q] {
                Some(r) => fb[r] == Some(q),
                None => true,
            }) && (0..states).all(|r| match fb[r] {
                Some(q) => fa[q] == Some(r),
                None => true,
            });
            if !converse {
                out.push(Violation::NotConverse { letter: a });
            }
        }
    }
    out
}

impl InverseAutomaton {
    /// Builds an automaton from per-letter transition lists `(q, q')`.
    pub fn new(
        states: usize,
        involution: Vec<usize>,
        transitions: &[Vec<(usize, usize)>],
        start: usize,
        accepting: &[usize],
    ) -> Result<Self, AutomataError> {
        let v = validate(states, &involution, transitions);
        if !v.is_empty() {
            return Err(AutomataError::Invalid(v));
        }
        if start >= states {
            return Err(AutomataError::BadState(start));
        }
        let mut acc = vec![false; states];
        for &q in accepting {
            if q >= states {
                return Err(AutomataError::BadState(q));
            }
            acc[q] = true;
        }
        let delta = transitions
            .iter()
            .map(|ts| {
                let mut img = vec![None; states];
                for &(q, r) in ts {
                    img[q] = Some(r);
                }
                PartialBijection::new(&img).expect("validated")
            })
            .collect();
        Ok(InverseAutomaton { states, involution, delta, start, accepting: acc })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn letters(&self) -> usize {
        self.delta.len()
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn delta(&self, a: usize) -> &PartialBijection {
        &self.delta[a]
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> Vec<usize> {
        (0..self.states).filter(|&q| self.accepting[q]).collect()
    }

    /// Transition list `(q, q')` of letter `a`.
    pub fn transitions(&self, a: usize) -> Vec<(usize, usize)> {
        let d = &self.delta[a];
        d.domain().into_iter().map(|q| (q, d.image(q).expect("in domain"))).collect()
    }

    pub fn run(&self, word: &[usize]) -> Option<usize> {
        let mut q = self.start;
        for &a in word {
            q = self.delta.get(a)?.image(q)?;
        }
        Some(q)
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.run(word).is_some_and(|q| self.accepting[q])
    }

    /// The letters as generators of an inverse subsemigroup of `I(Q)`.
    pub fn transition_system(&self) -> Result<PbSystem, AlgebraError> {
        PbSystem::from_gens(self.states, self.delta.clone())
    }

    /// Complete DFA obtained by adding a failure state with index `states`.
    /// Row `q` lists the successor of `q` under each letter.
    pub fn to_dfa(&self) -> Vec<Vec<usize>> {
        let fail = self.states;
        (0..=self.states)
            .map(|q| {
                self.delta
                    .iter()
                    .map(|d| if q == fail { fail } else { d.image(q).unwrap_or(fail) })
                    .collect()
            })
            .collect()
    }
}

/// Packs per-automaton states into a fixed number of 64-bit words.
struct Packer {
    shift: Vec<(usize, u32)>,
    width: Vec<u32>,
    words: usize,
}

impl Packer {
    fn new(sizes: &[usize]) -> Self {
        let mut shift = Vec::with_capacity(sizes.len());
        let mut width = Vec::with_capacity(sizes.len());
        let (mut word, mut bit) = (0usize, 0u32);
        for &s in sizes {
            let w = usize::BITS - (s.max(2) - 1).leading_zeros();
            if bit + w > 64 {
                word += 1;
                bit = 0;
            }
            shift.push((word, bit));
            width.push(w);
            bit += w;
        }
        Packer { shift, width, words: word + 1 }
    }

    fn get(&self, key: &[u64], i: usize) -> usize {
        let (w, b) = self.shift[i];
        ((key[w] >> b) & ((1u64 << self.width[i]) - 1)) as usize
    }

    fn pack(&self, qs: impl Iterator<Item = usize>) -> Vec<u64> {
        let mut key = vec![0u64; self.words];
        for (i, q) in qs.enumerate() {
            let (w, b) = self.shift[i];
            key[w] |= (q as u64) << b;
        }
        key
    }
}

/// Decides whether the accepted languages intersect. Returns the
/// lexicographically least shortest common word, possibly empty.
pub fn intersect_nonempty(automata: &[InverseAutomaton]) -> Result<Option<Vec<usize>>, AutomataError> {
    intersect_with_cap(automata, PRODUCT_STATE_CAP)
}

pub fn intersect_with_cap(automata: &[InverseAutomaton], cap: usize) -> Result<Option<Vec<usize>>, AutomataError> {
    let first = automata.first().ok_or(AutomataError::Empty)?;
    if automata.iter().any(|a| a.involution != first.involution) {
        return Err(AutomataError::AlphabetMismatch);
    }
    let k = first.letters();
    let packer = Packer::new(&automata.iter().map(|a| a.states).collect::<Vec<_>>());
    let start = packer.pack(automata.iter().map(|a| a.start));
    let mut nodes: Vec<(Vec<u64>, usize, usize)> = vec![(start.clone(), usize::MAX, usize::MAX)];
    let mut seen: HashMap<Vec<u64>, ()> = HashMap::from([(start, ())]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let key = nodes[i].0.clone();
        if automata.iter().enumerate().all(|(j, a)| a.accepting[packer.get(&key, j)]) {
            let mut word = Vec::new();
            let mut cur = i;
            while nodes[cur].1 != usize::MAX {
                word.push(nodes[cur].2);
                cur = nodes[cur].1;
            }
            word.reverse();
            debug_assert!(automata.iter().all(|a| a.accepts(&word)));
            return Ok(Some(word));
        }
        'letters: for a in 0..k {
            let mut next = Vec::with_capacity(automata.len());
            for (j, aut) in automata.iter().enumerate() {
                match aut.delta[a].image(packer.get(&key, j)) {
                    Some(r) => next.push(r),
                    None => continue 'letters,
                }
            }
            let nk = packer.pack(next.into_iter());
            if seen.contains_key(&nk) {
                continue;
            }
            if nodes.len() >= cap {
                return Err(AutomataError::StateCap { limit: cap });
            }
            seen.insert(nk.clone(), ());
            nodes.push((nk, i, a));
            queue.push_back(nodes.len() - 1);
        }
    }
    Ok(None)
}
