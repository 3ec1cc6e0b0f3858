mod common;

use common::{sample, target, FAMILIES};
use invsemi::automata::{intersect_nonempty, InverseAutomaton};
use invsemi::ct::CtSolver;
use invsemi::meta::{mgs_minimum, MgsCount};
use invsemi::oracle::{close, naive_conjugate, naive_member};
use invsemi::reduction::{dispatch_conjugate, dispatch_member, DispatchOptions};
use invsemi::slp::slp_verify;
use invsemi::{preston_wagner, Caps, CayleyTable, CtSystem, InverseSemigroup, PartialBijection, PbSystem, Slp, SymmetricInverseMonoid};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pb_strategy(n: usize) -> impl Strategy<Value = PartialBijection> {
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n)).prop_map(move |(perm, keep)| {
        let img: Vec<Option<usize>> = perm.into_iter().zip(keep).map(|(y, k)| k.then_some(y)).collect();
        PartialBijection::new(&img).unwrap()
    })
}

fn triple() -> impl Strategy<Value = (PartialBijection, PartialBijection, PartialBijection)> {
    (1usize..7).prop_flat_map(|n| (pb_strategy(n), pb_strategy(n), pb_strategy(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_is_associative((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn inverse_is_unique_and_involutive((a, b, _c) in triple()) {
        let ai = a.inverse();
        prop_assert_eq!(&(&a * &ai) * &a, a.clone());
        prop_assert_eq!(ai.inverse(), a.clone());
        prop_assert_eq!((&a * &b).inverse(), &b.inverse() * &ai);
    }

    #[test]
    fn idempotents_commute((a, b, _c) in triple()) {
        let e = a.domain_idempotent();
        let f = b.range_idempotent();
        prop_assert_eq!(&e * &f, &f * &e);
    }

    #[test]
    fn natural_order_forms_agree((a, b, _c) in triple()) {
        let amb = SymmetricInverseMonoid::new(a.degree());
        let r = b.restrict(&a.domain_set());
        let left = amb.natural_leq(&r, &b);
        let right = amb.multiply(&b, &amb.right_idempotent(&r)) == r;
        prop_assert!(left && right);
        prop_assert_eq!(amb.natural_leq(&a, &b), a.natural_leq(&b));
    }

    #[test]
    fn text_round_trip(a in (1usize..8).prop_flat_map(pb_strategy)) {
        prop_assert_eq!(a.to_text().parse::<PartialBijection>().unwrap(), a);
    }

    #[test]
    fn dispatch_agrees_with_oracle(seed in any::<u64>(), fam in 0usize..5) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let s = sample(&mut r, FAMILIES[fam], 1..=5, 1..=3, 500);
        let t = target(&mut r, &s);
        let rep = dispatch_member(&s.system, &t, &DispatchOptions::default()).unwrap();
        prop_assert_eq!(rep.answer.member, naive_member(&s.system, &t, Caps::default()).unwrap().is_some());
        if let Some(w) = rep.answer.witness {
            let back = Slp::parse(&w.to_text()).unwrap();
            prop_assert!(slp_verify(&s.system, &back, &t));
        }
        let x = s.closure.elements()[seed as usize % s.closure.len()].clone();
        let c = dispatch_conjugate(&s.system, &x, &t, &DispatchOptions::default()).unwrap();
        prop_assert_eq!(c.answer.conjugate, naive_conjugate(&s.system, &x, &t, Caps::default()).unwrap().is_some());
    }

    #[test]
    fn preston_wagner_is_an_embedding(seed in any::<u64>(), fam in 0usize..5) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let s = sample(&mut r, FAMILIES[fam], 1..=4, 1..=3, 60);
        let table = CayleyTable::from_closure(s.system.ambient(), s.closure.elements()).unwrap();
        let rho = preston_wagner(&table);
        for a in 0..table.size() {
            for b in 0..table.size() {
                prop_assert_eq!(&rho[table.product(a, b)], &(&rho[a] * &rho[b]));
                if a != b {
                    prop_assert_ne!(&rho[a], &rho[b]);
                }
            }
        }
    }

    #[test]
    fn greedy_table_membership_agrees_with_oracle(seed in any::<u64>(), fam in 0usize..5, gens in proptest::collection::vec(any::<usize>(), 1..4), t in any::<usize>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let s = sample(&mut r, FAMILIES[fam], 1..=4, 1..=3, 100);
        let table = CayleyTable::from_closure(s.system.ambient(), s.closure.elements()).unwrap();
        let n = table.size();
        let sys = CtSystem::new(table, gens.iter().map(|g| g % n).collect()).unwrap();
        let t = t % n;
        let trace = CtSolver::from_system(sys.clone()).member_traced(t).unwrap();
        prop_assert_eq!(trace.answer.member, naive_member(&sys, &t, Caps::default()).unwrap().is_some());
        prop_assert!(trace.steps.len() <= n);
    }

    #[test]
    fn generating_set_minimum_is_minimal(seed in any::<u64>(), fam in 0usize..5) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let s = sample(&mut r, FAMILIES[fam], 1..=3, 1..=3, 40);
        let res = mgs_minimum(&s.system, MgsCount::Plain, Caps::default()).unwrap();
        let mut want = s.closure.elements().to_vec();
        want.sort();
        let mut got = close(&PbSystem::from_gens(s.system.degree(), res.witness.clone()).unwrap(), Caps::default()).unwrap().elements().to_vec();
        got.sort();
        prop_assert_eq!(&got, &want);
        prop_assert_eq!(res.witness.len(), res.minimum);
        // no smaller subset of the closure generates it
        if res.minimum > 1 && want.len() <= 24 {
            let k = res.minimum - 1;
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let g: Vec<PartialBijection> = idx.iter().map(|&i| want[i].clone()).collect();
                let c = close(&PbSystem::from_gens(s.system.degree(), g).unwrap(), Caps::default()).unwrap();
                prop_assert!(c.len() < want.len());
                // next k-subset
                let mut i = k;
                while i > 0 && idx[i - 1] == want.len() - k + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for j in i..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
    }

    #[test]
    fn intersection_word_is_accepted_by_all(seed in any::<u64>()) {
        // random permutation automata: letter a acts as a bijection on states
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let auts: Vec<InverseAutomaton> = (0..r.gen_range(1..4))
            .map(|_| {
                let q = r.gen_range(1..5);
                let perm = common::random_pb(&mut r, q, 0.8);
                let fwd: Vec<(usize, usize)> = perm.domain().into_iter().map(|x| (x, perm.image(x).unwrap())).collect();
                let bwd: Vec<(usize, usize)> = fwd.iter().map(|&(x, y)| (y, x)).collect();
                let acc = r.gen_range(0..q);
                InverseAutomaton::new(q, vec![1, 0], &[fwd, bwd], 0, &[acc]).unwrap()
            })
            .collect();
        let w = intersect_nonempty(&auts).unwrap();
        // bounded brute force over words in the one-letter free group
        let brute = (0..=60usize).flat_map(|k| [vec![0; k], vec![1; k]]).find(|w| auts.iter().all(|a| a.accepts(w)));
        prop_assert_eq!(w.is_some(), brute.is_some());
        if let Some(w) = w {
            prop_assert!(auts.iter().all(|a| a.accepts(&w)));
            prop_assert_eq!(w.len(), brute.unwrap().len());
        }
    }
}
