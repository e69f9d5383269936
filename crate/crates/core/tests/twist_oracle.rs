use std::collections::BTreeSet;

use csn::polygon::replay_twists;
use csn::{
    all_orderings, is_circular, twist_sequence, CircularOrdering, PolygonRep, Rational, Split, SplitSystem, TwistPath,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn circular_splits(o: &CircularOrdering) -> Vec<Split> {
    let seq = o.as_slice();
    let n = seq.len();
    let mut out = Vec::new();
    for s in 1..n {
        for e in s + 1..n {
            if e + 1 - s > n - 2 {
                continue;
            }
            out.push(Split::new(n, &seq[s..=e]).unwrap());
        }
    }
    out
}

fn check(rep: &PolygonRep<Rational>, target: &CircularOrdering) -> usize {
    let n = rep.n();
    let sys = rep.split_system();
    let expect = is_circular(&sys, target).unwrap();
    match twist_sequence(rep, target).unwrap() {
        TwistPath::Sequence(steps) => {
            assert!(expect, "sequence returned for incompatible {target}");
            assert!(steps.len() <= 2 * (n - 2), "{} twists", steps.len());
            let end = replay_twists(rep, &steps).unwrap();
            assert_eq!(end.ordering(), target);
            assert_eq!(end.split_system(), sys);
            steps.len()
        }
        TwistPath::Incompatible { split } => {
            assert!(!expect);
            assert!(!target.supports(&split));
            0
        }
    }
}

#[test]
fn twist_sequences_exhaustive_small_n() {
    for n in 4..=6 {
        let orderings = all_orderings(n).unwrap();
        let mut systems = BTreeSet::new();
        for o in &orderings {
            let cs = circular_splits(o);
            for bits in 0u32..(1 << cs.len()) {
                let chosen = cs.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, s)| *s);
                systems.insert((SplitSystem::new(n, chosen).unwrap(), o.clone()));
            }
        }
        let mut longest = 0;
        for (sys, o) in &systems {
            let rep = PolygonRep::<Rational>::new(sys, o).unwrap();
            for target in &orderings {
                longest = longest.max(check(&rep, target));
            }
        }
        println!("n={n}: longest twist sequence {longest}");
    }
}

#[test]
fn twist_sequences_sampled_n7() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let orderings = all_orderings(7).unwrap();
    for _ in 0..20_000 {
        let o = &orderings[rng.gen_range(0..orderings.len())];
        let cs = circular_splits(o);
        let chosen = cs.iter().filter(|_| rng.gen_bool(0.3)).copied();
        let sys = SplitSystem::new(7, chosen).unwrap();
        let rep = PolygonRep::<Rational>::new(&sys, o).unwrap();
        let target = &orderings[rng.gen_range(0..orderings.len())];
        check(&rep, target);
    }
}
