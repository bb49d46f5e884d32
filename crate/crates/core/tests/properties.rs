//! Randomized invariants: lattice axioms, independence, operator algebra,
//! complement enumeration, and the splitting equivalence on product spaces.

use proptest::prelude::*;

use sigma_lattice::condexp::{
    condexp, condexp_operator, expectation, measurable_wrt, Vector,
};
use sigma_lattice::complements::{complements_ii_check, enumerate_complements};
use sigma_lattice::error::Error;
use sigma_lattice::lattice::{check_lattice_axioms, independent, join, meet, plus};
use sigma_lattice::rational::Rational;
use sigma_lattice::sigma::{is_sub, SigmaField};
use sigma_lattice::space::{ProbSpace, ProductSpace, SpaceRef};

/// Normalizes raw bytes into a restricted-growth string of length `n`.
fn to_rgs(raw: &[u8], n: usize) -> Vec<usize> {
    let mut rgs = vec![0usize; n];
    let mut max = 0usize;
    for (i, slot) in rgs.iter_mut().enumerate().skip(1) {
        let v = raw.get(i).copied().unwrap_or(0) as usize % (max + 2);
        *slot = v;
        max = max.max(v);
    }
    rgs
}

fn blocks_from_rgs(rgs: &[usize]) -> Vec<Vec<usize>> {
    let k = rgs.iter().max().copied().unwrap_or(0) + 1;
    let mut blocks = vec![Vec::new(); k];
    for (i, &b) in rgs.iter().enumerate() {
        blocks[b].push(i);
    }
    blocks
}

fn space_from(weights_raw: Vec<u8>) -> SpaceRef {
    let n = weights_raw.len();
    let labels: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let total: i64 = weights_raw.iter().map(|&w| w as i64).sum();
    let weights: Vec<Rational> = weights_raw
        .iter()
        .map(|&w| Rational::new((w as i64).into(), total.into()))
        .collect();
    ProbSpace::new(labels, weights).unwrap()
}

fn field_from(space: &SpaceRef, raw: &[u8]) -> SigmaField {
    let rgs = to_rgs(raw, space.len());
    SigmaField::from_blocks(space, &blocks_from_rgs(&rgs)).unwrap()
}

/// Merges the blocks of `x` according to a restricted-growth string,
/// producing a coarsening (a sub-field of `x`).
fn coarsen(x: &SigmaField, raw: &[u8]) -> SigmaField {
    let rgs = to_rgs(raw, x.block_count());
    let groups = blocks_from_rgs(&rgs);
    let merged: Vec<Vec<usize>> = groups
        .iter()
        .map(|g| {
            g.iter()
                .flat_map(|&bi| x.blocks()[bi].iter().copied())
                .collect()
        })
        .collect();
    SigmaField::from_blocks(x.space(), &merged).unwrap()
}

prop_compose! {
    fn arb_space()(weights in prop::collection::vec(1u8..=8, 2..=6)) -> SpaceRef {
        space_from(weights)
    }
}

prop_compose! {
    fn arb_space_and_fields()(
        space in arb_space()
    )(
        space in Just(space.clone()),
        a in prop::collection::vec(any::<u8>(), space.len()),
        b in prop::collection::vec(any::<u8>(), space.len()),
        c in prop::collection::vec(any::<u8>(), space.len()),
    ) -> (SpaceRef, SigmaField, SigmaField, SigmaField) {
        let (x, y, z) = (field_from(&space, &a), field_from(&space, &b), field_from(&space, &c));
        (space, x, y, z)
    }
}

proptest! {
    #[test]
    fn lattice_axioms((space, x, y, z) in arb_space_and_fields()) {
        let axioms = check_lattice_axioms(&x, &y, &z).unwrap();
        prop_assert!(axioms.sound());

        // spelled out: commutativity, associativity, idempotence, absorption
        prop_assert_eq!(join(&x, &y).unwrap(), join(&y, &x).unwrap());
        prop_assert_eq!(meet(&x, &y).unwrap(), meet(&y, &x).unwrap());
        prop_assert_eq!(
            join(&x, &join(&y, &z).unwrap()).unwrap(),
            join(&join(&x, &y).unwrap(), &z).unwrap()
        );
        prop_assert_eq!(
            meet(&x, &meet(&y, &z).unwrap()).unwrap(),
            meet(&meet(&x, &y).unwrap(), &z).unwrap()
        );
        prop_assert_eq!(join(&x, &x).unwrap(), x.clone());
        prop_assert_eq!(meet(&x, &x).unwrap(), x.clone());
        prop_assert_eq!(join(&x, &meet(&x, &y).unwrap()).unwrap(), x.clone());
        prop_assert_eq!(meet(&x, &join(&x, &y).unwrap()).unwrap(), x.clone());

        // bounds and order consistency
        let triv = SigmaField::trivial(&space);
        let disc = SigmaField::discrete(&space);
        prop_assert_eq!(meet(&x, &triv).unwrap(), triv.clone());
        prop_assert_eq!(join(&x, &disc).unwrap(), disc.clone());
        prop_assert!(is_sub(&meet(&x, &y).unwrap(), &x).unwrap());
        prop_assert!(is_sub(&x, &join(&x, &y).unwrap()).unwrap());
    }

    #[test]
    fn independence_and_plus((space, x, y, _z) in arb_space_and_fields()) {
        let triv = SigmaField::trivial(&space);
        prop_assert!(independent(&x, &triv).unwrap());
        prop_assert_eq!(independent(&x, &y).unwrap(), independent(&y, &x).unwrap());

        match plus(&x, &y) {
            Ok(sum) => {
                prop_assert!(independent(&x, &y).unwrap());
                prop_assert_eq!(sum, join(&x, &y).unwrap());
            }
            Err(Error::NotIndependent) => prop_assert!(!independent(&x, &y).unwrap()),
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error: {e}"))),
        }
    }

    #[test]
    fn operator_invariants(
        (space, x, _y, _z) in arb_space_and_fields(),
        f_raw in prop::collection::vec(-8i64..=8, 2..=6),
        g_raw in prop::collection::vec(-8i64..=8, 2..=6),
        coarse_raw in prop::collection::vec(any::<u8>(), 6),
    ) {
        let n = space.support_len();
        let take = |raw: &[i64]| -> Vector {
            let vals: Vec<Rational> = (0..n)
                .map(|i| Rational::from_integer(raw.get(i % raw.len()).copied().unwrap_or(1).into()))
                .collect();
            Vector::new(&space, vals)
        };
        let f = take(&f_raw);
        let g = take(&g_raw);
        let op = condexp_operator(&x);

        // idempotence, matrix vs direct averaging, measurability
        let ef = op.apply(&f);
        prop_assert_eq!(&ef, &condexp(&x, &f));
        prop_assert_eq!(op.apply(&ef), ef.clone());
        prop_assert!(measurable_wrt(&ef, &x));

        // constants are fixed
        let c = Vector::constant(&space, Rational::new(3.into(), 7.into()));
        prop_assert_eq!(op.apply(&c), c);

        // expectation is preserved
        prop_assert_eq!(expectation(&space, &ef), expectation(&space, &f));

        // self-adjointness for the weighted inner product
        let inner = |a: &Vector, b: &Vector| expectation(&space, &a.pointwise_mul(b));
        prop_assert_eq!(inner(&op.apply(&f), &g), inner(&f, &op.apply(&g)));

        // tower rule along a coarsening
        let y = coarsen(&x, &coarse_raw);
        prop_assert!(is_sub(&y, &x).unwrap());
        let oy = condexp_operator(&y);
        prop_assert_eq!(oy.apply(&op.apply(&f)), oy.apply(&f));
        prop_assert_eq!(op.apply(&oy.apply(&f)), oy.apply(&f));
    }

    #[test]
    fn complement_enumeration_is_a_filter(
        (space, z, _y, _w) in arb_space_and_fields(),
        coarse_raw in prop::collection::vec(any::<u8>(), 6),
    ) {
        let _ = &space;
        let x = coarsen(&z, &coarse_raw);
        let report = enumerate_complements(&x, &z).unwrap();

        // everything returned is a complement, in canonical order
        for y in &report.complements {
            prop_assert!(independent(&x, y).unwrap());
            prop_assert_eq!(join(&x, y).unwrap(), z.clone());
        }
        let mut sorted = report.complements.clone();
        sorted.sort();
        prop_assert_eq!(&sorted, &report.complements);

        // nothing is missed: scan every coarsening of the ambient directly
        let k = z.block_count();
        let mut missed = 0usize;
        let mut scanned = 0usize;
        let mut stack = vec![vec![0usize; 1]];
        while let Some(rgs) = stack.pop() {
            if rgs.len() == k {
                scanned += 1;
                let cand = coarsen(&z, &rgs.iter().map(|&v| v as u8).collect::<Vec<_>>());
                let is_comp = independent(&x, &cand).unwrap()
                    && join(&x, &cand).unwrap() == z;
                if is_comp != report.complements.contains(&cand) {
                    missed += 1;
                }
            } else {
                let bound = rgs.iter().max().copied().unwrap() + 1;
                for v in 0..=bound {
                    let mut next = rgs.clone();
                    next.push(v);
                    stack.push(next);
                }
            }
        }
        prop_assert_eq!(missed, 0);
        prop_assert_eq!(scanned as u128, report.searched);
    }

    #[test]
    fn splitting_equivalence_on_products(
        wa in prop::collection::vec(1u8..=4, 2..=3),
        wb in prop::collection::vec(1u8..=4, 2..=3),
        xa_raw in prop::collection::vec(any::<u8>(), 3),
        yb_raw in prop::collection::vec(any::<u8>(), 3),
        z_raw in prop::collection::vec(any::<u8>(), 9),
    ) {
        let fa = space_from(wa);
        let fb = space_from(wb);
        let prod = ProductSpace::new(&[fa.clone(), fb.clone()]).unwrap();
        let x = prod.lift_sigma(0, &field_from(&fa, &xa_raw)).unwrap();
        let y = prod.lift_sigma(1, &field_from(&fb, &yb_raw)).unwrap();
        prop_assert!(independent(&x, &y).unwrap());

        let z = coarsen(&join(&x, &y).unwrap(), &z_raw);
        let report = complements_ii_check(&x, &y, &z).unwrap();
        prop_assert_eq!(report.conclusion, Some(true));
    }
}

/// The coarsen helper really produces sub-fields, so the proptest cases
/// above exercise what they claim to.
#[test]
fn coarsen_produces_subfields() {
    let space = ProbSpace::uniform(&["a", "b", "c", "d"]).unwrap();
    let x = SigmaField::discrete(&space);
    for raw in [[0u8, 0, 0, 0], [0, 1, 2, 3], [7, 3, 5, 1]] {
        let y = coarsen(&x, &raw);
        assert!(is_sub(&y, &x).unwrap());
    }
}
