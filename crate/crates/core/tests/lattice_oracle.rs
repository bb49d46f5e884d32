//! Brute-force oracle for meet and join.
//!
//! The oracle enumerates every partition of the support with its own
//! restricted-growth generator, then picks greatest lower bounds and least
//! upper bounds by scanning all candidates with nothing but a refinement
//! test. Any disagreement with the union-find/refinement implementations
//! is a bug in one of the two.

use sigma_lattice::rational::rat;
use sigma_lattice::sigma::{is_sub, SigmaField};
use sigma_lattice::lattice::{join, meet};
use sigma_lattice::space::{ProbSpace, SpaceRef};

/// All partitions of `{0..n}` as sorted block lists, via restricted growth
/// strings generated locally (independent of the library's enumerator).
fn oracle_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = {
            let k = rgs.iter().max().copied().unwrap_or(0) + 1;
            let mut blocks = vec![Vec::new(); k];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i);
            }
            blocks
        };
        out.push(blocks);
        // advance: rightmost position that can grow, respecting the
        // restricted-growth bound rgs[i] <= max(prefix) + 1
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let bound = rgs[..i].iter().max().copied().unwrap() + 1;
            if rgs[i] < bound {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// Does partition `a` refine partition `b` (every a-block inside a b-block)?
fn refines(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    a.iter().all(|ab| {
        b.iter()
            .any(|bb| ab.iter().all(|x| bb.contains(x)))
    })
}

/// Renumber a partition of support positions into outcome indices.
fn to_outcomes(blocks: &[Vec<usize>], support: &[usize]) -> Vec<Vec<usize>> {
    blocks
        .iter()
        .map(|b| b.iter().map(|&pos| support[pos]).collect())
        .collect()
}

fn field_of(space: &SpaceRef, blocks: &[Vec<usize>]) -> SigmaField {
    // positive weight everywhere on these spaces except the null-outcome
    // case, which maps support positions back to outcome indices first
    let full = to_outcomes(blocks, space.support());
    let mut all: Vec<Vec<usize>> = full;
    let mut seen: Vec<usize> = all.iter().flatten().copied().collect();
    seen.sort_unstable();
    for o in 0..space.len() {
        if seen.binary_search(&o).is_err() {
            all[0].push(o); // park null outcomes in the first block
        }
    }
    SigmaField::from_blocks(space, &all).unwrap()
}

fn check_space(space: &SpaceRef) {
    let n = space.support_len();
    let parts = oracle_partitions(n);
    let fields: Vec<SigmaField> = parts.iter().map(|p| field_of(space, p)).collect();

    for (pi, px) in parts.iter().enumerate() {
        for (pj, py) in parts.iter().enumerate() {
            let (fx, fy) = (&fields[pi], &fields[pj]);

            // oracle join: the common refinement that every common
            // refinement refines — scan for it
            let lower: Vec<usize> = (0..parts.len())
                .filter(|&k| refines(&parts[k], px) && refines(&parts[k], py))
                .collect();
            let lub: Vec<usize> = lower
                .iter()
                .copied()
                .filter(|&c| lower.iter().all(|&p| refines(&parts[p], &parts[c])))
                .collect();
            assert_eq!(lub.len(), 1, "join oracle must be unique");
            assert_eq!(
                join(fx, fy).unwrap(),
                fields[lub[0]],
                "join disagrees on {} vs {}",
                fx.render(),
                fy.render()
            );

            // oracle meet: the common coarsening that refines every
            // common coarsening
            let upper: Vec<usize> = (0..parts.len())
                .filter(|&k| refines(px, &parts[k]) && refines(py, &parts[k]))
                .collect();
            let glb: Vec<usize> = upper
                .iter()
                .copied()
                .filter(|&c| upper.iter().all(|&p| refines(&parts[c], &parts[p])))
                .collect();
            assert_eq!(glb.len(), 1, "meet oracle must be unique");
            assert_eq!(
                meet(fx, fy).unwrap(),
                fields[glb[0]],
                "meet disagrees on {} vs {}",
                fx.render(),
                fy.render()
            );

            // the order itself agrees: X <= Y iff Y's partition refines X's
            assert_eq!(is_sub(fx, fy).unwrap(), refines(py, px));
        }
    }
}

#[test]
fn oracle_agreement_uniform_spaces() {
    for n in 2..=5 {
        let labels: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        check_space(&ProbSpace::uniform(&refs).unwrap());
    }
}

#[test]
fn oracle_agreement_non_uniform_space() {
    let space = ProbSpace::new(
        vec!["a", "b", "c", "d", "e"],
        vec![rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 16), rat(1, 16)],
    )
    .unwrap();
    check_space(&space);
}

#[test]
fn oracle_agreement_with_null_outcome() {
    // six declared outcomes, one null: the lattice lives on the support
    let space = ProbSpace::new(
        vec!["a", "b", "c", "d", "e", "z"],
        vec![
            rat(1, 3),
            rat(1, 6),
            rat(1, 6),
            rat(1, 6),
            rat(1, 6),
            rat(0, 1),
        ],
    )
    .unwrap();
    assert_eq!(space.support_len(), 5);
    check_space(&space);
}

#[test]
fn oracle_partition_counts_are_bell() {
    let counts: Vec<usize> = (1..=6).map(|n| oracle_partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
}
