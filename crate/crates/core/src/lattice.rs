//! The lattice of sigma-fields: meet, join, independence, `plus`.
//!
//! Order: `X <= Y` iff `is_sub(X, Y)` iff the partition of `Y` refines the
//! partition of `X`. The join is the common refinement; the meet is the
//! finest common coarsening, computed by connected components: two outcomes
//! are linked when some block of either operand contains both. Bottom is
//! the trivial field, top the discrete field. The lattice is bounded and
//! satisfies the absorption laws, but it is not distributive.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::LawReport;
use crate::sigma::{is_sub, SigmaField};
use crate::space::SpaceRef;

/// Members of a family of tuples scanned by `independent_family` and its
/// conditional variant; product of block counts above this errors out.
pub const DEFAULT_TUPLE_CAP: u128 = 1_000_000;

fn same_space(a: &SigmaField, b: &SigmaField) -> Result<()> {
    if a.space() == b.space() {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// Union-find over support positions, used for the meet.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Common refinement: atoms are the nonempty pairwise block intersections.
pub fn join(x: &SigmaField, y: &SigmaField) -> Result<SigmaField> {
    same_space(x, y)?;
    let space = x.space();
    let mut groups: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &o in space.support() {
        let key = (x.block_of(o).unwrap(), y.block_of(o).unwrap());
        groups.entry(key).or_default().push(o);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    Ok(SigmaField::from_canonical(space, blocks))
}

/// Join of any number of fields; the empty join is the trivial field.
pub fn join_many(space: &SpaceRef, fields: &[SigmaField]) -> Result<SigmaField> {
    let mut acc = SigmaField::trivial(space);
    for f in fields {
        if f.space() != space {
            return Err(Error::SpaceMismatch);
        }
        acc = join(&acc, f)?;
    }
    Ok(acc)
}

/// Finest common coarsening, by connected components of the "share a block"
/// relation.
pub fn meet(x: &SigmaField, y: &SigmaField) -> Result<SigmaField> {
    same_space(x, y)?;
    meet_many(&[x.clone(), y.clone()])
}

/// Meet of a non-empty family.
pub fn meet_many(fields: &[SigmaField]) -> Result<SigmaField> {
    let first = fields.first().ok_or(Error::EmptyFamily)?;
    let space = first.space();
    for f in &fields[1..] {
        if f.space() != space {
            return Err(Error::SpaceMismatch);
        }
    }
    let n = space.support_len();
    let mut dsu = Dsu::new(n);
    for f in fields {
        for block in f.blocks() {
            let head = space.support_pos(block[0]).unwrap();
            for &o in &block[1..] {
                dsu.union(head, space.support_pos(o).unwrap());
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for (pos, &o) in space.support().iter().enumerate() {
        groups.entry(dsu.find(pos)).or_default().push(o);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    Ok(SigmaField::from_canonical(space, blocks))
}

/// Exact independence: every pair of atoms satisfies the product rule.
///
/// One pass collects the joint masses; since all atoms have positive mass,
/// independence forces every pairwise intersection to be nonempty, which the
/// pair count detects without enumerating empty pairs.
pub fn independent(x: &SigmaField, y: &SigmaField) -> Result<bool> {
    same_space(x, y)?;
    let space = x.space();
    let mut joint: HashMap<(usize, usize), Rational> = HashMap::new();
    for &o in space.support() {
        let key = (x.block_of(o).unwrap(), y.block_of(o).unwrap());
        *joint.entry(key).or_insert_with(|| Rational::from_integer(0.into())) +=
            space.weight(o).clone();
    }
    if joint.len() != x.block_count() * y.block_count() {
        return Ok(false);
    }
    for ((bx, by), p) in &joint {
        if *p != x.block_prob(*bx) * y.block_prob(*by) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mutual independence of a family: the product rule over full tuples of
/// atoms, one from each member. Pairwise independence is weaker and is not
/// what this checks.
pub fn independent_family(fields: &[SigmaField]) -> Result<bool> {
    independent_family_capped(fields, DEFAULT_TUPLE_CAP)
}

pub fn independent_family_capped(fields: &[SigmaField], cap: u128) -> Result<bool> {
    let first = match fields.first() {
        Some(f) => f,
        None => return Ok(true),
    };
    let space = first.space();
    for f in &fields[1..] {
        if f.space() != space {
            return Err(Error::SpaceMismatch);
        }
    }
    let mut tuples: u128 = 1;
    for f in fields {
        tuples = tuples.saturating_mul(f.block_count() as u128);
    }
    if tuples > cap {
        return Err(Error::CapExceeded {
            what: "independence tuple scan".into(),
            needed: tuples,
            cap,
        });
    }
    // Mutual independence forces every tuple intersection to carry positive
    // mass, and distinct tuples are disjoint, so more tuples than support
    // points means some intersection is empty.
    if tuples > space.support_len() as u128 {
        return Ok(false);
    }
    let mut joint: HashMap<Vec<usize>, Rational> = HashMap::new();
    for &o in space.support() {
        let key: Vec<usize> = fields.iter().map(|f| f.block_of(o).unwrap()).collect();
        *joint.entry(key).or_insert_with(|| Rational::from_integer(0.into())) +=
            space.weight(o).clone();
    }
    if (joint.len() as u128) != tuples {
        return Ok(false);
    }
    for (key, p) in &joint {
        let expect: Rational = key
            .iter()
            .zip(fields)
            .map(|(&b, f)| f.block_prob(b).clone())
            .product();
        if *p != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The partial sum: the join when the operands are independent, undefined
/// otherwise.
pub fn plus(x: &SigmaField, y: &SigmaField) -> Result<SigmaField> {
    if independent(x, y)? {
        join(x, y)
    } else {
        Err(Error::NotIndependent)
    }
}

/// Checks the bounded-lattice axioms on a concrete triple.
pub fn check_lattice_axioms(
    x: &SigmaField,
    y: &SigmaField,
    z: &SigmaField,
) -> Result<LawReport> {
    same_space(x, y)?;
    same_space(x, z)?;
    let space = x.space();
    let bot = SigmaField::trivial(space);
    let top = SigmaField::discrete(space);

    let m_comm = meet(x, y)? == meet(y, x)?;
    let j_comm = join(x, y)? == join(y, x)?;
    let m_assoc = meet(&meet(x, y)?, z)? == meet(x, &meet(y, z)?)?;
    let j_assoc = join(&join(x, y)?, z)? == join(x, &join(y, z)?)?;
    let m_idem = meet(x, x)? == *x;
    let j_idem = join(x, x)? == *x;
    let absorb_mj = meet(x, &join(x, y)?)? == *x;
    let absorb_jm = join(x, &meet(x, y)?)? == *x;
    let bot_join = join(x, &bot)? == *x;
    let top_meet = meet(x, &top)? == *x;
    let bot_meet = meet(x, &bot)? == bot;
    let top_join = join(x, &top)? == top;
    let bounds = is_sub(&meet(x, y)?, x)?
        && is_sub(&meet(x, y)?, y)?
        && is_sub(x, &join(x, y)?)?
        && is_sub(y, &join(x, y)?)?;

    let all = [
        m_comm, j_comm, m_assoc, j_assoc, m_idem, j_idem, absorb_mj, absorb_jm, bot_join,
        top_meet, bot_meet, top_join, bounds,
    ]
    .iter()
    .all(|&b| b);

    Ok(LawReport::new("lattice-axioms")
        .detail("meet-commutative", m_comm)
        .detail("join-commutative", j_comm)
        .detail("meet-associative", m_assoc)
        .detail("join-associative", j_assoc)
        .detail("meet-idempotent", m_idem)
        .detail("join-idempotent", j_idem)
        .detail("meet-absorbs-join", absorb_mj)
        .detail("join-absorbs-meet", absorb_jm)
        .detail("bottom-is-join-identity", bot_join)
        .detail("top-is-meet-identity", top_meet)
        .detail("bottom-absorbs-meet", bot_meet)
        .detail("top-absorbs-join", top_join)
        .detail("meet-join-are-bounds", bounds)
        .conclude(all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::space::ProbSpace;

    fn q4() -> SpaceRef {
        ProbSpace::uniform(&["++", "+-", "-+", "--"]).unwrap()
    }

    fn field(sp: &SpaceRef, blocks: &[&[usize]]) -> SigmaField {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        SigmaField::from_blocks(sp, &blocks).unwrap()
    }

    // xi1, xi1*xi2 and xi2 on two fair coins: pairwise independent, meets
    // all trivial, joins all discrete.
    #[test]
    fn two_coin_fields() {
        let sp = q4();
        let x = field(&sp, &[&[0, 1], &[2, 3]]);
        let y = field(&sp, &[&[0, 3], &[1, 2]]);
        let z = field(&sp, &[&[0, 2], &[1, 3]]);
        for (a, b) in [(&x, &y), (&x, &z), (&y, &z)] {
            assert!(independent(a, b).unwrap());
            assert!(meet(a, b).unwrap().is_trivial());
            assert!(join(a, b).unwrap().is_discrete());
        }
        // ...but not mutually independent: xi2 is a function of the others.
        assert!(!independent_family(&[x.clone(), y.clone(), z.clone()]).unwrap());
        assert!(independent_family(&[x.clone(), y.clone()]).unwrap());
    }

    #[test]
    fn join_meet_frozen_five_point() {
        let sp = ProbSpace::new(
            vec!["a", "b", "c", "d", "e"],
            vec![rat(1, 2), rat(1, 8), rat(1, 8), rat(1, 8), rat(1, 8)],
        )
        .unwrap();
        let p1 = field(&sp, &[&[0, 1], &[2, 3, 4]]);
        let p2 = field(&sp, &[&[0, 1, 2], &[3, 4]]);
        assert!(meet(&p1, &p2).unwrap().is_trivial());
        assert_eq!(
            join(&p1, &p2).unwrap().blocks(),
            &[vec![0, 1], vec![2], vec![3, 4]]
        );

        let p3 = field(&sp, &[&[0], &[1, 2], &[3, 4]]);
        let p4 = field(&sp, &[&[0, 1], &[2, 3], &[4]]);
        assert!(meet(&p3, &p4).unwrap().is_trivial());
        assert!(join(&p3, &p4).unwrap().is_discrete());
    }

    #[test]
    fn meet_many_rejects_empty() {
        assert_eq!(meet_many(&[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn join_many_of_nothing_is_trivial() {
        let sp = q4();
        assert!(join_many(&sp, &[]).unwrap().is_trivial());
    }

    #[test]
    fn plus_requires_independence() {
        let sp = q4();
        let x = field(&sp, &[&[0, 1], &[2, 3]]);
        let z = field(&sp, &[&[0, 2], &[1, 3]]);
        assert!(plus(&x, &z).unwrap().is_discrete());
        assert_eq!(plus(&x, &x).unwrap_err(), Error::NotIndependent);
        // Trivial is independent of everything, so plus(0, X) = X.
        let t = SigmaField::trivial(&sp);
        assert_eq!(plus(&t, &x).unwrap(), x);
    }

    #[test]
    fn independence_needs_exact_masses() {
        // 1/2, 1/8, 1/8, 1/4 on two blocks each: joint fails the product.
        let sp = ProbSpace::new(
            vec!["a", "b", "c", "d"],
            vec![rat(1, 2), rat(1, 8), rat(1, 8), rat(1, 4)],
        )
        .unwrap();
        let x = field(&sp, &[&[0, 1], &[2, 3]]);
        let y = field(&sp, &[&[0, 2], &[1, 3]]);
        assert!(!independent(&x, &y).unwrap());
    }

    #[test]
    fn family_cap() {
        let sp = q4();
        let d = SigmaField::discrete(&sp);
        let fields = vec![d.clone(), d.clone(), d.clone()];
        let err = independent_family_capped(&fields, 10).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { needed: 64, .. }));
    }

    #[test]
    fn empty_and_singleton_families_are_independent() {
        let sp = q4();
        assert!(independent_family(&[]).unwrap());
        let x = field(&sp, &[&[0, 1], &[2, 3]]);
        assert!(independent_family(&[x]).unwrap());
    }

    #[test]
    fn axioms_hold_on_a_triple() {
        let sp = q4();
        let x = field(&sp, &[&[0, 1], &[2, 3]]);
        let y = field(&sp, &[&[0, 3], &[1, 2]]);
        let z = field(&sp, &[&[0], &[1, 2], &[3]]);
        let report = check_lattice_axioms(&x, &y, &z).unwrap();
        assert_eq!(report.conclusion, Some(true), "{report}");
    }
}
