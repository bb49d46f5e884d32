//! Sigma-fields as canonical partitions of the support.
//!
//! On a finite space every complete sub-sigma-field is the completion of a
//! unique partition of the positive-mass outcomes, so a [`SigmaField`] *is*
//! that partition, stored canonically: members ascending within each block,
//! blocks ordered by least member, null outcomes erased at construction.
//! Equality of canonical forms is exactly equality of the completed fields.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{Event, RandomVariable, SpaceRef};

#[derive(Debug, Clone)]
pub struct SigmaField {
    space: SpaceRef,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<Option<usize>>,
    block_probs: Vec<Rational>,
}

impl PartialEq for SigmaField {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.blocks == other.blocks
    }
}

impl Eq for SigmaField {}

impl PartialOrd for SigmaField {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by canonical block lists; used to put enumeration output in a
/// stable order. Only meaningful between fields on one space.
impl Ord for SigmaField {
    fn cmp(&self, other: &Self) -> Ordering {
        self.blocks.cmp(&other.blocks)
    }
}

impl SigmaField {
    /// Builds a field from blocks of outcome indices. Null outcomes are
    /// dropped; what remains must partition the support exactly.
    pub fn from_blocks(space: &SpaceRef, blocks: &[Vec<usize>]) -> Result<SigmaField> {
        let mut seen = vec![false; space.len()];
        let mut cleaned: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut b = Vec::with_capacity(block.len());
            for &o in block {
                if o >= space.len() {
                    return Err(Error::NotAPartition(format!(
                        "outcome index {o} out of range"
                    )));
                }
                if space.support_pos(o).is_none() {
                    continue;
                }
                if seen[o] {
                    return Err(Error::NotAPartition(format!(
                        "outcome {:?} appears in two blocks",
                        space.label(o)
                    )));
                }
                seen[o] = true;
                b.push(o);
            }
            if !b.is_empty() {
                b.sort_unstable();
                cleaned.push(b);
            }
        }
        if let Some(&missing) = space.support().iter().find(|&&o| !seen[o]) {
            return Err(Error::NotAPartition(format!(
                "outcome {:?} is not covered",
                space.label(missing)
            )));
        }
        cleaned.sort_by_key(|b| b[0]);
        Ok(SigmaField::from_canonical(space, cleaned))
    }

    /// Same as [`from_blocks`](Self::from_blocks) with labels instead of
    /// indices.
    pub fn from_label_blocks(space: &SpaceRef, blocks: &[Vec<&str>]) -> Result<SigmaField> {
        let mut ix = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut b = Vec::with_capacity(block.len());
            for l in block {
                b.push(
                    space
                        .index_of(l)
                        .ok_or_else(|| Error::UnknownLabel(l.to_string()))?,
                );
            }
            ix.push(b);
        }
        SigmaField::from_blocks(space, &ix)
    }

    /// Level sets of a random variable.
    pub fn from_rv(rv: &RandomVariable) -> SigmaField {
        let space = rv.space();
        let mut groups: HashMap<&crate::space::Value, Vec<usize>> = HashMap::new();
        for &o in space.support() {
            groups.entry(rv.value(o)).or_default().push(o);
        }
        let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        SigmaField::from_canonical(space, blocks)
    }

    /// Field generated by finitely many events: the common refinement of
    /// their two-block partitions.
    pub fn from_events(space: &SpaceRef, events: &[Event]) -> Result<SigmaField> {
        for e in events {
            if e.space() != space {
                return Err(Error::SpaceMismatch);
            }
        }
        let mut groups: HashMap<Vec<bool>, Vec<usize>> = HashMap::new();
        for &o in space.support() {
            let key: Vec<bool> = events.iter().map(|e| e.contains(o)).collect();
            groups.entry(key).or_default().push(o);
        }
        let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        Ok(SigmaField::from_canonical(space, blocks))
    }

    /// The trivial field: one block holding the whole support.
    pub fn trivial(space: &SpaceRef) -> SigmaField {
        SigmaField::from_canonical(space, vec![space.support().to_vec()])
    }

    /// The discrete field: every support outcome is its own atom.
    pub fn discrete(space: &SpaceRef) -> SigmaField {
        let blocks = space.support().iter().map(|&o| vec![o]).collect();
        SigmaField::from_canonical(space, blocks)
    }

    /// Blocks are assumed canonical (sorted, disjoint, covering the support).
    pub(crate) fn from_canonical(space: &SpaceRef, blocks: Vec<Vec<usize>>) -> SigmaField {
        let mut block_of = vec![None; space.len()];
        let mut block_probs = Vec::with_capacity(blocks.len());
        for (bi, block) in blocks.iter().enumerate() {
            for &o in block {
                block_of[o] = Some(bi);
            }
            block_probs.push(space.prob_of(block.iter().copied()));
        }
        SigmaField {
            space: space.clone(),
            blocks,
            block_of,
            block_probs,
        }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block id of an outcome; None exactly for null outcomes.
    pub fn block_of(&self, outcome: usize) -> Option<usize> {
        self.block_of.get(outcome).copied().flatten()
    }

    pub fn block_prob(&self, block: usize) -> &Rational {
        &self.block_probs[block]
    }

    pub fn block_event(&self, block: usize) -> Event {
        Event::new(&self.space, &self.blocks[block]).expect("canonical block is in range")
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.space.support_len()
    }

    /// Canonical rendering by labels: `{a,b}{c}`.
    pub fn render(&self) -> String {
        self.blocks
            .iter()
            .map(|b| {
                let labels: Vec<&str> = b.iter().map(|&o| self.space.label(o)).collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect()
    }

    /// Block lists as labels, in canonical order.
    pub fn label_blocks(&self) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&o| self.space.label(o).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for SigmaField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// True iff `sub` is a sub-sigma-field of `sup`: every `sub` block is a
/// union of `sup` blocks, i.e. `sup` refines `sub`.
pub fn is_sub(sub: &SigmaField, sup: &SigmaField) -> Result<bool> {
    if sub.space() != sup.space() {
        return Err(Error::SpaceMismatch);
    }
    for block in sup.blocks() {
        let first = sub.block_of(block[0]);
        if block.iter().any(|&o| sub.block_of(o) != first) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::space::ProbSpace;

    fn q4() -> SpaceRef {
        ProbSpace::uniform(&["++", "+-", "-+", "--"]).unwrap()
    }

    #[test]
    fn canonical_form_is_sorted() {
        let sp = q4();
        let sf = SigmaField::from_blocks(&sp, &[vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(sf.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(sf.render(), "{++,-+}{+-,--}");
    }

    #[test]
    fn rejects_overlap_and_gaps() {
        let sp = q4();
        let overlap = SigmaField::from_blocks(&sp, &[vec![0, 1], vec![1, 2, 3]]);
        assert!(matches!(overlap, Err(Error::NotAPartition(_))));
        let gap = SigmaField::from_blocks(&sp, &[vec![0, 1], vec![2]]);
        assert!(matches!(gap, Err(Error::NotAPartition(_))));
        let range = SigmaField::from_blocks(&sp, &[vec![0, 1, 2, 3, 4]]);
        assert!(matches!(range, Err(Error::NotAPartition(_))));
    }

    #[test]
    fn null_outcomes_are_erased() {
        let sp = ProbSpace::new(
            vec!["a", "z", "b"],
            vec![rat(1, 2), rat(0, 1), rat(1, 2)],
        )
        .unwrap();
        // The null outcome may sit in any block, or in none.
        let with = SigmaField::from_blocks(&sp, &[vec![0, 1], vec![2]]).unwrap();
        let without = SigmaField::from_blocks(&sp, &[vec![0], vec![2]]).unwrap();
        assert_eq!(with, without);
        assert_eq!(with.blocks(), &[vec![0], vec![2]]);
        assert_eq!(with.block_of(1), None);
    }

    #[test]
    fn trivial_and_discrete() {
        let sp = q4();
        let t = SigmaField::trivial(&sp);
        let d = SigmaField::discrete(&sp);
        assert!(t.is_trivial());
        assert!(d.is_discrete());
        assert_eq!(t.block_count(), 1);
        assert_eq!(d.block_count(), 4);
        assert!(is_sub(&t, &d).unwrap());
        assert!(!is_sub(&d, &t).unwrap());

        let point = ProbSpace::uniform(&["only"]).unwrap();
        assert_eq!(
            SigmaField::trivial(&point),
            SigmaField::discrete(&point)
        );
    }

    #[test]
    fn level_sets_of_rv() {
        let sp = q4();
        let xi1 = RandomVariable::from_ints(&sp, &[1, 1, -1, -1]).unwrap();
        let sf = SigmaField::from_rv(&xi1);
        assert_eq!(sf.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert_eq!(sf.block_prob(0), &rat(1, 2));
    }

    #[test]
    fn field_from_events() {
        let sp = q4();
        let e = Event::from_labels(&sp, &["++", "+-", "-+"]).unwrap();
        let sf = SigmaField::from_events(&sp, &[e]).unwrap();
        assert_eq!(sf.blocks(), &[vec![0, 1, 2], vec![3]]);
        // Two events refine each other into four atoms here.
        let e2 = Event::from_labels(&sp, &["++", "-+"]).unwrap();
        let sf2 = SigmaField::from_events(
            &sp,
            &[
                Event::from_labels(&sp, &["++", "+-"]).unwrap(),
                e2,
            ],
        )
        .unwrap();
        assert!(sf2.is_discrete());
    }

    #[test]
    fn sub_relation_on_q4() {
        let sp = q4();
        let x = SigmaField::from_blocks(&sp, &[vec![0, 1], vec![2, 3]]).unwrap();
        let d = SigmaField::discrete(&sp);
        let t = SigmaField::trivial(&sp);
        assert!(is_sub(&x, &d).unwrap());
        assert!(is_sub(&t, &x).unwrap());
        assert!(!is_sub(&x, &t).unwrap());
        assert!(is_sub(&x, &x).unwrap());

        let other = ProbSpace::uniform(&["a", "b"]).unwrap();
        let y = SigmaField::trivial(&other);
        assert_eq!(is_sub(&x, &y), Err(Error::SpaceMismatch));
    }
}
