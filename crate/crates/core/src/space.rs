//! Finite probability spaces, events, random variables and products.
//!
//! Outcomes may carry weight zero. Such null outcomes exist only as labels:
//! sigma-fields are partitions of the *support*, so a null outcome never
//! influences any construction or comparison. The support is never empty
//! because the weights must sum to one.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::sigma::SigmaField;

pub type SpaceRef = Arc<ProbSpace>;

#[derive(Debug, Clone)]
pub struct ProbSpace {
    labels: Vec<String>,
    weights: Vec<Rational>,
    support: Vec<usize>,
    support_pos: Vec<Option<usize>>,
    index: HashMap<String, usize>,
}

impl PartialEq for ProbSpace {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.weights == other.weights
    }
}

impl Eq for ProbSpace {}

impl ProbSpace {
    /// Builds a space from labelled outcomes and exact weights. Weights must
    /// be nonnegative and sum to exactly one; labels must be distinct.
    pub fn new<S: Into<String>>(labels: Vec<S>, weights: Vec<Rational>) -> Result<SpaceRef> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != weights.len() {
            return Err(Error::PreconditionFailed(format!(
                "{} labels but {} weights",
                labels.len(),
                weights.len()
            )));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for (l, w) in labels.iter().zip(&weights) {
            if w.is_negative() {
                return Err(Error::NegativeWeight {
                    label: l.clone(),
                    weight: w.clone(),
                });
            }
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::NonUnitMass(total));
        }
        let support: Vec<usize> = (0..weights.len())
            .filter(|&i| weights[i].is_positive())
            .collect();
        let mut support_pos = vec![None; weights.len()];
        for (p, &i) in support.iter().enumerate() {
            support_pos[i] = Some(p);
        }
        Ok(Arc::new(ProbSpace {
            labels,
            weights,
            support,
            support_pos,
            index,
        }))
    }

    /// Equal weights on the given labels.
    pub fn uniform<S: Into<String> + Clone>(labels: &[S]) -> Result<SpaceRef> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NonUnitMass(Rational::zero()));
        }
        let w = Rational::new(1.into(), (n as i64).into());
        ProbSpace::new(labels.to_vec(), vec![w; n])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, outcome: usize) -> &str {
        &self.labels[outcome]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weight(&self, outcome: usize) -> &Rational {
        &self.weights[outcome]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Outcome indices with positive weight, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    /// Position of an outcome within the support ordering, if it has mass.
    pub fn support_pos(&self, outcome: usize) -> Option<usize> {
        self.support_pos.get(outcome).copied().flatten()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn prob_of(&self, outcomes: impl IntoIterator<Item = usize>) -> Rational {
        outcomes
            .into_iter()
            .map(|i| self.weights[i].clone())
            .sum()
    }
}

impl fmt::Display for ProbSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .labels
            .iter()
            .zip(&self.weights)
            .map(|(l, w)| format!("{l}:{}", format_rational(w)))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// A subset of the declared outcomes. Null outcomes are allowed as members;
/// they simply contribute no mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    space: SpaceRef,
    members: Vec<usize>,
}

impl Event {
    pub fn new(space: &SpaceRef, outcomes: &[usize]) -> Result<Event> {
        let mut members = outcomes.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&i| i >= space.len()) {
            return Err(Error::PreconditionFailed(format!(
                "outcome index {bad} out of range for a {}-outcome space",
                space.len()
            )));
        }
        Ok(Event {
            space: space.clone(),
            members,
        })
    }

    pub fn from_labels(space: &SpaceRef, labels: &[&str]) -> Result<Event> {
        let mut members = Vec::with_capacity(labels.len());
        for l in labels {
            match space.index_of(l) {
                Some(i) => members.push(i),
                None => return Err(Error::UnknownLabel(l.to_string())),
            }
        }
        Event::new(space, &members)
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, outcome: usize) -> bool {
        self.members.binary_search(&outcome).is_ok()
    }

    pub fn prob(&self) -> Rational {
        self.space.prob_of(self.members.iter().copied())
    }
}

/// A random variable assigns one value to every declared outcome. Values are
/// exact rationals or opaque labels; only the induced level sets matter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomVariable {
    space: SpaceRef,
    values: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Rat(Rational),
    Label(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rat(r) => write!(f, "{}", format_rational(r)),
            Value::Label(s) => write!(f, "{s}"),
        }
    }
}

impl RandomVariable {
    pub fn new(space: &SpaceRef, values: Vec<Value>) -> Result<RandomVariable> {
        if values.len() != space.len() {
            return Err(Error::PreconditionFailed(format!(
                "random variable has {} values for a {}-outcome space",
                values.len(),
                space.len()
            )));
        }
        Ok(RandomVariable {
            space: space.clone(),
            values,
        })
    }

    pub fn from_ints(space: &SpaceRef, values: &[i64]) -> Result<RandomVariable> {
        let values = values
            .iter()
            .map(|&v| Value::Rat(Rational::from_integer(v.into())))
            .collect();
        RandomVariable::new(space, values)
    }

    pub fn from_rationals(space: &SpaceRef, values: &[Rational]) -> Result<RandomVariable> {
        let values = values.iter().cloned().map(Value::Rat).collect();
        RandomVariable::new(space, values)
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn value(&self, outcome: usize) -> &Value {
        &self.values[outcome]
    }

    /// Rational values, or None if any value is a label.
    pub fn numeric_values(&self) -> Option<Vec<Rational>> {
        self.values
            .iter()
            .map(|v| match v {
                Value::Rat(r) => Some(r.clone()),
                Value::Label(_) => None,
            })
            .collect()
    }

    /// Pointwise product of numeric random variables.
    pub fn product_with(&self, other: &RandomVariable) -> Result<RandomVariable> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let (a, b) = match (self.numeric_values(), other.numeric_values()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::PreconditionFailed(
                    "product of label-valued random variables".into(),
                ))
            }
        };
        let values = a.iter().zip(&b).map(|(x, y)| Value::Rat(x * y)).collect();
        RandomVariable::new(&self.space, values)
    }
}

/// A product of finitely many spaces, remembering the coordinate maps so
/// factor-level objects can be lifted.
#[derive(Debug, Clone)]
pub struct ProductSpace {
    space: SpaceRef,
    factors: Vec<SpaceRef>,
    coords: Vec<Vec<usize>>,
}

impl ProductSpace {
    /// Cartesian product with product weights. Outcomes are enumerated with
    /// the first factor slowest; labels are tuples like `(a,b)`.
    pub fn new(factors: &[SpaceRef]) -> Result<ProductSpace> {
        if factors.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut labels: Vec<String> = vec![String::new()];
        let mut weights: Vec<Rational> = vec![Rational::one()];
        let mut coords: Vec<Vec<usize>> = vec![Vec::new()];
        for f in factors {
            let mut nl = Vec::with_capacity(labels.len() * f.len());
            let mut nw = Vec::with_capacity(labels.len() * f.len());
            let mut nc = Vec::with_capacity(labels.len() * f.len());
            for ((l, w), c) in labels.iter().zip(&weights).zip(&coords) {
                for j in 0..f.len() {
                    let sep = if l.is_empty() { "" } else { "," };
                    nl.push(format!("{l}{sep}{}", f.label(j)));
                    nw.push(w * f.weight(j));
                    let mut cc = c.clone();
                    cc.push(j);
                    nc.push(cc);
                }
            }
            labels = nl;
            weights = nw;
            coords = nc;
        }
        let labels: Vec<String> = labels.into_iter().map(|l| format!("({l})")).collect();
        let space = ProbSpace::new(labels, weights)?;
        Ok(ProductSpace {
            space,
            factors: factors.to_vec(),
            coords,
        })
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn factors(&self) -> &[SpaceRef] {
        &self.factors
    }

    /// Factor-coordinate of a product outcome.
    pub fn coord(&self, outcome: usize, factor: usize) -> usize {
        self.coords[outcome][factor]
    }

    /// Lifts a sigma-field on one factor to the product: blocks become
    /// cylinders over the factor blocks. Lifted fields from distinct factors
    /// are independent because the weights multiply.
    pub fn lift_sigma(&self, factor: usize, sf: &SigmaField) -> Result<SigmaField> {
        if sf.space() != &self.factors[factor] {
            return Err(Error::SpaceMismatch);
        }
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); sf.block_count()];
        for &o in self.space.support() {
            let fo = self.coords[o][factor];
            let b = sf
                .block_of(fo)
                .expect("positive product weight forces positive factor weight");
            blocks[b].push(o);
        }
        blocks.retain(|b| !b.is_empty());
        SigmaField::from_blocks(&self.space, &blocks)
    }

    /// Lifts a factor random variable by composing with the coordinate map.
    pub fn lift_rv(&self, factor: usize, rv: &RandomVariable) -> Result<RandomVariable> {
        if rv.space() != &self.factors[factor] {
            return Err(Error::SpaceMismatch);
        }
        let values = (0..self.space.len())
            .map(|o| rv.value(self.coords[o][factor]).clone())
            .collect();
        RandomVariable::new(&self.space, values)
    }
}

pub fn product(a: &SpaceRef, b: &SpaceRef) -> Result<ProductSpace> {
    ProductSpace::new(&[a.clone(), b.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn q4() -> SpaceRef {
        ProbSpace::uniform(&["++", "+-", "-+", "--"]).unwrap()
    }

    #[test]
    fn rejects_bad_mass() {
        let err = ProbSpace::new(vec!["a", "b"], vec![rat(1, 2), rat(1, 3)]).unwrap_err();
        assert_eq!(err, Error::NonUnitMass(rat(5, 6)));
    }

    #[test]
    fn rejects_negative_weight() {
        let err = ProbSpace::new(vec!["a", "b"], vec![rat(3, 2), rat(-1, 2)]).unwrap_err();
        assert!(matches!(err, Error::NegativeWeight { .. }));
    }

    #[test]
    fn rejects_duplicate_label() {
        let err = ProbSpace::new(vec!["a", "a"], vec![rat(1, 2), rat(1, 2)]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("a".into()));
    }

    #[test]
    fn support_skips_null_outcomes() {
        let sp = ProbSpace::new(
            vec!["a", "zero", "b"],
            vec![rat(1, 2), rat(0, 1), rat(1, 2)],
        )
        .unwrap();
        assert_eq!(sp.support(), &[0, 2]);
        assert_eq!(sp.support_pos(1), None);
        assert_eq!(sp.support_pos(2), Some(1));
    }

    #[test]
    fn event_probability() {
        let sp = q4();
        let e = Event::from_labels(&sp, &["++", "--"]).unwrap();
        assert_eq!(e.prob(), rat(1, 2));
        assert!(Event::from_labels(&sp, &["nope"]).is_err());
    }

    #[test]
    fn product_weights_multiply() {
        let a = ProbSpace::new(vec!["x", "y"], vec![rat(1, 3), rat(2, 3)]).unwrap();
        let b = ProbSpace::new(vec!["u", "v"], vec![rat(1, 4), rat(3, 4)]).unwrap();
        let p = product(&a, &b).unwrap();
        let sp = p.space();
        assert_eq!(sp.labels(), &["(x,u)", "(x,v)", "(y,u)", "(y,v)"]);
        assert_eq!(sp.weight(0), &rat(1, 12));
        assert_eq!(sp.weight(3), &rat(1, 2));
        assert_eq!(p.coord(2, 0), 1);
        assert_eq!(p.coord(2, 1), 0);
    }

    #[test]
    fn lifted_rv_reads_the_right_coordinate() {
        let a = q4();
        let b = ProbSpace::uniform(&["+", "-"]).unwrap();
        let p = product(&a, &b).unwrap();
        let rv = RandomVariable::from_ints(&b, &[1, -1]).unwrap();
        let lifted = p.lift_rv(1, &rv).unwrap();
        for o in 0..p.space().len() {
            let expect = if p.coord(o, 1) == 0 { 1 } else { -1 };
            assert_eq!(
                lifted.value(o),
                &Value::Rat(Rational::from_integer(expect.into()))
            );
        }
    }
}
