//! A catalog of concrete named instances: each entry bundles a space,
//! named fields, and a list of machine-checkable facts that pin the
//! entry's interesting behavior as regression tests.
//!
//! Sign spaces use outcome labels like `"+-+"` (one character per
//! coordinate), enumerated lexicographically with `+` before `-`, so
//! entries render identically across runs.

use crate::complements::{
    complements_ii_check, enumerate_complements, innovation_check, two_sided_check,
};
use crate::condexp::{commutes, measurable_wrt, Vector};
use crate::error::{Error, Result};
use crate::lattice::{independent, independent_family, join, join_many, meet, plus};
use crate::laws::dist_ii_check_chain;
use crate::rational::rat;
use crate::sigma::{is_sub, SigmaField};
use crate::space::{ProbSpace, ProductSpace, RandomVariable, SpaceRef};

pub const CATALOG_IDS: [&str; 10] = [
    "dist-fail",
    "warning-4-12",
    "no-complement",
    "non-unique",
    "vanishing",
    "commute-fail",
    "tweak-discrete",
    "nudge",
    "complements-ii-a",
    "complements-ii-c",
];

/// Largest level for the sign-sequence entries (space size 2^(level+1)).
pub const MAX_LEVEL: usize = 12;

/// Which entries take a level parameter.
pub fn is_leveled(id: &str) -> bool {
    matches!(id, "warning-4-12" | "vanishing")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldExpr {
    Named(String),
    Trivial,
    Discrete,
    Meet(Box<FieldExpr>, Box<FieldExpr>),
    Join(Box<FieldExpr>, Box<FieldExpr>),
}

impl FieldExpr {
    pub fn named(name: impl Into<String>) -> FieldExpr {
        FieldExpr::Named(name.into())
    }

    pub fn meet(a: FieldExpr, b: FieldExpr) -> FieldExpr {
        FieldExpr::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: FieldExpr, b: FieldExpr) -> FieldExpr {
        FieldExpr::Join(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, entry: &CatalogEntry) -> Result<SigmaField> {
        Ok(match self {
            FieldExpr::Named(name) => entry.field(name)?.clone(),
            FieldExpr::Trivial => SigmaField::trivial(&entry.space),
            FieldExpr::Discrete => SigmaField::discrete(&entry.space),
            FieldExpr::Meet(a, b) => meet(&a.eval(entry)?, &b.eval(entry)?)?,
            FieldExpr::Join(a, b) => join(&a.eval(entry)?, &b.eval(entry)?)?,
        })
    }

    pub fn render(&self) -> String {
        match self {
            FieldExpr::Named(name) => name.clone(),
            FieldExpr::Trivial => "0".into(),
            FieldExpr::Discrete => "discrete".into(),
            FieldExpr::Meet(a, b) => format!("meet({},{})", a.render(), b.render()),
            FieldExpr::Join(a, b) => format!("join({},{})", a.render(), b.render()),
        }
    }
}

/// One expected, machine-checkable assertion about an entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fact {
    FieldsEqual(FieldExpr, FieldExpr),
    FieldsDiffer(FieldExpr, FieldExpr),
    BlockCount(FieldExpr, usize),
    IsSub(FieldExpr, FieldExpr),
    StrictSub(FieldExpr, FieldExpr),
    Independent(FieldExpr, FieldExpr, bool),
    IndependentFamily(Vec<FieldExpr>, bool),
    /// Two atoms, each of probability one half.
    EquiprobableSign(FieldExpr),
    /// `plus(a, b)` is defined and equals the third expression.
    PlusEquals(FieldExpr, FieldExpr, FieldExpr),
    /// `enumerate_complements(of, ambient)` returns exactly this list.
    ComplementsAre(FieldExpr, FieldExpr, Vec<FieldExpr>),
    Commutes(FieldExpr, FieldExpr, bool),
    /// The named random variable is/is not measurable for the field.
    Measurable(String, FieldExpr, bool),
    /// Both sides of the splitting equivalence have the expected values.
    ComplementsIi {
        x: FieldExpr,
        y: FieldExpr,
        z: FieldExpr,
        expect_i: bool,
        expect_ii: bool,
    },
    /// Every two-sided condition (a)-(e) evaluates to `expect`.
    TwoSidedAll {
        a: FieldExpr,
        b: FieldExpr,
        a_prime: FieldExpr,
        b_prime: FieldExpr,
        x: FieldExpr,
        y: FieldExpr,
        expect: bool,
    },
    /// The innovation checks (defining sums, meet identity, expansion)
    /// all pass for the named sequences.
    Innovation {
        f: Vec<FieldExpr>,
        g: Vec<FieldExpr>,
        h: Vec<FieldExpr>,
    },
    /// The chain law reports exactly these hypothesis/conclusion values.
    ChainLaw {
        chain: Vec<FieldExpr>,
        y: FieldExpr,
        expect_hyp: bool,
        expect_concl: bool,
    },
}

impl Fact {
    pub fn describe(&self) -> String {
        match self {
            Fact::FieldsEqual(a, b) => format!("{} == {}", a.render(), b.render()),
            Fact::FieldsDiffer(a, b) => format!("{} != {}", a.render(), b.render()),
            Fact::BlockCount(a, n) => format!("{} has {n} atoms", a.render()),
            Fact::IsSub(a, b) => format!("{} <= {}", a.render(), b.render()),
            Fact::StrictSub(a, b) => format!("{} < {}", a.render(), b.render()),
            Fact::Independent(a, b, e) => {
                format!("independent({},{}) == {e}", a.render(), b.render())
            }
            Fact::IndependentFamily(fs, e) => format!(
                "independent_family({}) == {e}",
                fs.iter().map(FieldExpr::render).collect::<Vec<_>>().join(",")
            ),
            Fact::EquiprobableSign(a) => format!("{} is an equiprobable sign", a.render()),
            Fact::PlusEquals(a, b, c) => {
                format!("plus({},{}) == {}", a.render(), b.render(), c.render())
            }
            Fact::ComplementsAre(x, z, ys) => format!(
                "complements of {} in {} == [{}]",
                x.render(),
                z.render(),
                ys.iter().map(FieldExpr::render).collect::<Vec<_>>().join(",")
            ),
            Fact::Commutes(a, b, e) => format!("commutes({},{}) == {e}", a.render(), b.render()),
            Fact::Measurable(rv, a, e) => format!("measurable({rv},{}) == {e}", a.render()),
            Fact::ComplementsIi {
                x,
                y,
                z,
                expect_i,
                expect_ii,
            } => format!(
                "splitting equivalence on ({},{},{}): i == {expect_i}, ii == {expect_ii}",
                x.render(),
                y.render(),
                z.render()
            ),
            Fact::TwoSidedAll { expect, .. } => {
                format!("two-sided conditions (a)-(e) all == {expect}")
            }
            Fact::Innovation { h, .. } => {
                format!("innovation checks pass at horizon {}", h.len())
            }
            Fact::ChainLaw {
                expect_hyp,
                expect_concl,
                ..
            } => format!("chain law: hypotheses == {expect_hyp}, conclusion == {expect_concl}"),
        }
    }

    pub fn check(&self, entry: &CatalogEntry) -> Result<bool> {
        Ok(match self {
            Fact::FieldsEqual(a, b) => a.eval(entry)? == b.eval(entry)?,
            Fact::FieldsDiffer(a, b) => a.eval(entry)? != b.eval(entry)?,
            Fact::BlockCount(a, n) => a.eval(entry)?.block_count() == *n,
            Fact::IsSub(a, b) => is_sub(&a.eval(entry)?, &b.eval(entry)?)?,
            Fact::StrictSub(a, b) => {
                let (fa, fb) = (a.eval(entry)?, b.eval(entry)?);
                fa != fb && is_sub(&fa, &fb)?
            }
            Fact::Independent(a, b, e) => independent(&a.eval(entry)?, &b.eval(entry)?)? == *e,
            Fact::IndependentFamily(fs, e) => {
                let fields: Vec<SigmaField> =
                    fs.iter().map(|f| f.eval(entry)).collect::<Result<_>>()?;
                independent_family(&fields)? == *e
            }
            Fact::EquiprobableSign(a) => {
                let f = a.eval(entry)?;
                let half = rat(1, 2);
                f.block_count() == 2 && f.block_prob(0) == &half && f.block_prob(1) == &half
            }
            Fact::PlusEquals(a, b, c) => match plus(&a.eval(entry)?, &b.eval(entry)?) {
                Ok(sum) => sum == c.eval(entry)?,
                Err(Error::NotIndependent) => false,
                Err(e) => return Err(e),
            },
            Fact::ComplementsAre(x, z, ys) => {
                let report = enumerate_complements(&x.eval(entry)?, &z.eval(entry)?)?;
                let expect: Vec<SigmaField> =
                    ys.iter().map(|f| f.eval(entry)).collect::<Result<_>>()?;
                report.complements == expect
            }
            Fact::Commutes(a, b, e) => commutes(&a.eval(entry)?, &b.eval(entry)?)? == *e,
            Fact::Measurable(rv, a, e) => {
                let v = Vector::from_rv(entry.rv(rv)?)?;
                measurable_wrt(&v, &a.eval(entry)?) == *e
            }
            Fact::ComplementsIi {
                x,
                y,
                z,
                expect_i,
                expect_ii,
            } => {
                let r = complements_ii_check(&x.eval(entry)?, &y.eval(entry)?, &z.eval(entry)?)?;
                let i = r.detail_named("i-z-splits");
                let ii = r.detail_named("ii-cond-independent") == Some(true)
                    && r.detail_named("ii-x-probs-measurable") == Some(true)
                    && r.detail_named("ii-y-probs-measurable") == Some(true);
                i == Some(*expect_i) && ii == *expect_ii && r.conclusion == Some(true)
            }
            Fact::TwoSidedAll {
                a,
                b,
                a_prime,
                b_prime,
                x,
                y,
                expect,
            } => {
                let r = two_sided_check(
                    &a.eval(entry)?,
                    &b.eval(entry)?,
                    &a_prime.eval(entry)?,
                    &b_prime.eval(entry)?,
                    Some(&x.eval(entry)?),
                    Some(&y.eval(entry)?),
                )?;
                r.conditions().into_iter().all(|(_, v)| v == Some(*expect))
                    && r.equivalent == Some(true)
            }
            Fact::Innovation { f, g, h } => {
                let fe: Vec<SigmaField> = f.iter().map(|x| x.eval(entry)).collect::<Result<_>>()?;
                let ge: Vec<SigmaField> = g.iter().map(|x| x.eval(entry)).collect::<Result<_>>()?;
                let he: Vec<SigmaField> = h.iter().map(|x| x.eval(entry)).collect::<Result<_>>()?;
                match innovation_check(&fe, &ge, &he) {
                    Ok(r) => r.innovates() && r.conclusion(),
                    Err(Error::PreconditionFailed(_)) | Err(Error::NotIndependent) => false,
                    Err(e) => return Err(e),
                }
            }
            Fact::ChainLaw {
                chain,
                y,
                expect_hyp,
                expect_concl,
            } => {
                let ce: Vec<SigmaField> =
                    chain.iter().map(|x| x.eval(entry)).collect::<Result<_>>()?;
                let r = dist_ii_check_chain(&ce, &y.eval(entry)?)?;
                r.hypotheses_hold() == *expect_hyp && r.conclusion == Some(*expect_concl)
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct FactResult {
    pub description: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub level: Option<usize>,
    pub space: SpaceRef,
    /// Named fields, in a stable order.
    pub fields: Vec<(String, SigmaField)>,
    /// Named random variables used by facts and emission.
    pub rvs: Vec<(String, RandomVariable)>,
    pub facts: Vec<Fact>,
}

impl CatalogEntry {
    pub fn field(&self, name: &str) -> Result<&SigmaField> {
        self.fields
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| Error::UnknownLabel(name.into()))
    }

    pub fn rv(&self, name: &str) -> Result<&RandomVariable> {
        self.rvs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
            .ok_or_else(|| Error::UnknownLabel(name.into()))
    }

    pub fn run_facts(&self) -> Result<Vec<FactResult>> {
        self.facts
            .iter()
            .map(|fact| {
                Ok(FactResult {
                    description: fact.describe(),
                    pass: fact.check(self)?,
                })
            })
            .collect()
    }

    pub fn facts_pass(&self) -> Result<bool> {
        Ok(self.run_facts()?.iter().all(|r| r.pass))
    }
}

/// Uniform space of sign vectors of length `m`; labels like "+-+",
/// lexicographic with '+' first.
pub fn sign_space(m: usize) -> SpaceRef {
    let n = 1usize << m;
    let labels: Vec<String> = (0..n)
        .map(|i| {
            (0..m)
                .map(|c| {
                    if i & (1 << (m - 1 - c)) == 0 {
                        '+'
                    } else {
                        '-'
                    }
                })
                .collect()
        })
        .collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    ProbSpace::uniform(&refs).unwrap()
}

/// The sign at 1-based coordinate `coord` of outcome `i`.
fn sign_at(i: usize, m: usize, coord: usize) -> i64 {
    if i & (1 << (m - coord)) == 0 {
        1
    } else {
        -1
    }
}

/// The random variable `prod of signs at coords` on a sign space.
pub fn sign_product_rv(space: &SpaceRef, m: usize, coords: &[usize]) -> RandomVariable {
    let values: Vec<i64> = (0..space.len())
        .map(|i| coords.iter().map(|&c| sign_at(i, m, c)).product())
        .collect();
    RandomVariable::from_ints(space, &values).unwrap()
}

/// The field generated by the listed sign products; each inner slice is
/// one generating product.
fn sign_sigma(space: &SpaceRef, m: usize, generators: &[&[usize]]) -> SigmaField {
    if generators.is_empty() {
        return SigmaField::trivial(space);
    }
    let fields: Vec<SigmaField> = generators
        .iter()
        .map(|coords| SigmaField::from_rv(&sign_product_rv(space, m, coords)))
        .collect();
    join_many(space, &fields).unwrap()
}

fn leveled(id: &str, level: Option<usize>) -> Result<usize> {
    let n = level.unwrap_or(1);
    if n == 0 {
        return Err(Error::PreconditionFailed(format!(
            "example {id} needs a level of at least 1"
        )));
    }
    if n > MAX_LEVEL {
        return Err(Error::LevelTooLarge {
            id: id.into(),
            level: n,
            max: MAX_LEVEL,
        });
    }
    Ok(n)
}

/// Builds the catalog entry for `id`; `level` applies to the
/// sign-sequence entries only and defaults to 1.
pub fn catalog(id: &str, level: Option<usize>) -> Result<CatalogEntry> {
    match id {
        "dist-fail" => Ok(dist_fail()),
        "warning-4-12" => warning_4_12(leveled(id, level)?),
        "no-complement" => Ok(no_complement()),
        "non-unique" => Ok(non_unique()),
        "vanishing" => vanishing(leveled(id, level)?),
        "commute-fail" => Ok(commute_fail()),
        "tweak-discrete" => Ok(tweak_discrete()),
        "nudge" => Ok(nudge()),
        "complements-ii-a" => Ok(complements_ii_a()),
        "complements-ii-c" => Ok(complements_ii_c()),
        other => Err(Error::UnknownExample(other.into())),
    }
}

/// Two independent coins; the three pairwise-independent fields generated
/// by the first coin, the product of the coins, and the second coin
/// witness the failure of meet-join distributivity.
fn dist_fail() -> CatalogEntry {
    let sp = sign_space(2);
    let x = sign_sigma(&sp, 2, &[&[1]]);
    let y = sign_sigma(&sp, 2, &[&[1, 2]]);
    let z = sign_sigma(&sp, 2, &[&[2]]);
    use FieldExpr as E;
    let xn = || E::named("X");
    let yn = || E::named("Y");
    let zn = || E::named("Z");
    let lhs = || E::meet(E::join(xn(), zn()), E::join(yn(), zn()));
    let rhs = || E::join(E::meet(xn(), yn()), zn());
    let facts = vec![
        Fact::Independent(xn(), yn(), true),
        Fact::Independent(xn(), zn(), true),
        Fact::Independent(yn(), zn(), true),
        Fact::IndependentFamily(vec![xn(), yn(), zn()], false),
        Fact::FieldsEqual(lhs(), E::Discrete),
        Fact::BlockCount(lhs(), 4),
        Fact::FieldsEqual(rhs(), zn()),
        Fact::BlockCount(rhs(), 2),
        Fact::FieldsDiffer(lhs(), rhs()),
    ];
    CatalogEntry {
        id: "dist-fail".into(),
        level: None,
        space: sp,
        fields: vec![("X".into(), x), ("Y".into(), y), ("Z".into(), z)],
        rvs: Vec::new(),
        facts,
    }
}

/// Truncation at depth `n` of the running-products construction: signs
/// s0..sn, partial products X_k = s0*..*sk, the tail fields
/// XF_k = sigma(X_k..X_n), and Y = sigma(s1..sn). The products are again
/// independent equiprobable signs; the tail chain is strictly decreasing;
/// s0 is independent of Y. On the finite chain the meet-join exchange
/// holds even though its independence hypothesis fails for n >= 2.
fn warning_4_12(n: usize) -> Result<CatalogEntry> {
    let m = n + 1; // coordinates: s_{k-1} is coordinate k
    let sp = sign_space(m);
    let mut fields: Vec<(String, SigmaField)> = Vec::new();
    fields.push(("Y0".into(), sign_sigma(&sp, m, &[&[1]])));
    let y_coords: Vec<Vec<usize>> = (2..=m).map(|c| vec![c]).collect();
    let y_refs: Vec<&[usize]> = y_coords.iter().map(Vec::as_slice).collect();
    fields.push(("Y".into(), sign_sigma(&sp, m, &y_refs)));
    for k in 1..=n {
        // X_k = s0 * ... * sk corresponds to coordinates 1..=k+1
        let coords: Vec<usize> = (1..=k + 1).collect();
        fields.push((format!("sX{k}"), sign_sigma(&sp, m, &[&coords])));
    }
    for k in 1..=n {
        let gens: Vec<Vec<usize>> = (k..=n).map(|j| (1..=j + 1).collect()).collect();
        let refs: Vec<&[usize]> = gens.iter().map(Vec::as_slice).collect();
        fields.push((format!("XF{k}"), sign_sigma(&sp, m, &refs)));
    }

    use FieldExpr as E;
    let mut facts = vec![Fact::IndependentFamily(
        (1..=n).map(|k| E::named(format!("sX{k}"))).collect(),
        true,
    )];
    for k in 1..=n {
        facts.push(Fact::EquiprobableSign(E::named(format!("sX{k}"))));
    }
    for k in 1..n {
        facts.push(Fact::StrictSub(
            E::named(format!("XF{}", k + 1)),
            E::named(format!("XF{k}")),
        ));
    }
    facts.push(Fact::Independent(E::named("Y0"), E::named("Y"), true));
    // the finite content of the warning: s0 is measurable for every
    // XF_k v Y, hence for their meet
    let mut meet_expr = E::join(E::named("XF1"), E::named("Y"));
    for k in 2..=n {
        meet_expr = E::meet(meet_expr, E::join(E::named(format!("XF{k}")), E::named("Y")));
    }
    facts.push(Fact::IsSub(E::named("Y0"), meet_expr));
    // chain meet = the last element, which is nontrivial at finite depth
    let mut chain_meet = E::named("XF1");
    for k in 2..=n {
        chain_meet = E::meet(chain_meet, E::named(format!("XF{k}")));
    }
    facts.push(Fact::FieldsEqual(chain_meet, E::named(format!("XF{n}"))));
    facts.push(Fact::ChainLaw {
        chain: (1..=n).map(|k| E::named(format!("XF{k}"))).collect(),
        y: E::named("Y"),
        expect_hyp: n == 1,
        expect_concl: true,
    });

    Ok(CatalogEntry {
        id: "warning-4-12".into(),
        level: Some(n),
        space: sp,
        fields,
        rvs: Vec::new(),
        facts,
    })
}

/// The three-outcome event on two coins whose field has no independent
/// complement in the discrete field.
fn no_complement() -> CatalogEntry {
    let sp = sign_space(2);
    let x = SigmaField::from_blocks(&sp, &[vec![0, 1, 2], vec![3]]).unwrap();
    use FieldExpr as E;
    let facts = vec![
        Fact::BlockCount(E::named("X"), 2),
        Fact::ComplementsAre(E::named("X"), E::Discrete, vec![]),
    ];
    CatalogEntry {
        id: "no-complement".into(),
        level: None,
        space: sp,
        fields: vec![("X".into(), x)],
        rvs: Vec::new(),
        facts,
    }
}

/// The first coin has exactly two complements in the discrete field of
/// two coins: the second coin and the product of the coins.
fn non_unique() -> CatalogEntry {
    let sp = sign_space(2);
    let x = sign_sigma(&sp, 2, &[&[1]]);
    let s2 = sign_sigma(&sp, 2, &[&[2]]);
    let s12 = sign_sigma(&sp, 2, &[&[1, 2]]);
    use FieldExpr as E;
    let facts = vec![
        Fact::PlusEquals(E::named("X"), E::named("S2"), E::Discrete),
        Fact::PlusEquals(E::named("X"), E::named("S12"), E::Discrete),
        Fact::ComplementsAre(
            E::named("X"),
            E::Discrete,
            vec![E::named("S2"), E::named("S12")],
        ),
    ];
    CatalogEntry {
        id: "non-unique".into(),
        level: None,
        space: sp,
        fields: vec![("X".into(), x), ("S2".into(), s2), ("S12".into(), s12)],
        rvs: Vec::new(),
        facts,
    }
}

/// Truncation at horizon `n` of the vanishing-information chain: signs
/// x1..x_{n+1}; G_k generated by the first k adjacent products, F_k by the
/// tail signs, H_k by the k-th adjacent product. Every G_k + F_k fills the
/// space, H innovates (F, G), and the first sign stays independent of G_n.
fn vanishing(n: usize) -> Result<CatalogEntry> {
    let m = n + 1;
    let sp = sign_space(m);
    let mut fields: Vec<(String, SigmaField)> = Vec::new();
    for k in 0..=n {
        let gens: Vec<Vec<usize>> = (1..=k).map(|j| vec![j, j + 1]).collect();
        let refs: Vec<&[usize]> = gens.iter().map(Vec::as_slice).collect();
        fields.push((format!("G{k}"), sign_sigma(&sp, m, &refs)));
    }
    for k in 0..=n {
        let gens: Vec<Vec<usize>> = (k + 1..=m).map(|c| vec![c]).collect();
        let refs: Vec<&[usize]> = gens.iter().map(Vec::as_slice).collect();
        fields.push((format!("F{k}"), sign_sigma(&sp, m, &refs)));
    }
    for k in 1..=n {
        fields.push((format!("H{k}"), sign_sigma(&sp, m, &[&[k, k + 1]])));
    }
    fields.push(("S1".into(), sign_sigma(&sp, m, &[&[1]])));

    use FieldExpr as E;
    let mut facts = Vec::new();
    for k in 0..=n {
        facts.push(Fact::PlusEquals(
            E::named(format!("G{k}")),
            E::named(format!("F{k}")),
            E::Discrete,
        ));
    }
    for k in 1..=n {
        facts.push(Fact::FieldsEqual(
            E::meet(E::named(format!("G{k}")), E::named(format!("F{}", k - 1))),
            E::named(format!("H{k}")),
        ));
    }
    facts.push(Fact::Innovation {
        f: (0..=n).map(|k| E::named(format!("F{k}"))).collect(),
        g: (0..=n).map(|k| E::named(format!("G{k}"))).collect(),
        h: (1..=n).map(|k| E::named(format!("H{k}"))).collect(),
    });
    facts.push(Fact::Independent(
        E::named("S1"),
        E::named(format!("G{n}")),
        true,
    ));
    facts.push(Fact::FieldsEqual(
        E::join(E::named(format!("G{n}")), E::named("S1")),
        E::Discrete,
    ));

    Ok(CatalogEntry {
        id: "vanishing".into(),
        level: Some(n),
        space: sp,
        fields,
        rvs: Vec::new(),
        facts,
    })
}

/// A dependent pair with trivial meet: the singleton event "both coins
/// up" against the first coin. Their operators do not commute.
fn commute_fail() -> CatalogEntry {
    let sp = sign_space(2);
    let x = SigmaField::from_blocks(&sp, &[vec![0], vec![1, 2, 3]]).unwrap();
    let y = sign_sigma(&sp, 2, &[&[1]]);
    use FieldExpr as E;
    let facts = vec![
        Fact::FieldsEqual(E::meet(E::named("X"), E::named("Y")), E::Trivial),
        Fact::Independent(E::named("X"), E::named("Y"), false),
        Fact::Commutes(E::named("X"), E::named("Y"), false),
    ];
    CatalogEntry {
        id: "commute-fail".into(),
        level: None,
        space: sp,
        fields: vec![("X".into(), x), ("Y".into(), y)],
        rvs: Vec::new(),
        facts,
    }
}

/// Four coins; A reads the first two, B the last two, and X is generated
/// by s1*s3 + s2*s4. Then (X v A) ^ B collapses to sigma(s3*s4), and the
/// generator of X is not measurable for A v sigma(s3*s4).
fn tweak_discrete() -> CatalogEntry {
    let m = 4;
    let sp = sign_space(m);
    let a = sign_sigma(&sp, m, &[&[1], &[2]]);
    let b = sign_sigma(&sp, m, &[&[3], &[4]]);
    let w_values: Vec<i64> = (0..sp.len())
        .map(|i| sign_at(i, m, 1) * sign_at(i, m, 3) + sign_at(i, m, 2) * sign_at(i, m, 4))
        .collect();
    let w = RandomVariable::from_ints(&sp, &w_values).unwrap();
    let x = SigmaField::from_rv(&w);
    let s34 = sign_sigma(&sp, m, &[&[3, 4]]);
    use FieldExpr as E;
    let facts = vec![
        Fact::BlockCount(E::named("X"), 3),
        Fact::FieldsEqual(
            E::meet(E::join(E::named("X"), E::named("A")), E::named("B")),
            E::named("S34"),
        ),
        Fact::Measurable("W".into(), E::join(E::named("A"), E::named("S34")), false),
    ];
    CatalogEntry {
        id: "tweak-discrete".into(),
        level: None,
        space: sp,
        fields: vec![
            ("A".into(), a),
            ("B".into(), b),
            ("X".into(), x),
            ("S34".into(), s34),
        ],
        rvs: vec![("W".into(), w)],
        facts,
    }
}

/// Three coins; A and B' read single coins, and B' is completed to B by a
/// mixed event. Both sums fill the space, yet the two-sided candidate
/// meet(A', B) is trivial and every two-sided condition fails.
fn nudge() -> CatalogEntry {
    let m = 3;
    let sp = sign_space(m);
    let a = sign_sigma(&sp, m, &[&[1]]);
    let b_prime = sign_sigma(&sp, m, &[&[2]]);
    let x = sign_sigma(&sp, m, &[&[3]]);
    // E = {s1 = s3 = +} union {s1 = -, s2*s3 = -}
    let members: Vec<usize> = (0..sp.len())
        .filter(|&i| {
            let (s1, s2, s3) = (sign_at(i, m, 1), sign_at(i, m, 2), sign_at(i, m, 3));
            (s1 == 1 && s3 == 1) || (s1 == -1 && s2 * s3 == -1)
        })
        .collect();
    let rest: Vec<usize> = (0..sp.len()).filter(|i| !members.contains(i)).collect();
    let y = SigmaField::from_blocks(&sp, &[members, rest]).unwrap();
    let a_prime = join(&a, &x).unwrap();
    let b = join(&b_prime, &y).unwrap();
    use FieldExpr as E;
    let facts = vec![
        Fact::PlusEquals(E::named("A"), E::named("X"), E::named("Ap")),
        Fact::PlusEquals(E::named("Bp"), E::named("Yf"), E::named("B")),
        Fact::PlusEquals(E::named("A"), E::named("B"), E::Discrete),
        Fact::PlusEquals(E::named("Ap"), E::named("Bp"), E::Discrete),
        Fact::FieldsEqual(E::meet(E::named("Ap"), E::named("B")), E::Trivial),
        Fact::TwoSidedAll {
            a: E::named("A"),
            b: E::named("B"),
            a_prime: E::named("Ap"),
            b_prime: E::named("Bp"),
            x: E::named("X"),
            y: E::named("Yf"),
            expect: false,
        },
    ];
    CatalogEntry {
        id: "nudge".into(),
        level: None,
        space: sp,
        fields: vec![
            ("A".into(), a),
            ("Bp".into(), b_prime),
            ("X".into(), x),
            ("Yf".into(), y),
            ("Ap".into(), a_prime),
            ("B".into(), b),
        ],
        rvs: Vec::new(),
        facts,
    }
}

/// Four independent factors A, B, C, D; X = A + B, Y = C + D and
/// Z = B + C satisfy both sides of the splitting equivalence.
fn complements_ii_a() -> CatalogEntry {
    let factors: Vec<SpaceRef> = ["a", "b", "c", "d"]
        .iter()
        .map(|t| ProbSpace::uniform(&[format!("{t}+"), format!("{t}-")]).unwrap())
        .collect();
    let prod = ProductSpace::new(&factors).unwrap();
    let lift =
        |k: usize| prod.lift_sigma(k, &SigmaField::discrete(&prod.factors()[k].clone())).unwrap();
    let (a, b, c, d) = (lift(0), lift(1), lift(2), lift(3));
    let sp = prod.space().clone();
    let x = join(&a, &b).unwrap();
    let y = join(&c, &d).unwrap();
    let z = join(&b, &c).unwrap();
    use FieldExpr as E;
    let facts = vec![
        Fact::IndependentFamily(
            vec![E::named("A"), E::named("B"), E::named("C"), E::named("D")],
            true,
        ),
        Fact::Independent(E::named("X"), E::named("Y"), true),
        Fact::IsSub(E::named("Z"), E::join(E::named("X"), E::named("Y"))),
        Fact::FieldsEqual(
            E::join(
                E::meet(E::named("X"), E::named("Z")),
                E::meet(E::named("Y"), E::named("Z")),
            ),
            E::named("Z"),
        ),
        Fact::ComplementsIi {
            x: E::named("X"),
            y: E::named("Y"),
            z: E::named("Z"),
            expect_i: true,
            expect_ii: true,
        },
    ];
    CatalogEntry {
        id: "complements-ii-a".into(),
        level: None,
        space: sp,
        fields: vec![
            ("A".into(), a),
            ("B".into(), b),
            ("C".into(), c),
            ("D".into(), d),
            ("X".into(), x),
            ("Y".into(), y),
            ("Z".into(), z),
        ],
        rvs: Vec::new(),
        facts,
    }
}

/// Four coins; X refines the first coin by the event "first two coins
/// up", Y does the same on the other pair, Z reads coins 1 and 3. The
/// splitting equivalence holds even though meet(Z, X) = sigma(s1) has no
/// complement inside X.
fn complements_ii_c() -> CatalogEntry {
    let m = 4;
    let sp = sign_space(m);
    let s1 = sign_sigma(&sp, m, &[&[1]]);
    let s3 = sign_sigma(&sp, m, &[&[3]]);
    let block = |pred: &dyn Fn(usize) -> bool| -> Vec<usize> {
        (0..sp.len()).filter(|&i| pred(i)).collect()
    };
    let x = SigmaField::from_blocks(
        &sp,
        &[
            block(&|i| sign_at(i, m, 1) == 1 && sign_at(i, m, 2) == 1),
            block(&|i| sign_at(i, m, 1) == 1 && sign_at(i, m, 2) == -1),
            block(&|i| sign_at(i, m, 1) == -1),
        ],
    )
    .unwrap();
    let y = SigmaField::from_blocks(
        &sp,
        &[
            block(&|i| sign_at(i, m, 3) == 1 && sign_at(i, m, 4) == 1),
            block(&|i| sign_at(i, m, 3) == 1 && sign_at(i, m, 4) == -1),
            block(&|i| sign_at(i, m, 3) == -1),
        ],
    )
    .unwrap();
    let z = sign_sigma(&sp, m, &[&[1], &[3]]);
    use FieldExpr as E;
    let facts = vec![
        Fact::Independent(E::named("X"), E::named("Y"), true),
        Fact::IsSub(E::named("Z"), E::join(E::named("X"), E::named("Y"))),
        Fact::FieldsEqual(E::meet(E::named("Z"), E::named("X")), E::named("S1")),
        Fact::FieldsEqual(E::meet(E::named("Z"), E::named("Y")), E::named("S3")),
        Fact::ComplementsAre(E::named("S1"), E::named("X"), vec![]),
        Fact::ComplementsAre(E::named("S3"), E::named("Y"), vec![]),
        Fact::ComplementsIi {
            x: E::named("X"),
            y: E::named("Y"),
            z: E::named("Z"),
            expect_i: true,
            expect_ii: true,
        },
    ];
    CatalogEntry {
        id: "complements-ii-c".into(),
        level: None,
        space: sp,
        fields: vec![
            ("X".into(), x),
            ("Y".into(), y),
            ("Z".into(), z),
            ("S1".into(), s1),
            ("S3".into(), s3),
        ],
        rvs: Vec::new(),
        facts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_passes_its_facts() {
        for id in CATALOG_IDS {
            let entry = catalog(id, None).unwrap();
            for fr in entry.run_facts().unwrap() {
                assert!(fr.pass, "{id}: fact failed: {}", fr.description);
            }
        }
    }

    #[test]
    fn leveled_entries_pass_at_small_levels() {
        for id in ["warning-4-12", "vanishing"] {
            for n in 1..=4 {
                let entry = catalog(id, Some(n)).unwrap();
                assert!(entry.facts_pass().unwrap(), "{id} at level {n}");
            }
        }
    }

    #[test]
    fn unknown_and_oversized() {
        assert!(matches!(
            catalog("nope", None),
            Err(Error::UnknownExample(_))
        ));
        assert!(matches!(
            catalog("vanishing", Some(13)),
            Err(Error::LevelTooLarge { .. })
        ));
        assert!(matches!(
            catalog("vanishing", Some(0)),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn sign_space_layout() {
        let sp = sign_space(2);
        assert_eq!(sp.labels(), &["++", "+-", "-+", "--"]);
        assert_eq!(sp.weight(0), &rat(1, 4));
        assert_eq!(sign_at(0, 2, 1), 1);
        assert_eq!(sign_at(3, 2, 2), -1);
    }

    #[test]
    fn dist_fail_shape() {
        let e = catalog("dist-fail", None).unwrap();
        let x = e.field("X").unwrap();
        let z = e.field("Z").unwrap();
        assert_eq!(x.render(), "{++,+-}{-+,--}");
        assert_eq!(z.render(), "{++,-+}{+-,--}");
    }

    #[test]
    fn vanishing_h_is_adjacent_product() {
        let e = catalog("vanishing", Some(3)).unwrap();
        let h2 = e.field("H2").unwrap();
        let g2 = e.field("G2").unwrap();
        let f1 = e.field("F1").unwrap();
        assert_eq!(&meet(g2, f1).unwrap(), h2);
    }
}
