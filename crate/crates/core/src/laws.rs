//! Distributivity laws and related implications, each split into
//! hypothesis checks and a conclusion check, plus a registry of stable law
//! identifiers used by the search engine and the CLI.
//!
//! Every registered law is an implication that holds on finite spaces:
//! whenever a report's hypotheses all evaluate true, its conclusion must
//! be true. Checkers never assume the hypotheses — they evaluate both
//! sides regardless, so hypothesis-false instances can be inspected too.

use crate::complements::{complements_ii_report, innovation_report, two_sided_report};
use crate::condexp::{
    cond_independent, cond_independent_family, cond_prob, measurable_wrt,
    prop_independence_commutativity,
};
use crate::error::{Error, Result};
use crate::lattice::{independent, independent_family, join, join_many, meet, meet_many};
use crate::report::{fields_equal_witnessed, LawReport};
use crate::sigma::{is_sub, SigmaField};
use crate::space::SpaceRef;

/// Row bound for the subset-quantified hypothesis of `dist-v`.
pub const DIST_V_INDEX_CAP: usize = 6;

fn common_space<'a, I>(fields: I) -> Result<&'a SpaceRef>
where
    I: IntoIterator<Item = &'a SigmaField>,
{
    let mut iter = fields.into_iter();
    let first = iter.next().ok_or(Error::EmptyFamily)?;
    for f in iter {
        if f.space() != first.space() {
            return Err(Error::SpaceMismatch);
        }
    }
    Ok(first.space())
}

/// `meet over rows of (join over columns)` equals
/// `join over columns of (meet over rows)` whenever the column joins are
/// mutually independent. `rows[r][c]` is the field at row `r`, column `c`.
pub fn dist_i_check(rows: &[Vec<SigmaField>]) -> Result<LawReport> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(Error::EmptyFamily);
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::PreconditionFailed(
            "field matrix must be rectangular".into(),
        ));
    }
    let space = common_space(rows.iter().flatten())?;

    let mut col_joins = Vec::with_capacity(cols);
    let mut col_meets = Vec::with_capacity(cols);
    for c in 0..cols {
        let column: Vec<SigmaField> = rows.iter().map(|r| r[c].clone()).collect();
        col_joins.push(join_many(space, &column)?);
        col_meets.push(meet_many(&column)?);
    }
    let hyp = independent_family(&col_joins)?;

    let row_joins: Vec<SigmaField> = rows
        .iter()
        .map(|r| join_many(space, r))
        .collect::<Result<_>>()?;
    let lhs = meet_many(&row_joins)?;
    let rhs = join_many(space, &col_meets)?;

    let mut witness = None;
    let equal = fields_equal_witnessed("meet-of-joins vs join-of-meets", &lhs, &rhs, &mut witness);
    Ok(LawReport::new("dist-i")
        .hyp("column-joins-independent", hyp)
        .conclude(equal)
        .with_witness(witness))
}

/// `(x1 v y1) ^ (x2 v y2) = (x1 ^ x2) v (y1 ^ y2)` whenever
/// `x1 v x2` is independent of `y1 v y2`. Also evaluates the extraction
/// special case `(x1 v y1) ^ x2 = x1` for `x1 <= x2` independent of `y1`.
pub fn dist_ii_check_pairs(
    x1: &SigmaField,
    x2: &SigmaField,
    y1: &SigmaField,
    y2: &SigmaField,
) -> Result<LawReport> {
    common_space([x1, x2, y1, y2])?;
    let hyp = independent(&join(x1, x2)?, &join(y1, y2)?)?;
    let lhs = meet(&join(x1, y1)?, &join(x2, y2)?)?;
    let rhs = join(&meet(x1, x2)?, &meet(y1, y2)?)?;
    let mut witness = None;
    let equal = fields_equal_witnessed("pairwise sides", &lhs, &rhs, &mut witness);

    let special_applies = is_sub(x1, x2)? && independent(x2, y1)?;
    let special = !special_applies || meet(&join(x1, y1)?, x2)? == *x1;

    Ok(LawReport::new("dist-ii-pairs")
        .hyp("joined-columns-independent", hyp)
        .detail("extraction-applies", special_applies)
        .detail("extraction-holds-when-applies", special)
        .conclude(equal)
        .with_witness(witness))
}

/// For a nonincreasing chain `x[0] >= x[1] >= ...` and `y` independent of
/// `x[0]`: `meet of (x[k] v y)` equals `(meet of x[k]) v y`. On finite
/// chains both sides collapse to the last element's join, so the equality
/// holds unconditionally; the hypothesis is still reported. Errors when
/// the chain is not monotone.
pub fn dist_ii_check_chain(chain: &[SigmaField], y: &SigmaField) -> Result<LawReport> {
    if chain.is_empty() {
        return Err(Error::EmptyFamily);
    }
    common_space(chain.iter().chain([y]))?;
    for k in 0..chain.len() - 1 {
        if !is_sub(&chain[k + 1], &chain[k])? {
            return Err(Error::PreconditionFailed(format!(
                "chain is not nonincreasing at index {k}"
            )));
        }
    }
    let hyp = independent(&chain[0], y)?;
    let joins: Vec<SigmaField> = chain.iter().map(|x| join(x, y)).collect::<Result<_>>()?;
    let lhs = meet_many(&joins)?;
    let rhs = join(&meet_many(chain)?, y)?;
    let mut witness = None;
    let equal = fields_equal_witnessed("chain sides", &lhs, &rhs, &mut witness);
    Ok(LawReport::new("dist-ii-chain")
        .hyp("y-independent-of-chain-top", hyp)
        .conclude(equal)
        .with_witness(witness))
}

/// For a mutually independent family: `(join of family) ^ z` equals
/// `join of (member ^ z)` provided (i) the family is conditionally
/// independent given `z` and (ii) each `P[atom | z]` is measurable for
/// the atom's own field. Mutual independence is a precondition, not a
/// hypothesis: violating it is a usage error.
pub fn dist_iii_check(family: &[SigmaField], z: &SigmaField) -> Result<LawReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let space = common_space(family.iter().chain([z]))?;
    if !independent_family(family)? {
        return Err(Error::PreconditionFailed(
            "family is not mutually independent".into(),
        ));
    }
    let hyp_ci = cond_independent_family(family, z)?;
    let mut hyp_meas = true;
    'outer: for x in family {
        for b in 0..x.block_count() {
            if !measurable_wrt(&cond_prob(z, &x.block_event(b))?, x) {
                hyp_meas = false;
                break 'outer;
            }
        }
    }
    let lhs = meet(&join_many(space, family)?, z)?;
    let meets: Vec<SigmaField> = family.iter().map(|x| meet(x, z)).collect::<Result<_>>()?;
    let rhs = join_many(space, &meets)?;
    let mut witness = None;
    let equal = fields_equal_witnessed("join-meet sides", &lhs, &rhs, &mut witness);
    Ok(LawReport::new("dist-iii")
        .hyp("cond-independent-given-z", hyp_ci)
        .hyp("cond-probs-measurable", hyp_meas)
        .conclude(equal)
        .with_witness(witness))
}

/// For a family of at least two fields conditionally independent given
/// `z`: `meet of (member v z) = z`, and in particular the family meet
/// sits inside `z`.
pub fn dist_iv_check(family: &[SigmaField], z: &SigmaField) -> Result<LawReport> {
    if family.len() < 2 {
        return Err(Error::PreconditionFailed(
            "family must contain at least two fields".into(),
        ));
    }
    common_space(family.iter().chain([z]))?;
    let hyp = cond_independent_family(family, z)?;
    let joins: Vec<SigmaField> = family.iter().map(|x| join(x, z)).collect::<Result<_>>()?;
    let meet_of_joins = meet_many(&joins)?;
    let mut witness = None;
    let main = fields_equal_witnessed("meet-of-joins vs z", &meet_of_joins, z, &mut witness);
    let contained = is_sub(&meet_many(family)?, z)?;
    Ok(LawReport::new("dist-iv")
        .hyp("cond-independent-given-z", hyp)
        .detail("meet-of-joins-equals-z", main)
        .detail("family-meet-inside-z", contained)
        .conclude(main && contained)
        .with_witness(witness))
}

/// Two-column variant: `meet over rows of (col1[k] v col2[k])` equals
/// `(meet of col1) v (meet of col2)` provided the column joins are
/// conditionally independent given every partial meet of either column.
/// The hypothesis quantifies over all non-empty row subsets, so the row
/// count is capped.
pub fn dist_v_check(col1: &[SigmaField], col2: &[SigmaField]) -> Result<LawReport> {
    if col1.is_empty() || col1.len() != col2.len() {
        return Err(Error::PreconditionFailed(
            "columns must be non-empty and of equal length".into(),
        ));
    }
    let n = col1.len();
    if n > DIST_V_INDEX_CAP {
        return Err(Error::CapExceeded {
            what: "row-subset quantification".into(),
            needed: (1u128 << n) - 1,
            cap: (1u128 << DIST_V_INDEX_CAP) - 1,
        });
    }
    let space = common_space(col1.iter().chain(col2))?;
    let x1 = join_many(space, col1)?;
    let x2 = join_many(space, col2)?;

    let mut hyp = true;
    'subsets: for mask in 1u32..(1 << n) {
        let picked1: Vec<SigmaField> = (0..n)
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| col1[k].clone())
            .collect();
        let picked2: Vec<SigmaField> = (0..n)
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| col2[k].clone())
            .collect();
        for cond in [meet_many(&picked1)?, meet_many(&picked2)?] {
            if !cond_independent(&x1, &x2, &cond)? {
                hyp = false;
                break 'subsets;
            }
        }
    }

    let row_joins: Vec<SigmaField> = col1
        .iter()
        .zip(col2)
        .map(|(a, b)| join(a, b))
        .collect::<Result<_>>()?;
    let lhs = meet_many(&row_joins)?;
    let rhs = join(&meet_many(col1)?, &meet_many(col2)?)?;
    let mut witness = None;
    let equal = fields_equal_witnessed("two-column sides", &lhs, &rhs, &mut witness);
    Ok(LawReport::new("dist-v")
        .hyp("cond-independent-given-partial-meets", hyp)
        .conclude(equal)
        .with_witness(witness))
}

/// If `a <= b v c` and `a v b` is independent of `c`, then `a <= b`.
pub fn remark_i_check(a: &SigmaField, b: &SigmaField, c: &SigmaField) -> Result<LawReport> {
    common_space([a, b, c])?;
    let hyp_sub = is_sub(a, &join(b, c)?)?;
    let hyp_ind = independent(&join(a, b)?, c)?;
    let concl = is_sub(a, b)?;
    Ok(LawReport::new("remark-i")
        .hyp("a-inside-b-join-c", hyp_sub)
        .hyp("a-join-b-independent-of-c", hyp_ind)
        .conclude(concl))
}

/// If `a <= b v c`, `a` is independent of `c`, and `b <= a`, then `a = b`.
pub fn remark_ii_check(a: &SigmaField, b: &SigmaField, c: &SigmaField) -> Result<LawReport> {
    common_space([a, b, c])?;
    let hyp_sub = is_sub(a, &join(b, c)?)?;
    let hyp_ind = independent(a, c)?;
    let hyp_ba = is_sub(b, a)?;
    let mut witness = None;
    let concl = fields_equal_witnessed("a vs b", a, b, &mut witness);
    Ok(LawReport::new("remark-ii")
        .hyp("a-inside-b-join-c", hyp_sub)
        .hyp("a-independent-of-c", hyp_ind)
        .hyp("b-inside-a", hyp_ba)
        .conclude(concl)
        .with_witness(witness))
}

/// Evaluates both remark implications on the same triple and reports
/// whether each one, taken as an implication, holds.
pub fn remark_implications_check(
    a: &SigmaField,
    b: &SigmaField,
    c: &SigmaField,
) -> Result<LawReport> {
    let ri = remark_i_check(a, b, c)?;
    let rii = remark_ii_check(a, b, c)?;
    Ok(LawReport::new("remark-implications")
        .detail("i-hypotheses", ri.hypotheses_hold())
        .detail("i-conclusion", ri.conclusion == Some(true))
        .detail("ii-hypotheses", rii.hypotheses_hold())
        .detail("ii-conclusion", rii.conclusion == Some(true))
        .conclude(ri.sound() && rii.sound()))
}

/// Arguments accepted by [`run_law`], shaped per law.
// A handful of these exist at a time (one per query or search trial), so
// the size spread between variants is irrelevant; boxing would only add
// noise at every construction site.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawArgs {
    /// Flat list; the required arity depends on the law.
    Fields(Vec<SigmaField>),
    /// A family plus a distinguished conditioning field.
    FamilyZ {
        family: Vec<SigmaField>,
        z: SigmaField,
    },
    /// Doubly indexed family; `rows[r][c]`.
    Matrix(Vec<Vec<SigmaField>>),
    /// Nonincreasing chain plus one field.
    ChainY {
        chain: Vec<SigmaField>,
        y: SigmaField,
    },
    /// Two-sided complement data; `x`, `y` are the optional one-sided
    /// witnesses.
    TwoSided {
        a: SigmaField,
        b: SigmaField,
        a_prime: SigmaField,
        b_prime: SigmaField,
        x: Option<SigmaField>,
        y: Option<SigmaField>,
    },
    /// Innovation data: `f`, `g` of length N+1 and `h` of length N.
    Innovation {
        f: Vec<SigmaField>,
        g: Vec<SigmaField>,
        h: Vec<SigmaField>,
    },
}

/// Shape of arguments a law expects, used by generators and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgShape {
    Fields(usize),
    FamilyZ { min_family: usize },
    Matrix { cols: Option<usize> },
    ChainY,
    TwoSided,
    Innovation,
}

#[derive(Debug, Clone, Copy)]
pub struct LawDescriptor {
    pub id: &'static str,
    pub shape: ArgShape,
    pub summary: &'static str,
}

pub const LAW_IDS: [&str; 12] = [
    "dist-i",
    "dist-ii-pairs",
    "dist-ii-chain",
    "dist-iii",
    "dist-iv",
    "dist-v",
    "remark-i",
    "remark-ii",
    "prop-indep-commute",
    "complements-ii",
    "two-sided",
    "innovation",
];

const REGISTRY: [LawDescriptor; 12] = [
    LawDescriptor {
        id: "dist-i",
        shape: ArgShape::Matrix { cols: None },
        summary: "meet of row-joins = join of column-meets when column joins are independent",
    },
    LawDescriptor {
        id: "dist-ii-pairs",
        shape: ArgShape::Fields(4),
        summary: "(x1 v y1)^(x2 v y2) = (x1^x2) v (y1^y2) when x1 v x2 is independent of y1 v y2",
    },
    LawDescriptor {
        id: "dist-ii-chain",
        shape: ArgShape::ChainY,
        summary: "meet of (chain v y) = (meet of chain) v y for y independent of the chain",
    },
    LawDescriptor {
        id: "dist-iii",
        shape: ArgShape::FamilyZ { min_family: 1 },
        summary: "(join of family)^z = join of (member^z) for conditionally independent families",
    },
    LawDescriptor {
        id: "dist-iv",
        shape: ArgShape::FamilyZ { min_family: 2 },
        summary: "meet of (member v z) = z for families conditionally independent given z",
    },
    LawDescriptor {
        id: "dist-v",
        shape: ArgShape::Matrix { cols: Some(2) },
        summary: "meet of row-joins = join of column-meets under partial-meet conditioning",
    },
    LawDescriptor {
        id: "remark-i",
        shape: ArgShape::Fields(3),
        summary: "a <= b v c and (a v b) independent of c imply a <= b",
    },
    LawDescriptor {
        id: "remark-ii",
        shape: ArgShape::Fields(3),
        summary: "a <= b v c, a independent of c, b <= a imply a = b",
    },
    LawDescriptor {
        id: "prop-indep-commute",
        shape: ArgShape::Fields(2),
        summary: "independence <=> trivial meet + commuting operators <=> product projects to the mean",
    },
    LawDescriptor {
        id: "complements-ii",
        shape: ArgShape::Fields(3),
        summary: "z splits over x, y exactly when x, y are conditionally independent given z with measurable atom probabilities",
    },
    LawDescriptor {
        id: "two-sided",
        shape: ArgShape::TwoSided,
        summary: "conditions (a)-(e) for a two-sided complement agree",
    },
    LawDescriptor {
        id: "innovation",
        shape: ArgShape::Innovation,
        summary: "innovating sequences satisfy the meet identity and the finite-horizon expansion",
    },
];

pub fn law_registry() -> &'static [LawDescriptor; 12] {
    &REGISTRY
}

pub fn law_lookup(id: &str) -> Result<&'static LawDescriptor> {
    REGISTRY
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownLaw(id.into()))
}

fn want_fields(id: &str, args: &LawArgs, n: usize) -> Result<Vec<SigmaField>> {
    match args {
        LawArgs::Fields(fs) if fs.len() == n => Ok(fs.clone()),
        LawArgs::Fields(fs) => Err(Error::PreconditionFailed(format!(
            "law {id} expects {n} fields, got {}",
            fs.len()
        ))),
        _ => Err(Error::PreconditionFailed(format!(
            "law {id} expects a flat list of {n} fields"
        ))),
    }
}

/// Dispatches a law id to its checker. Argument-shape violations are
/// `PreconditionFailed`; unknown ids are `UnknownLaw`.
pub fn run_law(id: &str, args: &LawArgs) -> Result<LawReport> {
    law_lookup(id)?;
    match id {
        "dist-i" => match args {
            LawArgs::Matrix(rows) => dist_i_check(rows),
            _ => Err(Error::PreconditionFailed(
                "law dist-i expects a matrix of fields".into(),
            )),
        },
        "dist-ii-pairs" => {
            let f = want_fields(id, args, 4)?;
            dist_ii_check_pairs(&f[0], &f[1], &f[2], &f[3])
        }
        "dist-ii-chain" => match args {
            LawArgs::ChainY { chain, y } => dist_ii_check_chain(chain, y),
            _ => Err(Error::PreconditionFailed(
                "law dist-ii-chain expects a chain plus one field".into(),
            )),
        },
        "dist-iii" => match args {
            LawArgs::FamilyZ { family, z } => dist_iii_check(family, z),
            _ => Err(Error::PreconditionFailed(
                "law dist-iii expects a family plus a conditioning field".into(),
            )),
        },
        "dist-iv" => match args {
            LawArgs::FamilyZ { family, z } => dist_iv_check(family, z),
            _ => Err(Error::PreconditionFailed(
                "law dist-iv expects a family plus a conditioning field".into(),
            )),
        },
        "dist-v" => match args {
            LawArgs::Matrix(rows) => {
                if rows.iter().any(|r| r.len() != 2) {
                    return Err(Error::PreconditionFailed(
                        "law dist-v expects a two-column matrix".into(),
                    ));
                }
                let col1: Vec<SigmaField> = rows.iter().map(|r| r[0].clone()).collect();
                let col2: Vec<SigmaField> = rows.iter().map(|r| r[1].clone()).collect();
                dist_v_check(&col1, &col2)
            }
            _ => Err(Error::PreconditionFailed(
                "law dist-v expects a two-column matrix".into(),
            )),
        },
        "remark-i" => {
            let f = want_fields(id, args, 3)?;
            remark_i_check(&f[0], &f[1], &f[2])
        }
        "remark-ii" => {
            let f = want_fields(id, args, 3)?;
            remark_ii_check(&f[0], &f[1], &f[2])
        }
        "prop-indep-commute" => {
            let f = want_fields(id, args, 2)?;
            prop_independence_commutativity(&f[0], &f[1])
        }
        "complements-ii" => {
            let f = want_fields(id, args, 3)?;
            complements_ii_report(&f[0], &f[1], &f[2])
        }
        "two-sided" => match args {
            LawArgs::TwoSided {
                a,
                b,
                a_prime,
                b_prime,
                x,
                y,
            } => two_sided_report(a, b, a_prime, b_prime, x.as_ref(), y.as_ref()),
            _ => Err(Error::PreconditionFailed(
                "law two-sided expects four fields plus optional witnesses".into(),
            )),
        },
        "innovation" => match args {
            LawArgs::Innovation { f, g, h } => innovation_report(f, g, h),
            _ => Err(Error::PreconditionFailed(
                "law innovation expects three sequences of fields".into(),
            )),
        },
        _ => unreachable!("registry lookup precedes dispatch"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{product, ProbSpace, SpaceRef};

    fn q4() -> SpaceRef {
        ProbSpace::uniform(&["++", "+-", "-+", "--"]).unwrap()
    }

    fn field(sp: &SpaceRef, blocks: &[&[usize]]) -> SigmaField {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        SigmaField::from_blocks(sp, &blocks).unwrap()
    }

    // sign-1 field, sign-2 field, and the product-of-signs field on q4
    fn xyz(sp: &SpaceRef) -> (SigmaField, SigmaField, SigmaField) {
        (
            field(sp, &[&[0, 1], &[2, 3]]),
            field(sp, &[&[0, 3], &[1, 2]]),
            field(sp, &[&[0, 2], &[1, 3]]),
        )
    }

    #[test]
    fn dist_i_single_column_is_trivially_sound() {
        let sp = q4();
        let (x, y, _) = xyz(&sp);
        let rows = vec![vec![x], vec![y]];
        let r = dist_i_check(&rows).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(true));
    }

    #[test]
    fn dist_i_dependent_columns_fail() {
        // Columns join to dependent fields and both sides of the identity
        // split apart: lhs = (x v z) ^ (y v z) is discrete, rhs = (x ^ y) v z
        // is just z.
        let sp = q4();
        let (x, y, z) = xyz(&sp);
        let rows = vec![vec![x, z.clone()], vec![y, z.clone()]];
        let r = dist_i_check(&rows).unwrap();
        assert!(!r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(false));
        assert!(r.witness.is_some());
    }

    #[test]
    fn dist_i_product_lift_sound() {
        let a = ProbSpace::uniform(&["a+", "a-"]).unwrap();
        let b = ProbSpace::uniform(&["b+", "b-", "b0"]).unwrap();
        let prod = product(&a, &b).unwrap();
        let xa = prod.lift_sigma(0, &SigmaField::discrete(&a)).unwrap();
        let xb = prod.lift_sigma(1, &SigmaField::discrete(&b)).unwrap();
        let yb = prod
            .lift_sigma(1, &field(&b, &[&[0, 1], &[2]]))
            .unwrap();
        let rows = vec![vec![xa.clone(), xb], vec![xa, yb]];
        let r = dist_i_check(&rows).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(true));
    }

    #[test]
    fn dist_i_shape_errors() {
        let sp = q4();
        let (x, y, _) = xyz(&sp);
        assert!(matches!(dist_i_check(&[]), Err(Error::EmptyFamily)));
        let ragged = vec![vec![x.clone(), y.clone()], vec![x]];
        assert!(matches!(
            dist_i_check(&ragged),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn dist_ii_pairs_counterexample_shape() {
        // x1 = x, x2 = y, y1 = y2 = z gives the classic failure: both
        // hypothesis and conclusion are false.
        let sp = q4();
        let (x, y, z) = xyz(&sp);
        let r = dist_ii_check_pairs(&x, &y, &z, &z).unwrap();
        assert!(!r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(false));
    }

    #[test]
    fn dist_ii_pairs_product_sound() {
        let a = ProbSpace::uniform(&["a+", "a-"]).unwrap();
        let b = ProbSpace::uniform(&["b+", "b-"]).unwrap();
        let prod = product(&a, &b).unwrap();
        let x = prod.lift_sigma(0, &SigmaField::discrete(&a)).unwrap();
        let y = prod.lift_sigma(1, &SigmaField::discrete(&b)).unwrap();
        let triv = SigmaField::trivial(prod.space());
        let r = dist_ii_check_pairs(&x, &x, &y, &triv).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(true));
        assert_eq!(r.detail_named("extraction-applies"), Some(true));
        assert_eq!(r.detail_named("extraction-holds-when-applies"), Some(true));
    }

    #[test]
    fn dist_ii_chain_constant_chain() {
        let sp = q4();
        let (x, _, z) = xyz(&sp);
        let chain = vec![x.clone(), x.clone(), x];
        let r = dist_ii_check_chain(&chain, &z).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(true));
    }

    #[test]
    fn dist_ii_chain_rejects_non_monotone() {
        let sp = q4();
        let (x, y, _) = xyz(&sp);
        let err = dist_ii_check_chain(&[x, y], &SigmaField::trivial(&sp)).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
    }

    #[test]
    fn dist_iii_conditioned_on_trivial() {
        let sp = q4();
        let (x, _, z) = xyz(&sp);
        let triv = SigmaField::trivial(&sp);
        let r = dist_iii_check(&[x, z], &triv).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(true));
    }

    #[test]
    fn dist_iii_requires_independent_family() {
        let sp = q4();
        let (x, _, _) = xyz(&sp);
        let err = dist_iii_check(&[x.clone(), x], &SigmaField::trivial(&sp)).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
    }

    #[test]
    fn dist_iv_classic_counterexample() {
        // Pairwise independent triple: conditional independence given z
        // fails, and the meet of joins is discrete rather than z.
        let sp = q4();
        let (x, y, z) = xyz(&sp);
        let r = dist_iv_check(&[x, y], &z).unwrap();
        assert!(!r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(false));
        assert_eq!(r.detail_named("meet-of-joins-equals-z"), Some(false));
        assert_eq!(r.detail_named("family-meet-inside-z"), Some(true));
    }

    #[test]
    fn dist_iv_converse_fails() {
        // Dependent pair with trivial meet: the conclusion holds for
        // z = trivial even though conditional independence fails.
        let sp = q4();
        let x = field(&sp, &[&[0], &[1, 2, 3]]);
        let y = field(&sp, &[&[0, 1], &[2, 3]]);
        let z = SigmaField::trivial(&sp);
        let r = dist_iv_check(&[x, y], &z).unwrap();
        assert!(!r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(true));
    }

    #[test]
    fn dist_iv_self_family() {
        let sp = q4();
        let (_, _, z) = xyz(&sp);
        let r = dist_iv_check(&[z.clone(), z.clone()], &z).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(true));
    }

    #[test]
    fn dist_v_single_row() {
        let sp = q4();
        let (x, _, z) = xyz(&sp);
        let r = dist_v_check(std::slice::from_ref(&x), std::slice::from_ref(&z)).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(true));
    }

    #[test]
    fn dist_v_dependent_rows_fail() {
        let sp = q4();
        let (x, y, z) = xyz(&sp);
        let r = dist_v_check(&[x, y], &[z.clone(), z]).unwrap();
        assert!(!r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(false));
    }

    #[test]
    fn dist_v_row_cap() {
        let sp = q4();
        let t = SigmaField::trivial(&sp);
        let col: Vec<SigmaField> = vec![t; 7];
        assert!(matches!(
            dist_v_check(&col, &col),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn remarks_on_products() {
        let f1 = ProbSpace::uniform(&["a+", "a-"]).unwrap();
        let f2 = ProbSpace::uniform(&["b+", "b-"]).unwrap();
        let prod = product(&f1, &f2).unwrap();
        let b = prod.lift_sigma(0, &SigmaField::discrete(&f1)).unwrap();
        let a = b.clone();
        let c = prod.lift_sigma(1, &SigmaField::discrete(&f2)).unwrap();
        let ri = remark_i_check(&a, &b, &c).unwrap();
        assert!(ri.hypotheses_hold());
        assert_eq!(ri.conclusion, Some(true));
        let rii = remark_ii_check(&a, &b, &c).unwrap();
        assert!(rii.hypotheses_hold());
        assert_eq!(rii.conclusion, Some(true));
        let both = remark_implications_check(&a, &b, &c).unwrap();
        assert_eq!(both.conclusion, Some(true));
    }

    #[test]
    fn remarks_all_trivial() {
        let sp = q4();
        let t = SigmaField::trivial(&sp);
        let r = remark_i_check(&t, &t, &t).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(true));
        let r = remark_ii_check(&t, &t, &t).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.conclusion, Some(true));
    }

    #[test]
    fn registry_contract() {
        assert_eq!(law_registry().len(), 12);
        for id in LAW_IDS {
            assert!(law_lookup(id).is_ok());
        }
        assert!(matches!(law_lookup("nope"), Err(Error::UnknownLaw(_))));
        let d = law_lookup("dist-iv").unwrap();
        assert_eq!(d.shape, ArgShape::FamilyZ { min_family: 2 });
    }

    #[test]
    fn run_law_dispatch_and_arity() {
        let sp = q4();
        let (x, y, z) = xyz(&sp);
        let r = run_law(
            "dist-iv",
            &LawArgs::FamilyZ {
                family: vec![x.clone(), y.clone()],
                z: z.clone(),
            },
        )
        .unwrap();
        assert_eq!(r.law, "dist-iv");
        assert!(matches!(
            run_law("nope", &LawArgs::Fields(vec![])),
            Err(Error::UnknownLaw(_))
        ));
        assert!(matches!(
            run_law("dist-ii-pairs", &LawArgs::Fields(vec![x.clone()])),
            Err(Error::PreconditionFailed(_))
        ));
        assert!(matches!(
            run_law("dist-i", &LawArgs::Fields(vec![x, y, z])),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn run_law_prop_indep_commute() {
        let sp = q4();
        let (x, _, z) = xyz(&sp);
        let r = run_law("prop-indep-commute", &LawArgs::Fields(vec![x, z])).unwrap();
        assert_eq!(r.conclusion, Some(true));
        assert_eq!(r.detail_named("i-independent"), Some(true));
    }
}
