//! Executes a parsed instance's queries in order. Evaluation errors are
//! reported inline and never abort the stream.

use std::collections::HashMap;

use sigma_lattice::complements::enumerate_complements;
use sigma_lattice::condexp::{cond_independent, condexp, Vector};
use sigma_lattice::error::{Error, Result};
use sigma_lattice::lattice::{independent, independent_family, join, meet, plus};
use sigma_lattice::laws::{run_law, LawArgs};
use sigma_lattice::rational::Rational;
use sigma_lattice::report::LawReport;
use sigma_lattice::sigma::SigmaField;

use crate::instance::{Arg, Instance, Op, Query};

#[derive(Debug, Clone)]
pub enum Outcome {
    Field(SigmaField),
    Bool(bool),
    Complements {
        list: Vec<SigmaField>,
        searched: u128,
    },
    /// (support outcome label, value) pairs in support order.
    Vector(Vec<(String, Rational)>),
    Report(LawReport),
    /// An evaluation error, reported inline.
    Inline(String),
}

#[derive(Debug, Clone)]
pub struct Ran {
    pub index: usize,
    pub text: String,
    pub name: Option<String>,
    pub outcome: Outcome,
}

fn resolve(
    inst: &Instance,
    env: &HashMap<String, SigmaField>,
    name: &str,
) -> Result<SigmaField> {
    match name {
        "trivial" => Ok(SigmaField::trivial(&inst.space)),
        "discrete" => Ok(SigmaField::discrete(&inst.space)),
        _ => env
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownLabel(name.to_string())),
    }
}

fn arg_name(a: &Arg) -> &str {
    match a {
        Arg::Name(n) => n,
        Arg::List(_) => unreachable!("validated at parse time"),
    }
}

fn arg_list(a: &Arg) -> &[String] {
    match a {
        Arg::List(l) => l,
        Arg::Name(_) => unreachable!("validated at parse time"),
    }
}

fn fields_of(
    inst: &Instance,
    env: &HashMap<String, SigmaField>,
    names: &[String],
) -> Result<Vec<SigmaField>> {
    names.iter().map(|n| resolve(inst, env, n)).collect()
}

fn law_args(
    inst: &Instance,
    env: &HashMap<String, SigmaField>,
    q: &Query,
) -> Result<LawArgs> {
    let one = |a: &Arg| resolve(inst, env, arg_name(a));
    let many = |a: &Arg| fields_of(inst, env, arg_list(a));
    let id = match &q.op {
        Op::Law(id) => id.as_str(),
        _ => unreachable!(),
    };
    use sigma_lattice::laws::ArgShape;
    let desc = sigma_lattice::laws::law_lookup(id)?;
    Ok(match desc.shape {
        ArgShape::Fields(_) => LawArgs::Fields(
            q.args
                .iter()
                .map(one)
                .collect::<Result<Vec<_>>>()?,
        ),
        ArgShape::FamilyZ { .. } => LawArgs::FamilyZ {
            family: many(&q.args[0])?,
            z: one(&q.args[1])?,
        },
        ArgShape::Matrix { .. } => LawArgs::Matrix(
            q.args
                .iter()
                .map(many)
                .collect::<Result<Vec<_>>>()?,
        ),
        ArgShape::ChainY => LawArgs::ChainY {
            chain: many(&q.args[0])?,
            y: one(&q.args[1])?,
        },
        ArgShape::TwoSided => {
            let mut fs = q
                .args
                .iter()
                .map(one)
                .collect::<Result<Vec<_>>>()?;
            let (x, y) = if fs.len() == 6 {
                let y = fs.pop().unwrap();
                let x = fs.pop().unwrap();
                (Some(x), Some(y))
            } else {
                (None, None)
            };
            let b_prime = fs.pop().unwrap();
            let a_prime = fs.pop().unwrap();
            let b = fs.pop().unwrap();
            let a = fs.pop().unwrap();
            LawArgs::TwoSided {
                a,
                b,
                a_prime,
                b_prime,
                x,
                y,
            }
        }
        ArgShape::Innovation => LawArgs::Innovation {
            f: many(&q.args[0])?,
            g: many(&q.args[1])?,
            h: many(&q.args[2])?,
        },
    })
}

fn run_one(
    inst: &Instance,
    env: &HashMap<String, SigmaField>,
    q: &Query,
) -> Result<Outcome> {
    Ok(match &q.op {
        Op::Meet | Op::Join => {
            let fields = fields_of(
                inst,
                env,
                &q.args.iter().map(|a| arg_name(a).to_string()).collect::<Vec<_>>(),
            )?;
            let mut acc = fields[0].clone();
            for f in &fields[1..] {
                acc = match q.op {
                    Op::Meet => meet(&acc, f)?,
                    _ => join(&acc, f)?,
                };
            }
            Outcome::Field(acc)
        }
        Op::Plus => {
            let a = resolve(inst, env, arg_name(&q.args[0]))?;
            let b = resolve(inst, env, arg_name(&q.args[1]))?;
            Outcome::Field(plus(&a, &b)?)
        }
        Op::Independent => {
            let fields = fields_of(
                inst,
                env,
                &q.args.iter().map(|a| arg_name(a).to_string()).collect::<Vec<_>>(),
            )?;
            Outcome::Bool(if fields.len() == 2 {
                independent(&fields[0], &fields[1])?
            } else {
                independent_family(&fields)?
            })
        }
        Op::CondIndependent => {
            let x = resolve(inst, env, arg_name(&q.args[0]))?;
            let y = resolve(inst, env, arg_name(&q.args[1]))?;
            let z = resolve(inst, env, arg_name(&q.args[2]))?;
            Outcome::Bool(cond_independent(&x, &y, &z)?)
        }
        Op::ComplementEnum => {
            let of = resolve(inst, env, arg_name(&q.args[0]))?;
            let ambient = resolve(inst, env, arg_name(&q.args[1]))?;
            let report = enumerate_complements(&of, &ambient)?;
            Outcome::Complements {
                list: report.complements,
                searched: report.searched,
            }
        }
        Op::CondExp => {
            let rv = inst
                .rv(arg_name(&q.args[0]))
                .ok_or_else(|| Error::UnknownLabel(arg_name(&q.args[0]).to_string()))?;
            let x = resolve(inst, env, arg_name(&q.args[1]))?;
            let f = Vector::from_rv(rv)?;
            let e = condexp(&x, &f);
            let pairs = inst
                .space
                .support()
                .iter()
                .enumerate()
                .map(|(pos, &o)| (inst.space.label(o).to_string(), e[pos].clone()))
                .collect();
            Outcome::Vector(pairs)
        }
        Op::Law(id) => {
            let args = law_args(inst, env, q)?;
            Outcome::Report(run_law(id, &args)?)
        }
    })
}

/// Runs every query; inline errors are embedded in the outcome list.
pub fn run_queries(inst: &Instance) -> Vec<Ran> {
    let mut env: HashMap<String, SigmaField> = inst
        .sigmas
        .iter()
        .map(|(n, f)| (n.clone(), f.clone()))
        .collect();
    let mut out = Vec::new();
    for (index, q) in inst.queries.iter().enumerate() {
        let outcome = match run_one(inst, &env, q) {
            Ok(o) => o,
            Err(e) => Outcome::Inline(e.to_string()),
        };
        if let (Some(name), Outcome::Field(f), true) = (&q.name, &outcome, q.op.binds_field()) {
            env.insert(name.clone(), f.clone());
        }
        out.push(Ran {
            index,
            text: q.render(),
            name: q.name.clone(),
            outcome,
        });
    }
    out
}

/// Did any law query conclude false?
pub fn any_conclusion_false(rans: &[Ran]) -> bool {
    rans.iter().any(|r| match &r.outcome {
        Outcome::Report(rep) => rep.conclusion == Some(false),
        _ => false,
    })
}
