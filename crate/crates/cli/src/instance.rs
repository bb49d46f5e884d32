//! Instance files: one probability space, named random variables and
//! fields, and a list of queries, all as JSON with exact "p/q" rationals.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::Value;

use sigma_lattice::laws::{law_lookup, ArgShape};
use sigma_lattice::rational::{parse_rational, Rational};
use sigma_lattice::sigma::SigmaField;
use sigma_lattice::space::{Event, ProbSpace, ProductSpace, RandomVariable, SpaceRef};
use sigma_lattice::space::Value as RvValue;

/// Errors crossing the text boundary. `Parse` is malformed JSON (with the
/// position from the parser); `Validation` is a well-formed file that
/// violates the schema or refers to unknown names.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Validation(m) => write!(f, "validation error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<sigma_lattice::error::Error> for CliError {
    fn from(e: sigma_lattice::error::Error) -> CliError {
        CliError::Validation(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// Field names resolvable without a binding: the lattice bounds.
pub const LITERAL_FIELDS: [&str; 2] = ["trivial", "discrete"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    Meet,
    Join,
    Plus,
    Independent,
    CondIndependent,
    ComplementEnum,
    CondExp,
    Law(String),
}

impl Op {
    pub fn parse(s: &str) -> CliResult<Op> {
        Ok(match s {
            "meet" => Op::Meet,
            "join" => Op::Join,
            "plus" => Op::Plus,
            "independent" => Op::Independent,
            "cond_independent" => Op::CondIndependent,
            "complement_enum" => Op::ComplementEnum,
            "condexp" => Op::CondExp,
            other => match other.strip_prefix("law:") {
                Some(id) => {
                    law_lookup(id).map_err(|e| invalid(e.to_string()))?;
                    Op::Law(id.to_string())
                }
                None => return Err(invalid(format!("unknown query op {other:?}"))),
            },
        })
    }

    pub fn render(&self) -> String {
        match self {
            Op::Meet => "meet".into(),
            Op::Join => "join".into(),
            Op::Plus => "plus".into(),
            Op::Independent => "independent".into(),
            Op::CondIndependent => "cond_independent".into(),
            Op::ComplementEnum => "complement_enum".into(),
            Op::CondExp => "condexp".into(),
            Op::Law(id) => format!("law:{id}"),
        }
    }

    /// Does a successful run bind the query's `name` to a field?
    pub fn binds_field(&self) -> bool {
        matches!(self, Op::Meet | Op::Join | Op::Plus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Name(String),
    List(Vec<String>),
}

impl Arg {
    pub fn render(&self) -> String {
        match self {
            Arg::Name(n) => n.clone(),
            Arg::List(l) => format!("[{}]", l.join(",")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Query {
    pub op: Op,
    pub args: Vec<Arg>,
    pub name: Option<String>,
}

impl Query {
    pub fn render(&self) -> String {
        let args: Vec<String> = self.args.iter().map(Arg::render).collect();
        format!("{}({})", self.op.render(), args.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub space: SpaceRef,
    pub sigmas: Vec<(String, SigmaField)>,
    pub rvs: Vec<(String, RandomVariable)>,
    pub queries: Vec<Query>,
}

impl Instance {
    pub fn sigma(&self, name: &str) -> Option<&SigmaField> {
        self.sigmas
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
    }

    pub fn rv(&self, name: &str) -> Option<&RandomVariable> {
        self.rvs.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }
}

fn as_object<'v>(
    v: &'v Value,
    what: &str,
) -> CliResult<&'v serde_json::Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| invalid(format!("{what} must be an object")))
}

fn as_array<'v>(v: &'v Value, what: &str) -> CliResult<&'v Vec<Value>> {
    v.as_array()
        .ok_or_else(|| invalid(format!("{what} must be an array")))
}

fn as_str<'v>(v: &'v Value, what: &str) -> CliResult<&'v str> {
    v.as_str()
        .ok_or_else(|| invalid(format!("{what} must be a string")))
}

fn string_list(v: &Value, what: &str) -> CliResult<Vec<String>> {
    as_array(v, what)?
        .iter()
        .map(|e| as_str(e, &format!("every element of {what}")).map(str::to_string))
        .collect()
}

fn rational_of(v: &Value, what: &str) -> CliResult<Rational> {
    match v {
        Value::String(s) => {
            parse_rational(s).map_err(|e| invalid(format!("{what}: {e}")))
        }
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        Value::Number(_) => Err(invalid(format!(
            "{what}: decimals are not exact; write rationals as \"p/q\" strings"
        ))),
        _ => Err(invalid(format!("{what} must be a \"p/q\" string or integer"))),
    }
}

/// Builds one `ProbSpace` from `outcomes` + `probs` keys of an object.
fn space_of(obj: &serde_json::Map<String, Value>, what: &str) -> CliResult<SpaceRef> {
    let outcomes = obj
        .get("outcomes")
        .ok_or_else(|| invalid(format!("{what} is missing \"outcomes\"")))?;
    let probs = obj
        .get("probs")
        .ok_or_else(|| invalid(format!("{what} is missing \"probs\"")))?;
    let labels = string_list(outcomes, &format!("{what}.outcomes"))?;
    let weights = as_array(probs, &format!("{what}.probs"))?
        .iter()
        .enumerate()
        .map(|(i, p)| rational_of(p, &format!("{what}.probs[{i}]")))
        .collect::<CliResult<Vec<_>>>()?;
    if labels.len() != weights.len() {
        return Err(invalid(format!(
            "{what}: {} outcomes but {} probs",
            labels.len(),
            weights.len()
        )));
    }
    Ok(ProbSpace::new(labels, weights)?)
}

fn parse_queries(arr: &[Value]) -> CliResult<Vec<Query>> {
    let mut queries = Vec::new();
    for (i, q) in arr.iter().enumerate() {
        let what = format!("queries[{i}]");
        let obj = as_object(q, &what)?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "op" | "args" | "name") {
                return Err(invalid(format!("{what} has unknown key {key:?}")));
            }
        }
        let op = Op::parse(as_str(
            obj.get("op")
                .ok_or_else(|| invalid(format!("{what} is missing \"op\"")))?,
            &format!("{what}.op"),
        )?)?;
        let args_v = as_array(
            obj.get("args")
                .ok_or_else(|| invalid(format!("{what} is missing \"args\"")))?,
            &format!("{what}.args"),
        )?;
        let mut args = Vec::new();
        for (j, a) in args_v.iter().enumerate() {
            args.push(match a {
                Value::String(s) => Arg::Name(s.clone()),
                Value::Array(_) => Arg::List(string_list(a, &format!("{what}.args[{j}]"))?),
                _ => {
                    return Err(invalid(format!(
                        "{what}.args[{j}] must be a name or a list of names"
                    )))
                }
            });
        }
        let name = match obj.get("name") {
            None => None,
            Some(v) => Some(as_str(v, &format!("{what}.name"))?.to_string()),
        };
        queries.push(Query { op, args, name });
    }
    Ok(queries)
}

/// Shape/arity check for a query, plus reference resolution against the
/// names visible at its position.
fn validate_query(
    q: &Query,
    fields: &BTreeSet<String>,
    rvs: &BTreeSet<String>,
    what: &str,
) -> CliResult<()> {
    let names = |args: &[Arg]| -> CliResult<()> {
        for a in args {
            let check = |n: &String| -> CliResult<()> {
                if fields.contains(n) || LITERAL_FIELDS.contains(&n.as_str()) {
                    Ok(())
                } else {
                    Err(invalid(format!("{what} refers to unknown field {n:?}")))
                }
            };
            match a {
                Arg::Name(n) => check(n)?,
                Arg::List(l) => l.iter().try_for_each(check)?,
            }
        }
        Ok(())
    };
    let all_names = |args: &[Arg]| args.iter().all(|a| matches!(a, Arg::Name(_)));
    let all_lists = |args: &[Arg]| args.iter().all(|a| matches!(a, Arg::List(_)));
    let bad_shape = |msg: &str| Err(invalid(format!("{what}: {msg}")));

    match &q.op {
        Op::Meet | Op::Join => {
            if q.args.len() < 2 || !all_names(&q.args) {
                return bad_shape("expects at least two field names");
            }
            names(&q.args)
        }
        Op::Plus => {
            if q.args.len() != 2 || !all_names(&q.args) {
                return bad_shape("expects exactly two field names");
            }
            names(&q.args)
        }
        Op::Independent => {
            if q.args.len() < 2 || !all_names(&q.args) {
                return bad_shape("expects at least two field names");
            }
            names(&q.args)
        }
        Op::CondIndependent => {
            if q.args.len() != 3 || !all_names(&q.args) {
                return bad_shape("expects three field names (x, y, given z)");
            }
            names(&q.args)
        }
        Op::ComplementEnum => {
            if q.args.len() != 2 || !all_names(&q.args) {
                return bad_shape("expects two field names (of, in)");
            }
            names(&q.args)
        }
        Op::CondExp => {
            if q.args.len() != 2 || !all_names(&q.args) {
                return bad_shape("expects a random-variable name and a field name");
            }
            let rv = match &q.args[0] {
                Arg::Name(n) => n,
                Arg::List(_) => unreachable!(),
            };
            if !rvs.contains(rv) {
                return Err(invalid(format!(
                    "{what} refers to unknown random variable {rv:?}"
                )));
            }
            names(&q.args[1..])
        }
        Op::Law(id) => {
            let desc = law_lookup(id).expect("validated at op parse");
            match desc.shape {
                ArgShape::Fields(n) => {
                    if q.args.len() != n || !all_names(&q.args) {
                        return bad_shape(&format!("law {id} expects {n} field names"));
                    }
                }
                ArgShape::FamilyZ { min_family } => {
                    if q.args.len() != 2
                        || !matches!(&q.args[0], Arg::List(l) if l.len() >= min_family)
                        || !matches!(&q.args[1], Arg::Name(_))
                    {
                        return bad_shape(&format!(
                            "law {id} expects [family of >= {min_family}, z]"
                        ));
                    }
                }
                ArgShape::Matrix { cols } => {
                    if q.args.is_empty() || !all_lists(&q.args) {
                        return bad_shape(&format!("law {id} expects rows of field names"));
                    }
                    let widths: Vec<usize> = q
                        .args
                        .iter()
                        .map(|a| match a {
                            Arg::List(l) => l.len(),
                            Arg::Name(_) => unreachable!(),
                        })
                        .collect();
                    let want = cols.unwrap_or(widths[0]);
                    if widths.iter().any(|&w| w != want) || want == 0 {
                        return bad_shape(&format!("law {id} expects equal-width nonempty rows"));
                    }
                }
                ArgShape::ChainY => {
                    if q.args.len() != 2
                        || !matches!(&q.args[0], Arg::List(l) if !l.is_empty())
                        || !matches!(&q.args[1], Arg::Name(_))
                    {
                        return bad_shape(&format!("law {id} expects [chain, y]"));
                    }
                }
                ArgShape::TwoSided => {
                    if !(q.args.len() == 4 || q.args.len() == 6) || !all_names(&q.args) {
                        return bad_shape(&format!(
                            "law {id} expects a, b, a', b' and optionally x, y"
                        ));
                    }
                }
                ArgShape::Innovation => {
                    if q.args.len() != 3 || !all_lists(&q.args) {
                        return bad_shape(&format!("law {id} expects [f, g, h] lists"));
                    }
                }
            }
            names(&q.args)
        }
    }
}

pub fn parse_instance(text: &str) -> CliResult<Instance> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let obj = as_object(&root, "instance file")?;
    for key in obj.keys() {
        if !matches!(
            key.as_str(),
            "outcomes" | "probs" | "product" | "rvs" | "sigmas" | "queries"
        ) {
            return Err(invalid(format!("unknown top-level key {key:?}")));
        }
    }

    // the space: either outcomes+probs, or a product of factor spaces
    let space: SpaceRef = match obj.get("product") {
        Some(p) => {
            if obj.contains_key("outcomes") || obj.contains_key("probs") {
                return Err(invalid(
                    "give either outcomes/probs or a product, not both",
                ));
            }
            let factors = as_array(p, "product")?
                .iter()
                .enumerate()
                .map(|(i, f)| space_of(as_object(f, &format!("product[{i}]"))?, &format!("product[{i}]")))
                .collect::<CliResult<Vec<_>>>()?;
            ProductSpace::new(&factors)?.space().clone()
        }
        None => space_of(obj, "instance file")?,
    };

    // random variables
    let mut rvs: Vec<(String, RandomVariable)> = Vec::new();
    if let Some(v) = obj.get("rvs") {
        for (name, vals) in as_object(v, "rvs")? {
            let arr = as_array(vals, &format!("rvs.{name}"))?;
            if arr.len() != space.len() {
                return Err(invalid(format!(
                    "rvs.{name} has {} values for a {}-outcome space",
                    arr.len(),
                    space.len()
                )));
            }
            let values = arr
                .iter()
                .enumerate()
                .map(|(i, e)| match e {
                    Value::String(s) => Ok(match parse_rational(s) {
                        Ok(r) => RvValue::Rat(r),
                        Err(_) => RvValue::Label(s.clone()),
                    }),
                    _ => rational_of(e, &format!("rvs.{name}[{i}]")).map(RvValue::Rat),
                })
                .collect::<CliResult<Vec<_>>>()?;
            rvs.push((name.clone(), RandomVariable::new(&space, values)?));
        }
    }

    // fields
    let mut sigmas: Vec<(String, SigmaField)> = Vec::new();
    if let Some(v) = obj.get("sigmas") {
        for (name, spec) in as_object(v, "sigmas")? {
            if LITERAL_FIELDS.contains(&name.as_str()) {
                return Err(invalid(format!(
                    "sigma name {name:?} is reserved for the lattice bound"
                )));
            }
            let spec = as_object(spec, &format!("sigmas.{name}"))?;
            if spec.len() != 1 {
                return Err(invalid(format!(
                    "sigmas.{name} must have exactly one of rv/events/blocks"
                )));
            }
            let (kind, body) = spec.iter().next().unwrap();
            let field = match kind.as_str() {
                "rv" => {
                    let rv_name = as_str(body, &format!("sigmas.{name}.rv"))?;
                    let rv = rvs
                        .iter()
                        .find(|(n, _)| n == rv_name)
                        .map(|(_, r)| r)
                        .ok_or_else(|| {
                            invalid(format!(
                                "sigmas.{name} refers to unknown random variable {rv_name:?}"
                            ))
                        })?;
                    SigmaField::from_rv(rv)
                }
                "events" => {
                    let lists = as_array(body, &format!("sigmas.{name}.events"))?
                        .iter()
                        .enumerate()
                        .map(|(i, l)| string_list(l, &format!("sigmas.{name}.events[{i}]")))
                        .collect::<CliResult<Vec<_>>>()?;
                    let events = lists
                        .iter()
                        .map(|l| {
                            let refs: Vec<&str> = l.iter().map(String::as_str).collect();
                            Event::from_labels(&space, &refs).map_err(CliError::from)
                        })
                        .collect::<CliResult<Vec<_>>>()?;
                    SigmaField::from_events(&space, &events)?
                }
                "blocks" => {
                    let lists = as_array(body, &format!("sigmas.{name}.blocks"))?
                        .iter()
                        .enumerate()
                        .map(|(i, l)| string_list(l, &format!("sigmas.{name}.blocks[{i}]")))
                        .collect::<CliResult<Vec<_>>>()?;
                    let refs: Vec<Vec<&str>> = lists
                        .iter()
                        .map(|l| l.iter().map(String::as_str).collect())
                        .collect();
                    SigmaField::from_label_blocks(&space, &refs)?
                }
                other => {
                    return Err(invalid(format!(
                        "sigmas.{name} has unknown kind {other:?} (want rv, events or blocks)"
                    )))
                }
            };
            sigmas.push((name.clone(), field));
        }
    }

    // queries, with static reference/arity validation
    let queries = match obj.get("queries") {
        None => Vec::new(),
        Some(v) => parse_queries(as_array(v, "queries")?)?,
    };
    let mut visible: BTreeSet<String> = sigmas.iter().map(|(n, _)| n.clone()).collect();
    let rv_names: BTreeSet<String> = rvs.iter().map(|(n, _)| n.clone()).collect();
    for (i, q) in queries.iter().enumerate() {
        validate_query(q, &visible, &rv_names, &format!("queries[{i}]"))?;
        if let Some(name) = &q.name {
            if q.op.binds_field() {
                if visible.contains(name) || LITERAL_FIELDS.contains(&name.as_str()) {
                    return Err(invalid(format!(
                        "queries[{i}] rebinds existing field name {name:?}"
                    )));
                }
                visible.insert(name.clone());
            }
        }
    }

    Ok(Instance {
        space,
        sigmas,
        rvs,
        queries,
    })
}
