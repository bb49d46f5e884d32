//! Emission: turning catalog entries and found counterexamples back into
//! instance files, so every object the tool produces can be re-parsed and
//! re-checked by the tool.

use serde_json::{json, Value};

use sigma_lattice::catalog::{CatalogEntry, Fact, FieldExpr};
use sigma_lattice::laws::LawArgs;
use sigma_lattice::rational::format_rational;
use sigma_lattice::search::LawInstance;
use sigma_lattice::sigma::SigmaField;
use sigma_lattice::space::SpaceRef;

fn space_fields(space: &SpaceRef) -> (Value, Value) {
    let labels: Vec<String> = space.labels().to_vec();
    let probs: Vec<String> = (0..space.len())
        .map(|o| format_rational(space.weight(o)))
        .collect();
    (json!(labels), json!(probs))
}

fn sigma_spec(f: &SigmaField) -> Value {
    json!({ "blocks": f.label_blocks() })
}

/// Translates catalog facts into queries, binding compound field
/// expressions to deterministic temporaries.
struct Emitter {
    queries: Vec<Value>,
    bound: Vec<(String, String)>, // rendered expression -> bound name
    temps: usize,
}

impl Emitter {
    fn new() -> Emitter {
        Emitter {
            queries: Vec::new(),
            bound: Vec::new(),
            temps: 0,
        }
    }

    fn push(&mut self, op: &str, args: Vec<Value>, name: Option<String>) {
        let mut obj = serde_json::Map::new();
        obj.insert("op".into(), json!(op));
        obj.insert("args".into(), Value::Array(args));
        if let Some(n) = name {
            obj.insert("name".into(), json!(n));
        }
        self.queries.push(Value::Object(obj));
    }

    /// Returns a name for the expression, emitting meet/join queries for
    /// compound expressions (cached by rendered form).
    fn bind(&mut self, expr: &FieldExpr) -> String {
        match expr {
            FieldExpr::Named(n) => n.clone(),
            FieldExpr::Trivial => "trivial".into(),
            FieldExpr::Discrete => "discrete".into(),
            FieldExpr::Meet(a, b) | FieldExpr::Join(a, b) => {
                let key = expr.render();
                if let Some((_, name)) = self.bound.iter().find(|(k, _)| *k == key) {
                    return name.clone();
                }
                let ra = self.bind(a);
                let rb = self.bind(b);
                self.temps += 1;
                let name = format!("t{}", self.temps);
                let op = match expr {
                    FieldExpr::Meet(..) => "meet",
                    _ => "join",
                };
                self.push(op, vec![json!(ra), json!(rb)], Some(name.clone()));
                self.bound.push((key, name.clone()));
                name
            }
        }
    }

    fn bind_all(&mut self, exprs: &[FieldExpr]) -> Value {
        Value::Array(exprs.iter().map(|e| json!(self.bind(e))).collect())
    }

    fn fact(&mut self, fact: &Fact) {
        match fact {
            // pure comparisons: emit the sides so the report shows them
            Fact::FieldsEqual(a, b)
            | Fact::FieldsDiffer(a, b)
            | Fact::IsSub(a, b)
            | Fact::StrictSub(a, b) => {
                self.bind(a);
                self.bind(b);
            }
            Fact::BlockCount(a, _) | Fact::EquiprobableSign(a) => {
                self.bind(a);
            }
            Fact::Independent(a, b, _) => {
                let (ra, rb) = (self.bind(a), self.bind(b));
                self.push("independent", vec![json!(ra), json!(rb)], None);
            }
            Fact::IndependentFamily(fs, _) => {
                let args: Vec<Value> =
                    fs.iter().map(|f| json!(self.bind(f))).collect();
                // a family of fewer than two fields is vacuously
                // independent; there is nothing to query
                if args.len() >= 2 {
                    self.push("independent", args, None);
                }
            }
            Fact::PlusEquals(a, b, _) => {
                let (ra, rb) = (self.bind(a), self.bind(b));
                self.temps += 1;
                let name = format!("t{}", self.temps);
                self.push("plus", vec![json!(ra), json!(rb)], Some(name));
            }
            Fact::ComplementsAre(x, z, _) => {
                let (rx, rz) = (self.bind(x), self.bind(z));
                self.push("complement_enum", vec![json!(rx), json!(rz)], None);
            }
            Fact::Commutes(a, b, _) => {
                let (ra, rb) = (self.bind(a), self.bind(b));
                self.push(
                    "law:prop-indep-commute",
                    vec![json!(ra), json!(rb)],
                    None,
                );
            }
            Fact::Measurable(rv, a, _) => {
                let ra = self.bind(a);
                self.push("condexp", vec![json!(rv), json!(ra)], None);
            }
            Fact::ComplementsIi { x, y, z, .. } => {
                let (rx, ry, rz) = (self.bind(x), self.bind(y), self.bind(z));
                self.push(
                    "law:complements-ii",
                    vec![json!(rx), json!(ry), json!(rz)],
                    None,
                );
            }
            Fact::TwoSidedAll {
                a,
                b,
                a_prime,
                b_prime,
                x,
                y,
                ..
            } => {
                let args: Vec<Value> = [a, b, a_prime, b_prime, x, y]
                    .into_iter()
                    .map(|e| json!(self.bind(e)))
                    .collect();
                self.push("law:two-sided", args, None);
            }
            Fact::Innovation { f, g, h } => {
                let (rf, rg, rh) = (self.bind_all(f), self.bind_all(g), self.bind_all(h));
                self.push("law:innovation", vec![rf, rg, rh], None);
            }
            Fact::ChainLaw { chain, y, .. } => {
                let rc = self.bind_all(chain);
                let ry = json!(self.bind(y));
                self.push("law:dist-ii-chain", vec![rc, ry], None);
            }
        }
    }
}

/// The whole entry as an instance file: space, named fields and random
/// variables, plus queries derived from the entry's facts.
pub fn entry_instance_json(entry: &CatalogEntry) -> Value {
    let (outcomes, probs) = space_fields(&entry.space);
    let mut root = serde_json::Map::new();
    root.insert("outcomes".into(), outcomes);
    root.insert("probs".into(), probs);
    if !entry.rvs.is_empty() {
        let rvs: serde_json::Map<String, Value> = entry
            .rvs
            .iter()
            .map(|(n, rv)| {
                let vals: Vec<String> =
                    rv.values().iter().map(|v| v.to_string()).collect();
                (n.clone(), json!(vals))
            })
            .collect();
        root.insert("rvs".into(), Value::Object(rvs));
    }
    let sigmas: serde_json::Map<String, Value> = entry
        .fields
        .iter()
        .map(|(n, f)| (n.clone(), sigma_spec(f)))
        .collect();
    root.insert("sigmas".into(), Value::Object(sigmas));

    let mut emitter = Emitter::new();
    for fact in &entry.facts {
        emitter.fact(fact);
    }
    root.insert("queries".into(), Value::Array(emitter.queries));
    Value::Object(root)
}

/// A found counterexample as an instance file: the generated space, the
/// argument fields under role names, and the one law query that fails.
pub fn law_instance_json(li: &LawInstance) -> Option<Value> {
    let space = li.space()?.clone();
    let (outcomes, probs) = space_fields(&space);
    let mut sigmas = serde_json::Map::new();
    let mut named = |prefix: &str, i: usize, f: &SigmaField| -> Value {
        let name = format!("{prefix}{i}");
        sigmas.insert(name.clone(), sigma_spec(f));
        json!(name)
    };
    let args: Vec<Value> = match &li.args {
        LawArgs::Fields(fs) => fs
            .iter()
            .enumerate()
            .map(|(i, f)| named("f", i + 1, f))
            .collect(),
        LawArgs::FamilyZ { family, z } => {
            let fam: Vec<Value> = family
                .iter()
                .enumerate()
                .map(|(i, f)| named("m", i + 1, f))
                .collect();
            vec![Value::Array(fam), named("z", 0, z)]
        }
        LawArgs::Matrix(rows) => rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                Value::Array(
                    row.iter()
                        .enumerate()
                        .map(|(c, f)| named(&format!("r{}c", r + 1), c + 1, f))
                        .collect(),
                )
            })
            .collect(),
        LawArgs::ChainY { chain, y } => {
            let ch: Vec<Value> = chain
                .iter()
                .enumerate()
                .map(|(i, f)| named("c", i + 1, f))
                .collect();
            vec![Value::Array(ch), named("y", 0, y)]
        }
        LawArgs::TwoSided {
            a,
            b,
            a_prime,
            b_prime,
            x,
            y,
        } => {
            let mut out = vec![
                named("a", 0, a),
                named("b", 0, b),
                named("ap", 0, a_prime),
                named("bp", 0, b_prime),
            ];
            if let (Some(x), Some(y)) = (x, y) {
                out.push(named("x", 0, x));
                out.push(named("y", 0, y));
            }
            out
        }
        LawArgs::Innovation { f, g, h } => {
            let ff: Vec<Value> =
                f.iter().enumerate().map(|(i, s)| named("f", i, s)).collect();
            let gg: Vec<Value> =
                g.iter().enumerate().map(|(i, s)| named("g", i, s)).collect();
            let hh: Vec<Value> = h
                .iter()
                .enumerate()
                .map(|(i, s)| named("h", i + 1, s))
                .collect();
            vec![Value::Array(ff), Value::Array(gg), Value::Array(hh)]
        }
    };
    let query = json!({ "op": format!("law:{}", li.law), "args": args });
    Some(json!({
        "outcomes": outcomes,
        "probs": probs,
        "sigmas": sigmas,
        "queries": [query],
    }))
}
