//! Subcommand implementations. Each returns the full stdout text plus the
//! process exit code; main stays a thin argument-parsing shell.
//!
//! Exit codes: 0 = everything ran and every law held; 1 = some law
//! reported a false conclusion or a search found a counterexample;
//! 2 = parse or validation failure (also used by the argument parser).
//! Per-query evaluation errors inside an instance are reported inline in
//! the stream and do not change the exit code.

use std::fs;
use std::path::Path;

use serde_json::json;

use sigma_lattice::catalog::{catalog, CatalogEntry};
use sigma_lattice::complements::enumerate_complements;
use sigma_lattice::search::{falsify, shrink, Counterexample, GenParams, Mode};
use sigma_lattice::sigma::SigmaField;

use crate::emit::{entry_instance_json, law_instance_json};
use crate::instance::{parse_instance, CliError, CliResult, Instance, Op};
use crate::queries::{any_conclusion_false, run_queries, Ran};
use crate::render::{
    counterexample_human, entry_human, entry_json, eval_human, eval_json, field_json,
    report_json, to_bytes,
};

pub struct Output {
    pub text: String,
    pub code: i32,
}

fn ok(text: String, code: i32) -> CliResult<Output> {
    Ok(Output { text, code })
}

fn read_instance(path: &Path) -> CliResult<Instance> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

pub fn cmd_eval(path: &Path, structured: bool) -> CliResult<Output> {
    let inst = read_instance(path)?;
    let rans = run_queries(&inst);
    let code = if any_conclusion_false(&rans) { 1 } else { 0 };
    let text = if structured {
        to_bytes(&eval_json(&inst.space, &rans))
    } else {
        eval_human(&inst.space, &rans) + "\n"
    };
    ok(text, code)
}

pub fn cmd_laws(
    law: &str,
    file: Option<&Path>,
    random: bool,
    seed: u64,
    trials: u64,
    structured: bool,
) -> CliResult<Output> {
    sigma_lattice::laws::law_lookup(law).map_err(|e| CliError::Validation(e.to_string()))?;
    match (file, random) {
        (Some(path), false) => {
            let inst = read_instance(path)?;
            let rans: Vec<Ran> = run_queries(&inst)
                .into_iter()
                .filter(|r| {
                    inst.queries[r.index].op == Op::Law(law.to_string())
                })
                .collect();
            if rans.is_empty() {
                return Err(CliError::Validation(format!(
                    "{} has no law:{law} query",
                    path.display()
                )));
            }
            let code = if any_conclusion_false(&rans) { 1 } else { 0 };
            let text = if structured {
                to_bytes(&eval_json(&inst.space, &rans))
            } else {
                eval_human(&inst.space, &rans) + "\n"
            };
            ok(text, code)
        }
        (None, true) => {
            let params = GenParams::new(seed);
            let found = falsify(law, Mode::Soundness, trials, &params)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            render_search(law, Mode::Soundness, seed, trials, found, structured)
        }
        _ => Err(CliError::Validation(
            "give exactly one of --file or --random".into(),
        )),
    }
}

pub fn cmd_complements(
    of: &str,
    ambient: &str,
    path: &Path,
    structured: bool,
) -> CliResult<Output> {
    let inst = read_instance(path)?;
    let lookup = |name: &str| -> CliResult<SigmaField> {
        match name {
            "trivial" => Ok(SigmaField::trivial(&inst.space)),
            "discrete" => Ok(SigmaField::discrete(&inst.space)),
            _ => inst.sigma(name).cloned().ok_or_else(|| {
                CliError::Validation(format!("unknown sigma {name:?} in {}", path.display()))
            }),
        }
    };
    let of_f = lookup(of)?;
    let amb_f = lookup(ambient)?;
    let report =
        enumerate_complements(&of_f, &amb_f).map_err(|e| CliError::Validation(e.to_string()))?;
    let text = if structured {
        to_bytes(&json!({
            "of": field_json(&of_f),
            "in": field_json(&amb_f),
            "complements": report.complements.iter().map(field_json).collect::<Vec<_>>(),
            "searched": report.searched.to_string(),
        }))
    } else {
        let mut lines = vec![format!(
            "complements of {of} = {} in {ambient} = {}",
            of_f.render(),
            amb_f.render()
        )];
        if report.complements.is_empty() {
            lines.push(format!("none ({} candidates searched)", report.searched));
        } else {
            for c in &report.complements {
                lines.push(format!("  {}", c.render()));
            }
            lines.push(format!("({} candidates searched)", report.searched));
        }
        lines.join("\n") + "\n"
    };
    ok(text, 0)
}

fn entry_facts(entry: &CatalogEntry) -> CliResult<Vec<(String, bool)>> {
    Ok(entry
        .run_facts()
        .map_err(|e| CliError::Validation(e.to_string()))?
        .into_iter()
        .map(|fr| (fr.description, fr.pass))
        .collect())
}

pub fn cmd_catalog(
    id: &str,
    level: Option<usize>,
    emit: bool,
    structured: bool,
) -> CliResult<Output> {
    let entry = catalog(id, level).map_err(|e| CliError::Validation(e.to_string()))?;
    if emit {
        return ok(to_bytes(&entry_instance_json(&entry)), 0);
    }
    let facts = entry_facts(&entry)?;
    let code = if facts.iter().all(|(_, p)| *p) { 0 } else { 1 };
    let text = if structured {
        to_bytes(&entry_json(&entry, &facts))
    } else {
        entry_human(&entry, &facts) + "\n"
    };
    ok(text, code)
}

fn render_search(
    law: &str,
    mode: Mode,
    seed: u64,
    budget: u64,
    found: Option<Counterexample>,
    structured: bool,
) -> CliResult<Output> {
    match found {
        None => {
            let text = if structured {
                to_bytes(&json!({
                    "law": law,
                    "mode": mode.to_string(),
                    "seed": seed,
                    "budget": budget,
                    "found": false,
                }))
            } else {
                format!(
                    "no counterexample for {law} in {budget} trials ({mode} mode, seed {seed})\n"
                )
            };
            ok(text, 0)
        }
        Some(cex) => {
            let text = if structured {
                to_bytes(&json!({
                    "law": law,
                    "mode": mode.to_string(),
                    "seed": seed,
                    "budget": budget,
                    "found": true,
                    "trial": cex.trial,
                    "report": report_json(&cex.report),
                    "shrink": cex.shrink_trace,
                    "instance": law_instance_json(&cex.instance),
                }))
            } else {
                counterexample_human(&cex) + "\n"
            };
            ok(text, 1)
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_search(
    law: &str,
    mode: Mode,
    seed: u64,
    budget: u64,
    max_support: usize,
    weight_bound: u64,
    allow_null: bool,
    structured: bool,
) -> CliResult<Output> {
    let params = GenParams {
        seed,
        max_support,
        weight_bound,
        allow_null_outcomes: allow_null,
    };
    let found = falsify(law, mode, budget, &params)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let found = match found {
        Some(cex) => Some(shrink(&cex).map_err(|e| CliError::Validation(e.to_string()))?),
        None => None,
    };
    render_search(law, mode, seed, budget, found, structured)
}

