//! Parser validation, query execution, and emission round-trips.

use siglat::emit::entry_instance_json;
use siglat::instance::{parse_instance, CliError};
use siglat::queries::{any_conclusion_false, run_queries, Outcome};
use siglat::render::to_bytes;

use sigma_lattice::catalog::{catalog, CATALOG_IDS};
use sigma_lattice::rational::rat;

const Q4: &str = r#"{
  "outcomes": ["o1", "o2", "o3", "o4"],
  "probs": ["1/4", "1/4", "1/4", "1/4"],
  "rvs": { "xi1": [1, 1, -1, -1], "xi2": [1, -1, 1, -1] },
  "sigmas": {
    "X": { "rv": "xi1" },
    "Z": { "rv": "xi2" },
    "Y": { "blocks": [["o1", "o4"], ["o2", "o3"]] }
  },
  "queries": [
    { "op": "meet", "args": ["X", "Y"] },
    { "op": "join", "args": ["X", "Z"], "name": "XZ" },
    { "op": "plus", "args": ["X", "X"] },
    { "op": "meet", "args": ["XZ", "Y"] },
    { "op": "law:dist-ii-pairs", "args": ["X", "X", "Z", "Z"] }
  ]
}"#;

#[test]
fn parses_and_runs_the_q4_file() {
    let inst = parse_instance(Q4).unwrap();
    assert_eq!(inst.space.len(), 4);
    assert_eq!(inst.sigmas.len(), 3);

    let rans = run_queries(&inst);
    assert_eq!(rans.len(), 5);
    // meet(X, Y) is trivial: one block of all four outcomes
    match &rans[0].outcome {
        Outcome::Field(f) => assert!(f.is_trivial()),
        o => panic!("expected field, got {o:?}"),
    }
    // plus(X, X) fails inline and the stream continues
    assert!(matches!(&rans[2].outcome, Outcome::Inline(_)));
    // meet(join(X,Z), Y) = meet(discrete, Y) = Y
    match &rans[3].outcome {
        Outcome::Field(f) => assert_eq!(f.render(), "{o1,o4}{o2,o3}"),
        o => panic!("expected field, got {o:?}"),
    }
    match &rans[4].outcome {
        Outcome::Report(r) => {
            assert!(r.hypotheses_hold());
            assert_eq!(r.conclusion, Some(true));
        }
        o => panic!("expected report, got {o:?}"),
    }
    assert!(!any_conclusion_false(&rans));
}

#[test]
fn null_outcomes_are_dropped_from_blocks() {
    let text = r#"{
      "outcomes": ["a", "b", "c"],
      "probs": ["1/2", "1/2", "0"],
      "sigmas": { "X": { "blocks": [["a", "c"], ["b"]] } },
      "queries": []
    }"#;
    let inst = parse_instance(text).unwrap();
    let x = inst.sigma("X").unwrap();
    assert_eq!(x.render(), "{a}{b}");
}

fn validation_message(text: &str) -> String {
    match parse_instance(text) {
        Err(CliError::Validation(m)) => m,
        other => panic!("expected validation error, got {other:?}"),
    }
}

#[test]
fn rejects_schema_violations() {
    // mass
    assert!(validation_message(r#"{"outcomes":["a","b"],"probs":["1/2","1/3"]}"#)
        .contains("sum"));
    // decimals
    assert!(validation_message(r#"{"outcomes":["a","b"],"probs":[0.5,0.5]}"#)
        .contains("p/q"));
    // unknown field reference in a query
    assert!(validation_message(
        r#"{"outcomes":["a","b"],"probs":["1/2","1/2"],
            "queries":[{"op":"meet","args":["A","B"]}]}"#
    )
    .contains("unknown field"));
    // unknown law
    assert!(validation_message(
        r#"{"outcomes":["a","b"],"probs":["1/2","1/2"],
            "queries":[{"op":"law:nope","args":[]}]}"#
    )
    .contains("law"));
    // arity
    assert!(validation_message(
        r#"{"outcomes":["a","b"],"probs":["1/2","1/2"],
            "sigmas":{"X":{"blocks":[["a","b"]]}},
            "queries":[{"op":"plus","args":["X"]}]}"#
    )
    .contains("exactly two"));
    // reserved name
    assert!(validation_message(
        r#"{"outcomes":["a","b"],"probs":["1/2","1/2"],
            "sigmas":{"trivial":{"blocks":[["a","b"]]}}}"#
    )
    .contains("reserved"));
    // rebinding
    assert!(validation_message(
        r#"{"outcomes":["a","b"],"probs":["1/2","1/2"],
            "sigmas":{"X":{"blocks":[["a","b"]]}},
            "queries":[{"op":"join","args":["X","X"],"name":"X"}]}"#
    )
    .contains("rebinds"));
    // unknown top-level key
    assert!(validation_message(
        r#"{"outcomes":["a","b"],"probs":["1/2","1/2"],"extra":1}"#
    )
    .contains("unknown top-level"));
    // outcomes and product together
    assert!(validation_message(
        r#"{"outcomes":["a"],"probs":["1"],
            "product":[{"outcomes":["a","b"],"probs":["1/2","1/2"]}]}"#
    )
    .contains("not both"));
}

#[test]
fn malformed_json_is_a_parse_error() {
    match parse_instance("{ not json") {
        Err(CliError::Parse(m)) => assert!(m.contains("line")),
        other => panic!("expected parse error, got {other:?}"),
    }
}

#[test]
fn every_catalog_entry_round_trips_and_replays_clean() {
    for id in CATALOG_IDS {
        let entry = catalog(id, None).unwrap();
        let emitted = to_bytes(&entry_instance_json(&entry));
        let inst = parse_instance(&emitted).unwrap();

        // the space round-trips exactly
        assert_eq!(inst.space.labels(), entry.space.labels(), "{id}");
        for o in 0..entry.space.len() {
            assert_eq!(inst.space.weight(o), entry.space.weight(o), "{id}");
        }
        // every named field round-trips to the same canonical partition
        for (name, field) in &entry.fields {
            let parsed = inst.sigma(name).unwrap_or_else(|| panic!("{id}: {name}"));
            assert_eq!(parsed.blocks(), field.blocks(), "{id}: {name}");
        }
        // replaying the derived queries raises no inline errors and no
        // false law conclusions
        let rans = run_queries(&inst);
        for r in &rans {
            assert!(
                !matches!(r.outcome, Outcome::Inline(_)),
                "{id}: query {} errored",
                r.text
            );
        }
        assert!(!any_conclusion_false(&rans), "{id}");
    }
}

#[test]
fn leveled_emission_round_trips() {
    for n in [2, 4] {
        let entry = catalog("vanishing", Some(n)).unwrap();
        let emitted = to_bytes(&entry_instance_json(&entry));
        let inst = parse_instance(&emitted).unwrap();
        let rans = run_queries(&inst);
        assert!(rans.iter().all(|r| !matches!(r.outcome, Outcome::Inline(_))));
        assert!(!any_conclusion_false(&rans));
    }
}

#[test]
fn rv_values_accept_rationals_and_labels() {
    let text = r#"{
      "outcomes": ["a", "b"],
      "probs": ["3/4", "1/4"],
      "rvs": { "W": ["1/3", "red"] },
      "sigmas": { "X": { "rv": "W" } },
      "queries": [ { "op": "condexp", "args": ["W", "X"] } ]
    }"#;
    let inst = parse_instance(text).unwrap();
    assert_eq!(inst.rv("W").unwrap().value(0).to_string(), "1/3");
    let rans = run_queries(&inst);
    // label-valued rv has no vector: inline error, not a crash
    assert!(matches!(&rans[0].outcome, Outcome::Inline(_)));
    assert_eq!(inst.space.weight(0), &rat(3, 4));
}
