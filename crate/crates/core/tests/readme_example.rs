//! Keeps the README's library example honest: this is the same code,
//! compiled and run.

use sigma_lattice::condexp::{condexp_operator, Vector};
use sigma_lattice::error::Result;
use sigma_lattice::lattice::{independent, meet, plus};
use sigma_lattice::rational::Rational;
use sigma_lattice::sigma::SigmaField;
use sigma_lattice::space::ProbSpace;

#[test]
fn readme_example_runs() -> Result<()> {
    let sp = ProbSpace::uniform(&["hh", "ht", "th", "tt"])?;
    let first = SigmaField::from_label_blocks(&sp, &[vec!["hh", "ht"], vec!["th", "tt"]])?;
    let matches = SigmaField::from_label_blocks(&sp, &[vec!["hh", "tt"], vec!["ht", "th"]])?;

    assert!(independent(&first, &matches)?);
    assert!(plus(&first, &matches)?.is_discrete());
    assert!(meet(&first, &matches)?.is_trivial());

    let e = condexp_operator(&first);
    let ones = Vector::constant(&sp, Rational::from_integer(1.into()));
    assert_eq!(e.apply(&ones), ones);
    Ok(())
}
