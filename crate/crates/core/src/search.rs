//! Randomized generation of spaces and fields, law falsification, and
//! counterexample shrinking.
//!
//! Everything here is a pure function of its seeds: a `(law, mode, seed,
//! budget, params)` tuple always produces the same outcome, and shrinking
//! scans reductions in a fixed order.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::join;
use crate::laws::{law_lookup, run_law, LawArgs};
use crate::rational::Rational;
use crate::report::LawReport;
use crate::sigma::SigmaField;
use crate::space::{ProbSpace, ProductSpace, SpaceRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    /// Largest number of outcomes a generated space may have.
    pub max_support: usize,
    /// Raw weights are drawn as integers in `1..=weight_bound`.
    pub weight_bound: u64,
    /// Whether generated spaces may contain zero-weight outcomes.
    pub allow_null_outcomes: bool,
}

impl GenParams {
    pub fn new(seed: u64) -> GenParams {
        GenParams {
            seed,
            max_support: 6,
            weight_bound: 8,
            allow_null_outcomes: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_support < 2 {
            return Err(Error::PreconditionFailed(
                "max_support must be at least 2".into(),
            ));
        }
        if self.weight_bound < 1 {
            return Err(Error::PreconditionFailed(
                "weight_bound must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams::new(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Hunt for hypotheses-true, conclusion-false instances. A hit on any
    /// registered law is an implementation bug.
    Soundness,
    /// Hunt for conclusion-false instances regardless of hypotheses.
    Counterexample,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Soundness => write!(f, "soundness"),
            Mode::Counterexample => write!(f, "counterexample"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "soundness" => Ok(Mode::Soundness),
            "counterexample" => Ok(Mode::Counterexample),
            other => Err(Error::PreconditionFailed(format!(
                "unknown mode {other:?}; expected soundness or counterexample"
            ))),
        }
    }
}

/// A law together with fully bound arguments; replayable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawInstance {
    pub law: String,
    pub args: LawArgs,
}

impl LawInstance {
    pub fn replay(&self) -> Result<LawReport> {
        run_law(&self.law, &self.args)
    }

    pub fn space(&self) -> Option<&SpaceRef> {
        args_fields(&self.args).first().map(|f| f.space())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub mode: Mode,
    pub instance: LawInstance,
    pub report: LawReport,
    /// The seed of the generating sweep and the trial index that hit.
    pub seed: u64,
    pub trial: u64,
    /// Reduction steps applied by [`shrink`], in order.
    pub shrink_trace: Vec<String>,
}

fn mix(seed: u64, trial: u64) -> u64 {
    // splitmix64 finalizer over the pair
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic random space: support size in `[2, max_support]`, exact
/// integer weights normalized to mass one.
pub fn random_space(params: &GenParams) -> SpaceRef {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    random_space_rng(&mut rng, params)
}

fn random_space_rng(rng: &mut ChaCha8Rng, params: &GenParams) -> SpaceRef {
    let n = rng.gen_range(2..=params.max_support);
    let mut raw: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=params.weight_bound)).collect();
    if params.allow_null_outcomes {
        for w in raw.iter_mut() {
            if rng.gen_range(0..4) == 0 {
                *w = 0;
            }
        }
        // Keep at least two outcomes with mass.
        let mut pos = raw.iter().filter(|w| **w > 0).count();
        for w in raw.iter_mut() {
            if pos >= 2 {
                break;
            }
            if *w == 0 {
                *w = 1;
                pos += 1;
            }
        }
    }
    let total: u64 = raw.iter().sum();
    let labels: Vec<String> = (1..=n).map(|i| format!("o{i}")).collect();
    let weights: Vec<Rational> = raw
        .iter()
        .map(|w| Rational::new(BigInt::from(*w), BigInt::from(total)))
        .collect();
    ProbSpace::new(labels, weights).expect("generated weights are a distribution")
}

/// Deterministic random field: a random merge chain applied to the
/// discrete partition of the support.
pub fn random_sigma(seed: u64, space: &SpaceRef) -> SigmaField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_sigma_rng(&mut rng, space)
}

fn random_sigma_rng(rng: &mut ChaCha8Rng, space: &SpaceRef) -> SigmaField {
    random_coarsening_rng(rng, &SigmaField::discrete(space))
}

/// Random coarsening of `field`: merges a random number of random block
/// pairs. The result is always a sub-field of `field`.
fn random_coarsening_rng(rng: &mut ChaCha8Rng, field: &SigmaField) -> SigmaField {
    let mut blocks: Vec<Vec<usize>> = field.blocks().to_vec();
    if blocks.len() <= 1 {
        return field.clone();
    }
    let merges = rng.gen_range(0..blocks.len());
    for _ in 0..merges {
        if blocks.len() == 1 {
            break;
        }
        let a = rng.gen_range(0..blocks.len());
        let mut b = rng.gen_range(0..blocks.len() - 1);
        if b >= a {
            b += 1;
        }
        let grabbed = blocks.swap_remove(b.max(a));
        blocks[b.min(a)].extend(grabbed);
    }
    SigmaField::from_blocks(field.space(), &blocks).expect("merged blocks partition the support")
}

/// Two independent "directions": a product of two small factors, sized so
/// the whole space stays within `max_support` outcomes.
struct TwoFactorPool {
    prod: ProductSpace,
}

impl TwoFactorPool {
    fn generate(rng: &mut ChaCha8Rng, params: &GenParams) -> TwoFactorPool {
        let sizes = match rng.gen_range(0..3) {
            0 => (2usize, 2usize),
            1 => (2, 3),
            _ => (3, 2),
        };
        let factor = |rng: &mut ChaCha8Rng, n: usize, tag: char| -> SpaceRef {
            let labels: Vec<String> = (1..=n).map(|i| format!("{tag}{i}")).collect();
            if rng.gen_bool(0.5) {
                ProbSpace::uniform(&labels.iter().map(String::as_str).collect::<Vec<_>>()).unwrap()
            } else {
                let raw: Vec<u64> =
                    (0..n).map(|_| rng.gen_range(1..=params.weight_bound)).collect();
                let total: u64 = raw.iter().sum();
                let weights = raw
                    .iter()
                    .map(|w| Rational::new(BigInt::from(*w), BigInt::from(total)))
                    .collect();
                ProbSpace::new(labels, weights).unwrap()
            }
        };
        let f0 = factor(rng, sizes.0, 'a');
        let f1 = factor(rng, sizes.1, 'b');
        let prod = ProductSpace::new(&[f0, f1]).unwrap();
        TwoFactorPool { prod }
    }

    fn space(&self) -> &SpaceRef {
        self.prod.space()
    }

    /// Random field living entirely inside factor `k`'s lift; independent
    /// of anything lifted from the other factor.
    fn lifted_random(&self, rng: &mut ChaCha8Rng, k: usize) -> SigmaField {
        let f = random_sigma_rng(rng, &self.prod.factors()[k].clone());
        self.prod.lift_sigma(k, &f).unwrap()
    }
}

fn gen_structured(law: &str, rng: &mut ChaCha8Rng, params: &GenParams) -> Result<LawArgs> {
    let pool = TwoFactorPool::generate(rng, params);
    let space = pool.space().clone();
    Ok(match law {
        "dist-i" => {
            let nrows = rng.gen_range(1..=3);
            let rows = (0..nrows)
                .map(|_| vec![pool.lifted_random(rng, 0), pool.lifted_random(rng, 1)])
                .collect();
            LawArgs::Matrix(rows)
        }
        "dist-ii-pairs" => LawArgs::Fields(vec![
            pool.lifted_random(rng, 0),
            pool.lifted_random(rng, 0),
            pool.lifted_random(rng, 1),
            pool.lifted_random(rng, 1),
        ]),
        "dist-ii-chain" => {
            let len = rng.gen_range(1..=3);
            let mut chain = vec![pool.lifted_random(rng, 0)];
            for _ in 1..len {
                let next = random_coarsening_rng(rng, chain.last().unwrap());
                chain.push(next);
            }
            LawArgs::ChainY {
                chain,
                y: pool.lifted_random(rng, 1),
            }
        }
        "dist-iii" | "dist-iv" => {
            let a0 = pool.lifted_random(rng, 0);
            let a1 = pool.lifted_random(rng, 1);
            let z = join(
                &random_coarsening_rng(rng, &a0),
                &random_coarsening_rng(rng, &a1),
            )?;
            LawArgs::FamilyZ {
                family: vec![a0, a1],
                z,
            }
        }
        "dist-v" => {
            let nrows = rng.gen_range(1..=3);
            let rows = (0..nrows)
                .map(|_| vec![pool.lifted_random(rng, 0), pool.lifted_random(rng, 1)])
                .collect();
            LawArgs::Matrix(rows)
        }
        "remark-i" => {
            let b = pool.lifted_random(rng, 0);
            let c = pool.lifted_random(rng, 1);
            let a = if rng.gen_bool(0.75) {
                random_coarsening_rng(rng, &b)
            } else {
                random_sigma_rng(rng, &space)
            };
            LawArgs::Fields(vec![a, b, c])
        }
        "remark-ii" => {
            let a = pool.lifted_random(rng, 0);
            let c = pool.lifted_random(rng, 1);
            let b = if rng.gen_bool(0.75) {
                a.clone()
            } else {
                random_coarsening_rng(rng, &a)
            };
            LawArgs::Fields(vec![a, b, c])
        }
        "prop-indep-commute" => LawArgs::Fields(vec![
            random_sigma_rng(rng, &space),
            random_sigma_rng(rng, &space),
        ]),
        "complements-ii" => {
            let x = pool.lifted_random(rng, 0);
            let y = pool.lifted_random(rng, 1);
            let z = random_coarsening_rng(rng, &join(&x, &y)?);
            LawArgs::Fields(vec![x, y, z])
        }
        "two-sided" => {
            let triv = SigmaField::trivial(&space);
            match rng.gen_range(0..3) {
                0 => {
                    // a' = a + z, b = 0 + z
                    let a = pool.lifted_random(rng, 0);
                    let z = pool.lifted_random(rng, 1);
                    LawArgs::TwoSided {
                        a: a.clone(),
                        b: z.clone(),
                        a_prime: join(&a, &z)?,
                        b_prime: triv,
                        x: Some(z.clone()),
                        y: Some(z),
                    }
                }
                1 => {
                    // a = 0, b = b' + z
                    let b_prime = pool.lifted_random(rng, 0);
                    let z = pool.lifted_random(rng, 1);
                    LawArgs::TwoSided {
                        a: triv,
                        b: join(&b_prime, &z)?,
                        a_prime: z.clone(),
                        b_prime,
                        x: Some(z.clone()),
                        y: Some(z),
                    }
                }
                _ => {
                    // degenerate: z = 0
                    let a = pool.lifted_random(rng, 0);
                    let b = pool.lifted_random(rng, 1);
                    LawArgs::TwoSided {
                        a: a.clone(),
                        b: b.clone(),
                        a_prime: a,
                        b_prime: b,
                        x: Some(triv.clone()),
                        y: Some(triv),
                    }
                }
            }
        }
        "innovation" => {
            let triv = SigmaField::trivial(&space);
            let f1 = pool.lifted_random(rng, 0);
            let h1 = pool.lifted_random(rng, 1);
            let f0 = join(&f1, &h1)?;
            match rng.gen_range(0..3) {
                0 => LawArgs::Innovation {
                    f: vec![f0, f1],
                    g: vec![triv, h1.clone()],
                    h: vec![h1],
                },
                1 => {
                    // pad with a trivial innovation at the end
                    LawArgs::Innovation {
                        f: vec![f0, f1.clone(), f1],
                        g: vec![triv.clone(), h1.clone(), h1.clone()],
                        h: vec![h1, triv],
                    }
                }
                _ => {
                    // pad with a trivial innovation at the front
                    LawArgs::Innovation {
                        f: vec![f0.clone(), f0, f1],
                        g: vec![triv.clone(), triv.clone(), h1.clone()],
                        h: vec![triv, h1],
                    }
                }
            }
        }
        other => return Err(Error::UnknownLaw(other.into())),
    })
}

fn gen_free(law: &str, rng: &mut ChaCha8Rng, params: &GenParams) -> Result<LawArgs> {
    let space = random_space_rng(rng, params);
    fn fields(rng: &mut ChaCha8Rng, sp: &SpaceRef, n: usize) -> Vec<SigmaField> {
        (0..n).map(|_| random_sigma_rng(rng, sp)).collect()
    }
    Ok(match law {
        "dist-i" | "dist-v" => LawArgs::Matrix(vec![
            fields(rng, &space, 2),
            fields(rng, &space, 2),
        ]),
        "dist-ii-pairs" => LawArgs::Fields(fields(rng, &space, 4)),
        "dist-ii-chain" => {
            let len = rng.gen_range(1..=3);
            let mut chain = vec![random_sigma_rng(rng, &space)];
            for _ in 1..len {
                let next = random_coarsening_rng(rng, chain.last().unwrap());
                chain.push(next);
            }
            LawArgs::ChainY {
                chain,
                y: random_sigma_rng(rng, &space),
            }
        }
        "dist-iii" | "dist-iv" => LawArgs::FamilyZ {
            family: fields(rng, &space, 2),
            z: random_sigma_rng(rng, &space),
        },
        "remark-i" | "remark-ii" => LawArgs::Fields(fields(rng, &space, 3)),
        "prop-indep-commute" => LawArgs::Fields(fields(rng, &space, 2)),
        "complements-ii" => {
            let x = random_sigma_rng(rng, &space);
            let y = random_sigma_rng(rng, &space);
            let z = random_coarsening_rng(rng, &join(&x, &y)?);
            LawArgs::Fields(vec![x, y, z])
        }
        other => return Err(Error::UnknownLaw(other.into())),
    })
}

fn gen_instance(
    law: &str,
    mode: Mode,
    rng: &mut ChaCha8Rng,
    params: &GenParams,
) -> Result<LawArgs> {
    // Free random data essentially never satisfies the relational
    // preconditions of these two laws, so they get structured instances in
    // both modes.
    let structured = mode == Mode::Soundness || law == "two-sided" || law == "innovation";
    if structured {
        gen_structured(law, rng, params)
    } else {
        gen_free(law, rng, params)
    }
}

fn trial_skippable(err: &Error) -> bool {
    matches!(
        err,
        Error::PreconditionFailed(_)
            | Error::NotIndependent
            | Error::CapExceeded { .. }
            | Error::EmptyFamily
            | Error::NotSub(_)
    )
}

fn report_hits(report: &LawReport, mode: Mode) -> bool {
    match mode {
        Mode::Soundness => report.hypotheses_hold() && report.conclusion == Some(false),
        Mode::Counterexample => report.conclusion == Some(false),
    }
}

/// Runs up to `budget` randomized trials of `law_id`, returning the first
/// instance whose report matches the mode's failure condition. Trials
/// whose preconditions fail are skipped, not counted as hits.
pub fn falsify(
    law_id: &str,
    mode: Mode,
    budget: u64,
    params: &GenParams,
) -> Result<Option<Counterexample>> {
    law_lookup(law_id)?;
    params.validate()?;
    for trial in 0..budget {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(params.seed, trial));
        let args = match gen_instance(law_id, mode, &mut rng, params) {
            Ok(args) => args,
            Err(e) if trial_skippable(&e) => continue,
            Err(e) => return Err(e),
        };
        let report = match run_law(law_id, &args) {
            Ok(r) => r,
            Err(e) if trial_skippable(&e) => continue,
            Err(e) => return Err(e),
        };
        if report_hits(&report, mode) {
            return Ok(Some(Counterexample {
                mode,
                instance: LawInstance {
                    law: law_id.into(),
                    args,
                },
                report,
                seed: params.seed,
                trial,
                shrink_trace: Vec::new(),
            }));
        }
    }
    Ok(None)
}

pub(crate) fn args_fields(args: &LawArgs) -> Vec<&SigmaField> {
    match args {
        LawArgs::Fields(fs) => fs.iter().collect(),
        LawArgs::FamilyZ { family, z } => family.iter().chain([z]).collect(),
        LawArgs::Matrix(rows) => rows.iter().flatten().collect(),
        LawArgs::ChainY { chain, y } => chain.iter().chain([y]).collect(),
        LawArgs::TwoSided {
            a,
            b,
            a_prime,
            b_prime,
            x,
            y,
        } => [a, b, a_prime, b_prime]
            .into_iter()
            .chain(x.iter())
            .chain(y.iter())
            .collect(),
        LawArgs::Innovation { f, g, h } => f.iter().chain(g).chain(h).collect(),
    }
}

fn map_args(
    args: &LawArgs,
    f: &mut impl FnMut(&SigmaField) -> Result<SigmaField>,
) -> Result<LawArgs> {
    let map_vec = |fs: &[SigmaField], f: &mut dyn FnMut(&SigmaField) -> Result<SigmaField>| {
        fs.iter().map(f).collect::<Result<Vec<_>>>()
    };
    Ok(match args {
        LawArgs::Fields(fs) => LawArgs::Fields(map_vec(fs, f)?),
        LawArgs::FamilyZ { family, z } => LawArgs::FamilyZ {
            family: map_vec(family, f)?,
            z: f(z)?,
        },
        LawArgs::Matrix(rows) => LawArgs::Matrix(
            rows.iter()
                .map(|r| map_vec(r, f))
                .collect::<Result<Vec<_>>>()?,
        ),
        LawArgs::ChainY { chain, y } => LawArgs::ChainY {
            chain: map_vec(chain, f)?,
            y: f(y)?,
        },
        LawArgs::TwoSided {
            a,
            b,
            a_prime,
            b_prime,
            x,
            y,
        } => LawArgs::TwoSided {
            a: f(a)?,
            b: f(b)?,
            a_prime: f(a_prime)?,
            b_prime: f(b_prime)?,
            x: x.as_ref().map(&mut *f).transpose()?,
            y: y.as_ref().map(&mut *f).transpose()?,
        },
        LawArgs::Innovation { f: ff, g, h } => LawArgs::Innovation {
            f: map_vec(ff, f)?,
            g: map_vec(g, f)?,
            h: map_vec(h, f)?,
        },
    })
}

fn replace_field(args: &LawArgs, idx: usize, replacement: &SigmaField) -> Result<LawArgs> {
    let mut at = 0usize;
    map_args(args, &mut |f| {
        let out = if at == idx { replacement.clone() } else { f.clone() };
        at += 1;
        Ok(out)
    })
}

/// Lexicographic shrink measure: outcomes, then blocks, then the number
/// of non-dyadic weights, then total weight size. Any two non-dyadic
/// weights can be traded for a dyadic plus their (possibly non-dyadic)
/// combination, so the third component can always be driven to zero while
/// the failure is weight-insensitive.
fn measure(args: &LawArgs) -> (usize, usize, usize, u64) {
    let fields = args_fields(args);
    let space = fields[0].space();
    let outcomes = space.len();
    let blocks: usize = fields.iter().map(|f| f.block_count()).sum();
    let nondyadic = space
        .weights()
        .iter()
        .filter(|w| !crate::rational::is_dyadic(w))
        .count();
    let bits: u64 = space.weights().iter().map(|w| w.denom().bits()).sum();
    (outcomes, blocks, nondyadic, bits)
}

fn still_fails(law: &str, args: &LawArgs, mode: Mode) -> bool {
    matches!(run_law(law, args), Ok(r) if report_hits(&r, mode))
}

/// Rebuilds the whole instance on a space with outcome `victim` removed
/// and the remaining weights renormalized. `None` when any field stops
/// being a valid partition (which cannot happen) or the space degenerates.
fn delete_outcome(args: &LawArgs, victim: usize) -> Option<LawArgs> {
    let fields = args_fields(args);
    let space = fields[0].space().clone();
    if space.len() <= 1 {
        return None;
    }
    let keep: Vec<usize> = (0..space.len()).filter(|o| *o != victim).collect();
    let removed_mass = space.weight(victim).clone();
    let rest = Rational::one() - &removed_mass;
    if rest <= Rational::zero() {
        return None;
    }
    let labels: Vec<String> = keep.iter().map(|&o| space.label(o).to_string()).collect();
    let weights: Vec<Rational> = keep.iter().map(|&o| space.weight(o) / &rest).collect();
    let new_space = ProbSpace::new(labels, weights).ok()?;
    let remap = |o: usize| -> Option<usize> {
        match o.cmp(&victim) {
            std::cmp::Ordering::Less => Some(o),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(o - 1),
        }
    };
    map_args(args, &mut |f| {
        let blocks: Vec<Vec<usize>> = f
            .blocks()
            .iter()
            .map(|b| b.iter().filter_map(|&o| remap(o)).collect::<Vec<usize>>())
            .filter(|b| !b.is_empty())
            .collect();
        SigmaField::from_blocks(&new_space, &blocks)
    })
    .ok()
}

/// Replaces the weight at `i` by `target` and compensates on `j` so the
/// mass stays one. Fields keep their blocks; the support may only shrink.
fn reweight(args: &LawArgs, i: usize, j: usize, target: &Rational) -> Option<LawArgs> {
    let fields = args_fields(args);
    let space = fields[0].space().clone();
    let wi = space.weight(i).clone();
    let wj = space.weight(j).clone();
    let nj = &wj + &wi - target;
    if nj < Rational::zero() {
        return None;
    }
    let mut weights: Vec<Rational> = space.weights().to_vec();
    weights[i] = target.clone();
    weights[j] = nj;
    let new_space = ProbSpace::new(space.labels().to_vec(), weights).ok()?;
    map_args(args, &mut |f| SigmaField::from_blocks(&new_space, f.blocks())).ok()
}

const DYADIC_LADDER: [(i64, i64); 13] = [
    (1, 2),
    (1, 4),
    (3, 4),
    (1, 8),
    (3, 8),
    (5, 8),
    (7, 8),
    (1, 16),
    (3, 16),
    (5, 16),
    (7, 16),
    (1, 32),
    (1, 1),
];

/// Greedy shrink under a strictly decreasing (outcomes, blocks, weight
/// bits) measure: deletes outcomes, merges blocks within one field, and
/// simplifies weights toward dyadics, keeping only reductions that
/// preserve the failure recorded in `cex`. Errors with `ReplayMismatch`
/// when the instance does not reproduce its recorded report.
pub fn shrink(cex: &Counterexample) -> Result<Counterexample> {
    let replayed = cex.instance.replay()?;
    if replayed != cex.report {
        return Err(Error::ReplayMismatch);
    }
    let law = cex.instance.law.clone();
    let mode = cex.mode;
    let mut args = cex.instance.args.clone();
    let mut trace = cex.shrink_trace.clone();
    let mut m = measure(&args);

    'outer: loop {
        // 1. outcome deletion
        {
            let n = args_fields(&args)[0].space().len();
            for victim in 0..n {
                if let Some(cand) = delete_outcome(&args, victim) {
                    if measure(&cand) < m && still_fails(&law, &cand, mode) {
                        let label = args_fields(&args)[0].space().label(victim).to_string();
                        trace.push(format!("delete-outcome {label}"));
                        args = cand;
                        m = measure(&args);
                        continue 'outer;
                    }
                }
            }
        }
        // 2. block merge within a single field
        {
            let shapes: Vec<usize> = args_fields(&args).iter().map(|f| f.block_count()).collect();
            for (fi, &nb) in shapes.iter().enumerate() {
                for i in 0..nb {
                    for j in (i + 1)..nb {
                        let merged = {
                            let f = args_fields(&args)[fi];
                            let mut blocks = f.blocks().to_vec();
                            let grabbed = blocks.remove(j);
                            blocks[i].extend(grabbed);
                            match SigmaField::from_blocks(f.space(), &blocks) {
                                Ok(sf) => sf,
                                Err(_) => continue,
                            }
                        };
                        if let Ok(cand) = replace_field(&args, fi, &merged) {
                            if measure(&cand) < m && still_fails(&law, &cand, mode) {
                                trace.push(format!("merge-blocks field {fi}: {i}+{j}"));
                                args = cand;
                                m = measure(&args);
                                continue 'outer;
                            }
                        }
                    }
                }
            }
        }
        // 3. weight simplification toward dyadics
        {
            let space = args_fields(&args)[0].space().clone();
            let n = space.len();
            for i in 0..n {
                if space.weight(i) == &Rational::zero() {
                    continue;
                }
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for (p, q) in DYADIC_LADDER {
                        let target = Rational::new(BigInt::from(p), BigInt::from(q));
                        if &target == space.weight(i) {
                            continue;
                        }
                        if let Some(cand) = reweight(&args, i, j, &target) {
                            if measure(&cand) < m && still_fails(&law, &cand, mode) {
                                trace.push(format!(
                                    "reweight {} -> {p}/{q} (absorbed by {})",
                                    space.label(i),
                                    space.label(j)
                                ));
                                args = cand;
                                m = measure(&args);
                                continue 'outer;
                            }
                        }
                    }
                }
            }
        }
        break;
    }

    let instance = LawInstance { law, args };
    let report = instance.replay()?;
    Ok(Counterexample {
        mode,
        instance,
        report,
        seed: cex.seed,
        trial: cex.trial,
        shrink_trace: trace,
    })
}
