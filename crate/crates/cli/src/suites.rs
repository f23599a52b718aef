//! Suite dispatch: read the input, run the checks, assemble the report.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use relmonad::quantale::{quantale_bases, quantale_corpus, Quantale, VCat};
use relmonad::relmonad::RelativeMonad;
use relmonad::{Caps, Error};

use crate::checks;
use crate::corpus::{generate_corpus, CorpusSpec, InstanceKind};
use crate::input::{digest, Document, Input};
use crate::report::{RunReport, Verdict};
use crate::LabError;

/// Largest preorders and V-categories swept by the quantale corpus.
pub const QUANTALE_MAX_PREORDER: usize = 5;
pub const QUANTALE_MAX_VCAT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Law checks for any input kind.
    Validate,
    /// The Kleisli resolution and its universal opalgebra.
    Kleisli,
    /// Algebras and the comparison functor.
    #[value(alias = "compare")]
    Algebras,
    /// The nerve theorem; `--dual` adds the conerve theorem and duality.
    NerveCheck,
    /// Kleisli category against the collapse of the associated loose-monad.
    #[value(alias = "promonad-check")]
    Collapse,
    /// Section data round trip and single-entry mutants.
    SectionRoundtrip,
    /// The Eilenberg–Moore semanticiser square.
    Semanticiser,
    /// Quantales, V-categories and V-monads.
    #[value(alias = "quantale-validate", alias = "v-nerve-check")]
    Quantale,
    /// Monads on よ against loose-monads, for a V-category input.
    YoBijection,
    /// Every check over a generated or exhaustive corpus.
    Corpus,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Validate => "validate",
            Suite::Kleisli => "kleisli",
            Suite::Algebras => "algebras",
            Suite::NerveCheck => "nerve-check",
            Suite::Collapse => "collapse",
            Suite::SectionRoundtrip => "section-roundtrip",
            Suite::Semanticiser => "semanticiser",
            Suite::Quantale => "quantale",
            Suite::YoBijection => "yo-bijection",
            Suite::Corpus => "corpus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// JSON input document.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[arg(long, default_value_t = 4)]
    pub max_objects: usize,
    #[arg(long, default_value_t = 3)]
    pub max_hom: usize,
    /// Keep only instances with a dense root.
    #[arg(long)]
    pub dense: bool,
    #[arg(long)]
    pub dual: bool,
    /// Longest chain of 2-cells tested by the semanticiser.
    #[arg(long, default_value_t = 2)]
    pub chain_bound: usize,
    #[arg(long, value_enum, default_value_t = InstanceKind::Set)]
    pub instance: InstanceKind,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            input: None,
            seed: 0,
            count: 200,
            max_objects: 4,
            max_hom: 3,
            dense: false,
            dual: false,
            chain_bound: 2,
            instance: InstanceKind::Set,
            format: Format::Text,
        }
    }
}

impl Options {
    pub fn corpus_spec(&self) -> CorpusSpec {
        CorpusSpec {
            seed: self.seed,
            count: self.count,
            max_objects: self.max_objects,
            max_hom: self.max_hom,
            density_required: self.dense,
            instance: self.instance,
        }
    }
}

fn wrong_kind(suite: Suite, input: &Input) -> LabError {
    LabError::Usage(format!("suite {} does not accept a {} input", suite.name(), input.kind()))
}

/// Runs `f` on every item concurrently and flattens the verdicts in item order.
fn sweep<T: Sync>(items: &[T], f: impl Fn(usize, &T) -> Result<Vec<Verdict>, Error> + Sync) -> Result<Vec<Verdict>, Error> {
    let per: Vec<Vec<Verdict>> = items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect::<Result<_, _>>()?;
    Ok(per.into_iter().flatten().collect())
}

/// Stops after a failing law verdict, so constructions only see valid monads.
fn guarded(
    t: &RelativeMonad,
    f: impl FnOnce(&RelativeMonad) -> Result<Vec<Verdict>, Error>,
) -> Result<Vec<Verdict>, Error> {
    let laws = checks::monad_laws(0, t);
    if !laws.passed() {
        return Ok(vec![laws]);
    }
    let mut out = vec![laws];
    out.extend(f(t)?);
    Ok(out)
}

fn monad_suite(suite: Suite, t: &RelativeMonad, opts: &Options, caps: &Caps) -> Result<Vec<Verdict>, Error> {
    guarded(t, |t| match suite {
        Suite::Kleisli => checks::kleisli(0, t),
        Suite::Algebras => checks::algebras(0, t, &checks::build(t, caps)?, caps),
        Suite::NerveCheck => {
            let mut out = checks::nerve(0, t, &checks::build(t, caps)?, caps)?;
            if opts.dual {
                out.extend(checks::duality(0, t, caps)?);
            }
            Ok(out)
        }
        Suite::Collapse => checks::kleisli_collapse(0, t),
        Suite::SectionRoundtrip => checks::section_roundtrip(0, t),
        Suite::Semanticiser => checks::semanticiser(0, t, &checks::build(t, caps)?, opts.chain_bound, caps),
        _ => unreachable!("not a monad suite"),
    })
}

fn input_suite(suite: Suite, input: &Input, opts: &Options, caps: &Caps) -> Result<Vec<Verdict>, LabError> {
    Ok(match (suite, input) {
        (Suite::Validate, Input::Category(c)) => vec![checks::validate_category(0, c)],
        (Suite::Validate, Input::Monad(t)) => vec![checks::monad_laws(0, t)],
        (Suite::Validate, Input::Nat(n)) => vec![checks::validate_nat(0, n)],
        (Suite::Validate | Suite::Quantale, Input::Quantale(q)) => vec![checks::quantale_laws(0, q)],
        (Suite::Validate, Input::VCategory { quantale, category }) => {
            let v = relmonad::quantale::validate_vcat(quantale, category);
            vec![
                checks::quantale_laws(0, quantale),
                Verdict::new(0, "vcat-laws", v.passed(), serde_json::json!({ "violations": v.violations })),
            ]
        }
        (Suite::Validate, Input::VMonad { quantale, ambient, monad }) => {
            let a = ambient.full_subcategory(&monad.root);
            let v = relmonad::quantale::validate_v_monad(quantale, &a, ambient, monad);
            vec![Verdict::new(0, "v-monad-laws", v.passed(), serde_json::json!({ "violations": v.violations }))]
        }
        (Suite::Quantale, Input::VCategory { quantale, category }) => {
            quantale_guarded(quantale, |q| checks::v_category(0, q, category, true, caps))?
        }
        (Suite::Quantale, Input::VMonad { quantale, ambient, monad }) => {
            quantale_guarded(quantale, |q| checks::v_monad(0, q, ambient, monad, caps))?
        }
        (Suite::YoBijection, Input::VCategory { quantale, category }) => quantale_guarded(quantale, |q| {
            let laws = checks::v_category(0, q, category, false, caps)?;
            if !laws[0].passed() {
                return Ok(laws);
            }
            checks::yo_bijection(0, q, category, caps)
        })?,
        (Suite::Corpus | Suite::Quantale | Suite::YoBijection, _) => return Err(wrong_kind(suite, input)),
        (_, Input::Monad(t)) => monad_suite(suite, t, opts, caps)?,
        _ => return Err(wrong_kind(suite, input)),
    })
}

fn quantale_guarded(
    q: &Quantale,
    f: impl FnOnce(&Quantale) -> Result<Vec<Verdict>, Error>,
) -> Result<Vec<Verdict>, Error> {
    let laws = checks::quantale_laws(0, q);
    if !laws.passed() {
        return Ok(vec![laws]);
    }
    let mut out = vec![laws];
    out.extend(f(q)?);
    Ok(out)
}

/// The exhaustive quantale sweep: every base is checked for Yoneda and the
/// よ-bijection, then every instance for the enriched nerve theorem.
/// Instances are numbered after the bases.
pub fn quantale_sweep(q: &Quantale, caps: &Caps) -> Result<(usize, Vec<Verdict>), Error> {
    let bases: Vec<VCat> = quantale_bases(q, QUANTALE_MAX_PREORDER, QUANTALE_MAX_VCAT);
    let instances = quantale_corpus(q, &bases, caps)?;
    let mut out = vec![checks::quantale_laws(0, q)];
    out.extend(sweep(&bases, |i, e| {
        let mut v = checks::v_category(i, q, e, false, caps)?;
        v.extend(checks::yo_bijection(i, q, e, caps)?);
        Ok(v)
    })?);
    let offset = bases.len();
    out.extend(sweep(&instances, |i, inst| checks::v_monad(offset + i, q, &inst.base, &inst.monad, caps))?);
    Ok((bases.len() + instances.len(), out))
}

fn corpus_suite(opts: &Options, caps: &Caps) -> Result<(usize, Vec<Verdict>), LabError> {
    let spec = opts.corpus_spec();
    spec.validate()?;
    Ok(match spec.instance {
        InstanceKind::Set => {
            let monads = generate_corpus(&spec)?;
            let v = sweep(&monads, |i, t| checks::full_sweep(i, t, opts.chain_bound, caps))?;
            (monads.len(), v)
        }
        InstanceKind::Two => quantale_sweep(&Quantale::boolean(), caps)?,
        InstanceKind::ThreeChain => quantale_sweep(&Quantale::three_chain(), caps)?,
    })
}

/// Runs one suite. Errors are input or capacity errors (exit code 2).
pub fn run(suite: Suite, opts: &Options) -> Result<RunReport, LabError> {
    let start = Instant::now();
    let caps = Caps::default();
    let (digest, seed, instances, verdicts) = if suite == Suite::Corpus {
        if opts.input.is_some() {
            return Err(LabError::Usage("corpus does not take --input".into()));
        }
        let spec = serde_json::to_vec(&opts.corpus_spec())?;
        let (n, v) = corpus_suite(opts, &caps)?;
        (digest(&spec), Some(opts.seed), n, v)
    } else {
        let path = opts
            .input
            .as_ref()
            .ok_or_else(|| LabError::Usage(format!("suite {} needs --input", suite.name())))?;
        let bytes = std::fs::read(path)?;
        let input = Document::parse(&bytes)?.to_input(&caps)?;
        (digest(&bytes), None, 1, input_suite(suite, &input, opts, &caps)?)
    };
    let mut report = RunReport::new(suite.name(), digest, seed, instances, verdicts);
    report.wall_time = start.elapsed();
    Ok(report)
}
