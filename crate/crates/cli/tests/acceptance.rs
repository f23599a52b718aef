//! The acceptance criteria, one line each. Runs as a plain binary so the
//! verdicts are printed even when every criterion passes.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use relmonad::constructions::{build_kleisli, comparison_functor, enumerate_algebras};
use relmonad::fincat::is_strict_isomorphism;
use relmonad::loosemonad::{associated_loose_monad, collapse, em_square};
use relmonad::nervepullback::{
    build_nerve_pullback, check_conerve_theorem, check_nerve_theorem, comparison_to_pullback, dualize_monad, is_dense,
};
use relmonad::quantale::{check_v_loose_monad, v_yo_monad_bijection, Quantale, VCat, Value};
use relmonad::relmonad::{check_relative_monad, monad_from_section, section_from_monad, RelativeMonad};
use relmonad::{zoo, Caps};
use relmonad_lab::fixtures::{fixtures, Expect};
use relmonad_lab::suites::quantale_sweep;
use relmonad_lab::{generate_corpus, run, CorpusSpec, Document, Input, InstanceKind, Options, Status, Suite};

const SPAN_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(60);
const QUANTALE_LIMIT: Duration = Duration::from_secs(120);
const SWEEP_SEED: u64 = 7;
const SWEEP_COUNT: usize = 200;
const SWEEP_CAPS: (usize, usize) = (4, 3);
const MIN_SECTION_MUTANTS: usize = 20;
const CHAIN_BOUND: usize = 2;

type Outcome = Result<String, String>;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn spec(dense: bool) -> CorpusSpec {
    CorpusSpec {
        seed: SWEEP_SEED,
        count: SWEEP_COUNT,
        max_objects: SWEEP_CAPS.0,
        max_hom: SWEEP_CAPS.1,
        density_required: dense,
        instance: InstanceKind::Set,
    }
}

fn fixture_monads() -> Vec<(String, RelativeMonad)> {
    fixtures()
        .into_iter()
        .filter(|f| f.expect == Expect::Valid)
        .filter_map(|f| match f.document.to_input(&Caps::default()) {
            Ok(Input::Monad(t)) => Some((f.name.to_string(), t)),
            _ => None,
        })
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    ok.then_some(()).ok_or_else(msg)
}

struct Corpora {
    dense: Vec<RelativeMonad>,
    every: Vec<(String, RelativeMonad)>,
}

fn corpora() -> Result<Corpora, String> {
    let dense = generate_corpus(&spec(true)).map_err(|e| e.to_string())?;
    let plain = generate_corpus(&spec(false)).map_err(|e| e.to_string())?;
    let mut every: Vec<(String, RelativeMonad)> =
        dense.iter().enumerate().map(|(i, t)| (format!("dense #{i}"), t.clone())).collect();
    every.extend(plain.into_iter().enumerate().map(|(i, t)| (format!("plain #{i}"), t)));
    every.extend(fixture_monads());
    Ok(Corpora { dense, every })
}

fn span_counterexample() -> Outcome {
    let start = Instant::now();
    let bytes = std::fs::read(fixture_dir().join("span_monad.json")).map_err(|e| e.to_string())?;
    let doc = Document::parse(&bytes).map_err(|e| e.to_string())?;
    let Input::Monad(t) = doc.to_input(&Caps::default()).map_err(|e| e.to_string())? else {
        return Err("span_monad.json is not a relative monad".into());
    };
    let caps = Caps::default();
    let e = |x: relmonad::Error| x.to_string();
    let algebras = enumerate_algebras(&t, &caps).map_err(e)?.algebras.len();
    let kl = build_kleisli(&t).map_err(e)?;
    let np = build_nerve_pullback(&t, &kl, &caps).map_err(e)?;
    let dense = is_dense(t.root(), &caps).map_err(e)?.dense;
    let report = check_nerve_theorem(&t, &caps).map_err(e)?;
    let elapsed = start.elapsed();
    ensure(algebras == 1, || format!("{algebras} algebras"))?;
    ensure(np.category.size() == (3, 5), || format!("pullback apex {:?}", np.category.size()))?;
    ensure(**np.forget.target() == *zoo::span() && is_strict_isomorphism(&np.forget), || {
        "apex is not strictly isomorphic to the span".into()
    })?;
    ensure(!dense, || "root is dense".into())?;
    ensure(!report.comparison_iso, || "comparison is an isomorphism".into())?;
    ensure(elapsed < SPAN_LIMIT, || format!("{elapsed:.2?} ≥ {SPAN_LIMIT:?}"))?;
    Ok(format!("1 algebra, apex (3, 5) ≅ span, not dense, no iso in {elapsed:.2?}"))
}

fn nerve_theorem_sweep() -> Outcome {
    let start = Instant::now();
    let opts = Options {
        seed: SWEEP_SEED,
        count: SWEEP_COUNT,
        max_objects: SWEEP_CAPS.0,
        max_hom: SWEEP_CAPS.1,
        dense: true,
        ..Options::default()
    };
    let report = run(Suite::Corpus, &opts).map_err(|e| e.to_string())?;
    let iso = report
        .verdicts
        .iter()
        .filter(|v| v.check == "nerve-theorem" && v.detail["comparison_iso"] == true)
        .count();
    let caps = Caps::default();
    let mut strict = 0;
    for t in generate_corpus(&spec(true)).map_err(|e| e.to_string())? {
        let alg = enumerate_algebras(&t, &caps).map_err(|e| e.to_string())?;
        let np = build_nerve_pullback(&t, &build_kleisli(&t).map_err(|e| e.to_string())?, &caps).map_err(|e| e.to_string())?;
        if is_strict_isomorphism(&comparison_to_pullback(&t, &alg, &np).map_err(|e| e.to_string())?) {
            strict += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(report.exit_code() == 0, || format!("corpus suite exit {}", report.exit_code()))?;
    ensure(iso == SWEEP_COUNT && strict == SWEEP_COUNT, || format!("{iso}/{SWEEP_COUNT} reported, {strict}/{SWEEP_COUNT} strict"))?;
    ensure(elapsed < SWEEP_LIMIT, || format!("{elapsed:.2?} ≥ {SWEEP_LIMIT:?}"))?;
    Ok(format!("{strict}/{SWEEP_COUNT} strict isomorphisms in {elapsed:.2?}"))
}

fn kleisli_is_collapse(c: &Corpora) -> Outcome {
    let mut checked = 0;
    let dense = c.dense.iter().map(|t| ("dense".to_string(), t));
    for (name, t) in dense.chain(fixture_monads().iter().map(|(n, t)| (n.clone(), t)).collect::<Vec<_>>()) {
        let kl = build_kleisli(t).map_err(|e| format!("{name}: {e}"))?;
        let cl = collapse(&associated_loose_monad(t).map_err(|e| format!("{name}: {e}"))?).map_err(|e| format!("{name}: {e}"))?;
        ensure(kl.category == cl.category, || format!("{name}: tables differ"))?;
        checked += 1;
    }
    Ok(format!("{checked} instances bit-identical"))
}

fn section_round_trip(c: &Corpora) -> Outcome {
    let (mut mutants, mut rejected) = (0usize, 0usize);
    for (name, t) in &c.every {
        let sd = section_from_monad(t).map_err(|e| format!("{name}: {e}"))?;
        let back = monad_from_section(&sd).map_err(|e| format!("{name}: {e}"))?;
        ensure(back == *t, || format!("{name}: round trip differs"))?;
        let e = t.ambient();
        for (k, &(x, y, _)) in sd.kleisli_index().entries().iter().enumerate() {
            for &v in e.hom(t.t(x), t.t(y)) {
                if v == sd.section_table()[k] {
                    continue;
                }
                let m = sd.with_section_at(k, v).map_err(|e| format!("{name}: {e}"))?;
                let report = m.check();
                if report.passed() {
                    let rebuilt = monad_from_section(&m).map_err(|e| format!("{name}: {e}"))?;
                    ensure(check_relative_monad(&rebuilt).passed(), || format!("{name}: accepted mutant is no monad"))?;
                    continue;
                }
                mutants += 1;
                ensure(report.violations.iter().all(|w| !w.witness.is_empty()), || format!("{name}: witnessless violation"))?;
                ensure(monad_from_section(&m).is_err(), || format!("{name}: violating mutant accepted"))?;
                rejected += 1;
            }
        }
    }
    ensure(mutants >= MIN_SECTION_MUTANTS, || format!("only {mutants} violating mutants"))?;
    Ok(format!("{} round trips, {rejected}/{mutants} violating mutants rejected", c.every.len()))
}

fn comparison_density(c: &Corpora) -> Outcome {
    let caps = Caps::default();
    for (i, t) in c.dense.iter().enumerate() {
        let kl = build_kleisli(t).map_err(|e| e.to_string())?;
        let alg = enumerate_algebras(t, &caps).map_err(|e| e.to_string())?;
        let cmp = comparison_functor(t, &kl, &alg, &caps).map_err(|e| e.to_string())?;
        ensure(cmp.is_fully_faithful(), || format!("dense #{i}: i_T not fully faithful"))?;
        ensure(cmp.density.as_ref().is_some_and(|d| d.dense), || format!("dense #{i}: nerve of i_T not dense"))?;
    }
    for (name, t) in &c.every {
        let r = check_nerve_theorem(t, &caps).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.nerve_of_comparison_ok, || format!("{name}: nerve of comparison fails"))?;
    }
    Ok(format!("{} dense roots, {} nerve-of-comparison checks", c.dense.len(), c.every.len()))
}

fn semanticiser_certificate(c: &Corpora) -> Outcome {
    let caps = Caps::default();
    let mut cones = 0;
    for (i, t) in c.dense.iter().enumerate() {
        let kl = build_kleisli(t).map_err(|e| e.to_string())?;
        let alg = enumerate_algebras(t, &caps).map_err(|e| e.to_string())?;
        let sq = em_square(t, &kl, &alg);
        let id = sq.identity_cone();
        let mut universe = vec![id.clone()];
        universe.extend(id.points().map_err(|e| e.to_string())?);
        let cert = sq.check(&universe, CHAIN_BOUND, &caps).map_err(|e| e.to_string())?;
        ensure(cert.restriction, || format!("dense #{i}: restriction"))?;
        ensure(cert.density.dense, || format!("dense #{i}: density"))?;
        ensure(cert.one_dim(), || format!("dense #{i}: mediators {:?}", cert.mediator_counts))?;
        ensure(cert.two_dim.passed(), || format!("dense #{i}: 2-cells"))?;
        cones += universe.len();
    }
    Ok(format!("{} squares, {cones} cones with unique mediators", c.dense.len()))
}

struct QuantaleSweeps {
    runs: Vec<(&'static str, usize, Vec<relmonad_lab::Verdict>)>,
    elapsed: Duration,
}

fn quantale_sweeps() -> Result<QuantaleSweeps, String> {
    let start = Instant::now();
    let caps = Caps::default();
    let mut runs = Vec::new();
    for (label, q) in [("2", Quantale::boolean()), ("3-chain", Quantale::three_chain())] {
        let (n, verdicts) = quantale_sweep(&q, &caps).map_err(|e| e.to_string())?;
        runs.push((label, n, verdicts));
    }
    Ok(QuantaleSweeps {
        runs,
        elapsed: start.elapsed(),
    })
}

fn quantale_instance(s: &QuantaleSweeps) -> Outcome {
    let mut summary = Vec::new();
    for (label, n, verdicts) in &s.runs {
        let failed: Vec<&str> = verdicts.iter().filter(|v| v.status == Status::Fail).map(|v| v.check.as_str()).collect();
        ensure(failed.is_empty(), || format!("V = {label}: failing {failed:?}"))?;
        let iso = verdicts
            .iter()
            .filter(|v| v.check == "v-nerve-theorem")
            .all(|v| v.detail["comparison_iso"] == true && v.detail["semanticiser_matches_pullback"] == true);
        ensure(iso, || format!("V = {label}: comparison or apex mismatch"))?;
        let yoneda = verdicts.iter().filter(|v| v.check == "yoneda").count();
        summary.push(format!("V = {label}: {n} instances, {yoneda} Yoneda checks"));
    }
    let elapsed = s.elapsed;
    ensure(elapsed < QUANTALE_LIMIT, || format!("{elapsed:.2?} ≥ {QUANTALE_LIMIT:?}"))?;
    Ok(format!("{} in {elapsed:.2?}", summary.join("; ")))
}

fn yo_bijection(s: &QuantaleSweeps) -> Outcome {
    let two = Quantale::boolean();
    let caps = Caps::default();
    let chain = VCat::from_preorder(&two, vec!["0".into(), "1".into()], &[vec![true, true], vec![false, true]])
        .map_err(|e| e.to_string())?;
    let b = v_yo_monad_bijection(&two, &chain, &caps).map_err(|e| e.to_string())?;
    let relations: Vec<Vec<Vec<Value>>> = (0u8..16)
        .map(|r| (0..2).map(|x| (0..2).map(|y| usize::from(r >> (2 * x + y) & 1)).collect()).collect())
        .collect();
    let oracle = relations.iter().filter(|c| check_v_loose_monad(&two, &chain, c).passed()).count();
    ensure(b.passed(), || format!("{:?}", b.report.violations))?;
    ensure((b.monad_count, b.loose_monad_count, oracle) == (2, 2, 2), || {
        format!("{} monads, {} loose-monads, oracle {oracle}", b.monad_count, b.loose_monad_count)
    })?;
    let mut bases = 0;
    for (_, _, verdicts) in &s.runs {
        for v in verdicts.iter().filter(|v| v.check == "yo-bijection") {
            ensure(v.status == Status::Pass && v.detail["monads"] == v.detail["loose_monads"], || {
                format!("base #{}: {}", v.instance, v.detail)
            })?;
            bases += 1;
        }
    }
    Ok(format!("2-chain 2 ↔ 2 (oracle over 16 relations), {bases} corpus bases"))
}

fn duality(c: &Corpora) -> Outcome {
    let caps = Caps::default();
    for (name, t) in &c.every {
        let dual = check_conerve_theorem(&dualize_monad(t), &caps).map_err(|e| format!("{name}: {e}"))?;
        let direct = check_nerve_theorem(t, &caps).map_err(|e| format!("{name}: {e}"))?.relabel();
        let (a, b) = (serde_json::to_string(&dual).unwrap(), serde_json::to_string(&direct).unwrap());
        ensure(a == b, || format!("{name}: {a} ≠ {b}"))?;
    }
    Ok(format!("{} instances byte-identical", c.every.len()))
}

fn validator_soundness() -> Outcome {
    let mut broken = 0;
    for fx in fixtures() {
        let opts = Options {
            input: Some(fixture_dir().join(format!("{}.json", fx.name))),
            format: relmonad_lab::Format::Json,
            ..Options::default()
        };
        let report = run(Suite::Validate, &opts).map_err(|e| format!("{}: {e}", fx.name))?;
        match fx.expect {
            Expect::Valid => ensure(report.exit_code() == 0, || format!("{} rejected", fx.name))?,
            Expect::Broken => {
                ensure(report.exit_code() == 1, || format!("{} passed", fx.name))?;
                let witnessed = report.verdicts.iter().filter(|v| v.status == Status::Fail).all(|v| {
                    v.detail["violations"]
                        .as_array()
                        .is_some_and(|w| !w.is_empty() && w.iter().all(|x| x["witness"].as_array().is_some_and(|a| !a.is_empty())))
                });
                ensure(witnessed, || format!("{} lacks a witness", fx.name))?;
                let again = run(Suite::Validate, &opts).map_err(|e| format!("{}: {e}", fx.name))?;
                ensure(again.to_json() == report.to_json(), || format!("{} is not replayable", fx.name))?;
                broken += 1;
            }
        }
    }
    Ok(format!("{broken} broken fixtures rejected with witnesses, 0 false passes"))
}

fn main() -> ExitCode {
    let corpora = corpora();
    let with = |f: fn(&Corpora) -> Outcome| -> Outcome { corpora.as_ref().map_err(Clone::clone).and_then(f) };
    let sweeps = quantale_sweeps();
    let swept = |f: fn(&QuantaleSweeps) -> Outcome| -> Outcome { sweeps.as_ref().map_err(Clone::clone).and_then(f) };
    let criteria: Vec<(&str, Outcome)> = vec![
        ("span counterexample", span_counterexample()),
        ("nerve-theorem sweep", nerve_theorem_sweep()),
        ("Kleisli = collapse", with(kleisli_is_collapse)),
        ("section round trip", with(section_round_trip)),
        ("comparison density", with(comparison_density)),
        ("semanticiser certificate", with(semanticiser_certificate)),
        ("quantale instance", swept(quantale_instance)),
        ("yo-bijection", swept(yo_bijection)),
        ("duality", with(duality)),
        ("validator soundness", validator_soundness()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in criteria.iter().enumerate() {
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail}", i + 1);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
