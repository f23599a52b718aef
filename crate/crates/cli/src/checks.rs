//! Per-instance checks, each producing one verdict.

use relmonad::constructions::{
    build_kleisli, check_opalgebra, comparison_functor, enumerate_algebras, free_algebra, kleisli_carrier_agrees,
    opalgebra_factorization, Algebras, Kleisli, Opalgebra,
};
use relmonad::fincat::{FinCat, NatTransformation};
use relmonad::loosemonad::{
    associated_loose_monad, check_loose_monad, collapse, dagger_morphism, em_square, factor_through_collapse,
};
use relmonad::nervepullback::{
    build_nerve_pullback, check_conerve_theorem, check_nerve_theorem, dualize_monad, is_dense,
};
use relmonad::quantale::{
    check_classification, check_right_lifts, check_yoneda, v_check_nerve_theorem, v_nerve, v_presheaf_object,
    v_yo_monad_bijection, validate_quantale, validate_v_monad, validate_vcat, Quantale, VCat, VRelMonad,
};
use relmonad::relmonad::{check_relative_monad, monad_from_section, section_from_monad, RelativeMonad};
use relmonad::{Caps, Error, LawReport};
use serde_json::json;

use crate::report::Verdict;

fn law(i: usize, check: &str, r: &LawReport) -> Verdict {
    Verdict::new(i, check, r.passed(), json!({ "violations": r.violations }))
}

pub fn validate_category(i: usize, c: &FinCat) -> Verdict {
    law(i, "category-laws", &c.validate())
}

pub fn validate_nat(i: usize, n: &NatTransformation) -> Verdict {
    law(i, "naturality", &n.validate())
}

/// Laws 1 to 3, with the alternative associativity reported alongside. The
/// two formulations must agree whenever law 1 holds.
pub fn monad_laws(i: usize, t: &RelativeMonad) -> Verdict {
    let m = check_relative_monad(t);
    let law1 = !m.laws.violates(relmonad::relmonad::LAW_1);
    let agree = m.formulations_agree();
    Verdict::new(
        i,
        "monad-laws",
        m.passed() && (!law1 || agree),
        json!({
            "violations": m.laws.violations,
            "alternative_associativity": m.alternative_associativity.violations,
            "formulations_agree": agree,
        }),
    )
}

pub fn kleisli(i: usize, t: &RelativeMonad) -> Result<Vec<Verdict>, Error> {
    let kl = build_kleisli(t)?;
    let carrier = kleisli_carrier_agrees(t, &kl)?;
    let universal = Opalgebra::universal(t, &kl.free)?;
    let opalg = check_opalgebra(t, &universal)?;
    let caps = Caps::default();
    let factor = opalgebra_factorization(t, &kl.free, &universal, &caps)?;
    Ok(vec![
        law(i, "kleisli-resolution", &kl.resolution.certificate),
        Verdict::new(i, "kleisli-carrier", carrier, json!({})),
        Verdict::new(
            i,
            "kleisli-opalgebra",
            opalg.passed() && opalg.agree() && factor.unique(),
            json!({ "laws": opalg.laws.violations, "uniqueness_count": factor.uniqueness_count }),
        ),
    ])
}

/// `Kl(T)` and the collapse of the associated loose-monad, table for table.
pub fn kleisli_collapse(i: usize, t: &RelativeMonad) -> Result<Vec<Verdict>, Error> {
    let kl = build_kleisli(t)?;
    let l = associated_loose_monad(t)?;
    let laws = check_loose_monad(&l);
    if !laws.passed() {
        return Ok(vec![law(i, "loose-monad", &laws)]);
    }
    let cl = collapse(&l)?;
    let equal = kl.category == cl.category;
    let dagger = dagger_morphism(t, &l)?;
    let factor = factor_through_collapse(&dagger, &Caps::default())?;
    Ok(vec![
        law(i, "loose-monad", &laws),
        law(i, "collapse-cartesian", &cl.certificate),
        Verdict::new(
            i,
            "kleisli-is-collapse",
            equal,
            json!({ "kleisli": kl.category.size(), "collapse": cl.category.size() }),
        ),
        Verdict::new(
            i,
            "collapse-factorization",
            dagger.check().passed() && factor.unique(),
            json!({ "uniqueness_count": factor.uniqueness_count }),
        ),
    ])
}

/// Round trip through sections, and every single-entry mutant of the
/// section table either rejected with a witness or itself a monad.
pub fn section_roundtrip(i: usize, t: &RelativeMonad) -> Result<Vec<Verdict>, Error> {
    let sd = section_from_monad(t)?;
    let back = monad_from_section(&sd)?;
    let e = t.ambient();
    let (mut mutants, mut rejected, mut sound) = (0usize, 0usize, true);
    for (k, &(x, y, _)) in sd.kleisli_index().entries().iter().enumerate() {
        for &v in e.hom(t.t(x), t.t(y)) {
            if v == sd.section_table()[k] {
                continue;
            }
            let m = sd.with_section_at(k, v)?;
            mutants += 1;
            let report = m.check();
            if report.passed() {
                sound &= monad_from_section(&m).is_ok_and(|u| check_relative_monad(&u).passed());
            } else {
                rejected += 1;
                sound &= monad_from_section(&m).is_err() && report.violations.iter().all(|v| !v.witness.is_empty());
            }
        }
    }
    Ok(vec![
        Verdict::new(i, "section-roundtrip", back == *t, json!({})),
        Verdict::new(i, "section-mutants", sound, json!({ "mutants": mutants, "rejected": rejected })),
    ])
}

pub struct Built {
    pub kleisli: Kleisli,
    pub algebras: Algebras,
    pub dense: bool,
}

pub fn build(t: &RelativeMonad, caps: &Caps) -> Result<Built, Error> {
    Ok(Built {
        kleisli: build_kleisli(t)?,
        algebras: enumerate_algebras(t, caps)?,
        dense: is_dense(t.root(), caps)?.dense,
    })
}

/// Free algebras, the comparison `i_T`, and for dense roots its full
/// faithfulness and density.
pub fn algebras(i: usize, t: &RelativeMonad, b: &Built, caps: &Caps) -> Result<Vec<Verdict>, Error> {
    let free_ok = t
        .base()
        .objects()
        .all(|x| b.algebras.index_of(&free_algebra(t, x)).is_some());
    let cmp = comparison_functor(t, &b.kleisli, &b.algebras, caps)?;
    let mut out = vec![
        Verdict::new(i, "free-algebras", free_ok, json!({ "algebras": b.algebras.algebras.len() })),
        law(i, "comparison-functor", &cmp.triangles),
    ];
    let detail = json!({
        "fully_faithful": cmp.is_fully_faithful(),
        "nerve_dense": cmp.density.as_ref().map(|d| d.dense),
    });
    if b.dense {
        let ok = cmp.is_fully_faithful() && cmp.density.as_ref().is_some_and(|d| d.dense);
        out.push(Verdict::new(i, "comparison-density", ok, detail));
    } else {
        out.push(Verdict::recorded(i, "comparison-density", detail));
    }
    Ok(out)
}

/// The nerve theorem report, with the pullback apex size. The comparison
/// must be an isomorphism when the root is dense, and the nerve of the
/// comparison must be an isomorphism always.
pub fn nerve(i: usize, t: &RelativeMonad, b: &Built, caps: &Caps) -> Result<Vec<Verdict>, Error> {
    let r = check_nerve_theorem(t, caps)?;
    let np = build_nerve_pullback(t, &b.kleisli, caps)?;
    let passed = r.theorem_holds() && r.nerve_of_comparison_ok;
    let mut detail = serde_json::to_value(&r).expect("reports serialize");
    detail["algebras"] = json!(b.algebras.algebras.len());
    detail["pullback_size"] = json!(np.category.size());
    Ok(vec![Verdict::new(i, "nerve-theorem", passed, detail)])
}

/// `check_conerve_theorem(dualize(T))` against `relabel(check_nerve_theorem(T))`, byte for byte.
pub fn duality(i: usize, t: &RelativeMonad, caps: &Caps) -> Result<Vec<Verdict>, Error> {
    let dual = check_conerve_theorem(&dualize_monad(t), caps)?;
    let relabelled = check_nerve_theorem(t, caps)?.relabel();
    let a = serde_json::to_string(&dual).expect("reports serialize");
    let b = serde_json::to_string(&relabelled).expect("reports serialize");
    let detail = serde_json::to_value(&dual).expect("reports serialize");
    Ok(vec![
        Verdict::new(i, "conerve-theorem", dual.theorem_holds() && dual.conerve_of_comparison_ok, detail),
        Verdict::new(i, "duality", a == b, json!({})),
    ])
}

/// The Eilenberg–Moore square with `π₂ = Alg(T)(i_T, 1)`, tested against
/// the identity cone and its points. Asserted for dense roots only.
pub fn semanticiser(i: usize, t: &RelativeMonad, b: &Built, chain_bound: usize, caps: &Caps) -> Result<Vec<Verdict>, Error> {
    let sq = em_square(t, &b.kleisli, &b.algebras);
    let id = sq.identity_cone();
    let mut universe = vec![id.clone()];
    universe.extend(id.points()?);
    let c = sq.check(&universe, chain_bound, caps)?;
    let detail = json!({
        "restriction": c.restriction,
        "density": c.density.dense,
        "mediator_counts": c.mediator_counts,
        "two_dim": c.two_dim.violations,
        "cells_checked": c.cells_checked,
    });
    Ok(vec![if b.dense {
        Verdict::new(i, "semanticiser", c.passed(), detail)
    } else {
        Verdict::recorded(i, "semanticiser", detail)
    }])
}

/// Every check on one relative monad, in a fixed order.
pub fn full_sweep(i: usize, t: &RelativeMonad, chain_bound: usize, caps: &Caps) -> Result<Vec<Verdict>, Error> {
    let mut out = vec![monad_laws(i, t)];
    if !out[0].passed() {
        return Ok(out);
    }
    let b = build(t, caps)?;
    out.extend(kleisli(i, t)?);
    out.extend(kleisli_collapse(i, t)?);
    out.extend(section_roundtrip(i, t)?);
    out.extend(algebras(i, t, &b, caps)?);
    out.extend(nerve(i, t, &b, caps)?);
    out.extend(duality(i, t, caps)?);
    out.extend(semanticiser(i, t, &b, chain_bound, caps)?);
    Ok(out)
}

pub fn quantale_laws(i: usize, q: &Quantale) -> Verdict {
    law(i, "quantale-laws", &validate_quantale(q))
}

/// The V-category laws and `P A` with Yoneda and right lifts. With
/// `classify`, also the classification of distributors `A ⇸ A`, which
/// enumerates `|V|^(n²)` tables.
pub fn v_category(i: usize, q: &Quantale, a: &VCat, classify: bool, caps: &Caps) -> Result<Vec<Verdict>, Error> {
    let laws = validate_vcat(q, a);
    if !laws.passed() {
        return Ok(vec![law(i, "vcat-laws", &laws)]);
    }
    let pa = v_presheaf_object(q, a, caps)?;
    let mut out = vec![
        law(i, "vcat-laws", &laws),
        law(i, "yoneda", &check_yoneda(a, &pa)),
        law(i, "right-lifts", &check_right_lifts(q, &pa)),
    ];
    if classify {
        out.push(law(i, "classification", &check_classification(q, a, a, &pa, caps)?));
    }
    Ok(out)
}

pub fn v_monad(i: usize, q: &Quantale, e: &VCat, t: &VRelMonad, caps: &Caps) -> Result<Vec<Verdict>, Error> {
    let a = e.full_subcategory(&t.root);
    let laws = validate_v_monad(q, &a, e, t);
    if !laws.passed() {
        return Ok(vec![law(i, "v-monad-laws", &laws)]);
    }
    let pa = v_presheaf_object(q, &a, caps)?;
    let nerve = v_nerve(q, &a, e, &t.root, &pa)?;
    let r = v_check_nerve_theorem(q, &a, e, t, caps)?;
    let mut detail = serde_json::to_value(&r).expect("reports serialize");
    detail["density_witness"] = json!(nerve.witness);
    let passed = (!r.dense || r.comparison_iso) && r.semanticiser_matches_pullback;
    Ok(vec![
        law(i, "v-monad-laws", &laws),
        law(i, "v-nerve-adjunction", &nerve.certificate),
        Verdict::new(i, "v-nerve-theorem", passed, detail),
    ])
}

pub fn yo_bijection(i: usize, q: &Quantale, a: &VCat, caps: &Caps) -> Result<Vec<Verdict>, Error> {
    let b = v_yo_monad_bijection(q, a, caps)?;
    Ok(vec![Verdict::new(
        i,
        "yo-bijection",
        b.passed(),
        json!({
            "monads": b.monad_count,
            "loose_monads": b.loose_monad_count,
            "violations": b.report.violations,
        }),
    )])
}
