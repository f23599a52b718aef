//! The bundled fixtures, generated from the core zoo. The files under
//! `fixtures/` are these documents serialized with [`render`].

use relmonad::quantale::{Quantale, VCat, VRelMonad};
use relmonad::relmonad::{check_relative_monad, identity_monad, RelativeMonad};
use relmonad::zoo;

use crate::input::{CategoryDoc, Document, NatDoc, QuantaleDoc, RelativeMonadDoc, VCatDoc, VMonadDoc};

/// Whether a fixture is expected to pass `validate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Valid,
    Broken,
}

pub struct Fixture {
    pub name: &'static str,
    pub expect: Expect,
    pub document: Document,
}

fn category(c: &relmonad::fincat::FinCat) -> Document {
    Document::Category {
        category: CategoryDoc::from_category(c),
    }
}

fn monad(t: &RelativeMonad) -> Document {
    Document::RelativeMonad(RelativeMonadDoc::from_monad(t))
}

fn quantale(q: &Quantale) -> Document {
    Document::Quantale {
        quantale: QuantaleDoc::from_quantale(q),
    }
}

fn preorder(q: &Quantale, names: &[&str], leq: impl Fn(usize, usize) -> bool) -> VCat {
    let n = names.len();
    let table: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect();
    VCat::from_preorder(q, names.iter().map(|s| s.to_string()).collect(), &table).expect("preorder")
}

fn vcat(q: &Quantale, c: &VCat) -> Document {
    Document::VCategory {
        quantale: QuantaleDoc::from_quantale(q),
        category: VCatDoc::from_vcat(q, c),
    }
}

fn v_monad(q: &Quantale, e: &VCat, root: &[usize], carrier: &[usize]) -> Document {
    let t = VRelMonad {
        root: root.to_vec(),
        carrier: carrier.to_vec(),
    };
    Document::VMonad(VMonadDoc::from_monad(q, e, &t))
}

/// The first single-entry change of the extension table of the identity
/// monad on `0 ⇉ 1` that breaks a law.
fn broken_extension() -> RelativeMonad {
    let t = identity_monad(&zoo::parallel_pair());
    let e = t.ambient().clone();
    for (k, &(x, y, _)) in t.kleisli_index().entries().iter().enumerate() {
        for &v in e.hom(t.t(x), t.t(y)) {
            let m = t.with_extension_at(k, v).expect("same endpoints");
            if !check_relative_monad(&m).passed() {
                return m;
            }
        }
    }
    unreachable!("swapping the parallel arrows breaks law 1")
}

fn broken_residuation() -> Document {
    let q = Quantale::boolean();
    let mut doc = QuantaleDoc::from_quantale(&q);
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<String>> {
        q.elements().map(|a| q.elements().map(|c| q.name(f(a, c)).to_string()).collect()).collect()
    };
    doc.left_residual = Some(table(&|b, c| q.lres(b, c)));
    doc.right_residual = Some(table(&|_, _| q.top()));
    Document::Quantale { quantale: doc }
}

pub fn fixtures() -> Vec<Fixture> {
    use Expect::{Broken, Valid};
    let two = Quantale::boolean();
    let three = Quantale::three_chain();
    let unit_zero = Quantale::new(
        two.names().to_vec(),
        two.order().to_vec(),
        two.tensor_table().to_vec(),
        0,
    )
    .expect("a lattice");
    let powerset_names = ["∅", "x", "y", "xy"];
    let powerset = preorder(&two, &powerset_names, |a, b| a & b == a);
    let chain3 = preorder(&two, &["0", "1", "2"], |a, b| a <= b);
    let half = VCat::new(vec!["p".into(), "q".into()], vec![vec![2, 1], vec![0, 2]]).expect("square");
    let f = |name, expect, document| Fixture { name, expect, document };
    vec![
        f("terminal", Valid, category(&zoo::terminal())),
        f("arrow", Valid, category(&zoo::arrow())),
        f("span", Valid, category(&zoo::span())),
        f("arrow_monad", Valid, monad(&zoo::arrow_monad())),
        f("span_monad", Valid, monad(&zoo::span_monad())),
        f("enlarged_span_monad", Valid, monad(&zoo::enlarged_span_monad())),
        f("fully_faithful_trivial_monad", Valid, monad(&zoo::fully_faithful_trivial_monad())),
        f("powerset_monad", Valid, monad(&zoo::powerset_monad())),
        f("identity_monad_on_span", Valid, monad(&zoo::identity_monad_on_span())),
        f("quantale_two", Valid, quantale(&two)),
        f("quantale_three_chain", Valid, quantale(&three)),
        f("two_chain_preorder", Valid, vcat(&two, &preorder(&two, &["0", "1"], |a, b| a <= b))),
        f("three_chain_preorder", Valid, vcat(&two, &chain3)),
        f("powerset_preorder", Valid, vcat(&two, &powerset)),
        f("half_distance", Valid, vcat(&three, &half)),
        f("powerset_v_monad", Valid, v_monad(&two, &powerset, &[1, 2], &[3, 2])),
        f("three_chain_v_monad", Valid, v_monad(&two, &chain3, &[0, 2], &[1, 2])),
        f("broken_unit_span", Broken, category(&zoo::broken_unit_span())),
        f("broken_associativity_monoid", Broken, category(&zoo::broken_associativity_monoid())),
        f("broken_naturality", Broken, Document::NaturalTransformation(NatDoc::from_nat(&zoo::broken_naturality()))),
        f("broken_extension_parallel_pair", Broken, monad(&broken_extension())),
        f("broken_unit_zero", Broken, quantale(&unit_zero)),
        f("broken_residuation", Broken, broken_residuation()),
    ]
}

/// Pretty JSON with a trailing newline.
pub fn render(d: &Document) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("documents serialize");
    s.push('\n');
    s
}
