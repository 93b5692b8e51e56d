//! Seeded verification suites. Each trial draws from its own ChaCha8 stream `(seed, trial)`,
//! so a report depends only on the suite name, trial count, seed and bounds.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chain::{direct_sum_map, ChainMap};
use crate::compute::{compute, Options};
use crate::document::Object;
use crate::error::{Error, Result};
use crate::filtered::{
    check_fold, check_invariance1, check_invariance2, check_kdual, filtered_dual, rearrangement_rho, tensor_filtered,
    theta_map, FilteredComplex,
};
use crate::fixtures;
use crate::generate::{Bounds, Gen};
use crate::linalg::IntMatrix;
use crate::poincare::{
    check_det_mod4, check_mod8_even, check_signmod4, form_to_complex, round_example, signature, tau_new_symmetric,
    tensor_symmetric, SymmetricComplex, UnimodularForm,
};
use crate::sign::SignK1;
use crate::torsion::{tau_iso, tau_new_map, torsion_contractible};

pub const SUITES: &[&str] = &[
    "signmod4",
    "det-mod4",
    "mod8",
    "torsion-axioms",
    "product-formula",
    "invariance",
    "filtered-dual",
    "invariants",
    "fixtures",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub seed: u64,
    pub trial: u64,
    pub check: String,
    pub counterexample: Value,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_name: String,
    pub trials: u64,
    pub seed: u64,
    pub max_rank: usize,
    pub max_degree: usize,
    /// individual identities checked across all trials
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub elapsed_secs: f64,
    pub pass: bool,
}

struct Run {
    seed: u64,
    trial: u64,
    checks: u64,
    failures: Vec<Failure>,
}

impl Run {
    fn check<T: std::fmt::Debug + PartialEq>(&mut self, name: &str, doc: impl FnOnce() -> Value, expected: T, actual: T) {
        self.checks += 1;
        if expected != actual {
            self.failures.push(Failure {
                seed: self.seed,
                trial: self.trial,
                check: name.into(),
                counterexample: doc(),
                expected: format!("{expected:?}"),
                actual: format!("{actual:?}"),
            });
        }
    }

    fn error(&mut self, name: &str, doc: Value, e: &Error) {
        self.checks += 1;
        self.failures.push(Failure {
            seed: self.seed,
            trial: self.trial,
            check: name.into(),
            counterexample: doc,
            expected: "a value".into(),
            actual: format!("error: {e}"),
        });
    }

    /// Records the outcome of a fallible computation and hands back its value.
    fn ok<T>(&mut self, name: &str, doc: impl FnOnce() -> Value, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.error(name, doc(), &e);
                None
            }
        }
    }
}

/// Runs `name` for `trials` trials. Unknown names give [`Error::UnknownSuite`].
pub fn run_suite(name: &str, trials: u64, seed: u64, bounds: Bounds) -> Result<SuiteReport> {
    let trial_fn: fn(&mut Run, &mut Gen) = match name {
        "signmod4" => signmod4_trial,
        "det-mod4" => det_mod4_trial,
        "mod8" => mod8_trial,
        "torsion-axioms" => torsion_axioms_trial,
        "product-formula" => product_formula_trial,
        "invariance" => invariance_trial,
        "filtered-dual" => filtered_dual_trial,
        "invariants" => invariants_trial,
        "fixtures" => fixtures_trial,
        _ => return Err(Error::UnknownSuite(name.into())),
    };
    let start = Instant::now();
    let mut run = Run { seed, trial: 0, checks: 0, failures: Vec::new() };
    let trials = if name == "fixtures" { 1 } else { trials };
    for t in 0..trials {
        run.trial = t;
        let mut g = Gen::new(seed, t, bounds);
        trial_fn(&mut run, &mut g);
    }
    Ok(SuiteReport {
        suite_name: name.into(),
        trials,
        seed,
        max_rank: bounds.max_rank,
        max_degree: bounds.max_degree,
        checks: run.checks,
        pass: run.failures.is_empty(),
        failures: run.failures,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}

fn sym_doc(x: &SymmetricComplex) -> impl FnOnce() -> Value + '_ {
    move || Object::Symmetric(x.clone()).to_json()
}

fn form_doc(h: &UnimodularForm) -> impl FnOnce() -> Value + '_ {
    move || Object::Form(h.clone()).to_json()
}

fn map_doc(f: &ChainMap) -> impl FnOnce() -> Value + '_ {
    move || Object::Map(f.clone()).to_json()
}

fn filtered_doc(f: &FilteredComplex) -> impl FnOnce() -> Value + '_ {
    move || Object::Filtered(f.clone()).to_json()
}

fn signmod4_trial(run: &mut Run, g: &mut Gen) {
    let x = if run.trial == 0 { round_example() } else { g.symmetric(g.bounds.max_rank.max(1)) };
    let Some(report) = run.ok("signmod4", sym_doc(&x), check_signmod4(&x)) else { return };
    run.check("sign ≡ 2τ + (2k+1)χ mod 4", sym_doc(&x), report.lhs, report.rhs);
    let n = x.dim() as i64;
    run.check("duality parity", sym_doc(&x), 0, (n * (n + 1) / 2 * x.euler_char()).rem_euclid(2));
    if x.euler_char() == 0 && report.tau.is_zero() {
        run.check("simple round complexes have signature ≡ 0 mod 4", sym_doc(&x), 0, report.signature.rem_euclid(4));
    }
}

fn det_mod4_trial(run: &mut Run, g: &mut Gen) {
    let h = g.form(g.bounds.max_rank.max(1));
    let Some(report) = run.ok("det-mod4", form_doc(&h), check_det_mod4(&h)) else { return };
    run.check("sign ≡ rank + det − 1 mod 4", form_doc(&h), true, report.signature_holds);
    run.check("2τ ≡ det − 1 mod 4", form_doc(&h), true, report.torsion_holds);
}

fn mod8_trial(run: &mut Run, g: &mut Gen) {
    let h = g.even_form(3);
    let Some((sig, holds)) = run.ok("mod8", form_doc(&h), check_mod8_even(&h)) else { return };
    run.check("even forms have signature ≡ 0 mod 8", form_doc(&h), (0, true), (sig.rem_euclid(8), holds));
}

fn torsion_axioms_trial(run: &mut Run, g: &mut Gen) {
    let (rank, top) = (g.bounds.max_rank.clamp(1, 3), g.bounds.max_degree.clamp(1, 4));

    // oracle-tracked generators
    let deg = 1 + g.below(top);
    let p = g.contractible(deg, rank);
    let c = &p.complex;
    if let Some(t) = run.ok("contractible", || Object::Complex(c.clone()).to_json(), torsion_contractible(c)) {
        run.check("predicted torsion of a contractible complex", || Object::Complex(c.clone()).to_json(), p.tau, t);
    }
    let deg = 1 + g.below(top);
    let c0 = g.complex(deg, rank, true);
    let (_, iso, det) = g.basis_change(&c0);
    if let Some(t) = run.ok("basis change", map_doc(&iso), tau_new_map(&iso)) {
        run.check("predicted torsion of a basis change", map_doc(&iso), det, t);
    }

    // composition
    let deg = 1 + g.below(top);
    let c = g.complex(deg, rank, true);
    let f = g.equivalence_from(&c);
    let h = g.equivalence_from(f.target());
    let gf = f.then(&h).expect("composable");
    if let (Some(a), Some(b), Some(ab)) = (
        run.ok("τ(f)", map_doc(&f), tau_new_map(&f)),
        run.ok("τ(g)", map_doc(&h), tau_new_map(&h)),
        run.ok("τ(gf)", map_doc(&gf), tau_new_map(&gf)),
    ) {
        run.check("τ(gf) = τ(f) + τ(g)", map_doc(&gf), a + b, ab);
    }

    // direct sums
    let deg = 1 + g.below(top);
    let c2 = g.complex(deg, rank, true);
    let f2 = g.equivalence_from(&c2);
    let sum = direct_sum_map(&f, &f2).expect("sum of maps");
    if let (Some(a), Some(b), Some(s)) = (
        run.ok("τ(f)", map_doc(&f), tau_new_map(&f)),
        run.ok("τ(f′)", map_doc(&f2), tau_new_map(&f2)),
        run.ok("τ(f ⊕ f′)", map_doc(&sum), tau_new_map(&sum)),
    ) {
        run.check("τ(f ⊕ f′) = τ(f) + τ(f′)", map_doc(&sum), a + b, s);
    }

    // homotopy invariance
    let f3 = g.homotopic(&f);
    if let (Some(a), Some(b)) =
        (run.ok("τ(f)", map_doc(&f), tau_new_map(&f)), run.ok("τ(f′)", map_doc(&f3), tau_new_map(&f3)))
    {
        run.check("f ≃ f′ ⇒ τ(f) = τ(f′)", map_doc(&f3), a, b);
    }
}

/// The pair of forms tensored in trial `t` of the product-formula suite; trial 0 is ⟨1⟩ ⊗ H.
pub fn product_pair(g: &mut Gen, trial: u64) -> (SymmetricComplex, SymmetricComplex) {
    if trial == 0 {
        return (form_to_complex(&UnimodularForm::unit(), 0), form_to_complex(&UnimodularForm::hyperbolic(), 0));
    }
    let rank = g.bounds.max_rank.clamp(1, 4);
    let side = |g: &mut Gen| {
        let k = g.below(2);
        let x = form_to_complex(&g.form(rank), k);
        let ps: Vec<IntMatrix> = x.complex().ranks().iter().map(|&m| g.unimodular(m).0).collect();
        x.change_basis(&ps).expect("basis change").with_eta(g.sign()).expect("sign change")
    };
    (side(g), side(g))
}

fn product_formula_trial(run: &mut Run, g: &mut Gen) {
    let (x, y) = product_pair(g, run.trial);
    let doc = || json!({ "x": Object::Symmetric(x.clone()).to_json(), "y": Object::Symmetric(y.clone()).to_json() });
    let Some(xy) = run.ok("tensor", doc, tensor_symmetric(&x, &y)) else { return };
    let (Some(tx), Some(ty), Some(txy)) = (
        run.ok("τ(X)", sym_doc(&x), tau_new_symmetric(&x)),
        run.ok("τ(Y)", sym_doc(&y), tau_new_symmetric(&y)),
        run.ok("τ(X⊗Y)", sym_doc(&xy), tau_new_symmetric(&xy)),
    ) else {
        return;
    };
    let want = SignK1::from_int(x.euler_char() * ty.bit() as i64 + y.euler_char() * tx.bit() as i64);
    run.check("τ(X⊗Y) = χ(X)τ(Y) + χ(Y)τ(X)", sym_doc(&xy), want, txy);
    if run.trial == 0 {
        run.check("τ(⟨1⟩⊗H) = 1", sym_doc(&xy), SignK1::ONE, txy);
    }
    if let (Some(sx), Some(sy), Some(sxy)) = (
        run.ok("σ(X)", sym_doc(&x), signature(&x)),
        run.ok("σ(Y)", sym_doc(&y), signature(&y)),
        run.ok("σ(X⊗Y)", sym_doc(&xy), signature(&xy)),
    ) {
        run.check("σ(X⊗Y) = σ(X)σ(Y)", sym_doc(&xy), sx * sy, sxy);
    }
}

fn invariance_trial(run: &mut Run, g: &mut Gen) {
    let block = g.bounds.max_rank.clamp(1, 4);
    let f = g.filtered_contractible(3, block);
    if let Some(r) = run.ok("invariance of contractibles", filtered_doc(&f), check_invariance1(&f)) {
        run.check("τ(C) = i_*τ(G_*C)", filtered_doc(&f), r.total, r.graded);
    }
    if f.k() >= 1 {
        if let Some(r) = run.ok("fold", filtered_doc(&f), check_fold(&f.associated_graded())) {
            run.check("folding preserves torsion", filtered_doc(&f), true, r.holds);
        }
    }

    let (e, predicted) = g.filtered_equivalence(3, block.min(2));
    let doc = || json!({ "source": Object::Filtered(e.source().clone()).to_json(), "target": Object::Filtered(e.target().clone()).to_json(), "total": Object::Map(e.total_map()).to_json() });
    if let Some(r) = run.ok("invariance of equivalences", doc, check_invariance2(&e)) {
        run.check("τ(f) = i_*τ(𝒞^fil(f))", doc, r.total, r.graded);
        if let Some(t) = predicted {
            run.check("predicted torsion of a filtered basis change", doc, t, r.total);
        }
    }
    let rho = rearrangement_rho(&e);
    if let Some(t) = run.ok("ρ", map_doc(&rho), tau_iso(&rho)) {
        run.check("ρ is simple", map_doc(&rho), SignK1::ZERO, t);
    }
}

fn dual_checks(run: &mut Run, f: &FilteredComplex, n: usize) {
    if let Some(holds) = run.ok("structural dual", filtered_doc(f), check_kdual(f, n)) {
        run.check("G_p(F^dual) = G_{k−p}(F)^{n−*}", filtered_doc(f), true, holds);
    }
    let Some(theta) = run.ok("θ", filtered_doc(f), theta_map(f, n)) else { return };
    if let Some(t) = run.ok("τ(θ)", map_doc(&theta), tau_iso(&theta)) {
        run.check("θ is simple", map_doc(&theta), SignK1::ZERO, t);
    }
    if let Some(t) = run.ok("τ(θ) via cone", map_doc(&theta), tau_new_map(&theta)) {
        run.check("θ is simple (cone route)", map_doc(&theta), SignK1::ZERO, t);
    }
}

fn filtered_dual_trial(run: &mut Run, g: &mut Gen) {
    let k = g.below(4);
    let n = g.below(g.bounds.max_degree.clamp(1, 4));
    let f = g.admissible(k, n, g.bounds.max_rank.clamp(1, 3));
    dual_checks(run, &f, n);
    // the tensor filtration of the product-formula trial with the same seed and index
    let mut pg = Gen::new(run.seed, run.trial, g.bounds);
    let (x, y) = product_pair(&mut pg, run.trial);
    let t = tensor_filtered(x.complex(), y.complex());
    if run.ok("dual of a tensor", filtered_doc(&t), filtered_dual(&t, y.dim())).is_some() {
        dual_checks(run, &t, y.dim());
    }
}

fn invariants_trial(run: &mut Run, g: &mut Gen) {
    let x = g.symmetric(g.bounds.max_rank.max(1));
    let (Some(t), Some(s)) = (run.ok("τ", sym_doc(&x), tau_new_symmetric(&x)), run.ok("σ", sym_doc(&x), signature(&x)))
    else {
        return;
    };
    let flipped = x.with_eta(x.complex().eta() + SignK1::ONE).expect("sign change");
    if let (Some(t2), Some(s2)) =
        (run.ok("τ", sym_doc(&flipped), tau_new_symmetric(&flipped)), run.ok("σ", sym_doc(&flipped), signature(&flipped)))
    {
        run.check("η-flip keeps (τ, σ)", sym_doc(&flipped), (t, s), (t2, s2));
    }
    let r = g.below(x.dim() + 1);
    let ps: Vec<IntMatrix> = x
        .complex()
        .ranks()
        .iter()
        .enumerate()
        .map(|(i, &m)| if i == r { g.unimodular(m).0 } else { IntMatrix::identity(m) })
        .collect();
    let Some(moved) = run.ok("basis change", sym_doc(&x), x.change_basis(&ps)) else { return };
    if let (Some(t2), Some(s2)) =
        (run.ok("τ", sym_doc(&moved), tau_new_symmetric(&moved)), run.ok("σ", sym_doc(&moved), signature(&moved)))
    {
        run.check("basis change keeps (τ, σ)", sym_doc(&moved), (t, s), (t2, s2));
    }
}

fn fixtures_trial(run: &mut Run, _g: &mut Gen) {
    for (name, _) in fixtures::FIXTURES {
        let want = fixtures::build(name).expect("known fixture");
        let doc = || want.to_json();
        if let Some(got) = run.ok(name, doc, fixtures::load(name).expect("shipped fixture")) {
            run.check("fixture parses to its definition", doc, &want, &got);
        }
    }
    for (name, command, dim, expected) in fixtures::expectations() {
        let input = fixtures::load(name).expect("shipped fixture");
        let Some(input) = run.ok(name, || json!(name), input) else { continue };
        let opts = Options { dim, with: None };
        if let Some(v) = run.ok(command, || input.to_json(), compute(command, &input, &opts)) {
            run.check(&format!("{command}({name})"), || input.to_json(), expected, v);
        }
    }
    let t = fixtures::build("tensor2").expect("known fixture");
    if let Object::Filtered(f) = &t {
        dual_checks(run, f, 1);
    }
}
