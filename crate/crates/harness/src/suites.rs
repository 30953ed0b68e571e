//! Property suites. Each trial draws its own instance from a seed derived
//! from the suite seed and the trial index, so trials run in parallel and
//! any failure can be replayed alone.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use koszulkit_core::complex::{
    canonical_triple, cone, cylinder, is_degreewise_short_exact, kernel_image_sequences, nullhomotopy,
    quasi_iso_degree, shift, structure_maps, truncate_ge, truncate_ge_map, truncate_le, truncate_le_map,
    truncation_splitting, ChainComplex, ChainMap, ComplexSes,
};
use koszulkit_core::io::ToJson;
use koszulkit_core::k0::{
    additivity_check, additivity_check_presented, class_kos_isom, class_kos_qis, class_torsion,
    decomposition_check, Classifier,
};
use koszulkit_core::koszul::{
    cellular_factorization, e_functor, factor_step, in_a_n, kappa, resolve_in_kos1, AdmissibleExactSequence,
    KoszulObject,
};
use koszulkit_core::linalg::diagrams::{base_change_check, three_by_three_sequences};
use koszulkit_core::linalg::snf;
use koszulkit_core::pid::gcd;
use koszulkit_core::sfilter::{excision_epi, extension_closure_check, idempotent_split, image_factorization};
use koszulkit_core::{DomainElement, Error, FgModule, Matrix, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::gen::{Blocked, Gen, GenParams, Shape};

/// Every suite name `run_suite` accepts.
pub const SUITES: &[&str] = &[
    "snf",
    "constructors",
    "structure_maps",
    "lemma2_4",
    "lemma2_5",
    "remark3_2",
    "prop3_4",
    "prop3_5",
    "lemma3_6",
    "cor3_8",
    "lemma4_2",
    "lemma4_3",
    "appendix_a2",
    "k0_theorems",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub seed: u64,
    pub instance: Value,
    pub assertion: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub params: GenParams,
    pub trials: usize,
    /// Sorted by seed.
    pub failures: Vec<Failure>,
    /// Tallies of checks performed and of informational outcomes.
    pub counts: BTreeMap<String, u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({ "seed": f.seed, "assertion": f.assertion, "instance": f.instance }))
            .collect();
        json!({
            "suite": self.suite,
            "ring": self.params.ring.to_string(),
            "seed": self.params.seed,
            "trials": self.trials,
            "max_rank": self.params.max_rank,
            "max_entry": self.params.max_entry,
            "support_width": self.params.support_width,
            "passed": self.passed(),
            "counts": self.counts,
            "failures": failures,
        })
    }
}

/// Collects the outcome of one trial.
struct Trial {
    seed: u64,
    failures: Vec<Failure>,
    counts: BTreeMap<String, u64>,
}

impl Trial {
    fn check(&mut self, ok: bool, assertion: &str, instance: impl FnOnce() -> Value) -> bool {
        if !ok {
            self.failures.push(Failure { seed: self.seed, instance: instance(), assertion: assertion.to_string() });
        }
        ok
    }

    /// Unwraps a library result, recording an error as a failure.
    fn ok<T>(&mut self, r: Result<T>, what: &str, instance: impl FnOnce() -> Value) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, &format!("{what}: {e}"), instance);
                None
            }
        }
    }

    fn count(&mut self, key: &str) {
        self.add(key, 1);
    }

    fn add(&mut self, key: &str, n: u64) {
        *self.counts.entry(key.to_string()).or_insert(0) += n;
    }
}

/// Seed of trial `t`, spread by the golden-ratio increment.
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    seed.wrapping_add((t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

type Body = fn(&mut Gen, &mut Trial);

fn body(name: &str) -> Option<Body> {
    Some(match name {
        "snf" => snf_suite,
        "constructors" => constructors,
        "structure_maps" => structure_maps_suite,
        "lemma2_4" => lemma2_4,
        "lemma2_5" => lemma2_5,
        "remark3_2" => remark3_2,
        "prop3_4" => prop3_4,
        "prop3_5" => prop3_5,
        "lemma3_6" => lemma3_6,
        "cor3_8" => cor3_8,
        "lemma4_2" => lemma4_2,
        "lemma4_3" => lemma4_3,
        "appendix_a2" => appendix_a2,
        "k0_theorems" => k0_theorems,
        _ => return None,
    })
}

pub fn run_suite(name: &str, params: &GenParams) -> Result<SuiteReport> {
    params.validate()?;
    let body = body(name).ok_or_else(|| Error::InvalidInput(format!("unknown suite {name:?}")))?;
    let trials: Vec<Trial> = (0..params.trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(params.seed, t);
            let mut trial = Trial { seed, failures: Vec::new(), counts: BTreeMap::new() };
            let outcome = catch_unwind(AssertUnwindSafe(|| {
                let mut g = Gen::new(*params, seed);
                body(&mut g, &mut trial);
            }));
            if let Err(panic) = outcome {
                let msg = panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                trial.check(false, &format!("panic: {msg}"), || Value::Null);
            }
            trial
        })
        .collect();
    let mut failures = Vec::new();
    let mut counts = BTreeMap::new();
    for t in trials {
        failures.extend(t.failures);
        for (k, v) in t.counts {
            *counts.entry(k).or_insert(0) += v;
        }
    }
    failures.sort_by_key(|f| f.seed);
    Ok(SuiteReport { suite: name.to_string(), params: *params, trials: params.trials, failures, counts })
}

fn squares_to_zero(x: &ChainComplex) -> bool {
    x.degrees().all(|n| (&*x.d(n - 1) * &*x.d(n)).is_zero())
}

/// Elementary divisors from determinantal divisors: `e_k = g_k / g_{k-1}`
/// with `g_k` the gcd of all `k x k` minors.
fn divisors_from_minors(a: &Matrix) -> Vec<DomainElement> {
    let ring = a.ring();
    let mut out = Vec::new();
    let mut prev = ring.one();
    for k in 1..=a.rows().min(a.cols()) {
        let mut g = ring.zero();
        for rows in subsets(a.rows(), k) {
            let sub = a.select_rows(&rows);
            for cols in subsets(a.cols(), k) {
                g = gcd(&g, &sub.select_columns(&cols).det());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g.exact_div(&prev).expect("determinantal divisors form a chain"));
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with_last = subsets(n - 1, k - 1);
    for s in &mut with_last {
        s.push(n - 1);
    }
    let mut all = subsets(n - 1, k);
    all.extend(with_last);
    all
}

fn snf_suite(g: &mut Gen, t: &mut Trial) {
    let (r, c) = (1 + g.below(g.params.max_rank), 1 + g.below(g.params.max_rank));
    let a = g.matrix(r, c);
    let cert = snf(&a);
    t.check(cert.verify(&a), "U A V = D with unimodular U, V and a divisor chain", || a.to_json());
    t.check(cert.divisors == divisors_from_minors(&a), "divisors agree with gcds of minors", || a.to_json());
}

fn constructors(g: &mut Gen, t: &mut Trial) {
    let (lo, hi) = g.window();
    let x = g.blocked(lo, hi, Shape::Free);
    let (lo2, hi2) = g.window();
    let y = g.blocked(lo2, hi2, Shape::Free);
    let f = g.chain_map(&x, &y);
    let xc = &x.complex;
    match g.below(4) {
        0 => {
            t.count("shift");
            let k = g.range(-2, 2);
            let s = shift(xc, k);
            t.check(squares_to_zero(&s), "shift: d d = 0", || xc.to_json());
            let moved = (lo..=hi).all(|n| s.homology(n - k) == x.expected_homology(n));
            t.check(moved, "shift: H_{n-k}(X[k]) = H_n(X)", || xc.to_json());
        }
        1 => {
            t.count("cone");
            let c = cone(&f);
            t.check(squares_to_zero(&c.complex), "cone: d d = 0", || f.to_json());
            let chi = c.complex.euler_characteristic() == y.complex.euler_characteristic() - xc.euler_characteristic();
            t.check(chi, "cone: Euler characteristic", || f.to_json());
            t.check(cone(&ChainMap::identity(xc)).complex.is_acyclic(), "cone of the identity is acyclic", || xc.to_json());
        }
        2 => {
            t.count("cylinder");
            let cyl = cylinder(&f);
            t.check(squares_to_zero(&cyl), "cylinder: d d = 0", || f.to_json());
            let same = cyl.degrees().chain(y.complex.degrees()).all(|n| cyl.homology(n) == y.expected_homology(n));
            t.check(same, "cylinder: H(Cyl f) = H(Y)", || f.to_json());
        }
        _ => {
            t.count("truncate");
            let n = g.range(lo - 1, hi + 1);
            let (ge, le) = (truncate_ge(xc, n), truncate_le(xc, n));
            t.check(squares_to_zero(&ge) && squares_to_zero(&le), "truncate: d d = 0", || xc.to_json());
            let triple = canonical_triple(xc, n);
            t.check(is_degreewise_short_exact(&triple.f, &triple.g), "canonical triple is degreewise exact", || {
                json!({ "x": xc.to_json(), "n": n })
            });
            let ge_ok = (n + 1..=hi).all(|k| ge.homology(k) == x.expected_homology(k));
            let le_ok = (lo..=n).all(|k| le.homology(k) == x.expected_homology(k));
            let le_top = le.homology(n + 1).is_zero();
            t.check(ge_ok && le_ok && le_top, "truncations keep homology on their side", || {
                json!({ "x": xc.to_json(), "n": n })
            });
        }
    }
}

fn structure_maps_suite(g: &mut Gen, t: &mut Trial) {
    let (lo, hi) = g.window();
    let x = g.blocked(lo, hi, Shape::Free);
    let y = g.blocked(lo, hi, Shape::Free);
    let f = g.chain_map(&x, &y);
    let sm = structure_maps(&f);
    let inst = || f.to_json();
    if let Some(pj2) = t.ok(sm.p.after(&sm.j2), "p j2", inst) {
        t.check(pj2.is_identity(), "p j2 = id", inst);
    }
    if let Some(pj1) = t.ok(sm.p.after(&sm.j1), "p j1", inst) {
        t.check(pj1 == f, "p j1 = f", inst);
    }
    let j2p = sm.j2.after(&sm.p).expect("composable");
    let defect = j2p.sub(&ChainMap::identity(&sm.cyl)).expect("same ends");
    t.check(nullhomotopy(&defect).is_some(), "j2 p is homotopic to the identity", inst);
    t.add("cylinder_rank", sm.cyl.total_rank() as u64);
}

fn lemma2_4(g: &mut Gen, t: &mut Trial) {
    let Some(d) = t.ok(g.ses_morphism(), "generate", || Value::Null) else { return };
    let inst = || json!({ "b": d.b.matrix.to_json(), "y": d.b.source.to_json(), "y2": d.b.target.to_json() });
    if let Some(v) = t.ok(base_change_check(&d), "base change", inst) {
        t.check(v.agrees(), "left square cocartesian iff c iso, right square cartesian iff a iso", inst);
        if v.c_iso {
            t.count("c_iso");
        }
        if v.a_iso {
            t.count("a_iso");
        }
    }
}

fn lemma2_5(g: &mut Gen, t: &mut Trial) {
    let Some(d) = t.ok(g.three_by_three(), "generate", || Value::Null) else { return };
    let inst = || json!({ "m": d.iy.target.to_json(), "a": d.f1.matrix.to_json(), "b": d.iy.matrix.to_json() });
    if let Some((first, second)) = t.ok(three_by_three_sequences(&d), "3x3", inst) {
        t.check(first, "Y ⊔_X X' -> Y' -> Z'' is exact", inst);
        t.check(second, "X -> Y' -> Z' ×_{Z''} Y'' is exact", inst);
    }
}

const SPLITTING_IDENTITIES: [&str; 5] = ["g v = id", "u f = id", "u v = 0", "g f = 0", "f u + v g = id"];

fn remark3_2(g: &mut Gen, t: &mut Trial) {
    let (lo, hi) = g.window();
    let x = g.blocked(lo, hi, Shape::Torsion);
    for n in lo - 1..=hi {
        let inst = || json!({ "x": x.complex.to_json(), "n": n });
        let Some(s) = t.ok(truncation_splitting(&x.complex, n), "splitting", inst) else { continue };
        t.count("degrees");
        for (ok, name) in s.identities().into_iter().zip(SPLITTING_IDENTITIES) {
            t.check(ok, name, inst);
        }
    }
}

fn prop3_4(g: &mut Gen, t: &mut Trial) {
    let (lo, hi) = g.window();
    let x = g.blocked(lo, hi, Shape::Torsion);
    let y = g.blocked(lo, hi, Shape::Torsion);
    let f = g.chain_map(&x, &y);
    let inst = || f.to_json();
    let Some(cf) = t.ok(cellular_factorization(&f), "factorization", inst) else { return };
    let r = cf.verify();
    t.check(r.split_monos, "(a) stages are degreewise split monos", inst);
    t.check(r.final_quasi_iso, "(b) the final map is a quasi-isomorphism", inst);
    t.check(r.spherical_subquotients, "(c) subquotients are spherical in their stage degree", inst);
    t.check(r.composes_to_f, "stages composed with the final map give f", inst);
    t.check(r.stage_count <= r.width + 1, "at most width + 1 stages", inst);
    t.add("stages", r.stage_count as u64);
    if let Some(n) = quasi_iso_degree(&f).finite() {
        if let Some(step) = t.ok(factor_step(&f, n), "factor step", inst) {
            let sr = step.verify();
            t.check(sr.composite, "h g = f", inst);
            t.check(sr.cone_g_spherical, "Cone g is spherical", inst);
            t.check(sr.cone_h_homology, "H(Cone h) = H(W)", inst);
            if let Some(eq) = sr.cone_h_equivalence {
                t.count("equivalence_checks");
                t.check(eq, "Cone h is homotopy equivalent to W", inst);
            }
        }
    }
}

fn prop3_5(g: &mut Gen, t: &mut Trial) {
    let (lo, hi) = g.window();
    let n = g.range(lo, hi - 1);
    let (x, w) = g.pair(lo, hi, Shape::Spherical(n), Shape::Spherical(n));
    let e = g.extension(x, w);
    let inst = || json!({ "mono": e.mono.to_json(), "epi": e.epi.to_json(), "n": n });
    t.check(in_a_n(e.mono.target(), n).holds(), "extensions of n-spherical objects are n-spherical", inst);
    for k in lo - 1..=hi + 1 {
        for (i, p, side) in [
            (truncate_ge_map(&e.mono, k), truncate_ge_map(&e.epi, k), "ge"),
            (truncate_le_map(&e.mono, k), truncate_le_map(&e.epi, k), "le"),
        ] {
            t.count("truncations");
            let spherical = [i.source(), i.target(), p.target()].iter().all(|c| in_a_n(c, n).holds());
            t.check(spherical, &format!("τ{side} keeps n-sphericity"), inst);
            let exact = AdmissibleExactSequence::new(i, p).is_ok();
            t.check(exact, &format!("τ{side} keeps degreewise split exactness"), inst);
        }
    }
}

fn lemma3_6(g: &mut Gen, t: &mut Trial) {
    let (lo, hi) = g.window();
    let xs = if g.coin(0.5) { Shape::Acyclic } else { Shape::Torsion };
    let ws = if g.coin(0.5) { Shape::Free } else { Shape::Torsion };
    let (x, w) = g.pair(lo, hi, xs, ws);
    let e = g.extension(x, w);
    let inst = || json!({ "mono": e.mono.to_json(), "epi": e.epi.to_json() });
    let Some(ses) = t.ok(ComplexSes::new(e.mono.clone(), e.epi.clone()), "ses", inst) else { return };
    for n in lo..=hi + 1 {
        match kernel_image_sequences(&ses, n) {
            Ok((kernels, images)) => {
                t.count("degrees_checked");
                t.check(kernels, "kernel sequence is exact", inst);
                t.check(images, "image sequence is exact", inst);
            }
            Err(Error::HypothesisNotMet(_)) => t.count("degrees_skipped"),
            Err(err) => {
                t.check(false, &format!("kernel/image: {err}"), inst);
            }
        }
    }
}

fn cor3_8(g: &mut Gen, t: &mut Trial) {
    let (lo, hi) = g.window();
    let (lo, hi) = (lo.min(0), hi.max(1));
    let x = g.blocked(lo, hi, Shape::Spherical(0));
    let inst = || x.complex.to_json();
    if let Some(k) = t.ok(kappa(&x.complex), "kappa", inst) {
        t.check(k.certify(), "u and v are quasi-isomorphisms", inst);
        t.check(k.k.h0() == x.expected_homology(0), "H_0 κX = H_0 X", inst);
        if let Some(again) = t.ok(kappa(&k.k.complex()), "kappa of a Koszul object", inst) {
            t.check(again.k == k.k, "κλ = id", inst);
        }
    }
    let y = g.koszul(Shape::Torsion).koszul();
    if let Some(k) = t.ok(kappa(&y.complex()), "kappa of a Koszul object", || y.to_json()) {
        t.check(k.k == y, "κλ = id", || y.to_json());
    }
}

fn lemma4_2(g: &mut Gen, t: &mut Trial) {
    let Some(z) = t.ok(g.presented_koszul(), "generate", || Value::Null) else { return };
    let inst = || z.to_json();
    let Some(r) = t.ok(resolve_in_kos1(&z), "resolve", inst) else { return };
    t.check(r.verify(), "e is an admissible epi with kernel in Kos", inst);
    t.check(r.e.is_degreewise_surjective(), "e is degreewise surjective", inst);
    t.check(r.kernel.is_acyclic(), "the kernel is acyclic", inst);
    t.check(r.y.h0() == z.h0().canonical(), "H_0 Y = H_0 Z", inst);
    if !z.has_free_entries() {
        t.count("torsion_entries");
    }
}

fn lemma4_3(g: &mut Gen, t: &mut Trial) {
    let Some(x) = t.ok(g.presented_koszul(), "generate", || Value::Null) else { return };
    let inst = || x.to_json();
    let Some(s) = t.ok(e_functor(&x), "e_functor", inst) else { return };
    t.check(s.is_exact(), "the triple is exact in both degrees", inst);
    t.check(s.left().is_acyclic(), "the left term is acyclic", inst);
    t.check(s.right().x1.gens() == 0, "the right term is concentrated in degree 0", inst);
    t.check(s.right().h0().canonical() == x.h0().canonical(), "the right term is H_0 X", inst);
    t.check(s.middle() == &x, "the middle term is X", inst);
    t.check(s.h0_exact(), "H_0 of the triple is exact", inst);
}

fn koszul_extension(g: &mut Gen, xs: Shape, ws: Shape) -> (Blocked, Blocked, Option<AdmissibleExactSequence>) {
    let (x, w) = (g.koszul(xs), g.koszul(ws));
    let e = g.extension(x.clone(), w.clone());
    let seq = AdmissibleExactSequence::new(e.mono, e.epi).ok();
    (x, w, seq)
}

fn random_koszul_shape(g: &mut Gen) -> Shape {
    if g.coin(0.3) {
        Shape::Acyclic
    } else {
        Shape::Torsion
    }
}

fn appendix_a2(g: &mut Gen, t: &mut Trial) {
    // Excision along an admissible mono out of an acyclic object.
    let ws = random_koszul_shape(g);
    let (x, w) = (g.koszul(Shape::Acyclic), g.koszul(ws));
    let e = g.extension(x, w);
    let inst = || e.mono.to_json();
    if let Some(cert) = t.ok(excision_epi(&e.mono), "excision", inst) {
        let r = cert.verify();
        t.count("excisions");
        t.check(r.q_after_i, "q i = (1; 0)", inst);
        t.check(r.q_chain_map, "q is a chain map", inst);
        t.check(r.sections, "q_0 and q_1 have sections", inst);
        t.check(r.kernel_koszul, "ker q is a Koszul object", inst);
        t.check(r.kernel_acyclic == r.y_acyclic, "ker q is acyclic exactly when Y is", inst);
        t.check(r.extension_closure, "extension closure on ker q -> Y -> Z", inst);
        if r.kernel_acyclic {
            t.count("kernel_literally_acyclic");
        }
        if r.y_acyclic {
            t.count("y_acyclic");
        }
    }

    // Images of maps out of acyclic objects.
    let (a, y) = (g.koszul(Shape::Acyclic), g.koszul(Shape::Torsion));
    let f = g.chain_map(&a, &y);
    if let Some(im) = t.ok(image_factorization(&f), "image factorization", || f.to_json()) {
        t.count("image_factorizations");
        t.check(im.verify(&f), "f factors through an acyclic image", || f.to_json());
    }

    let idem = g.idempotent();
    if let Some(s) = t.ok(idempotent_split(&idem), "idempotent split", || idem.to_json()) {
        t.count("idempotents");
        t.check(s.verify(), "idempotents split", || idem.to_json());
    }

    let (xs, ws) = (random_koszul_shape(g), random_koszul_shape(g));
    let (x, w, seq) = koszul_extension(g, xs, ws);
    let Some(seq) = seq else {
        t.check(false, "generated extension is admissible", || Value::Null);
        return;
    };
    let inst = || json!({ "mono": seq.mono.to_json(), "epi": seq.epi.to_json() });
    t.count("extension_closure_checks");
    t.check(extension_closure_check(&seq), "X and Z acyclic exactly when Y is", inst);
    let expected = x.blocks.iter().chain(&w.blocks).all(|(_, a)| a.is_unit());
    t.check(seq.middle().is_acyclic() == expected, "Y acyclic exactly when every block is a unit", inst);
}

/// `class_kos_qis` from the block bookkeeping.
fn block_class(b: &Blocked) -> Option<koszulkit_core::k0::K0TorsionClass> {
    let orders: Vec<DomainElement> = b.blocks.iter().map(|(_, a)| a.clone()).collect();
    class_torsion(&FgModule::new(b.ring(), 0, orders)).ok()
}

fn k0_theorems(g: &mut Gen, t: &mut Trial) {
    let (xs, ws) = (random_koszul_shape(g), random_koszul_shape(g));
    let (x, w, seq) = koszul_extension(g, xs, ws);
    let Some(seq) = seq else {
        t.check(false, "generated extension is admissible", || Value::Null);
        return;
    };
    let inst = || json!({ "mono": seq.mono.to_json(), "epi": seq.epi.to_json() });
    t.count("sequences");
    for (which, name) in [(Classifier::Isom, "class_kos_isom is additive"), (Classifier::Qis, "class_kos_qis is additive")] {
        if let Some(ok) = t.ok(additivity_check(&seq, which), name, inst) {
            t.check(ok, name, inst);
        }
    }
    let y = KoszulObject::from_complex(seq.middle()).expect("extensions of Koszul objects");
    let bookkept = match (block_class(&x), block_class(&w)) {
        (Some(a), Some(b)) => Some(&a + &b),
        _ => None,
    };
    t.check(bookkept == Some(class_kos_qis(&y)), "class_kos_qis(Y) matches the blocks", inst);
    for obj in [x.koszul(), w.koszul(), y] {
        t.count("decompositions");
        t.check(decomposition_check(&obj), "class_kos_isom = (class of r(X), class_kos_qis)", || obj.to_json());
    }

    let (a, b, f) = g.qis_pair();
    let inst = || f.to_json();
    t.count("qis_pairs");
    t.check(f.is_quasi_iso(), "the generated pair is quasi-isomorphic", inst);
    t.check(class_kos_qis(&a.koszul()) == class_kos_qis(&b.koszul()), "quasi-isomorphic objects share class_kos_qis", inst);
    let (ca, cb) = (class_kos_isom(&a.koszul()), class_kos_isom(&b.koszul()));
    t.check(ca.torsion == cb.torsion, "quasi-isomorphic objects differ only in rank", inst);

    if let Some(p) = t.ok(g.presented_koszul(), "generate", || Value::Null) {
        let inst = || p.to_json();
        if let Some(s) = t.ok(e_functor(&p), "e_functor", inst) {
            t.count("presented_sequences");
            t.check(additivity_check_presented(&s, Classifier::Isom), "class_kos_isom is additive on the triple", inst);
            t.check(additivity_check_presented(&s, Classifier::Qis), "class_kos_qis is additive on the triple", inst);
        }
    }
}
