//! Named library operations on JSON input, shared by the command line and
//! the error-path fixtures. Each operation parses its input, runs one
//! library call, serializes the result and lists the certificate checks
//! that failed.

use koszulkit_core::complex::{
    canonical_triple, cone, is_degreewise_short_exact, kernel_image_sequences, structure_maps,
    truncation_splitting, ComplexSes,
};
use koszulkit_core::io::{
    chain_map_from_json, complex_from_json, fg_module_from_json, koszul_from_json, matrix_from_json,
    presented_koszul_from_json, ring_of, ToJson,
};
use koszulkit_core::k0::{class_kos_isom, class_kos_qis, class_torsion};
use koszulkit_core::koszul::{cellular_factorization, e_functor, kappa, resolve_in_kos1};
use koszulkit_core::linalg::snf;
use koszulkit_core::sfilter::{ed_decompose, excision_epi, idempotent_split};
use koszulkit_core::{Error, Result, Ring};
use serde_json::{json, Value};

/// Every operation [`run`] accepts: the command-line subcommands other
/// than `suite`, plus two reachable only through fixtures.
pub const OPERATIONS: &[&str] = &[
    "snf",
    "homology",
    "cone",
    "cyl",
    "truncate",
    "split",
    "factorize",
    "kappa",
    "resolve",
    "efunctor",
    "excise",
    "eddecompose",
    "k0",
    "idempotent",
    "kernel_image",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: Value,
    /// Names of the checks that failed; empty on success.
    pub violations: Vec<String>,
}

impl Outcome {
    fn new(output: Value, checks: &[(&str, bool)]) -> Outcome {
        let violations = checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| name.to_string()).collect();
        Outcome { output, violations }
    }
}

/// `v[key]` when present, else `v` itself, so both `{"map": {...}}` and a
/// bare map are accepted.
fn part<'a>(v: &'a Value, key: &str) -> &'a Value {
    v.get(key).unwrap_or(v)
}

fn degree(v: &Value) -> Result<i64> {
    v.get("n").and_then(Value::as_i64).ok_or_else(|| Error::InvalidInput("missing integer field \"n\"".into()))
}

pub fn run(op: &str, input: &Value, default_ring: Ring) -> Result<Outcome> {
    let ring = ring_of(input, default_ring)?;
    match op {
        "snf" => {
            let a = matrix_from_json(ring, part(input, "matrix"))?;
            let cert = snf(&a);
            let ok = cert.verify(&a);
            Ok(Outcome::new(cert.to_json(), &[("U A V = D", ok)]))
        }
        "homology" => {
            let x = complex_from_json(part(input, "complex"), ring)?;
            let h: serde_json::Map<String, Value> =
                x.homology_all().into_iter().map(|(n, m)| (n.to_string(), m.to_json())).collect();
            Ok(Outcome::new(json!({ "homology": h }), &[]))
        }
        "cone" => {
            let f = chain_map_from_json(part(input, "map"), ring)?;
            Ok(Outcome::new(cone(&f).to_json(), &[]))
        }
        "cyl" => {
            let f = chain_map_from_json(part(input, "map"), ring)?;
            let sm = structure_maps(&f);
            let pj2 = sm.p.after(&sm.j2).is_ok_and(|c| c.is_identity());
            let pj1 = sm.p.after(&sm.j1).is_ok_and(|c| c == f);
            Ok(Outcome::new(sm.to_json(), &[("p j2 = id", pj2), ("p j1 = f", pj1)]))
        }
        "truncate" => {
            let x = complex_from_json(part(input, "complex"), ring)?;
            let t = canonical_triple(&x, degree(input)?);
            let exact = is_degreewise_short_exact(&t.f, &t.g);
            Ok(Outcome::new(t.to_json(), &[("degreewise exact", exact)]))
        }
        "split" => {
            let x = complex_from_json(part(input, "complex"), ring)?;
            let s = truncation_splitting(&x, degree(input)?)?;
            let names = ["g v = id", "u f = id", "u v = 0", "g f = 0", "f u + v g = id"];
            let checks: Vec<(&str, bool)> = names.into_iter().zip(s.identities()).collect();
            Ok(Outcome::new(s.to_json(), &checks))
        }
        "factorize" => {
            let f = chain_map_from_json(part(input, "map"), ring)?;
            let cf = cellular_factorization(&f)?;
            let r = cf.verify();
            let mut out = cf.to_json();
            out["stage_count"] = json!(r.stage_count);
            Ok(Outcome::new(
                out,
                &[
                    ("split monos", r.split_monos),
                    ("final quasi-isomorphism", r.final_quasi_iso),
                    ("spherical subquotients", r.spherical_subquotients),
                    ("composes to f", r.composes_to_f),
                    ("at most width + 1 stages", r.stage_count <= r.width + 1),
                ],
            ))
        }
        "kappa" => {
            let x = complex_from_json(part(input, "complex"), ring)?;
            let k = kappa(&x)?;
            let ok = k.certify();
            Ok(Outcome::new(k.to_json(), &[("u and v are quasi-isomorphisms", ok)]))
        }
        "resolve" => {
            let z = presented_koszul_from_json(part(input, "object"), ring)?;
            let r = resolve_in_kos1(&z)?;
            let ok = r.verify();
            Ok(Outcome::new(r.to_json(), &[("admissible epi with kernel in Kos", ok)]))
        }
        "efunctor" => {
            let x = presented_koszul_from_json(part(input, "object"), ring)?;
            let s = e_functor(&x)?;
            Ok(Outcome::new(s.to_json(), &[("exact", s.is_exact()), ("H_0 exact", s.h0_exact())]))
        }
        "excise" => {
            let i = chain_map_from_json(part(input, "mono"), ring)?;
            let cert = excision_epi(&i)?;
            let r = cert.verify();
            let mut out = cert.to_json();
            out["report"] = json!({
                "q_after_i": r.q_after_i,
                "q_chain_map": r.q_chain_map,
                "sections": r.sections,
                "kernel_koszul": r.kernel_koszul,
                "kernel_acyclic": r.kernel_acyclic,
                "y_acyclic": r.y_acyclic,
                "extension_closure": r.extension_closure,
            });
            Ok(Outcome::new(out, &[("excision certificate", r.passed())]))
        }
        "eddecompose" => {
            let w = koszul_from_json(part(input, "object"), ring)?;
            let e = ed_decompose(&w);
            let ok = e.verify();
            Ok(Outcome::new(e.to_json(), &[("elementary-divisor decomposition", ok)]))
        }
        "k0" => {
            if let Some(m) = input.get("module") {
                let c = class_torsion(&fg_module_from_json(m, ring)?)?;
                return Ok(Outcome::new(json!({ "torsion": c.to_json() }), &[]));
            }
            let x = koszul_from_json(part(input, "object"), ring)?;
            let out = json!({ "isom": class_kos_isom(&x).to_json(), "qis": class_kos_qis(&x).to_json() });
            Ok(Outcome::new(out, &[]))
        }
        "idempotent" => {
            let e = chain_map_from_json(part(input, "map"), ring)?;
            let s = idempotent_split(&e)?;
            let ok = s.verify();
            Ok(Outcome::new(s.to_json(), &[("idempotent split", ok)]))
        }
        "kernel_image" => {
            let i = chain_map_from_json(field(input, "mono")?, ring)?;
            let p = chain_map_from_json(field(input, "epi")?, ring)?;
            let ses = ComplexSes::new(i, p)?;
            let (kernels, images) = kernel_image_sequences(&ses, degree(input)?)?;
            let out = json!({ "kernels_exact": kernels, "images_exact": images });
            Ok(Outcome::new(out, &[("kernel sequence exact", kernels), ("image sequence exact", images)]))
        }
        _ => Err(Error::InvalidInput(format!("unknown operation {op:?}"))),
    }
}

/// A curated input for an error path or a known outcome:
/// `{"operation", "ring"?, "input", "expect"?}`. `expect` is an error
/// kind, `"violation"` or `"ok"`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub operation: String,
    pub ring: Ring,
    pub input: Value,
    pub expect: Option<String>,
}

impl Fixture {
    pub fn from_json(v: &Value, default_ring: Ring) -> Result<Fixture> {
        let operation = field(v, "operation")?
            .as_str()
            .ok_or_else(|| Error::InvalidInput("operation must be a string".into()))?
            .to_string();
        let expect = match v.get("expect") {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(Error::InvalidInput("expect must be a string".into())),
        };
        Ok(Fixture { operation, ring: ring_of(v, default_ring)?, input: field(v, "input")?.clone(), expect })
    }

    pub fn run(&self) -> Result<Outcome> {
        run(&self.operation, &self.input, self.ring)
    }

    /// The observed outcome in the vocabulary of `expect`.
    pub fn observed(&self) -> String {
        match self.run() {
            Ok(o) if o.violations.is_empty() => "ok".into(),
            Ok(_) => "violation".into(),
            Err(e) => e.kind().into(),
        }
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::InvalidInput(format!("missing field {key:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_of_a_literal_matrix() {
        let out = run("snf", &json!({ "entries": [[2, 4], [6, 8]] }), Ring::Integers).unwrap();
        assert!(out.violations.is_empty());
        assert_eq!(out.output["divisors"], json!([2, 4]));
    }

    #[test]
    fn k0_of_a_module_and_of_an_object() {
        let m = run("k0", &json!({ "module": { "torsion": [12] } }), Ring::Integers).unwrap();
        assert_eq!(m.output["torsion"], json!([{ "prime": 2, "mult": 2 }, { "prime": 3, "mult": 1 }]));
        let x = json!({ "ranks": { "1": 1, "0": 1 }, "differentials": { "1": { "entries": [[6]] } } });
        let k = run("k0", &x, Ring::Integers).unwrap();
        assert_eq!(k.output["isom"]["rank"], json!(1));
    }

    #[test]
    fn unknown_operation_is_invalid_input() {
        assert_eq!(run("frobnicate", &json!({}), Ring::Integers).unwrap_err().kind(), "invalid-input");
    }

    #[test]
    fn truncation_needs_a_degree() {
        let x = json!({ "complex": { "ranks": { "0": 1 } } });
        assert_eq!(run("truncate", &x, Ring::Integers).unwrap_err().kind(), "invalid-input");
    }
}
