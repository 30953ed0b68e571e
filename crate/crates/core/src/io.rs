//! JSON encoding of values and certificates.
//!
//! Integers are JSON numbers when they fit in 53 bits and decimal strings
//! otherwise; polynomials are arrays of coefficients in ascending degree.
//! Complexes are keyed by degree: `{"ring", "ranks": {"0": r0, ...},
//! "differentials": {"1": M, ...}}`. Every certificate includes all of its
//! matrices so it can be checked without this library.

use std::collections::BTreeMap;

use dashu_int::IBig;
use serde_json::{json, Map, Value};

use crate::complex::{
    ChainComplex, ChainMap, Cone, Homotopy, StructureMaps, TruncationSplitting, TruncationTriple,
};
use crate::error::{Error, Result};
use crate::k0::{K0KosClass, K0TorsionClass};
use crate::koszul::{
    CellularFactorization, FactorStep, Kappa, KoszulObject, PresentedExactSequence, PresentedKoszul,
    PresentedKoszulMap, Resolution,
};
use crate::linalg::{FgModule, Matrix, PresentedModule, SnfCertificate};
use crate::pid::{DomainElement, FpPoly, Ring};
use crate::sfilter::{EdDecomposition, ExcisionCertificate, IdempotentSplit};

const SAFE_BITS: i64 = 1 << 53;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Conversion to a JSON value.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Ring {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl ToJson for DomainElement {
    fn to_json(&self) -> Value {
        match self {
            DomainElement::Int(n) => match self.to_i64() {
                Some(v) if v.abs() < SAFE_BITS => json!(v),
                _ => Value::String(n.to_string()),
            },
            DomainElement::Poly(q) => json!(q.coeffs()),
        }
    }
}

impl ToJson for Matrix {
    fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows())
            .map(|i| Value::Array(self.row(i).iter().map(ToJson::to_json).collect()))
            .collect();
        json!({ "rows": self.rows(), "cols": self.cols(), "entries": entries })
    }
}

impl ToJson for FgModule {
    fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self.torsion().iter().map(ToJson::to_json).collect();
        json!({
            "ring": self.ring().to_json(),
            "free_rank": self.free_rank(),
            "torsion": torsion,
            "display": self.to_string(),
        })
    }
}

impl ToJson for PresentedModule {
    fn to_json(&self) -> Value {
        json!({ "relations": self.relations().to_json(), "canonical": self.canonical().to_json() })
    }
}

impl ToJson for ChainComplex {
    fn to_json(&self) -> Value {
        let mut ranks = Map::new();
        let mut diffs = Map::new();
        for n in self.degrees() {
            ranks.insert(n.to_string(), json!(self.rank(n)));
            if n > self.lo() {
                diffs.insert(n.to_string(), self.d(n).to_json());
            }
        }
        json!({ "ring": self.ring().to_json(), "ranks": ranks, "differentials": diffs })
    }
}

fn degree_map(degrees: impl Iterator<Item = i64>, mut f: impl FnMut(i64) -> Value) -> Value {
    Value::Object(degrees.map(|n| (n.to_string(), f(n))).collect())
}

/// Degrees on which both ends of a map are supported.
fn map_degrees<'a>(s: &'a ChainComplex, t: &'a ChainComplex) -> impl Iterator<Item = i64> + 'a {
    s.degrees().filter(|&n| t.in_support(n))
}

impl ToJson for ChainMap {
    fn to_json(&self) -> Value {
        let comps = degree_map(map_degrees(self.source(), self.target()), |n| {
            self.component(n).to_json()
        });
        json!({ "source": self.source().to_json(), "target": self.target().to_json(), "components": comps })
    }
}

impl ToJson for Homotopy {
    fn to_json(&self) -> Value {
        let s = self.u().source();
        let comps = degree_map(s.degrees().filter(|&n| self.u().target().in_support(n + 1)), |n| {
            self.component(n).to_json()
        });
        json!({ "u": self.u().to_json(), "v": self.v().to_json(), "components": comps })
    }
}

impl ToJson for KoszulObject {
    fn to_json(&self) -> Value {
        self.complex().to_json()
    }
}

impl ToJson for PresentedKoszul {
    fn to_json(&self) -> Value {
        json!({
            "ring": self.ring().to_json(),
            "ranks": { "1": self.x1.gens(), "0": self.x0.gens() },
            "differentials": { "1": self.d.to_json() },
            "presentations": { "1": self.x1.relations().to_json(), "0": self.x0.relations().to_json() },
        })
    }
}

impl ToJson for PresentedKoszulMap {
    fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "components": { "1": self.f1.to_json(), "0": self.f0.to_json() },
        })
    }
}

impl ToJson for PresentedExactSequence {
    fn to_json(&self) -> Value {
        json!({ "mono": self.mono.to_json(), "epi": self.epi.to_json() })
    }
}

impl ToJson for SnfCertificate {
    fn to_json(&self) -> Value {
        let divisors: Vec<Value> = self.divisors.iter().map(ToJson::to_json).collect();
        json!({ "u": self.u.to_json(), "d": self.d.to_json(), "v": self.v.to_json(), "divisors": divisors })
    }
}

impl ToJson for Cone {
    fn to_json(&self) -> Value {
        json!({ "cone": self.complex.to_json(), "into": self.into.to_json(), "onto": self.onto.to_json() })
    }
}

impl ToJson for StructureMaps {
    fn to_json(&self) -> Value {
        json!({ "cyl": self.cyl.to_json(), "j1": self.j1.to_json(), "j2": self.j2.to_json(), "p": self.p.to_json() })
    }
}

impl ToJson for TruncationTriple {
    fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "sub": self.sub.to_json(),
            "quotient": self.quotient.to_json(),
            "f": self.f.to_json(),
            "g": self.g.to_json(),
        })
    }
}

impl ToJson for TruncationSplitting {
    fn to_json(&self) -> Value {
        json!({ "triple": self.triple.to_json(), "u": self.u.to_json(), "v": self.v.to_json() })
    }
}

impl ToJson for FactorStep {
    fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "w": self.w.to_json(),
            "ab": self.ab.to_json(),
            "z": self.z.to_json(),
            "g": self.g.to_json(),
            "h": self.h.to_json(),
        })
    }
}

impl ToJson for CellularFactorization {
    fn to_json(&self) -> Value {
        let stages: Vec<Value> = self
            .stages
            .iter()
            .zip(&self.degrees)
            .zip(&self.subquotients)
            .map(|((s, k), q)| json!({ "map": s.to_json(), "degree": k, "subquotient": q.to_json() }))
            .collect();
        json!({ "f": self.f.to_json(), "stages": stages, "final": self.final_map.to_json() })
    }
}

impl ToJson for Kappa {
    fn to_json(&self) -> Value {
        json!({
            "k": self.k.to_json(),
            "truncated": self.truncated.to_json(),
            "u": self.u.to_json(),
            "v": self.v.to_json(),
        })
    }
}

impl ToJson for Resolution {
    fn to_json(&self) -> Value {
        json!({
            "y": self.y.to_json(),
            "e": self.e.to_json(),
            "kernel": self.kernel.to_json(),
            "k": { "1": self.k1.to_json(), "0": self.k0.to_json() },
        })
    }
}

impl ToJson for EdDecomposition {
    fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_json(),
            "v": self.v.to_json(),
            "u": self.u.to_json(),
            "iso": self.iso.to_json(),
            "inverse": self.inverse.to_json(),
        })
    }
}

impl ToJson for ExcisionCertificate {
    fn to_json(&self) -> Value {
        json!({
            "i": self.i.to_json(),
            "h": self.h.to_json(),
            "decomposition": self.decomposition.to_json(),
            "z": self.z.to_json(),
            "q": self.q.to_json(),
            "sections": { "1": self.sections[1].to_json(), "0": self.sections[0].to_json() },
            "kernel": self.kernel.to_json(),
            "kernel_inclusion": self.kernel_inclusion.to_json(),
        })
    }
}

impl ToJson for IdempotentSplit {
    fn to_json(&self) -> Value {
        json!({
            "e": self.e.to_json(),
            "image": self.image.to_json(),
            "complement": self.complement.to_json(),
            "iso": self.iso.to_json(),
            "inverse": self.inverse.to_json(),
        })
    }
}

impl ToJson for K0TorsionClass {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(|(p, m)| json!({ "prime": p.to_json(), "mult": m })).collect())
    }
}

impl ToJson for K0KosClass {
    fn to_json(&self) -> Value {
        json!({ "rank": self.rank, "torsion": self.torsion.to_json() })
    }
}

fn int_from_json(v: &Value) -> Result<IBig> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(IBig::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(IBig::from(u))
            } else {
                Err(bad(format!("{n} is not an integer")))
            }
        }
        Value::String(s) => s.trim().parse::<IBig>().map_err(|_| bad(format!("{s:?} is not an integer"))),
        other => Err(bad(format!("expected an integer, got {other}"))),
    }
}

fn small_int(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(format!("expected a machine integer, got {v}")))
}

pub fn element_from_json(ring: Ring, v: &Value) -> Result<DomainElement> {
    match ring {
        Ring::Integers => Ok(DomainElement::Int(int_from_json(v)?)),
        Ring::Poly { p } => match v {
            Value::Array(cs) => {
                let coeffs = cs.iter().map(small_int).collect::<Result<Vec<i64>>>()?;
                Ok(DomainElement::Poly(FpPoly::new(p, coeffs)))
            }
            Value::Number(_) => Ok(ring.from_i64(small_int(v)?)),
            other => Err(bad(format!("expected a coefficient array, got {other}"))),
        },
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?.as_u64().map(|n| n as usize).ok_or_else(|| bad(format!("{key:?} must be a nonnegative integer")))
}

pub fn ring_from_json(v: &Value) -> Result<Ring> {
    v.as_str().ok_or_else(|| bad("ring must be a string"))?.parse()
}

/// Reads the `"ring"` field when present, else uses `default`.
pub fn ring_of(v: &Value, default: Ring) -> Result<Ring> {
    match v.get("ring") {
        Some(r) => ring_from_json(r),
        None => Ok(default),
    }
}

pub fn matrix_from_json(ring: Ring, v: &Value) -> Result<Matrix> {
    let entries = field(v, "entries")?.as_array().ok_or_else(|| bad("entries must be an array"))?;
    let rows = match v.get("rows") {
        Some(_) => usize_field(v, "rows")?,
        None => entries.len(),
    };
    if entries.len() != rows {
        return Err(bad(format!("{rows} rows declared, {} given", entries.len())));
    }
    let cols = match v.get("cols") {
        Some(_) => usize_field(v, "cols")?,
        None => entries.first().and_then(Value::as_array).map_or(0, Vec::len),
    };
    let mut m = Matrix::zeros(ring, rows, cols);
    for (i, row) in entries.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad("each row must be an array"))?;
        if row.len() != cols {
            return Err(bad(format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            m.set(i, j, element_from_json(ring, e)?);
        }
    }
    Ok(m)
}

fn degree_keyed<'a>(v: Option<&'a Value>, what: &str) -> Result<BTreeMap<i64, &'a Value>> {
    let Some(v) = v else { return Ok(BTreeMap::new()) };
    let obj = v.as_object().ok_or_else(|| bad(format!("{what} must be an object keyed by degree")))?;
    obj.iter()
        .map(|(k, x)| {
            k.trim().parse::<i64>().map(|n| (n, x)).map_err(|_| bad(format!("{what}: {k:?} is not a degree")))
        })
        .collect()
}

pub fn complex_from_json(v: &Value, default_ring: Ring) -> Result<ChainComplex> {
    let ring = ring_of(v, default_ring)?;
    let ranks = degree_keyed(Some(field(v, "ranks")?), "ranks")?;
    let diffs = degree_keyed(v.get("differentials"), "differentials")?;
    let (Some(&lo), Some(&hi)) = (ranks.keys().next(), ranks.keys().next_back()) else {
        if !diffs.is_empty() {
            return Err(bad("differentials given for an empty complex"));
        }
        return Ok(ChainComplex::zero(ring));
    };
    if let Some(n) = diffs.keys().find(|&&n| n <= lo || n > hi) {
        return Err(bad(format!("differential d_{n} lies outside the support")));
    }
    let rank_vec = (lo..=hi)
        .map(|n| match ranks.get(&n) {
            Some(r) => r.as_u64().map(|r| r as usize).ok_or_else(|| bad("ranks must be nonnegative integers")),
            None => Ok(0),
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut ds = Vec::new();
    for n in lo + 1..=hi {
        let (r, c) = (rank_vec[(n - 1 - lo) as usize], rank_vec[(n - lo) as usize]);
        let m = match diffs.get(&n) {
            Some(m) => matrix_from_json(ring, m)?,
            None => Matrix::zeros(ring, r, c),
        };
        ds.push(m);
    }
    ChainComplex::new(ring, lo, rank_vec, ds)
}

pub fn chain_map_from_json(v: &Value, default_ring: Ring) -> Result<ChainMap> {
    let source = complex_from_json(field(v, "source")?, default_ring)?;
    let target = complex_from_json(field(v, "target")?, source.ring())?;
    let comps = degree_keyed(v.get("components"), "components")?;
    let ring = source.ring();
    let mut out = BTreeMap::new();
    for (n, m) in comps {
        if !(source.in_support(n) && target.in_support(n)) {
            return Err(bad(format!("component f_{n} lies outside the common support")));
        }
        out.insert(n, matrix_from_json(ring, m)?);
    }
    ChainMap::from_fn(&source, &target, |n| {
        out.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(ring, target.rank(n), source.rank(n)))
    })
}

/// Reads a complex supported in degrees 1 and 0 and checks membership.
pub fn koszul_from_json(v: &Value, default_ring: Ring) -> Result<KoszulObject> {
    KoszulObject::from_complex(&complex_from_json(v, default_ring)?)
}

/// Like [`koszul_from_json`] with optional `"presentations": {"1": R1, "0": R0}`
/// giving the relations of each entry (absent means free).
pub fn presented_koszul_from_json(v: &Value, default_ring: Ring) -> Result<PresentedKoszul> {
    let ring = ring_of(v, default_ring)?;
    let ranks = degree_keyed(Some(field(v, "ranks")?), "ranks")?;
    if let Some(n) = ranks.keys().find(|&&n| n != 0 && n != 1) {
        return Err(bad(format!("a presented Koszul object has no degree {n}")));
    }
    let rank = |n: i64| -> Result<usize> {
        ranks.get(&n).map_or(Ok(0), |r| r.as_u64().map(|r| r as usize).ok_or_else(|| bad("bad rank")))
    };
    let (g1, g0) = (rank(1)?, rank(0)?);
    let pres = degree_keyed(v.get("presentations"), "presentations")?;
    let module = |n: i64, g: usize| -> Result<PresentedModule> {
        match pres.get(&n) {
            Some(m) => {
                let rel = matrix_from_json(ring, m)?;
                if rel.rows() != g {
                    return Err(bad(format!("presentation of degree {n} has {} rows, expected {g}", rel.rows())));
                }
                Ok(PresentedModule::new(rel))
            }
            None => Ok(PresentedModule::free(ring, g)),
        }
    };
    let d = match degree_keyed(v.get("differentials"), "differentials")?.get(&1) {
        Some(m) => matrix_from_json(ring, m)?,
        None => Matrix::zeros(ring, g0, g1),
    };
    if d.shape() != (g0, g1) {
        return Err(bad(format!("d_1 is {}x{}, expected {g0}x{g1}", d.rows(), d.cols())));
    }
    PresentedKoszul::new(module(1, g1)?, module(0, g0)?, d)
}

pub fn fg_module_from_json(v: &Value, default_ring: Ring) -> Result<FgModule> {
    let ring = ring_of(v, default_ring)?;
    let free = v.get("free_rank").map_or(Ok(0), |_| usize_field(v, "free_rank"))?;
    let torsion = match v.get("torsion") {
        Some(Value::Array(ts)) => ts.iter().map(|t| element_from_json(ring, t)).collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(bad("torsion must be an array")),
        None => Vec::new(),
    };
    if torsion.iter().any(DomainElement::is_zero) {
        return Err(bad("torsion orders must be nonzero"));
    }
    Ok(FgModule::new(ring, free, torsion))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Ring = Ring::Integers;

    #[test]
    fn large_integers_become_strings() {
        let small = DomainElement::from(12345i64);
        assert_eq!(small.to_json(), json!(12345));
        let big: DomainElement = IBig::from(1i64 << 60).into();
        assert_eq!(big.to_json(), json!("1152921504606846976"));
        assert_eq!(element_from_json(Z, &big.to_json()).unwrap(), big);
        assert_eq!(element_from_json(Z, &json!(-7)).unwrap(), DomainElement::from(-7i64));
        assert!(element_from_json(Z, &json!(1.5)).is_err());
    }

    #[test]
    fn polynomials_are_coefficient_arrays() {
        let r = Ring::poly(3).unwrap();
        let q = r.poly_from(&[1, 0, 2]).unwrap();
        assert_eq!(q.to_json(), json!([1, 0, 2]));
        assert_eq!(element_from_json(r, &json!([4, 0, -1])).unwrap(), q);
        assert_eq!(element_from_json(r, &json!(2)).unwrap(), r.from_i64(2));
    }

    #[test]
    fn matrix_round_trip() {
        let m = Matrix::from_i64(Z, 2, 3, &[1, -2, 3, 0, 5, 6]);
        assert_eq!(matrix_from_json(Z, &m.to_json()).unwrap(), m);
        let empty = Matrix::zeros(Z, 0, 3);
        assert_eq!(matrix_from_json(Z, &empty.to_json()).unwrap(), empty);
        let ragged = json!({ "rows": 2, "cols": 2, "entries": [[1, 2], [3]] });
        assert_eq!(matrix_from_json(Z, &ragged).unwrap_err().kind(), "invalid-input");
    }

    #[test]
    fn complex_round_trip() {
        let d2 = Matrix::from_i64(Z, 2, 1, &[2, 0]);
        let d1 = Matrix::from_i64(Z, 1, 2, &[0, 3]);
        let x = ChainComplex::new(Z, 0, vec![1, 2, 1], vec![d1, d2]).unwrap();
        let v = x.to_json();
        assert_eq!(v["ranks"]["1"], json!(2));
        assert_eq!(complex_from_json(&v, Ring::poly(2).unwrap()).unwrap(), x);
    }

    #[test]
    fn invalid_complexes_are_rejected() {
        let v = json!({ "ring": "Z", "ranks": {"0": 1, "1": 1},
                        "differentials": {"1": {"rows": 1, "cols": 1, "entries": [[1]]},
                                          "2": {"rows": 1, "cols": 1, "entries": [[1]]}} });
        assert_eq!(complex_from_json(&v, Z).unwrap_err().kind(), "invalid-input");
        let v = json!({ "ring": "Z", "ranks": {"0": 1, "1": 1, "2": 1},
                        "differentials": {"1": {"entries": [[1]]}, "2": {"entries": [[1]]}} });
        assert_eq!(complex_from_json(&v, Z).unwrap_err().kind(), "not-a-complex");
        assert_eq!(complex_from_json(&json!({"ring": "fpx:4", "ranks": {}}), Z).unwrap_err().kind(), "invalid-input");
    }

    #[test]
    fn chain_map_round_trip() {
        let x = ChainComplex::two_term(Matrix::from_i64(Z, 1, 1, &[2]), 1);
        let y = ChainComplex::two_term(Matrix::from_i64(Z, 1, 1, &[4]), 1);
        let f = ChainMap::new(x, y, vec![Matrix::from_i64(Z, 1, 1, &[2]), Matrix::from_i64(Z, 1, 1, &[1])]).unwrap();
        assert_eq!(chain_map_from_json(&f.to_json(), Z).unwrap(), f);
        let mut v = f.to_json();
        v["components"]["0"] = Matrix::from_i64(Z, 1, 1, &[1]).to_json();
        assert_eq!(chain_map_from_json(&v, Z).unwrap_err().kind(), "not-a-chain-map");
    }

    #[test]
    fn presented_koszul_round_trip() {
        let z_mod = |n| PresentedModule::new(Matrix::from_i64(Z, 1, 1, &[n]));
        let x = PresentedKoszul::new(z_mod(2), z_mod(4), Matrix::from_i64(Z, 1, 1, &[2])).unwrap();
        assert_eq!(presented_koszul_from_json(&x.to_json(), Z).unwrap(), x);
        let mut v = x.to_json();
        v["differentials"]["1"] = Matrix::from_i64(Z, 1, 1, &[4]).to_json();
        assert!(presented_koszul_from_json(&v, Z).is_err());
    }

    #[test]
    fn k0_class_json() {
        let c = K0TorsionClass::from_pairs([(DomainElement::from(3i64), 1), (DomainElement::from(2i64), 2)]).unwrap();
        let k = K0KosClass { rank: 1, torsion: c };
        assert_eq!(
            k.to_json(),
            json!({ "rank": 1, "torsion": [{"prime": 2, "mult": 2}, {"prime": 3, "mult": 1}] })
        );
    }
}
