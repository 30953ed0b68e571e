//! Randomized algebraic invariants over both supported rings.

use koszulkit_core::complex::{cone, homology_via_cycles, shift, ChainComplex, ChainMap};
use koszulkit_core::k0::class_torsion;
use koszulkit_core::linalg::{cokernel, elementary_divisors, kernel_basis, rank, snf, solve};
use koszulkit_core::pid::{ext_gcd, factor};
use koszulkit_core::{DomainElement, FgModule, Matrix, Ring};
use proptest::prelude::*;

fn f2() -> Ring {
    Ring::poly(2).unwrap()
}

/// Raw entries: small integers over Z, and over F_2[x] the bits of the
/// same number read as coefficients.
fn element(ring: Ring, raw: i64) -> DomainElement {
    match ring {
        Ring::Integers => ring.from_i64(raw),
        Ring::Poly { .. } => {
            let bits = raw.unsigned_abs();
            let coeffs: Vec<i64> = (0..4).map(|k| ((bits >> k) & 1) as i64).collect();
            ring.poly_from(&coeffs).unwrap()
        }
    }
}

fn matrix(ring: Ring, rows: usize, cols: usize, raw: &[i64]) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |i, j| element(ring, raw[i * cols + j]))
}

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Integers), Just(f2())]
}

prop_compose! {
    fn any_matrix(max: usize)(ring in ring_strategy(), rows in 0..=max, cols in 0..=max)
        (raw in prop::collection::vec(-9i64..=9, rows * cols), ring in Just(ring), rows in Just(rows), cols in Just(cols))
        -> Matrix {
        matrix(ring, rows, cols, &raw)
    }
}

/// A unimodular matrix as a product of elementary operations.
fn unimodular(ring: Ring, n: usize, ops: &[(usize, usize, i64)]) -> Matrix {
    let mut m = Matrix::identity(ring, n);
    if n < 2 {
        return m;
    }
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(ring, n);
        e.set(i, j, element(ring, c));
        m = &e * &m;
    }
    m
}

/// Three-term complex `R^a <- R^b <- R^c` with `d_2 = ker(d_1) · B`.
fn three_term(ring: Ring, (a, b, c): (usize, usize, usize), raw: &[i64]) -> ChainComplex {
    let d1 = matrix(ring, a, b, &raw[..a * b]);
    let k = kernel_basis(&d1);
    let mix = matrix(ring, k.cols(), c, &raw[a * b..a * b + k.cols() * c]);
    let d2 = &k * &mix;
    ChainComplex::new(ring, 0, vec![a, b, c], vec![d1, d2]).unwrap()
}

prop_compose! {
    fn any_complex()(ring in ring_strategy(), a in 0usize..=3, b in 0usize..=4, c in 0usize..=3)
        (raw in prop::collection::vec(-9i64..=9, a * b + b * c), ring in Just(ring), dims in Just((a, b, c)))
        -> ChainComplex {
        three_term(ring, dims, &raw)
    }
}

/// `d^Y H + H d^X` for a degree-raising `H`, always a chain map.
fn homotopic_to_zero(x: &ChainComplex, y: &ChainComplex, raw: &[i64]) -> ChainMap {
    let ring = x.ring();
    let mut it = raw.iter().copied().cycle();
    let h: Vec<Matrix> = (-1..=3)
        .map(|n| {
            let (r, c) = (y.rank(n + 1), x.rank(n));
            let v: Vec<i64> = (0..r * c).map(|_| it.next().unwrap()).collect();
            matrix(ring, r, c, &v)
        })
        .collect();
    let hh = |n: i64| -> &Matrix { &h[(n + 1) as usize] };
    ChainMap::from_fn(x, y, |n| &(&*y.d(n + 1) * hh(n)) + &(hh(n - 1) * &*x.d(n))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_certificate_verifies(a in any_matrix(6)) {
        let cert = snf(&a);
        prop_assert!(cert.verify(&a));
        prop_assert_eq!(cert.rank(), rank(&a));
    }

    #[test]
    fn divisors_are_invariant_under_unimodular_change(
        a in any_matrix(5),
        left in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..6),
        right in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..6),
    ) {
        let ring = a.ring();
        let p = unimodular(ring, a.rows(), &left);
        let q = unimodular(ring, a.cols(), &right);
        prop_assert_eq!(elementary_divisors(&(&(&p * &a) * &q)), elementary_divisors(&a));
    }

    #[test]
    fn solve_recovers_consistent_systems(a in any_matrix(5), raw in prop::collection::vec(-9i64..=9, 10)) {
        let ring = a.ring();
        let x = matrix(ring, a.cols(), 2, &raw[..a.cols() * 2]);
        let b = &a * &x;
        let y = solve(&a, &b).unwrap();
        prop_assert!(y.is_some());
        prop_assert_eq!(&a * &y.unwrap(), b);
    }

    #[test]
    fn kernel_basis_is_saturated(a in any_matrix(5)) {
        let k = kernel_basis(&a);
        prop_assert!((&a * &k).is_zero());
        prop_assert_eq!(k.cols(), a.cols() - rank(&a));
        // A saturated sublattice has torsion-free cokernel.
        prop_assert!(cokernel(&k).is_torsion_free());
    }

    #[test]
    fn homology_routes_agree(x in any_complex()) {
        for n in x.degrees() {
            prop_assert_eq!(x.homology(n), homology_via_cycles(&x, n));
        }
    }

    #[test]
    fn shift_moves_homology(x in any_complex(), k in -2i64..=2) {
        let s = shift(&x, k);
        for n in x.degrees() {
            prop_assert_eq!(s.homology(n - k), x.homology(n));
        }
    }

    #[test]
    fn cone_euler_characteristic(
        x in any_complex(),
        y in any_complex(),
        raw in prop::collection::vec(-3i64..=3, 1..40),
    ) {
        prop_assume!(x.ring() == y.ring());
        let f = homotopic_to_zero(&x, &y, &raw);
        let c = cone(&f);
        prop_assert_eq!(c.complex.euler_characteristic(), y.euler_characteristic() - x.euler_characteristic());
        // A nullhomotopic map has cone homology H(Y) ⊕ H(X[-1]).
        for n in c.complex.degrees() {
            prop_assert_eq!(c.complex.homology(n), y.homology(n).direct_sum(&x.homology(n - 1)));
        }
    }

    #[test]
    fn bezout_identity(ring in ring_strategy(), a in -60i64..=60, b in -60i64..=60) {
        let (a, b) = (element(ring, a), element(ring, b));
        let (g, s, t) = ext_gcd(&a, &b).unwrap();
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
        if !g.is_zero() {
            prop_assert!(g.divides(&a) && g.divides(&b));
        }
    }

    #[test]
    fn factorization_multiplies_back(ring in ring_strategy(), a in 2i64..=400) {
        let a = match ring {
            Ring::Integers => ring.from_i64(a),
            Ring::Poly { .. } => {
                let coeffs: Vec<i64> = (0..9).map(|k| (a >> k) & 1).collect();
                ring.poly_from(&coeffs).unwrap()
            }
        };
        prop_assume!(!a.is_unit() && !a.is_zero());
        prop_assert_eq!(factor(&a).unwrap().multiply_back(ring), a.canonical());
    }

    #[test]
    fn torsion_class_is_additive(
        ring in ring_strategy(),
        m in prop::collection::vec(1i64..=30, 0..4),
        n in prop::collection::vec(1i64..=30, 0..4),
    ) {
        let module = |v: &[i64]| {
            let orders: Vec<DomainElement> =
                v.iter().map(|&k| element(ring, k)).filter(|e| !e.is_zero()).collect();
            FgModule::new(ring, 0, orders)
        };
        let (a, b) = (module(&m), module(&n));
        let sum = class_torsion(&a.direct_sum(&b)).unwrap();
        prop_assert_eq!(sum, &class_torsion(&a).unwrap() + &class_torsion(&b).unwrap());
    }
}
