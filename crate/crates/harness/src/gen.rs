//! Seeded generators. Every object is assembled from one-dimensional blocks
//! `[R -a-> R]` whose invariants are known by construction, then hidden
//! behind random unimodular changes of basis.

use koszulkit_core::complex::{ChainComplex, ChainMap};
use koszulkit_core::koszul::{KoszulObject, PresentedKoszul};
use koszulkit_core::linalg::diagrams::{SesMorphism, ThreeByThree};
use koszulkit_core::linalg::{hom_generators, ModuleHom, PresentedModule};
use koszulkit_core::pid::{gcd, FpPoly};
use koszulkit_core::{DomainElement, Error, FgModule, Matrix, Result, Ring};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator bounds. `max_entry` is a magnitude over `Z` and a degree over
/// `F_p[x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub ring: Ring,
    pub seed: u64,
    pub max_rank: usize,
    pub max_entry: u32,
    pub support_width: usize,
    pub trials: usize,
}

impl GenParams {
    pub fn new(ring: Ring, seed: u64) -> GenParams {
        let max_entry = match ring {
            Ring::Integers => 9,
            Ring::Poly { .. } => 3,
        };
        GenParams { ring, seed, max_rank: 6, max_entry, support_width: 4, trials: 100 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_rank == 0 || self.max_entry == 0 || self.support_width == 0 || self.trials == 0 {
            return Err(Error::InvalidInput("generator bounds must be positive".into()));
        }
        Ok(())
    }
}

/// Which homology a block complex may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Torsion homology in any degree.
    Torsion,
    /// Torsion homology in degree `n` only.
    Spherical(i64),
    Acyclic,
    /// Torsion and free homology.
    Free,
}

/// A complex built from blocks `[R -a-> R]` in degrees `(top, top - 1)`,
/// conjugated by `P_n` in each degree: `d_n = P_{n-1} D_n P_n^{-1}` with
/// `D` the block-diagonal differential.
#[derive(Clone, Debug)]
pub struct Blocked {
    pub complex: ChainComplex,
    pub blocks: Vec<(i64, DomainElement)>,
    lo: i64,
    twist: Vec<Matrix>,
    untwist: Vec<Matrix>,
}

impl Blocked {
    pub fn ring(&self) -> Ring {
        self.complex.ring()
    }

    fn basis(&self, n: i64) -> Vec<(usize, bool)> {
        let mut v = Vec::new();
        for (b, (top, _)) in self.blocks.iter().enumerate() {
            if *top == n {
                v.push((b, true));
            } else if *top - 1 == n {
                v.push((b, false));
            }
        }
        v
    }

    fn slot(&self, n: i64, block: usize, upper: bool) -> usize {
        self.basis(n).iter().position(|&e| e == (block, upper)).expect("block meets the degree")
    }

    fn rank(&self, n: i64) -> usize {
        self.basis(n).len()
    }

    fn in_window(&self, n: i64) -> bool {
        n >= self.lo && ((n - self.lo) as usize) < self.twist.len()
    }

    fn p(&self, n: i64) -> Matrix {
        if self.in_window(n) {
            self.twist[(n - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.ring(), 0, 0)
        }
    }

    fn p_inv(&self, n: i64) -> Matrix {
        if self.in_window(n) {
            self.untwist[(n - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.ring(), 0, 0)
        }
    }

    /// `H_n` read off the blocks.
    pub fn expected_homology(&self, n: i64) -> FgModule {
        let ring = self.ring();
        let mut free = 0;
        let mut orders = Vec::new();
        for (top, a) in &self.blocks {
            if a.is_zero() && (*top == n || *top - 1 == n) {
                free += 1;
            } else if *top - 1 == n {
                orders.push(a.clone());
            }
        }
        FgModule::new(ring, free, orders)
    }

    pub fn koszul(&self) -> KoszulObject {
        KoszulObject::from_complex(&self.complex).expect("generated as a Koszul object")
    }
}

/// `(source block, target block, s)`: the block map `(s a_src / g, ε s a_dst / g)`
/// with `g = gcd(a_src, a_dst)`, from degrees `(t, t-1)` to `(t+k, t+k-1)`.
type BlockPair = (usize, usize, DomainElement);

/// A degreewise split extension `X -> Y -> W`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub x: Blocked,
    pub w: Blocked,
    pub mono: ChainMap,
    pub epi: ChainMap,
}

pub struct Gen {
    pub params: GenParams,
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(params: GenParams, seed: u64) -> Gen {
        Gen { params, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn ring(&self) -> Ring {
        self.params.ring
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n.max(1))
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn poly(&mut self, p: u32, min_deg: usize, max_deg: usize) -> DomainElement {
        let deg = self.rng.gen_range(min_deg..=max_deg);
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| self.rng.gen_range(0..p as i64)).collect();
        if min_deg > 0 || deg > 0 {
            coeffs[deg] = self.rng.gen_range(1..p as i64);
        }
        FpPoly::new(p, coeffs).into()
    }

    /// Any element within the entry bound.
    pub fn element(&mut self) -> DomainElement {
        let e = self.params.max_entry;
        match self.ring() {
            Ring::Integers => self.rng.gen_range(-(e as i64)..=e as i64).into(),
            Ring::Poly { p } => {
                let deg = self.rng.gen_range(0..=e as usize);
                let coeffs: Vec<i64> = (0..=deg).map(|_| self.rng.gen_range(0..p as i64)).collect();
                FpPoly::new(p, coeffs).into()
            }
        }
    }

    /// Entries for transforms and homotopies, kept small so that products
    /// stay readable.
    pub fn small(&mut self) -> DomainElement {
        match self.ring() {
            Ring::Integers => self.rng.gen_range(-2i64..=2).into(),
            Ring::Poly { p } => {
                let coeffs: Vec<i64> = (0..2).map(|_| self.rng.gen_range(0..p as i64)).collect();
                FpPoly::new(p, coeffs).into()
            }
        }
    }

    pub fn unit(&mut self) -> DomainElement {
        match self.ring() {
            Ring::Integers => (if self.coin(0.5) { 1i64 } else { -1 }).into(),
            Ring::Poly { p } => self.ring().from_i64(self.rng.gen_range(1..p as i64)),
        }
    }

    pub fn non_unit(&mut self) -> DomainElement {
        match self.ring() {
            Ring::Integers => {
                let a = self.rng.gen_range(2..=self.params.max_entry.max(2) as i64);
                (if self.coin(0.5) { a } else { -a }).into()
            }
            Ring::Poly { p } => self.poly(p, 1, self.params.max_entry as usize),
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.ring(), rows, cols, |_, _| self.element())
    }

    pub fn small_matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.ring(), rows, cols, |_, _| self.small())
    }

    /// A unimodular matrix and its inverse, as a product of elementary
    /// operations, unit scalings and swaps.
    pub fn unimodular(&mut self, n: usize) -> (Matrix, Matrix) {
        let ring = self.ring();
        let mut m = Matrix::identity(ring, n);
        let mut inv = Matrix::identity(ring, n);
        if n == 0 {
            return (m, inv);
        }
        for _ in 0..(n + 1) {
            let (i, j) = (self.below(n), self.below(n));
            let mut e = Matrix::identity(ring, n);
            let mut e_inv = Matrix::identity(ring, n);
            if i == j {
                let u = self.unit();
                e_inv.set(i, i, u.unit_inverse().expect("unit"));
                e.set(i, i, u);
            } else if self.coin(0.2) {
                e = e.select_rows(&swap(n, i, j));
                e_inv = e.clone();
            } else {
                let c = self.small();
                e_inv.set(i, j, -c.clone());
                e.set(i, j, c);
            }
            m = &e * &m;
            inv = &inv * &e_inv;
        }
        (m, inv)
    }

    fn block_value(&mut self, shape: Shape, top: i64) -> DomainElement {
        match shape {
            Shape::Acyclic => self.unit(),
            Shape::Spherical(n) if top != n + 1 => self.unit(),
            Shape::Spherical(_) | Shape::Torsion => {
                if self.coin(0.3) {
                    self.unit()
                } else {
                    self.non_unit()
                }
            }
            Shape::Free => match self.below(4) {
                0 => self.ring().zero(),
                1 => self.unit(),
                _ => self.non_unit(),
            },
        }
    }

    /// Blocks in the window `lo..=hi` with random twists.
    pub fn blocked(&mut self, lo: i64, hi: i64, shape: Shape) -> Blocked {
        let max = self.params.max_rank;
        let mut blocks: Vec<(i64, DomainElement)> = Vec::new();
        if hi > lo {
            let count = self.rng.gen_range(0..=max + 1);
            for _ in 0..count {
                let top = self.range(lo + 1, hi);
                let used = |n: i64| blocks.iter().filter(|(t, _)| *t == n || *t - 1 == n).count();
                if used(top) >= max || used(top - 1) >= max {
                    continue;
                }
                let a = self.block_value(shape, top);
                blocks.push((top, a));
            }
        }
        self.assemble(lo, hi, blocks)
    }

    pub fn assemble(&mut self, lo: i64, hi: i64, blocks: Vec<(i64, DomainElement)>) -> Blocked {
        let ring = self.ring();
        let mut b = Blocked {
            complex: ChainComplex::zero(ring),
            blocks,
            lo,
            twist: Vec::new(),
            untwist: Vec::new(),
        };
        for n in lo..=hi {
            let (p, q) = self.unimodular(b.rank(n));
            b.twist.push(p);
            b.untwist.push(q);
        }
        let ranks: Vec<usize> = (lo..=hi).map(|n| b.rank(n)).collect();
        let diffs: Vec<Matrix> = (lo + 1..=hi)
            .map(|n| {
                let mut d = Matrix::zeros(ring, b.rank(n - 1), b.rank(n));
                for (k, (top, a)) in b.blocks.iter().enumerate() {
                    if *top == n {
                        d.set(b.slot(n - 1, k, false), b.slot(n, k, true), a.clone());
                    }
                }
                &(&b.p(n - 1) * &d) * &b.p_inv(n)
            })
            .collect();
        b.complex = ChainComplex::new(ring, lo, ranks, diffs).expect("blocks square to zero");
        b
    }

    /// A Koszul object in degrees 1 and 0.
    pub fn koszul(&mut self, shape: Shape) -> Blocked {
        self.blocked(0, 1, shape)
    }

    /// Window of width `2..=support_width` starting near zero.
    pub fn window(&mut self) -> (i64, i64) {
        let w = self.rng.gen_range(2..=self.params.support_width.max(2)) as i64;
        let lo = self.range(-1, 1);
        (lo, lo + w - 1)
    }

    /// Random block pairs from `src` blocks at `t` to `dst` blocks at `t + k`.
    fn random_pairs(&mut self, src: &Blocked, dst: &Blocked, k: i64) -> Vec<BlockPair> {
        let mut pairs = Vec::new();
        for (i, (ts, _)) in src.blocks.iter().enumerate() {
            for (j, (td, _)) in dst.blocks.iter().enumerate() {
                if *td == ts + k && self.coin(0.5) {
                    let s = self.small();
                    pairs.push((i, j, s));
                }
            }
        }
        pairs
    }

    /// Components `F_n : src_n -> dst_{n+k}` of a block map with
    /// `d F = ε F d`, in twisted coordinates.
    fn block_map(&self, src: &Blocked, dst: &Blocked, k: i64, eps: bool, pairs: &[BlockPair]) -> impl Fn(i64) -> Matrix {
        let ring = src.ring();
        let (lo, hi) = (src.complex.lo(), src.complex.hi());
        let mut comps: Vec<Matrix> = (lo..=hi).map(|n| Matrix::zeros(ring, dst.rank(n + k), src.rank(n))).collect();
        for (i, j, s) in pairs {
            let ((ts, a_s), (td, a_d)) = (&src.blocks[*i], &dst.blocks[*j]);
            let g = gcd(a_s, a_d);
            let (up, low) = match (a_s.is_zero(), a_d.is_zero()) {
                (true, true) => (s.clone(), s.clone()),
                (true, false) => (ring.zero(), s.clone()),
                (false, true) => (s.clone(), ring.zero()),
                (false, false) => (
                    s * &a_s.exact_div(&g).expect("gcd divides"),
                    s * &a_d.exact_div(&g).expect("gcd divides"),
                ),
            };
            let low = if eps { low } else { -low };
            comps[(ts - lo) as usize].set(dst.slot(*td, *j, true), src.slot(*ts, *i, true), up);
            comps[(ts - 1 - lo) as usize].set(dst.slot(td - 1, *j, false), src.slot(ts - 1, *i, false), low);
        }
        let twisted: Vec<Matrix> =
            (lo..=hi).map(|n| &(&dst.p(n + k) * &comps[(n - lo) as usize]) * &src.p_inv(n)).collect();
        move |n| twisted[(n - lo) as usize].clone()
    }

    /// `d^Y H + H d^X` for a random degree-raising `H`.
    pub fn nullhomotopic(&mut self, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
        let ring = x.ring();
        let zero = self.coin(0.25);
        let (lo, hi) = (x.lo().min(y.lo()) - 1, x.hi().max(y.hi()) + 1);
        let h: Vec<Matrix> = (lo..=hi)
            .map(|n| {
                let (r, c) = (y.rank(n + 1), x.rank(n));
                if zero { Matrix::zeros(ring, r, c) } else { self.small_matrix(r, c) }
            })
            .collect();
        let at = |n: i64| &h[(n - lo) as usize];
        ChainMap::from_fn(x, y, |n| &(&*y.d(n + 1) * at(n)) + &(at(n - 1) * &*x.d(n))).expect("homotopy-shaped maps are chain maps")
    }

    /// A chain map of block complexes: block maps plus a nullhomotopic part.
    pub fn chain_map(&mut self, x: &Blocked, y: &Blocked) -> ChainMap {
        let pairs = self.random_pairs(x, y, 0);
        let f = self.block_map(x, y, 0, true, &pairs);
        let h = self.nullhomotopic(&x.complex, &y.complex);
        let blocks = ChainMap::from_fn(&x.complex, &y.complex, f).expect("block maps are chain maps");
        blocks.add(&h).expect("same ends")
    }

    /// A chain map between arbitrary complexes, structural when possible.
    pub fn any_chain_map(&mut self, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
        let h = self.nullhomotopic(x, y);
        if x == y && self.coin(0.5) {
            let c = self.small();
            let id = ChainMap::identity(x);
            let scaled = ChainMap::from_fn(x, x, |n| id.component(n).scale(&c)).expect("scalar maps");
            return scaled.add(&h).expect("same ends");
        }
        h
    }

    /// `Y = X ⊕ W` with `d^Y = [[d^X, T], [0, d^W]]`, where `T` is a block
    /// map `W -> X[-1]` plus a boundary-shaped term, conjugated once more.
    pub fn extension(&mut self, x: Blocked, w: Blocked) -> Extension {
        let ring = x.ring();
        let (xc, wc) = (&x.complex, &w.complex);
        assert_eq!((xc.lo(), xc.hi()), (wc.lo(), wc.hi()), "extensions share a window");
        let (lo, hi) = (xc.lo(), xc.hi());
        let pairs = self.random_pairs(&w, &x, -1);
        let t_blocks = self.block_map(&w, &x, -1, false, &pairs);
        let s: Vec<Matrix> = (lo..=hi).map(|n| self.small_matrix(xc.rank(n), wc.rank(n))).collect();
        let s_at = |n: i64| if n >= lo && n <= hi { s[(n - lo) as usize].clone() } else { Matrix::zeros(ring, xc.rank(n), wc.rank(n)) };
        let t = |n: i64| {
            let shaped = &(&*xc.d(n) * &s_at(n)) - &(&s_at(n - 1) * &*wc.d(n));
            &t_blocks(n) + &shaped
        };

        let q: Vec<(Matrix, Matrix)> = (lo..=hi).map(|n| self.unimodular(xc.rank(n) + wc.rank(n))).collect();
        let q_at = |n: i64| &q[(n - lo) as usize];
        let ranks: Vec<usize> = (lo..=hi).map(|n| xc.rank(n) + wc.rank(n)).collect();
        let diffs: Vec<Matrix> = (lo + 1..=hi)
            .map(|n| {
                let (a, b) = (xc.rank(n - 1), wc.rank(n - 1));
                let (c, e) = (xc.rank(n), wc.rank(n));
                let (dx, dw, tn) = (xc.d(n), wc.d(n), t(n));
                let d = Matrix::blocks(ring, &[a, b], &[c, e], &[vec![Some(&*dx), Some(&tn)], vec![None, Some(&*dw)]]);
                &(&q_at(n - 1).0 * &d) * &q_at(n).1
            })
            .collect();
        let y = ChainComplex::new(ring, lo, ranks, diffs).expect("d^Y squares to zero");
        let mono = ChainMap::from_fn(xc, &y, |n| {
            let incl = Matrix::identity(ring, y.rank(n)).columns(0..xc.rank(n));
            &q_at(n).0 * &incl
        })
        .expect("inclusion of a subcomplex");
        let epi = ChainMap::from_fn(&y, wc, |n| {
            let proj = Matrix::identity(ring, y.rank(n)).row_range(xc.rank(n)..y.rank(n));
            &proj * &q_at(n).1
        })
        .expect("projection onto the quotient");
        Extension { x, w, mono, epi }
    }

    /// An `n`-spherical pair in a common window, for extensions.
    pub fn pair(&mut self, lo: i64, hi: i64, a: Shape, b: Shape) -> (Blocked, Blocked) {
        (self.blocked(lo, hi, a), self.blocked(lo, hi, b))
    }

    /// A Koszul object and one quasi-isomorphic to it, with the map: each
    /// block is rescaled by a unit, extra acyclic blocks are added, and the
    /// map is the identity on the original blocks.
    pub fn qis_pair(&mut self) -> (Blocked, Blocked, ChainMap) {
        let x = self.koszul(Shape::Torsion);
        let mut blocks: Vec<(i64, DomainElement)> = Vec::new();
        for (t, a) in &x.blocks {
            let u = self.unit();
            blocks.push((*t, &u * a));
        }
        let extra = self.below(3);
        for _ in 0..extra {
            let u = self.unit();
            blocks.push((1, u));
        }
        blocks.shuffle(&mut self.rng);
        let y = self.assemble(0, 1, blocks);
        // Match each original block to its rescaled copy.
        let mut used = vec![false; y.blocks.len()];
        let mut pairs = Vec::new();
        for (i, (_, a)) in x.blocks.iter().enumerate() {
            let j = (0..y.blocks.len())
                .find(|&j| !used[j] && y.blocks[j].1.canonical() == a.canonical())
                .expect("every block has a rescaled copy");
            used[j] = true;
            pairs.push((i, j, x.ring().one()));
        }
        let f = self.block_map(&x, &y, 0, true, &pairs);
        let map = ChainMap::from_fn(&x.complex, &y.complex, f).expect("block maps are chain maps");
        (x, y, map)
    }

    /// An idempotent `π_A - s π_B` on an acyclic Koszul object `A ⊕ B`
    /// with a block map `s : B -> A`.
    pub fn idempotent(&mut self) -> ChainMap {
        let x = self.koszul(Shape::Acyclic);
        let keep: Vec<bool> = x.blocks.iter().map(|_| self.coin(0.5)).collect();
        let mut pairs = Vec::new();
        for i in 0..x.blocks.len() {
            for j in 0..x.blocks.len() {
                if !keep[i] && keep[j] && self.coin(0.5) {
                    let s = self.small();
                    pairs.push((i, j, s));
                }
            }
        }
        let s = self.block_map(&x, &x, 0, true, &pairs);
        let ring = x.ring();
        ChainMap::from_fn(&x.complex, &x.complex, |n| {
            let mut pi = Matrix::zeros(ring, x.rank(n), x.rank(n));
            for (slot, (b, _)) in x.basis(n).iter().enumerate() {
                if keep[*b] {
                    pi.set(slot, slot, ring.one());
                }
            }
            let twisted = &(&x.p(n) * &pi) * &x.p_inv(n);
            &twisted - &s(n)
        })
        .expect("idempotent chain map")
    }

    /// An object with finitely presented entries: a free Koszul object
    /// `[F_1 -d-> F_0]` with relations `R_1` on `F_1`, `d R_1` on `F_0`,
    /// and extra torsion generators in degree 0, then rebased.
    pub fn presented_koszul(&mut self) -> Result<PresentedKoszul> {
        let ring = self.ring();
        let base = self.koszul(Shape::Torsion).koszul();
        let g = base.rank();
        let k1 = self.below(3);
        let r1 = self.matrix(g, k1);
        let t = self.below(3);
        let orders: Vec<DomainElement> = (0..t).map(|_| self.non_unit()).collect();
        let (dr1, diag) = (base.d() * &r1, Matrix::diagonal(ring, &orders));
        let r0 = Matrix::blocks(ring, &[g, t], &[k1, t], &[vec![Some(&dr1), None], vec![None, Some(&diag)]]);
        let d = Matrix::vstack(ring, g, &[base.d(), &Matrix::zeros(ring, t, g)]);
        let (p1, p1_inv) = self.unimodular(g);
        let (p0, _) = self.unimodular(g + t);
        PresentedKoszul::new(
            PresentedModule::new(&p1 * &r1),
            PresentedModule::new(&p0 * &r0),
            &(&p0 * &d) * &p1_inv,
        )
    }

    /// A presented module on `1..=max_gens` generators.
    pub fn presented_module(&mut self, max_gens: usize) -> PresentedModule {
        let g = 1 + self.below(max_gens);
        let k = self.below(g + 1);
        let rel = self.matrix(g, k);
        PresentedModule::new(rel)
    }

    /// A morphism of short exact sequences: `X = <S> ⊆ Y`, a random
    /// `b : Y -> Y'`, and `X' = <b S, E> ⊆ Y'`.
    pub fn ses_morphism(&mut self) -> Result<SesMorphism> {
        let ring = self.ring();
        let y = self.presented_module(3);
        let s_cols = self.below(3);
        let s = self.matrix(y.gens(), s_cols);
        let i = ModuleHom::new(PresentedModule::free(ring, s_cols), y.clone(), s.clone())?.image();
        let p = i.cokernel();

        let y2 = self.presented_module(3);
        let mut b = Matrix::zeros(ring, y2.gens(), y.gens());
        for gen in hom_generators(&y, &y2) {
            let c = self.small();
            b = &b + &gen.scale(&c);
        }
        let b = ModuleHom::new(y.clone(), y2.clone(), b)?;
        let e_cols = self.below(2);
        let e = self.matrix(y2.gens(), e_cols);
        let s2 = Matrix::hstack(ring, y2.gens(), &[&(&b.matrix * &s), &e]);
        let i2 = ModuleHom::new(PresentedModule::free(ring, s_cols + e_cols), y2, s2)?.image();
        let p2 = i2.cokernel();
        let a_mat = Matrix::identity(ring, s_cols + e_cols).columns(0..s_cols);
        let a = ModuleHom::new(i.source.clone(), i2.source.clone(), a_mat)?;
        let c = ModuleHom::new(p.target.clone(), p2.target.clone(), b.matrix.clone())?;
        Ok(SesMorphism { i, p, i2, p2, a, b, c })
    }

    /// The 3x3 diagram of two random submodules of a presented module.
    pub fn three_by_three(&mut self) -> Result<ThreeByThree> {
        let m = self.presented_module(4);
        let (a, b) = (self.below(4), self.below(4));
        let a_gens = self.matrix(m.gens(), a);
        let b_gens = self.matrix(m.gens(), b);
        ThreeByThree::from_submodules(&m, &a_gens, &b_gens)
    }
}

fn swap(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.swap(i, j);
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use koszulkit_core::linalg::inverse;

    fn gen(ring: Ring, seed: u64) -> Gen {
        Gen::new(GenParams::new(ring, 1), seed)
    }

    fn rings() -> [Ring; 2] {
        [Ring::Integers, Ring::poly(2).unwrap()]
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gen(Ring::Integers, 7).blocked(0, 3, Shape::Torsion).complex;
        let b = gen(Ring::Integers, 7).blocked(0, 3, Shape::Torsion).complex;
        assert_eq!(a, b);
    }

    #[test]
    fn unimodular_pairs_are_inverse() {
        for ring in rings() {
            let mut g = gen(ring, 3);
            for n in 0..6 {
                let (m, inv) = g.unimodular(n);
                assert!((&m * &inv).is_identity());
                assert_eq!(inverse(&m), Some(inv));
            }
        }
    }

    #[test]
    fn block_bookkeeping_matches_homology() {
        for ring in rings() {
            let mut g = gen(ring, 11);
            for _ in 0..20 {
                let (lo, hi) = g.window();
                let x = g.blocked(lo, hi, Shape::Free);
                for n in lo..=hi {
                    assert_eq!(x.complex.homology(n), x.expected_homology(n));
                }
            }
        }
    }

    #[test]
    fn all_unit_blocks_are_acyclic() {
        let mut g = gen(Ring::Integers, 5);
        for _ in 0..10 {
            assert!(g.koszul(Shape::Acyclic).koszul().is_acyclic());
        }
    }

    #[test]
    fn generated_maps_and_extensions_are_valid() {
        for ring in rings() {
            let mut g = gen(ring, 13);
            for _ in 0..10 {
                let (lo, hi) = g.window();
                let (x, y) = g.pair(lo, hi, Shape::Torsion, Shape::Free);
                g.chain_map(&x, &y);
                let e = g.extension(x, y);
                assert!(koszulkit_core::complex::is_degreewise_short_exact(&e.mono, &e.epi));
                let (_, _, f) = g.qis_pair();
                assert!(f.is_quasi_iso());
                let e = g.idempotent();
                assert_eq!(e.after(&e).unwrap(), e);
                g.presented_koszul().unwrap();
                g.ses_morphism().unwrap();
                g.three_by_three().unwrap();
            }
        }
    }
}
