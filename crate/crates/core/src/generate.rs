//! Seeded random instances with recorded ground truth.
//!
//! Every generator draws from a ChaCha8 stream selected by `(seed, stream)`, so a trial is
//! reproducible from its seed and index alone.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::{change_basis, direct_sum, direct_sum_map, ChainMap, SignedComplex};
use crate::filtered::{filtered_cone, filtered_inclusion, tensor_filtered, FilteredComplex, FilteredMap};
use crate::linalg::IntMatrix;
use crate::poincare::{form_to_complex, round_example, SymmetricComplex, UnimodularForm};
use crate::sign::SignK1;

/// Size limits shared by the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_rank: usize,
    pub max_degree: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_rank: 4, max_degree: 4 }
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
    pub bounds: Bounds,
}

/// A complex with the torsion predicted by its construction.
#[derive(Clone, Debug)]
pub struct Predicted {
    pub complex: SignedComplex,
    pub tau: SignK1,
}

impl Gen {
    pub fn new(seed: u64, stream: u64, bounds: Bounds) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Gen { rng, bounds }
    }

    pub fn below(&mut self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            self.rng.gen_range(0..n)
        }
    }

    pub fn between(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn sign(&mut self) -> SignK1 {
        SignK1::from_bool(self.coin())
    }

    pub fn seed_vec(&mut self, n: usize) -> Vec<i64> {
        (0..n).map(|_| self.between(-2, 2)).collect()
    }

    /// A product of elementary operations; returns the matrix and the parity of its determinant.
    pub fn unimodular(&mut self, n: usize) -> (IntMatrix, SignK1) {
        let mut m = IntMatrix::identity(n);
        let mut det = SignK1::ZERO;
        if n == 0 {
            return (m, det);
        }
        let steps = 2 * n + self.below(n + 2);
        for _ in 0..steps {
            let i = self.below(n);
            match self.below(6) {
                0 => {
                    m.negate_row(i);
                    det += SignK1::ONE;
                }
                1 if n > 1 => {
                    let j = (i + 1 + self.below(n - 1)) % n;
                    m.swap_rows(i, j);
                    det += SignK1::ONE;
                }
                _ if n > 1 => {
                    let j = (i + 1 + self.below(n - 1)) % n;
                    let c = BigInt::from(self.between(-2, 2));
                    m.add_row_multiple(i, j, &c);
                }
                _ => {}
            }
        }
        (m, det)
    }

    /// A small integer matrix with entries in [−2, 2].
    pub fn matrix(&mut self, rows: usize, cols: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.between(-2, 2).into());
            }
        }
        m
    }

    /// GᵀDG with D a block sum of ⟨±1⟩ and H.
    pub fn form(&mut self, max_rank: usize) -> UnimodularForm {
        let target = 1 + self.below(max_rank.max(1));
        let mut h = UnimodularForm::diagonal(&[]).expect("empty form");
        while h.rank() < target {
            let piece = match self.below(3) {
                0 => UnimodularForm::unit(),
                1 => UnimodularForm::unit().negate(),
                _ if h.rank() + 2 <= target => UnimodularForm::hyperbolic(),
                _ => UnimodularForm::unit(),
            };
            h = h.orthogonal_sum(&piece);
        }
        let (g, _) = self.unimodular(h.rank());
        h.congruent(&g).expect("congruence preserves unimodularity")
    }

    /// A sum of copies of H, −H, E8 and −E8 under a random congruence.
    pub fn even_form(&mut self, max_blocks: usize) -> UnimodularForm {
        let blocks = 1 + self.below(max_blocks.max(1));
        let mut h = UnimodularForm::diagonal(&[]).expect("empty form");
        for _ in 0..blocks {
            let piece = match self.below(4) {
                0 => UnimodularForm::hyperbolic(),
                1 => UnimodularForm::hyperbolic().negate(),
                2 => UnimodularForm::e8(),
                _ => UnimodularForm::e8().negate(),
            };
            h = h.orthogonal_sum(&piece);
        }
        let (g, _) = self.unimodular(h.rank());
        h.congruent(&g).expect("congruence preserves unimodularity")
    }

    /// A contractible complex X_r ⊕ Y_r with d = A_r : Y_r → X_{r−1}, conjugated by random
    /// unimodular P_r. The torsion is predicted from det A_r, det P_r and the parity of the
    /// block permutation inside d + Γ, without running any contraction.
    pub fn contractible(&mut self, top: usize, max_rank: usize) -> Predicted {
        let top = top.max(1);
        // m[r] = size of A_r : Y_r → X_{r−1}, for r = 1..=top
        let m: Vec<usize> = (0..=top).map(|r| if r == 0 { 0 } else { self.below(max_rank.max(1) + 1) }).collect();
        let x = |r: usize| if r < top { m[r + 1] } else { 0 };
        let y = |r: usize| m[r];
        let mut tau = SignK1::ZERO;
        let mut a = vec![IntMatrix::zeros(0, 0)];
        for &size in &m[1..=top] {
            let (ar, det) = self.unimodular(size);
            tau += det;
            a.push(ar);
        }
        let ranks: Vec<usize> = (0..=top).map(|r| x(r) + y(r)).collect();
        let diffs = (1..=top)
            .map(|r| {
                let mut d = IntMatrix::zeros(ranks[r - 1], ranks[r]);
                d.set_block(0, x(r), &a[r]);
                d
            })
            .collect();
        tau += block_permutation_parity(top, &x, &y);
        let eta = self.sign();
        tau += eta;
        let base = SignedComplex::new(ranks.clone(), diffs, eta).expect("block complex");
        let mut ps = Vec::new();
        for &n in &ranks {
            let (p, det) = self.unimodular(n);
            tau += det;
            ps.push(p);
        }
        let (complex, _) = change_basis(&base, &ps).expect("unimodular basis change");
        Predicted { complex, tau }
    }

    /// A complex with free cells, elementary pairs ±1 and occasional ℤ/2 pairs, under a random
    /// basis change.
    pub fn complex(&mut self, top: usize, max_rank: usize, torsion_pairs: bool) -> SignedComplex {
        let top = top.max(1);
        let free: Vec<usize> = (0..=top).map(|_| self.below(max_rank.min(2) + 1)).collect();
        let pairs: Vec<usize> = (0..top).map(|_| self.below(max_rank.min(2) + 1)).collect();
        let twos: Vec<usize> = (0..top).map(|_| if torsion_pairs && self.below(4) == 0 { 1 } else { 0 }).collect();
        let mut c = SignedComplex::free(free, self.sign());
        for r in 0..top {
            for _ in 0..pairs[r] {
                let u = if self.coin() { 1 } else { -1 };
                c = direct_sum(&c, &SignedComplex::elementary(r, IntMatrix::from_rows(&[[u]])).unwrap());
            }
            for _ in 0..twos[r] {
                c = direct_sum(&c, &SignedComplex::elementary(r, IntMatrix::from_rows(&[[2]])).unwrap());
            }
        }
        let c = c.padded(top);
        self.basis_change(&c).0
    }

    pub fn basis_change(&mut self, c: &SignedComplex) -> (SignedComplex, ChainMap, SignK1) {
        let mut det = SignK1::ZERO;
        let ps: Vec<IntMatrix> = c
            .ranks()
            .iter()
            .map(|&n| {
                let (p, s) = self.unimodular(n);
                det += s;
                p
            })
            .collect();
        let (c2, iso) = change_basis(c, &ps).expect("unimodular basis change");
        (c2, iso, det)
    }

    /// A chain equivalence out of C: the inclusion C → C ⊕ E for a contractible E followed by
    /// a basis change of the sum.
    pub fn equivalence_from(&mut self, c: &SignedComplex) -> ChainMap {
        let e = self.contractible(c.top().max(1), 2).complex;
        let sum = direct_sum(c, &e);
        let top = sum.top() as i64;
        let inc = (0..=top)
            .map(|r| {
                let mut m = IntMatrix::zeros(sum.rank(r), c.rank(r));
                m.set_block(0, 0, &IntMatrix::identity(c.rank(r)));
                m
            })
            .collect();
        let inc = ChainMap::new(c.clone(), sum.clone(), inc).expect("inclusion is a chain map");
        let (sum2, iso, _) = self.basis_change(&sum);
        // iso : sum2 → sum, so go through its inverse, which is again a basis change
        let inv: Vec<IntMatrix> =
            iso.mats().iter().map(|m| crate::linalg::unimodular_inverse(m).expect("unimodular")).collect();
        let back = ChainMap::new(sum, sum2, inv).expect("inverse basis change");
        inc.then(&back).expect("composable")
    }

    /// f + dg₀ + g₀d for a random g₀.
    pub fn homotopic(&mut self, f: &ChainMap) -> ChainMap {
        let (c, d) = (f.source(), f.target());
        let top = c.top().max(d.top()) as i64;
        let g: Vec<IntMatrix> = (-1..=top).map(|r| self.matrix(d.rank(r + 1), c.rank(r))).collect();
        let at = |r: i64| &g[(r + 1) as usize];
        let mats = (0..=top).map(|r| &(&f.mat(r) + &(&d.d(r + 1) * at(r))) + &(at(r - 1) * &c.d(r))).collect();
        ChainMap::new(c.clone(), d.clone(), mats).expect("homotopic map is a chain map")
    }

    pub fn sum_of_maps(&mut self, f: &ChainMap, g: &ChainMap) -> ChainMap {
        direct_sum_map(f, g).expect("sum of maps")
    }

    /// Forms of rank ≤ max_rank in dimension 4k, padded and basis-changed at random,
    /// sometimes summed with the round example.
    pub fn symmetric(&mut self, max_rank: usize) -> SymmetricComplex {
        let k = self.below(3);
        let mut x = form_to_complex(&self.form(max_rank), k);
        let n = x.dim();
        if k == 1 && self.below(4) == 0 {
            x = x.direct_sum(&round_example()).expect("same dimension");
        }
        if n >= 1 && self.coin() {
            let e = self.contractible(n.min(2), 2).complex;
            if e.top() <= n {
                x = x.pad_with(&e).expect("contractible padding");
            }
        }
        let ps: Vec<IntMatrix> = x.complex().ranks().iter().map(|&m| self.unimodular(m).0).collect();
        x = x.change_basis(&ps).expect("basis change");
        x.with_eta(self.sign()).expect("sign change")
    }

    /// A k-filtered complex built from cells at (R, p) and pairs (R+1, p₁) → (R, p₂), p₂ ≤ p₁,
    /// under a random filtered basis change. `max_drop` bounds p₁ − p₂; `free` enables cells.
    pub fn filtered(&mut self, k: usize, top: usize, max_block: usize, max_drop: usize, free: bool) -> FilteredComplex {
        let mut cells: Vec<(usize, usize)> = Vec::new();
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        let budget = 1 + self.below(max_block.max(1) * (k + 1));
        for _ in 0..budget {
            if free && self.below(3) == 0 {
                let r = self.below(top + 1);
                let p = self.below(k.min(r) + 1);
                cells.push((r, p));
            } else {
                let r = self.below(top.max(1));
                let p1 = self.below(k.min(r + 1) + 1);
                let drop = self.below(max_drop.min(p1) + 1).max(p1.saturating_sub(r));
                let u = if self.coin() { 1 } else { -1 };
                cells.push((r + 1, p1));
                cells.push((r, p1 - drop));
                edges.push((cells.len() - 2, cells.len() - 1, u));
            }
        }
        self.assemble_cells(k, top, &cells, &edges, max_block)
    }

    fn assemble_cells(
        &mut self,
        k: usize,
        top: usize,
        cells: &[(usize, usize)],
        edges: &[(usize, usize, i64)],
        max_block: usize,
    ) -> FilteredComplex {
        let mut blocks = vec![vec![0usize; k + 1]; top + 1];
        let mut index = vec![0usize; cells.len()];
        let mut keep = vec![true; cells.len()];
        for (i, &(r, p)) in cells.iter().enumerate() {
            if blocks[r][p] >= max_block.max(1) {
                keep[i] = false;
            }
            if keep[i] {
                blocks[r][p] += 1;
            }
        }
        for &(a, b, _) in edges {
            if !keep[a] || !keep[b] {
                if keep[a] {
                    blocks[cells[a].0][cells[a].1] -= 1;
                }
                if keep[b] {
                    blocks[cells[b].0][cells[b].1] -= 1;
                }
                keep[a] = false;
                keep[b] = false;
            }
        }
        let mut fill = blocks.iter().map(|row| vec![0usize; row.len()]).collect::<Vec<_>>();
        for (i, &(r, p)) in cells.iter().enumerate() {
            if keep[i] {
                let off: usize = blocks[r][..p].iter().sum();
                index[i] = off + fill[r][p];
                fill[r][p] += 1;
            }
        }
        let total = |r: usize| -> usize { blocks[r].iter().sum() };
        let mut diffs: Vec<IntMatrix> = (1..=top).map(|r| IntMatrix::zeros(total(r - 1), total(r))).collect();
        for &(a, b, u) in edges {
            if keep[a] && keep[b] {
                let r = cells[a].0;
                diffs[r - 1].set(index[b], index[a], u.into());
            }
        }
        let signs = (0..=k).map(|_| self.sign()).collect();
        let f = FilteredComplex::new(k, blocks, diffs, signs, self.sign()).expect("cell complex is filtered");
        self.filtered_basis_change(&f).0
    }

    /// A random filtration-preserving basis change P : F′ → F, with Σ_R τ(P_R) recorded.
    pub fn filtered_basis_change(&mut self, f: &FilteredComplex) -> (FilteredComplex, FilteredMap, SignK1) {
        let mut det = SignK1::ZERO;
        let k = f.k() as i64;
        let ps: Vec<IntMatrix> = (0..=f.top() as i64)
            .map(|r| {
                let n = f.total_rank(r);
                let mut m = IntMatrix::zeros(n, n);
                for p in 0..=k {
                    let b = f.block_rank(r, p);
                    if b == 0 {
                        continue;
                    }
                    let (u, s) = self.unimodular(b);
                    det += s;
                    m.set_block(f.offset(r, p), f.offset(r, p), &u);
                    for q in 0..p {
                        let bq = f.block_rank(r, q);
                        if bq > 0 && self.coin() {
                            let x = self.matrix(bq, b);
                            m.set_block(f.offset(r, q), f.offset(r, p), &x);
                        }
                    }
                }
                m
            })
            .collect();
        let (f2, iso) = f.change_basis(&ps).expect("filtered basis change");
        (f2, iso, det)
    }

    /// A filtered contractible complex: the cone of a filtered identity, a tensor with a
    /// contractible complex, or a sum of pairs dropping filtration by at most one.
    pub fn filtered_contractible(&mut self, max_k: usize, max_block: usize) -> FilteredComplex {
        let top = self.bounds.max_degree.clamp(1, 4);
        match self.below(3) {
            0 => {
                let k = self.below(max_k.max(1));
                let f = self.filtered(k, top.min(3), (max_block / 2).max(1), 2, true);
                let cone = filtered_cone(&FilteredMap::identity(&f));
                self.filtered_basis_change(&cone).0
            }
            1 => {
                let kc = 1 + self.below(max_k.max(1));
                let c = self.contractible(kc, 1).complex;
                let top_d = self.below(2) + 1;
                let d = self.complex(top_d, 1, false);
                tensor_filtered(&c, &d)
            }
            _ => {
                let k = 1 + self.below(max_k.max(1));
                self.filtered(k, top, max_block, 1, false)
            }
        }
    }

    /// A filtered chain equivalence together with its torsion when the construction records it.
    pub fn filtered_equivalence(&mut self, max_k: usize, max_block: usize) -> (FilteredMap, Option<SignK1>) {
        let k = self.below(max_k + 1);
        let top = self.bounds.max_degree.clamp(1, 3);
        let f = self.filtered(k, top, max_block.min(2), 2, true);
        match self.below(3) {
            0 => {
                let (_, iso, det) = self.filtered_basis_change(&f);
                (iso, Some(det))
            }
            1 => {
                let e = self.filtered_contractible_k(k, top);
                (filtered_inclusion(&f, &e).expect("same k"), None)
            }
            _ => {
                let e = self.filtered_contractible_k(k, top);
                let inc = filtered_inclusion(&f, &e).expect("same k");
                let (_, iso, _) = self.filtered_basis_change(inc.target());
                let (_, iso0, _) = self.filtered_basis_change(&f);
                (iso0.then(&inc).expect("composable").then(&self.invert(&iso)).expect("composable"), None)
            }
        }
    }

    fn filtered_contractible_k(&mut self, k: usize, top: usize) -> FilteredComplex {
        if k >= 1 && self.coin() {
            let f = self.filtered(k - 1, top.min(2), 1, 1, true);
            filtered_cone(&FilteredMap::identity(&f))
        } else {
            self.filtered(k, top, 2, 1.min(k), false)
        }
    }

    fn invert(&mut self, iso: &FilteredMap) -> FilteredMap {
        let inv = iso.mats().iter().map(|m| crate::linalg::unimodular_inverse(m).expect("unimodular")).collect();
        FilteredMap::new(iso.target().clone(), iso.source().clone(), inv).expect("inverse of a filtered iso")
    }

    /// An n-admissible k-filtered complex: cells and pairs inside 0 ≤ R − p ≤ n, with
    /// mirrored cells making every piece's homology symmetric under t ↦ n − t.
    pub fn admissible(&mut self, k: usize, n: usize, max_block: usize) -> FilteredComplex {
        let mut cells: Vec<(usize, usize)> = Vec::new();
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        let mirror = |cells: &mut Vec<(usize, usize)>, p: usize, t: usize| {
            if 2 * t != n {
                cells.push((p + n - t, p));
            }
        };
        let budget = 1 + self.below(max_block.max(1) * (k + 1));
        for _ in 0..budget {
            if self.below(3) == 0 || n == 0 {
                let p = self.below(k + 1);
                let t = self.below(n + 1);
                cells.push((p + t, p));
                mirror(&mut cells, p, t);
            } else {
                let p1 = self.below(k + 1);
                let t1 = 1 + self.below(n);
                let r = p1 + t1 - 1;
                let lo = r.saturating_sub(n);
                let p2 = lo + self.below(p1.min(r) - lo + 1);
                let u = if self.coin() { 1 } else { -1 };
                cells.push((r + 1, p1));
                cells.push((r, p2));
                edges.push((cells.len() - 2, cells.len() - 1, u));
                if p2 != p1 {
                    mirror(&mut cells, p1, t1);
                    mirror(&mut cells, p2, r - p2);
                }
            }
        }
        self.assemble_cells(k, n + k, &cells, &edges, usize::MAX)
    }
}

/// Parity of the block permutation in d + Γ for the X_r ⊕ Y_r complex: column X_r (odd r)
/// lands in row Y_{r+1}, column Y_r lands in row X_{r−1}.
fn block_permutation_parity(top: usize, x: &dyn Fn(usize) -> usize, y: &dyn Fn(usize) -> usize) -> SignK1 {
    // row blocks in order: for even r ascending, X_r then Y_r
    let mut row_pos: Vec<(usize, bool)> = Vec::new();
    for r in (0..=top + 1).filter(|r| r % 2 == 0) {
        row_pos.push((r, true));
        row_pos.push((r, false));
    }
    let row_index = |r: usize, is_x: bool| row_pos.iter().position(|&b| b == (r, is_x)).expect("row block");
    let size = |r: usize, is_x: bool| if r > top { 0 } else if is_x { x(r) } else { y(r) };
    // column blocks in order with their target rows
    let mut cols: Vec<(usize, usize)> = Vec::new();
    for r in (0..=top).filter(|r| r % 2 == 1) {
        cols.push((row_index(r + 1, false), size(r, true)));
        cols.push((row_index(r - 1, true), size(r, false)));
    }
    let mut parity = 0usize;
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            if cols[i].0 > cols[j].0 {
                parity += cols[i].1 * cols[j].1;
            }
        }
    }
    SignK1::from_int(parity as i64)
}
