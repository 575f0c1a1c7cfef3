//! Exact linear algebra over a prime field F_p.
//!
//! Vectors are rows and matrices act from the right: a matrix `A` with
//! `rows × cols` entries is the linear map `F_p^rows -> F_p^cols`,
//! `x ↦ x·A`. Composition "first A then B" is the product `A·B`.
//!
//! Elimination runs on word-packed rows when `p = 2` and on byte rows
//! otherwise. Subspaces are stored by their reduced row-echelon basis, so
//! two equal subspaces always carry identical data.

use crate::error::{Error, Result};
use serde::Serialize;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let mut r = 1u64;
    let mut b = (a % p) as u64;
    let mut e = p - 2;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u32
}

#[inline]
fn neg(a: u8, p: u32) -> u8 {
    if a == 0 {
        0
    } else {
        (p - a as u32) as u8
    }
}

/// Dense matrix over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FpMatrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u8>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors; entries are reduced mod p.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {} but {cols} columns were declared",
                    r.len()
                )));
            }
            entries.extend(r.iter().map(|&e| (e as u32 % p) as u8));
        }
        Ok(Self {
            p,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.entries[r * self.cols + c] = v;
    }

    /// Adds `v` to entry `(r, c)`.
    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: u8) {
        let i = r * self.cols + c;
        self.entries[i] = ((self.entries[i] as u32 + v as u32) % self.p) as u8;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.entries[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.entries[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (c, &b) in orow.iter().enumerate() {
                    acc[c] += a * b as u64;
                }
            }
            for c in 0..other.cols {
                out.entries[r * other.cols + c] = (acc[c] % p) as u8;
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.rows);
        let p = self.p as u64;
        let mut acc = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, &b) in self.row(k).iter().enumerate() {
                acc[c] += a as u64 * b as u64;
            }
        }
        acc.into_iter().map(|x| (x % p) as u8).collect()
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.p, self.cols, self.row_vectors()).rank()
    }

    /// Copies `block` into this matrix with its top-left corner at `(r0, c0)`,
    /// scaled by `sign` (which is `1` or `p - 1`) and added to existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &FpMatrix, sign: u8) {
        let p = self.p;
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = block.get(r, c);
                if v != 0 {
                    self.add_to(r0 + r, c0 + c, ((v as u32 * sign as u32) % p) as u8);
                }
            }
        }
    }
}

/// Reduced row-echelon form of a list of row vectors.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u32,
    width: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u32, width: usize) -> Self {
        Self {
            p,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(p: u32, width: usize, rows: Vec<Vec<u8>>) -> Self {
        let (rows, pivots) = if p == 2 {
            rref_gf2(width, rows)
        } else {
            rref_fp(p, width, rows)
        };
        Self {
            p,
            width,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis in place; returns true if it became zero.
    pub fn reduce(&self, v: &mut [u8]) -> bool {
        let p = self.p;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let f = neg(c, p) as u32;
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = ((*x as u32 + f * y as u32) % p) as u8;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Inserts a vector, keeping the basis fully reduced. Returns true when
    /// the rank grew.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        if self.reduce(&mut v) {
            return false;
        }
        let p = self.p;
        let pc = v.iter().position(|&x| x != 0).unwrap();
        let s = inv_mod(v[pc] as u32, p);
        for x in v.iter_mut() {
            *x = ((*x as u32 * s) % p) as u8;
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            let f = neg(c, p) as u32;
            for (x, &y) in row.iter_mut().zip(&v) {
                if y != 0 {
                    *x = ((*x as u32 + f * y as u32) % p) as u8;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, v);
        true
    }

    /// Basis of `{x : R x^T = 0}` for the stored rows `R`.
    pub fn null_space(&self) -> Vec<Vec<u8>> {
        let p = self.p;
        let mut is_pivot = vec![false; self.width];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.width).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.width];
            v[f] = 1;
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                v[pc] = neg(row[f], p);
            }
            out.push(v);
        }
        out
    }
}

fn rref_fp(p: u32, width: usize, mut rows: Vec<Vec<u8>>) -> (Vec<Vec<u8>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let s = inv_mod(rows[r][col] as u32, p);
        if s != 1 {
            for x in rows[r].iter_mut() {
                *x = ((*x as u32 * s) % p) as u8;
            }
        }
        let prow = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let c = row[col];
            if c == 0 {
                continue;
            }
            let f = neg(c, p) as u32;
            for (x, &y) in row.iter_mut().zip(&prow).skip(col) {
                if y != 0 {
                    *x = ((*x as u32 + f * y as u32) % p) as u8;
                }
            }
        }
        rows[r] = prow;
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn rref_gf2(width: usize, rows: Vec<Vec<u8>>) -> (Vec<Vec<u8>>, Vec<usize>) {
    let words = width.div_ceil(64);
    let mut packed: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut w = vec![0u64; words];
            for (c, &x) in row.iter().enumerate() {
                if x & 1 == 1 {
                    w[c / 64] |= 1 << (c % 64);
                }
            }
            w
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..width {
        if r == packed.len() {
            break;
        }
        let (wi, bit) = (col / 64, 1u64 << (col % 64));
        let Some(piv) = (r..packed.len()).find(|&i| packed[i][wi] & bit != 0) else {
            continue;
        };
        packed.swap(r, piv);
        let prow = std::mem::take(&mut packed[r]);
        for (i, row) in packed.iter_mut().enumerate() {
            if i != r && row[wi] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&prow).skip(wi) {
                    *x ^= *y;
                }
            }
        }
        packed[r] = prow;
        pivots.push(col);
        r += 1;
    }
    packed.truncate(r);
    let rows = packed
        .into_iter()
        .map(|w| {
            (0..width)
                .map(|c| ((w[c / 64] >> (c % 64)) & 1) as u8)
                .collect()
        })
        .collect();
    (rows, pivots)
}

/// A linear subspace of F_p^n held by its canonical reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    pub p: u32,
    pub ambient_dim: usize,
    pub basis: Vec<Vec<u8>>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Self {
        Self {
            p,
            ambient_dim: n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, n: usize) -> Self {
        Self::span(p, n, FpMatrix::identity(p, n).row_vectors())
    }

    pub fn span(p: u32, n: usize, vectors: Vec<Vec<u8>>) -> Self {
        let e = Echelon::from_rows(p, n, vectors);
        Self::from_echelon(e)
    }

    fn from_echelon(e: Echelon) -> Self {
        Self {
            p: e.p,
            ambient_dim: e.width,
            basis: e.rows,
            pivots: e.pivots,
        }
    }

    pub fn echelon(&self) -> Echelon {
        Echelon {
            p: self.p,
            width: self.ambient_dim,
            rows: self.basis.clone(),
            pivots: self.pivots.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.echelon().reduce(&mut w)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut e = self.echelon();
        for b in &other.basis {
            e.insert(b.clone());
        }
        Self::from_echelon(e)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Subspace::zero(self.p, self.ambient_dim);
        }
        // a·B_U - b·B_V = 0  ⇔  (a, b) in the left kernel of [B_U; -B_V].
        let mut stacked: Vec<Vec<u8>> = self.basis.clone();
        stacked.extend(
            other
                .basis
                .iter()
                .map(|r| r.iter().map(|&x| neg(x, self.p)).collect()),
        );
        let m = FpMatrix::from_rows(self.p, self.ambient_dim, &stacked).unwrap();
        let ker = left_kernel(&m);
        let vs = ker
            .basis
            .iter()
            .map(|ab| {
                let a = &ab[..k];
                let bu = FpMatrix::from_rows(self.p, self.ambient_dim, &self.basis).unwrap();
                bu.apply(a)
            })
            .collect();
        Subspace::span(self.p, self.ambient_dim, vs)
    }

    /// Image of the subspace under `x ↦ x·A`.
    pub fn image_under(&self, a: &FpMatrix) -> Subspace {
        Subspace::span(a.p, a.cols, self.basis.iter().map(|b| a.apply(b)).collect())
    }
}

/// `{x : x·A = 0}`.
pub fn left_kernel(a: &FpMatrix) -> Subspace {
    let e = Echelon::from_rows(a.p, a.rows, a.transpose().row_vectors());
    Subspace::span(a.p, a.rows, e.null_space())
}

/// `{u : A·u^T = 0}`, i.e. the solutions of the equations stored as rows.
pub fn right_kernel(a: &FpMatrix) -> Subspace {
    let e = Echelon::from_rows(a.p, a.cols, a.row_vectors());
    Subspace::span(a.p, a.cols, e.null_space())
}

#[derive(Debug, Clone)]
pub struct RankKernelImage {
    pub rank: usize,
    pub kernel: Subspace,
    pub image: Subspace,
}

/// Rank, left kernel `{x : xA = 0}` and row space of `A`.
pub fn rank_kernel_image(a: &FpMatrix) -> RankKernelImage {
    let image = Subspace::span(a.p, a.cols, a.row_vectors());
    let kernel = left_kernel(a);
    let rank = image.dim();
    assert_eq!(rank + kernel.dim(), a.rows, "rank-nullity failed");
    RankKernelImage {
        rank,
        kernel,
        image,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientDim {
    pub dim: usize,
    /// Vectors of `W` spanning a complement of `U + V` inside `W`.
    pub complement: Vec<Vec<u8>>,
}

/// `dim W - dim (U + V)` for `U, V ⊆ W`.
pub fn quotient_dim(w: &Subspace, u: &Subspace, v: &Subspace) -> Result<QuotientDim> {
    if u.ambient_dim != w.ambient_dim || v.ambient_dim != w.ambient_dim || u.p != w.p || v.p != w.p
    {
        return Err(Error::DimensionMismatch(
            "quotient_dim needs subspaces of one ambient space".into(),
        ));
    }
    if !u.is_subspace_of(w) {
        return Err(Error::SubspaceNotContained(
            "U is not contained in W".into(),
        ));
    }
    if !v.is_subspace_of(w) {
        return Err(Error::SubspaceNotContained(
            "V is not contained in W".into(),
        ));
    }
    let mut e = u.sum(v).echelon();
    let mut complement = Vec::new();
    for b in &w.basis {
        if e.insert(b.clone()) {
            complement.push(b.clone());
        }
    }
    Ok(QuotientDim {
        dim: complement.len(),
        complement,
    })
}

/// Coordinates with respect to `span(reps)` modulo a subspace `base`, for
/// vectors of `base ⊕ span(reps)`.
#[derive(Debug, Clone)]
pub struct QuotientCoords {
    p: u32,
    n: usize,
    k: usize,
    // Rows are [vector | tag] with pivots restricted to the first n columns.
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl QuotientCoords {
    pub fn new(base: &Subspace, reps: &[Vec<u8>]) -> Result<Self> {
        let (p, n, k) = (base.p, base.ambient_dim, reps.len());
        let mut qc = Self {
            p,
            n,
            k,
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        for b in &base.basis {
            let mut r = b.clone();
            r.resize(n + k, 0);
            qc.push(r)?;
        }
        for (i, rep) in reps.iter().enumerate() {
            let mut r = rep.clone();
            r.resize(n + k, 0);
            r[n + i] = 1;
            qc.push(r)?;
        }
        Ok(qc)
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    fn reduce_row(&self, v: &mut [u8]) {
        let p = self.p;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let f = neg(c, p) as u32;
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = ((*x as u32 + f * y as u32) % p) as u8;
                }
            }
        }
    }

    fn push(&mut self, mut r: Vec<u8>) -> Result<()> {
        self.reduce_row(&mut r);
        let Some(pc) = r[..self.n].iter().position(|&x| x != 0) else {
            return Err(Error::InvariantViolated(
                "representatives are dependent modulo the base subspace".into(),
            ));
        };
        let s = inv_mod(r[pc] as u32, self.p);
        for x in r.iter_mut() {
            *x = ((*x as u32 * s) % self.p) as u8;
        }
        self.rows.push(r);
        self.pivots.push(pc);
        Ok(())
    }

    /// Coefficients `c` with `v ≡ Σ c_i reps_i` modulo the base, or `None` if
    /// `v` is outside `base ⊕ span(reps)`.
    pub fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        let mut r = v.to_vec();
        r.resize(self.n + self.k, 0);
        self.reduce_row(&mut r);
        if r[..self.n].iter().any(|&x| x != 0) {
            return None;
        }
        Some(r[self.n..].iter().map(|&x| neg(x, self.p)).collect())
    }
}

/// `(h0, h1)` of a graph viewed as a 1-dimensional CW complex. Loops and
/// parallel edges each contribute a 1-cell.
pub fn graph_h_dims(vertices: usize, edges: &[(usize, usize)], p: u32) -> Result<(usize, usize)> {
    debug_assert!(is_prime(p));
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = vertices;
    for (i, &(a, b)) in edges.iter().enumerate() {
        for end in [a, b] {
            if end >= vertices {
                return Err(Error::EndpointOutOfRange {
                    edge: i,
                    endpoint: end,
                    vertices,
                });
            }
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    Ok((components, edges.len() + components - vertices))
}
