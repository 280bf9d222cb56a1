//! Exact linear algebra over GF(q): rank, kernel, frozen coordinates.
//!
//! Elimination runs in two phases on a working copy. The sparse phase pivots
//! on the active column of smallest count, using the shortest row holding it,
//! and stops once the Markowitz cost or the fill gets too large. Whatever is
//! left goes through dense forward elimination (64 entries per word when
//! q = 2). Pivot rows are kept in pivot order so the kernel follows by back
//! substitution, all basis vectors at once.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ensemble::SparseMatrix;
use crate::gf::{Field, FieldElement};

/// Dense oracle refuses matrices with more entries than this.
pub const DENSE_ORACLE_LIMIT: usize = 1_000_000;
const MAX_MARKOWITZ_COST: usize = 256;
const FILL_FACTOR: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{rows}x{cols} exceeds the dense oracle limit of 10^6 entries")]
    SizeLimit { rows: usize, cols: usize },
}

type Row = Vec<(u32, FieldElement)>;

/// Pivot sequence of a forward elimination.
struct Elimination {
    /// `(pivot column, pivot row)`; a pivot row only touches its own column,
    /// columns pivoted later, and non-pivot columns.
    pivots: Vec<(u32, Row)>,
    is_pivot: Vec<bool>,
}

fn eliminate(m: &SparseMatrix, record: bool) -> Elimination {
    let field = m.field();
    let n = m.n_cols();
    let mut rows: Vec<Row> = m.rows().map(<[_]>::to_vec).collect();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
        }
    }
    let mut row_active = vec![true; rows.len()];
    let mut col_done = vec![false; n];
    let mut is_pivot = vec![false; n];
    let mut pivots: Vec<(u32, Row)> = Vec::new();
    let mut nnz = m.nnz();
    let nnz_limit = FILL_FACTOR * nnz + 1024;

    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..n).map(|c| Reverse((col_rows[c].len(), c as u32))).collect();
    let mut touched: Vec<u32> = Vec::new();

    while let Some(Reverse((count, c))) = heap.pop() {
        let cu = c as usize;
        if col_done[cu] || col_rows[cu].len() != count {
            continue;
        }
        if count == 0 {
            col_done[cu] = true;
            continue;
        }
        let r = *col_rows[cu]
            .iter()
            .min_by_key(|&&r| (rows[r as usize].len(), r))
            .expect("count > 0");
        let cost = (count - 1) * (rows[r as usize].len() - 1);
        if cost > MAX_MARKOWITZ_COST || nnz > nnz_limit {
            break;
        }
        let prow = std::mem::take(&mut rows[r as usize]);
        row_active[r as usize] = false;
        nnz -= prow.len();
        for &(j, _) in &prow {
            remove_row(&mut col_rows[j as usize], r);
        }
        let a = prow[prow.binary_search_by_key(&c, |e| e.0).expect("pivot in row")].1;
        let others = std::mem::take(&mut col_rows[cu]);
        for &s in &others {
            let srow = std::mem::take(&mut rows[s as usize]);
            let sv = srow[srow.binary_search_by_key(&c, |e| e.0).expect("column in row")].1;
            let f = field.div(sv, a).expect("pivot is nonzero");
            let before = srow.len();
            let merged = axpy_merge(field, &srow, &prow, f, c, s, &mut col_rows);
            nnz = nnz + merged.len() - before;
            rows[s as usize] = merged;
        }
        col_done[cu] = true;
        is_pivot[cu] = true;
        touched.clear();
        touched.extend(prow.iter().map(|e| e.0).filter(|&j| j != c));
        for &j in &touched {
            if !col_done[j as usize] {
                heap.push(Reverse((col_rows[j as usize].len(), j)));
            }
        }
        if record {
            pivots.push((c, prow));
        } else {
            pivots.push((c, Vec::new()));
        }
    }

    // dense phase on the remaining active block
    let dense_cols: Vec<u32> = (0..n as u32).filter(|&c| !col_done[c as usize]).collect();
    let dense_rows: Vec<usize> = (0..rows.len()).filter(|&r| row_active[r] && !rows[r].is_empty()).collect();
    if !dense_cols.is_empty() && !dense_rows.is_empty() {
        let mut local = vec![u32::MAX; n];
        for (i, &c) in dense_cols.iter().enumerate() {
            local[c as usize] = i as u32;
        }
        let block: Vec<&Row> = dense_rows.iter().map(|&r| &rows[r]).collect();
        let found = if field.is_binary() {
            dense_binary(&block, &dense_cols, &local, record)
        } else {
            dense_general(field, &block, &dense_cols, &local, record)
        };
        for (c, row) in found {
            is_pivot[c as usize] = true;
            pivots.push((c, row));
        }
    }
    Elimination { pivots, is_pivot }
}

fn remove_row(list: &mut Vec<u32>, r: u32) {
    if let Some(pos) = list.iter().position(|&x| x == r) {
        list.swap_remove(pos);
    }
}

/// `srow - f * prow`, keeping `col_rows` in sync for row `s`. Column `pivot`
/// cancels and its row list is handled by the caller.
fn axpy_merge(
    field: &Field,
    srow: &Row,
    prow: &Row,
    f: FieldElement,
    pivot: u32,
    s: u32,
    col_rows: &mut [Vec<u32>],
) -> Row {
    let mut out = Vec::with_capacity(srow.len() + prow.len());
    let (mut i, mut j) = (0, 0);
    while i < srow.len() || j < prow.len() {
        let ci = srow.get(i).map_or(u32::MAX, |e| e.0);
        let cj = prow.get(j).map_or(u32::MAX, |e| e.0);
        if ci < cj {
            out.push(srow[i]);
            i += 1;
        } else if cj < ci {
            out.push((cj, field.neg(field.mul(f, prow[j].1))));
            col_rows[cj as usize].push(s);
            j += 1;
        } else {
            let v = field.sub(srow[i].1, field.mul(f, prow[j].1));
            if !v.is_zero() {
                out.push((ci, v));
            } else if ci != pivot {
                remove_row(&mut col_rows[ci as usize], s);
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn dense_binary(block: &[&Row], cols: &[u32], local: &[u32], record: bool) -> Vec<(u32, Row)> {
    let width = cols.len();
    let words = width.div_ceil(64);
    let mut mat: Vec<Vec<u64>> = block
        .iter()
        .map(|row| {
            let mut bits = vec![0u64; words];
            for &(c, _) in row.iter() {
                let l = local[c as usize] as usize;
                bits[l / 64] |= 1 << (l % 64);
            }
            bits
        })
        .collect();
    let mut out = Vec::new();
    let mut rank = 0;
    for j in 0..width {
        let (w, bit) = (j / 64, 1u64 << (j % 64));
        let Some(p) = (rank..mat.len()).find(|&i| mat[i][w] & bit != 0) else {
            continue;
        };
        mat.swap(rank, p);
        let (head, tail) = mat.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[w] & bit != 0 {
                for (x, y) in row[w..].iter_mut().zip(&prow[w..]) {
                    *x ^= y;
                }
            }
        }
        let mut sparse = Vec::new();
        if record {
            for (wi, &word) in prow.iter().enumerate().skip(w) {
                let mut rest = word;
                while rest != 0 {
                    let b = rest.trailing_zeros() as usize;
                    sparse.push((cols[wi * 64 + b], FieldElement::ONE));
                    rest &= rest - 1;
                }
            }
        }
        out.push((cols[j], sparse));
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    out
}

fn dense_general(field: &Field, block: &[&Row], cols: &[u32], local: &[u32], record: bool) -> Vec<(u32, Row)> {
    let width = cols.len();
    let mut mat: Vec<Vec<FieldElement>> = block
        .iter()
        .map(|row| {
            let mut dense = vec![FieldElement::ZERO; width];
            for &(c, v) in row.iter() {
                dense[local[c as usize] as usize] = v;
            }
            dense
        })
        .collect();
    let mut out = Vec::new();
    let mut rank = 0;
    for j in 0..width {
        let Some(p) = (rank..mat.len()).find(|&i| !mat[i][j].is_zero()) else {
            continue;
        };
        mat.swap(rank, p);
        let (head, tail) = mat.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if !row[j].is_zero() {
                let f = field.div(row[j], prow[j]).expect("pivot is nonzero");
                field.sub_scaled_assign(&mut row[j..], &prow[j..], f);
            }
        }
        let sparse = if record {
            (j..width).filter(|&l| !prow[l].is_zero()).map(|l| (cols[l], prow[l])).collect()
        } else {
            Vec::new()
        };
        out.push((cols[j], sparse));
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    out
}

pub fn rank(m: &SparseMatrix) -> usize {
    eliminate(m, false).pivots.len()
}

pub fn nullity(m: &SparseMatrix) -> usize {
    m.n_cols() - rank(m)
}

/// Basis of `ker(M)`, one vector per free (non-pivot) column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelBasis {
    pub field: crate::gf::FieldSpec,
    pub n: usize,
    pub vectors: Vec<Vec<FieldElement>>,
    pub free_columns: Vec<usize>,
}

/// Columns on which every kernel vector vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrozenSet {
    pub indices: Vec<usize>,
}

impl FrozenSet {
    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

enum Coords {
    /// `words` u64 per column, bit `b` is the coordinate in basis vector `b`.
    Binary { words: usize, bits: Vec<u64> },
    General(Vec<FieldElement>),
}

/// The kernel stored column by column: coordinate `i` of basis vector `b`.
pub struct Kernel {
    field: Field,
    n: usize,
    dim: usize,
    free_columns: Vec<usize>,
    coords: Coords,
}

impl Kernel {
    pub fn of(m: &SparseMatrix) -> Kernel {
        let field = m.field().clone();
        let n = m.n_cols();
        let elim = eliminate(m, true);
        let free_columns: Vec<usize> = (0..n).filter(|&c| !elim.is_pivot[c]).collect();
        let dim = free_columns.len();
        let coords = if field.is_binary() {
            let words = dim.div_ceil(64).max(1);
            let mut bits = vec![0u64; n * words];
            for (b, &f) in free_columns.iter().enumerate() {
                bits[f * words + b / 64] |= 1 << (b % 64);
            }
            let mut acc = vec![0u64; words];
            for (c, row) in elim.pivots.iter().rev() {
                acc.fill(0);
                for &(j, _) in row {
                    if j != *c {
                        let src = &bits[j as usize * words..(j as usize + 1) * words];
                        for (a, s) in acc.iter_mut().zip(src) {
                            *a ^= s;
                        }
                    }
                }
                bits[*c as usize * words..(*c as usize + 1) * words].copy_from_slice(&acc);
            }
            Coords::Binary { words, bits }
        } else {
            let mut vals = vec![FieldElement::ZERO; n * dim];
            for (b, &f) in free_columns.iter().enumerate() {
                vals[f * dim + b] = FieldElement::ONE;
            }
            let mut acc = vec![FieldElement::ZERO; dim];
            for (c, row) in elim.pivots.iter().rev() {
                acc.fill(FieldElement::ZERO);
                let a = row[row.binary_search_by_key(c, |e| e.0).expect("pivot in row")].1;
                for &(j, v) in row {
                    if j != *c {
                        // x_c = -sum_j (v_j / a) x_j
                        let coef = field.div(v, a).expect("pivot is nonzero");
                        field.sub_scaled_assign(&mut acc, &vals[j as usize * dim..(j as usize + 1) * dim], coef);
                    }
                }
                vals[*c as usize * dim..(*c as usize + 1) * dim].copy_from_slice(&acc);
            }
            Coords::General(vals)
        };
        Kernel {
            field,
            n,
            dim,
            free_columns,
            coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coordinate `i` of basis vector `b`.
    pub fn coord(&self, i: usize, b: usize) -> FieldElement {
        match &self.coords {
            Coords::Binary { words, bits } => {
                if bits[i * words + b / 64] >> (b % 64) & 1 == 1 {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                }
            }
            Coords::General(vals) => vals[i * self.dim + b],
        }
    }

    /// Every basis vector vanishes at `i`.
    pub fn is_frozen(&self, i: usize) -> bool {
        match &self.coords {
            Coords::Binary { words, bits } => bits[i * words..(i + 1) * words].iter().all(|&w| w == 0),
            Coords::General(vals) => vals[i * self.dim..(i + 1) * self.dim].iter().all(|v| v.is_zero()),
        }
    }

    pub fn frozen(&self) -> FrozenSet {
        FrozenSet {
            indices: (0..self.n).filter(|&i| self.is_frozen(i)).collect(),
        }
    }

    pub fn basis(&self) -> KernelBasis {
        KernelBasis {
            field: self.field.spec(),
            n: self.n,
            vectors: (0..self.dim).map(|b| (0..self.n).map(|i| self.coord(i, b)).collect()).collect(),
            free_columns: self.free_columns.clone(),
        }
    }

    /// Non-frozen coordinates grouped by proportional basis profiles. Two
    /// coordinates in one class are proportional on the whole kernel, two in
    /// different classes are jointly uniform on F_q^2.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        for i in 0..self.n {
            if self.is_frozen(i) {
                continue;
            }
            let profile: Vec<FieldElement> = (0..self.dim).map(|b| self.coord(i, b)).collect();
            let lead = *profile.iter().find(|v| !v.is_zero()).expect("not frozen");
            let inv = self.field.inv(lead).expect("nonzero");
            let key: Vec<u32> = profile.iter().map(|&v| self.field.mul(v, inv).repr()).collect();
            match index.get(&key) {
                Some(&k) => classes[k].push(i),
                None => {
                    index.insert(key, classes.len());
                    classes.push(vec![i]);
                }
            }
        }
        classes
    }

    /// Uniform element of the kernel.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<FieldElement> {
        let coefs: Vec<FieldElement> = (0..self.dim).map(|_| self.field.random(rng)).collect();
        match &self.coords {
            Coords::Binary { words, bits } => {
                let mut mask = vec![0u64; *words];
                for (b, c) in coefs.iter().enumerate() {
                    if !c.is_zero() {
                        mask[b / 64] |= 1 << (b % 64);
                    }
                }
                (0..self.n)
                    .map(|i| {
                        let parity = bits[i * words..(i + 1) * words]
                            .iter()
                            .zip(&mask)
                            .map(|(w, m)| (w & m).count_ones())
                            .sum::<u32>();
                        if parity % 2 == 1 {
                            FieldElement::ONE
                        } else {
                            FieldElement::ZERO
                        }
                    })
                    .collect()
            }
            Coords::General(vals) => (0..self.n)
                .map(|i| {
                    vals[i * self.dim..(i + 1) * self.dim]
                        .iter()
                        .zip(&coefs)
                        .fold(FieldElement::ZERO, |acc, (&x, &c)| self.field.add(acc, self.field.mul(x, c)))
                })
                .collect(),
        }
    }
}

pub fn kernel_basis(m: &SparseMatrix) -> KernelBasis {
    Kernel::of(m).basis()
}

pub fn frozen_variables(m: &SparseMatrix) -> FrozenSet {
    Kernel::of(m).frozen()
}

pub fn kernel_partition(m: &SparseMatrix) -> Vec<Vec<usize>> {
    Kernel::of(m).partition()
}

pub fn boltzmann_sample<R: Rng + ?Sized>(m: &SparseMatrix, rng: &mut R) -> Vec<FieldElement> {
    Kernel::of(m).sample(rng)
}

/// Textbook dense Gaussian elimination; test oracle only.
pub fn rank_dense_oracle(m: &SparseMatrix) -> Result<usize, LinalgError> {
    let (rows, cols) = (m.n_rows(), m.n_cols());
    if rows.saturating_mul(cols) > DENSE_ORACLE_LIMIT {
        return Err(LinalgError::SizeLimit { rows, cols });
    }
    let field = m.field();
    let mut a = m.to_dense();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(a[r][c]).expect("nonzero");
        for x in a[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(f, p));
                }
            }
        }
        r += 1;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mat(q: u32, dense: &[&[u32]]) -> SparseMatrix {
        let rows: Vec<Vec<u32>> = dense.iter().map(|r| r.to_vec()).collect();
        SparseMatrix::from_dense(Field::new(q).unwrap(), &rows).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, q: u32, rows: usize, cols: usize, density: f64) -> SparseMatrix {
        let f = Field::new(q).unwrap();
        let mut t = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if rng.random::<f64>() < density {
                    t.push((r, c, f.random_nonzero(rng)));
                }
            }
        }
        SparseMatrix::from_triplets(f, rows, cols, t).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(rank(&mat(5, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rank(&mat(2, &[&[1, 1], &[1, 1]])), 1);
        assert_eq!(rank_dense_oracle(&mat(5, &[&[1, 2], &[2, 4]])).unwrap(), 1);
        assert_eq!(nullity(&SparseMatrix::zeros(Field::new(7).unwrap(), 4, 6)), 6);
        let id = mat(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(nullity(&id), 0);
        assert!(kernel_basis(&id).vectors.is_empty());
    }

    #[test]
    fn path_kernel() {
        let m = mat(2, &[&[1, 1, 0], &[0, 1, 1]]);
        let kb = kernel_basis(&m);
        assert_eq!(kb.vectors, vec![vec![FieldElement::ONE; 3]]);
        assert!(frozen_variables(&m).is_empty());
        assert_eq!(frozen_variables(&mat(3, &[&[1, 0, 0]])).indices, vec![0]);
    }

    #[test]
    fn oracle_refuses_large() {
        let m = SparseMatrix::zeros(Field::new(2).unwrap(), 1001, 1000);
        assert_eq!(rank_dense_oracle(&m), Err(LinalgError::SizeLimit { rows: 1001, cols: 1000 }));
    }

    #[test]
    fn fuzz_against_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..400 {
            let q = [2, 3, 4, 9, 5, 8][trial % 6];
            let rows = rng.random_range(1..30);
            let cols = rng.random_range(1..30);
            let density = [0.05, 0.15, 0.4, 0.8][trial % 4];
            let m = random_matrix(&mut rng, q, rows, cols, density);
            let r = rank(&m);
            assert_eq!(r, rank_dense_oracle(&m).unwrap(), "q={q} {rows}x{cols}");
            let k = Kernel::of(&m);
            assert_eq!(k.dim(), cols - r);
            for v in &k.basis().vectors {
                assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn large_sparse_binary_matches_dense_path() {
        // forces both phases: the sparse phase runs out of cheap pivots
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for &(rows, cols) in &[(300usize, 400usize), (400, 300)] {
            let m = random_matrix(&mut rng, 2, rows, cols, 0.02);
            assert_eq!(rank(&m), rank_dense_oracle(&m).unwrap());
            let k = Kernel::of(&m);
            for v in &k.basis().vectors {
                assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn boltzmann_zero_matrix() {
        let m = SparseMatrix::zeros(Field::new(2).unwrap(), 1, 2);
        let k = Kernel::of(&m);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut counts = [0usize; 4];
        for _ in 0..4000 {
            let v = k.sample(&mut rng);
            counts[(v[0].repr() * 2 + v[1].repr()) as usize] += 1;
        }
        for c in counts {
            assert!((c as f64 / 4000.0 - 0.25).abs() < 0.03);
        }
    }

    #[test]
    fn boltzmann_full_rank_is_zero() {
        let m = mat(3, &[&[1, 2], &[0, 1]]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert!(boltzmann_sample(&m, &mut rng).iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn unfrozen_marginal_is_uniform() {
        let m = mat(3, &[&[1, 1, 0, 0], &[0, 0, 1, 2]]);
        let k = Kernel::of(&m);
        assert!(!k.is_frozen(0));
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut counts = [0usize; 3];
        for _ in 0..9000 {
            counts[k.sample(&mut rng)[0].repr() as usize] += 1;
        }
        for c in counts {
            assert!((c as f64 / 9000.0 - 1.0 / 3.0).abs() < 0.02);
        }
    }

    #[test]
    fn partition_groups_proportional_columns() {
        // x0 = x1, x2 = x3 * (-2) = x3, x4 free
        let m = mat(3, &[&[1, 2, 0, 0, 0], &[0, 0, 1, 2, 0]]);
        assert_eq!(kernel_partition(&m), vec![vec![0, 1], vec![2, 3], vec![4]]);
    }
}
