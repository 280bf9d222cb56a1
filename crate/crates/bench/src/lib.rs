//! Fixtures shared by the criterion benches and the acceptance battery.

use ffrank::ensemble::{sample_instance, Instance, InstanceSeed};
use ffrank::harness::ensemble_from_str;
use ffrank::{Field, FieldElement, SparseMatrix};
use rand::Rng;

/// Instance from an ensemble string, panicking on bad input.
pub fn instance(ensemble: &str, n: usize, seed: u64) -> Instance {
    let ens = ensemble_from_str(ensemble, n).unwrap_or_else(|e| panic!("{ensemble}: {e}"));
    sample_instance(&ens, InstanceSeed(seed)).unwrap_or_else(|e| panic!("{ensemble} at n = {n}: {e}"))
}

/// `rows x cols` matrix with independent entries, each non-zero with probability `density`.
pub fn random_matrix<R: Rng>(rng: &mut R, field: &Field, rows: usize, cols: usize, density: f64) -> SparseMatrix {
    let mut triplets = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.random::<f64>() < density {
                triplets.push((r, c, field.random_nonzero(rng)));
            }
        }
    }
    SparseMatrix::from_triplets(field.clone(), rows, cols, triplets).expect("entries are in range")
}

/// Every `v` with `m v = 0`, by enumerating all of `F_q^n`. Only for tiny `n`.
pub fn exhaustive_kernel(m: &SparseMatrix) -> Vec<Vec<FieldElement>> {
    let f = m.field();
    let q = f.order() as usize;
    let n = m.n_cols();
    let els: Vec<FieldElement> = f.elements().collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let v: Vec<FieldElement> = digits.iter().map(|&d| els[d]).collect();
        if m.mul_vec(&v).iter().all(|x| x.is_zero()) {
            out.push(v);
        }
        let mut i = 0;
        while i < n {
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}
