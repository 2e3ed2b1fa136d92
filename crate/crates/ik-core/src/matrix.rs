//! Small dense-matrix helpers shared by the algebra and spectrum layers.

use ndarray::Array2;

use crate::C64;

pub(crate) fn zeros(n: usize) -> Array2<C64> {
    Array2::from_elem((n, n), C64::new(0.0, 0.0))
}

pub(crate) fn identity(n: usize) -> Array2<C64> {
    let mut m = zeros(n);
    for i in 0..n {
        m[(i, i)] = C64::new(1.0, 0.0);
    }
    m
}

pub(crate) fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::from_elem((ra * rb, ca * cb), C64::new(0.0, 0.0));
    for ia in 0..ra {
        for ja in 0..ca {
            let av = a[(ia, ja)];
            if av == C64::new(0.0, 0.0) {
                continue;
            }
            for ib in 0..rb {
                for jb in 0..cb {
                    out[(ia * rb + ib, ja * cb + jb)] = av * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// Embed a two-site operator (dim d*d) into an n-fold tensor product at
/// factor positions (i, j), i != j, all factors of local dimension d.
pub(crate) fn embed_pair(op: &Array2<C64>, d: usize, n: usize, i: usize, j: usize) -> Array2<C64> {
    assert!(i < n && j < n && i != j);
    let dim = d.pow(n as u32);
    let mut out = zeros(dim);
    let strides: Vec<usize> = (0..n).map(|k| d.pow((n - 1 - k) as u32)).collect();
    // Iterate over the two active factor indices and the passive rest.
    let passive: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
    let n_passive = d.pow(passive.len() as u32);
    for row_act_i in 0..d {
        for row_act_j in 0..d {
            for col_act_i in 0..d {
                for col_act_j in 0..d {
                    let v = op[(row_act_i * d + row_act_j, col_act_i * d + col_act_j)];
                    if v == C64::new(0.0, 0.0) {
                        continue;
                    }
                    for p in 0..n_passive {
                        // Decode the passive multi-index.
                        let mut row = row_act_i * strides[i] + row_act_j * strides[j];
                        let mut col = col_act_i * strides[i] + col_act_j * strides[j];
                        let mut rem = p;
                        for &k in passive.iter().rev() {
                            let digit = rem % d;
                            rem /= d;
                            row += digit * strides[k];
                            col += digit * strides[k];
                        }
                        out[(row, col)] += v;
                    }
                }
            }
        }
    }
    out
}

/// Partial transpose in the second factor of a d*d bipartite operator.
pub(crate) fn transpose_second(op: &Array2<C64>, d: usize) -> Array2<C64> {
    let mut out = zeros(d * d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    out[(a * d + b, c * d + e)] = op[(a * d + e, c * d + b)];
                }
            }
        }
    }
    out
}

/// Swap the two tensor factors: P (A x B) P.
pub(crate) fn swap_factors(op: &Array2<C64>, d: usize) -> Array2<C64> {
    let mut out = zeros(d * d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    out[(b * d + a, e * d + c)] = op[(a * d + b, c * d + e)];
                }
            }
        }
    }
    out
}

/// Permutation operator on C^d x C^d.
pub(crate) fn permutation(d: usize) -> Array2<C64> {
    let mut p = zeros(d * d);
    for a in 0..d {
        for b in 0..d {
            p[(a * d + b, b * d + a)] = C64::new(1.0, 0.0);
        }
    }
    p
}

pub(crate) fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Relative max-norm residual of LHS - RHS with floor 1.
pub(crate) fn relative_residual(lhs: &Array2<C64>, rhs: &Array2<C64>) -> f64 {
    let scale = max_abs(lhs).max(max_abs(rhs)).max(1.0);
    let diff = lhs - rhs;
    max_abs(&diff) / scale
}
