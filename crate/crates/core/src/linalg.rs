//! Small dense linear algebra over any [`Scalar`], exact for rationals.

use std::cmp::Ordering;

use crate::scalar::Scalar;

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn norm_sq<T: Scalar>(a: &[T]) -> T {
    dot(a, a)
}

pub fn norm_f64<T: Scalar>(a: &[T]) -> f64 {
    a.iter().map(|x| x.as_f64().powi(2)).sum::<f64>().sqrt()
}

pub fn scale<T: Scalar>(a: &[T], s: &T) -> Vec<T> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn neg<T: Scalar>(a: &[T]) -> Vec<T> {
    a.iter().map(|x| -x.clone()).collect()
}

/// `a + s * b`.
pub fn axpy<T: Scalar>(a: &[T], s: &T, b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + s.clone() * y.clone()).collect()
}

pub fn is_zero_vec<T: Scalar>(a: &[T]) -> bool {
    if T::EXACT {
        a.iter().all(|x| x.is_zero())
    } else {
        norm_f64(a) <= T::tolerance().as_f64()
    }
}

/// Sign of `<a, b>`, with the float tolerance scaled by `|a| |b|`.
pub fn dot_sign<T: Scalar>(a: &[T], b: &[T]) -> Ordering {
    let d = dot(a, b);
    if T::EXACT {
        return d.partial_cmp(&T::zero()).unwrap_or(Ordering::Equal);
    }
    let scale = norm_f64(a) * norm_f64(b);
    let v = d.as_f64();
    if v.abs() <= T::tolerance().as_f64() * scale.max(1e-300) {
        Ordering::Equal
    } else if v > 0.0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

pub fn lex_cmp<T: Scalar>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

pub fn vec_approx_eq<T: Scalar>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(y))
}

/// Reduced row echelon form; returns the nonzero rows (leading entry 1) and pivot columns.
pub fn rref<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> (Vec<Vec<T>>, Vec<usize>) {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let mag = m
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x.as_f64().abs())
        .fold(0.0_f64, f64::max)
        .max(1.0);
    let tol = T::tolerance().as_f64() * mag;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        // partial pivoting on magnitude; any nonzero entry works for exact fields
        let mut best = None;
        let mut best_mag = 0.0;
        for (r, line) in m.iter().enumerate().skip(row) {
            let v = &line[col];
            let nonzero = if T::EXACT { !v.is_zero() } else { v.as_f64().abs() > tol };
            if nonzero {
                let mag = v.as_f64().abs();
                if best.is_none() || (!T::EXACT && mag > best_mag) {
                    best = Some(r);
                    best_mag = mag;
                }
                if T::EXACT {
                    break;
                }
            }
        }
        let Some(p) = best else { continue };
        m.swap(row, p);
        let inv = T::one() / m[row][col].clone();
        m[row] = scale(&m[row], &inv);
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                m[r] = axpy(&m[r], &(-f), &pivot_row);
                if !T::EXACT {
                    for x in m[r].iter_mut() {
                        if x.as_f64().abs() <= tol * 1e-3 {
                            *x = T::zero();
                        }
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    if !T::EXACT {
        for r in m.iter_mut() {
            for (c, x) in r.iter_mut().enumerate() {
                if !pivots.contains(&c) && x.as_f64().abs() <= tol {
                    *x = T::zero();
                }
            }
        }
    }
    (m, pivots)
}

pub fn rank<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rref(rows, ncols).0.len()
}

/// Basis of `{x : <r, x> = 0 for all rows r}`.
pub fn nullspace<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let (r, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); ncols];
        v[free] = T::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Gram-Schmidt without normalisation (stays exact over rationals); dependent vectors are dropped.
pub fn orthogonal_basis<T: Scalar>(vectors: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for q in &out {
            let c = dot(&w, q) / norm_sq(q);
            w = axpy(&w, &(-c), q);
        }
        if !is_zero_vec(&w) {
            if !T::EXACT {
                // re-orthogonalise once for floats
                for q in &out {
                    let c = dot(&w, q) / norm_sq(q);
                    w = axpy(&w, &(-c), q);
                }
            }
            out.push(w);
        }
    }
    out
}

/// Orthogonal projection onto the span of an orthogonal basis.
pub fn project_orthogonal<T: Scalar>(x: &[T], orth: &[Vec<T>]) -> Vec<T> {
    let mut p = vec![T::zero(); x.len()];
    for q in orth {
        let c = dot(x, q) / norm_sq(q);
        p = axpy(&p, &c, q);
    }
    p
}

/// Determinant by Gaussian elimination.
pub fn det<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut d = T::one();
    for col in 0..n {
        let mut p = None;
        let mut best = -1.0;
        for (r, row) in a.iter().enumerate().skip(col) {
            let mag = row[col].as_f64().abs();
            if !row[col].is_zero() && (p.is_none() || (!T::EXACT && mag > best)) {
                p = Some(r);
                best = mag;
                if T::EXACT {
                    break;
                }
            }
        }
        let Some(p) = p else { return T::zero() };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        let piv = a[col][col].clone();
        d = d * piv.clone();
        for r in col + 1..n {
            let f = a[r][col].clone() / piv.clone();
            if !f.is_zero() {
                let pr = a[col].clone();
                a[r] = axpy(&a[r], &(-f), &pr);
            }
        }
    }
    d
}

/// Solves the square system `m x = b`; `None` when singular.
pub fn solve<T: Scalar>(m: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = m.len();
    let rows: Vec<Vec<T>> = m
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let (r, pivots) = rref(&rows, n + 1);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some(r.iter().map(|row| row[n].clone()).collect())
}
