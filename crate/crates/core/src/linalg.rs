//! Small fixed-size dense linear algebra over [`Real`].
//!
//! Matrices are row-major `[[T; N]; N]`. The Lorentzian form on `N` coordinates
//! has signature `(N-1, 1)` with the time coordinate last.

use crate::real::Real;

pub type Vector<T, const N: usize> = [T; N];
pub type Matrix<T, const N: usize> = [[T; N]; N];

pub type Vec4<T> = Vector<T, 4>;
pub type Mat4<T> = Matrix<T, 4>;
pub type Vec3<T> = Vector<T, 3>;
pub type Mat3<T> = Matrix<T, 3>;

pub fn identity<T: Real, const N: usize>() -> Matrix<T, N> {
    let mut m = [[T::zero(); N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn mat_mul<T: Real, const N: usize>(a: &Matrix<T, N>, b: &Matrix<T, N>) -> Matrix<T, N> {
    let mut c = [[T::zero(); N]; N];
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == T::zero() {
                continue;
            }
            for j in 0..N {
                c[i][j] = c[i][j] + aik * b[k][j];
            }
        }
    }
    c
}

pub fn mat_vec<T: Real, const N: usize>(a: &Matrix<T, N>, v: &Vector<T, N>) -> Vector<T, N> {
    let mut r = [T::zero(); N];
    for i in 0..N {
        let mut s = T::zero();
        for j in 0..N {
            s = s + a[i][j] * v[j];
        }
        r[i] = s;
    }
    r
}

pub fn transpose<T: Real, const N: usize>(a: &Matrix<T, N>) -> Matrix<T, N> {
    let mut t = *a;
    for i in 0..N {
        for j in 0..N {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub fn from_columns<T: Real, const N: usize>(cols: &[Vector<T, N>; N]) -> Matrix<T, N> {
    let mut m = [[T::zero(); N]; N];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..N {
            m[i][j] = c[i];
        }
    }
    m
}

pub fn column<T: Real, const N: usize>(m: &Matrix<T, N>, j: usize) -> Vector<T, N> {
    let mut c = [T::zero(); N];
    for i in 0..N {
        c[i] = m[i][j];
    }
    c
}

/// Gauss-Jordan with partial pivoting. `None` when a pivot underflows `tol`.
pub fn inverse<T: Real, const N: usize>(a: &Matrix<T, N>, tol: T) -> Option<Matrix<T, N>> {
    let mut m = *a;
    let mut inv = identity::<T, N>();
    for col in 0..N {
        let piv = (col..N).max_by(|&x, &y| m[x][col].abs().partial_cmp(&m[y][col].abs()).unwrap())?;
        if m[piv][col].abs() < tol {
            return None;
        }
        m.swap(col, piv);
        inv.swap(col, piv);
        let d = m[col][col];
        for j in 0..N {
            m[col][j] = m[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for r in 0..N {
            if r == col {
                continue;
            }
            let f = m[r][col];
            if f == T::zero() {
                continue;
            }
            for j in 0..N {
                m[r][j] = m[r][j] - f * m[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    Some(inv)
}

pub fn det<T: Real, const N: usize>(a: &Matrix<T, N>) -> T {
    let mut m = *a;
    let mut d = T::one();
    for col in 0..N {
        let piv = (col..N)
            .max_by(|&x, &y| m[x][col].abs().partial_cmp(&m[y][col].abs()).unwrap())
            .unwrap();
        if m[piv][col] == T::zero() {
            return T::zero();
        }
        if piv != col {
            m.swap(col, piv);
            d = -d;
        }
        d = d * m[col][col];
        for r in col + 1..N {
            let f = m[r][col] / m[col][col];
            for j in col..N {
                m[r][j] = m[r][j] - f * m[col][j];
            }
        }
    }
    d
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in descending order and the matching eigenvectors as columns.
pub fn sym_eigen<T: Real, const N: usize>(a: &Matrix<T, N>) -> (Vector<T, N>, Matrix<T, N>) {
    let mut m = *a;
    let mut v = identity::<T, N>();
    let two = T::lit(2.0);
    for _sweep in 0..100 {
        let mut off = T::zero();
        for i in 0..N {
            for j in i + 1..N {
                off = off + m[i][j] * m[i][j];
            }
        }
        if off < T::epsilon() * T::epsilon() {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                if m[p][q] == T::zero() {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (two * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..N {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..N {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for k in 0..N {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&x, &y| m[y][y].partial_cmp(&m[x][x]).unwrap());
    let vals = std::array::from_fn(|i| m[order[i]][order[i]]);
    let mut vecs = [[T::zero(); N]; N];
    for (newc, &oldc) in order.iter().enumerate() {
        for r in 0..N {
            vecs[r][newc] = v[r][oldc];
        }
    }
    (vals, vecs)
}

/// Lorentzian inner product, time coordinate last.
pub fn lorentz<T: Real, const N: usize>(a: &Vector<T, N>, b: &Vector<T, N>) -> T {
    let mut s = T::zero();
    for i in 0..N - 1 {
        s = s + a[i] * b[i];
    }
    s - a[N - 1] * b[N - 1]
}

pub fn dot<T: Real, const N: usize>(a: &Vector<T, N>, b: &Vector<T, N>) -> T {
    let mut s = T::zero();
    for i in 0..N {
        s = s + a[i] * b[i];
    }
    s
}

pub fn cross3<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn scale<T: Real, const N: usize>(a: &Vector<T, N>, k: T) -> Vector<T, N> {
    std::array::from_fn(|i| a[i] * k)
}

pub fn add<T: Real, const N: usize>(a: &Vector<T, N>, b: &Vector<T, N>) -> Vector<T, N> {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn sub<T: Real, const N: usize>(a: &Vector<T, N>, b: &Vector<T, N>) -> Vector<T, N> {
    std::array::from_fn(|i| a[i] - b[i])
}

pub fn max_abs_diff<T: Real, const N: usize>(a: &Vector<T, N>, b: &Vector<T, N>) -> T {
    (0..N).fold(T::zero(), |m, i| m.max((a[i] - b[i]).abs()))
}

pub fn mat_max_abs_diff<T: Real, const N: usize>(a: &Matrix<T, N>, b: &Matrix<T, N>) -> T {
    (0..N).fold(T::zero(), |m, i| m.max(max_abs_diff(&a[i], &b[i])))
}

/// Householder-type reflection `x ↦ x − 2⟨x,n⟩ n` in the Lorentzian form, for `⟨n,n⟩ = 1`.
pub fn lorentz_reflection<T: Real, const N: usize>(n: &Vector<T, N>) -> Matrix<T, N> {
    let two = T::lit(2.0);
    let mut r = identity::<T, N>();
    for i in 0..N {
        for j in 0..N {
            let jn = if j == N - 1 { -n[j] } else { n[j] };
            r[i][j] = r[i][j] - two * n[i] * jn;
        }
    }
    r
}

/// Checks `gᵀ J g = J`.
pub fn is_lorentz<T: Real, const N: usize>(g: &Matrix<T, N>, tol: T) -> bool {
    for i in 0..N {
        for j in 0..N {
            let gi = column(g, i);
            let gj = column(g, j);
            let want = if i != j {
                T::zero()
            } else if i == N - 1 {
                -T::one()
            } else {
                T::one()
            };
            if (lorentz(&gi, &gj) - want).abs() > tol {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a: Mat4<f64> = [[2.0, 1.0, 0.0, 0.5], [1.0, 3.0, 0.2, 0.0], [0.0, 0.2, 1.0, 0.3], [0.5, 0.0, 0.3, 4.0]];
        let ai = inverse(&a, 1e-12).unwrap();
        let id = mat_mul(&a, &ai);
        assert!(mat_max_abs_diff(&id, &identity()) < 1e-12);
    }

    #[test]
    fn eigen_reconstructs() {
        let a: Mat3<f64> = [[1.0, -0.5, 0.0], [-0.5, 1.0, -0.7], [0.0, -0.7, 1.0]];
        let (w, v) = sym_eigen(&a);
        assert!(w[0] >= w[1] && w[1] >= w[2]);
        for k in 0..3 {
            let col = column(&v, k);
            let av = mat_vec(&a, &col);
            assert!(max_abs_diff(&av, &scale(&col, w[k])) < 1e-12);
        }
    }

    #[test]
    fn determinant() {
        let a: Mat3<f64> = [[2.0, 0.0, 1.0], [1.0, 1.0, 0.0], [0.0, 3.0, 1.0]];
        assert!((det(&a) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn reflection_is_lorentz_involution() {
        let n: Vec4<f64> = [1.2, 0.3, -0.4, 0.7];
        let q = lorentz(&n, &n).sqrt();
        let n = scale(&n, 1.0 / q);
        let r = lorentz_reflection(&n);
        assert!(is_lorentz(&r, 1e-12));
        assert!(mat_max_abs_diff(&mat_mul(&r, &r), &identity()) < 1e-12);
    }
}
