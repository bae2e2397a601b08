use super::{c64, cmp_re_im, ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

const ULP: f64 = f64::EPSILON;
const SAFE_MIN: f64 = f64::MIN_POSITIVE;

/// Eigenvalues and eigenvectors of a general complex matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Sorted by real part, then imaginary part.
    pub values: Vec<C64>,
    /// Unit-norm right eigenvectors, column `k` belongs to `values[k]`.
    pub right_vectors: ComplexMatrix,
    /// Unit-norm left eigenvectors `w` with `w† A = λ w†`, when requested.
    pub left_vectors: Option<ComplexMatrix>,
    /// `‖A v_k − λ_k v_k‖` for every right pair.
    pub residuals: Vec<f64>,
}

impl EigenDecomposition {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Full eigen-decomposition with the default tolerances.
pub fn eigen_decompose(a: &ComplexMatrix, want_left: bool) -> Result<EigenDecomposition> {
    eigen_decompose_with(a, want_left, &Tolerances::default())
}

/// Eigenvalues only, sorted by (re, im).
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C64>> {
    Ok(eigen_decompose(a, false)?.values)
}

pub fn eigen_decompose_with(
    a: &ComplexMatrix,
    want_left: bool,
    tol: &Tolerances,
) -> Result<EigenDecomposition> {
    let n = a.ensure_square()?;
    if n > tol.max_dim {
        return Err(Error::TooLarge {
            dim: n,
            max: tol.max_dim,
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }

    let mut h = a.clone();
    let scaling = balance(&mut h);
    let mut z = hessenberg(&mut h);
    schur(&mut h, &mut z, tol.max_iter_factor)?;

    let values: Vec<C64> = h.diag();
    let x = triangular_right_vectors(&h);
    let mut right = &z * &x;
    for i in 0..n {
        for j in 0..n {
            right[(i, j)] *= scaling[i];
        }
    }
    normalise_columns(&mut right);

    let left = want_left.then(|| {
        let y = triangular_left_vectors(&h);
        let mut w = &z * &y;
        for i in 0..n {
            for j in 0..n {
                w[(i, j)] /= scaling[i];
            }
        }
        normalise_columns(&mut w);
        w
    });

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| cmp_re_im(&values[i], &values[j]));
    let values: Vec<C64> = order.iter().map(|&k| values[k]).collect();
    let permute = |m: &ComplexMatrix| {
        let mut out = ComplexMatrix::zeros(n, n);
        for (new, &old) in order.iter().enumerate() {
            out.set_column(new, &m.column(old));
        }
        out
    };
    let right = permute(&right);
    let left = left.as_ref().map(permute);

    let residuals = (0..n)
        .map(|k| {
            let v = right.column(k);
            let av = a.mat_vec(&v);
            av.iter()
                .zip(&v)
                .map(|(x, y)| (x - values[k] * y).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect();

    if !right.is_finite() || values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(EigenDecomposition {
        values,
        right_vectors: right,
        left_vectors: left,
        residuals,
    })
}

fn abs1(x: C64) -> f64 {
    x.re.abs() + x.im.abs()
}

/// Diagonal similarity by powers of two that roughly equalises row and
/// column norms. Returns the scaling `D` with `A_balanced = D⁻¹ A D`.
fn balance(a: &mut ComplexMatrix) -> Vec<f64> {
    let n = a.dim();
    let mut d = vec![1.0; n];
    let mut converged = false;
    let mut sweeps = 0;
    while !converged && sweeps < 100 {
        converged = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += abs1(a[(j, i)]);
                    r += abs1(a[(i, j)]);
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / 2.0;
            while c < g {
                f *= 2.0;
                c *= 4.0;
            }
            g = r * 2.0;
            while c > g {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                d[i] *= f;
                for j in 0..n {
                    a[(i, j)] /= f;
                    a[(j, i)] *= f;
                }
            }
        }
    }
    d
}

/// Householder reduction to upper Hessenberg form in place; returns the
/// accumulated unitary `Q` with `A_in = Q H Q†`.
fn hessenberg(a: &mut ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut q = ComplexMatrix::identity(n);
    if n < 3 {
        return q;
    }
    for k in 0..n - 2 {
        let tail_norm: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>();
        if tail_norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let norm = (tail_norm + x0.norm_sqr()).sqrt();
        let phase = if x0.norm() == 0.0 {
            c64(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= vnorm;
        }
        // A ← (I − 2vv†) A
        for j in 0..n {
            let dot: C64 = v
                .iter()
                .enumerate()
                .map(|(t, vt)| vt.conj() * a[(k + 1 + t, j)])
                .sum();
            for (t, vt) in v.iter().enumerate() {
                a[(k + 1 + t, j)] -= vt * dot * 2.0;
            }
        }
        // A ← A (I − 2vv†), Q ← Q (I − 2vv†)
        for m in [&mut *a, &mut q] {
            for i in 0..n {
                let dot: C64 = v
                    .iter()
                    .enumerate()
                    .map(|(t, vt)| m[(i, k + 1 + t)] * vt)
                    .sum();
                for (t, vt) in v.iter().enumerate() {
                    m[(i, k + 1 + t)] -= dot * vt.conj() * 2.0;
                }
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = c64(0.0, 0.0);
        }
    }
    q
}

/// Rotation `[c s; −s̄ c]` with real `c` that maps `(x, y)` to `(r, 0)`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, c64(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let norm = ax.hypot(ay);
    (ax / norm, (x / ax) * y.conj() / norm)
}

fn rotate_rows(m: &mut ComplexMatrix, k: usize, c: f64, s: C64, cols: std::ops::Range<usize>) {
    for j in cols {
        let a = m[(k, j)];
        let b = m[(k + 1, j)];
        m[(k, j)] = a * c + s * b;
        m[(k + 1, j)] = -s.conj() * a + b * c;
    }
}

fn rotate_cols(m: &mut ComplexMatrix, k: usize, c: f64, s: C64, rows: std::ops::Range<usize>) {
    for i in rows {
        let a = m[(i, k)];
        let b = m[(i, k + 1)];
        m[(i, k)] = a * c + b * s.conj();
        m[(i, k + 1)] = -a * s + b * c;
    }
}

/// Eigenvalue of the trailing 2×2 block closer to its last diagonal entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let plus = p + disc;
    let minus = p - disc;
    let denom = if plus.norm() >= minus.norm() { plus } else { minus };
    if denom.norm() == 0.0 {
        d
    } else {
        d - bc / denom
    }
}

/// Complex single-shift QR on an upper Hessenberg matrix, reducing it to the
/// upper triangular Schur form `T` and accumulating the rotations into `z`.
fn schur(h: &mut ComplexMatrix, z: &mut ComplexMatrix, iter_factor: usize) -> Result<()> {
    let n = h.dim();
    let max_its = iter_factor * n.max(10);
    let mut ihi = n - 1;
    while ihi > 0 {
        let mut its = 0;
        loop {
            let mut l = 0;
            for k in (1..=ihi).rev() {
                let sub = abs1(h[(k, k - 1)]);
                if sub <= SAFE_MIN {
                    l = k;
                    break;
                }
                let mut tst = abs1(h[(k - 1, k - 1)]) + abs1(h[(k, k)]);
                if tst == 0.0 {
                    if k >= 2 {
                        tst += abs1(h[(k - 1, k - 2)]);
                    }
                    if k + 1 <= ihi {
                        tst += abs1(h[(k + 1, k)]);
                    }
                }
                if sub <= ULP * tst {
                    // Ahues–Tisseur refinement of the deflation test.
                    let ab = abs1(h[(k, k - 1)]).max(abs1(h[(k - 1, k)]));
                    let ba = abs1(h[(k, k - 1)]).min(abs1(h[(k - 1, k)]));
                    let diff = h[(k - 1, k - 1)] - h[(k, k)];
                    let aa = abs1(h[(k, k)]).max(abs1(diff));
                    let bb = abs1(h[(k, k)]).min(abs1(diff));
                    let s = aa + ab;
                    if ba * (ab / s) <= SAFE_MIN.max(ULP * (bb * (aa / s))) {
                        l = k;
                        break;
                    }
                }
            }
            if l > 0 {
                h[(l, l - 1)] = c64(0.0, 0.0);
            }
            if l == ihi {
                break;
            }
            if its >= max_its {
                return Err(Error::NoConvergence {
                    iterations: its,
                    row: ihi,
                });
            }

            let shift = if its == 10 {
                h[(l, l)] + h[(l + 1, l)].re.abs() * 0.75
            } else if its == 20 {
                h[(ihi, ihi)] + h[(ihi, ihi - 1)].re.abs() * 0.75
            } else {
                wilkinson_shift(
                    h[(ihi - 1, ihi - 1)],
                    h[(ihi - 1, ihi)],
                    h[(ihi, ihi - 1)],
                    h[(ihi, ihi)],
                )
            };

            for k in l..ihi {
                let (x, y) = if k == l {
                    (h[(l, l)] - shift, h[(l + 1, l)])
                } else {
                    (h[(k, k - 1)], h[(k + 1, k - 1)])
                };
                let (c, s) = givens(x, y);
                let start = if k == l { l } else { k - 1 };
                rotate_rows(h, k, c, s, start..n);
                rotate_cols(h, k, c, s, 0..(k + 3).min(ihi + 1));
                rotate_cols(z, k, c, s, 0..n);
                if k > l {
                    h[(k + 1, k - 1)] = c64(0.0, 0.0);
                }
            }
            its += 1;
        }
        ihi -= 1;
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = c64(0.0, 0.0);
        }
    }
    Ok(())
}

fn perturbation_floor(t: &ComplexMatrix) -> f64 {
    (ULP * t.max_abs()).max(SAFE_MIN / ULP)
}

/// Right eigenvectors of an upper triangular matrix by back-substitution.
fn triangular_right_vectors(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.dim();
    let smin = perturbation_floor(t);
    let mut x = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut v = vec![c64(0.0, 0.0); n];
        v[k] = c64(1.0, 0.0);
        for j in (0..k).rev() {
            let mut acc = c64(0.0, 0.0);
            for i in j + 1..=k {
                acc += t[(j, i)] * v[i];
            }
            let mut denom = t[(j, j)] - lambda;
            if denom.norm() < smin {
                denom = c64(smin, 0.0);
            }
            v[j] = -acc / denom;
            rescale_if_large(&mut v[j..=k]);
        }
        x.set_column(k, &v);
    }
    x
}

/// Vectors `y` with `y† T = λ y†` for an upper triangular matrix.
fn triangular_left_vectors(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.dim();
    let smin = perturbation_floor(t);
    let mut y = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        // u is the row vector y†.
        let mut u = vec![c64(0.0, 0.0); n];
        u[k] = c64(1.0, 0.0);
        for j in k + 1..n {
            let mut acc = c64(0.0, 0.0);
            for i in k..j {
                acc += u[i] * t[(i, j)];
            }
            let mut denom = t[(j, j)] - lambda;
            if denom.norm() < smin {
                denom = c64(smin, 0.0);
            }
            u[j] = -acc / denom;
            rescale_if_large(&mut u[k..=j]);
        }
        let col: Vec<C64> = u.iter().map(|x| x.conj()).collect();
        y.set_column(k, &col);
    }
    y
}

fn rescale_if_large(v: &mut [C64]) {
    let big = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if big > 1e100 {
        for x in v.iter_mut() {
            *x /= big;
        }
    }
}

fn normalise_columns(m: &mut ComplexMatrix) {
    for j in 0..m.cols() {
        let col = m.column(j);
        let big = col.iter().map(|x| x.norm()).fold(0.0, f64::max);
        if big == 0.0 {
            continue;
        }
        let scaled: Vec<C64> = col.iter().map(|x| x / big).collect();
        let norm = scaled.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let unit: Vec<C64> = scaled.iter().map(|x| x / norm).collect();
        m.set_column(j, &unit);
    }
}
