//! Dense complex linear algebra used by the operator constructors: matrix
//! products, a partial-pivot LU solve, and a scaling-and-squaring matrix
//! exponential (Pade approximants of orders 3..13 with the usual 1-norm
//! thresholds).

use ndarray::Array2;
use num_complex::Complex64;

pub(crate) type CMat = Array2<Complex64>;

pub(crate) fn identity(n: usize) -> CMat {
    let mut m = CMat::zeros((n, n));
    for i in 0..n {
        m[[i, i]] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Cache-friendly i-k-j product; `ndarray`'s generic fallback for complex
/// elements is noticeably slower at the sizes used here (up to 256x256).
pub(crate) fn matmul(a: &CMat, b: &CMat) -> CMat {
    let (n, k) = a.dim();
    let (kb, m) = b.dim();
    assert_eq!(k, kb, "matmul shape mismatch");
    let mut out = CMat::zeros((n, m));
    let bs = b.as_slice().expect("matmul: b not contiguous");
    let os = out.as_slice_mut().expect("matmul: out not contiguous");
    for i in 0..n {
        let orow = &mut os[i * m..(i + 1) * m];
        for l in 0..k {
            let av = a[[i, l]];
            if av.re == 0.0 && av.im == 0.0 {
                continue;
            }
            let brow = &bs[l * m..(l + 1) * m];
            for j in 0..m {
                orow[j] += av * brow[j];
            }
        }
    }
    out
}

pub(crate) fn matvec(a: &CMat, v: &[Complex64]) -> Vec<Complex64> {
    let (n, k) = a.dim();
    assert_eq!(k, v.len(), "matvec shape mismatch");
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 0..k {
            acc += a[[i, l]] * v[l];
        }
        out[i] = acc;
    }
    out
}

fn one_norm(a: &CMat) -> f64 {
    let (n, m) = a.dim();
    let mut best = 0.0f64;
    for j in 0..m {
        let mut s = 0.0;
        for i in 0..n {
            s += a[[i, j]].norm();
        }
        best = best.max(s);
    }
    best
}

/// Solves `A X = B` in place via LU with partial pivoting; `B` holds `X` on
/// return.
fn lu_solve(a: &mut CMat, b: &mut CMat) {
    let n = a.dim().0;
    let m = b.dim().1;
    for col in 0..n {
        // pivot
        let mut piv = col;
        let mut best = a[[col, col]].norm();
        for r in col + 1..n {
            let v = a[[r, col]].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if piv != col {
            for j in 0..n {
                let t = a[[col, j]];
                a[[col, j]] = a[[piv, j]];
                a[[piv, j]] = t;
            }
            for j in 0..m {
                let t = b[[col, j]];
                b[[col, j]] = b[[piv, j]];
                b[[piv, j]] = t;
            }
        }
        let d = a[[col, col]];
        for r in col + 1..n {
            let f = a[[r, col]] / d;
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            a[[r, col]] = f;
            for j in col + 1..n {
                let s = a[[col, j]];
                a[[r, j]] -= f * s;
            }
            for j in 0..m {
                let s = b[[col, j]];
                b[[r, j]] -= f * s;
            }
        }
    }
    // back substitution
    for col in (0..n).rev() {
        let d = a[[col, col]];
        for j in 0..m {
            b[[col, j]] /= d;
        }
        for r in 0..col {
            let f = a[[r, col]];
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for j in 0..m {
                let s = b[[col, j]];
                b[[r, j]] -= f * s;
            }
        }
    }
}

const THETA3: f64 = 1.495585217958292e-2;
const THETA5: f64 = 2.539398330063230e-1;
const THETA7: f64 = 9.504178996162932e-1;
const THETA9: f64 = 2.097847961257068;
const THETA13: f64 = 5.371920351148152;

fn pade_uv(a: &CMat, b: &[f64], powers: &[&CMat]) -> (CMat, CMat) {
    // powers = [A2, A4, ...] as needed; b has odd/even coefficients b0..bm.
    let n = a.dim().0;
    let mut u_inner = identity(n) * Complex64::new(b[1], 0.0);
    let mut v = identity(n) * Complex64::new(b[0], 0.0);
    for (idx, p) in powers.iter().enumerate() {
        let k = 2 * (idx + 1);
        u_inner = u_inner + (*p) * Complex64::new(b[k + 1], 0.0);
        v = v + (*p) * Complex64::new(b[k], 0.0);
    }
    (matmul(a, &u_inner), v)
}

/// Matrix exponential by scaling and squaring with Pade approximation.
pub(crate) fn expm(a: &CMat) -> CMat {
    let n = a.dim().0;
    assert_eq!(a.dim().0, a.dim().1, "expm requires a square matrix");
    if n == 0 {
        return CMat::zeros((0, 0));
    }
    let norm = one_norm(a);

    let a2 = matmul(a, a);
    if norm <= THETA3 {
        let b = [120.0, 60.0, 12.0, 1.0];
        let (u, v) = pade_uv(a, &b, &[&a2]);
        return pade_combine(u, v);
    }
    let a4 = matmul(&a2, &a2);
    if norm <= THETA5 {
        let b = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
        let (u, v) = pade_uv(a, &b, &[&a2, &a4]);
        return pade_combine(u, v);
    }
    let a6 = matmul(&a2, &a4);
    if norm <= THETA7 {
        let b = [
            17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
        ];
        let (u, v) = pade_uv(a, &b, &[&a2, &a4, &a6]);
        return pade_combine(u, v);
    }
    if norm <= THETA9 {
        let a8 = matmul(&a4, &a4);
        let b = [
            17643225600.0,
            8821612800.0,
            2075673600.0,
            302702400.0,
            30270240.0,
            2162160.0,
            110880.0,
            3960.0,
            90.0,
            1.0,
        ];
        let (u, v) = pade_uv(a, &b, &[&a2, &a4, &a6, &a8]);
        return pade_combine(u, v);
    }

    // order 13 with scaling
    let s = ((norm / THETA13).log2().ceil()).max(0.0) as u32;
    let scale = Complex64::new(0.5f64.powi(s as i32), 0.0);
    let a_s: CMat = a * scale;
    let a2 = matmul(&a_s, &a_s);
    let a4 = matmul(&a2, &a2);
    let a6 = matmul(&a2, &a4);
    let b: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let c = |x: f64| Complex64::new(x, 0.0);
    let w1 = &a6 * c(b[13]) + &a4 * c(b[11]) + &a2 * c(b[9]);
    let w2 = matmul(&a6, &w1) + &a6 * c(b[7]) + &a4 * c(b[5]) + &a2 * c(b[3]) + identity(n) * c(b[1]);
    let u = matmul(&a_s, &w2);
    let z1 = &a6 * c(b[12]) + &a4 * c(b[10]) + &a2 * c(b[8]);
    let v = matmul(&a6, &z1) + &a6 * c(b[6]) + &a4 * c(b[4]) + &a2 * c(b[2]) + identity(n) * c(b[0]);

    let mut r = pade_combine(u, v);
    for _ in 0..s {
        r = matmul(&r, &r);
    }
    r
}

fn pade_combine(u: CMat, v: CMat) -> CMat {
    let mut p = &v + &u;
    let mut q = &v - &u;
    lu_solve(&mut q, &mut p);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expm_zero_is_identity() {
        let a = CMat::zeros((5, 5));
        let e = expm(&a);
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(e[[i, j]].re, want, epsilon = 1e-15);
                assert_abs_diff_eq!(e[[i, j]].im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn expm_diagonal() {
        let mut a = CMat::zeros((3, 3));
        a[[0, 0]] = c(1.0, 0.0);
        a[[1, 1]] = c(-2.0, 0.0);
        a[[2, 2]] = c(0.0, 3.0);
        let e = expm(&a);
        assert_abs_diff_eq!(e[[0, 0]].re, 1f64.exp(), epsilon = 1e-13);
        assert_abs_diff_eq!(e[[1, 1]].re, (-2f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(e[[2, 2]].re, 3f64.cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(e[[2, 2]].im, 3f64.sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(e[[0, 1]].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn expm_nilpotent() {
        let mut a = CMat::zeros((2, 2));
        a[[0, 1]] = c(7.0, 0.0);
        let e = expm(&a);
        assert_abs_diff_eq!(e[[0, 0]].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e[[0, 1]].re, 7.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[[1, 0]].norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e[[1, 1]].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn expm_rotation_generator() {
        // exp([[0, t], [-t, 0]]) is a plane rotation by t.
        let t = 11.3;
        let mut a = CMat::zeros((2, 2));
        a[[0, 1]] = c(t, 0.0);
        a[[1, 0]] = c(-t, 0.0);
        let e = expm(&a);
        assert_abs_diff_eq!(e[[0, 0]].re, t.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(e[[0, 1]].re, t.sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(e[[1, 0]].re, -t.sin(), epsilon = 1e-12);
    }

    #[test]
    fn expm_inverse_of_negative() {
        // exp(A) exp(-A) = I for a dense well-conditioned A.
        let n = 24;
        let mut a = CMat::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                let x = ((i * 31 + j * 17) % 13) as f64 / 13.0 - 0.5;
                let y = ((i * 7 + j * 29) % 11) as f64 / 11.0 - 0.5;
                a[[i, j]] = c(0.4 * x, 0.4 * y);
            }
        }
        let e = expm(&a);
        let einv = expm(&(&a * c(-1.0, 0.0)));
        let p = matmul(&e, &einv);
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(p[[i, j]].re, want, epsilon = 1e-11);
                assert_abs_diff_eq!(p[[i, j]].im, 0.0, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn lu_solve_recovers_known_solution() {
        let n = 9;
        let mut a = CMat::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                a[[i, j]] = c(
                    1.0 / (1.0 + (i + 2 * j) as f64),
                    if i == j { 1.0 } else { 0.1 },
                );
            }
        }
        let x_true = identity(n) * c(2.0, -1.0);
        let b = matmul(&a, &x_true);
        let mut a2 = a.clone();
        let mut x = b.clone();
        lu_solve(&mut a2, &mut x);
        for i in 0..n {
            for j in 0..n {
                assert_abs_diff_eq!(x[[i, j]].re, x_true[[i, j]].re, epsilon = 1e-10);
                assert_abs_diff_eq!(x[[i, j]].im, x_true[[i, j]].im, epsilon = 1e-10);
            }
        }
    }
}
