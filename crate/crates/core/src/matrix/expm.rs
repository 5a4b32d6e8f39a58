//! Scaling and squaring with diagonal Padé approximants of order 3, 5, 7, 9
//! or 13, chosen from the 1-norm (Higham's 2005 thresholds).

use super::{CMatrix, Lu};
use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
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
const B13: [f64; 14] = [
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

const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539_398_330_063_23e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
];
const THETA13: f64 = 5.371920351148152e0;
const MAX_SQUARINGS: i32 = 1000;

fn axpy<T: Real>(acc: &mut CMatrix<T>, coef: f64, m: &CMatrix<T>) {
    let c = Cx::new(T::of(coef), T::zero());
    for i in 0..acc.rows() {
        for j in 0..acc.cols() {
            acc[(i, j)] += m[(i, j)] * c;
        }
    }
}

fn pade_low<T: Real>(a: &CMatrix<T>, b: &[f64]) -> Result<(CMatrix<T>, CMatrix<T>)> {
    let n = a.rows();
    let a2 = a.matmul(a)?;
    let mut even_pow = CMatrix::identity(n);
    let mut u_inner = CMatrix::zeros(n, n);
    let mut v = CMatrix::zeros(n, n);
    let m = b.len() - 1;
    let mut k = 0;
    while k <= m {
        axpy(&mut v, b[k], &even_pow);
        if k < m {
            axpy(&mut u_inner, b[k + 1], &even_pow);
        }
        even_pow = even_pow.matmul(&a2)?;
        k += 2;
    }
    Ok((a.matmul(&u_inner)?, v))
}

fn pade13<T: Real>(a: &CMatrix<T>) -> Result<(CMatrix<T>, CMatrix<T>)> {
    let n = a.rows();
    let b = &B13;
    let id = CMatrix::identity(n);
    let a2 = a.matmul(a)?;
    let a4 = a2.matmul(&a2)?;
    let a6 = a4.matmul(&a2)?;

    let mut w1 = CMatrix::zeros(n, n);
    axpy(&mut w1, b[13], &a6);
    axpy(&mut w1, b[11], &a4);
    axpy(&mut w1, b[9], &a2);
    let mut w = a6.matmul(&w1)?;
    axpy(&mut w, b[7], &a6);
    axpy(&mut w, b[5], &a4);
    axpy(&mut w, b[3], &a2);
    axpy(&mut w, b[1], &id);
    let u = a.matmul(&w)?;

    let mut z1 = CMatrix::zeros(n, n);
    axpy(&mut z1, b[12], &a6);
    axpy(&mut z1, b[10], &a4);
    axpy(&mut z1, b[8], &a2);
    let mut v = a6.matmul(&z1)?;
    axpy(&mut v, b[6], &a6);
    axpy(&mut v, b[4], &a4);
    axpy(&mut v, b[2], &a2);
    axpy(&mut v, b[0], &id);
    Ok((u, v))
}

/// Matrix exponential `e^A`.
pub fn expm<T: Real>(a: &CMatrix<T>) -> Result<CMatrix<T>> {
    let n = a.dim()?;
    if !a.is_finite() {
        return Err(Error::Range("non-finite input".into()));
    }
    let norm = a.norm_one().as_f64();
    if norm == 0.0 {
        return Ok(CMatrix::identity(n));
    }

    let (mut scaled, squarings) = match THETA.iter().find(|(_, th)| norm <= *th) {
        Some(&(m, _)) => {
            let (u, v) = match m {
                3 => pade_low(a, &B3)?,
                5 => pade_low(a, &B5)?,
                7 => pade_low(a, &B7)?,
                _ => pade_low(a, &B9)?,
            };
            (rational(&u, &v)?, 0)
        }
        None => {
            let s = ((norm / THETA13).log2().ceil() as i32).max(0);
            if s > MAX_SQUARINGS {
                return Err(Error::Range(format!("1-norm {norm:e} needs {s} squarings")));
            }
            let factor = T::of(2f64.powi(-s));
            let (u, v) = pade13(&a.scale_real(factor))?;
            (rational(&u, &v)?, s)
        }
    };
    for _ in 0..squarings {
        scaled = scaled.matmul(&scaled)?;
        if !scaled.is_finite() {
            return Err(Error::Range("overflow during squaring".into()));
        }
    }
    if !scaled.is_finite() {
        return Err(Error::Range("non-finite result".into()));
    }
    Ok(scaled)
}

/// `(V − U)⁻¹ (V + U)`.
fn rational<T: Real>(u: &CMatrix<T>, v: &CMatrix<T>) -> Result<CMatrix<T>> {
    let p = v.try_add(u)?;
    let q = v.try_sub(u)?;
    Lu::factor(&q)
        .map_err(|_| Error::Range("singular Padé denominator".into()))?
        .solve(&p)
}
