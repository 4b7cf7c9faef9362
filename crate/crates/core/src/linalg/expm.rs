//! Matrix exponential by Pade-13 scaling and squaring (Higham 2005).

use super::{lu_solve, CMatrix};
use crate::scalar::{real, Scalar};
use num_complex::Complex;

const PADE13: [f64; 14] = [
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
const THETA13: f64 = 5.371920351148152;

/// `exp(A)` for a square complex matrix.
pub fn expm<T: Scalar>(a: &CMatrix<T>) -> CMatrix<T> {
    assert!(a.is_square(), "expm needs a square matrix");
    let n = a.rows();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let norm = a.one_norm();
    let mut squarings = 0usize;
    let mut work = a.clone();
    if norm.to_f64().unwrap_or(f64::INFINITY) > THETA13 {
        let ratio = (norm.to_f64().unwrap() / THETA13).log2().ceil();
        squarings = ratio.max(0.0) as usize;
        let scale = Complex::new(real::<T>(0.5f64.powi(squarings as i32)), T::zero());
        work = work.scale(scale);
    }

    let b: Vec<Complex<T>> = PADE13
        .iter()
        .map(|&x| Complex::new(real::<T>(x), T::zero()))
        .collect();

    let ident = CMatrix::identity(n);
    let a2 = work.mul(&work);
    let a4 = a2.mul(&a2);
    let a6 = a2.mul(&a4);

    // u = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let inner_u = a6.scale(b[13]).add(&a4.scale(b[11])).add(&a2.scale(b[9]));
    let u = work.mul(
        &a6.mul(&inner_u)
            .add(&a6.scale(b[7]))
            .add(&a4.scale(b[5]))
            .add(&a2.scale(b[3]))
            .add(&ident.scale(b[1])),
    );
    // v = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let inner_v = a6.scale(b[12]).add(&a4.scale(b[10])).add(&a2.scale(b[8]));
    let v = a6
        .mul(&inner_v)
        .add(&a6.scale(b[6]))
        .add(&a4.scale(b[4]))
        .add(&a2.scale(b[2]))
        .add(&ident.scale(b[0]));

    let mut r = lu_solve(&v.sub(&u), &v.add(&u));
    for _ in 0..squarings {
        r = r.mul(&r);
    }
    r
}
