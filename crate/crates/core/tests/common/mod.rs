//! Shared test oracles, independent of the production solver paths.

use nalgebra::DMatrix;
use rand::Rng;

/// Brute-force evaluation of V = ∫₀^∞ e^{Aτ} D e^{Aᵀτ} dτ.
///
/// The integrand is integrated by composite Simpson quadrature on an initial
/// panel [0, h] with h = 1/(2‖A‖_F), then extended by exact interval
/// doubling: ∫ over [T, 2T] equals e^{AT} (∫ over [0, T]) e^{AᵀT}. The
/// doubling stops once the increment is negligible, which requires A to be
/// Hurwitz. Everything rests on the matrix exponential, so the result is
/// independent of the algebraic Lyapunov solve it is used to check.
pub fn lyapunov_integral_oracle(a: &DMatrix<f64>, d: &DMatrix<f64>) -> DMatrix<f64> {
    let dim = a.nrows();
    assert_eq!(a.ncols(), dim);
    assert_eq!(d.nrows(), dim);

    let h = 0.5 / a.norm();
    let panels = 512usize;
    let step = h / panels as f64;

    // exp(A·step) once; e^{A t_k} accumulates by repeated multiplication.
    let exp_step = (a * step).exp();
    let integrand = |m: &DMatrix<f64>| m * d * m.transpose();

    let mut simpson = integrand(&DMatrix::identity(dim, dim));
    let mut exp_t = DMatrix::<f64>::identity(dim, dim);
    for k in 1..=panels {
        exp_t *= &exp_step;
        let weight = if k == panels {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        simpson += integrand(&exp_t) * weight;
    }
    // One Simpson sub-interval spans two panel steps.
    let mut v = simpson * (step / 3.0);

    // Interval doubling: V(2T) = V(T) + M V(T) Mᵀ with M = e^{AT}.
    let mut m = exp_t;
    for _ in 0..200 {
        let increment = &m * &v * m.transpose();
        let next = &v + &increment;
        if increment.norm() <= 1e-14 * next.norm() {
            return next;
        }
        v = next;
        m = &m * &m;
    }
    panic!("integral oracle did not converge; is A Hurwitz?");
}

/// Random Hurwitz drift matrix of the given dimension, paired with a random
/// nonnegative diagonal diffusion. The spectral abscissa is shifted to at
/// least `margin` below zero.
pub fn random_stable_system(
    rng: &mut impl Rng,
    dim: usize,
    margin: f64,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let raw = DMatrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    let abscissa = raw
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let a = &raw - DMatrix::identity(dim, dim) * (abscissa + margin);

    let mut d = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        // Roughly half the channels carry noise, like the physical diffusion
        // with its momentum-only entries; keep at least one nonzero.
        if rng.random_bool(0.5) || k == dim - 1 {
            let amp: f64 = rng.random_range(0.1..2.0);
            d[(k, k)] = amp * amp;
        }
    }
    (a, d)
}

/// Relative Frobenius distance between two matrices.
pub fn relative_error(x: &DMatrix<f64>, reference: &DMatrix<f64>) -> f64 {
    (x - reference).norm() / reference.norm()
}
