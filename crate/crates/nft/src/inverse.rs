//! Waveform synthesis from scattering data by coefficient-domain layer
//! peeling.
//!
//! On the conjugate grid the forward split scheme is, per cell, a matrix of
//! polynomials in `s = e^{2jλh}`; the full transfer is degree < n. Peeling
//! inverts it cell by cell from the outside in: the leading coefficient
//! ratio `ρ_p = β_p[0]/α[0]` determines the last cell's potential exactly,
//! its inverse propagator is applied to the coefficient vectors, and the
//! degrees shrink by one. The result is the *exact* algebraic inverse of
//! [`scatter_fast`](crate::tree::scatter_fast) /
//! [`scatter_march`](crate::forward::scatter_march) on the same grid, so a
//! synthesis→scatter round trip reproduces the spectrum to rounding error.

use signal_core::{fft_in_place, C64};

use crate::grid::ScatteringGrid;
use crate::NftError;

/// `F(s_m)` values on the conjugate grid → polynomial coefficients.
fn coeffs_from_values(vals: &[C64]) -> Vec<C64> {
    let n = vals.len();
    let mut buf = vals.to_vec();
    fft_in_place(&mut buf);
    let scale = 1.0 / n as f64;
    for (k, v) in buf.iter_mut().enumerate() {
        *v *= if k % 2 == 1 { -scale } else { scale };
    }
    buf
}

/// Synthesise the dual-polarisation waveform whose scattering data on
/// `grid` equals `(a, b1, b2)` (all sampled on `grid.lambdas()`).
///
/// The caller provides `a` consistent with `(b1, b2)` — typically from
/// [`a_from_b`](crate::spectrum::a_from_b) or carried through from a
/// forward transform. Fails if the running leading coefficient collapses,
/// which happens only for spectra that violate the unimodularity bound.
pub fn synthesise(
    a: &[C64],
    b1: &[C64],
    b2: &[C64],
    grid: &ScatteringGrid,
) -> Result<(Vec<C64>, Vec<C64>), NftError> {
    let n = grid.n;
    assert_eq!(a.len(), n);
    assert_eq!(b1.len(), n);
    assert_eq!(b2.len(), n);
    assert!(n % 2 == 0, "layer peeling runs on the even conjugate grid");

    // Strip boundary phases so the values are those of the raw coefficient
    // polynomials: B_p(s_m) = b_p(λ_m) · e^{2jλ_m t0} · s_m^{n−1}.
    let lambdas = grid.lambdas();
    let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let strip = |vals: &[C64]| -> Vec<C64> {
        let stripped: Vec<C64> = (0..n)
            .map(|m| {
                let ang = 2.0 * lambdas[m] * grid.t0
                    + 2.0 * std::f64::consts::PI * (m as f64) * ((n - 1) as f64) / n as f64;
                vals[m] * C64::from_polar(sign, ang)
            })
            .collect();
        coeffs_from_values(&stripped)
    };

    let mut alpha = coeffs_from_values(a);
    let mut beta1 = strip(b1);
    let mut beta2 = strip(b2);

    let mut q1 = vec![C64::new(0.0, 0.0); n];
    let mut q2 = vec![C64::new(0.0, 0.0); n];
    let h = grid.h;

    // Active coefficient count; degrees shrink as cells are peeled.
    let mut len = n;
    for k in (0..n).rev() {
        let a0 = alpha[0];
        // NaN-safe: any non-finite magnitude also fails this branch.
        if a0.norm_sqr() < 1e-300 || !a0.is_finite() {
            return Err(NftError::SingularSynthesis { layer: k });
        }
        let rho1 = beta1[0] / a0;
        let rho2 = beta2[0] / a0;
        let nr2 = rho1.norm_sqr() + rho2.norm_sqr();

        if nr2 > 1e-300 {
            let nr = nr2.sqrt();
            let theta = nr.atan();
            let scale = (theta / h) / nr;
            let g1 = -rho1.conj() * scale;
            let g2 = -rho2.conj() * scale;
            q1[k] = g1;
            q2[k] = g2;

            let r2 = g1.norm_sqr() + g2.norm_sqr();
            let c = theta.cos();
            let s = theta.sin() / (theta / h);
            let d = (c - 1.0) / r2;
            let g1c = g1.conj();
            let g2c = g2.conj();

            // Apply the inverse cell propagator to (α, β1, β2) and shift
            // the β degrees down by one.
            for i in 0..len {
                let w = g1 * beta1[i] + g2 * beta2[i];
                let al = alpha[i];
                alpha[i] = c * al - s * w;
                let sw = s * al + d * w;
                beta1[i] += g1c * sw;
                beta2[i] += g2c * sw;
            }
            for i in 0..len - 1 {
                beta1[i] = beta1[i + 1];
                beta2[i] = beta2[i + 1];
            }
            beta1[len - 1] = C64::new(0.0, 0.0);
            beta2[len - 1] = C64::new(0.0, 0.0);
        } else {
            q1[k] = C64::new(0.0, 0.0);
            q2[k] = C64::new(0.0, 0.0);
            for i in 0..len - 1 {
                beta1[i] = beta1[i + 1];
                beta2[i] = beta2[i + 1];
            }
            beta1[len - 1] = C64::new(0.0, 0.0);
            beta2[len - 1] = C64::new(0.0, 0.0);
        }

        // Enforce the known degree bounds of the remaining k-cell system.
        for v in &mut alpha[k..len] {
            *v = C64::new(0.0, 0.0);
        }
        if k >= 1 {
            for i in (k - 1)..len {
                beta1[i] = C64::new(0.0, 0.0);
                beta2[i] = C64::new(0.0, 0.0);
            }
        }
        len = len.min(k.max(1));
    }

    if q1.iter().chain(q2.iter()).any(|v| !v.is_finite()) {
        return Err(NftError::NonFinite {
            context: "layer-peeling synthesis output",
        });
    }
    Ok((q1, q2))
}
