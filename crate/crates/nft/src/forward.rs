//! Direct scattering by marching a 3×3 transfer matrix across the samples.
//!
//! Per cell the propagator factorises as `Z^{1/2} U Z^{1/2}` where
//! `Z = diag(e^{−jλh}, e^{jλh}, e^{jλh})` carries the free evolution and
//! `U = exp(h·N_k)` the potential coupling (a second-order accurate split).
//! `U` has the closed form, with `r² = |q1|² + |q2|²`:
//!
//! ```text
//! C = cos(rh),  S = sin(rh)/r,  D = (C − 1)/r²
//! U = [  C      S·q1          S·q2        ]
//!     [ −S·q1*  1 + D·|q1|²   D·q1*·q2    ]
//!     [ −S·q2*  D·q2*·q1      1 + D·|q2|² ]
//! ```
//!
//! [`scatter_march`] evaluates any set of λ values with this scheme;
//! [`scatter_exact`] replaces the split by the exact per-cell matrix
//! exponential and serves as the reference implementation for tests.

use signal_core::C64;

use crate::grid::ScatteringGrid;
use crate::ScatterData;

/// Split-scheme coefficients (C, S, D) for one constant cell.
#[inline]
pub(crate) fn cell_csd(r2: f64, h: f64) -> (f64, f64, f64) {
    let r = r2.sqrt();
    let c = (r * h).cos();
    let s = if r > 1e-150 { (r * h).sin() / r } else { h };
    let d = if r2 > 1e-300 {
        (c - 1.0) / r2
    } else {
        -h * h / 2.0
    };
    (c, s, d)
}

/// Direct scattering with the split scheme at arbitrary λ values.
///
/// `q1`, `q2` are the two polarisation components on `grid`; the returned
/// coefficients are sampled at `lambdas`. Accuracy is O(h²) with a small
/// constant; on the conjugate grid the result agrees with [`scatter_fast`]
/// (same discrete system) to rounding error.
///
/// [`scatter_fast`]: crate::tree::scatter_fast
pub fn scatter_march(q1: &[C64], q2: &[C64], grid: &ScatteringGrid, lambdas: &[f64]) -> ScatterData {
    assert_eq!(q1.len(), grid.n);
    assert_eq!(q2.len(), grid.n);
    let nl = lambdas.len();
    let h = grid.h;
    let tau_start = grid.tau_start();

    // State vectors, split into re/im so the λ loop vectorises.
    let mut v0r = vec![0.0f64; nl];
    let mut v0i = vec![0.0f64; nl];
    let mut v1r = vec![0.0f64; nl];
    let mut v1i = vec![0.0f64; nl];
    let mut v2r = vec![0.0f64; nl];
    let mut v2i = vec![0.0f64; nl];

    // Half-cell free-evolution phases per λ: v0 gets e^{−jλh/2}, v1/v2 e^{+jλh/2}.
    let mut ph_c = vec![0.0f64; nl];
    let mut ph_s = vec![0.0f64; nl];
    for (i, &lam) in lambdas.iter().enumerate() {
        let (s, c) = (lam * h / 2.0).sin_cos();
        ph_c[i] = c;
        ph_s[i] = s;
        // v(τ_start) = (e^{−jλτ_start}, 0, 0)
        let (ss, cc) = (lam * tau_start).sin_cos();
        v0r[i] = cc;
        v0i[i] = -ss;
    }

    for k in 0..grid.n {
        let (a1, a2) = (q1[k], q2[k]);
        let r2 = a1.norm_sqr() + a2.norm_sqr();
        if r2 > 1e-300 {
            let (cc, ss, dd) = cell_csd(r2, h);
            let (a1r, a1i, a2r, a2i) = (a1.re, a1.im, a2.re, a2.im);
            for i in 0..nl {
                let (c, s) = (ph_c[i], ph_s[i]);
                // half free evolution
                let t0r = v0r[i] * c + v0i[i] * s;
                let t0i = v0i[i] * c - v0r[i] * s;
                let t1r = v1r[i] * c - v1i[i] * s;
                let t1i = v1i[i] * c + v1r[i] * s;
                let t2r = v2r[i] * c - v2i[i] * s;
                let t2i = v2i[i] * c + v2r[i] * s;
                // potential coupling: p = q1 v1 + q2 v2
                let pr = a1r * t1r - a1i * t1i + a2r * t2r - a2i * t2i;
                let pi = a1r * t1i + a1i * t1r + a2r * t2i + a2i * t2r;
                let w0r = cc * t0r + ss * pr;
                let w0i = cc * t0i + ss * pi;
                let mur = -ss * t0r + dd * pr;
                let mui = -ss * t0i + dd * pi;
                // v_p += mu · q_p*
                let u1r = t1r + mur * a1r + mui * a1i;
                let u1i = t1i + mui * a1r - mur * a1i;
                let u2r = t2r + mur * a2r + mui * a2i;
                let u2i = t2i + mui * a2r - mur * a2i;
                // second half free evolution
                v0r[i] = w0r * c + w0i * s;
                v0i[i] = w0i * c - w0r * s;
                v1r[i] = u1r * c - u1i * s;
                v1i[i] = u1i * c + u1r * s;
                v2r[i] = u2r * c - u2i * s;
                v2i[i] = u2i * c + u2r * s;
            }
        } else {
            // empty cell: one full free-evolution step
            for i in 0..nl {
                let (c, s) = (ph_c[i], ph_s[i]);
                let (c2, s2) = (c * c - s * s, 2.0 * s * c);
                let t0r = v0r[i] * c2 + v0i[i] * s2;
                let t0i = v0i[i] * c2 - v0r[i] * s2;
                v0r[i] = t0r;
                v0i[i] = t0i;
                let t1r = v1r[i] * c2 - v1i[i] * s2;
                let t1i = v1i[i] * c2 + v1r[i] * s2;
                v1r[i] = t1r;
                v1i[i] = t1i;
                let t2r = v2r[i] * c2 - v2i[i] * s2;
                let t2i = v2i[i] * c2 + v2r[i] * s2;
                v2r[i] = t2r;
                v2i[i] = t2i;
            }
        }
    }

    // Strip the boundary phases: a = e^{jλτ_end} v0, b_p = e^{−jλτ_end} v_p.
    let tau_end = grid.tau_end();
    let mut out = ScatterData {
        a: Vec::with_capacity(nl),
        b1: Vec::with_capacity(nl),
        b2: Vec::with_capacity(nl),
    };
    for (i, &lam) in lambdas.iter().enumerate() {
        let (s, c) = (lam * tau_end).sin_cos();
        out.a.push(C64::new(
            v0r[i] * c - v0i[i] * s,
            v0i[i] * c + v0r[i] * s,
        ));
        out.b1.push(C64::new(
            v1r[i] * c + v1i[i] * s,
            v1i[i] * c - v1r[i] * s,
        ));
        out.b2.push(C64::new(
            v2r[i] * c + v2i[i] * s,
            v2i[i] * c - v2r[i] * s,
        ));
    }
    out
}

/// Direct scattering with the exact per-cell matrix exponential.
///
/// Slower and not invertible by the layer peeler, but free of splitting
/// error: the per-cell propagator for a constant potential is evaluated in
/// closed form with `κ = sqrt(λ² + r²)`. Used as the convergence reference.
pub fn scatter_exact(q1: &[C64], q2: &[C64], grid: &ScatteringGrid, lambdas: &[f64]) -> ScatterData {
    assert_eq!(q1.len(), grid.n);
    assert_eq!(q2.len(), grid.n);
    let h = grid.h;
    let tau_start = grid.tau_start();
    let nl = lambdas.len();

    let mut a = Vec::with_capacity(nl);
    let mut b1 = Vec::with_capacity(nl);
    let mut b2 = Vec::with_capacity(nl);

    for &lam in lambdas {
        let mut v0 = C64::from_polar(1.0, -lam * tau_start);
        let mut v1 = C64::new(0.0, 0.0);
        let mut v2 = C64::new(0.0, 0.0);
        for k in 0..grid.n {
            let (a1, a2) = (q1[k], q2[k]);
            let r2 = a1.norm_sqr() + a2.norm_sqr();
            let kap = (lam * lam + r2).sqrt().max(1e-300);
            let c = (kap * h).cos();
            let x = (kap * h).sin() / kap;
            let t00 = C64::new(c, -lam * x);
            let ejl = C64::from_polar(1.0, lam * h);
            if r2 > 1e-300 {
                let p = a1 * v1 + a2 * v2;
                let w0 = t00 * v0 + x * p;
                // polarisation block: e^{jλh} I + (c + jλx − e^{jλh}) q̄ qᵀ / r²
                let g = (C64::new(c, lam * x) - ejl) / r2;
                let w1 = ejl * v1 + a1.conj() * (g * p) - x * a1.conj() * v0;
                let w2 = ejl * v2 + a2.conj() * (g * p) - x * a2.conj() * v0;
                v0 = w0;
                v1 = w1;
                v2 = w2;
            } else {
                v0 = t00 * v0;
                v1 *= ejl;
                v2 *= ejl;
            }
        }
        let tau_end = grid.tau_end();
        a.push(C64::from_polar(1.0, lam * tau_end) * v0);
        b1.push(C64::from_polar(1.0, -lam * tau_end) * v1);
        b2.push(C64::from_polar(1.0, -lam * tau_end) * v2);
    }
    ScatterData { a, b1, b2 }
}
