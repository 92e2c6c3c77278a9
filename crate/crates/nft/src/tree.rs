//! Fast direct scattering on the full conjugate grid via a product tree.
//!
//! Each cell's split propagator `Z^{1/2} U Z^{1/2}` can be written, up to a
//! total prefactor collected at the end, as a 3×3 matrix whose entries are
//! polynomials of degree ≤ 1 in `s = e^{2jλh}`. The ordered product over all
//! cells is then a matrix of polynomials of degree < n, evaluated on the
//! conjugate grid (where the `s` values are roots of unity) with one FFT per
//! matrix entry. Building the product pairwise over a binary tree with
//! FFT-based convolutions costs O(n log² n) — this is the receiver-side
//! workhorse; [`scatter_march`](crate::forward::scatter_march) computes the
//! identical quantities one λ at a time.

use signal_core::{fft_in_place, ifft_in_place, C64};

use crate::forward::cell_csd;
use crate::grid::ScatteringGrid;
use crate::ScatterData;

struct PolyMat {
    m: [[Vec<C64>; 3]; 3],
}

fn leaf(q1: C64, q2: C64, h: f64) -> PolyMat {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let r2 = q1.norm_sqr() + q2.norm_sqr();
    let (u00, u01, u02, u10, u11, u12, u20, u21, u22);
    if r2 > 1e-300 {
        let (c, s, d) = cell_csd(r2, h);
        u00 = C64::new(c, 0.0);
        u01 = s * q1;
        u02 = s * q2;
        u10 = -s * q1.conj();
        u11 = one + d * q1.norm_sqr();
        u12 = d * q1.conj() * q2;
        u20 = -s * q2.conj();
        u21 = d * q2.conj() * q1;
        u22 = one + d * q2.norm_sqr();
    } else {
        u00 = one;
        u01 = zero;
        u02 = zero;
        u10 = zero;
        u11 = one;
        u12 = zero;
        u20 = zero;
        u21 = zero;
        u22 = one;
    }
    // Column 0 is constant in s; columns 1 and 2 carry one factor of s.
    PolyMat {
        m: [
            [vec![u00], vec![zero, u01], vec![zero, u02]],
            [vec![u10], vec![zero, u11], vec![zero, u12]],
            [vec![u20], vec![zero, u21], vec![zero, u22]],
        ],
    }
}

/// Schoolbook polynomial multiply-accumulate: `acc += p · q`.
fn mac_naive(acc: &mut [C64], p: &[C64], q: &[C64]) {
    for (i, &pv) in p.iter().enumerate() {
        if pv.norm_sqr() == 0.0 {
            continue;
        }
        for (j, &qv) in q.iter().enumerate() {
            acc[i + j] += pv * qv;
        }
    }
}

/// Ordered product `a · b` of two polynomial matrices (`a` is applied last).
fn combine(a: &PolyMat, b: &PolyMat) -> PolyMat {
    let max_a = a.m.iter().flatten().map(Vec::len).max().unwrap();
    let max_b = b.m.iter().flatten().map(Vec::len).max().unwrap();
    let conv_len = max_a + max_b - 1;

    let zero = C64::new(0.0, 0.0);
    let out_len = |a: &PolyMat, b: &PolyMat, i: usize, j: usize| {
        (0..3)
            .map(|k| a.m[i][k].len() + b.m[k][j].len() - 1)
            .max()
            .unwrap()
    };

    if conv_len <= 96 {
        // Small blocks: direct convolution beats FFT overhead.
        let mut out = PolyMat {
            m: std::array::from_fn(|i| {
                std::array::from_fn(|j| vec![zero; out_len(a, b, i, j)])
            }),
        };
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    mac_naive(&mut out.m[i][j], &a.m[i][k], &b.m[k][j]);
                }
            }
        }
        return out;
    }

    // FFT path: transform all 18 entry polynomials once at a shared length,
    // multiply-accumulate pointwise, inverse-transform the 9 results.
    let fft_len = conv_len.next_power_of_two();
    let transform = |polys: &[[Vec<C64>; 3]; 3]| -> Vec<Vec<C64>> {
        polys
            .iter()
            .flatten()
            .map(|p| {
                let mut buf = vec![zero; fft_len];
                buf[..p.len()].copy_from_slice(p);
                fft_in_place(&mut buf);
                buf
            })
            .collect()
    };
    let fa = transform(&a.m);
    let fb = transform(&b.m);

    let mut out = PolyMat {
        m: std::array::from_fn(|_| std::array::from_fn(|_| Vec::new())),
    };
    let scale = 1.0 / fft_len as f64;
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = vec![zero; fft_len];
            for k in 0..3 {
                let (pa, pb) = (&fa[3 * i + k], &fb[3 * k + j]);
                for t in 0..fft_len {
                    acc[t] += pa[t] * pb[t];
                }
            }
            ifft_in_place(&mut acc);
            acc.truncate(out_len(a, b, i, j));
            for v in &mut acc {
                *v *= scale;
            }
            out.m[i][j] = acc;
        }
    }
    out
}

fn product(q1: &[C64], q2: &[C64], h: f64, lo: usize, hi: usize) -> PolyMat {
    if hi - lo == 1 {
        return leaf(q1[lo], q2[lo], h);
    }
    let mid = (lo + hi) / 2;
    let left = product(q1, q2, h, lo, mid);
    let right = product(q1, q2, h, mid, hi);
    combine(&right, &left)
}

/// Evaluate polynomial coefficients on the conjugate grid (`s_m = −ω^m`).
fn values_on_grid(coeffs: &[C64], n: usize) -> Vec<C64> {
    let mut buf = vec![C64::new(0.0, 0.0); n];
    let take = coeffs.len().min(n);
    buf[..take].copy_from_slice(&coeffs[..take]);
    for (k, v) in buf.iter_mut().enumerate() {
        if k % 2 == 1 {
            *v = -*v;
        }
    }
    ifft_in_place(&mut buf);
    buf
}

/// Direct scattering of the split scheme on the full conjugate grid.
///
/// Returns (a, b1, b2) at `grid.lambdas()`. Identical (to rounding) to
/// running [`scatter_march`](crate::forward::scatter_march) over the same
/// grid, at a fraction of the cost for large n.
pub fn scatter_fast(q1: &[C64], q2: &[C64], grid: &ScatteringGrid) -> ScatterData {
    let n = grid.n;
    assert_eq!(q1.len(), n);
    assert_eq!(q2.len(), n);
    assert!(n % 2 == 0, "conjugate-grid evaluation requires even n");

    let p = product(q1, q2, grid.h, 0, n);
    let a_vals = values_on_grid(&p.m[0][0], n);
    let b1_vals = values_on_grid(&p.m[1][0], n);
    let b2_vals = values_on_grid(&p.m[2][0], n);

    // Boundary phases: a(λ) = A(s); b_p(λ) = e^{−2jλt0} s^{−(n−1)} B_p(s).
    let lambdas = grid.lambdas();
    let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let mut out = ScatterData {
        a: a_vals,
        b1: Vec::with_capacity(n),
        b2: Vec::with_capacity(n),
    };
    for m in 0..n {
        let ang = -2.0 * lambdas[m] * grid.t0
            - 2.0 * std::f64::consts::PI * (m as f64) * ((n - 1) as f64) / n as f64;
        let ph = C64::from_polar(sign, ang);
        out.b1.push(b1_vals[m] * ph);
        out.b2.push(b2_vals[m] * ph);
    }
    out
}
