//! Sampling grid for the scattering problem and its conjugate λ grid.

/// Uniform time grid in the dimensionless scattering frame.
///
/// Sample `k` sits at `τ_k = t0 + k·h`. Each sample is treated as a constant
/// potential over the cell `[τ_k − h/2, τ_k + h/2]`, so the grid covers
/// `[t0 − h/2, t0 + (n−1)·h + h/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringGrid {
    /// Number of samples.
    pub n: usize,
    /// Sample spacing in normalised time units.
    pub h: f64,
    /// Position of the first sample.
    pub t0: f64,
}

impl ScatteringGrid {
    /// Grid of `n` samples centred on τ = 0.
    pub fn centred(n: usize, h: f64) -> Self {
        ScatteringGrid {
            n,
            h,
            t0: -(n as f64) * h / 2.0 + h / 2.0,
        }
    }

    /// λ spacing of the conjugate grid: `π / (n·h)`.
    pub fn dlam(&self) -> f64 {
        std::f64::consts::PI / (self.n as f64 * self.h)
    }

    /// Conjugate λ grid: `λ_m = (m − n/2)·dλ`. The discrete transfer matrix
    /// is a polynomial in `s = e^{2jλh}`, and on this grid `s_m` runs over
    /// the n-th roots of unity (negated), which is what lets the product
    /// tree and the layer peeler use plain FFTs.
    pub fn lambdas(&self) -> Vec<f64> {
        assert!(self.n % 2 == 0, "conjugate grid requires an even sample count");
        let dlam = self.dlam();
        (0..self.n)
            .map(|m| (m as f64 - self.n as f64 / 2.0) * dlam)
            .collect()
    }

    /// Duration covered by the grid, `n·h`.
    pub fn span(&self) -> f64 {
        self.n as f64 * self.h
    }

    /// τ position of the leading cell edge, `t0 − h/2`.
    pub fn tau_start(&self) -> f64 {
        self.t0 - self.h / 2.0
    }

    /// τ position of the trailing cell edge.
    pub fn tau_end(&self) -> f64 {
        self.tau_start() + self.span()
    }
}
