//! Differential entropy estimators.
//!
//! The Kozachenko–Leonenko k-nearest-neighbour estimator is asymptotically
//! unbiased but converges slowly in high dimension, so alongside the raw
//! estimator there is a bias-corrected variant that subtracts the
//! estimator's error measured on a matched Gaussian surrogate — a synthetic
//! sample of the same size and covariance whose true entropy is known in
//! closed form.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use statrs::function::gamma::{digamma, ln_gamma};

const LN_2: f64 = std::f64::consts::LN_2;

/// Differential entropy in bits of a Gaussian with covariance `cov`:
/// `0.5 log2((2 pi e)^d det K)`.
///
/// # Panics
/// Panics if the covariance is not positive definite (after a small
/// diagonal jitter retry to absorb rounding).
pub fn gaussian_entropy_bits(cov: &DMatrix<f64>) -> f64 {
    let d = cov.nrows() as f64;
    let chol = cholesky_with_jitter(cov);
    let log2_det = 2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>() / LN_2;
    0.5 * (d * (2.0 * std::f64::consts::PI * std::f64::consts::E).log2() + log2_det)
}

/// Entropy in bits of independent Gaussians with the given variances — the
/// sum of per-dimension entropies, an upper bound on the joint entropy at
/// equal variances.
pub fn diagonal_entropy_bits(variances: &[f64]) -> f64 {
    variances
        .iter()
        .map(|&v| 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * v).log2())
        .sum()
}

/// Multiplexing redundancy: the fraction of the summed per-channel
/// entropies lost to statistical dependence between channels,
/// `(sum_i h_i - h_joint) / sum_i h_i`.
pub fn redundancy(marginal_entropy_sum: f64, joint_entropy: f64) -> f64 {
    (marginal_entropy_sum - joint_entropy) / marginal_entropy_sum
}

/// Kozachenko–Leonenko k-nearest-neighbour differential entropy in bits.
///
/// `samples` is row-major, `n = samples.len() / d` points of dimension `d`.
/// Distances are Euclidean; the estimate is
/// `psi(n) - psi(k) + ln V_d + (d/n) sum_i ln eps_i` nats, where `eps_i`
/// is the distance from point `i` to its k-th nearest neighbour and `V_d`
/// the unit-ball volume.
///
/// Duplicate sample points would make the estimator singular; their
/// neighbour distance is floored at 1e-12 instead.
///
/// # Panics
/// Panics on empty input, `k` outside `[1, 8]`, or `n <= k`.
pub fn knn_entropy_bits(samples: &[f64], d: usize, k: usize) -> f64 {
    assert!(d > 0 && !samples.is_empty(), "no samples");
    assert_eq!(samples.len() % d, 0, "sample buffer not a multiple of d");
    assert!((1..=8).contains(&k), "neighbour order must be in [1, 8]");
    let n = samples.len() / d;
    assert!(n > k, "need more than k points");

    let log_eps_sum: f64 = (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = &samples[i * d..(i + 1) * d];
            let mut best = [f64::INFINITY; 8];
            for j in 0..n {
                if j == i {
                    continue;
                }
                let xj = &samples[j * d..(j + 1) * d];
                let mut dist = 0.0;
                for t in 0..d {
                    let diff = xi[t] - xj[t];
                    dist += diff * diff;
                }
                if dist < best[k - 1] {
                    let mut pos = k - 1;
                    while pos > 0 && best[pos - 1] > dist {
                        best[pos] = best[pos - 1];
                        pos -= 1;
                    }
                    best[pos] = dist;
                }
            }
            let eps_sq = best[k - 1].max(1e-24);
            0.5 * eps_sq.ln()
        })
        .sum();

    let ln_unit_ball =
        0.5 * d as f64 * std::f64::consts::PI.ln() - ln_gamma(d as f64 / 2.0 + 1.0);
    let nats = digamma(n as f64) - digamma(k as f64)
        + ln_unit_ball
        + d as f64 / n as f64 * log_eps_sum;
    nats / LN_2
}

/// Bias-corrected k-nearest-neighbour entropy in bits.
///
/// Runs [`knn_entropy_bits`] on the data and on a Gaussian surrogate with
/// the data's sample mean and covariance and the same number of points,
/// then subtracts the surrogate's estimation error (its estimate minus the
/// closed-form Gaussian entropy).  The finite-sample bias of the estimator
/// depends primarily on `(n, d)` and the broad shape of the distribution,
/// so the matched surrogate cancels most of it even in high dimension.
pub fn knn_entropy_corrected_bits<R: Rng + ?Sized>(
    samples: &[f64],
    d: usize,
    k: usize,
    rng: &mut R,
) -> f64 {
    let n = samples.len() / d;
    let (mean, cov) = sample_moments(samples, d);
    let reference = gaussian_entropy_bits(&cov);
    let chol = cholesky_with_jitter(&cov);
    let l = chol.l();

    let mut surrogate = vec![0.0; n * d];
    let mut z = DVector::<f64>::zeros(d);
    for row in surrogate.chunks_mut(d) {
        for zi in z.iter_mut() {
            *zi = rng.sample(StandardNormal);
        }
        let x = &l * &z + &mean;
        row.copy_from_slice(x.as_slice());
    }

    let bias = knn_entropy_bits(&surrogate, d, k) - reference;
    knn_entropy_bits(samples, d, k) - bias
}

/// Streaming mean/covariance accumulator (Welford's update, numerically
/// stable for long runs), used to build Gaussian reference statistics
/// without holding all samples.
pub struct RunningCovariance {
    count: usize,
    mean: DVector<f64>,
    scatter: DMatrix<f64>,
    delta: DVector<f64>,
}

impl RunningCovariance {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self {
            count: 0,
            mean: DVector::zeros(dim),
            scatter: DMatrix::zeros(dim, dim),
            delta: DVector::zeros(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Fold one observation into the running moments.
    ///
    /// # Panics
    /// Panics if `x.len() != dim()`.
    pub fn push(&mut self, x: &[f64]) {
        assert_eq!(x.len(), self.dim(), "observation dimension mismatch");
        self.count += 1;
        let inv_n = 1.0 / self.count as f64;
        for (i, (&xi, di)) in x.iter().zip(self.delta.iter_mut()).enumerate() {
            *di = xi - self.mean[i];
        }
        self.mean.axpy(inv_n, &self.delta, 1.0);
        // scatter += delta * (x - new_mean)^T
        for (c, &xc) in x.iter().enumerate() {
            let post = xc - self.mean[c];
            for r in 0..self.dim() {
                self.scatter[(r, c)] += self.delta[r] * post;
            }
        }
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    /// Unbiased sample covariance.
    ///
    /// # Panics
    /// Panics with fewer than two observations.
    pub fn covariance(&self) -> DMatrix<f64> {
        assert!(self.count >= 2, "covariance needs at least two observations");
        // Average the accumulated scatter with its transpose: the update is
        // exact in real arithmetic but rounding breaks symmetry slightly.
        let sym = (&self.scatter + self.scatter.transpose()) * 0.5;
        sym / (self.count - 1) as f64
    }
}

fn sample_moments(samples: &[f64], d: usize) -> (DVector<f64>, DMatrix<f64>) {
    let mut acc = RunningCovariance::new(d);
    for row in samples.chunks(d) {
        acc.push(row);
    }
    (acc.mean().clone(), acc.covariance())
}

fn cholesky_with_jitter(cov: &DMatrix<f64>) -> Cholesky<f64, Dyn> {
    if let Some(chol) = Cholesky::new(cov.clone()) {
        return chol;
    }
    let scale = cov.diagonal().mean().abs().max(f64::MIN_POSITIVE);
    let mut jitter = 1e-12;
    while jitter <= 1e-6 {
        let mut bumped = cov.clone();
        for i in 0..cov.nrows() {
            bumped[(i, i)] += jitter * scale;
        }
        if let Some(chol) = Cholesky::new(bumped) {
            return chol;
        }
        jitter *= 10.0;
    }
    panic!("covariance is not positive definite");
}
