//! Centred discrete Fourier transforms and grid utilities.
//!
//! The centred convention places the origin of both time and frequency at
//! index `n/2`. With `x` indexed by `k − n/2` and `X` by `m − n/2`:
//!
//! ```text
//! dft_centered:  X[m] = Σ_k x[k] · exp(−2πj (k − n/2)(m − n/2) / n)
//! idft_centered: x[k] = (1/n) Σ_m X[m] · exp(+2πj (k − n/2)(m − n/2) / n)
//! ```
//!
//! Both are implemented as `shift ∘ (i)fft ∘ unshift` around the standard
//! FFT. Only even grid lengths are supported; every grid in this workspace
//! is even by construction and the shift pair is self-inverse in that case.

use std::cell::RefCell;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

pub type C64 = num_complex::Complex<f64>;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// A cached forward/inverse FFT plan for one grid length.
///
/// The raw transforms are unnormalised (matching the underlying FFT library);
/// callers that need a true inverse must divide by `n` themselves or fold the
/// factor into another per-bin multiplier, which the propagation kernels do.
pub struct FftPair {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: RefCell<Vec<C64>>,
}

impl FftPair {
    pub fn new(n: usize) -> Self {
        let (fwd, inv) = PLANNER.with(|p| {
            let mut p = p.borrow_mut();
            (p.plan_fft_forward(n), p.plan_fft_inverse(n))
        });
        let scratch_len = fwd
            .get_inplace_scratch_len()
            .max(inv.get_inplace_scratch_len());
        FftPair {
            n,
            fwd,
            inv,
            scratch: RefCell::new(vec![C64::new(0.0, 0.0); scratch_len]),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Unnormalised forward FFT, in place.
    pub fn forward(&self, buf: &mut [C64]) {
        debug_assert_eq!(buf.len(), self.n);
        let mut scratch = self.scratch.borrow_mut();
        self.fwd.process_with_scratch(buf, &mut scratch);
    }

    /// Unnormalised inverse FFT, in place (no 1/n).
    pub fn inverse(&self, buf: &mut [C64]) {
        debug_assert_eq!(buf.len(), self.n);
        let mut scratch = self.scratch.borrow_mut();
        self.inv.process_with_scratch(buf, &mut scratch);
    }
}

/// Unnormalised in-place FFT using a thread-local plan cache.
pub fn fft_in_place(buf: &mut [C64]) {
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(buf.len()));
    fft.process(buf);
}

/// Unnormalised in-place inverse FFT (no 1/n) using a thread-local plan cache.
pub fn ifft_in_place(buf: &mut [C64]) {
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(buf.len()));
    fft.process(buf);
}

fn assert_even(n: usize) {
    assert!(n % 2 == 0, "centred transforms require an even grid length, got {n}");
}

/// Swap the two halves of a buffer, moving index `n/2` to index 0.
/// For even lengths this is its own inverse.
fn half_swap(buf: &mut [C64]) {
    let n = buf.len();
    let (lo, hi) = buf.split_at_mut(n / 2);
    lo.swap_with_slice(hi);
}

/// Centred forward DFT (unnormalised). Input and output are both centred.
pub fn dft_centered(x: &[C64]) -> Vec<C64> {
    assert_even(x.len());
    let mut buf = x.to_vec();
    half_swap(&mut buf);
    fft_in_place(&mut buf);
    half_swap(&mut buf);
    buf
}

/// Centred inverse DFT with 1/n normalisation; inverse of [`dft_centered`].
pub fn idft_centered(x: &[C64]) -> Vec<C64> {
    assert_even(x.len());
    let mut buf = x.to_vec();
    half_swap(&mut buf);
    ifft_in_place(&mut buf);
    half_swap(&mut buf);
    let scale = 1.0 / x.len() as f64;
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// Zero-pad symmetrically around the centre to `total` samples: with
/// `m = total − x.len()`, `m/2` zeros go before the signal and the remainder
/// after. Panics if `total < x.len()`.
pub fn zero_pad_centered(x: &[C64], total: usize) -> Vec<C64> {
    assert!(
        total >= x.len(),
        "cannot pad {} samples to a shorter length {total}",
        x.len()
    );
    let m = total - x.len();
    let front = m / 2;
    let mut out = vec![C64::new(0.0, 0.0); total];
    out[front..front + x.len()].copy_from_slice(x);
    out
}

/// Keep the central `keep` samples, removing `(len − keep)/2` from the front;
/// exact inverse of [`zero_pad_centered`] for matching lengths.
pub fn crop_centered(x: &[C64], keep: usize) -> Vec<C64> {
    assert!(
        keep <= x.len(),
        "cannot crop {} samples to a longer length {keep}",
        x.len()
    );
    let front = (x.len() - keep) / 2;
    x[front..front + keep].to_vec()
}

/// Cyclic sample frequencies in standard FFT order: `k/(n·dt)` for
/// `k = 0..n/2`, then the negative frequencies.
pub fn fft_freqs(n: usize, dt: f64) -> Vec<f64> {
    let df = 1.0 / (n as f64 * dt);
    (0..n)
        .map(|k| {
            let k = if k < n.div_ceil(2) {
                k as isize
            } else {
                k as isize - n as isize
            };
            k as f64 * df
        })
        .collect()
}

/// Angular frequencies `ω = 2π f` in standard FFT order.
pub fn angular_freqs(n: usize, dt: f64) -> Vec<f64> {
    fft_freqs(n, dt)
        .into_iter()
        .map(|f| 2.0 * std::f64::consts::PI * f)
        .collect()
}
