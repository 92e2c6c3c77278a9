//! Assembled dual-polarisation transmitter and receiver.
//!
//! Transmit: symbols → carrier waveform → compression onto scattering
//! coefficients → index reorientation onto the λ grid → dispersion
//! pre-compensation → waveform synthesis → (for tight guards) window
//! truncation. Receive runs the mirror image, with the remaining fraction
//! of the spectral rotation undone after the forward transform.
//!
//! Everything here is in normalised (dimensionless) units: time in units
//! of the time scale, field in units of the amplitude scale. The scale
//! factor `s` applied inside the compression map is the single knob that
//! sets launch power; [`Modem::calibrate_scale`] solves for it from a
//! target burst energy.

use nft::{
    a_from_b, advance, b_pair_from_qc, energy_from_b, qc_from_ab, scatter_fast, synthesise,
    unimodularity_residual, ScatterData, ScatteringGrid,
};
use signal_core::{crop_centered, zero_pad_centered, C64};

use crate::carriers::{build_carrier_wave, recover_symbols, CarrierShape};
use crate::mapping::{
    carrier_from_lambda, compress_b, compress_qc, expand_b, expand_qc, lambda_from_carrier,
    ClampStats,
};
use crate::ModemError;

/// Which scattering coefficient carries the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Modulation {
    /// Joint compression onto `(b1, b2)`.
    B,
    /// Per-component compression onto the reflection coefficients
    /// `q_c,p = b_p / a`.
    Qc,
}

/// Full transmitter/receiver configuration.
#[derive(Debug, Clone, Copy)]
pub struct ModemConfig {
    pub shape: CarrierShape,
    pub modulation: Modulation,
    /// Fraction of the link's spectral rotation pre-compensated at the
    /// transmitter (the rest is undone at the receiver). Splitting it
    /// halves the temporal broadening on either side of the link.
    pub pdc_fraction: f64,
    /// Link length in units of the normalisation length. The transmitter
    /// advances the spectrum by `pdc_fraction · link_span`, the receiver by
    /// the remaining `(1 − pdc_fraction) · link_span`; zero means plain
    /// back-to-back operation with no rotation on either side.
    pub link_span: f64,
}

/// One transmitted burst (normalised field, [`CarrierShape::transmit_len`]
/// samples per polarisation).
#[derive(Debug, Clone)]
pub struct TxFrame {
    pub q1: Vec<C64>,
    pub q2: Vec<C64>,
    /// Burst energy in normalised units, from the spectral-domain identity
    /// (before any window truncation).
    pub norm_energy: f64,
    /// Fraction of burst energy discarded by window truncation (zero when
    /// the synthesis grid is transmitted whole).
    pub truncation_loss: f64,
}

/// Receiver-side health counters for one burst.
#[derive(Debug, Clone, Copy, Default)]
pub struct RxDiagnostics {
    /// Saturation clamps in the inverse compression map.
    pub clamp: ClampStats,
    /// Bins where `|a|` was floored before dividing `b/a`.
    pub a_floor_hits: usize,
    /// Largest deviation of `|a|² + |b1|² + |b2|²` from 1 in the measured
    /// scattering data.
    pub unimodularity: f64,
}

/// One received burst after demodulation: soft symbols per polarisation.
#[derive(Debug, Clone)]
pub struct RxFrame {
    pub y1: Vec<C64>,
    pub y2: Vec<C64>,
    pub diag: RxDiagnostics,
}

/// `|a|` floor when forming reflection coefficients at the receiver. Sits
/// well below the `|a|` implied by the inverse-map saturation bound, so it
/// only catches genuinely degenerate bins.
const A_FLOOR: f64 = 1e-6;

/// Dual-polarisation multicarrier modem over the nonlinear spectrum.
pub struct Modem {
    cfg: ModemConfig,
    grid: ScatteringGrid,
    lambdas: Vec<f64>,
}

impl Modem {
    /// Build a modem on a centred grid with sample spacing `h` (normalised
    /// time units).
    pub fn new(cfg: ModemConfig, h: f64) -> Result<Self, ModemError> {
        cfg.shape.validate()?;
        let n = cfg.shape.synthesis_len();
        if n % 2 != 0 {
            return Err(ModemError::OddGrid(n));
        }
        let grid = ScatteringGrid::centred(n, h);
        let lambdas = grid.lambdas();
        Ok(Modem { cfg, grid, lambdas })
    }

    pub fn config(&self) -> &ModemConfig {
        &self.cfg
    }

    /// The scattering grid matching the full synthesis window.
    pub fn grid(&self) -> &ScatteringGrid {
        &self.grid
    }

    /// Map one pair of symbol streams to a transmitted burst with
    /// compression scale `s`.
    pub fn transmit(&self, x1: &[C64], x2: &[C64], s: f64) -> Result<TxFrame, ModemError> {
        let shape = &self.cfg.shape;
        assert_eq!(x1.len(), shape.n_carriers);
        assert_eq!(x2.len(), shape.n_carriers);
        let u1 = build_carrier_wave(x1, shape);
        let u2 = build_carrier_wave(x2, shape);
        let rot = self.cfg.pdc_fraction * self.cfg.link_span;

        let data = match self.cfg.modulation {
            Modulation::B => {
                let (b1u, b2u) = compress_b(&u1, &u2, s);
                let mut b1 = lambda_from_carrier(&b1u);
                let mut b2 = lambda_from_carrier(&b2u);
                if rot != 0.0 {
                    advance(&mut b1, &self.lambdas, rot);
                    advance(&mut b2, &self.lambdas, rot);
                }
                let a = a_from_b(&b1, &b2)?;
                ScatterData { a, b1, b2 }
            }
            Modulation::Qc => {
                let (qc1u, qc2u) = compress_qc(&u1, &u2, s);
                let mut qc1 = lambda_from_carrier(&qc1u);
                let mut qc2 = lambda_from_carrier(&qc2u);
                if rot != 0.0 {
                    advance(&mut qc1, &self.lambdas, rot);
                    advance(&mut qc2, &self.lambdas, rot);
                }
                b_pair_from_qc(&qc1, &qc2)?
            }
        };

        let norm_energy = energy_from_b(&data.b1, &data.b2, self.grid.dlam());
        let (q1, q2) = synthesise(&data.a, &data.b1, &data.b2, &self.grid)?;

        let keep = shape.transmit_len();
        if keep >= self.grid.n {
            return Ok(TxFrame {
                q1,
                q2,
                norm_energy,
                truncation_loss: 0.0,
            });
        }
        let full: f64 = q1
            .iter()
            .chain(&q2)
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .max(f64::MIN_POSITIVE);
        let q1t = crop_centered(&q1, keep);
        let q2t = crop_centered(&q2, keep);
        let kept: f64 = q1t.iter().chain(&q2t).map(|v| v.norm_sqr()).sum();
        Ok(TxFrame {
            q1: q1t,
            q2: q2t,
            norm_energy,
            truncation_loss: 1.0 - kept / full,
        })
    }

    /// Demodulate one received burst back to soft symbols (same compression
    /// scale `s` the transmitter used).
    pub fn receive(&self, q1: &[C64], q2: &[C64], s: f64) -> Result<RxFrame, ModemError> {
        let shape = &self.cfg.shape;
        let keep = shape.transmit_len();
        assert_eq!(q1.len(), keep);
        assert_eq!(q2.len(), keep);
        let n = self.grid.n;

        let mut data = if keep < n {
            let p1 = zero_pad_centered(q1, n);
            let p2 = zero_pad_centered(q2, n);
            scatter_fast(&p1, &p2, &self.grid)
        } else {
            scatter_fast(q1, q2, &self.grid)
        };
        let unimodularity = unimodularity_residual(&data);
        let rot = (1.0 - self.cfg.pdc_fraction) * self.cfg.link_span;

        let (su1, su2, clamp, a_floor_hits) = match self.cfg.modulation {
            Modulation::B => {
                if rot != 0.0 {
                    advance(&mut data.b1, &self.lambdas, rot);
                    advance(&mut data.b2, &self.lambdas, rot);
                }
                let b1u = carrier_from_lambda(&data.b1);
                let b2u = carrier_from_lambda(&data.b2);
                let (su1, su2, clamp) = expand_b(&b1u, &b2u);
                (su1, su2, clamp, 0)
            }
            Modulation::Qc => {
                let (mut qc1, mut qc2, hits) = qc_from_ab(&data, A_FLOOR);
                if rot != 0.0 {
                    advance(&mut qc1, &self.lambdas, rot);
                    advance(&mut qc2, &self.lambdas, rot);
                }
                let qc1u = carrier_from_lambda(&qc1);
                let qc2u = carrier_from_lambda(&qc2);
                let (su1, su2, clamp) = expand_qc(&qc1u, &qc2u);
                (su1, su2, clamp, hits)
            }
        };

        let inv = 1.0 / s;
        let u1: Vec<C64> = su1.iter().map(|&v| v * inv).collect();
        let u2: Vec<C64> = su2.iter().map(|&v| v * inv).collect();
        let y1 = recover_symbols(&u1, shape);
        let y2 = recover_symbols(&u2, shape);
        Ok(RxFrame {
            y1,
            y2,
            diag: RxDiagnostics {
                clamp,
                a_floor_hits,
                unimodularity,
            },
        })
    }

    /// Expected normalised burst energy per unit `s²` when the symbols are
    /// drawn i.i.d. from a unit-mean-power constellation.
    ///
    /// Carrier synthesis is linear, so `Σ‖u‖² = (n/(Nc·Ro))·Σ‖x‖²` exactly,
    /// and the joint compression is built to make the spectral energy
    /// density equal `‖s·u‖²` — the burst energy is `(dλ/π)·s²·Σ‖u‖²` with
    /// no approximation. Taking `E[Σ‖x‖²] = 2·Nc` gives the coefficient.
    pub fn energy_per_scale_sq(&self) -> f64 {
        let shape = &self.cfg.shape;
        let n = self.grid.n as f64;
        let data = shape.data_len() as f64;
        (self.grid.dlam() / std::f64::consts::PI) * (n / data) * 2.0 * shape.n_carriers as f64
    }

    /// Solve for the compression scale that hits `target_energy` (both
    /// polarisations, normalised units) on ensemble average.
    ///
    /// The joint map has the closed form `s = sqrt(target / coefficient)`.
    /// The per-component map's energy is not quadratic in `s`, so it is
    /// solved by secant iteration over the supplied calibration frames
    /// (symbol pairs drawn the way live traffic will be).
    pub fn calibrate_scale(
        &self,
        target_energy: f64,
        frames: &[(Vec<C64>, Vec<C64>)],
    ) -> Result<f64, ModemError> {
        assert!(
            target_energy.is_finite() && target_energy > 0.0,
            "target energy must be positive"
        );
        match self.cfg.modulation {
            Modulation::B => Ok((target_energy / self.energy_per_scale_sq()).sqrt()),
            Modulation::Qc => self.calibrate_qc(target_energy, frames),
        }
    }

    fn calibrate_qc(
        &self,
        target_energy: f64,
        frames: &[(Vec<C64>, Vec<C64>)],
    ) -> Result<f64, ModemError> {
        if frames.is_empty() {
            return Err(ModemError::CalibrationDiverged(
                "no calibration frames supplied".into(),
            ));
        }
        let shape = &self.cfg.shape;
        // Per-bin |u|² magnitudes are scale-independent; precompute once.
        let mut mags: Vec<(f64, f64)> = Vec::with_capacity(frames.len() * self.grid.n);
        let mut linear_sum = 0.0;
        for (x1, x2) in frames {
            let u1 = build_carrier_wave(x1, shape);
            let u2 = build_carrier_wave(x2, shape);
            for (a, b) in u1.iter().zip(&u2) {
                let (m1, m2) = (a.norm_sqr(), b.norm_sqr());
                mags.push((m1, m2));
                linear_sum += m1 + m2;
            }
        }
        let prefactor = (self.grid.dlam() / std::f64::consts::PI) / frames.len() as f64;
        let mean_energy = |s: f64| -> f64 {
            let s2 = s * s;
            let sum: f64 = mags
                .iter()
                .map(|&(m1, m2)| log_qc_density(s2 * m1, s2 * m2))
                .sum();
            prefactor * sum
        };

        // The per-component energy never exceeds the quadratic one at equal
        // scale, so the closed-form quadratic solution is a lower bracket
        // and a good secant seed.
        let mut s0 = (target_energy / (prefactor * linear_sum)).sqrt();
        if !s0.is_finite() || s0 <= 0.0 {
            s0 = 1e-3;
        }
        let mut f0 = mean_energy(s0) - target_energy;
        let mut s1 = s0 * 1.05;
        let mut f1 = mean_energy(s1) - target_energy;
        for _ in 0..80 {
            if f1.abs() <= 1e-10 * target_energy {
                return Ok(s1);
            }
            let df = f1 - f0;
            if df == 0.0 {
                break;
            }
            let mut s2 = s1 - f1 * (s1 - s0) / df;
            if !s2.is_finite() || s2 <= 0.0 {
                s2 = 0.5 * s1;
            }
            s0 = s1;
            f0 = f1;
            s1 = s2;
            f1 = mean_energy(s1) - target_energy;
        }
        if f1.abs() <= 1e-8 * target_energy {
            Ok(s1)
        } else {
            Err(ModemError::CalibrationDiverged(format!(
                "residual {:.3e} at scale {:.6e} after secant iteration",
                f1, s1
            )))
        }
    }
}

/// `log(e^{x1} + e^{x2} − 1)`, the per-bin spectral energy density of the
/// per-component compression map, stable for large arguments.
fn log_qc_density(x1: f64, x2: f64) -> f64 {
    let m = x1.max(x2);
    if m < 30.0 {
        (x1.exp() + x2.exp() - 1.0).ln()
    } else {
        m + ((x1 - m).exp() + (x2 - m).exp() - (-m).exp()).ln()
    }
}
