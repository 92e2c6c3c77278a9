//! Reference system parameters and derived normalisation scales.

use signal_core::Normalisation;

/// Physical parameters of the transmission system. All values are SI:
/// seconds, metres, watts, joules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Group-velocity dispersion β₂ (s²/m, negative = anomalous).
    pub beta2: f64,
    /// Kerr coefficient γ (1/(W·m)), before polarisation averaging.
    pub gamma: f64,
    /// Power attenuation α (1/m).
    pub alpha: f64,
    /// Fibre span between amplifiers (m).
    pub span_length: f64,
    /// Number of amplified spans in the link.
    pub n_spans: usize,
    /// Simulation sampling rate (Hz).
    pub sample_rate: f64,
    /// Amplifier noise figure (dB).
    pub noise_figure_db: f64,
    /// Photon energy at the carrier wavelength (J).
    pub photon_energy: f64,
}

impl SystemParams {
    /// The reference link: 12 × 80 km of standard single-mode fibre
    /// (β₂ = −21.5 ps²/km, γ = 1.3 /W/km, 0.2 dB/km), amplifiers with a
    /// 5 dB noise figure, simulated at 448 GS/s around 1550 nm.
    pub fn standard() -> Self {
        SystemParams {
            beta2: -21.5e-27,
            gamma: 1.3e-3,
            alpha: 0.2 * std::f64::consts::LN_10 / 10.0 / 1e3,
            span_length: 80e3,
            n_spans: 12,
            sample_rate: 448e9,
            noise_figure_db: 5.0,
            photon_energy: 1.2818e-19,
        }
    }

    /// Total link length (m).
    pub fn link_length(&self) -> f64 {
        self.span_length * self.n_spans as f64
    }

    /// Sample spacing (s).
    pub fn dt(&self) -> f64 {
        1.0 / self.sample_rate
    }

    /// Power gain of one amplifier, set to exactly undo one span's loss.
    pub fn span_gain(&self) -> f64 {
        (self.alpha * self.span_length).exp()
    }

    /// Path-averaged Kerr coefficient `γ·(1 − e^{−αL})/(αL)` — the constant
    /// that makes a lossless model reproduce the per-span average
    /// nonlinearity of the lossy fibre.
    pub fn gamma_averaged(&self) -> f64 {
        let al = self.alpha * self.span_length;
        self.gamma * (-(-al).exp_m1()) / al
    }

    /// Dispersion time scale of the full link, `sqrt(|β₂|·Z/2)` (s).
    pub fn time_scale(&self) -> f64 {
        (self.beta2.abs() * self.link_length() / 2.0).sqrt()
    }

    /// Amplitude scale pairing with [`time_scale`](Self::time_scale):
    /// `sqrt(2 / ((8/9)·γ_avg·Z))` (W^½). Dividing the field by this and
    /// time by the time scale puts the path-averaged Manakov model into
    /// its dimensionless normal form.
    pub fn amplitude_scale(&self) -> f64 {
        (2.0 / ((8.0 / 9.0) * self.gamma_averaged() * self.link_length())).sqrt()
    }

    /// Dimensionless sample spacing on the scattering-domain grid.
    pub fn grid_step(&self) -> f64 {
        self.dt() / self.time_scale()
    }

    /// Spontaneous-emission factor `n_sp = 10^{NF/10} / 2`.
    pub fn spontaneous_emission_factor(&self) -> f64 {
        10f64.powf(self.noise_figure_db / 10.0) / 2.0
    }

    /// Complex noise variance added per sample, per polarisation, by one
    /// amplifier: `n_sp·hν·(G−1)·F_s` (W). White across the full simulation
    /// bandwidth.
    pub fn ase_variance(&self) -> f64 {
        self.spontaneous_emission_factor()
            * self.photon_energy
            * (self.span_gain() - 1.0)
            * self.sample_rate
    }

    /// Total per-polarisation noise variance accumulated over the link's
    /// amplifiers, for noise-equivalent back-to-back experiments.
    pub fn ase_variance_link(&self) -> f64 {
        self.ase_variance() * self.n_spans as f64
    }

    /// The physical ↔ normalised unit conversion for this system.
    pub fn normalisation(&self) -> Normalisation {
        Normalisation {
            t_scale: self.time_scale(),
            amp_scale: self.amplitude_scale(),
        }
    }
}
