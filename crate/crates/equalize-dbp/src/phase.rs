//! Common-phase alignment.

use num_complex::Complex64 as C64;

/// Remove the least-squares common phase between received symbols and the
/// transmitted reference, jointly over both polarisations.
///
/// Self-phase modulation leaves a residual rotation that is common to every
/// symbol of a frame; the least-squares estimate of that rotation is the
/// argument of the cross-correlation `sum(y * conj(x))`.  Both received
/// slices are rotated in place and the removed phase (radians) is returned.
/// A dark frame (zero cross-correlation) is left untouched.
pub fn align_common_phase(y1: &mut [C64], y2: &mut [C64], x1: &[C64], x2: &[C64]) -> f64 {
    assert_eq!(y1.len(), x1.len(), "polarisation 1 length mismatch");
    assert_eq!(y2.len(), x2.len(), "polarisation 2 length mismatch");
    let cross: C64 = y1
        .iter()
        .zip(x1)
        .chain(y2.iter().zip(x2))
        .map(|(y, x)| y * x.conj())
        .sum();
    if cross.norm() == 0.0 {
        return 0.0;
    }
    let phase = cross.arg();
    let rotor = C64::from_polar(1.0, -phase);
    for y in y1.iter_mut().chain(y2.iter_mut()) {
        *y *= rotor;
    }
    phase
}
