//! The 32-point cross constellation.

use signal_core::C64;

/// Unit-average-energy 32-cross constellation: odd coordinates
/// `{−5, −3, −1, 1, 3, 5}²` with the four `|i| = |j| = 5` corners removed,
/// scaled by `1/√20`. Point order is fixed (row-major over (i, j)) so that
/// symbol indices are stable across runs.
pub fn cross32() -> Vec<C64> {
    let mut pts = Vec::with_capacity(32);
    let scale = 1.0 / 20f64.sqrt();
    for i in (-5i32..=5).step_by(2) {
        for j in (-5i32..=5).step_by(2) {
            if i.abs() == 5 && j.abs() == 5 {
                continue;
            }
            pts.push(C64::new(i as f64 * scale, j as f64 * scale));
        }
    }
    debug_assert_eq!(pts.len(), 32);
    pts
}

/// Index of the nearest constellation point (minimum Euclidean distance).
pub fn hard_decision(y: C64, points: &[C64]) -> usize {
    let mut best = 0usize;
    let mut best_d = f64::INFINITY;
    for (i, &p) in points.iter().enumerate() {
        let d = (y - p).norm_sqr();
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}
