use std::time::Instant;
use signal_core::C64;
use nft::{a_from_b, scatter_fast, synthesise, ScatteringGrid};

fn main() {
    for &n in &[2240usize, 3360, 6720, 16800] {
        let grid = ScatteringGrid::centred(n, 2.1968e-2);
        let mut b1 = vec![C64::new(0.0, 0.0); n];
        let mut b2 = vec![C64::new(0.0, 0.0); n];
        for k in 0..n {
            let t = 2.0 * k as f64 / n as f64 - 1.0;
            let env = 0.6 * (-(t / 0.15) * (t / 0.15)).exp();
            b1[k] = C64::from_polar(env, 5.0 * t);
            b2[k] = C64::from_polar(0.5 * env, -3.0 * t);
        }
        let a = a_from_b(&b1, &b2).unwrap();
        let t0 = Instant::now();
        let (q1, q2) = synthesise(&a, &b1, &b2, &grid).unwrap();
        let t_syn = t0.elapsed();
        let t0 = Instant::now();
        let data = scatter_fast(&q1, &q2, &grid);
        let t_fwd = t0.elapsed();
        let err: f64 = data.b1.iter().zip(&b1).map(|(g, w)| (g - w).norm_sqr()).sum::<f64>().sqrt()
            / b1.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
        println!("n={n:6}  synthesise {:8.1?}  scatter_fast {:8.1?}  roundtrip {err:.2e}", t_syn, t_fwd);
    }
}
