use num_complex::Complex64;
use proptest::prelude::*;
use resmotif::dft;

fn naive_inverse(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|j| {
            let s: Complex64 = (0..n)
                .map(|k| {
                    let angle = std::f64::consts::TAU * ((j * k) % n) as f64 / n as f64;
                    x[k] * Complex64::from_polar(1.0, angle)
                })
                .sum();
            s / n as f64
        })
        .collect()
}

proptest! {
    #[test]
    fn inverse_recovers_signal(signal in prop::collection::vec(-10.0f64..10.0, 1..80)) {
        let back = naive_inverse(&dft(&signal).unwrap());
        for (b, s) in back.iter().zip(&signal) {
            prop_assert!((b.re - s).abs() <= 1e-10 && b.im.abs() <= 1e-10);
        }
    }
}
