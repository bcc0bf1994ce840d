use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qstate::{ComplexMatrix, DensityMatrix, PureState};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_ish(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_pure(r: &mut ChaCha8Rng, dim: usize) -> PureState {
    PureState::normalized((0..dim).map(|_| gaussian_ish(r)).collect()).unwrap()
}

/// `A·A† / trace` for a random square `A`.
pub fn random_density(r: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let a = ComplexMatrix::from_row_major((0..dim * dim).map(|_| gaussian_ish(r)).collect())
        .unwrap();
    let m = &a * &a.adjoint();
    let t = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / t)).unwrap()
}

pub fn random_unit_vector(r: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v = [
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0f64),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}
