//! Seeded random inputs. Every draw comes from a ChaCha8 stream selected by
//! the base seed and a stream id, so results do not depend on the order in
//! which suites run.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::field::Field;
use crate::maximal::{Domain, GridFunction};

/// A generator for the stream `(suite, q, trial, purpose)` under `seed`.
pub fn stream_rng(seed: u64, suite: u8, q: u32, trial: usize, purpose: u8) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = (suite as u64) << 56
        | (purpose as u64) << 48
        | (q as u64) << 24
        | (trial as u64 & 0xff_ffff);
    rng.set_stream(id);
    rng
}

/// A function with independent standard complex Gaussian values.
pub fn gaussian_function(field: &Field, domain: Domain, rng: &mut impl Rng) -> GridFunction {
    let values = (0..domain.size(field.q()))
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect();
    GridFunction::from_values(field, domain, values).expect("finite values of the right length")
}

/// A nonnegative function with independent `|N(0, 1)|` values on a random
/// sparse support of density about `density`.
pub fn sparse_function(
    field: &Field,
    domain: Domain,
    density: f64,
    rng: &mut impl Rng,
) -> GridFunction {
    let values = (0..domain.size(field.q()))
        .map(|_| {
            if rng.gen_bool(density) {
                let x: f64 = rng.sample(StandardNormal);
                Complex64::new(x.abs(), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    GridFunction::from_values(field, domain, values).expect("finite values of the right length")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let f = Field::new(3).unwrap();
        let d = Domain::Heisenberg { n: 1 };
        let a = gaussian_function(&f, d, &mut stream_rng(1, 0, 3, 0, 0));
        let b = gaussian_function(&f, d, &mut stream_rng(1, 0, 3, 0, 0));
        let c = gaussian_function(&f, d, &mut stream_rng(1, 0, 3, 1, 0));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
