//! Deterministic random parameter sets for sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::params::{validate_params, FParams, Params};
use crate::rational::{frac, Rational};

pub const SWEEP_PRIMES: [i64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];
pub const MAX_ATTEMPTS: usize = 100;

/// Outcome of one sweep draw.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SweepDraw {
    Generic {
        params: Params,
        fparams: FParams,
        /// Degenerate candidates discarded before this one.
        resampled: usize,
    },
    Degenerate {
        attempts: usize,
    },
}

/// Seeded source of generic `k/p` parameters.
#[derive(Debug, Clone)]
pub struct SweepGenerator {
    rng: ChaCha8Rng,
}

impl SweepGenerator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `k/p` with `p` from [`SWEEP_PRIMES`] and `k` in `[-40, 40] \ {0}`.
    pub fn rational(&mut self) -> Rational {
        let p = SWEEP_PRIMES[self.rng.random_range(0..SWEEP_PRIMES.len())];
        let k = loop {
            let k = self.rng.random_range(-40i64..=40);
            if k != 0 {
                break k;
            }
        };
        frac(k, p)
    }

    fn candidate(&mut self, nmax: usize) -> (Params, FParams) {
        let alpha = self.rational();
        let beta = self.rational();
        let zeta = self.rational();
        let rho = self.rational();
        (
            Params {
                nmax,
                alpha,
                beta,
                zeta,
            },
            FParams::new(rho),
        )
    }

    /// Draw a generic parameter set, resampling up to [`MAX_ATTEMPTS`] times.
    pub fn draw(&mut self, nmax: usize) -> SweepDraw {
        for attempt in 0..MAX_ATTEMPTS {
            let (params, fparams) = self.candidate(nmax);
            if validate_params(&params, Some(&fparams)).is_ok() {
                return SweepDraw::Generic {
                    params,
                    fparams,
                    resampled: attempt,
                };
            }
        }
        SweepDraw::Degenerate { attempts: MAX_ATTEMPTS }
    }

    /// `count` generic draws, skipping exhausted ones.
    pub fn generic_sets(&mut self, nmax: usize, count: usize) -> Vec<(Params, FParams)> {
        (0..count)
            .filter_map(|_| match self.draw(nmax) {
                SweepDraw::Generic { params, fparams, .. } => Some((params, fparams)),
                SweepDraw::Degenerate { .. } => None,
            })
            .collect()
    }
}
