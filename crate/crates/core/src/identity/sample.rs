use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HsumError, Result};

pub const DEFAULT_SEED: u64 = 0x5eed_4a11;

/// Region and seed for random complex sample points.
///
/// Points are drawn uniformly from `re x im`, rejecting any point closer
/// than `exclusion` to an integer, either at `z` or at `-1-z`.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePlan {
    pub count: usize,
    pub seed: u64,
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub exclusion: f64,
}

/// Smallest sample count accepted for a derivation.
pub const MIN_DERIVE_POINTS: usize = 200;

impl SamplePlan {
    /// The standard strip `Re in [-2, 1]`, `Im in [0.3, 2]`.
    pub fn new(count: usize, seed: u64) -> Self {
        SamplePlan { count, seed, re: (-2.0, 1.0), im: (0.3, 2.0), exclusion: 1e-2 }
    }

    /// 250 points, enough oversampling for the weight-4 column set.
    pub fn derivation(seed: u64) -> Self {
        Self::new(250, seed)
    }

    pub fn check(&self) -> Result<()> {
        let ok = self.re.0 < self.re.1 && self.im.0 < self.im.1 && self.exclusion >= 0.0 && self.count > 0;
        if ok {
            Ok(())
        } else {
            Err(HsumError::InvalidContext(format!("degenerate sample plan {self:?}")))
        }
    }

    fn accept(&self, re: f64, im: f64) -> bool {
        let near = |x: f64, y: f64| {
            let n = x.round();
            ((x - n).powi(2) + y * y).sqrt() < self.exclusion
        };
        !near(re, im) && !near(-1.0 - re, -im)
    }

    /// The first `count + extra` points of the plan's sequence as `(re, im)`.
    /// A longer request extends a shorter one.
    pub fn points_with_extra(&self, extra: usize) -> Vec<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.count + extra);
        while out.len() < self.count + extra {
            let re = rng.gen_range(self.re.0..=self.re.1);
            let im = rng.gen_range(self.im.0..=self.im.1);
            if self.accept(re, im) {
                out.push((re, im));
            }
        }
        out
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.points_with_extra(0)
    }
}
