//! Synthetic student populations and the assessment noise model.
//!
//! Randomness is organised as named substreams of one master seed (see
//! [`SeedStreams`]) so that, for example, changing how peer marks are drawn
//! does not shift the population or the grouping of the same replicate.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Named random substreams derived from one master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamKind {
    Population,
    Grouping,
    Reflexive,
    Peer,
    Ranking,
}

impl StreamKind {
    fn id(self) -> u64 {
        match self {
            StreamKind::Population => 0,
            StreamKind::Grouping => 1,
            StreamKind::Reflexive => 2,
            StreamKind::Peer => 3,
            StreamKind::Ranking => 4,
        }
    }
}

/// Master seed plus replicate index; hands out one independent RNG per
/// [`StreamKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedStreams {
    seed: u64,
    replicate: u64,
}

impl SeedStreams {
    pub fn new(seed: u64) -> Self {
        Self { seed, replicate: 0 }
    }

    pub fn replicate(self, replicate: u64) -> Self {
        Self { replicate, ..self }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn replicate_id(&self) -> u64 {
        self.replicate
    }

    pub fn rng(&self, kind: StreamKind) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.replicate.wrapping_mul(8).wrapping_add(kind.id()));
        rng
    }
}

/// Ideal marks of a cohort, with the parameters that generated them.
#[derive(Debug, Clone, PartialEq)]
pub struct StudentPopulation<T> {
    ideal_marks: Vec<T>,
    seed: u64,
    mean: T,
    sd: T,
}

impl<T: Scalar> StudentPopulation<T> {
    /// Wraps known ideal marks (fixtures, real data). Mean and sd are the
    /// sample statistics; the seed is 0.
    pub fn from_marks(ideal_marks: Vec<T>) -> Result<Self> {
        if ideal_marks.is_empty() {
            return Err(Error::EmptyPopulation);
        }
        if ideal_marks.iter().any(|q| !q.is_finite()) {
            return Err(Error::param("ideal_marks", "all marks must be finite"));
        }
        let n = T::from_count(ideal_marks.len());
        let mean = ideal_marks.iter().copied().sum::<T>() / n;
        let var = ideal_marks
            .iter()
            .map(|&q| (q - mean) * (q - mean))
            .sum::<T>()
            / n;
        Ok(Self {
            ideal_marks,
            seed: 0,
            mean,
            sd: var.sqrt(),
        })
    }

    pub fn ideal_marks(&self) -> &[T] {
        &self.ideal_marks
    }

    pub fn len(&self) -> usize {
        self.ideal_marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideal_marks.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn mean(&self) -> T {
        self.mean
    }

    pub fn sd(&self) -> T {
        self.sd
    }
}

/// Draws `n` i.i.d. Gaussian ideal marks. Marks are not clamped to any range.
pub fn generate_population<T: Scalar>(
    n: usize,
    mean: T,
    sd: T,
    seed: u64,
) -> Result<StudentPopulation<T>> {
    generate_population_in(&SeedStreams::new(seed), n, mean, sd)
}

/// As [`generate_population`], drawing from the population substream of
/// `streams`.
pub fn generate_population_in<T: Scalar>(
    streams: &SeedStreams,
    n: usize,
    mean: T,
    sd: T,
) -> Result<StudentPopulation<T>> {
    if n == 0 {
        return Err(Error::EmptyPopulation);
    }
    if !mean.is_finite() {
        return Err(Error::param("mean", "must be finite"));
    }
    if !sd.is_finite() || sd < T::zero() {
        return Err(Error::param("sd", "must be finite and non-negative"));
    }
    let normal = Normal::new(mean.to_f64_lossy(), sd.to_f64_lossy())
        .map_err(|e| Error::param("sd", e.to_string()))?;
    let mut rng = streams.rng(StreamKind::Population);
    let ideal_marks = (0..n).map(|_| T::lit(normal.sample(&mut rng))).collect();
    Ok(StudentPopulation {
        ideal_marks,
        seed: streams.seed(),
        mean,
        sd,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseKind {
    #[default]
    UniformSymmetric,
}

/// Additive assessment error, clamped below at zero after perturbation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel<T> {
    pub kind: NoiseKind,
    pub half_range: T,
}

impl<T: Scalar> NoiseModel<T> {
    pub const DEFAULT_HALF_RANGE: f64 = 16.0;

    pub fn uniform(half_range: T) -> Result<Self> {
        if !half_range.is_finite() || half_range < T::zero() {
            return Err(Error::param(
                "noise_half_range",
                "must be finite and non-negative",
            ));
        }
        Ok(Self {
            kind: NoiseKind::UniformSymmetric,
            half_range,
        })
    }

    pub fn noiseless() -> Self {
        Self {
            kind: NoiseKind::UniformSymmetric,
            half_range: T::zero(),
        }
    }

    /// One raw draw in `[-half_range, +half_range]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        match self.kind {
            NoiseKind::UniformSymmetric => {
                let u = T::lit(rng.random::<f64>());
                self.half_range * (u + u - T::one())
            }
        }
    }

    pub fn perturb<R: Rng + ?Sized>(&self, q: T, rng: &mut R) -> T {
        (q + self.sample(rng)).max(T::zero())
    }
}

impl<T: Scalar> Default for NoiseModel<T> {
    fn default() -> Self {
        Self {
            kind: NoiseKind::UniformSymmetric,
            half_range: T::lit(Self::DEFAULT_HALF_RANGE),
        }
    }
}

/// `q` plus one noise draw, clamped below at 0.
pub fn perturb<T: Scalar, R: Rng + ?Sized>(q: T, noise: &NoiseModel<T>, rng: &mut R) -> T {
    noise.perturb(q, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_stats(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, var.sqrt())
    }

    #[test]
    fn zero_sd_population_is_constant() {
        let pop = generate_population(5, 60.0, 0.0, 42).unwrap();
        assert_eq!(pop.ideal_marks(), &[60.0; 5]);
    }

    #[test]
    fn sample_mean_within_three_standard_errors() {
        // 3 * 12 / sqrt(52) ~= 5.0; expect at most ~1% of seeds outside.
        let outside = (0..500u64)
            .filter(|&seed| {
                let pop = generate_population(52, 60.0, 12.0, seed).unwrap();
                let (mean, _) = sample_stats(pop.ideal_marks());
                (mean - 60.0).abs() > 3.0 * 12.0 / 52f64.sqrt()
            })
            .count();
        assert!(outside <= 10, "{outside} of 500 seeds outside the band");
    }

    #[test]
    fn large_sample_sd_matches_configuration() {
        for seed in [1, 2, 3] {
            let pop = generate_population(10_000, 60.0, 12.0, seed).unwrap();
            let (_, sd) = sample_stats(pop.ideal_marks());
            assert!((11.5..=12.5).contains(&sd), "sd = {sd}");
        }
    }

    #[test]
    fn regeneration_is_bit_identical() {
        let a = generate_population(52, 60.0, 12.0, 7).unwrap();
        let b = generate_population(52, 60.0, 12.0, 7).unwrap();
        assert_eq!(a, b);
        let c = generate_population(52, 60.0, 12.0, 8).unwrap();
        assert_ne!(a.ideal_marks(), c.ideal_marks());
    }

    #[test]
    fn f32_population() {
        let pop = generate_population::<f32>(100, 60.0, 12.0, 3).unwrap();
        assert_eq!(pop.len(), 100);
        assert!(pop.ideal_marks().iter().all(|q| q.is_finite()));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            generate_population(0, 60.0, 12.0, 1).unwrap_err(),
            Error::EmptyPopulation
        );
        assert!(matches!(
            generate_population(3, f64::NAN, 12.0, 1),
            Err(Error::InvalidParameter { name: "mean", .. })
        ));
        assert!(matches!(
            generate_population(3, 60.0, f64::INFINITY, 1),
            Err(Error::InvalidParameter { name: "sd", .. })
        ));
        assert!(matches!(
            generate_population(3, 60.0, -1.0, 1),
            Err(Error::InvalidParameter { name: "sd", .. })
        ));
        assert!(StudentPopulation::<f64>::from_marks(vec![]).is_err());
        assert!(StudentPopulation::from_marks(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn substreams_are_independent() {
        let streams = SeedStreams::new(11);
        let a: f64 = streams.rng(StreamKind::Peer).random();
        let b: f64 = streams.rng(StreamKind::Ranking).random();
        let c: f64 = streams.replicate(1).rng(StreamKind::Peer).random();
        let again: f64 = streams.rng(StreamKind::Peer).random();
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, again);
    }

    #[test]
    fn perturb_examples() {
        let mut rng = SeedStreams::new(5).rng(StreamKind::Reflexive);
        let silent = NoiseModel::<f64>::noiseless();
        assert_eq!(perturb(60.0, &silent, &mut rng), 60.0);

        let noise = NoiseModel::<f64>::default();
        for _ in 0..10_000 {
            let v = perturb(60.0, &noise, &mut rng);
            assert!((44.0..=76.0).contains(&v));
            let low = perturb(5.0, &noise, &mut rng);
            assert!((0.0..=21.0).contains(&low));
        }
    }

    #[test]
    fn perturbation_ecdf_is_uniform_on_unclamped_region() {
        let noise = NoiseModel::<f64>::default();
        let mut rng = SeedStreams::new(2024).rng(StreamKind::Peer);
        let n = 100_000;
        let mut draws: Vec<f64> = (0..n).map(|_| noise.perturb(0.0, &mut rng)).collect();
        draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Clamped support: half the mass at 0, then F(x) = 1/2 + x/32 on (0, 16].
        let mut ks: f64 = 0.0;
        for (k, &x) in draws.iter().enumerate() {
            if x <= 0.0 {
                continue;
            }
            let cdf = 0.5 + x / 32.0;
            let hi = (k + 1) as f64 / n as f64;
            let lo = k as f64 / n as f64;
            ks = ks.max((hi - cdf).abs()).max((lo - cdf).abs());
        }
        assert!(ks < 0.01, "KS statistic {ks}");
    }

    #[test]
    fn noise_model_validation() {
        assert!(NoiseModel::<f64>::uniform(-1.0).is_err());
        assert!(NoiseModel::<f64>::uniform(f64::NAN).is_err());
        assert_eq!(NoiseModel::<f64>::uniform(16.0).unwrap(), NoiseModel::default());
    }
}
