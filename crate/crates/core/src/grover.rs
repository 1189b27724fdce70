//! Exact statevector simulation of Grover search over `N = 2^m` outcomes.
//!
//! The oracle is applied as a phase flip on marked amplitudes and the
//! diffusion `2|psi><psi| - I` as a reflection about the mean amplitude, so
//! one iteration costs `O(N)`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution as _};
use serde::Serialize;

use crate::error::{Error, Result};

/// Allowed drift of `sum p` away from one for computed distributions.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Neumaier-compensated sum.
pub(crate) fn stable_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Probability vector over `N` outcomes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Distribution {
    probabilities: Vec<f64>,
}

impl Distribution {
    /// Accepts probabilities summing to one within [`NORM_TOLERANCE`].
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(probabilities, NORM_TOLERANCE)
    }

    /// Same as [`Distribution::new`] with a looser sum check, for rounded
    /// published data.
    pub fn with_tolerance(probabilities: Vec<f64>, tolerance: f64) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::Distribution("no outcomes".into()));
        }
        if let Some((i, p)) = probabilities.iter().enumerate().find(|(_, p)| !(**p >= 0.0 && **p <= 1.0 + tolerance)) {
            return Err(Error::Distribution(format!("outcome {i} has probability {p}")));
        }
        let total = stable_sum(probabilities.iter().copied());
        if (total - 1.0).abs() > tolerance {
            return Err(Error::Distribution(format!("probabilities sum to {total}")));
        }
        Ok(Self { probabilities })
    }

    pub fn uniform(size: usize) -> Self {
        Self { probabilities: vec![1.0 / size as f64; size] }
    }

    pub fn point_mass(size: usize, index: usize) -> Self {
        let mut probabilities = vec![0.0; size];
        probabilities[index] = 1.0;
        Self { probabilities }
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn get(&self, index: usize) -> f64 {
        self.probabilities[index]
    }

    /// Total probability of `indices`.
    pub fn mass(&self, indices: &[usize]) -> f64 {
        stable_sum(indices.iter().map(|&i| self.probabilities[i]))
    }

    pub fn total(&self) -> f64 {
        stable_sum(self.probabilities.iter().copied())
    }
}

/// Outcomes flagged by the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSet {
    mask: Vec<bool>,
    indices: Vec<usize>,
}

impl MarkedSet {
    pub fn new(size: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = vec![false; size];
        for index in indices {
            if index >= size {
                return Err(Error::MarkedOutOfRange { index, size });
            }
            mask[index] = true;
        }
        let indices: Vec<usize> = (0..size).filter(|&i| mask[i]).collect();
        if indices.is_empty() {
            return Err(Error::EmptyMarkedSet);
        }
        Ok(Self { mask, indices })
    }

    pub fn size(&self) -> usize {
        self.mask.len()
    }

    pub fn count(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask[index]
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

fn check_power_of_two(size: usize) -> Result<()> {
    if size >= 2 && size.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::NotPowerOfTwo(size))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// `|psi> = N^(-1/2) sum |i>`.
    pub fn uniform(size: usize) -> Result<Self> {
        check_power_of_two(size)?;
        let a = Complex64::new(1.0 / (size as f64).sqrt(), 0.0);
        Ok(Self { amplitudes: vec![a; size] })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        stable_sum(self.amplitudes.iter().map(|a| a.norm_sqr()))
    }

    /// `|i> -> (-1)^f(i) |i>`.
    pub fn apply_oracle(&mut self, marked: &MarkedSet) {
        assert_eq!(marked.size(), self.amplitudes.len());
        for &i in marked.indices() {
            self.amplitudes[i] = -self.amplitudes[i];
        }
    }

    /// `G = 2|psi><psi| - I`, i.e. `a_i -> 2 mean(a) - a_i`.
    pub fn apply_diffusion(&mut self) {
        let size = self.amplitudes.len() as f64;
        let re = stable_sum(self.amplitudes.iter().map(|a| a.re));
        let im = stable_sum(self.amplitudes.iter().map(|a| a.im));
        let twice_mean = Complex64::new(re, im) * (2.0 / size);
        for a in &mut self.amplitudes {
            *a = twice_mean - *a;
        }
    }

    pub fn grover_iteration(&mut self, marked: &MarkedSet) {
        self.apply_oracle(marked);
        self.apply_diffusion();
    }

    pub fn distribution(&self) -> Distribution {
        Distribution { probabilities: self.amplitudes.iter().map(|a| a.norm_sqr()).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IterationMode {
    /// `floor(k)`, at least one.
    Floor,
    /// `k` rounded to the nearest integer.
    Nearest,
}

/// Number of Grover iterations for `M` marked outcomes out of `N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GroverPlan {
    pub size: usize,
    pub marked: usize,
    pub theta: f64,
    pub k_raw: f64,
    pub iterations: usize,
    pub mode: IterationMode,
}

/// `theta = asin(sqrt(M/N))`, `k_raw = (pi/2 - theta) / (2 theta)`.
pub fn iteration_count(size: usize, marked: usize, mode: IterationMode) -> Result<GroverPlan> {
    if marked == 0 || marked >= size {
        return Err(Error::InvalidPlan { size, marked });
    }
    let theta = (marked as f64 / size as f64).sqrt().asin();
    let k_raw = (FRAC_PI_2 - theta) / (2.0 * theta);
    let iterations = match mode {
        IterationMode::Floor => (k_raw.floor() as usize).max(1),
        IterationMode::Nearest => k_raw.round() as usize,
    };
    Ok(GroverPlan { size, marked, theta, k_raw, iterations, mode })
}

/// Outcome distribution after `iterations` rounds starting from `|psi>`.
pub fn grover_distribution(size: usize, marked: &[usize], iterations: usize) -> Result<Distribution> {
    let marked = MarkedSet::new(size, marked.iter().copied())?;
    let mut state = Statevector::uniform(size)?;
    for _ in 0..iterations {
        state.grover_iteration(&marked);
    }
    Ok(state.distribution())
}

/// `sin^2((2k + 1) theta)`.
pub fn success_probability(size: usize, marked: usize, iterations: usize) -> f64 {
    let theta = (marked as f64 / size as f64).sqrt().asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShotCounts {
    pub counts: Vec<u64>,
    pub shots: u64,
}

impl ShotCounts {
    pub fn frequencies(&self) -> Distribution {
        let total = self.shots as f64;
        Distribution { probabilities: self.counts.iter().map(|&c| c as f64 / total).collect() }
    }
}

/// Multinomial draw of `shots` outcomes, deterministic in `seed`.
///
/// Drawn as a chain of conditional binomials, one per outcome.
pub fn sample(dist: &Distribution, shots: u64, seed: u64) -> ShotCounts {
    assert!(shots > 0, "need at least one shot");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probs = dist.probabilities();
    let mut counts = vec![0u64; probs.len()];
    let mut remaining = shots;
    let mut remaining_mass = 1.0f64;
    let last = probs.len() - 1;
    for (i, &p) in probs.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if i == last {
            counts[i] = remaining;
            break;
        }
        let q = if remaining_mass > 0.0 { (p / remaining_mass).clamp(0.0, 1.0) } else { 1.0 };
        let k = Binomial::new(remaining, q).expect("probability in [0, 1]").sample(&mut rng);
        counts[i] = k;
        remaining -= k;
        remaining_mass -= p;
    }
    ShotCounts { counts, shots }
}

/// `(1 - lambda) dist + lambda uniform`.
pub fn mix_uniform(dist: &Distribution, lambda: f64) -> Result<Distribution> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Distribution(format!("noise level {lambda} outside [0, 1]")));
    }
    let u = 1.0 / dist.len() as f64;
    Ok(Distribution { probabilities: dist.probabilities().iter().map(|&p| (1.0 - lambda) * p + lambda * u).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_for_eight() {
        let floor = iteration_count(8, 1, IterationMode::Floor).unwrap();
        let nearest = iteration_count(8, 1, IterationMode::Nearest).unwrap();
        assert!((floor.k_raw - 1.6734).abs() < 1e-4);
        assert_eq!(floor.iterations, 1);
        assert_eq!(nearest.iterations, 2);
    }

    #[test]
    fn plan_for_four_is_exactly_one() {
        for mode in [IterationMode::Floor, IterationMode::Nearest] {
            let plan = iteration_count(4, 1, mode).unwrap();
            assert!((plan.k_raw - 1.0).abs() < 1e-12);
            assert_eq!(plan.iterations, 1);
        }
    }

    #[test]
    fn invalid_plans() {
        assert!(iteration_count(8, 0, IterationMode::Nearest).is_err());
        assert!(iteration_count(8, 8, IterationMode::Nearest).is_err());
    }

    #[test]
    fn one_iteration_over_eight() {
        let d = grover_distribution(8, &[2], 1).unwrap();
        assert!((d.get(2) - 0.78125).abs() < 1e-12);
        for i in (0..8).filter(|&i| i != 2) {
            assert!((d.get(i) - 0.03125).abs() < 1e-12);
        }
    }

    #[test]
    fn two_iterations_over_eight() {
        let d = grover_distribution(8, &[2], 2).unwrap();
        assert!((d.get(2) - 121.0 / 128.0).abs() < 1e-12);
    }

    #[test]
    fn half_marked_does_not_move() {
        let marked = [0, 3, 5, 6];
        let d = grover_distribution(8, &marked, 1).unwrap();
        // theta = pi/4, so sin^2(3 theta) = 1/2: half marked is a fixed point.
        assert!((d.mass(&marked) - 0.5).abs() < 1e-12);
        assert!((d.mass(&marked) - success_probability(8, 4, 1)).abs() < 1e-12);
    }

    #[test]
    fn zero_iterations_is_uniform() {
        let d = grover_distribution(16, &[3, 9], 0).unwrap();
        assert!(d.probabilities().iter().all(|&p| (p - 1.0 / 16.0).abs() < 1e-15));
        assert!((success_probability(16, 2, 0) - 2.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn empty_marked_set_is_an_error() {
        assert!(matches!(grover_distribution(8, &[], 1), Err(Error::EmptyMarkedSet)));
        assert!(matches!(grover_distribution(8, &[8], 1), Err(Error::MarkedOutOfRange { .. })));
        assert!(matches!(grover_distribution(6, &[1], 1), Err(Error::NotPowerOfTwo(6))));
    }

    #[test]
    fn closed_form_values() {
        assert!((success_probability(8, 1, 1) - 0.78125).abs() < 1e-12);
        assert!((success_probability(8, 1, 2) - 0.9453125).abs() < 1e-12);
    }

    #[test]
    fn sampling_is_deterministic_and_degenerate_masses_stay_put() {
        let d = Distribution::point_mass(8, 3);
        let c = sample(&d, 100, 9);
        assert_eq!(c.counts[3], 100);
        assert_eq!(c.counts.iter().sum::<u64>(), 100);

        let u = Distribution::uniform(8);
        assert_eq!(sample(&u, 8196, 1), sample(&u, 8196, 1));
    }

    #[test]
    fn uniform_sampling_stays_within_five_sigma() {
        let shots = 8196u64;
        let c = sample(&Distribution::uniform(8), shots, 1);
        let mean = shots as f64 / 8.0;
        let sigma = (shots as f64 * 0.125 * 0.875).sqrt();
        for &k in &c.counts {
            assert!((k as f64 - mean).abs() <= 5.0 * sigma, "{k}");
        }
        assert_eq!(c.counts.iter().sum::<u64>(), shots);
    }

    #[test]
    fn noise_mixing() {
        let d = Distribution::point_mass(8, 2);
        assert_eq!(mix_uniform(&d, 0.0).unwrap(), d);
        assert_eq!(mix_uniform(&d, 1.0).unwrap(), Distribution::uniform(8));
        assert!((mix_uniform(&d, 0.5).unwrap().get(2) - 0.5625).abs() < 1e-15);
        assert!(mix_uniform(&d, 1.5).is_err());
    }

    #[test]
    fn distribution_validation() {
        assert!(Distribution::new(vec![0.5, 0.6]).is_err());
        assert!(Distribution::new(vec![-0.1, 1.1]).is_err());
        assert!(Distribution::with_tolerance(vec![0.5, 0.501], 0.005).is_ok());
    }
}
