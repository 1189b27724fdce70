//! End-to-end search on one instance: oracle scan, Grover planning,
//! simulation, optional noise and shots, and comparison against the ideal run.

use std::fmt;

use serde::Serialize;

use crate::bits::BitString;
use crate::bp::{symmetry_set, SymmetrySet};
use crate::error::{Error, Result};
use crate::geometry::extract_internal;
use crate::grover::{
    grover_distribution, iteration_count, mix_uniform, sample, success_probability, Distribution, GroverPlan,
    IterationMode, ShotCounts,
};
use crate::instance::DmdgpInstance;
use crate::metrics::MetricsReport;
use crate::oracle::{Oracle, OracleParams, DEFAULT_DELTA, DEFAULT_EPSILON};

/// Simulated amplitude vectors are capped at this many outcomes.
pub const MAX_SIMULATED_OUTCOMES: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Iterations {
    Auto,
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    pub iterations: Iterations,
    pub mode: IterationMode,
    /// Zero keeps the exact distribution as the measurement.
    pub shots: u64,
    pub seed: u64,
    pub noise: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            iterations: Iterations::Auto,
            mode: IterationMode::Nearest,
            shots: 0,
            seed: 0,
            noise: 0.0,
            delta: DEFAULT_DELTA,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub edges: usize,
    pub pruning_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub instance: InstanceSummary,
    pub symmetry_set: Vec<usize>,
    /// `N = 2^(n-3)`.
    pub search_space: usize,
    pub solutions: Vec<BitString>,
    pub marked: Vec<usize>,
    /// `None` when every candidate is marked and there is nothing to amplify.
    pub plan: Option<GroverPlan>,
    pub iterations: usize,
    pub closed_form_success: Option<f64>,
    pub ideal: Distribution,
    pub noise: f64,
    pub shots: Option<ShotCounts>,
    pub measured: Distribution,
    pub metrics: Option<MetricsReport>,
}

impl RunReport {
    /// `2^|S|` agrees with the oracle's marked count.
    pub fn is_consistent(&self) -> bool {
        self.search_space == self.ideal.len()
            && self.marked.len() == 1usize << self.symmetry_set.len()
            && self.solutions.len() == self.marked.len()
    }

    pub fn marked_probability(&self) -> f64 {
        self.ideal.mass(&self.marked)
    }
}

pub fn run_grover(inst: &DmdgpInstance, options: &RunOptions) -> Result<RunReport> {
    let n = inst.n();
    let search_space = 1usize
        .checked_shl((n - 3) as u32)
        .filter(|&s| s <= MAX_SIMULATED_OUTCOMES)
        .ok_or(Error::ScanCapExceeded { size: inst.candidate_count(), cap: MAX_SIMULATED_OUTCOMES as u64 })?;

    let internal = extract_internal(inst)?;
    let params = OracleParams::new(n, options.delta, options.epsilon)?;
    let symmetry: SymmetrySet = symmetry_set(inst);
    let marked: Vec<usize> =
        Oracle::new(inst, &internal, params).marked_set()?.into_iter().map(|k| k as usize).collect();
    if marked.is_empty() {
        return Err(Error::NoSolution);
    }
    let solutions = marked.iter().map(|&k| BitString::from_index(k as u64, n - 3)).collect();

    // M comes from the symmetry count, known before any search.
    let expected = symmetry.solution_count() as usize;
    let plan =
        if expected < search_space { Some(iteration_count(search_space, expected, options.mode)?) } else { None };
    let iterations = match (options.iterations, &plan) {
        (Iterations::Fixed(k), _) => k,
        (Iterations::Auto, Some(p)) => p.iterations,
        (Iterations::Auto, None) => 0,
    };
    let ideal = grover_distribution(search_space, &marked, iterations)?;
    let noisy = mix_uniform(&ideal, options.noise)?;
    let (shots, measured) = if options.shots > 0 {
        let counts = sample(&noisy, options.shots, options.seed);
        let freq = counts.frequencies();
        (Some(counts), freq)
    } else {
        (None, noisy)
    };
    let metrics =
        if marked.len() < search_space { Some(MetricsReport::compare(&measured, &ideal, &marked)?) } else { None };

    Ok(RunReport {
        instance: InstanceSummary { n, edges: inst.edge_count(), pruning_edges: inst.pruning_edges().count() },
        symmetry_set: symmetry.vertices,
        search_space,
        solutions,
        closed_form_success: (marked.len() < search_space)
            .then(|| success_probability(search_space, marked.len(), iterations)),
        marked,
        plan,
        iterations,
        ideal,
        noise: options.noise,
        shots,
        measured,
        metrics,
    })
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.symmetry_set.iter().map(|v| v.to_string()).collect();
        writeln!(
            f,
            "instance: n = {}, {} edges ({} pruning)",
            self.instance.n, self.instance.edges, self.instance.pruning_edges
        )?;
        writeln!(f, "symmetry set S = {{{}}}, 2^|S| = {}", s.join(", "), 1u64 << self.symmetry_set.len())?;
        let sols: Vec<String> = self.solutions.iter().map(ToString::to_string).collect();
        writeln!(f, "marked set ({}): {}", self.marked.len(), sols.join(" "))?;
        match &self.plan {
            Some(p) => writeln!(
                f,
                "plan: N = {}, M = {}, theta = {:.6}, k_raw = {:.6}, k = {} ({})",
                p.size,
                p.marked,
                p.theta,
                p.k_raw,
                p.iterations,
                match p.mode {
                    IterationMode::Floor => "floor",
                    IterationMode::Nearest => "nearest",
                }
            )?,
            None => writeln!(f, "plan: every candidate is a solution, nothing to amplify")?,
        }
        writeln!(f, "iterations: {}", self.iterations)?;
        writeln!(f, "ideal marked probability: {:.6}", self.marked_probability())?;
        if let Some(p) = self.closed_form_success {
            writeln!(f, "closed-form marked probability: {p:.6}")?;
        }
        if self.noise > 0.0 {
            writeln!(f, "uniform noise: {}", self.noise)?;
        }
        if let Some(c) = &self.shots {
            writeln!(f, "shots: {}", c.shots)?;
        }
        if let Some(m) = &self.metrics {
            writeln!(f, "measured vs ideal:")?;
            for line in m.to_string().lines() {
                writeln!(f, "  {line}")?;
            }
        }
        if !self.is_consistent() {
            writeln!(f, "warning: marked count differs from 2^|S|")?;
        }
        Ok(())
    }
}
