//! Distances between outcome distributions and the selectivity ratio.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grover::{stable_sum, Distribution};

fn check_lengths(p: &Distribution, q: &Distribution) -> Result<()> {
    if p.len() == q.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch(p.len(), q.len()))
    }
}

/// `d = 1/2 sum |p_x - q_x|`.
pub fn total_variation(p: &Distribution, q: &Distribution) -> Result<f64> {
    check_lengths(p, q)?;
    let sum = stable_sum(p.probabilities().iter().zip(q.probabilities()).map(|(a, b)| (a - b).abs()));
    Ok(0.5 * sum)
}

/// `h = sqrt(1/2 sum (sqrt p_x - sqrt q_x)^2)`.
pub fn hellinger(p: &Distribution, q: &Distribution) -> Result<f64> {
    check_lengths(p, q)?;
    let sum = stable_sum(p.probabilities().iter().zip(q.probabilities()).map(|(a, b)| (a.sqrt() - b.sqrt()).powi(2)));
    Ok((0.5 * sum).sqrt())
}

/// Success probability `P_s` (summed over `marked`) and the largest
/// unmarked probability `P_ns`.
pub fn success_and_runner_up(dist: &Distribution, marked: &[usize]) -> Result<(f64, f64)> {
    let size = dist.len();
    let mut is_marked = vec![false; size];
    for &i in marked {
        if i >= size {
            return Err(Error::MarkedOutOfRange { index: i, size });
        }
        is_marked[i] = true;
    }
    if marked.is_empty() {
        return Err(Error::EmptyMarkedSet);
    }
    if is_marked.iter().all(|&m| m) {
        return Err(Error::AllMarked);
    }
    let success = stable_sum((0..size).filter(|&i| is_marked[i]).map(|i| dist.get(i)));
    let runner_up = (0..size).filter(|&i| !is_marked[i]).map(|i| dist.get(i)).fold(0.0, f64::max);
    Ok((success, runner_up))
}

/// `S = P_s / P_ns`; `f64::INFINITY` when no unmarked outcome was seen.
pub fn selectivity(dist: &Distribution, marked: &[usize]) -> Result<f64> {
    let (success, runner_up) = success_and_runner_up(dist, marked)?;
    Ok(if runner_up == 0.0 { f64::INFINITY } else { success / runner_up })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MetricsReport {
    pub tv_distance: f64,
    pub hellinger: f64,
    pub fidelity_tv: f64,
    pub fidelity_h: f64,
    pub selectivity: f64,
    pub success_probability: f64,
}

impl MetricsReport {
    /// Compares `measured` against `reference`; selectivity and success
    /// probability describe `measured`.
    pub fn compare(measured: &Distribution, reference: &Distribution, marked: &[usize]) -> Result<Self> {
        let tv_distance = total_variation(measured, reference)?;
        let hellinger = hellinger(measured, reference)?;
        let (success, runner_up) = success_and_runner_up(measured, marked)?;
        Ok(Self {
            tv_distance,
            hellinger,
            fidelity_tv: 1.0 - tv_distance,
            fidelity_h: 1.0 - hellinger,
            selectivity: if runner_up == 0.0 { f64::INFINITY } else { success / runner_up },
            success_probability: success,
        })
    }

    pub const CSV_HEADER: &'static str = "tv_distance,hellinger,fidelity_tv,fidelity_h,selectivity,success_probability";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.tv_distance,
            self.hellinger,
            self.fidelity_tv,
            self.fidelity_h,
            format_selectivity(self.selectivity),
            self.success_probability
        )
    }
}

pub fn format_selectivity(s: f64) -> String {
    if s.is_infinite() {
        "inf".to_string()
    } else {
        format!("{s}")
    }
}

impl std::fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "total variation distance  {:.6}", self.tv_distance)?;
        writeln!(f, "hellinger distance        {:.6}", self.hellinger)?;
        writeln!(f, "fidelity (1 - d)          {:.6}", self.fidelity_tv)?;
        writeln!(f, "fidelity (1 - h)          {:.6}", self.fidelity_h)?;
        let sel = if self.selectivity.is_infinite() { "inf".to_string() } else { format!("{:.6}", self.selectivity) };
        writeln!(f, "selectivity               {sel}")?;
        writeln!(f, "success probability       {:.6}", self.success_probability)
    }
}
