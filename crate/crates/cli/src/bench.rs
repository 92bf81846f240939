//! Formula-based inversion versus the matrix oracle, timed on one batch.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use cliffinv::{compose_inverse, default_chain, oracle_inverse, Error, Signature};
use serde::Serialize;

use crate::sampling::batch;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub mean_us: f64,
    pub median_us: f64,
}

impl Timing {
    fn from_samples(mut times: Vec<Duration>) -> Timing {
        times.sort();
        let us = |d: Duration| d.as_secs_f64() * 1e6;
        let mean_us = times.iter().map(|&d| us(d)).sum::<f64>() / times.len() as f64;
        let mid = times.len() / 2;
        let median_us = if times.len() % 2 == 1 {
            us(times[mid])
        } else {
            (us(times[mid - 1]) + us(times[mid])) / 2.0
        };
        Timing { mean_us, median_us }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub p: usize,
    pub q: usize,
    pub samples: usize,
    pub seed: u64,
    pub invertible: usize,
    pub formula: Timing,
    pub oracle: Timing,
    /// Oracle mean over formula mean.
    pub speedup: f64,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Cl({},{})  samples {}  seed {}  invertible {}",
            self.p, self.q, self.samples, self.seed, self.invertible
        )?;
        writeln!(f, "{:<10}{:>14}{:>14}", "method", "mean (us)", "median (us)")?;
        writeln!(
            f,
            "{:<10}{:>14.2}{:>14.2}",
            "formula", self.formula.mean_us, self.formula.median_us
        )?;
        writeln!(
            f,
            "{:<10}{:>14.2}{:>14.2}",
            "oracle", self.oracle.mean_us, self.oracle.median_us
        )?;
        write!(f, "speedup   {:.2}x", self.speedup)
    }
}

pub fn bench(sig: Signature, samples: usize, seed: u64, bound: u32) -> Result<BenchReport, Error> {
    let inputs = batch(sig, seed, bound, samples)?;
    let chain = default_chain(sig.n())?;
    let mut formula = Vec::with_capacity(samples);
    let mut invertible = 0;
    for a in &inputs {
        let start = Instant::now();
        let result = black_box(compose_inverse(black_box(a), &chain)?);
        formula.push(start.elapsed());
        invertible += usize::from(result.inverse.is_some());
    }
    let mut oracle = Vec::with_capacity(samples);
    for a in &inputs {
        let start = Instant::now();
        black_box(oracle_inverse(black_box(a)));
        oracle.push(start.elapsed());
    }
    let formula = Timing::from_samples(formula);
    let oracle = Timing::from_samples(oracle);
    Ok(BenchReport {
        p: sig.p(),
        q: sig.q(),
        samples,
        seed,
        invertible,
        speedup: oracle.mean_us / formula.mean_us.max(f64::MIN_POSITIVE),
        formula,
        oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_both_methods() {
        let report = bench(Signature::new(1, 2).unwrap(), 6, 1, 10).unwrap();
        assert_eq!(report.samples, 6);
        assert!(report.formula.mean_us > 0.0 && report.oracle.mean_us > 0.0);
        let text = report.to_string();
        assert!(text.contains("formula") && text.contains("oracle") && text.contains("speedup"));
    }

    #[test]
    fn median_of_even_and_odd_counts() {
        let ms = |v: &[u64]| v.iter().map(|&x| Duration::from_micros(x)).collect::<Vec<_>>();
        assert_eq!(Timing::from_samples(ms(&[3, 1, 2])).median_us, 2.0);
        assert_eq!(Timing::from_samples(ms(&[4, 1, 2, 3])).median_us, 2.5);
        assert_eq!(Timing::from_samples(ms(&[4, 1, 2, 3])).mean_us, 2.5);
    }
}
