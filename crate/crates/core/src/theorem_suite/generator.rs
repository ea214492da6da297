use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::checks::verify_all;
use super::report::VerificationReport;
use crate::error::{Error, Result};
use crate::event_algebra::{Event, SampleSpace};
use crate::measure::{ProbabilityMeasure, ProbabilitySpace};
use crate::rational::Rational;

/// Seeded source of random finite probability spaces.
///
/// Trial `i` draws from a ChaCha8 stream keyed by `(seed, i)`, so any trial
/// can be regenerated alone and parallel runs match sequential ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceGenerator {
    pub seed: u64,
    pub max_outcomes: usize,
    pub max_denominator: u64,
    pub events_per_trial: usize,
}

/// One generated input: outcome weights and the sampled events.
#[derive(Debug, Clone)]
pub struct Trial {
    pub index: u64,
    pub space: SampleSpace,
    pub weights: Vec<Rational>,
    pub events: Vec<Event>,
}

impl SpaceGenerator {
    pub fn new(seed: u64) -> Self {
        SpaceGenerator {
            seed,
            max_outcomes: 8,
            max_denominator: 1000,
            events_per_trial: 6,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.into()));
        if !(1..=64).contains(&self.max_outcomes) {
            return bad("max_outcomes must be between 1 and 64");
        }
        if self.max_denominator == 0 {
            return bad("max_denominator must be at least 1");
        }
        if self.events_per_trial == 0 {
            return bad("events_per_trial must be at least 1");
        }
        Ok(())
    }

    /// Regenerates trial `index`.
    pub fn trial(&self, index: u64) -> Trial {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);

        let n = rng.random_range(1..=self.max_outcomes as u64) as usize;
        let raw: Vec<u64> = loop {
            let draw: Vec<u64> = (0..n)
                .map(|_| rng.random_range(0..=self.max_denominator))
                .collect();
            if draw.iter().any(|&w| w > 0) {
                break draw;
            }
        };
        let total: BigInt = raw.iter().map(|&w| BigInt::from(w)).sum();
        let weights = raw
            .iter()
            .map(|&w| Rational::new(BigInt::from(w), total.clone()))
            .collect();

        let space = SampleSpace::numbered(n).expect("1 ≤ n ≤ 64");
        let low = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let events = (0..self.events_per_trial)
            .map(|_| space.event_from_bits(rng.next_u64() & low))
            .collect();

        Trial {
            index,
            space,
            weights,
            events,
        }
    }
}

fn run_trial<F>(gen: &SpaceGenerator, index: u64, fault: &F) -> VerificationReport
where
    F: Fn(&mut Trial),
{
    let mut trial = gen.trial(index);
    fault(&mut trial);
    let measure = ProbabilityMeasure::from_weights_unchecked(&trial.space, trial.weights.clone());
    let ps = ProbabilitySpace::new_unchecked(measure, &trial.events)
        .expect("a handful of events stays under the cap");
    let mut report = verify_all(&ps, &trial.events);
    report.seed = Some(gen.seed);
    for e in &mut report.entries {
        if let Some(c) = &mut e.counterexample {
            c.seed = Some(gen.seed);
            c.trial = Some(index);
        }
    }
    report
}

/// Runs `trials` random spaces through the catalogue, in parallel.
pub fn fuzz(gen: &SpaceGenerator, trials: u64) -> Result<VerificationReport> {
    fuzz_with(gen, trials, true, |_| {})
}

/// Same report as [`fuzz`], computed on the calling thread.
pub fn fuzz_sequential(gen: &SpaceGenerator, trials: u64) -> Result<VerificationReport> {
    fuzz_with(gen, trials, false, |_| {})
}

/// Fuzzing with a hook that may corrupt each trial before it is checked.
///
/// The merge walks trials in index order, so the first counterexample is the
/// one from the lowest failing trial whatever the schedule.
pub fn fuzz_with<F>(gen: &SpaceGenerator, trials: u64, parallel: bool, fault: F) -> Result<VerificationReport>
where
    F: Fn(&mut Trial) + Sync,
{
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    gen.validate()?;
    let start = Instant::now();
    let per_trial: Vec<VerificationReport> = if parallel {
        (0..trials)
            .into_par_iter()
            .map(|i| run_trial(gen, i, &fault))
            .collect()
    } else {
        (0..trials).map(|i| run_trial(gen, i, &fault)).collect()
    };
    let mut report = VerificationReport::empty(Some(gen.seed));
    for r in &per_trial {
        report.merge(r);
    }
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

/// Re-runs a single trial, as recorded in a counterexample.
pub fn replay(gen: &SpaceGenerator, trial: u64) -> Result<VerificationReport> {
    replay_with(gen, trial, |_| {})
}

pub fn replay_with<F>(gen: &SpaceGenerator, trial: u64, fault: F) -> Result<VerificationReport>
where
    F: Fn(&mut Trial),
{
    gen.validate()?;
    Ok(run_trial(gen, trial, &fault))
}
