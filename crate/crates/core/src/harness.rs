//! Broadcast simulation: encode, add an error, let every receiver decode.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::colsearch::SearchLimits;
use crate::decoder::{next_combination, Decoder, ReceiverView};
use crate::error::{Error, Result};
use crate::galois::{all_vectors, weight, Elem, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReceiverOutcome {
    pub receiver: usize,
    pub x_hat: Option<Elem>,
    pub correct: bool,
    /// Decoder error, if decoding failed.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationRun {
    pub x: Vec<Elem>,
    pub error: Vec<Elem>,
    pub broadcast: Vec<Elem>,
    pub outcomes: Vec<ReceiverOutcome>,
    pub seed: Option<u64>,
    pub trial: Option<u64>,
}

impl SimulationRun {
    pub fn all_correct(&self) -> bool {
        self.outcomes.iter().all(|o| o.correct)
    }
}

/// Sends `x L + error` and decodes it at every receiver.
pub fn simulate_once(dec: &Decoder, x: &[Elem], error: &[Elem]) -> Result<SimulationRun> {
    let inst = dec.instance();
    let l = dec.matrix();
    if x.len() != inst.n() || error.len() != l.cols() {
        return Err(Error::dim(format!(
            "x has {} entries and error {}; expected {} and {}",
            x.len(),
            error.len(),
            inst.n(),
            l.cols()
        )));
    }
    let f = l.field();
    let broadcast: Vec<Elem> = l.vec_mul(x);
    let y: Vec<Elem> = broadcast.iter().zip(error).map(|(&a, &b)| f.add(a, b)).collect();
    let outcomes = (0..inst.m())
        .map(|i| {
            let view = ReceiverView { i, y: y.clone(), side: inst.side(i).iter().map(|&j| x[j]).collect() };
            match dec.decode(&view) {
                Ok(r) => ReceiverOutcome {
                    receiver: i,
                    x_hat: Some(r.x_hat),
                    correct: r.x_hat == x[inst.demand(i)],
                    failure: None,
                },
                Err(e) => ReceiverOutcome { receiver: i, x_hat: None, correct: false, failure: Some(e.to_string()) },
            }
        })
        .collect();
    Ok(SimulationRun { x: x.to_vec(), error: error.to_vec(), broadcast, outcomes, seed: None, trial: None })
}

/// How injected errors are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ErrorModel {
    /// Weight uniform in `0..=w`, then support and nonzero values uniform.
    UpTo(usize),
    /// Weight exactly `w`, support and nonzero values uniform.
    Exactly(usize),
}

impl ErrorModel {
    fn weights(&self, len: usize) -> std::ops::RangeInclusive<usize> {
        match *self {
            ErrorModel::UpTo(w) => 0..=w.min(len),
            ErrorModel::Exactly(w) => w.min(len)..=w.min(len),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CampaignStats {
    pub trials: u64,
    /// Trials in which every receiver decoded correctly.
    pub successes: u64,
    pub receiver_failures: Vec<u64>,
    pub max_weight: usize,
    /// Receiver decodes that returned an error instead of a symbol.
    pub decode_errors: u64,
}

impl CampaignStats {
    fn empty(m: usize) -> Self {
        CampaignStats { receiver_failures: vec![0; m], ..Default::default() }
    }

    fn record(&mut self, run: &SimulationRun) {
        self.trials += 1;
        self.successes += u64::from(run.all_correct());
        self.max_weight = self.max_weight.max(weight(&run.error));
        for o in &run.outcomes {
            if !o.correct {
                self.receiver_failures[o.receiver] += 1;
            }
            self.decode_errors += u64::from(o.failure.is_some());
        }
    }

    fn merge(mut self, other: CampaignStats) -> Self {
        self.trials += other.trials;
        self.successes += other.successes;
        self.max_weight = self.max_weight.max(other.max_weight);
        self.decode_errors += other.decode_errors;
        for (a, b) in self.receiver_failures.iter_mut().zip(other.receiver_failures) {
            *a += b;
        }
        self
    }

    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.successes as f64 / self.trials as f64
        }
    }
}

fn random_error(rng: &mut ChaCha8Rng, f: &FieldSpec, len: usize, model: ErrorModel) -> Vec<Elem> {
    let w = rng.gen_range(model.weights(len));
    let mut e = vec![0; len];
    for pos in sample(rng, len, w) {
        e[pos] = rng.gen_range(1..f.order());
    }
    e
}

/// `trials` independent runs. Trial `t` draws from the ChaCha8 stream
/// `(seed, t)`, so the statistics do not depend on how trials are split
/// across workers.
pub fn trial_campaign(
    dec: &Decoder,
    trials: u64,
    seed: u64,
    model: ErrorModel,
    limits: &SearchLimits,
) -> Result<CampaignStats> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let inst = dec.instance();
    let f = dec.matrix().field().clone();
    let len = dec.matrix().cols();
    let m = inst.m();
    limits.run(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t);
                let x: Vec<Elem> = (0..inst.n()).map(|_| rng.gen_range(0..f.order())).collect();
                let e = random_error(&mut rng, &f, len, model);
                let mut run = simulate_once(dec, &x, &e)?;
                run.seed = Some(seed);
                run.trial = Some(t);
                let mut s = CampaignStats::empty(m);
                s.record(&run);
                Ok(s)
            })
            .try_reduce(|| CampaignStats::empty(m), |a, b| Ok(a.merge(b)))
    })
}

/// Every error vector whose weight the model allows, by weight, then
/// support in lexicographic order, then values.
pub fn all_errors(q: u32, len: usize, model: ErrorModel) -> impl Iterator<Item = Vec<Elem>> {
    model.weights(len).flat_map(move |w| {
        let mut support: Option<Vec<usize>> = Some((0..w).collect());
        std::iter::from_fn(move || {
            let s = support.take()?;
            let mut next = s.clone();
            if next_combination(&mut next, len) {
                support = Some(next);
            }
            Some(s)
        })
        .flat_map(move |s| {
            all_vectors(q, s.len()).filter(|v| v.iter().all(|&x| x != 0)).map(move |vals| {
                let mut e = vec![0; len];
                for (&p, &v) in s.iter().zip(&vals) {
                    e[p] = v;
                }
                e
            })
        })
    })
}

/// Runs every message vector against every error the model allows.
pub fn exhaustive_campaign(dec: &Decoder, model: ErrorModel, cap: u128) -> Result<CampaignStats> {
    let inst = dec.instance();
    let f = dec.matrix().field();
    let len = dec.matrix().cols();
    let q = f.order();
    let errors: u128 = model
        .weights(len)
        .map(|w| {
            let c: u128 = (0..w as u128).fold(1, |a, i| a * (len as u128 - i) / (i + 1));
            c * (q as u128 - 1).pow(w as u32)
        })
        .sum();
    let total = (q as u128).pow(inst.n() as u32).saturating_mul(errors);
    if total > cap {
        return Err(Error::budget("exhaustive campaign cases", total, cap));
    }
    let xs: Vec<Vec<Elem>> = all_vectors(q, inst.n()).collect();
    let m = inst.m();
    xs.par_iter()
        .map(|x| {
            let mut s = CampaignStats::empty(m);
            for e in all_errors(q, len, model) {
                s.record(&simulate_once(dec, x, &e)?);
            }
            Ok(s)
        })
        .try_reduce(|| CampaignStats::empty(m), |a, b| Ok(a.merge(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    fn ex1() -> Decoder {
        Decoder::new(&golden::example1(), &golden::example1_matrix(), 1).unwrap()
    }

    #[test]
    fn single_runs() {
        let run = simulate_once(&ex1(), &[1, 0, 1], &[1, 0, 0, 0]).unwrap();
        assert!(run.all_correct());
        let run = simulate_once(&ex1(), &[1, 1, 0], &[0; 4]).unwrap();
        assert!(run.all_correct());
        assert!(simulate_once(&ex1(), &[1, 1], &[0; 4]).is_err());
    }

    #[test]
    fn campaigns_are_seed_deterministic_and_worker_independent() {
        let dec = Decoder::new(&golden::pentagon(), &golden::pentagon_matrix(), 2).unwrap();
        let a = trial_campaign(&dec, 200, 9, ErrorModel::UpTo(2), &SearchLimits { workers: 1, ..Default::default() })
            .unwrap();
        let b = trial_campaign(&dec, 200, 9, ErrorModel::UpTo(2), &SearchLimits { workers: 3, ..Default::default() })
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.successes, 200);
        assert!(a.max_weight <= 2);
    }

    #[test]
    fn error_enumeration_counts() {
        assert_eq!(all_errors(2, 9, ErrorModel::UpTo(2)).count(), 46);
        assert_eq!(all_errors(2, 4, ErrorModel::Exactly(2)).count(), 6);
        assert_eq!(all_errors(3, 3, ErrorModel::Exactly(1)).count(), 6);
    }

    #[test]
    fn exact_weight_two_on_example1_fails_sometimes() {
        let s = exhaustive_campaign(&ex1(), ErrorModel::Exactly(2), 1 << 20).unwrap();
        assert_eq!(s.trials, 8 * 6);
        assert!(s.successes < s.trials);
    }
}
