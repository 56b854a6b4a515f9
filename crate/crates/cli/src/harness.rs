//! The experiments: discrepancy traces with scaling, pairwise sequence
//! comparisons with win proportions, robustness studies over initial sets,
//! the clustered-initialization study, and the d ∈ {2,3} greedy-vs-Sobol
//! comparison.
//!
//! Every function is deterministic given its arguments (seeds included), so
//! the CSV renderings in [`crate::csvout`] are byte-reproducible.

use lowdisc::discrepancy::{l2_star_warnock, linf_star_exact, linf_star_sampled};
use lowdisc::greedy1d::generate_1d;
use lowdisc::optim::{generate_nd, OptimizerConfig};
use lowdisc::sequences::{sobol, SobolSpec};
use lowdisc::{Error, PointSet, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::seqspec::SequenceSpec;

/// Which discrepancy a trace reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    /// Exact L∞ star discrepancy (d ≤ 3).
    LinfExact,
    /// Lattice lower bound on the L∞ star discrepancy with resolution `m`.
    LinfLowerBound { m: usize },
    /// Squared L2 star discrepancy.
    L2Squared,
}

impl MeasureKind {
    pub fn apply(self, ps: &PointSet) -> Result<f64> {
        Ok(match self {
            MeasureKind::LinfExact => linf_star_exact(ps)?.value,
            MeasureKind::LinfLowerBound { m } => linf_star_sampled(ps, m)?.value,
            MeasureKind::L2Squared => l2_star_warnock(ps)?.value,
        })
    }

    pub fn label(self) -> String {
        match self {
            MeasureKind::LinfExact => "exact".to_string(),
            MeasureKind::LinfLowerBound { m } => format!("lower-bound,m={m}"),
            MeasureKind::L2Squared => "l2".to_string(),
        }
    }
}

/// One trace checkpoint: prefix size, raw measure, scaled measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub n: usize,
    pub raw: f64,
    pub scaled: f64,
}

/// `n · raw / ln(n)^p`. At n = 1 the natural log vanishes and the scaled
/// value is infinite; callers see it rendered as `inf`.
pub fn scaled_value(n: usize, raw: f64, p: f64) -> f64 {
    let nf = n as f64;
    nf * raw / nf.ln().powf(p)
}

fn checkpoints(n: usize, stride: usize) -> Result<Vec<usize>> {
    if stride == 0 {
        return Err(Error::domain("stride must be at least 1"));
    }
    if n < stride {
        return Err(Error::domain(format!(
            "n = {n} is smaller than the stride {stride}"
        )));
    }
    Ok((1..=n / stride).map(|k| k * stride).collect())
}

fn measure_prefixes(
    points: &PointSet,
    ns: &[usize],
    measure: MeasureKind,
    p: f64,
) -> Result<Vec<TraceRecord>> {
    ns.iter()
        .map(|&k| {
            let raw = measure.apply(&points.prefix(k))?;
            Ok(TraceRecord {
                n: k,
                raw,
                scaled: scaled_value(k, raw, p),
            })
        })
        .collect()
}

/// Evaluates `measure` on the sequence's prefixes of size stride, 2·stride, …
/// (generating the full prefix once), or on each member of a per-size family.
pub fn trace(
    spec: &SequenceSpec,
    n: usize,
    stride: usize,
    measure: MeasureKind,
    p: f64,
    seed: u64,
) -> Result<Vec<TraceRecord>> {
    let ns = checkpoints(n, stride)?;
    if spec.is_per_size_family() {
        ns.iter()
            .map(|&k| {
                let raw = measure.apply(&spec.set_at(k)?)?;
                Ok(TraceRecord {
                    n: k,
                    raw,
                    scaled: scaled_value(k, raw, p),
                })
            })
            .collect()
    } else {
        let points = spec.generate(n, seed)?;
        measure_prefixes(&points, &ns, measure, p)
    }
}

/// One comparison checkpoint: the exact L∞ star discrepancies of both
/// prefixes, sequence B's score at this n (1 if strictly lower, 0.5 on a tie,
/// else 0), and B's cumulative win proportion so far.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareRecord {
    pub n: usize,
    pub raw_a: f64,
    pub raw_b: f64,
    pub score_b: f64,
    pub prop_b: f64,
}

/// Compares two equal-dimension sequences checkpoint by checkpoint under the
/// exact L∞ star discrepancy.
pub fn compare(
    spec_a: &SequenceSpec,
    spec_b: &SequenceSpec,
    n: usize,
    stride: usize,
    seed: u64,
) -> Result<Vec<CompareRecord>> {
    if spec_a.dim() != spec_b.dim() {
        return Err(Error::domain(format!(
            "cannot compare sequences of dimensions {} and {}",
            spec_a.dim(),
            spec_b.dim()
        )));
    }
    let ns = checkpoints(n, stride)?;
    // Generate prefix-nested sequences once; per-size families rebuild at
    // each checkpoint.
    let full_a = (!spec_a.is_per_size_family())
        .then(|| spec_a.generate(n, seed))
        .transpose()?;
    let full_b = (!spec_b.is_per_size_family())
        .then(|| spec_b.generate(n, seed))
        .transpose()?;
    let mut records = Vec::with_capacity(ns.len());
    let mut score_sum = 0.0f64;
    for (idx, &k) in ns.iter().enumerate() {
        let set_a = match &full_a {
            Some(ps) => ps.prefix(k),
            None => spec_a.set_at(k)?,
        };
        let set_b = match &full_b {
            Some(ps) => ps.prefix(k),
            None => spec_b.set_at(k)?,
        };
        let raw_a = linf_star_exact(&set_a)?.value;
        let raw_b = linf_star_exact(&set_b)?.value;
        let score_b = if raw_b < raw_a {
            1.0
        } else if raw_b == raw_a {
            0.5
        } else {
            0.0
        };
        score_sum += score_b;
        records.push(CompareRecord {
            n: k,
            raw_a,
            raw_b,
            score_b,
            prop_b: score_sum / (idx as f64 + 1.0),
        });
    }
    Ok(records)
}

/// Pointwise envelope of several traces' scaled values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeRecord {
    pub n: usize,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

/// A robustness study: one labelled trace per initial set, plus the
/// envelope of their scaled values.
#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessResult {
    pub labels: Vec<String>,
    pub traces: Vec<Vec<TraceRecord>>,
    pub envelope: Vec<EnvelopeRecord>,
}

fn envelope_of(traces: &[Vec<TraceRecord>]) -> Vec<EnvelopeRecord> {
    if traces.is_empty() {
        return vec![];
    }
    let len = traces[0].len();
    (0..len)
        .map(|i| {
            let vals: Vec<f64> = traces.iter().map(|t| t[i].scaled).collect();
            EnvelopeRecord {
                n: traces[0][i].n,
                min: vals.iter().copied().fold(f64::INFINITY, f64::min),
                mean: vals.iter().sum::<f64>() / vals.len() as f64,
                max: vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect()
}

fn greedy_traces_from_inits(
    inits: Vec<(String, Vec<f64>)>,
    n: usize,
    stride: usize,
    p: f64,
) -> Result<RobustnessResult> {
    let ns = checkpoints(n, stride)?;
    let mut labels = Vec::with_capacity(inits.len());
    let mut traces = Vec::with_capacity(inits.len());
    for (label, init) in inits {
        if n < init.len() {
            return Err(Error::domain(format!(
                "n = {n} is smaller than the {}-point initial set",
                init.len()
            )));
        }
        let points = generate_1d(&PointSet::from_coords_1d(&init), n - init.len())?;
        traces.push(measure_prefixes(&points, &ns, MeasureKind::LinfExact, p)?);
        labels.push(label);
    }
    let envelope = envelope_of(&traces);
    Ok(RobustnessResult {
        labels,
        traces,
        envelope,
    })
}

/// The eleven canonical single starts: 0.0, 0.1, …, 0.9, and 0.9999.
pub fn single_start_values() -> Vec<f64> {
    let mut v: Vec<f64> = (0..10).map(|j| j as f64 / 10.0).collect();
    v.push(0.9999);
    v
}

/// Greedy runs from each single start, traced under the exact L∞ measure.
pub fn robustness_single_starts(n: usize, stride: usize, p: f64) -> Result<RobustnessResult> {
    let inits = single_start_values()
        .into_iter()
        .map(|x0| (format!("start={x0}"), vec![x0]))
        .collect();
    greedy_traces_from_inits(inits, n, stride, p)
}

/// Greedy runs from `sets` independent `k`-point uniform initial sets drawn
/// from a ChaCha8 stream seeded with `seed`.
pub fn robustness_random_starts(
    sets: usize,
    k: usize,
    n: usize,
    stride: usize,
    p: f64,
    seed: u64,
) -> Result<RobustnessResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inits = (0..sets)
        .map(|s| {
            let init: Vec<f64> = (0..k).map(|_| rng.random::<f64>()).collect();
            (format!("random-set={s}"), init)
        })
        .collect();
    greedy_traces_from_inits(inits, n, stride, p)
}

/// The clustered 100-point initial set: j·10⁻⁴ for j = 0..100.
pub fn bad_init_points() -> Vec<f64> {
    (0..100).map(|j| j as f64 * 1e-4).collect()
}

/// Greedy run from the clustered initial set, traced under the exact L∞
/// measure at multiples of `stride` up to `n` (n ≥ 10⁴ so the run reaches
/// well past the cluster).
pub fn bad_init_experiment(n: usize, stride: usize, p: f64) -> Result<Vec<TraceRecord>> {
    if n < 10_000 {
        return Err(Error::domain(format!(
            "the clustered-initialization study needs n ≥ 10000, got {n}"
        )));
    }
    let init = bad_init_points();
    let ns = checkpoints(n, stride)?;
    let points = generate_1d(&PointSet::from_coords_1d(&init), n - init.len())?;
    measure_prefixes(&points, &ns, MeasureKind::LinfExact, p)
}

/// Largest n the exact L∞ measure is allowed to handle per dimension here;
/// beyond this the caller must opt into the sampled lower bound.
pub fn exact_measure_limit(dim: usize) -> usize {
    match dim {
        2 => 4000,
        3 => 400,
        _ => usize::MAX,
    }
}

/// Paired traces of the heuristic greedy construction and the Sobol
/// sequence in d ∈ {2, 3}, measured identically at identical checkpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct NdExperiment {
    pub kritzinger: Vec<TraceRecord>,
    pub sobol: Vec<TraceRecord>,
    pub measure: MeasureKind,
}

/// Runs the d-dimensional comparison. `sampled = Some(m)` switches both
/// traces to the lattice lower bound with resolution m, which is required
/// when `n` exceeds [`exact_measure_limit`].
pub fn nd_experiment(
    dim: usize,
    cfg: &OptimizerConfig,
    n: usize,
    stride: usize,
    p: f64,
    sampled: Option<usize>,
) -> Result<NdExperiment> {
    if !(2..=3).contains(&dim) {
        return Err(Error::domain(format!(
            "the n-dimensional experiment supports d ∈ {{2, 3}}, got {dim}"
        )));
    }
    let measure = match sampled {
        Some(m) => MeasureKind::LinfLowerBound { m },
        None => {
            let limit = exact_measure_limit(dim);
            if n > limit {
                return Err(Error::domain(format!(
                    "exact L∞ is limited to n ≤ {limit} in d = {dim}; \
                     pass --sampled to use the lattice lower bound"
                )));
            }
            MeasureKind::LinfExact
        }
    };
    let ns = checkpoints(n, stride)?;
    let greedy = generate_nd(&PointSet::new(dim)?, n, cfg)?;
    let sobol_points = sobol(&SobolSpec::new(dim)?, n)?;
    Ok(NdExperiment {
        kritzinger: measure_prefixes(&greedy, &ns, measure, p)?,
        sobol: measure_prefixes(&sobol_points, &ns, measure, p)?,
        measure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> SequenceSpec {
        SequenceSpec::parse(s).unwrap()
    }

    #[test]
    fn trace_checkpoints_and_scaling() {
        let recs = trace(&spec("kronecker"), 100, 30, MeasureKind::LinfExact, 1.0, 0).unwrap();
        assert_eq!(recs.iter().map(|r| r.n).collect::<Vec<_>>(), [30, 60, 90]);
        for r in &recs {
            let expected = r.n as f64 * r.raw / (r.n as f64).ln().powf(1.0);
            assert_eq!(r.scaled, expected);
        }
        // stride = n gives a single record.
        let one = trace(&spec("kronecker"), 64, 64, MeasureKind::LinfExact, 1.0, 0).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].n, 64);
        // Invalid strides are rejected.
        assert!(trace(&spec("kronecker"), 10, 0, MeasureKind::LinfExact, 1.0, 0).is_err());
        assert!(trace(&spec("kronecker"), 5, 10, MeasureKind::LinfExact, 1.0, 0).is_err());
    }

    #[test]
    fn optimal_family_traces_at_half_inverse_n() {
        let recs = trace(&spec("optimal"), 64, 16, MeasureKind::LinfExact, 1.0, 0).unwrap();
        for r in &recs {
            let expected = 1.0 / (2.0 * r.n as f64);
            // The corner arithmetic works on O(1) operands, so the tolerance
            // is absolute in units of machine epsilon.
            assert!(
                (r.raw - expected).abs() <= 4.0 * f64::EPSILON,
                "n = {}: {} vs {}",
                r.n,
                r.raw,
                expected
            );
        }
    }

    #[test]
    fn compare_self_is_all_ties() {
        let recs = compare(&spec("kronecker"), &spec("kronecker"), 50, 10, 0).unwrap();
        for r in &recs {
            assert_eq!(r.score_b, 0.5);
            assert_eq!(r.prop_b, 0.5);
        }
    }

    #[test]
    fn compare_optimal_beats_greedy_everywhere() {
        let recs = compare(&spec("kritzinger"), &spec("optimal"), 60, 10, 0).unwrap();
        for r in &recs {
            assert_eq!(r.score_b, 1.0, "optimal sets must win at n = {}", r.n);
        }
        assert_eq!(recs.last().unwrap().prop_b, 1.0);
    }

    #[test]
    fn compare_rejects_mixed_dimensions() {
        assert!(compare(&spec("kronecker"), &spec("sobol,dim=2"), 50, 10, 0).is_err());
    }

    #[test]
    fn compare_subsample_consistency() {
        // The stride-20 comparison is exactly the restriction of stride-10
        // records to every other checkpoint (raw values and scores match;
        // proportions are cumulative so they are recomputed).
        let fine = compare(&spec("kritzinger"), &spec("kronecker"), 80, 10, 0).unwrap();
        let coarse = compare(&spec("kritzinger"), &spec("kronecker"), 80, 20, 0).unwrap();
        for (i, c) in coarse.iter().enumerate() {
            let f = fine[2 * i + 1];
            assert_eq!(c.n, f.n);
            assert_eq!(c.raw_a, f.raw_a);
            assert_eq!(c.raw_b, f.raw_b);
            assert_eq!(c.score_b, f.score_b);
        }
    }

    #[test]
    fn single_start_robustness_shapes() {
        let r = robustness_single_starts(200, 50, 1.0).unwrap();
        assert_eq!(r.traces.len(), 11);
        assert_eq!(r.labels.len(), 11);
        assert_eq!(r.labels[10], "start=0.9999");
        assert_eq!(r.envelope.len(), 4);
        for e in &r.envelope {
            assert!(e.min <= e.mean && e.mean <= e.max);
            assert!(e.min.is_finite() && e.max.is_finite());
        }
    }

    #[test]
    fn random_robustness_is_seeded() {
        let a = robustness_random_starts(3, 5, 150, 50, 1.0, 9).unwrap();
        let b = robustness_random_starts(3, 5, 150, 50, 1.0, 9).unwrap();
        assert_eq!(a, b);
        let c = robustness_random_starts(3, 5, 150, 50, 1.0, 10).unwrap();
        assert_ne!(a.traces, c.traces);
    }

    #[test]
    fn bad_init_validates_n() {
        assert!(bad_init_experiment(5000, 1000, 1.0).is_err());
        assert_eq!(bad_init_points().len(), 100);
        assert_eq!(bad_init_points()[99], 99.0 * 1e-4);
    }

    #[test]
    fn nd_experiment_limits_and_determinism() {
        let cfg = OptimizerConfig {
            budget: 200,
            seed: 4,
            ..Default::default()
        };
        assert!(nd_experiment(2, &cfg, 4001, 10, 1.0, None).is_err());
        assert!(nd_experiment(3, &cfg, 401, 10, 1.0, None).is_err());
        assert!(nd_experiment(1, &cfg, 100, 10, 1.0, None).is_err());
        let a = nd_experiment(2, &cfg, 60, 20, 1.0, None).unwrap();
        let b = nd_experiment(2, &cfg, 60, 20, 1.0, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.kritzinger.len(), a.sobol.len());
        // Sampled mode is accepted past the exact limit.
        let s = nd_experiment(3, &cfg, 20, 10, 1.0, Some(50)).unwrap();
        assert_eq!(s.measure, MeasureKind::LinfLowerBound { m: 50 });
    }
}
