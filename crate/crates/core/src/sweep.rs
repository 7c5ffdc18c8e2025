//! Batches of [`verify_compose`](crate::compose::verify_compose) checks over
//! ranges of structures, block counts and eigenvalues.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::compose::{verify_compose_with, ComposeReport, Guard};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::par;
use crate::partition::{partitions_of, Partition};
use crate::weyr::build_basic_weyr;

/// Seed used by random sweeps when none is given.
pub const DEFAULT_SEED: u64 = 0x005E_ED0F_B10C;

/// Largest composed matrix a single case may build.
pub const MAX_CASE_SIZE: usize = 512;

/// Where the structures `m` come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseSource {
    /// Every partition of every integer `1..=max_size`, crossed with all `t`
    /// and eigenvalue choices.
    Exhaustive { max_size: usize },
    /// `count` cases with at most `max_parts` parts each at most `max_part`;
    /// `t` and the eigenvalue are drawn from the request's lists.
    Random { count: usize, seed: u64, max_parts: usize, max_part: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRequest {
    pub source: CaseSource,
    pub t_values: Vec<usize>,
    pub eigenvalues: Vec<i64>,
    pub field: FieldSpec,
    /// `Enforce` rejects the whole request if any case is below the
    /// characteristic bound; `Record` runs those cases without judging them.
    pub guard: Guard,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepCase {
    pub index: usize,
    pub m: Partition,
    pub t: usize,
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub eigenvalue: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Agree,
    Disagree,
    /// Below the characteristic bound and disagreeing; noted, not a failure.
    Recorded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    #[serde(flatten)]
    pub case: SweepCase,
    /// Whether the characteristic bound held for this case.
    pub guarded: bool,
    pub verdict: Verdict,
    pub report: ComposeReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub field: FieldSpec,
    pub seed: Option<u64>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub recorded: usize,
    pub cases: Vec<CaseResult>,
}

impl SweepSummary {
    /// No guarded case disagreed.
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl SweepRequest {
    /// Exhaustive sweep over partitions of integers up to `max_size`.
    pub fn exhaustive(max_size: usize, t_values: Vec<usize>, eigenvalues: Vec<i64>, field: FieldSpec) -> Self {
        SweepRequest { source: CaseSource::Exhaustive { max_size }, t_values, eigenvalues, field, guard: Guard::Enforce }
    }

    /// Random sweep with the default shape (at most 5 parts, each at most 4).
    pub fn random(count: usize, seed: u64, t_values: Vec<usize>, eigenvalues: Vec<i64>, field: FieldSpec) -> Self {
        SweepRequest {
            source: CaseSource::Random { count, seed, max_parts: 5, max_part: 4 },
            t_values,
            eigenvalues,
            field,
            guard: Guard::Enforce,
        }
    }

    pub fn with_guard(mut self, guard: Guard) -> Self {
        self.guard = guard;
        self
    }

    /// The cases in index order.
    pub fn cases(&self) -> Result<Vec<SweepCase>> {
        if self.t_values.is_empty() || self.eigenvalues.is_empty() {
            return Err(Error::EmptyInput("a sweep needs at least one t and one eigenvalue".into()));
        }
        if self.t_values.contains(&0) {
            return Err(Error::InvalidK("block count t must be at least 1".into()));
        }
        let lambdas: Vec<Scalar> = self.eigenvalues.iter().map(|&v| self.field.from_i64(v)).collect();
        let mut raw: Vec<(Partition, usize, Scalar)> = Vec::new();
        match self.source {
            CaseSource::Exhaustive { max_size } => {
                for size in 1..=max_size {
                    for m in partitions_of(size) {
                        for &t in &self.t_values {
                            for l in &lambdas {
                                raw.push((m.clone(), t, l.clone()));
                            }
                        }
                    }
                }
            }
            CaseSource::Random { count, seed, max_parts, max_part } => {
                if max_parts == 0 || max_part == 0 {
                    return Err(Error::InvalidRange("random partitions need positive bounds".into()));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..count {
                    let len = rng.gen_range(1..=max_parts);
                    let parts = (0..len).map(|_| rng.gen_range(1..=max_part)).collect();
                    let m = Partition::from_unsorted(parts)?;
                    let t = *self.t_values.choose(&mut rng).expect("nonempty");
                    let l = lambdas.choose(&mut rng).expect("nonempty").clone();
                    raw.push((m, t, l));
                }
            }
        }
        raw.into_iter()
            .enumerate()
            .map(|(index, (m, t, eigenvalue))| {
                let size = t * m.sum();
                if size > MAX_CASE_SIZE {
                    return Err(Error::InvalidRange(format!(
                        "case {index} builds a {size}x{size} matrix, above {MAX_CASE_SIZE}"
                    )));
                }
                Ok(SweepCase { index, m, t, eigenvalue })
            })
            .collect()
    }

    fn seed(&self) -> Option<u64> {
        match self.source {
            CaseSource::Random { seed, .. } => Some(seed),
            CaseSource::Exhaustive { .. } => None,
        }
    }
}

fn case_guarded(field: FieldSpec, case: &SweepCase) -> bool {
    field.char_guard((case.t * case.m.sum()) as u64)
}

/// Runs every case, in parallel when available; results keep case order.
pub fn verify_sweep(req: &SweepRequest) -> Result<SweepSummary> {
    let cases = req.cases()?;
    if req.guard == Guard::Enforce {
        if let Some(c) = cases.iter().find(|c| !case_guarded(req.field, c)) {
            req.field.require_char_above((c.t * c.m.sum()) as u64)?;
        }
    }
    let results = par::map_slice(&cases, |case| -> Result<CaseResult> {
        let b = build_basic_weyr(&case.eigenvalue, &case.m)?;
        let report = verify_compose_with(&b, case.t, &case.eigenvalue, Guard::Record)?;
        let guarded = case_guarded(req.field, case);
        let verdict = match (report.agree, guarded) {
            (true, _) => Verdict::Agree,
            (false, true) => Verdict::Disagree,
            (false, false) => Verdict::Recorded,
        };
        Ok(CaseResult { case: case.clone(), guarded, verdict, report })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let count = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
    Ok(SweepSummary {
        field: req.field,
        seed: req.seed(),
        total: results.len(),
        passed: count(Verdict::Agree),
        failed: count(Verdict::Disagree),
        recorded: count(Verdict::Recorded),
        cases: results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn exhaustive_small_sweep_agrees() {
        let req = SweepRequest::exhaustive(6, vec![2, 3], vec![1], Q);
        let s = verify_sweep(&req).unwrap();
        // 1 + 2 + 3 + 5 + 7 + 11 partitions, two values of t
        assert_eq!(s.total, 58);
        assert!(s.ok());
        assert_eq!(s.passed, s.total);
        assert!(s.cases.iter().enumerate().all(|(i, c)| c.case.index == i));
    }

    #[test]
    fn zero_eigenvalue_scales_parts() {
        let s = verify_sweep(&SweepRequest::exhaustive(5, vec![2], vec![0], Q)).unwrap();
        for c in &s.cases {
            let doubled: Vec<usize> = c.case.m.parts().iter().map(|p| 2 * p).collect();
            assert_eq!(c.report.computed.parts(), doubled.as_slice());
        }
    }

    #[test]
    fn random_sweeps_are_reproducible() {
        let req = SweepRequest::random(20, 7, vec![2, 3], vec![0, 1, 2], Q);
        let a = req.cases().unwrap();
        assert_eq!(a, req.cases().unwrap());
        let other = SweepRequest::random(20, 8, vec![2, 3], vec![0, 1, 2], Q).cases().unwrap();
        assert_ne!(a, other);
        assert!(a.iter().all(|c| c.m.len() <= 5 && c.m.parts()[0] <= 4));
        assert!(verify_sweep(&req).unwrap().ok());
    }

    #[test]
    fn small_characteristic_is_guarded_or_recorded() {
        let f2 = FieldSpec::prime(2).unwrap();
        let req = SweepRequest::exhaustive(3, vec![2], vec![1], f2);
        assert!(matches!(verify_sweep(&req), Err(Error::CharacteristicTooSmall { .. })));
        let s = verify_sweep(&req.with_guard(Guard::Record)).unwrap();
        assert!(s.ok());
        assert_eq!(s.passed + s.recorded, s.total);
        assert!(s.recorded > 0);
        assert!(s.cases.iter().all(|c| !c.guarded));
    }

    #[test]
    fn large_prime_sweep_agrees() {
        let f = FieldSpec::prime(101).unwrap();
        let s = verify_sweep(&SweepRequest::exhaustive(4, vec![2, 3, 4], vec![0, 1, 3], f)).unwrap();
        assert!(s.ok());
        assert_eq!(s.passed, s.total);
    }

    #[test]
    fn case_size_cap() {
        let req = SweepRequest::exhaustive(1, vec![600], vec![1], Q);
        assert!(matches!(req.cases(), Err(Error::InvalidRange(_))));
    }
}
