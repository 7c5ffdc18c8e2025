//! Block upper bidiagonal compositions `C(B, t)` and their predicted Weyr
//! structures.
//!
//! `C(B, t)` is the `t x t` block matrix with `B` on the diagonal and on the
//! first superdiagonal. For an eigenvalue `λ` of `B` with Weyr structure
//! `m = (m_1, ..., m_r)`, the structure `n = (n_1, ..., n_s)` of `C` at `λ`
//! is predicted from `m` and `t` alone:
//!
//! * `λ = 0`: `n_i = t * m_i`, so `s = r`.
//! * `λ != 0`: `s = r + t - 1`. For `i < t`, `n_i` adds the first `t - i + 1`
//!   parts and then continues in steps of two up to `t` summands; for
//!   `i >= t`, `n_i = m_{i-t+1} + m_{i-t+3} + ... + m_{i+t-1}`. Indices past
//!   `r` contribute nothing.
//!
//! Correspondingly `rank X^k = rank W^{k-t+1} + rank W^{k-t+3} + ... +
//! rank W^{k+t-1}` for `k >= t - 1`, where `X = C - λI` and `W = B - λI`.
//! The cases `t = 2, 3, 4` are theorems; larger `t` is checked empirically
//! by [`verify_compose`] and the sweep in [`crate::sweep`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;
use crate::partition::Partition;
use crate::weyr::weyr_structure_at;

/// Predicted versus computed Weyr structure of `C(B, t)` at one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComposeReport {
    pub t: usize,
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub eigenvalue: Scalar,
    pub input_structure: Partition,
    pub predicted: Partition,
    pub computed: Partition,
    pub rank_ladder_predicted: Vec<usize>,
    pub rank_ladder_computed: Vec<usize>,
    pub agree: bool,
}

/// The `tn x tn` matrix with `B` down the diagonal and first superdiagonal.
pub fn compose(b: &ExactMatrix, t: usize) -> Result<ExactMatrix> {
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    if t == 0 {
        return Err(Error::InvalidK("block count t must be at least 1".into()));
    }
    let grid: Vec<Vec<Option<ExactMatrix>>> = (0..t)
        .map(|i| (0..t).map(|j| (j == i || j == i + 1).then(|| b.clone())).collect())
        .collect();
    let sizes = vec![b.rows(); t];
    ExactMatrix::block_assemble(&grid, &sizes, &sizes, b.field())
}

fn require_t(t: usize) -> Result<()> {
    if t == 0 {
        Err(Error::InvalidK("block count t must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Predicted Weyr structure of `C(B, t)` at an eigenvalue where `B` has
/// structure `m`.
pub fn predicted_structure(m: &Partition, t: usize, zero_eigenvalue: bool) -> Result<Partition> {
    require_t(t)?;
    if t == 1 {
        return Ok(m.clone());
    }
    if zero_eigenvalue {
        return Partition::new(m.parts().iter().map(|&p| t * p).collect());
    }
    let (r, t) = (m.len() as isize, t as isize);
    let s = r + t - 1;
    let parts = (1..=s)
        .map(|i| {
            if i < t {
                let head: usize = (1..=t - i + 1).map(|j| m.part(j)).sum();
                let tail: usize = (1..i).map(|q| m.part(t - i + 1 + 2 * q)).sum();
                head + tail
            } else {
                (0..t).map(|j| m.part(i - t + 1 + 2 * j)).sum()
            }
        })
        .collect();
    Partition::new(parts)
}

/// Predicted `rank X^k` on the generalized eigenspace, `X = C(B,t) - λI`,
/// where `B - λI` restricted there is nilpotent with structure `m`.
///
/// Uses the odd-step rank sum for `k >= t - 1` and partial sums of the
/// predicted structure below that.
pub fn predicted_rank(m: &Partition, t: usize, k: usize, zero_eigenvalue: bool) -> Result<usize> {
    require_t(t)?;
    if zero_eigenvalue {
        return Ok(t * m.tail_sum(k));
    }
    if k + 1 >= t {
        let base = k + 1 - t;
        return Ok((0..t).map(|j| m.tail_sum(base + 2 * j)).sum());
    }
    let n = predicted_structure(m, t, false)?;
    Ok(n.tail_sum(k))
}

/// Full predicted ladder `rank X^k`, `k = 0..=s`, for a matrix whose
/// other eigenvalues occupy `other_dim` dimensions of `B`.
pub fn predicted_ladder(m: &Partition, t: usize, zero_eigenvalue: bool, other_dim: usize) -> Result<Vec<usize>> {
    let s = predicted_structure(m, t, zero_eigenvalue)?.len();
    (0..=s)
        .map(|k| Ok(t * other_dim + predicted_rank(m, t, k, zero_eigenvalue)?))
        .collect()
}

/// Whether the characteristic guard is enforced by [`verify_compose_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    Enforce,
    /// Run regardless; used to record behaviour in small characteristic.
    Record,
}

/// Computes the Weyr structure of `C(B, t)` at `lambda` and compares it with
/// the prediction from the structure of `B`. Requires characteristic 0 or
/// `p > t * n`.
pub fn verify_compose(b: &ExactMatrix, t: usize, lambda: &Scalar) -> Result<ComposeReport> {
    verify_compose_with(b, t, lambda, Guard::Enforce)
}

pub fn verify_compose_with(b: &ExactMatrix, t: usize, lambda: &Scalar, guard: Guard) -> Result<ComposeReport> {
    require_t(t)?;
    if guard == Guard::Enforce {
        b.field().require_char_above((t * b.rows()) as u64)?;
    }
    let input = weyr_structure_at(b, lambda)?;
    let c = compose(b, t)?;
    let computed = weyr_structure_at(&c, lambda)?;
    let zero = lambda.is_zero();
    let m = input.structure;
    let predicted = predicted_structure(&m, t, zero)?;
    let other = b.rows() - m.sum();
    let rank_ladder_predicted = predicted_ladder(&m, t, zero, other)?;
    let agree = predicted == computed.structure && rank_ladder_predicted == computed.rank_ladder;
    Ok(ComposeReport {
        t,
        eigenvalue: lambda.clone(),
        input_structure: m,
        predicted,
        computed: computed.structure,
        rank_ladder_predicted,
        rank_ladder_computed: computed.rank_ladder,
        agree,
    })
}

/// The Sierpinski matrix `B_n`: `B_0 = [1]`, `B_n = C(B_{n-1}, 2)`.
pub fn sierpinski(n: u32, field: FieldSpec) -> Result<ExactMatrix> {
    let mut b = ExactMatrix::identity(1, field)?;
    for _ in 0..n {
        b = compose(&b, 2)?;
    }
    Ok(b)
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(n, 0), ..., C(n, n)` sorted into a partition.
pub fn sierpinski_structure(n: u32) -> Result<Partition> {
    let parts = (0..=n as u64)
        .map(|k| {
            binomial(n as u64, k)
                .and_then(|c| usize::try_from(c).ok())
                .ok_or_else(|| Error::InvalidRange(format!("C({n},{k}) overflows")))
        })
        .collect::<Result<Vec<_>>>()?;
    Partition::from_unsorted(parts)
}
