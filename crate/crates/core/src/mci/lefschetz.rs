use serde::{Deserialize, Serialize};

use super::element::AlgebraElement;
use super::maps::{checked_power, component_map, mult_matrix};
use super::{hilbert_function, mci_basis, BasisOrder, MciDescriptor};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::par;
use crate::partition::Partition;
use crate::weyr::weyr_structure_at;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LefschetzKind {
    Strong,
    Weak,
}

/// A component map `×l^i: A_k -> A_{k+i}` that is not of full rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzFailure {
    pub k: usize,
    pub i: usize,
    pub expected_rank: usize,
    pub actual_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub kind: LefschetzKind,
    pub holds: bool,
    pub witness_failures: Vec<LefschetzFailure>,
}

/// Full rank of `×l^i: A_k -> A_{k+i}` for every `k` and every `i >= 1`.
pub fn strong_lefschetz_check(d: &MciDescriptor, l: &AlgebraElement) -> Result<LefschetzReport> {
    lefschetz(d, l, LefschetzKind::Strong)
}

/// Full rank of `×l: A_k -> A_{k+1}` for every `k`.
pub fn weak_lefschetz_check(d: &MciDescriptor, l: &AlgebraElement) -> Result<LefschetzReport> {
    lefschetz(d, l, LefschetzKind::Weak)
}

fn lefschetz(d: &MciDescriptor, l: &AlgebraElement, kind: LefschetzKind) -> Result<LefschetzReport> {
    let basis = mci_basis(d, BasisOrder::GradedReverseLex)?;
    let h = hilbert_function(d);
    let top = d.socle_degree();
    let max_i = match kind {
        LefschetzKind::Strong => top,
        LefschetzKind::Weak => 1.min(top),
    };
    let powers = (0..=max_i).map(|i| checked_power(l, d, 0, i)).collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (1..=max_i).flat_map(|i| (0..=top - i).map(move |k| (k, i))).collect();
    let checked = par::map_slice(&pairs, |&(k, i)| -> Result<Option<LefschetzFailure>> {
        let actual_rank = component_map(&powers[i], d, &basis, k, i)?.rank();
        let expected_rank = h[k].min(h[k + i]);
        Ok((actual_rank != expected_rank).then_some(LefschetzFailure { k, i, expected_rank, actual_rank }))
    });
    let mut witness_failures = checked.into_iter().filter_map(Result::transpose).collect::<Result<Vec<_>>>()?;
    witness_failures.sort_by_key(|f| (f.k, f.i));
    Ok(LefschetzReport { kind, holds: witness_failures.is_empty(), witness_failures })
}

/// Weyr structure of multiplication by a linear element, next to the sorted
/// Hilbert function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralElementReport {
    /// Structure of `×l` at eigenvalue 0.
    pub weyr: Partition,
    pub hilbert_sorted: Partition,
    /// Structure of `×(1 + l)` at eigenvalue 1.
    pub shifted_weyr: Partition,
    /// All three partitions coincide.
    pub equal: bool,
}

/// The structure theorem for `l = x_1 + ... + x_n`. Needs the field
/// characteristic to exceed the socle degree.
pub fn weyr_of_general_element(d: &MciDescriptor) -> Result<GeneralElementReport> {
    d.field().require_char_above(d.socle_degree() as u64)?;
    general_report(d, &AlgebraElement::variable_sum(d))
}

/// Same report for an arbitrary linear form; no outcome is promised.
pub fn weyr_of_linear_element(d: &MciDescriptor, coeffs: &[Scalar]) -> Result<GeneralElementReport> {
    let l = AlgebraElement::linear(d, coeffs)?;
    if l.is_zero() {
        return Err(Error::InvalidElement("the zero form has no interesting structure".into()));
    }
    general_report(d, &l)
}

fn general_report(d: &MciDescriptor, l: &AlgebraElement) -> Result<GeneralElementReport> {
    let basis = mci_basis(d, BasisOrder::GradedReverseLex)?;
    let field = d.field();
    let ml = mult_matrix(l, d, &basis)?;
    let weyr = weyr_structure_at(&ml, &field.zero())?.structure;
    let shifted = ml.add(&crate::matrix::ExactMatrix::identity(ml.rows(), field)?)?;
    let shifted_weyr = weyr_structure_at(&shifted, &field.one())?.structure;
    let hilbert_sorted = Partition::from_unsorted(hilbert_function(d))?;
    let equal = weyr == hilbert_sorted && shifted_weyr == weyr;
    Ok(GeneralElementReport { weyr, hilbert_sorted, shifted_weyr, equal })
}
