//! Monomial complete intersections `F[x_1..x_n]/(x_1^{d_1+1}, ..., x_n^{d_n+1})`.
//!
//! Monomials are exponent vectors `e` with `0 <= e_i <= d_i`; they form a
//! basis graded by total degree, with top (socle) degree `N = d_1 + ... + d_n`.

mod element;
mod lefschetz;
mod maps;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;

pub use element::{AlgebraElement, TermJson};
pub use lefschetz::{
    strong_lefschetz_check, weak_lefschetz_check, weyr_of_general_element, weyr_of_linear_element,
    GeneralElementReport, LefschetzFailure, LefschetzKind, LefschetzReport,
};
pub use maps::{graded_power_map, group_embedding_map, mult_matrix};

/// Largest algebra dimension any operation will build matrices for.
pub const DIM_CAP: usize = 20_000;

/// Degrees `(d_1, ..., d_n)` and the ground field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DescriptorJson", into = "DescriptorJson")]
pub struct MciDescriptor {
    degrees: Vec<u32>,
    field: FieldSpec,
}

#[derive(Serialize, Deserialize)]
struct DescriptorJson {
    degrees: Vec<u32>,
    field: FieldSpec,
}

impl TryFrom<DescriptorJson> for MciDescriptor {
    type Error = Error;

    fn try_from(j: DescriptorJson) -> Result<Self> {
        MciDescriptor::new(j.degrees, j.field)
    }
}

impl From<MciDescriptor> for DescriptorJson {
    fn from(d: MciDescriptor) -> Self {
        DescriptorJson { degrees: d.degrees, field: d.field }
    }
}

impl MciDescriptor {
    pub fn new(degrees: Vec<u32>, field: FieldSpec) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptyInput("at least one variable is required".into()));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidRange(format!("degrees must be positive, got {degrees:?}")));
        }
        Ok(MciDescriptor { degrees, field })
    }

    /// The quadratic case `d = (1, ..., 1)` on `n` variables.
    pub fn quadratic(n: usize, field: FieldSpec) -> Result<Self> {
        Self::new(vec![1; n], field)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.degrees.len()
    }

    /// `Π (d_i + 1)`, saturating.
    pub fn dim(&self) -> usize {
        self.degrees
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d as usize + 1))
            .unwrap_or(usize::MAX)
    }

    pub fn socle_degree(&self) -> usize {
        self.degrees.iter().map(|&d| d as usize).sum()
    }

    pub fn is_quadratic(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }

    pub(crate) fn check_cap(&self) -> Result<()> {
        let dim = self.dim();
        if dim > DIM_CAP {
            Err(Error::DimensionCap { dim, cap: DIM_CAP })
        } else {
            Ok(())
        }
    }

    pub(crate) fn contains(&self, exps: &[u32]) -> bool {
        exps.len() == self.degrees.len() && exps.iter().zip(&self.degrees).all(|(e, d)| e <= d)
    }
}

/// Coefficients `h_0..h_N` of `Π (1 + T + ... + T^{d_j})`.
pub fn hilbert_function(d: &MciDescriptor) -> Vec<usize> {
    let mut h = vec![1usize];
    for &dj in d.degrees() {
        let mut next = vec![0usize; h.len() + dj as usize];
        for (i, &c) in h.iter().enumerate() {
            for s in 0..=dj as usize {
                next[i + s] += c;
            }
        }
        h = next;
    }
    h
}

/// Basis orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisOrder {
    /// Square-free monomials as binary numbers, `x_i` the bit `i - 1`:
    /// `1, x1, x2, x1x2, x3, ...`. Only for `d = (1, ..., 1)`.
    SierpinskiDoubling,
    /// By total degree; within a degree, ascending with the last variable
    /// most significant (`x1 < x2 < ...`, `x1x2 < x1x3 < x2x3`).
    GradedReverseLex,
}

/// An ordered monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    order: BasisOrder,
    monomials: Vec<Vec<u32>>,
    /// Component start indices plus the end, for orders grouped by degree.
    degree_offsets: Option<Vec<usize>>,
    index: HashMap<Vec<u32>, usize>,
}

impl GradedBasis {
    pub fn order(&self) -> BasisOrder {
        self.order
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn degree_offsets(&self) -> Option<&[usize]> {
        self.degree_offsets.as_deref()
    }

    /// Positions of the degree-`k` monomials, in basis order.
    pub fn component(&self, k: usize) -> Vec<usize> {
        match &self.degree_offsets {
            Some(offs) if k + 1 < offs.len() => (offs[k]..offs[k + 1]).collect(),
            Some(_) => vec![],
            None => (0..self.monomials.len()).filter(|&i| degree(&self.monomials[i]) == k).collect(),
        }
    }
}

pub(crate) fn degree(exps: &[u32]) -> usize {
    exps.iter().map(|&e| e as usize).sum()
}

/// The complete monomial basis of the algebra in the given order.
pub fn mci_basis(d: &MciDescriptor, order: BasisOrder) -> Result<GradedBasis> {
    d.check_cap()?;
    let n = d.num_vars();
    let monomials: Vec<Vec<u32>> = match order {
        BasisOrder::SierpinskiDoubling => {
            if !d.is_quadratic() {
                return Err(Error::OrderNotApplicable(
                    "the doubling order needs every degree equal to 1".into(),
                ));
            }
            (0..1usize << n)
                .map(|mask| (0..n).map(|i| ((mask >> i) & 1) as u32).collect())
                .collect()
        }
        BasisOrder::GradedReverseLex => {
            // mixed-radix counting with x_1 as the fastest digit is ascending
            // with the last variable most significant; a stable sort by
            // degree then groups the components
            let mut all = Vec::with_capacity(d.dim());
            let mut cur = vec![0u32; n];
            loop {
                all.push(cur.clone());
                let mut i = 0;
                while i < n && cur[i] == d.degrees()[i] {
                    cur[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                cur[i] += 1;
            }
            all.sort_by_key(|m| degree(m));
            all
        }
    };
    let degree_offsets = (order == BasisOrder::GradedReverseLex).then(|| {
        let top = d.socle_degree();
        let mut offs = vec![0usize; top + 2];
        for m in &monomials {
            offs[degree(m) + 1] += 1;
        }
        for k in 1..offs.len() {
            offs[k] += offs[k - 1];
        }
        offs
    });
    let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(GradedBasis { order, monomials, degree_offsets, index })
}
