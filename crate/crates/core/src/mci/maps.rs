use super::element::{mul_monomials, AlgebraElement};
use super::{mci_basis, BasisOrder, GradedBasis, MciDescriptor};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::ExactMatrix;
use crate::par;
use crate::partition::Partition;

/// Matrix of `m -> f m` in the ordered basis. Row `i` holds the coordinates
/// of `f * b_i`, so with `g = Π(1 + x_i)` in the doubling order this is the
/// Sierpinski matrix itself.
pub fn mult_matrix(f: &AlgebraElement, d: &MciDescriptor, basis: &GradedBasis) -> Result<ExactMatrix> {
    d.check_cap()?;
    if basis.len() != d.dim() || basis.monomials().first().is_some_and(|m| m.len() != d.num_vars()) {
        return Err(Error::DimensionMismatch(format!(
            "basis of size {} does not match degrees {:?}",
            basis.len(),
            d.degrees()
        )));
    }
    let n = basis.len();
    let mut out = ExactMatrix::zeros(n, n, d.field())?;
    let rows = par::map_slice(basis.monomials(), |m| image_coords(f, m, d, basis));
    for (i, row) in rows.into_iter().enumerate() {
        for (j, c) in row {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// Coordinates of `f * m` as `(index, coeff)` pairs, summed.
fn image_coords(
    f: &AlgebraElement,
    m: &[u32],
    d: &MciDescriptor,
    basis: &GradedBasis,
) -> Vec<(usize, crate::field::Scalar)> {
    let mono = AlgebraElement::from_terms(d, [(m.to_vec(), d.field().one())]).expect("basis monomial");
    let prod = if f.terms().len() == 1 { f.mul(&mono, d) } else { mono.mul(f, d) };
    prod.terms()
        .iter()
        .map(|(e, c)| (basis.index_of(e).expect("product stays in the basis"), c.clone()))
        .collect()
}

fn graded_basis(d: &MciDescriptor) -> Result<GradedBasis> {
    mci_basis(d, BasisOrder::GradedReverseLex)
}

/// `×l^e` from the degree-`k` component to the degree-`k+e` component, as an
/// `h_{k+e} x h_k` matrix whose columns are images.
pub fn graded_power_map(l: &AlgebraElement, d: &MciDescriptor, k: usize, e: usize) -> Result<ExactMatrix> {
    let basis = graded_basis(d)?;
    let le = checked_power(l, d, k, e)?;
    component_map(&le, d, &basis, k, e)
}

pub(crate) fn checked_power(l: &AlgebraElement, d: &MciDescriptor, k: usize, e: usize) -> Result<AlgebraElement> {
    if l.is_zero() || !l.is_linear() {
        return Err(Error::InvalidElement("expected a nonzero homogeneous linear form".into()));
    }
    let top = d.socle_degree();
    if k + e > top {
        return Err(Error::InvalidRange(format!("k + e = {} exceeds the socle degree {top}", k + e)));
    }
    Ok(l.pow(e, d))
}

/// Matrix of multiplication by a homogeneous `f` of degree `e`, restricted
/// to component `k` (columns) into component `k + e` (rows).
pub(crate) fn component_map(
    f: &AlgebraElement,
    d: &MciDescriptor,
    basis: &GradedBasis,
    k: usize,
    e: usize,
) -> Result<ExactMatrix> {
    let src = basis.component(k);
    let dst = basis.component(k + e);
    let offset = dst[0];
    let mut out = ExactMatrix::zeros(dst.len(), src.len(), d.field())?;
    for (c, &idx) in src.iter().enumerate() {
        let m = &basis.monomials()[idx];
        for (e_out, coeff) in f.terms() {
            if let Some(prod) = mul_monomials(e_out, m, d) {
                let r = basis.index_of(&prod).expect("in basis") - offset;
                let cur = out.get(r, c);
                out.set(r, c, cur.add(coeff)?);
            }
        }
    }
    Ok(out)
}

/// Degree-`k` part of the embedding `B -> A`, `y_g -> sum of the variables in
/// group g`, where `A` is the quadratic algebra on `n = |grouping|` variables
/// and `B` has degrees given by the grouping. Rows index `A_k`, columns `B_k`,
/// both in graded order.
pub fn group_embedding_map(grouping: &Partition, k: usize, field: FieldSpec) -> Result<ExactMatrix> {
    let n = grouping.sum();
    if n > 64 {
        return Err(Error::InvalidGrouping(format!("{n} variables is too many")));
    }
    if k > n {
        return Err(Error::InvalidGrouping(format!("degree {k} exceeds n = {n}")));
    }
    let a = MciDescriptor::quadratic(n, field)?;
    let b = MciDescriptor::new(grouping.parts().iter().map(|&p| p as u32).collect(), field)?;
    let basis_a = graded_basis(&a)?;
    let basis_b = graded_basis(&b)?;
    let images = group_images(grouping, &a);
    let rows = basis_a.component(k);
    let cols = basis_b.component(k);
    let offset = rows[0];
    let mut out = ExactMatrix::zeros(rows.len(), cols.len(), field)?;
    let columns = par::map_slice(&cols, |&j| {
        basis_b.monomials()[j]
            .iter()
            .zip(&images)
            .fold(AlgebraElement::one(&a), |acc, (&e, img)| acc.mul(&img.pow(e as usize, &a), &a))
    });
    for (c, img) in columns.iter().enumerate() {
        for (e, coeff) in img.terms() {
            let r = basis_a.index_of(e).expect("in basis") - offset;
            out.set(r, c, coeff.clone());
        }
    }
    Ok(out)
}

/// `phi(y_g)` for each group, groups taking consecutive variables.
fn group_images(grouping: &Partition, a: &MciDescriptor) -> Vec<AlgebraElement> {
    let mut start = 0;
    grouping
        .parts()
        .iter()
        .map(|&size| {
            let img = (start..start + size).fold(AlgebraElement::zero(), |acc, i| {
                acc.add(&AlgebraElement::variable(a, i).expect("in range"))
            });
            start += size;
            img
        })
        .collect()
}
