//! Weyr structures from rank ladders, basic Weyr matrices, and Jordan duality.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;
use crate::par;
use crate::partition::Partition;

/// Weyr structure of a matrix at one eigenvalue, with the ranks it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeyrStructureReport {
    #[serde(serialize_with = "crate::io::ser_scalar")]
    pub eigenvalue: Scalar,
    pub structure: Partition,
    /// `rank (A - λI)^i` for `i = 0..=r`, `r` the number of parts.
    pub rank_ladder: Vec<usize>,
}

/// Ranks of `N^0, N^1, ...` up to the first index after which they no
/// longer change. The last entry is the stable rank.
pub fn rank_ladder(n: &ExactMatrix) -> Result<Vec<usize>> {
    if !n.is_square() {
        return Err(Error::NotSquare { rows: n.rows(), cols: n.cols() });
    }
    let mut ladder = vec![n.rows()];
    let mut power = ExactMatrix::identity(n.rows(), n.field())?;
    let width = par::batch_width();
    loop {
        // a batch of consecutive powers, ranked concurrently
        let mut batch = Vec::with_capacity(width);
        for _ in 0..width {
            power = power.mul(n)?;
            let zero = power.is_zero();
            batch.push(power.clone());
            if zero {
                break;
            }
        }
        let ranks = par::map_slice(&batch, ExactMatrix::rank);
        for r in ranks {
            let last = *ladder.last().expect("nonempty");
            if r == last {
                return Ok(ladder);
            }
            ladder.push(r);
            if r == 0 {
                return Ok(ladder);
            }
        }
    }
}

/// Weyr structure of `m` at `lambda`: `n_i = rank (M-λI)^{i-1} - rank (M-λI)^i`.
pub fn weyr_structure_at(m: &ExactMatrix, lambda: &Scalar) -> Result<WeyrStructureReport> {
    let shifted = m.shift(lambda)?;
    let ladder = rank_ladder(&shifted)?;
    if ladder.len() < 2 {
        return Err(Error::NotAnEigenvalue(lambda.to_string()));
    }
    let parts = ladder.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(WeyrStructureReport {
        eigenvalue: lambda.clone(),
        structure: Partition::new(parts)?,
        rank_ladder: ladder,
    })
}

/// Jordan structure at `lambda`, the dual of the Weyr structure.
pub fn jordan_structure_at(m: &ExactMatrix, lambda: &Scalar) -> Result<Partition> {
    Ok(weyr_structure_at(m, lambda)?.structure.dual())
}

pub fn dual_partition(p: &Partition) -> Partition {
    p.dual()
}

fn block_offsets(m: &Partition) -> Vec<usize> {
    let mut offs = vec![0];
    for &p in m.parts() {
        offs.push(offs.last().unwrap() + p);
    }
    offs
}

/// The basic Weyr matrix with eigenvalue `lambda` and structure `m`: `λI` on
/// the diagonal, `[I; 0]` in each first-superdiagonal block, zero elsewhere.
pub fn build_basic_weyr(lambda: &Scalar, m: &Partition) -> Result<ExactMatrix> {
    let field = lambda.field();
    let offs = block_offsets(m);
    let mut w = ExactMatrix::scalar(m.sum(), lambda)?;
    for i in 0..m.len().saturating_sub(1) {
        for a in 0..m.parts()[i + 1] {
            w.set(offs[i] + a, offs[i + 1] + a, field.one());
        }
    }
    Ok(w)
}

/// Block-diagonal matrix of basic Weyr blocks with distinct eigenvalues.
pub fn assemble_weyr_form(blocks: &[(Scalar, Partition)]) -> Result<ExactMatrix> {
    if blocks.is_empty() {
        return Err(Error::EmptyInput("no Weyr blocks".into()));
    }
    for (i, (a, _)) in blocks.iter().enumerate() {
        if blocks[..i].iter().any(|(b, _)| b == a) {
            return Err(Error::DuplicateEigenvalue(a.to_string()));
        }
    }
    let mats = blocks
        .iter()
        .map(|(l, m)| build_basic_weyr(l, m))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::block_diagonal(&mats)
}

/// Whether `m` has the literal shape of a basic Weyr matrix at `lambda`.
pub fn is_basic_weyr(m: &ExactMatrix, lambda: &Scalar) -> bool {
    infer_basic_weyr_structure(m, lambda).is_some()
}

/// The structure `m` would have as a basic Weyr matrix at `lambda`, read
/// off the zero pattern of `m - λI` block column by block column.
pub fn infer_basic_weyr_structure(m: &ExactMatrix, lambda: &Scalar) -> Option<Partition> {
    if !m.is_square() || lambda.field() != m.field() {
        return None;
    }
    let n = m.rows();
    let nil = m.shift(lambda).ok()?;
    let column_is = |c: usize, one_at: Option<usize>| {
        (0..n).all(|r| {
            let v = nil.get(r, c);
            if Some(r) == one_at {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    };
    let first = (0..n).take_while(|&c| column_is(c, None)).count();
    if first == 0 {
        return None;
    }
    let mut parts = vec![first];
    let (mut start, mut col) = (0, first);
    while col < n {
        let prev = *parts.last().unwrap();
        let next = (0..prev)
            .take_while(|&a| col + a < n && column_is(col + a, Some(start + a)))
            .count();
        if next == 0 {
            return None;
        }
        parts.push(next);
        start += prev;
        col += next;
    }
    let structure = Partition::new(parts).ok()?;
    (build_basic_weyr(lambda, &structure).ok()? == *m).then_some(structure)
}

/// Convenience over [`FieldSpec::Rationals`] for tests and examples.
pub fn basic_weyr_q(lambda: i64, parts: &[usize]) -> Result<ExactMatrix> {
    build_basic_weyr(&FieldSpec::Rationals.from_i64(lambda), &Partition::new(parts.to_vec())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn displayed_basic_weyr_matrix() {
        // the 10x10 example with structure (3,3,2,2), written out densely
        let l = 7;
        let mut rows = vec![vec![0i64; 10]; 10];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = l;
        }
        for (r, c) in [(0, 3), (1, 4), (2, 5), (3, 6), (4, 7), (6, 8), (7, 9)] {
            rows[r][c] = 1;
        }
        let expected = ExactMatrix::from_i64_rows(Q, &rows).unwrap();
        let w = basic_weyr_q(l, &[3, 3, 2, 2]).unwrap();
        assert_eq!(w, expected);
        let rep = weyr_structure_at(&w, &Q.from_i64(l)).unwrap();
        assert_eq!(rep.structure, p(&[3, 3, 2, 2]));
        assert_eq!(rep.rank_ladder, vec![10, 7, 4, 2, 0]);
        assert_eq!(w.shift(&Q.from_i64(l)).unwrap().nilpotent_index(), Ok(4));
    }

    #[test]
    fn zero_matrix_structure() {
        let z = ExactMatrix::zeros(4, 4, Q).unwrap();
        let rep = weyr_structure_at(&z, &Q.zero()).unwrap();
        assert_eq!(rep.structure, p(&[4]));
        assert_eq!(rep.rank_ladder, vec![4, 0]);
        assert!(matches!(weyr_structure_at(&z, &Q.one()), Err(Error::NotAnEigenvalue(_))));
    }

    #[test]
    fn homogeneous_structure_powers() {
        let w = basic_weyr_q(1, &[2, 2, 2]).unwrap();
        let nil = w.shift(&Q.one()).unwrap();
        assert!(nil.pow(3).unwrap().is_zero());
        assert!(!nil.pow(2).unwrap().is_zero());
        assert!(p(&[2, 2, 2]).is_homogeneous());
        assert_eq!(basic_weyr_q(0, &[1]).unwrap(), ExactMatrix::zeros(1, 1, Q).unwrap());
    }

    #[test]
    fn weyr_form_assembly() {
        assert!(matches!(assemble_weyr_form(&[]), Err(Error::EmptyInput(_))));
        let dup = [(Q.zero(), p(&[1])), (Q.zero(), p(&[2]))];
        assert!(matches!(assemble_weyr_form(&dup), Err(Error::DuplicateEigenvalue(_))));
        let single = assemble_weyr_form(&[(Q.zero(), p(&[2, 1]))]).unwrap();
        assert_eq!(single, basic_weyr_q(0, &[2, 1]).unwrap());
        let w = assemble_weyr_form(&[(Q.zero(), p(&[2])), (Q.one(), p(&[1]))]).unwrap();
        assert_eq!(w.rows(), 3);
        assert_eq!(weyr_structure_at(&w, &Q.zero()).unwrap().structure, p(&[2]));
        assert_eq!(weyr_structure_at(&w, &Q.one()).unwrap().structure, p(&[1]));
        // the global ladder at 0 stabilizes at the size of the other block
        assert_eq!(weyr_structure_at(&w, &Q.zero()).unwrap().rank_ladder, vec![3, 1]);
    }

    #[test]
    fn jordan_blocks() {
        for n in 1..6 {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| if i == j { 3 } else if j == i + 1 { 1 } else { 0 }).collect())
                .collect();
            let j = ExactMatrix::from_i64_rows(Q, &rows).unwrap();
            assert_eq!(jordan_structure_at(&j, &Q.from_i64(3)).unwrap(), p(&[n]));
        }
    }

    #[test]
    fn basic_weyr_shape_detection() {
        let w = basic_weyr_q(2, &[3, 3, 2, 2]).unwrap();
        assert_eq!(infer_basic_weyr_structure(&w, &Q.from_i64(2)), Some(p(&[3, 3, 2, 2])));
        assert!(!is_basic_weyr(&w, &Q.from_i64(1)));
        let j2 = ExactMatrix::from_i64_rows(Q, &[vec![5, 1], vec![0, 5]]).unwrap();
        assert_eq!(infer_basic_weyr_structure(&j2, &Q.from_i64(5)), Some(p(&[1, 1])));
        // a Jordan block of size 3 is basic Weyr with structure (1,1,1)
        let j3 = basic_weyr_q(0, &[1, 1, 1]).unwrap();
        assert!(is_basic_weyr(&j3, &Q.zero()));
        let s2 = ExactMatrix::from_i64_rows(
            Q,
            &[vec![1, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]],
        )
        .unwrap();
        assert!(!is_basic_weyr(&s2, &Q.one()));
        // the Weyr matrix with its blocks in the wrong order is rejected
        let swapped = ExactMatrix::from_i64_rows(Q, &[vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        assert!(!is_basic_weyr(&swapped, &Q.zero()));
    }

    #[test]
    fn right_multiplication_shifts_blocks() {
        // X centralizes the nilpotent Weyr matrix of structure (3,2,2)
        let (a, b, c, d, e, f, g, h, i, j, k) = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31);
        let (l, mm, nn, pp, q, r) = (37, 41, 43, 47, 53, 59);
        let x = ExactMatrix::from_i64_rows(
            Q,
            &[
                vec![a, b, e, h, i, l, mm],
                vec![c, d, f, j, k, nn, pp],
                vec![0, 0, g, 0, 0, q, r],
                vec![0, 0, 0, a, b, h, i],
                vec![0, 0, 0, c, d, j, k],
                vec![0, 0, 0, 0, 0, a, b],
                vec![0, 0, 0, 0, 0, c, d],
            ],
        )
        .unwrap();
        let w = basic_weyr_q(0, &[3, 2, 2]).unwrap();
        let expected = ExactMatrix::from_i64_rows(
            Q,
            &[
                vec![0, 0, 0, a, b, h, i],
                vec![0, 0, 0, c, d, j, k],
                vec![0, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0, a, b],
                vec![0, 0, 0, 0, 0, c, d],
                vec![0, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0, 0, 0],
            ],
        )
        .unwrap();
        assert_eq!(x.mul(&w).unwrap(), expected);
        assert_eq!(w.mul(&x).unwrap(), expected);
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        proptest::collection::vec(1usize..=5, 1..=6).prop_map(|v| Partition::from_unsorted(v).unwrap())
    }

    fn arb_block_matrix(m: Partition) -> impl Strategy<Value = (Partition, ExactMatrix)> {
        let n = m.sum();
        proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(n).map(<[i64]>::to_vec).collect();
            (m.clone(), ExactMatrix::from_i64_rows(Q, &rows).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn basic_weyr_round_trip(m in arb_partition(), lambda in -2i64..=2) {
            let l = Q.from_i64(lambda);
            let w = build_basic_weyr(&l, &m).unwrap();
            let rep = weyr_structure_at(&w, &l).unwrap();
            prop_assert_eq!(&rep.structure, &m);
            prop_assert_eq!(infer_basic_weyr_structure(&w, &l), Some(m.clone()));
            prop_assert_eq!(w.shift(&l).unwrap().nilpotent_index().unwrap(), m.len());
            let nil = w.shift(&l).unwrap();
            for i in 0..=m.len() {
                prop_assert_eq!(nil.pow(i as u32).unwrap().rank(), m.tail_sum(i));
            }
            prop_assert_eq!(jordan_structure_at(&w, &l).unwrap(), m.dual());
        }

        #[test]
        fn right_multiplication_shift_pattern((m, x) in arb_partition().prop_flat_map(arb_block_matrix)) {
            let w = build_basic_weyr(&Q.zero(), &m).unwrap();
            let xw = x.mul(&w).unwrap();
            let offs = block_offsets(&m);
            let n = m.sum();
            for r in 0..n {
                for j in 0..m.len() {
                    for a in 0..m.parts()[j] {
                        let got = xw.get(r, offs[j] + a);
                        let want = if j == 0 { Q.zero() } else { x.get(r, offs[j - 1] + a) };
                        prop_assert_eq!(got, want);
                    }
                }
            }
        }

        #[test]
        fn structure_sums_to_multiplicity(m1 in arb_partition(), m2 in arb_partition()) {
            let a = assemble_weyr_form(&[(Q.from_i64(1), m1.clone()), (Q.from_i64(-1), m2.clone())]).unwrap();
            let spectrum = a.rational_eigenvalues().unwrap();
            prop_assert!(spectrum.splits);
            for (lambda, mult) in &spectrum.eigenvalues {
                prop_assert_eq!(weyr_structure_at(&a, lambda).unwrap().structure.sum(), *mult);
            }
        }
    }
}
