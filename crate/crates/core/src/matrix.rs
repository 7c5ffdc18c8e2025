//! Dense exact matrices.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, mul_mod, reduce_bigint, sub_mod, FieldSpec, Scalar};
use crate::par;

/// Modulus of the rank pre-check; a full-rank answer modulo this prime is
/// also a full-rank answer over Q.
const CHECK_PRIME: u64 = (1 << 61) - 1;

/// Row counts below this are eliminated without spawning parallel work.
const PAR_ROWS: usize = 48;

#[derive(Clone, PartialEq, Eq)]
enum Data {
    Q(Vec<BigRational>),
    Fp(Vec<u64>, u64),
}

/// A dense row-major matrix over a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Data,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.field())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        Err(Error::EmptyMatrix)
    } else {
        Ok(())
    }
}

impl ExactMatrix {
    /// Builds a matrix from row-major entries, all of which must lie in `field`.
    pub fn new(rows: usize, cols: usize, field: FieldSpec, entries: Vec<Scalar>) -> Result<Self> {
        check_dims(rows, cols)?;
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let data = match field {
            FieldSpec::Rationals => Data::Q(
                entries
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Rational(r) => Ok(r),
                        other => Err(Error::FieldMismatch(other.field().to_string(), field.to_string())),
                    })
                    .collect::<Result<_>>()?,
            ),
            FieldSpec::PrimeField(p) => Data::Fp(
                entries
                    .into_iter()
                    .map(|s| match s {
                        Scalar::Modular { value, p: q } if q == p => Ok(value % p),
                        other => Err(Error::FieldMismatch(other.field().to_string(), field.to_string())),
                    })
                    .collect::<Result<_>>()?,
                p,
            ),
        };
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, field: FieldSpec, f: impl Fn(usize, usize) -> Scalar) -> Result<Self> {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::new(rows, cols, field, entries)
    }

    /// Integer-valued matrix from rows of `i64`.
    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_fn(r, c, field, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Result<Self> {
        check_dims(rows, cols)?;
        Ok(ExactMatrix {
            rows,
            cols,
            data: match field {
                FieldSpec::Rationals => Data::Q(vec![BigRational::zero(); rows * cols]),
                FieldSpec::PrimeField(p) => Data::Fp(vec![0; rows * cols], p),
            },
        })
    }

    pub fn identity(n: usize, field: FieldSpec) -> Result<Self> {
        Self::scalar(n, &field.one())
    }

    /// `lambda * I_n`.
    pub fn scalar(n: usize, lambda: &Scalar) -> Result<Self> {
        let mut m = Self::zeros(n, n, lambda.field())?;
        for i in 0..n {
            m.set(i, i, lambda.clone());
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn field(&self) -> FieldSpec {
        match &self.data {
            Data::Q(_) => FieldSpec::Rationals,
            Data::Fp(_, p) => FieldSpec::PrimeField(*p),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        let k = i * self.cols + j;
        match &self.data {
            Data::Q(v) => Scalar::Rational(v[k].clone()),
            Data::Fp(v, p) => Scalar::Modular { value: v[k], p: *p },
        }
    }

    /// Overwrites one entry. Panics if `value` is from another field.
    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        let k = i * self.cols + j;
        match (&mut self.data, value) {
            (Data::Q(v), Scalar::Rational(r)) => v[k] = r,
            (Data::Fp(v, p), Scalar::Modular { value, p: q }) if *p == q => v[k] = value,
            (_, value) => panic!("cannot store {} entry in a {} matrix", value.field(), self.field_name()),
        }
    }

    fn field_name(&self) -> String {
        self.field().to_string()
    }

    pub fn entries(&self) -> Vec<Scalar> {
        (0..self.rows * self.cols)
            .map(|k| self.get(k / self.cols, k % self.cols))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Q(v) => v.iter().all(Zero::is_zero),
            Data::Fp(v, _) => v.iter().all(|&x| x == 0),
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let (r, c) = (self.rows, self.cols);
        let data = match &self.data {
            Data::Q(v) => Data::Q((0..r * c).map(|k| v[(k % r) * c + k / r].clone()).collect()),
            Data::Fp(v, p) => Data::Fp((0..r * c).map(|k| v[(k % r) * c + k / r]).collect(), *p),
        };
        ExactMatrix { rows: c, cols: r, data }
    }

    fn same_field(&self, other: &ExactMatrix) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field_name(), other.field_name()))
        }
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(other, |a, b| a + b, add_mod)
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(other, |a, b| a - b, sub_mod)
    }

    fn zip_with(
        &self,
        other: &ExactMatrix,
        fq: impl Fn(&BigRational, &BigRational) -> BigRational,
        fp: impl Fn(u64, u64, u64) -> u64,
    ) -> Result<ExactMatrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = match (&self.data, &other.data) {
            (Data::Q(a), Data::Q(b)) => Data::Q(a.iter().zip(b).map(|(x, y)| fq(x, y)).collect()),
            (Data::Fp(a, p), Data::Fp(b, _)) => Data::Fp(a.iter().zip(b).map(|(&x, &y)| fp(x, y, *p)).collect(), *p),
            _ => unreachable!(),
        };
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// `self - lambda * I`.
    pub fn shift(&self, lambda: &Scalar) -> Result<ExactMatrix> {
        self.require_square()?;
        if lambda.field() != self.field() {
            return Err(Error::FieldMismatch(lambda.field().to_string(), self.field_name()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set(i, i, self.get(i, i).sub(lambda)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<ExactMatrix> {
        if c.field() != self.field() {
            return Err(Error::FieldMismatch(c.field().to_string(), self.field_name()));
        }
        let data = match (&self.data, c) {
            (Data::Q(v), Scalar::Rational(c)) => Data::Q(v.iter().map(|x| x * c).collect()),
            (Data::Fp(v, p), Scalar::Modular { value, .. }) => {
                Data::Fp(v.iter().map(|&x| mul_mod(x, *value, *p)).collect(), *p)
            }
            _ => unreachable!(),
        };
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let data = match (&self.data, &other.data) {
            (Data::Fp(a, p), Data::Fp(b, _)) => {
                let p = *p;
                let rows = par::map_range(n, |i| {
                    let mut acc = vec![0u128; m];
                    for l in 0..k {
                        let x = a[i * k + l];
                        if x == 0 {
                            continue;
                        }
                        for (j, slot) in acc.iter_mut().enumerate() {
                            *slot = (*slot + x as u128 * b[l * m + j] as u128) % p as u128;
                        }
                    }
                    acc.into_iter().map(|v| v as u64).collect::<Vec<_>>()
                });
                Data::Fp(rows.concat(), p)
            }
            (Data::Q(a), Data::Q(b)) => Data::Q(mul_rational(a, b, n, k, m)),
            _ => unreachable!(),
        };
        Ok(ExactMatrix { rows: n, cols: m, data })
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// `M^k`, with `M^0 = I`.
    pub fn pow(&self, k: u32) -> Result<ExactMatrix> {
        self.require_square()?;
        let mut acc = ExactMatrix::identity(self.rows, self.field())?;
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `[M^0, M^1, ..., M^k]` by iterated multiplication.
    pub fn powers(&self, k: u32) -> Result<Vec<ExactMatrix>> {
        self.require_square()?;
        let mut out = Vec::with_capacity(k as usize + 1);
        out.push(ExactMatrix::identity(self.rows, self.field())?);
        for _ in 0..k {
            let next = out.last().expect("nonempty").mul(self)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Exact rank over the matrix's field.
    pub fn rank(&self) -> usize {
        match &self.data {
            Data::Fp(v, p) => {
                let rows = v.chunks(self.cols).map(<[u64]>::to_vec).collect();
                rank_mod_p(rows, self.cols, *p)
            }
            Data::Q(v) => {
                let rows = integer_rows(v, self.cols);
                let full = self.rows.min(self.cols);
                let check = rows
                    .iter()
                    .map(|r| r.iter().map(|x| reduce_bigint(x, CHECK_PRIME)).collect())
                    .collect();
                let lower = rank_mod_p(check, self.cols, CHECK_PRIME);
                if lower == full {
                    return full;
                }
                let exact = bareiss_rank_integer(rows, self.cols);
                debug_assert!(exact >= lower);
                exact
            }
        }
    }

    /// Rank modulo a large prime. A lower bound for the rank over Q, and
    /// equal to it unless the prime divides every maximal nonzero minor.
    pub fn rank_mod_check_prime(&self) -> usize {
        match &self.data {
            Data::Fp(..) => self.rank(),
            Data::Q(v) => {
                let rows = integer_rows(v, self.cols)
                    .iter()
                    .map(|r| r.iter().map(|x| reduce_bigint(x, CHECK_PRIME)).collect())
                    .collect();
                rank_mod_p(rows, self.cols, CHECK_PRIME)
            }
        }
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> ExactMatrix {
        let (r, c) = (self.rows, self.cols);
        match &self.data {
            Data::Q(v) => {
                let mut rows: Vec<Vec<BigRational>> = v.chunks(c).map(<[_]>::to_vec).collect();
                let mut lead = 0;
                for col in 0..c {
                    if lead == r {
                        break;
                    }
                    let Some(piv) = (lead..r).find(|&i| !rows[i][col].is_zero()) else {
                        continue;
                    };
                    rows.swap(lead, piv);
                    let inv = rows[lead][col].recip();
                    for x in rows[lead].iter_mut() {
                        *x *= &inv;
                    }
                    let prow = rows[lead].clone();
                    for (i, row) in rows.iter_mut().enumerate() {
                        if i == lead || row[col].is_zero() {
                            continue;
                        }
                        let f = row[col].clone();
                        for (x, y) in row.iter_mut().zip(&prow) {
                            *x -= &f * y;
                        }
                    }
                    lead += 1;
                }
                ExactMatrix { rows: r, cols: c, data: Data::Q(rows.concat()) }
            }
            Data::Fp(v, p) => {
                let p = *p;
                let mut rows: Vec<Vec<u64>> = v.chunks(c).map(<[_]>::to_vec).collect();
                let mut lead = 0;
                for col in 0..c {
                    if lead == r {
                        break;
                    }
                    let Some(piv) = (lead..r).find(|&i| rows[i][col] != 0) else {
                        continue;
                    };
                    rows.swap(lead, piv);
                    let inv = inv_mod(rows[lead][col], p).expect("nonzero pivot");
                    for x in rows[lead].iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    let prow = rows[lead].clone();
                    for (i, row) in rows.iter_mut().enumerate() {
                        if i == lead || row[col] == 0 {
                            continue;
                        }
                        let f = row[col];
                        for (x, &y) in row.iter_mut().zip(&prow) {
                            *x = sub_mod(*x, mul_mod(f, y, p), p);
                        }
                    }
                    lead += 1;
                }
                ExactMatrix { rows: r, cols: c, data: Data::Fp(rows.concat(), p) }
            }
        }
    }

    /// Least `r` with `M^r = 0`.
    pub fn nilpotent_index(&self) -> Result<usize> {
        self.require_square()?;
        let mut power = self.clone();
        for r in 1..=self.rows {
            if power.is_zero() {
                return Ok(r);
            }
            if r < self.rows {
                power = power.mul(self)?;
            }
        }
        Err(Error::NotNilpotent)
    }

    /// Copies out rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Result<ExactMatrix> {
        if r0 >= r1 || c0 >= c1 || r1 > self.rows || c1 > self.cols {
            return Err(Error::DimensionMismatch(format!(
                "block [{r0}..{r1}) x [{c0}..{c1}) of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        ExactMatrix::from_fn(r1 - r0, c1 - c0, self.field(), |i, j| self.get(r0 + i, c0 + j))
    }

    /// Assembles a blocked matrix. `None` blocks are zero; present blocks
    /// must match their row and column sizes.
    pub fn block_assemble(
        grid: &[Vec<Option<ExactMatrix>>],
        row_sizes: &[usize],
        col_sizes: &[usize],
        field: FieldSpec,
    ) -> Result<ExactMatrix> {
        if grid.len() != row_sizes.len() || grid.iter().any(|r| r.len() != col_sizes.len()) {
            return Err(Error::DimensionMismatch("grid shape does not match block sizes".into()));
        }
        let mut out = ExactMatrix::zeros(row_sizes.iter().sum(), col_sizes.iter().sum(), field)?;
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, block) in row.iter().enumerate() {
                if let Some(b) = block {
                    if b.field() != field {
                        return Err(Error::FieldMismatch(b.field_name(), field.to_string()));
                    }
                    if (b.rows, b.cols) != (row_sizes[bi], col_sizes[bj]) {
                        return Err(Error::DimensionMismatch(format!(
                            "block ({bi},{bj}) is {}x{}, expected {}x{}",
                            b.rows, b.cols, row_sizes[bi], col_sizes[bj]
                        )));
                    }
                    for i in 0..b.rows {
                        for j in 0..b.cols {
                            out.set(r0 + i, c0 + j, b.get(i, j));
                        }
                    }
                }
                c0 += col_sizes[bj];
            }
            r0 += row_sizes[bi];
        }
        Ok(out)
    }

    /// Block-diagonal matrix of square blocks.
    pub fn block_diagonal(blocks: &[ExactMatrix]) -> Result<ExactMatrix> {
        let first = blocks.first().ok_or_else(|| Error::EmptyInput("no blocks".into()))?;
        let sizes: Vec<usize> = blocks.iter().map(|b| b.rows).collect();
        let col_sizes: Vec<usize> = blocks.iter().map(|b| b.cols).collect();
        let grid: Vec<Vec<Option<ExactMatrix>>> = (0..blocks.len())
            .map(|i| (0..blocks.len()).map(|j| (i == j).then(|| blocks[i].clone())).collect())
            .collect();
        Self::block_assemble(&grid, &sizes, &col_sizes, first.field())
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Characteristic polynomial `det(xI - M)` over Q, coefficients from the
    /// constant term upward (monic, length `n + 1`).
    pub fn charpoly(&self) -> Result<Vec<BigRational>> {
        self.require_square()?;
        let Data::Q(v) = &self.data else {
            return Err(Error::RequiresRationals);
        };
        let n = self.rows;
        if self.is_upper_triangular() || self.is_lower_triangular() {
            let mut poly = vec![BigRational::one()];
            for i in 0..n {
                poly = poly_mul_linear(&poly, &v[i * n + i]);
            }
            return Ok(poly);
        }
        Ok(hessenberg_charpoly(v.chunks(n).map(<[_]>::to_vec).collect()))
    }

    /// Rational roots of the characteristic polynomial with multiplicities.
    pub fn rational_eigenvalues(&self) -> Result<EigenvalueReport> {
        let poly = self.charpoly()?;
        let roots = crate::poly::rational_roots(&poly)?;
        let found: usize = roots.iter().map(|(_, m)| m).sum();
        Ok(EigenvalueReport {
            eigenvalues: roots.into_iter().map(|(r, m)| (Scalar::Rational(r), m)).collect(),
            degree: self.rows,
            splits: found == self.rows,
        })
    }
}

/// Rational spectrum of a square matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueReport {
    /// Distinct rational eigenvalues in increasing order, with algebraic multiplicity.
    pub eigenvalues: Vec<(Scalar, usize)>,
    pub degree: usize,
    /// False when the multiplicities sum to less than the matrix size.
    pub splits: bool,
}

impl EigenvalueReport {
    pub fn require_split(&self) -> Result<&Self> {
        if self.splits {
            Ok(self)
        } else {
            Err(Error::NonSplit {
                found: self.eigenvalues.iter().map(|(_, m)| m).sum(),
                degree: self.degree,
            })
        }
    }
}

fn poly_mul_linear(poly: &[BigRational], root: &BigRational) -> Vec<BigRational> {
    // poly * (x - root)
    let mut out = vec![BigRational::zero(); poly.len() + 1];
    for (i, c) in poly.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * root;
    }
    out
}

/// Reduction to upper Hessenberg form followed by the standard recurrence
/// on leading principal submatrices.
fn hessenberg_charpoly(mut h: Vec<Vec<BigRational>>) -> Vec<BigRational> {
    let n = h.len();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let pivot_inv = h[m][m - 1].recip();
        for i in m + 1..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let u = &h[i][m - 1] * &pivot_inv;
            for j in 0..n {
                let t = &u * &h[m][j];
                h[i][j] -= t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[i];
                row[m] += t;
            }
        }
    }
    // p[k] = charpoly of the leading k x k block
    let mut p: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for k in 0..n {
        let mut next = poly_mul_linear(&p[k], &h[k][k]);
        let mut prod = BigRational::one();
        for i in (0..k).rev() {
            prod *= &h[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let coeff = &prod * &h[i][k];
            for (d, c) in p[i].iter().enumerate() {
                next[d] -= &coeff * c;
            }
        }
        p.push(next);
    }
    p.pop().expect("n + 1 polynomials")
}

/// Scales each row by the lcm of its denominators.
fn integer_rows(v: &[BigRational], cols: usize) -> Vec<Vec<BigInt>> {
    v.chunks(cols)
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        let inv = inv_mod(prow[col], p).expect("nonzero pivot");
        let update = |row: &mut Vec<u64>| {
            if row[col] == 0 {
                return;
            }
            let f = mul_mod(row[col], inv, p);
            for j in col..cols {
                if prow[j] != 0 {
                    row[j] = sub_mod(row[j], mul_mod(f, prow[j], p), p);
                }
            }
        };
        if rest.len() >= PAR_ROWS {
            par::for_each_mut(rest, update);
        } else {
            rest.iter_mut().for_each(update);
        }
        rank += 1;
    }
    rank
}

/// Integers usable in fraction-free elimination.
trait FractionFree: Clone + Send + Sync {
    fn is_zero_value(&self) -> bool;
    /// `(a*b - c*d) / e`, where the division is known to be exact.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
    fn unit() -> Self;
}

impl FractionFree for i128 {
    fn is_zero_value(&self) -> bool {
        *self == 0
    }

    fn cross(a: &i128, b: &i128, c: &i128, d: &i128, e: &i128) -> Option<i128> {
        let v = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        Some(v / e)
    }

    fn unit() -> i128 {
        1
    }
}

impl FractionFree for BigInt {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }

    fn cross(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt, e: &BigInt) -> Option<BigInt> {
        Some((a * b - c * d) / e)
    }

    fn unit() -> BigInt {
        BigInt::one()
    }
}

/// Bareiss elimination with column skipping. `None` signals overflow.
fn bareiss_rank<T: FractionFree>(mut rows: Vec<Vec<T>>, cols: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev = T::unit();
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero_value()) else {
            continue;
        };
        rows.swap(rank, piv);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        let overflow = AtomicBool::new(false);
        let update = |row: &mut Vec<T>| {
            let factor = row[col].clone();
            for j in col + 1..cols {
                match T::cross(&row[j], &prow[col], &factor, &prow[j], &prev) {
                    Some(v) => row[j] = v,
                    None => {
                        overflow.store(true, Ordering::Relaxed);
                        return;
                    }
                }
            }
        };
        if rest.len() >= PAR_ROWS {
            par::for_each_mut(rest, update);
        } else {
            rest.iter_mut().for_each(update);
        }
        if overflow.load(Ordering::Relaxed) {
            return None;
        }
        prev = prow[col].clone();
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_integer(rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().map(i128::from)).collect())
        .collect();
    if let Some(rank) = small.and_then(|s| bareiss_rank(s, cols)) {
        return rank;
    }
    bareiss_rank(rows, cols).expect("bigint elimination cannot overflow")
}

fn mul_rational(a: &[BigRational], b: &[BigRational], n: usize, k: usize, m: usize) -> Vec<BigRational> {
    let as_small = |v: &[BigRational]| -> Option<Vec<i64>> {
        v.iter()
            .map(|x| if x.is_integer() { x.numer().to_i64() } else { None })
            .collect()
    };
    if let (Some(sa), Some(sb)) = (as_small(a), as_small(b)) {
        let rows: Option<Vec<Vec<i128>>> = par::map_range(n, |i| {
            let mut acc = vec![0i128; m];
            for l in 0..k {
                let x = sa[i * k + l] as i128;
                if x == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = slot.checked_add(x.checked_mul(sb[l * m + j] as i128)?)?;
                }
            }
            Some(acc)
        })
        .into_iter()
        .collect();
        if let Some(rows) = rows {
            return rows
                .into_iter()
                .flatten()
                .map(|v| BigRational::from_integer(BigInt::from(v)))
                .collect();
        }
    }
    let rows = par::map_range(n, |i| {
        let mut acc = vec![BigRational::zero(); m];
        for l in 0..k {
            let x = &a[i * k + l];
            if x.is_zero() {
                continue;
            }
            for (j, slot) in acc.iter_mut().enumerate() {
                let y = &b[l * m + j];
                if !y.is_zero() {
                    *slot += x * y;
                }
            }
        }
        acc
    });
    rows.concat()
}

/// Serialized matrix: `{"field": "q", "rows": R, "cols": C, "entries": [["a/b", ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&ExactMatrix> for MatrixJson {
    fn from(m: &ExactMatrix) -> Self {
        MatrixJson {
            field: m.field(),
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows)
                .map(|i| (0..m.cols).map(|j| m.get(i, j).to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for ExactMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::DimensionMismatch(format!(
                "declared {}x{} but entries do not match",
                j.rows, j.cols
            )));
        }
        let entries = j
            .entries
            .iter()
            .flatten()
            .map(|s| j.field.parse_scalar(s))
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::new(j.rows, j.cols, j.field, entries)
    }
}

impl ExactMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson::from(self)).expect("matrix serializes")
    }

    pub fn from_json(s: &str) -> Result<ExactMatrix> {
        serde_json::from_str::<MatrixJson>(s)?.try_into()
    }

    /// One row per line, scalars in textual form.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(vec![]);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn from_csv(s: &str, field: FieldSpec) -> Result<ExactMatrix> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(s.as_bytes());
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            if rec.iter().all(str::is_empty) {
                continue;
            }
            rows.push(rec.iter().map(|s| field.parse_scalar(s)).collect::<Result<_>>()?);
        }
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged CSV rows".into()));
        }
        ExactMatrix::new(rows.len(), cols, field, rows.concat())
    }
}

impl ExactMatrix {
    /// Integer entries as `i64`, when they all are.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }
}
