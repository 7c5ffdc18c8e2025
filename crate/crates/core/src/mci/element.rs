use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MciDescriptor;
use crate::error::{Error, Result};
use crate::field::Scalar;

/// An element of the algebra as a sparse map from exponent vectors to
/// nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Vec<u32>, Scalar>,
}

/// JSON form of one term: `{"exponents": [1, 0], "coeff": "3/2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    /// Builds an element, summing repeated monomials and dropping zeros.
    /// Monomials outside the degree bounds are rejected.
    pub fn from_terms(d: &MciDescriptor, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Result<Self> {
        let mut out = Self::zero();
        for (exps, c) in terms {
            if !d.contains(&exps) {
                return Err(Error::InvalidElement(format!(
                    "monomial {exps:?} is not in the basis for degrees {:?}",
                    d.degrees()
                )));
            }
            let c = c.coerce(d.field())?;
            out.add_term(exps, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v = v.add(&c).expect("same field");
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn one(d: &MciDescriptor) -> Self {
        Self::monomial(d, vec![0; d.num_vars()], d.field().one())
    }

    fn monomial(d: &MciDescriptor, exps: Vec<u32>, c: Scalar) -> Self {
        Self::from_terms(d, [(exps, c)]).expect("monomial within bounds")
    }

    /// The variable `x_i`, zero-based.
    pub fn variable(d: &MciDescriptor, i: usize) -> Result<Self> {
        if i >= d.num_vars() {
            return Err(Error::InvalidElement(format!("no variable x{}", i + 1)));
        }
        let mut e = vec![0; d.num_vars()];
        e[i] = 1;
        Ok(Self::monomial(d, e, d.field().one()))
    }

    /// `c_1 x_1 + ... + c_n x_n`.
    pub fn linear(d: &MciDescriptor, coeffs: &[Scalar]) -> Result<Self> {
        if coeffs.len() != d.num_vars() {
            return Err(Error::InvalidElement(format!(
                "{} coefficients for {} variables",
                coeffs.len(),
                d.num_vars()
            )));
        }
        Self::from_terms(
            d,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; d.num_vars()];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    /// `l = x_1 + ... + x_n`.
    pub fn variable_sum(d: &MciDescriptor) -> Self {
        Self::linear(d, &vec![d.field().one(); d.num_vars()]).expect("matching arity")
    }

    /// `g = (1 + x_1)(1 + x_2) ... (1 + x_n)`.
    pub fn sierpinski_element(d: &MciDescriptor) -> Self {
        (0..d.num_vars()).fold(Self::one(d), |acc, i| {
            let factor = Self::one(d).add(&Self::variable(d, i).expect("in range"));
            acc.mul(&factor, d)
        })
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&Scalar> {
        self.terms.get(exps)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul(c).expect("same field"));
        }
        out
    }

    /// Product in the quotient: any exponent past its bound kills the term.
    pub fn mul(&self, other: &Self, d: &MciDescriptor) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                if let Some(e) = mul_monomials(ea, eb, d) {
                    out.add_term(e, ca.mul(cb).expect("same field"));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize, d: &MciDescriptor) -> Self {
        (0..k).fold(Self::one(d), |acc, _| acc.mul(self, d))
    }

    /// Constant term, zero if absent.
    pub fn constant(&self, d: &MciDescriptor) -> Scalar {
        self.terms
            .get(&vec![0; d.num_vars()])
            .cloned()
            .unwrap_or_else(|| d.field().zero())
    }

    /// True when every term has total degree 1.
    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|e| super::degree(e) == 1)
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(e, c)| TermJson { exponents: e.clone(), coeff: c.to_string() })
            .collect()
    }

    pub fn from_json(terms: &[TermJson], d: &MciDescriptor) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), d.field().parse_scalar(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(d, parsed)
    }
}

pub(crate) fn mul_monomials(a: &[u32], b: &[u32], d: &MciDescriptor) -> Option<Vec<u32>> {
    a.iter()
        .zip(b)
        .zip(d.degrees())
        .map(|((x, y), bound)| (x + y <= *bound).then_some(x + y))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn sierpinski_element_is_sum_of_square_free_monomials() {
        let d = MciDescriptor::quadratic(3, Q).unwrap();
        let g = AlgebraElement::sierpinski_element(&d);
        assert_eq!(g.terms().len(), 8);
        assert!(g.terms().values().all(Scalar::is_one));
    }

    #[test]
    fn top_power_of_variable_sum() {
        // l^n = n! x_1 ... x_n in the quadratic algebra
        for n in 1..=6usize {
            let d = MciDescriptor::quadratic(n, Q).unwrap();
            let l = AlgebraElement::variable_sum(&d);
            let top = l.pow(n, &d);
            let fact: i64 = (1..=n as i64).product();
            assert_eq!(top.terms().len(), 1);
            assert_eq!(top.coeff(&vec![1; n]), Some(&Q.from_i64(fact)));
            assert!(l.pow(n + 1, &d).is_zero());
        }
    }

    #[test]
    fn truncation_and_validation() {
        let d = MciDescriptor::new(vec![2, 1], Q).unwrap();
        let x = AlgebraElement::variable(&d, 0).unwrap();
        assert!(x.pow(3, &d).is_zero());
        assert!(!x.pow(2, &d).is_zero());
        assert!(AlgebraElement::from_terms(&d, [(vec![3, 0], Q.one())]).is_err());
        assert!(AlgebraElement::from_terms(&d, [(vec![1], Q.one())]).is_err());
        assert!(AlgebraElement::variable(&d, 2).is_err());
        let cancel = AlgebraElement::from_terms(&d, [(vec![1, 0], Q.one()), (vec![1, 0], Q.from_i64(-1))]).unwrap();
        assert!(cancel.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let d = MciDescriptor::new(vec![2, 2], Q).unwrap();
        let f = AlgebraElement::from_terms(
            &d,
            [(vec![1, 0], Scalar::rational(3, 2).unwrap()), (vec![0, 2], Q.from_i64(-1))],
        )
        .unwrap();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&j).unwrap();
        assert_eq!(AlgebraElement::from_json(&back, &d).unwrap(), f);
    }
}
