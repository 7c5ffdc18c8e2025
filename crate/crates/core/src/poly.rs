//! Univariate polynomials over Q, just enough for rational root search.
//! Coefficients are stored from the constant term upward.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::is_prime;

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn degree(p: &[BigRational]) -> usize {
    p.len().saturating_sub(1)
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(Zero::is_zero)
}

fn derivative(p: &[BigRational]) -> Poly {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let lead_inv = b.last().expect("nonzero divisor").recip();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !is_zero_poly(&r) {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(BigRational::zero());
        }
    }
    (q, trim(r))
}

fn monic(p: Poly) -> Poly {
    let lead = p.last().expect("nonempty").clone();
    p.into_iter().map(|c| c / &lead).collect()
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !is_zero_poly(&b) {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// Primitive integer multiple of `p`.
fn primitive(p: &[BigRational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Positive divisors of `|n|`, `n != 0`.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |f: BigInt, e: u32, factors: &mut Vec<(BigInt, u32)>| {
        if let Some(slot) = factors.iter_mut().find(|(g, _)| *g == f) {
            slot.1 += e;
        } else {
            factors.push((f, e));
        }
    };
    let mut d = 2u64;
    while d < 100_000 && BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            push(bd, e, &mut factors);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let rest = n
            .to_u64()
            .ok_or_else(|| Error::Unsupported("coefficient too large to factor for root search".into()))?;
        for f in factor_u64(rest) {
            push(BigInt::from(f), 1, &mut factors);
        }
    }
    let mut divs = vec![BigInt::one()];
    for (f, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = d.clone();
            for _ in 0..=e {
                next.push(pw.clone());
                pw *= &f;
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// Prime factors (with repetition) by Pollard's rho.
fn factor_u64(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![];
    }
    if is_prime(n) {
        return vec![n];
    }
    if n.is_multiple_of(2) {
        let mut v = vec![2];
        v.extend(factor_u64(n / 2));
        return v;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    for c in 1u64.. {
        let f = |x: u64| (mul(x, x) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            let mut v = factor_u64(d);
            v.extend(factor_u64(n / d));
            return v;
        }
    }
    unreachable!()
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Distinct rational roots of `p` in increasing order, with multiplicities.
pub fn rational_roots(p: &[BigRational]) -> Result<Vec<(BigRational, usize)>> {
    let mut f = trim(p.to_vec());
    if is_zero_poly(&f) {
        return Err(Error::InvalidRange("zero polynomial".into()));
    }
    let mut roots = Vec::new();
    let zeros = f.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push((BigRational::zero(), zeros));
        f.drain(..zeros);
    }
    if degree(&f) == 0 {
        return Ok(roots);
    }
    let g = gcd(&f, &derivative(&f));
    let (squarefree, _) = div_rem(&f, &g);
    let ints = primitive(&trim(squarefree));
    let constant = ints.first().expect("nonempty");
    let lead = ints.last().expect("nonempty");
    let mut found = Vec::new();
    for a in divisors(constant)? {
        for b in divisors(lead)? {
            if !a.gcd(&b).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = BigRational::new(&a * sign, b.clone());
                if eval(&f, &cand).is_zero() {
                    found.push(cand);
                }
            }
        }
    }
    for r in found {
        let linear = vec![-r.clone(), BigRational::one()];
        let mut mult = 0;
        loop {
            let (q, rem) = div_rem(&f, &linear);
            if !is_zero_poly(&rem) {
                break;
            }
            f = q;
            mult += 1;
        }
        roots.push((r, mult));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn from_roots(roots: &[BigRational]) -> Poly {
        let mut p = vec![BigRational::one()];
        for r in roots {
            let mut out = vec![BigRational::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                out[i + 1] += c;
                out[i] -= c * r;
            }
            p = out;
        }
        p
    }

    #[test]
    fn finds_repeated_and_fractional_roots() {
        let roots = [q(1, 1), q(1, 1), q(1, 1), q(-2, 3), q(0, 1), q(5, 1), q(5, 1)];
        let mut p = from_roots(&roots);
        // x^2 + 1 factor keeps the polynomial from splitting
        let mut with_irreducible = vec![BigRational::zero(); p.len() + 2];
        for (i, c) in p.iter().enumerate() {
            with_irreducible[i] += c;
            with_irreducible[i + 2] += c;
        }
        p = with_irreducible;
        let found = rational_roots(&p).unwrap();
        assert_eq!(found, vec![(q(-2, 3), 1), (q(0, 1), 1), (q(1, 1), 3), (q(5, 1), 2)]);
    }

    #[test]
    fn large_powers() {
        let roots: Vec<BigRational> = std::iter::repeat_n(q(6, 1), 30).collect();
        assert_eq!(rational_roots(&from_roots(&roots)).unwrap(), vec![(q(6, 1), 30)]);
        let big_prime = 1_000_000_007i64;
        assert_eq!(
            rational_roots(&from_roots(&[q(big_prime, 1)])).unwrap(),
            vec![(q(big_prime, 1), 1)]
        );
    }

    #[test]
    fn pollard_rho() {
        let mut f = factor_u64(1_000_000_007u64 * 998_244_353);
        f.sort();
        assert_eq!(f, vec![998_244_353, 1_000_000_007]);
    }
}
