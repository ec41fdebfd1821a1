//! Sparse exact polynomial arithmetic in a fixed number of variables, plus
//! the Schur-basis expansion used by the tangent-class engine.
//!
//! The expansion goes through the bialternant description: multiply a
//! symmetric polynomial by the Vandermonde product and read Schur
//! coefficients off the strictly decreasing exponent vectors.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::Partition;

/// Sparse polynomial over the integers: exponent vector (length = number of
/// variables) to nonzero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: HashMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: HashMap::new() }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], BigInt::from(c));
        p
    }

    /// The variable x_i, zero-based.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(exp, BigInt::from(1));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: BigInt) {
        assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, 1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

/// Complete homogeneous symmetric polynomial h_d: the sum of all monomials of
/// total degree d.
pub fn complete_homogeneous(nvars: usize, d: u32) -> Poly {
    let mut p = Poly::zero(nvars);
    let mut exp = vec![0u32; nvars];
    fill(&mut p, &mut exp, 0, d);
    p
}

fn fill(p: &mut Poly, exp: &mut Vec<u32>, var: usize, rem: u32) {
    if var + 1 == exp.len() {
        exp[var] = rem;
        p.add_term(exp.clone(), BigInt::from(1));
        exp[var] = 0;
        return;
    }
    for e in 0..=rem {
        exp[var] = e;
        fill(p, exp, var + 1, rem - e);
        exp[var] = 0;
    }
}

/// The Vandermonde product over all pairs of variables.
pub fn vandermonde(nvars: usize) -> Poly {
    let mut v = Poly::constant(nvars, 1);
    for i in 0..nvars {
        for j in i + 1..nvars {
            let diff = Poly::variable(nvars, i)
                .add(&Poly::variable(nvars, j).mul(&Poly::constant(nvars, -1)));
            v = v.mul(&diff);
        }
    }
    v
}

/// Expand a symmetric polynomial in the Schur basis. Multiplying by the
/// Vandermonde product makes the polynomial alternating, and each Schur
/// summand s_λ contributes the exponent vector λ + (k-1, k-2, ..., 0) with
/// its coefficient — the unique strictly decreasing vector in its orbit.
///
/// Panics if the input is not symmetric; the witness is a surviving monomial
/// with a repeated exponent, which an alternating polynomial cannot have.
pub fn schur_coefficients(p: &Poly) -> Vec<(Partition, BigInt)> {
    let k = p.nvars;
    let alternating = p.mul(&vandermonde(k));
    let mut out = Vec::new();
    for (exp, c) in &alternating.terms {
        let strictly_decreasing = exp.windows(2).all(|w| w[0] > w[1]);
        if strictly_decreasing {
            let lam: Vec<u32> = exp
                .iter()
                .enumerate()
                .map(|(i, &e)| e - (k - 1 - i) as u32)
                .collect();
            out.push((Partition::new(lam), c.clone()));
        } else {
            let mut sorted = exp.clone();
            sorted.sort_unstable();
            assert!(
                sorted.windows(2).all(|w| w[0] != w[1]),
                "schur_coefficients: input polynomial is not symmetric"
            );
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn h2_in_two_variables() {
        // x^2 + xy + y^2
        let h2 = complete_homogeneous(2, 2);
        let mut want = Poly::zero(2);
        want.add_term(vec![2, 0], int(1));
        want.add_term(vec![1, 1], int(1));
        want.add_term(vec![0, 2], int(1));
        assert_eq!(h2, want);
    }

    #[test]
    fn schur_of_complete_homogeneous_is_one_row() {
        // h_d = s_(d)
        for k in 1..=3usize {
            for d in 0..=4u32 {
                let exp = schur_coefficients(&complete_homogeneous(k, d));
                assert_eq!(exp, vec![(pt(&[d]), int(1))]);
            }
        }
    }

    #[test]
    fn schur_of_elementary_is_one_column() {
        // e_2(x,y,z) = s_(1,1)
        let mut e2 = Poly::zero(3);
        e2.add_term(vec![1, 1, 0], int(1));
        e2.add_term(vec![1, 0, 1], int(1));
        e2.add_term(vec![0, 1, 1], int(1));
        assert_eq!(schur_coefficients(&e2), vec![(pt(&[1, 1]), int(1))]);
    }

    #[test]
    fn schur_of_h1_squared() {
        // h_1^2 = s_(2) + s_(1,1)
        let p = complete_homogeneous(2, 1).pow(2);
        assert_eq!(
            schur_coefficients(&p),
            vec![
                (pt(&[2]), int(1)),
                (pt(&[1, 1]), int(1)),
            ]
        );
    }

    #[test]
    #[should_panic(expected = "not symmetric")]
    fn asymmetric_input_is_rejected() {
        let p = Poly::variable(2, 0);
        schur_coefficients(&p);
    }
}
