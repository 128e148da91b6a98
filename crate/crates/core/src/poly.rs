//! Sparse exact multivariate polynomials, graded by total degree.
//!
//! Terms are kept in a sorted map from exponent tuple to nonzero scalar, so
//! iteration order (and therefore all serialized output) is deterministic.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{Ring, Scalar};

/// A polynomial over a [`Ring`] in `nvars` variables. No zero coefficients
/// are ever stored; the zero polynomial has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Polynomial {
    pub fn zero(ring: &Ring, nvars: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, nvars: usize, c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero(ring, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn constant_i64(ring: &Ring, nvars: usize, c: i64) -> Polynomial {
        Polynomial::constant(ring, nvars, ring.from_i64(c))
    }

    pub fn one(ring: &Ring, nvars: usize) -> Polynomial {
        Polynomial::constant_i64(ring, nvars, 1)
    }

    pub fn variable(ring: &Ring, nvars: usize, i: usize) -> Polynomial {
        assert!(i < nvars);
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut p = Polynomial::zero(ring, nvars);
        p.add_term(exp, ring.one());
        p
    }

    /// The linear form with the given integer coordinates.
    pub fn linear_form(ring: &Ring, coords: &[i64]) -> Polynomial {
        let mut p = Polynomial::zero(ring, coords.len());
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                let mut exp = vec![0; coords.len()];
                exp[i] = 1;
                p.add_term(exp, ring.from_i64(c));
            }
        }
        p
    }

    pub fn monomial(ring: &Ring, exp: Vec<u32>, c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero(ring, exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in descending lexicographic order (the serialization order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exp: &[u32]) -> Scalar {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Total degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        let mut p = Polynomial::zero(&self.ring, self.nvars);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                p.terms.insert(e.clone(), c.clone());
            }
        }
        p
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Scalar) {
        assert_eq!(exp.len(), self.nvars);
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.ring.add(o.get(), &c);
                if self.ring.is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring || self.nvars != other.nvars {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring, self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), self.ring.neg(c));
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(&self.ring, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring, self.nvars);
        for (e, v) in &self.terms {
            let p = self.ring.mul(v, c);
            if !self.ring.is_zero(&p) {
                out.terms.insert(e.clone(), p);
            }
        }
        out
    }

    pub fn mul_i64(&self, c: i64) -> Polynomial {
        self.mul_scalar(&self.ring.from_i64(c))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.ring, self.nvars);
        for _ in 0..k {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    /// Substitute `images[i]` for variable i. The images must all share a
    /// ring and variable count, which become those of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(images.len(), self.nvars);
        let (ring, nvars) = match images.first() {
            Some(p) => (p.ring.clone(), p.nvars),
            None => (self.ring.clone(), 0),
        };
        // power cache per variable
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(&ring, nvars), p.clone()])
            .collect();
        let mut out = Polynomial::zero(&ring, nvars);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(&ring, nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Apply the canonical map into `target` to every coefficient.
    pub fn change_ring(&self, target: &Ring) -> Result<Polynomial> {
        let mut out = Polynomial::zero(target, self.nvars);
        for (e, c) in &self.terms {
            let mapped = self.ring.map_scalar(c, target)?;
            out.add_term(e.clone(), mapped);
        }
        Ok(out)
    }

    /// Lift a polynomial over Z/m to the integers by taking canonical
    /// representatives of all coefficients. Identity map for integer input.
    pub fn lift_to_integers(&self) -> Polynomial {
        let z = Ring::Integers;
        let mut out = Polynomial::zero(&z, self.nvars);
        for (e, c) in &self.terms {
            let n = self
                .ring
                .lift_to_integer(c)
                .expect("coefficients lift to canonical integers");
            out.add_term(e.clone(), Scalar::Int(n));
        }
        out
    }

    /// Exact division by a homogeneous linear form. Returns the quotient q
    /// with q * alpha == self, or `NotDivisible`.
    ///
    /// The division runs as univariate long division in a pivot variable of
    /// alpha, treating the other variables as parameters; every coefficient
    /// division must be exact in the ring, and the result is verified by
    /// multiplying back.
    pub fn exact_divide_linear(&self, alpha: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(alpha)?;
        if matches!(self.ring, Ring::IntegersMod(_)) {
            return Err(Error::UnsupportedRing(
                "division by a linear form over Z/m; lift to Z first".into(),
            ));
        }
        if alpha.is_zero() || !alpha.is_homogeneous_of(1) {
            return Err(Error::InvalidInput(
                "divisor must be homogeneous of degree 1".into(),
            ));
        }
        if self.is_zero() {
            return Ok(Polynomial::zero(&self.ring, self.nvars));
        }

        // Prefer a pivot variable with unit coefficient; fall back to the
        // first variable present in alpha.
        let mut pivot = None;
        for (e, c) in &alpha.terms {
            let i = e.iter().position(|&k| k == 1).expect("degree-1 term");
            if self.ring.inverse(c).is_some() {
                pivot = Some(i);
                break;
            }
            if pivot.is_none() {
                pivot = Some(i);
            }
        }
        let pivot = pivot.expect("alpha is nonzero");

        let mut pivot_exp = vec![0; self.nvars];
        pivot_exp[pivot] = 1;
        let c = alpha.coeff(&pivot_exp);
        let mut beta = alpha.clone();
        beta.terms.remove(&pivot_exp);

        // split self by pivot exponent
        let top = self
            .terms
            .keys()
            .map(|e| e[pivot])
            .max()
            .unwrap_or(0) as usize;
        let mut layers: Vec<Polynomial> = vec![Polynomial::zero(&self.ring, self.nvars); top + 1];
        for (e, coeffval) in &self.terms {
            let mut e0 = e.clone();
            let k = e0[pivot] as usize;
            e0[pivot] = 0;
            layers[k].add_term(e0, coeffval.clone());
        }

        // q_k for k = top-1 down to 0, via f_k = c*q_{k-1} + beta*q_k
        let mut q_layers: Vec<Polynomial> =
            vec![Polynomial::zero(&self.ring, self.nvars); top.max(1)];
        for k in (1..=top).rev() {
            let upper = if k < top {
                q_layers[k].mul(&beta)?
            } else {
                Polynomial::zero(&self.ring, self.nvars)
            };
            let num = layers[k].sub(&upper)?;
            let mut q = Polynomial::zero(&self.ring, self.nvars);
            for (e, v) in &num.terms {
                let d = self.ring.exact_div(v, &c).ok_or(Error::NotDivisible)?;
                q.add_term(e.clone(), d);
            }
            q_layers[k - 1] = q;
        }
        if layers[0] != q_layers[0].mul(&beta)? {
            return Err(Error::NotDivisible);
        }

        let mut quotient = Polynomial::zero(&self.ring, self.nvars);
        for (k, layer) in q_layers.iter().enumerate() {
            for (e, v) in &layer.terms {
                let mut exp = e.clone();
                exp[pivot] += k as u32;
                quotient.add_term(exp, v.clone());
            }
        }
        debug_assert_eq!(quotient.mul(alpha).expect("same ring"), *self);
        Ok(quotient)
    }

    /// Render with the given variable names, terms in descending
    /// lexicographic order.
    pub fn format_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms_desc() {
            let mut cs = self.ring.format_scalar(c);
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            if vars.is_empty() {
                out.push_str(&cs);
            } else {
                if cs != "1" {
                    out.push_str(&cs);
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }

    /// Scalar value of a degree-zero polynomial.
    pub fn constant_value(&self) -> Scalar {
        self.coeff(&vec![0; self.nvars])
    }

    /// Integer value of a constant polynomial over Z, if it is one.
    pub fn constant_integer(&self) -> Option<BigInt> {
        if self.terms.len() > 1 || self.terms.keys().any(|e| e.iter().any(|&k| k > 0)) {
            return None;
        }
        self.ring.lift_to_integer(&self.constant_value())
    }
}

/// A random polynomial with small integer coefficients, at most `max_terms`
/// monomials and total degree at most `max_degree`. Used by the
/// verification suites; determinism comes from the caller's seeded RNG.
pub fn random_polynomial<R: rand::Rng>(
    ring: &Ring,
    nvars: usize,
    max_degree: u32,
    max_terms: usize,
    rng: &mut R,
) -> Polynomial {
    let mut p = Polynomial::zero(ring, nvars);
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let mut exp = vec![0u32; nvars];
        let mut rem = d;
        for e in exp.iter_mut().take(nvars.saturating_sub(1)) {
            let k = rng.gen_range(0..=rem);
            *e = k;
            rem -= k;
        }
        if nvars > 0 {
            exp[nvars - 1] = rem;
        }
        let c = rng.gen_range(-9i64..=9);
        p = p
            .add(&Polynomial::monomial(ring, exp, ring.from_i64(c)))
            .expect("same ring");
    }
    p
}

/// All exponent tuples of total degree d in `nvars` variables, in descending
/// lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, rem: u32, nvars: usize) {
        if pos + 1 == nvars {
            current[pos] = rem;
            out.push(current.clone());
            return;
        }
        for k in (0..=rem).rev() {
            current[pos] = k;
            rec(out, current, pos + 1, rem - k, nvars);
        }
        current[pos] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut out, &mut current, 0, d, nvars);
    out
}

/// All exponent tuples of total degree at most d.
pub fn monomials_up_to_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::Integers
    }

    fn var(i: usize) -> Polynomial {
        Polynomial::variable(&z(), 2, i)
    }

    #[test]
    fn arithmetic_basics() {
        let e1 = var(0);
        let e2 = var(1);
        let sum = e1.add(&e2).unwrap();
        assert_eq!(sum.num_terms(), 2);
        // (e1 - e2)(e1 + e2) = e1^2 - e2^2
        let prod = e1.sub(&e2).unwrap().mul(&sum).unwrap();
        let expected = e1.pow(2).sub(&e2.pow(2)).unwrap();
        assert_eq!(prod, expected);
        // f + (-f) = 0
        assert!(prod.add(&prod.neg()).unwrap().is_zero());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Polynomial::one(&z(), 2);
        let b = Polynomial::one(&Ring::Rationals, 2);
        assert_eq!(a.add(&b), Err(Error::RingMismatch));
        let c = Polynomial::one(&z(), 3);
        assert_eq!(a.mul(&c), Err(Error::RingMismatch));
    }

    #[test]
    fn divide_difference_of_squares() {
        let e1 = var(0);
        let e2 = var(1);
        let f = e1.pow(2).sub(&e2.pow(2)).unwrap();
        let alpha = e1.sub(&e2).unwrap();
        let q = f.exact_divide_linear(&alpha).unwrap();
        assert_eq!(q, e1.add(&e2).unwrap());
    }

    #[test]
    fn divide_with_content() {
        // 2*e2^3 / 2*e2 = e2^2
        let e2 = var(1);
        let f = e2.pow(3).mul_i64(2);
        let alpha = e2.mul_i64(2);
        let q = f.exact_divide_linear(&alpha).unwrap();
        assert_eq!(q, e2.pow(2));
    }

    #[test]
    fn divide_rejects_symmetric_numerator() {
        let e1 = var(0);
        let e2 = var(1);
        let f = e1.pow(2).add(&e2.pow(2)).unwrap();
        let alpha = e1.sub(&e2).unwrap();
        assert_eq!(f.exact_divide_linear(&alpha), Err(Error::NotDivisible));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(
            monomials_of_degree(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
    }

    #[test]
    fn change_ring_examples() {
        let f2 = Ring::integers_mod(2);
        let two_e1 = var(0).mul_i64(2);
        assert!(two_e1.change_ring(&f2).unwrap().is_zero());

        let loc3 = Ring::localized([3]).unwrap();
        let third = Polynomial::variable(&loc3, 1, 0)
            .mul_scalar(&loc3.parse_scalar("1/3").unwrap());
        assert!(third.change_ring(&Ring::Rationals).is_ok());

        let loc2 = Ring::localized([2]).unwrap();
        let half = Polynomial::variable(&loc2, 1, 0)
            .mul_scalar(&loc2.parse_scalar("1/2").unwrap());
        assert_eq!(half.change_ring(&f2), Err(Error::NoCanonicalMap));
    }

    #[test]
    fn formatting_is_deterministic() {
        let names = vec!["e1".to_string(), "e2".to_string()];
        let e1 = var(0);
        let e2 = var(1);
        let f = e1
            .pow(2)
            .mul(&e2)
            .unwrap()
            .sub(&e2.pow(3).mul_i64(3))
            .unwrap();
        assert_eq!(f.format_with(&names), "e1^2*e2 - 3*e2^3");
    }
}
