//! Exact coefficient rings and their elements.
//!
//! Four kinds of ring are supported: the integers, the integers modulo m,
//! localizations of the integers at a finite set of primes, and the
//! rationals. Every element is exact; no floating point appears anywhere.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    /// Integers modulo m, with m >= 2.
    IntegersMod(BigUint),
    /// Z[1/p : p in P] for a nonempty finite set of primes P.
    Localized(BTreeSet<u64>),
    Rationals,
}

impl Ring {
    pub fn integers_mod(m: u64) -> Ring {
        assert!(m >= 2, "modulus must be at least 2");
        Ring::IntegersMod(BigUint::from(m))
    }

    /// Localization at the given primes. An empty set yields the integers.
    pub fn localized(primes: impl IntoIterator<Item = u64>) -> Result<Ring> {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        for &p in &set {
            if !is_prime_u64(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
        }
        if set.is_empty() {
            Ok(Ring::Integers)
        } else {
            Ok(Ring::Localized(set))
        }
    }

    /// Localization at the primes dividing the given integers.
    pub fn localized_inverting(ns: impl IntoIterator<Item = u64>) -> Result<Ring> {
        let mut primes = BTreeSet::new();
        for n in ns {
            if n == 0 {
                return Err(Error::InvalidInput("cannot invert 0".into()));
            }
            primes.extend(prime_factors_u64(n));
        }
        Ring::localized(primes)
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Rationals => true,
            Ring::IntegersMod(m) => is_prime_biguint(m),
            _ => false,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(BigInt::zero()),
            Ring::IntegersMod(_) => Scalar::Residue(BigUint::zero()),
            Ring::Localized(_) | Ring::Rationals => Scalar::Frac(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_bigint(&BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(n.clone()),
            Ring::IntegersMod(m) => Scalar::Residue(reduce_mod(n, m)),
            Ring::Localized(_) | Ring::Rationals => Scalar::Frac(BigRational::from(n.clone())),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Ring::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (Ring::IntegersMod(m), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue((x + y) % m)
            }
            (Ring::Localized(_) | Ring::Rationals, Scalar::Frac(x), Scalar::Frac(y)) => {
                Scalar::Frac(x + y)
            }
            _ => panic!("scalar does not belong to ring"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Ring::Integers, Scalar::Int(x)) => Scalar::Int(-x),
            (Ring::IntegersMod(m), Scalar::Residue(x)) => {
                if x.is_zero() {
                    Scalar::Residue(BigUint::zero())
                } else {
                    Scalar::Residue(m - x)
                }
            }
            (Ring::Localized(_) | Ring::Rationals, Scalar::Frac(x)) => Scalar::Frac(-x),
            _ => panic!("scalar does not belong to ring"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Ring::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (Ring::IntegersMod(m), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue((x * y) % m)
            }
            (Ring::Localized(_) | Ring::Rationals, Scalar::Frac(x), Scalar::Frac(y)) => {
                Scalar::Frac(x * y)
            }
            _ => panic!("scalar does not belong to ring"),
        }
    }

    /// Exact division a/b, or None when the quotient does not exist in the ring.
    pub fn exact_div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        match (self, a, b) {
            (Ring::Integers, Scalar::Int(x), Scalar::Int(y)) => {
                if y.is_zero() {
                    return None;
                }
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Scalar::Int(q))
            }
            (Ring::IntegersMod(m), Scalar::Residue(x), Scalar::Residue(y)) => {
                let inv = mod_inverse(y, m)?;
                Some(Scalar::Residue((x * inv) % m))
            }
            (Ring::Rationals, Scalar::Frac(x), Scalar::Frac(y)) => {
                (!y.is_zero()).then(|| Scalar::Frac(x / y))
            }
            (Ring::Localized(primes), Scalar::Frac(x), Scalar::Frac(y)) => {
                if y.is_zero() {
                    return None;
                }
                let q = x / y;
                denominator_supported(&q, primes).then_some(Scalar::Frac(q))
            }
            _ => panic!("scalar does not belong to ring"),
        }
    }

    /// Multiplicative inverse, when the element is a unit.
    pub fn inverse(&self, a: &Scalar) -> Option<Scalar> {
        self.exact_div(&self.one(), a)
    }

    /// Whether the integer n maps to a unit of this ring.
    pub fn is_unit_integer(&self, n: i64) -> bool {
        if n == 0 {
            return false;
        }
        let n = n.unsigned_abs();
        match self {
            Ring::Integers => n == 1,
            Ring::Rationals => true,
            Ring::Localized(primes) => {
                let mut n = n;
                for &p in primes {
                    while n % p == 0 {
                        n /= p;
                    }
                }
                n == 1
            }
            Ring::IntegersMod(m) => BigUint::from(n).gcd(m).is_one(),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Residue(x) => x.is_zero(),
            Scalar::Frac(x) => x.is_zero(),
        }
    }

    /// Lift to a canonical integer representative. Residues lift to
    /// {0,...,m-1}; fractions must have denominator 1.
    pub fn lift_to_integer(&self, a: &Scalar) -> Option<BigInt> {
        match a {
            Scalar::Int(x) => Some(x.clone()),
            Scalar::Residue(x) => Some(BigInt::from(x.clone())),
            Scalar::Frac(x) => x.is_integer().then(|| x.to_integer()),
        }
    }

    /// Map a scalar of this ring into `target` along the canonical ring map,
    /// when one exists.
    pub fn map_scalar(&self, a: &Scalar, target: &Ring) -> Result<Scalar> {
        if self == target {
            return Ok(a.clone());
        }
        match (self, target) {
            (Ring::Integers, _) => {
                let n = self.lift_to_integer(a).expect("integer scalar");
                Ok(target.from_bigint(&n))
            }
            (Ring::Localized(_), Ring::Rationals) => Ok(a.clone()),
            (Ring::Localized(p), Ring::Localized(q)) if p.is_subset(q) => Ok(a.clone()),
            (Ring::Localized(primes), Ring::IntegersMod(m)) => {
                let prod = primes
                    .iter()
                    .fold(BigUint::one(), |acc, &p| acc * BigUint::from(p));
                if !prod.gcd(m).is_one() {
                    return Err(Error::NoCanonicalMap);
                }
                let Scalar::Frac(x) = a else {
                    panic!("scalar does not belong to ring")
                };
                let num = reduce_mod(x.numer(), m);
                let den = reduce_mod(x.denom(), m);
                let inv = mod_inverse(&den, m).ok_or(Error::NoCanonicalMap)?;
                Ok(Scalar::Residue((num * inv) % m))
            }
            (Ring::IntegersMod(m), Ring::IntegersMod(m2)) if (m % m2).is_zero() => {
                let Scalar::Residue(x) = a else {
                    panic!("scalar does not belong to ring")
                };
                Ok(Scalar::Residue(x % m2))
            }
            _ => Err(Error::NoCanonicalMap),
        }
    }

    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Int(x) => x.to_string(),
            Scalar::Residue(x) => x.to_string(),
            Scalar::Frac(x) => {
                if x.is_integer() {
                    x.to_integer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
        }
    }

    /// Parse a scalar from its decimal (or "p/q") form.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = |_| Error::InvalidInput(format!("bad scalar `{s}`"));
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num.trim().parse().map_err(bad)?;
            let d: BigInt = den.trim().parse().map_err(bad)?;
            if d.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            let q = BigRational::new(n, d);
            match self {
                Ring::Rationals => Ok(Scalar::Frac(q)),
                Ring::Localized(primes) if denominator_supported(&q, primes) => {
                    Ok(Scalar::Frac(q))
                }
                _ => Err(Error::InvalidInput(format!(
                    "fraction `{s}` not an element of {self}"
                ))),
            }
        } else {
            let n: BigInt = s.trim().parse().map_err(bad)?;
            Ok(self.from_bigint(&n))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::IntegersMod(m) => write!(f, "Z/{m}"),
            Ring::Localized(primes) => {
                let parts: Vec<String> = primes.iter().map(|p| format!("1/{p}")).collect();
                write!(f, "Z[{}]", parts.join(","))
            }
            Ring::Rationals => write!(f, "Q"),
        }
    }
}

/// Parse a ring descriptor: `Z | Q | Z/m | Z[1/n1,1/n2,...]`.
pub fn parse_ring(s: &str) -> Result<Ring> {
    let s = s.trim();
    match s {
        "Z" => return Ok(Ring::Integers),
        "Q" => return Ok(Ring::Rationals),
        _ => {}
    }
    if let Some(m) = s.strip_prefix("Z/") {
        let m: u64 = m
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad modulus in `{s}`")))?;
        if m < 2 {
            return Err(Error::InvalidInput("modulus must be at least 2".into()));
        }
        return Ok(Ring::integers_mod(m));
    }
    if let Some(inner) = s.strip_prefix("Z[").and_then(|t| t.strip_suffix(']')) {
        let mut ns = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            let n = part
                .strip_prefix("1/")
                .ok_or_else(|| Error::InvalidInput(format!("expected 1/n, got `{part}`")))?;
            ns.push(
                n.parse::<u64>()
                    .map_err(|_| Error::InvalidInput(format!("bad integer `{n}`")))?,
            );
        }
        return Ring::localized_inverting(ns);
    }
    Err(Error::InvalidInput(format!("unrecognized ring `{s}`")))
}

/// An exact element of a [`Ring`]. The variant always matches the ring kind:
/// `Int` for the integers, `Residue` for Z/m, `Frac` for localizations and
/// the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Int(BigInt),
    Residue(BigUint),
    Frac(BigRational),
}

fn reduce_mod(n: &BigInt, m: &BigUint) -> BigUint {
    let m_int = BigInt::from(m.clone());
    let r = n.mod_floor(&m_int);
    r.to_biguint().expect("mod_floor is nonnegative")
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m_int = BigInt::from(m.clone());
    let e = a.extended_gcd(&m_int);
    if !e.gcd.is_one() {
        return None;
    }
    Some(reduce_mod(&e.x, m))
}

fn denominator_supported(q: &BigRational, primes: &BTreeSet<u64>) -> bool {
    let mut den = q.denom().abs().to_biguint().expect("abs");
    for &p in primes {
        let p = BigUint::from(p);
        while (&den % &p).is_zero() {
            den /= &p;
        }
    }
    den.is_one()
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime_biguint(m: &BigUint) -> bool {
    match u64::try_from(m) {
        Ok(n) => is_prime_u64(n),
        // Moduli beyond u64 only occur through the API, not the CLI; trial
        // division would not terminate in reasonable time, so refuse.
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localized_empty_is_integers() {
        assert_eq!(Ring::localized([]).unwrap(), Ring::Integers);
    }

    #[test]
    fn mod_arithmetic_is_canonical() {
        let r = Ring::integers_mod(5);
        let a = r.from_i64(-3);
        assert_eq!(r.format_scalar(&a), "2");
        let b = r.from_i64(4);
        assert_eq!(r.format_scalar(&r.add(&a, &b)), "1");
        assert_eq!(r.format_scalar(&r.mul(&a, &b)), "3");
    }

    #[test]
    fn exact_division() {
        let z = Ring::Integers;
        assert_eq!(
            z.exact_div(&z.from_i64(6), &z.from_i64(3)),
            Some(z.from_i64(2))
        );
        assert_eq!(z.exact_div(&z.from_i64(7), &z.from_i64(3)), None);

        let f2 = Ring::integers_mod(2);
        assert_eq!(f2.exact_div(&f2.from_i64(1), &f2.from_i64(2)), None);

        let loc = Ring::localized([2]).unwrap();
        assert!(loc.exact_div(&loc.from_i64(1), &loc.from_i64(4)).is_some());
        assert!(loc.exact_div(&loc.from_i64(1), &loc.from_i64(3)).is_none());
    }

    #[test]
    fn canonical_maps() {
        let z = Ring::Integers;
        let f2 = Ring::integers_mod(2);
        let two = z.from_i64(2);
        assert!(f2.is_zero(&z.map_scalar(&two, &f2).unwrap()));

        let half = Ring::localized([2]).unwrap();
        let s = half.parse_scalar("1/2").unwrap();
        assert!(half.map_scalar(&s, &Ring::Rationals).is_ok());
        assert_eq!(half.map_scalar(&s, &f2), Err(Error::NoCanonicalMap));
        let f3 = Ring::integers_mod(3);
        // 1/2 = 2 mod 3
        assert_eq!(
            half.map_scalar(&s, &f3).unwrap(),
            Scalar::Residue(2u32.into())
        );
    }

    #[test]
    fn ring_parsing_round_trips() {
        for s in ["Z", "Q", "Z/7", "Z[1/2,1/3]"] {
            let r = parse_ring(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        // composite n localizes at its prime factors
        assert_eq!(parse_ring("Z[1/12]").unwrap().to_string(), "Z[1/2,1/3]");
        assert!(parse_ring("Z/1").is_err());
    }

    #[test]
    fn unit_detection() {
        assert!(Ring::integers_mod(2).is_unit_integer(3));
        assert!(!Ring::integers_mod(2).is_unit_integer(2));
        assert!(Ring::localized([3]).unwrap().is_unit_integer(9));
        assert!(!Ring::localized([3]).unwrap().is_unit_integer(6));
        assert!(!Ring::Integers.is_unit_integer(2));
        assert!(Ring::Rationals.is_unit_integer(-7));
    }
}
