//! Torsion index, top classes and Schubert polynomial families, expansion
//! over the invariant subalgebra, the pairing, and the type A dual basis.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::demazure::{partial, weyl_act};
use crate::error::{Error, Result};
use crate::linalg::{FieldSolver, IntSolver};
use crate::poly::{monomials_of_degree, Polynomial};
use crate::ring::{Ring, Scalar};
use crate::weyl::WeylGroup;

/// The torsion index t(G): the positive generator of the ideal
/// partial_w0(S^N) of Z, computed as the gcd of partial_w0 over all
/// monomials of top degree N.
///
/// In top degree the characteristic map sends u to partial_w0(u) times the
/// orientation class, since it intertwines the divided differences and the
/// top class maps to 1 under partial_w0; the order of the cokernel is
/// therefore the index of this ideal.
pub fn torsion_index(group: &WeylGroup) -> u64 {
    let z = Ring::Integers;
    let n = group.num_positive_roots() as u32;
    let r = group.datum().rank();
    let w0 = group.longest_element();
    let mut gcd = BigInt::zero();
    for exp in monomials_of_degree(r, n) {
        let m = Polynomial::monomial(&z, exp, z.one());
        let v = partial(group, w0, &m)
            .constant_integer()
            .expect("top-degree image is constant");
        gcd = gcd.gcd(&v);
        if gcd.is_one() {
            break;
        }
    }
    u64::try_from(gcd.abs()).expect("torsion index is small")
}

/// How to pick the top class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopClassStrategy {
    /// The specific classes used in the low-rank computations: the staircase
    /// monomial for U(l+1) and its restriction for SU, e1^3 e2 for Sp(2),
    /// and the solved class for SO(3) and PSU(3).
    Preset,
    /// An extended-gcd combination of partial_w0 over top-degree monomials,
    /// scaled by the inverse of the torsion index.
    Solve,
}

/// A degree-N class S with partial_w0(S) = 1 in the ring.
pub fn top_class(group: &WeylGroup, ring: &Ring, strategy: TopClassStrategy) -> Result<Polynomial> {
    let t = torsion_index(group);
    if !ring.is_unit_integer(t as i64) {
        return Err(Error::TorsionNotInvertible(t));
    }
    match strategy {
        TopClassStrategy::Solve => top_class_solve(group, ring, t),
        TopClassStrategy::Preset => match group.datum().name() {
            Some(name @ ("U2" | "U3" | "U4" | "SU2" | "SU3")) => {
                let rank = group.datum().rank();
                let l = match name {
                    "U2" | "SU2" => 1,
                    "U3" | "SU3" => 2,
                    _ => 3,
                };
                let mut exp = vec![0u32; rank];
                for (k, e) in exp.iter_mut().enumerate().take(l) {
                    *e = (l - k) as u32;
                }
                Ok(Polynomial::monomial(ring, exp, ring.one()))
            }
            Some("Sp2") => Ok(Polynomial::monomial(ring, vec![3, 1], ring.one())),
            Some("PSU3") => {
                // the SU(3) staircase class carried along the lattice
                // inclusion, so the table computations match the SU(3) ones
                let images = psu3_coordinate_images(ring)?;
                images[0].pow(2).mul(&images[1])
            }
            _ => top_class_solve(group, ring, t),
        },
    }
}

fn top_class_solve(group: &WeylGroup, ring: &Ring, t: u64) -> Result<Polynomial> {
    let z = Ring::Integers;
    let n = group.num_positive_roots() as u32;
    let r = group.datum().rank();
    let w0 = group.longest_element();
    let monomials = monomials_of_degree(r, n);
    let values: Vec<BigInt> = monomials
        .iter()
        .map(|exp| {
            partial(group, w0, &Polynomial::monomial(&z, exp.clone(), z.one()))
                .constant_integer()
                .expect("constant")
        })
        .collect();
    // running extended gcd: coefficients with sum c_i v_i = t
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); values.len()];
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        if g.is_zero() {
            let sign = if v.is_negative() { -1 } else { 1 };
            g = v.abs();
            coeffs[i] = BigInt::from(sign);
            continue;
        }
        if (v % &g).is_zero() {
            continue;
        }
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut() {
            *c *= &e.x;
        }
        coeffs[i] = e.y.clone();
        g = e.gcd;
    }
    debug_assert_eq!(g, BigInt::from(t));
    let mut combination = Polynomial::zero(&z, r);
    for (exp, c) in monomials.into_iter().zip(coeffs) {
        if !c.is_zero() {
            combination = combination
                .add(&Polynomial::monomial(&z, exp, Scalar::Int(c)))
                .expect("same ring");
        }
    }
    let inv_t = ring
        .inverse(&ring.from_i64(t as i64))
        .ok_or(Error::TorsionNotInvertible(t))?;
    Ok(combination.change_ring(ring)?.mul_scalar(&inv_t))
}

/// The choice S_w0 = d / |W|, valid over rings where the group order is
/// invertible; with this choice psi becomes the averaging projection.
pub fn top_class_discriminant_over_order(group: &WeylGroup, ring: &Ring) -> Result<Polynomial> {
    let order = group.order() as i64;
    let inv = ring
        .inverse(&ring.from_i64(order))
        .ok_or_else(|| Error::UnsupportedRing(format!("|W| = {order} is not a unit")))?;
    Ok(group.discriminant(ring).mul_scalar(&inv))
}

/// A Schubert family: a top class S of degree N together with the derived
/// members S_w = partial_{w^{-1} w0}(S) of degree l(w).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertFamily {
    ring: Ring,
    torsion_index: u64,
    is_preset_top: bool,
    top: Polynomial,
    members: Vec<Polynomial>,
}

impl SchubertFamily {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn torsion_index(&self) -> u64 {
        self.torsion_index
    }

    pub fn top(&self) -> &Polynomial {
        &self.top
    }

    /// S_w for the element with the given group index.
    pub fn member(&self, w: usize) -> &Polynomial {
        &self.members[w]
    }

    pub fn members(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.members.iter().enumerate()
    }

    pub fn is_preset_top(&self) -> bool {
        self.is_preset_top
    }
}

/// Build the full family over the ring. Fails when the torsion index is not
/// invertible; the identity member is asserted to be 1.
pub fn schubert_family(
    group: &WeylGroup,
    ring: &Ring,
    strategy: TopClassStrategy,
) -> Result<SchubertFamily> {
    let top = top_class(group, ring, strategy)?;
    schubert_family_from_top(group, ring, &top, strategy == TopClassStrategy::Preset)
}

/// Build the family from an explicitly chosen top class.
pub fn schubert_family_from_top(
    group: &WeylGroup,
    ring: &Ring,
    top: &Polynomial,
    is_preset_top: bool,
) -> Result<SchubertFamily> {
    let w0 = group.longest_element();
    let mut members = Vec::with_capacity(group.order());
    for (w, _) in group.elements() {
        let route = group.compose(group.inverse_of(w), w0);
        members.push(partial(group, route, top));
    }
    let one = Polynomial::one(ring, group.datum().rank());
    if members[0] != one {
        return Err(Error::ExpansionFailed(
            "identity member of the family is not 1".into(),
        ));
    }
    Ok(SchubertFamily {
        ring: ring.clone(),
        torsion_index: torsion_index(group),
        is_preset_top,
        top: top.clone(),
        members,
    })
}

/// Named generators of the invariant subalgebra S^W for the preset groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SWBasis {
    ring: Ring,
    names: Vec<String>,
    generators: Vec<Polynomial>,
}

impl SWBasis {
    pub fn new(ring: &Ring, names: Vec<String>, generators: Vec<Polynomial>) -> SWBasis {
        SWBasis {
            ring: ring.clone(),
            names,
            generators,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators
            .iter()
            .map(|g| g.degree().expect("nonzero generator"))
            .collect()
    }

    /// Evaluate a polynomial in the generator variables back to the lattice
    /// variables.
    pub fn evaluate(&self, p: &Polynomial) -> Polynomial {
        p.substitute(&self.generators).expect("same ring")
    }
}

/// Elementary symmetric polynomial e_k of the given linear forms.
pub fn elementary_symmetric(ring: &Ring, forms: &[Polynomial], k: usize) -> Polynomial {
    let nvars = forms[0].nvars();
    // running product of (1 + f_i t), keeping t-degrees up to k
    let mut coeffs: Vec<Polynomial> = vec![Polynomial::zero(ring, nvars); k + 1];
    coeffs[0] = Polynomial::one(ring, nvars);
    for form in forms {
        for j in (1..=k).rev() {
            let bump = coeffs[j - 1].mul(form).expect("same ring");
            coeffs[j] = coeffs[j].add(&bump).expect("same ring");
        }
    }
    coeffs[k].clone()
}

/// The SU(3) lattice basis written in PSU(3) root-lattice coordinates:
/// e1 = (2 a1 + a2)/3 and e2 = (a2 - a1)/3, with denominator 3 the index of
/// the inclusion. Requires 3 invertible in the target ring.
pub fn psu3_coordinate_images(ring: &Ring) -> Result<Vec<Polynomial>> {
    let loc3 = Ring::localized([3])?;
    let third = loc3.parse_scalar("1/3")?;
    let e1 = Polynomial::linear_form(&loc3, &[2, 1]).mul_scalar(&third);
    let e2 = Polynomial::linear_form(&loc3, &[-1, 1]).mul_scalar(&third);
    Ok(vec![e1.change_ring(ring)?, e2.change_ring(ring)?])
}

/// Preset invariant generators: elementary symmetric p_k for U(n), the
/// restrictions q_k (with q_1 = 0 dropped) for SU(n), e1^2 + e2^2 and
/// e1^2 e2^2 for Sp(2), the square of the root for SO(3), and the SU(3)
/// generators transported along the lattice inclusion for PSU(3).
pub fn preset_sw_basis(group: &WeylGroup, ring: &Ring) -> Result<SWBasis> {
    let r = group.datum().rank();
    let name = group
        .datum()
        .name()
        .ok_or_else(|| Error::UnknownInvariantGenerators("datum has no preset name".into()))?;
    let var = |k: usize| Polynomial::variable(ring, r, k);
    let (names, generators): (Vec<String>, Vec<Polynomial>) = match name {
        "U2" | "U3" | "U4" => {
            let forms: Vec<Polynomial> = (0..r).map(var).collect();
            (1..=r)
                .map(|k| (format!("p{k}"), elementary_symmetric(ring, &forms, k)))
                .unzip()
        }
        "SU2" | "SU3" => {
            let mut forms: Vec<Polynomial> = (0..r).map(var).collect();
            forms.push(Polynomial::linear_form(ring, &vec![-1; r]));
            (2..=r + 1)
                .map(|k| (format!("q{k}"), elementary_symmetric(ring, &forms, k)))
                .unzip()
        }
        "Sp2" => {
            let sq: Vec<Polynomial> = (0..2).map(|k| var(k).pow(2)).collect();
            (1..=2)
                .map(|k| (format!("p{k}"), elementary_symmetric(ring, &sq, k)))
                .unzip()
        }
        "SO3" => (
            vec!["p1".to_string()],
            vec![Polynomial::variable(ring, 1, 0).pow(2)],
        ),
        "PSU3" => {
            let images = psu3_coordinate_images(ring)?;
            let mut forms = images.clone();
            forms.push(images[0].add(&images[1])?.neg());
            (2..=3)
                .map(|k| (format!("q{k}"), elementary_symmetric(ring, &forms, k)))
                .unzip()
        }
        other => {
            return Err(Error::UnknownInvariantGenerators(format!(
                "no preset generators for {other}"
            )))
        }
    };
    Ok(SWBasis {
        ring: ring.clone(),
        names,
        generators,
    })
}

/// Exponent vectors mu with sum mu_i * degrees_i = total, in descending
/// lexicographic order.
pub fn weighted_exponents(degrees: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn rec(degrees: &[u32], pos: usize, rem: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == degrees.len() {
            if rem == 0 {
                out.push(current.clone());
            }
            return;
        }
        let max = rem / degrees[pos];
        for k in (0..=max).rev() {
            current[pos] = k;
            rec(degrees, pos + 1, rem - k * degrees[pos], current, out);
        }
        current[pos] = 0;
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; degrees.len()];
    rec(degrees, 0, total, &mut current, &mut out);
    out
}

enum DegreeSolver {
    Field(FieldSolver),
    Int(IntSolver),
    /// rational solver plus the prime support of a localized ring
    Localized(FieldSolver, Vec<u64>),
}

struct DegreeData {
    columns: Vec<(usize, Vec<u32>)>,
    monomial_index: HashMap<Vec<u32>, usize>,
    solver: DegreeSolver,
}

/// Expands polynomials in the Schubert basis with S^W coefficients, solving
/// the graded linear system once per degree and reusing it.
pub struct SchubertExpander<'g> {
    group: &'g WeylGroup,
    family: SchubertFamily,
    basis: SWBasis,
    per_degree: RefCell<HashMap<u32, Rc<DegreeData>>>,
}

impl<'g> SchubertExpander<'g> {
    pub fn new(
        group: &'g WeylGroup,
        family: SchubertFamily,
        basis: SWBasis,
    ) -> Result<SchubertExpander<'g>> {
        if basis.ring != family.ring {
            return Err(Error::RingMismatch);
        }
        match &family.ring {
            Ring::Integers | Ring::Rationals | Ring::Localized(_) => {}
            ring @ Ring::IntegersMod(_) => {
                if !ring.is_field() {
                    return Err(Error::UnsupportedRing(
                        "expansion needs Z, Q, Z/p or a localization".into(),
                    ));
                }
            }
        }
        Ok(SchubertExpander {
            group,
            family,
            basis,
            per_degree: RefCell::new(HashMap::new()),
        })
    }

    pub fn family(&self) -> &SchubertFamily {
        &self.family
    }

    pub fn basis(&self) -> &SWBasis {
        &self.basis
    }

    fn degree_data(&self, d: u32) -> Result<Rc<DegreeData>> {
        if let Some(hit) = self.per_degree.borrow().get(&d) {
            return Ok(hit.clone());
        }
        let ring = &self.family.ring;
        let r = self.group.datum().rank();
        let monomials = monomials_of_degree(r, d);
        let monomial_index: HashMap<Vec<u32>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let degrees = self.basis.degrees();
        let mut columns = Vec::new();
        let mut column_polys = Vec::new();
        for (w, e) in self.group.elements() {
            let lw = e.length();
            if lw > d {
                continue;
            }
            for mu in weighted_exponents(&degrees, d - lw) {
                let mut p = self.family.member(w).clone();
                for (i, &k) in mu.iter().enumerate() {
                    if k > 0 {
                        p = p.mul(&self.basis.generators[i].pow(k))?;
                    }
                }
                columns.push((w, mu));
                column_polys.push(p);
            }
        }
        let mut matrix: Vec<Vec<Scalar>> = vec![vec![ring.zero(); columns.len()]; monomials.len()];
        for (j, p) in column_polys.iter().enumerate() {
            for (exp, c) in p.terms() {
                let i = *monomial_index
                    .get(exp)
                    .expect("homogeneous of the right degree");
                matrix[i][j] = c.clone();
            }
        }
        let solver = match ring {
            Ring::Integers => DegreeSolver::Int(IntSolver::new(&crate::linalg::scalar_mat_to_int(
                ring, &matrix,
            ))),
            Ring::Localized(primes) => {
                let q = Ring::Rationals;
                let mq: Vec<Vec<Scalar>> = matrix
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| ring.map_scalar(s, &q).expect("localization into Q"))
                            .collect()
                    })
                    .collect();
                DegreeSolver::Localized(FieldSolver::new(&q, &mq), primes.iter().copied().collect())
            }
            _ => DegreeSolver::Field(FieldSolver::new(ring, &matrix)),
        };
        let data = Rc::new(DegreeData {
            columns,
            monomial_index,
            solver,
        });
        self.per_degree.borrow_mut().insert(d, data.clone());
        Ok(data)
    }

    /// Coefficients p_w in S^W (as polynomials in the named generators) with
    /// f = sum_w p_w S_w.
    pub fn expand(&self, f: &Polynomial) -> Result<BTreeMap<usize, Polynomial>> {
        if f.ring() != &self.family.ring || f.nvars() != self.group.datum().rank() {
            return Err(Error::RingMismatch);
        }
        let ring = &self.family.ring;
        let ngens = self.basis.generators.len();
        let mut out: BTreeMap<usize, Polynomial> = BTreeMap::new();
        let top = match f.degree() {
            None => return Ok(out),
            Some(d) => d,
        };
        for d in 0..=top {
            let fd = f.homogeneous_component(d);
            if fd.is_zero() {
                continue;
            }
            let data = self.degree_data(d)?;
            let mut b = vec![ring.zero(); data.monomial_index.len()];
            for (exp, c) in fd.terms() {
                b[data.monomial_index[exp]] = c.clone();
            }
            let x: Vec<Scalar> = match &data.solver {
                DegreeSolver::Field(s) => s
                    .solve(&b)
                    .ok_or_else(|| Error::ExpansionFailed(format!("degree {d} inconsistent")))?,
                DegreeSolver::Int(s) => {
                    let bi: Vec<BigInt> = b
                        .iter()
                        .map(|v| ring.lift_to_integer(v).expect("integer"))
                        .collect();
                    s.solve(&bi)
                        .ok_or_else(|| {
                            Error::ExpansionFailed(format!(
                                "degree {d}: no integral solution (freeness violated)"
                            ))
                        })?
                        .iter()
                        .map(|v| ring.from_bigint(v))
                        .collect()
                }
                DegreeSolver::Localized(s, primes) => {
                    let q = Ring::Rationals;
                    let bq: Vec<Scalar> = b
                        .iter()
                        .map(|v| ring.map_scalar(v, &q).expect("into Q"))
                        .collect();
                    let sol = s
                        .solve(&bq)
                        .ok_or_else(|| Error::ExpansionFailed(format!("degree {d} inconsistent")))?;
                    let mut checked = Vec::with_capacity(sol.len());
                    for s in sol {
                        let Scalar::Frac(fr) = &s else { unreachable!() };
                        let mut den = fr.denom().abs();
                        for &p in primes {
                            let p = BigInt::from(p);
                            while (&den % &p).is_zero() {
                                den /= &p;
                            }
                        }
                        if !den.is_one() {
                            return Err(Error::ExpansionFailed(
                                "solution leaves the localized ring".into(),
                            ));
                        }
                        checked.push(s);
                    }
                    checked
                }
            };
            for ((w, mu), c) in data.columns.iter().zip(x) {
                if ring.is_zero(&c) {
                    continue;
                }
                let term = Polynomial::monomial(ring, mu.clone(), c);
                let entry = out
                    .entry(*w)
                    .or_insert_with(|| Polynomial::zero(ring, ngens));
                *entry = entry.add(&term)?;
            }
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// Recombine an expansion: sum_w p_w(generators) * S_w.
    pub fn recombine(&self, expansion: &BTreeMap<usize, Polynomial>) -> Result<Polynomial> {
        let ring = &self.family.ring;
        let r = self.group.datum().rank();
        let mut out = Polynomial::zero(ring, r);
        for (w, p) in expansion {
            let coeff = self.basis.evaluate(p);
            out = out.add(&coeff.mul(self.family.member(*w))?)?;
        }
        Ok(out)
    }
}

/// The pairing B(f, g) = partial_w0(f g). Lands in the submodule
/// annihilated by every partial_w with w != 1.
pub fn pairing(group: &WeylGroup, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    Ok(partial(group, group.longest_element(), &f.mul(g)?))
}

/// The dual Schubert basis for the unitary groups:
/// S^w = det(w w0) * w0(S_{w w0}), indexed by group element. Satisfies
/// B(S_w, S^{w'}) = delta_{w,w'}.
pub fn dual_family(group: &WeylGroup, family: &SchubertFamily) -> Result<Vec<Polynomial>> {
    let type_a = matches!(group.datum().name(), Some("U2") | Some("U3") | Some("U4"));
    if !type_a || !family.is_preset_top() {
        return Err(Error::NotTypeA);
    }
    let w0 = group.longest_element();
    let mut duals = Vec::with_capacity(group.order());
    for (w, _) in group.elements() {
        let ww0 = group.compose(w, w0);
        let sign = group.element(ww0).det() as i64;
        let dual = weyl_act(group, w0, family.member(ww0)).mul_i64(sign);
        duals.push(dual);
    }
    Ok(duals)
}

/// Second, independent expansion route for the unitary groups: the
/// coefficient of S_w in f is B(f, S^w), as an element of S^W written in
/// the lattice variables.
pub fn expand_via_dual(
    group: &WeylGroup,
    family: &SchubertFamily,
    f: &Polynomial,
) -> Result<BTreeMap<usize, Polynomial>> {
    let duals = dual_family(group, family)?;
    let mut out = BTreeMap::new();
    for (w, dual) in duals.iter().enumerate() {
        let c = pairing(group, f, dual)?;
        if !c.is_zero() {
            out.insert(w, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::random_polynomial;
    use crate::rootdata::preset_datum;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::enumerate(preset_datum(name).unwrap()).unwrap()
    }

    fn z() -> Ring {
        Ring::Integers
    }

    #[test]
    fn torsion_indices_match_table() {
        let expected = [
            ("U2", 1),
            ("U3", 1),
            ("U4", 1),
            ("SU2", 1),
            ("SU3", 1),
            ("SO3", 2),
            ("PSU3", 3),
            ("Sp2", 1),
        ];
        for (name, t) in expected {
            assert_eq!(torsion_index(&group(name)), t, "t({name})");
        }
    }

    #[test]
    fn preset_top_classes() {
        let u3 = group("U3");
        let top = top_class(&u3, &z(), TopClassStrategy::Preset).unwrap();
        assert_eq!(top, Polynomial::monomial(&z(), vec![2, 1, 0], z().one()));
        assert_eq!(
            partial(&u3, u3.longest_element(), &top),
            Polynomial::one(&z(), 3)
        );

        // SU2: the fundamental weight, with delta = 1 since alpha = 2w
        let su2 = group("SU2");
        let top = top_class(&su2, &z(), TopClassStrategy::Preset).unwrap();
        assert_eq!(top, Polynomial::variable(&z(), 1, 0));
        assert_eq!(
            partial(&su2, su2.longest_element(), &top),
            Polynomial::one(&z(), 1)
        );
    }

    #[test]
    fn so3_solved_top_class() {
        let so3 = group("SO3");
        assert!(matches!(
            top_class(&so3, &z(), TopClassStrategy::Solve),
            Err(Error::TorsionNotInvertible(2))
        ));
        let half = Ring::localized([2]).unwrap();
        let top = top_class(&so3, &half, TopClassStrategy::Solve).unwrap();
        // (1/2) a, since delta(a) = 2
        let expected =
            Polynomial::variable(&half, 1, 0).mul_scalar(&half.parse_scalar("1/2").unwrap());
        assert_eq!(top, expected);
        assert_eq!(
            partial(&so3, so3.longest_element(), &top),
            Polynomial::one(&half, 1)
        );
    }

    #[test]
    fn psu3_top_class_over_f2() {
        let psu3 = group("PSU3");
        let f2 = Ring::integers_mod(2);
        let fam = schubert_family(&psu3, &f2, TopClassStrategy::Preset).unwrap();
        assert_eq!(
            partial(&psu3, psu3.longest_element(), fam.top()),
            Polynomial::one(&f2, 2)
        );
        // not available over Z
        assert!(matches!(
            schubert_family(&psu3, &z(), TopClassStrategy::Preset),
            Err(Error::TorsionNotInvertible(3))
        ));
    }

    #[test]
    fn u2_family() {
        let u2 = group("U2");
        let fam = schubert_family(&u2, &z(), TopClassStrategy::Preset).unwrap();
        let e1 = Polynomial::variable(&z(), 2, 0);
        assert_eq!(fam.member(u2.longest_element()), &e1);
        assert_eq!(fam.member(0), &Polynomial::one(&z(), 2));
    }

    #[test]
    fn u3_family_matches_listing() {
        let u3 = group("U3");
        let fam = schubert_family(&u3, &z(), TopClassStrategy::Preset).unwrap();
        let e1 = Polynomial::variable(&z(), 3, 0);
        let e2 = Polynomial::variable(&z(), 3, 1);
        let s1 = u3.simple_reflection(0);
        let s2 = u3.simple_reflection(1);
        let s1s2 = u3.compose(s1, s2);
        let s2s1 = u3.compose(s2, s1);
        let w0 = u3.longest_element();
        assert_eq!(fam.member(w0), &e1.pow(2).mul(&e2).unwrap());
        assert_eq!(fam.member(s1s2), &e1.mul(&e2).unwrap());
        assert_eq!(fam.member(s2s1), &e1.pow(2));
        assert_eq!(fam.member(s2), &e1.add(&e2).unwrap());
        assert_eq!(fam.member(s1), &e1);
        assert_eq!(fam.member(0), &Polynomial::one(&z(), 3));
    }

    #[test]
    fn sp2_family_matches_listing() {
        let sp = group("Sp2");
        let fam = schubert_family(&sp, &z(), TopClassStrategy::Preset).unwrap();
        let e1 = Polynomial::variable(&z(), 2, 0);
        let e2 = Polynomial::variable(&z(), 2, 1);
        let s1 = sp.simple_reflection(0);
        let s2 = sp.simple_reflection(1);
        let s1s2 = sp.compose(s1, s2);
        let s2s1 = sp.compose(s2, s1);
        let s2s1s2 = sp.compose(s2, s1s2);
        let s1s2s1 = sp.compose(s1, s2s1);
        let w0 = sp.longest_element();

        assert_eq!(fam.member(w0), &e1.pow(3).mul(&e2).unwrap());
        let expected = e1
            .pow(2)
            .mul(&e2)
            .unwrap()
            .add(&e1.mul(&e2.pow(2)).unwrap())
            .unwrap();
        assert_eq!(fam.member(s2s1s2), &expected);
        assert_eq!(fam.member(s1s2s1), &e1.pow(3));
        let expected = e1
            .pow(2)
            .add(&e1.mul(&e2).unwrap())
            .unwrap()
            .add(&e2.pow(2))
            .unwrap();
        assert_eq!(fam.member(s1s2), &expected);
        assert_eq!(fam.member(s2s1), &e1.pow(2));
        assert_eq!(fam.member(s2), &e1.add(&e2).unwrap());
        assert_eq!(fam.member(s1), &e1);
        assert_eq!(fam.member(0), &Polynomial::one(&z(), 2));
    }

    #[test]
    fn expansion_examples() {
        let u2 = group("U2");
        let fam = schubert_family(&u2, &z(), TopClassStrategy::Preset).unwrap();
        let basis = preset_sw_basis(&u2, &z()).unwrap();
        let expander = SchubertExpander::new(&u2, fam.clone(), basis).unwrap();

        // basis elements expand to indicator coefficients
        for (w, member) in fam.members() {
            let exp = expander.expand(member).unwrap();
            assert_eq!(exp.len(), 1);
            assert_eq!(exp[&w], Polynomial::one(&z(), 2));
        }

        // e2 = p1 * 1 - S_s
        let e2 = Polynomial::variable(&z(), 2, 1);
        let exp = expander.expand(&e2).unwrap();
        let s = u2.longest_element();
        assert_eq!(exp[&0], Polynomial::variable(&z(), 2, 0)); // p1
        assert_eq!(exp[&s], Polynomial::one(&z(), 2).neg());
    }

    #[test]
    fn u3_reflection_of_top_expands_as_displayed() {
        let u3 = group("U3");
        let fam = schubert_family(&u3, &z(), TopClassStrategy::Preset).unwrap();
        let basis = preset_sw_basis(&u3, &z()).unwrap();
        let expander = SchubertExpander::new(&u3, fam.clone(), basis).unwrap();
        let s1 = u3.simple_reflection(0);
        let s2 = u3.simple_reflection(1);
        let s1s2 = u3.compose(s1, s2);
        let w0 = u3.longest_element();
        // s1(S_w0) = -S_w0 + p1 S_{s1s2} - p3
        let image = weyl_act(&u3, s1, fam.member(w0));
        let exp = expander.expand(&image).unwrap();
        assert_eq!(exp[&w0], Polynomial::one(&z(), 3).neg());
        assert_eq!(exp[&s1s2], Polynomial::variable(&z(), 3, 0));
        assert_eq!(exp[&0], Polynomial::variable(&z(), 3, 2).neg());
        assert_eq!(exp.len(), 3);
    }

    #[test]
    fn round_trip_over_q_and_f5() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for ring in [Ring::Rationals, Ring::integers_mod(5)] {
            for name in ["U2", "U3", "Sp2", "SU3"] {
                let g = group(name);
                let fam = schubert_family(&g, &ring, TopClassStrategy::Preset).unwrap();
                let basis = preset_sw_basis(&g, &ring).unwrap();
                let expander = SchubertExpander::new(&g, fam, basis).unwrap();
                for _ in 0..10 {
                    let f = random_polynomial(&ring, g.datum().rank(), 6, 5, &mut rng);
                    let exp = expander.expand(&f).unwrap();
                    assert_eq!(expander.recombine(&exp).unwrap(), f, "{name}");
                }
            }
        }
    }

    #[test]
    fn freeness_rank_identity() {
        // dim S_D = sum_w dim (S^W)_{D - l(w)} for D <= 8
        for name in crate::rootdata::PRESET_NAMES {
            let g = group(name);
            let r = g.datum().rank();
            let basis = preset_sw_basis(&g, &Ring::Rationals).unwrap();
            let degrees = basis.degrees();
            for d in 0..=8u32 {
                let ambient = monomials_of_degree(r, d).len();
                let mut total = 0usize;
                for (_, e) in g.elements() {
                    if e.length() <= d {
                        total += weighted_exponents(&degrees, d - e.length()).len();
                    }
                }
                assert_eq!(ambient, total, "{name} degree {d}");
            }
        }
    }

    #[test]
    fn sw_generators_are_invariant() {
        for name in ["U2", "U3", "U4", "SU2", "SU3", "SO3", "Sp2"] {
            let g = group(name);
            let basis = preset_sw_basis(&g, &z()).unwrap();
            for gen in basis.generators() {
                for i in 0..g.datum().num_simple() {
                    let s = g.simple_reflection(i);
                    assert_eq!(&weyl_act(&g, s, gen), gen, "{name}");
                }
            }
        }
        // PSU3 generators need 3 invertible
        let psu3 = group("PSU3");
        let f2 = Ring::integers_mod(2);
        let basis = preset_sw_basis(&psu3, &f2).unwrap();
        for gen in basis.generators() {
            for i in 0..2 {
                let s = psu3.simple_reflection(i);
                assert_eq!(&weyl_act(&psu3, s, gen), gen);
            }
        }
    }

    #[test]
    fn dual_basis_orthogonality() {
        for name in ["U2", "U3"] {
            let g = group(name);
            let fam = schubert_family(&g, &z(), TopClassStrategy::Preset).unwrap();
            let duals = dual_family(&g, &fam).unwrap();
            for (w, member) in fam.members() {
                for (wp, dual) in duals.iter().enumerate() {
                    let b = pairing(&g, member, dual).unwrap();
                    let expected = if w == wp {
                        Polynomial::one(&z(), g.datum().rank())
                    } else {
                        Polynomial::zero(&z(), g.datum().rank())
                    };
                    assert_eq!(b, expected, "{name} pair ({w},{wp})");
                }
            }
        }
        let sp = group("Sp2");
        let fam = schubert_family(&sp, &z(), TopClassStrategy::Preset).unwrap();
        assert_eq!(dual_family(&sp, &fam), Err(Error::NotTypeA));
    }

    #[test]
    fn u2_dual_members() {
        let u2 = group("U2");
        let fam = schubert_family(&u2, &z(), TopClassStrategy::Preset).unwrap();
        let duals = dual_family(&u2, &fam).unwrap();
        // S^1 = det(w0) w0(S_w0) = -e2
        let e2 = Polynomial::variable(&z(), 2, 1);
        assert_eq!(duals[0], e2.neg());
        // S^s = det(1) w0(S_1) = 1
        assert_eq!(duals[u2.longest_element()], Polynomial::one(&z(), 2));
    }

    #[test]
    fn adjoint_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let u3 = group("U3");
        for _ in 0..10 {
            let a1 = random_polynomial(&z(), 3, 4, 4, &mut rng);
            let a2 = random_polynomial(&z(), 3, 4, 4, &mut rng);
            for (w, e) in u3.elements() {
                let winv = u3.inverse_of(w);
                // B(partial_w a1, a2) = B(a1, partial_{w^{-1}} a2)
                let lhs = pairing(&u3, &partial(&u3, w, &a1), &a2).unwrap();
                let rhs = pairing(&u3, &a1, &partial(&u3, winv, &a2)).unwrap();
                assert_eq!(lhs, rhs);
                // B(w a1, a2) = det(w) B(a1, w^{-1} a2)
                let lhs = pairing(&u3, &weyl_act(&u3, w, &a1), &a2).unwrap();
                let rhs = pairing(&u3, &a1, &weyl_act(&u3, winv, &a2))
                    .unwrap()
                    .mul_i64(e.det() as i64);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn dual_route_agrees_with_linear_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let u3 = group("U3");
        let fam = schubert_family(&u3, &z(), TopClassStrategy::Preset).unwrap();
        let basis = preset_sw_basis(&u3, &z()).unwrap();
        let expander = SchubertExpander::new(&u3, fam.clone(), basis.clone()).unwrap();
        for _ in 0..10 {
            let f = random_polynomial(&z(), 3, 5, 5, &mut rng);
            let via_solve = expander.expand(&f).unwrap();
            let via_dual = expand_via_dual(&u3, &fam, &f).unwrap();
            let keys: std::collections::BTreeSet<usize> =
                via_solve.keys().chain(via_dual.keys()).copied().collect();
            for w in keys {
                let lhs = via_solve
                    .get(&w)
                    .map(|p| basis.evaluate(p))
                    .unwrap_or_else(|| Polynomial::zero(&z(), 3));
                let rhs = via_dual
                    .get(&w)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(&z(), 3));
                assert_eq!(lhs, rhs, "element {w}");
            }
        }
    }

    #[test]
    fn psi_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let u3 = group("U3");
        let fam = schubert_family(&u3, &z(), TopClassStrategy::Preset).unwrap();
        // psi(1) = 1
        assert_eq!(
            crate::demazure::psi(&u3, &fam, &Polynomial::one(&z(), 3)),
            Polynomial::one(&z(), 3)
        );
        // idempotence; image killed by the simple divided differences
        for _ in 0..10 {
            let f = random_polynomial(&z(), 3, 5, 4, &mut rng);
            let once = crate::demazure::psi(&u3, &fam, &f);
            let twice = crate::demazure::psi(&u3, &fam, &once);
            assert_eq!(once, twice);
            for i in 0..2 {
                assert!(crate::demazure::delta_simple(&u3, i, &once).is_zero());
            }
        }
    }

    #[test]
    fn psi_averages_with_discriminant_top() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let q = Ring::Rationals;
        for name in ["U2", "U3", "Sp2", "SO3"] {
            let g = group(name);
            let top = top_class_discriminant_over_order(&g, &q).unwrap();
            let fam = schubert_family_from_top(&g, &q, &top, false).unwrap();
            let inv_order = q.inverse(&q.from_i64(g.order() as i64)).unwrap();
            for _ in 0..5 {
                let f = random_polynomial(&q, g.datum().rank(), 5, 4, &mut rng);
                let lhs = crate::demazure::psi(&g, &fam, &f);
                let mut avg = Polynomial::zero(&q, g.datum().rank());
                for (w, _) in g.elements() {
                    avg = avg.add(&weyl_act(&g, w, &f)).unwrap();
                }
                assert_eq!(lhs, avg.mul_scalar(&inv_order), "{name}");
            }
        }
    }

    #[test]
    fn discriminant_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for name in ["U2", "U3", "Sp2"] {
            let g = group(name);
            let fam = schubert_family(&g, &z(), TopClassStrategy::Preset).unwrap();
            assert!(crate::demazure::discriminant_identity_check(
                &g,
                &fam,
                &Polynomial::one(&z(), g.datum().rank())
            ));
            for _ in 0..10 {
                let f = random_polynomial(&z(), g.datum().rank(), 5, 4, &mut rng);
                assert!(
                    crate::demazure::discriminant_identity_check(&g, &fam, &f),
                    "{name}"
                );
            }
        }
    }
}
