//! Hilbert-series shadows of equal-rank homogeneous spaces: the coinvariant
//! presentation of the flag variety, graded quotients by a maximal-rank
//! reflection subgroup, minimal coset lengths, and tensor-square dimension
//! counts including their characteristic-2 behaviour.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::demazure::weyl_act;
use crate::error::{Error, Result};
use crate::linalg::{field_rank, int_kernel, FieldSolver, IntSolver};
use crate::poly::{monomials_of_degree, Polynomial};
use crate::ring::{Ring, Scalar};
use crate::schubert::{preset_sw_basis, weighted_exponents};
use crate::weyl::{ReflectionSubgroup, WeylGroup};

/// Coefficients per cohomological degree (polynomial degree doubled), with
/// a product closed form when the series factors into q-integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    pub coeffs: Vec<u64>,
    pub closed_form: Option<String>,
    pub warnings: Vec<String>,
}

impl HilbertSeries {
    fn from_poly_degree_counts(counts: &[u64], warnings: Vec<String>) -> HilbertSeries {
        let mut coeffs = vec![0u64; counts.len() * 2 - 1.min(counts.len())];
        coeffs.resize(if counts.is_empty() { 0 } else { counts.len() * 2 - 1 }, 0);
        for (d, &c) in counts.iter().enumerate() {
            coeffs[2 * d] = c;
        }
        let closed_form = factor_into_q_integers(counts);
        HilbertSeries {
            coeffs,
            closed_form,
            warnings,
        }
    }

    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// Palindromic over its support.
    pub fn is_palindromic(&self) -> bool {
        let top = match self.coeffs.iter().rposition(|&c| c != 0) {
            Some(t) => t,
            None => return true,
        };
        (0..=top).all(|i| self.coeffs[i] == self.coeffs[top - i])
    }
}

/// Greedy factorisation of a polynomial-degree coefficient vector into
/// q-integers [k] = 1 + q + ... + q^{k-1}, rendered in t^2.
fn factor_into_q_integers(counts: &[u64]) -> Option<String> {
    let mut poly: Vec<i64> = counts.iter().map(|&c| c as i64).collect();
    while poly.last() == Some(&0) {
        poly.pop();
    }
    if poly.is_empty() || poly[0] != 1 {
        return None;
    }
    fn search(poly: &[i64], min_k: usize, factors: &mut Vec<usize>) -> bool {
        if poly == [1] {
            return true;
        }
        for k in min_k..=poly.len() {
            let divisor: Vec<i64> = vec![1; k];
            if let Some(q) = exact_univariate_divide(poly, &divisor) {
                factors.push(k);
                if search(&q, k, factors) {
                    return true;
                }
                factors.pop();
            }
        }
        false
    }
    let mut factors: Vec<usize> = Vec::new();
    if !search(&poly, 2, &mut factors) {
        return None;
    }
    let mut out = String::new();
    for k in factors {
        out.push('(');
        out.push('1');
        for j in 1..k {
            out.push_str(&format!("+t^{}", 2 * j));
        }
        out.push(')');
    }
    Some(out)
}

fn exact_univariate_divide(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    if num.len() < den.len() {
        return None;
    }
    let mut rem: Vec<i64> = num.to_vec();
    let qlen = num.len() - den.len() + 1;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let lead = rem[i + den.len() - 1];
        if lead % den[den.len() - 1] != 0 {
            return None;
        }
        let c = lead / den[den.len() - 1];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    rem.iter().all(|&c| c == 0).then_some(q)
}

/// The Poincare series of the coinvariant algebra: sum over w of t^{2 l(w)}.
/// Cross-computed in tests against the graded dimensions of S/S^W_+ over Q.
pub fn flag_poincare(group: &WeylGroup) -> HilbertSeries {
    let top = group.num_positive_roots();
    let mut counts = vec![0u64; top + 1];
    for (_, e) in group.elements() {
        counts[e.length() as usize] += 1;
    }
    HilbertSeries::from_poly_degree_counts(&counts, Vec::new())
}

/// Integral invariants of a set of group elements, per polynomial degree:
/// the saturated lattice of polynomials fixed by each listed element.
fn integral_invariants(
    group: &WeylGroup,
    elements: &[usize],
    degree: u32,
) -> Vec<Polynomial> {
    let z = Ring::Integers;
    let r = group.datum().rank();
    let monomials = monomials_of_degree(r, degree);
    let index: BTreeMap<Vec<u32>, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    // one block of equations per element: for a coefficient vector x over
    // the source monomials, every coordinate of sum_j x_j (w(m_j) - m_j)
    // must vanish
    let cols = monomials.len();
    let mut matrix: Vec<Vec<BigInt>> = Vec::new();
    for &w in elements {
        let diffs: Vec<Vec<BigInt>> = monomials
            .iter()
            .map(|m| {
                let mono = Polynomial::monomial(&z, m.clone(), z.one());
                let diff = weyl_act(group, w, &mono).sub(&mono).expect("same ring");
                let mut v = vec![BigInt::from(0); cols];
                for (e, c) in diff.terms() {
                    v[index[e]] = z.lift_to_integer(c).expect("integer");
                }
                v
            })
            .collect();
        for target in 0..cols {
            matrix.push(diffs.iter().map(|v| v[target].clone()).collect());
        }
    }
    if matrix.is_empty() {
        matrix.push(vec![BigInt::from(0); cols]);
    }
    let kernel = int_kernel(&matrix);
    kernel
        .into_iter()
        .map(|v| {
            let mut p = Polynomial::zero(&z, r);
            for (c, m) in v.iter().zip(&monomials) {
                if !c.is_zero() {
                    p = p
                        .add(&Polynomial::monomial(&z, m.clone(), Scalar::Int(c.clone())))
                        .expect("same ring");
                }
            }
            p
        })
        .collect()
}

/// Rank of a list of integral polynomials of a fixed degree after reduction
/// into the ring.
fn rank_over_ring(ring: &Ring, polys: &[Polynomial], nvars: usize, degree: u32) -> usize {
    if polys.is_empty() {
        return 0;
    }
    let monomials = monomials_of_degree(nvars, degree);
    let index: BTreeMap<Vec<u32>, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let rows: Vec<Vec<Scalar>> = polys
        .iter()
        .map(|p| {
            let rp = p.change_ring(ring).expect("Z maps anywhere");
            let mut row = vec![ring.zero(); monomials.len()];
            for (e, c) in rp.terms() {
                row[index[e]] = c.clone();
            }
            row
        })
        .collect();
    if ring.is_field() {
        field_rank(ring, &rows)
    } else {
        let q = Ring::Rationals;
        let rows_q: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| ring.map_scalar(s, &q).expect("into Q"))
                    .collect()
            })
            .collect();
        field_rank(&q, &rows_q)
    }
}

/// Graded dimensions of (S^{W_U} / S^W_+ S^{W_U]) tensored with the ring,
/// to the given cohomological bound. When the bound passes the top degree
/// the total equals |W| / |W_U|.
pub fn quotient_poincare(
    group: &WeylGroup,
    sub: &ReflectionSubgroup,
    ring: &Ring,
    cohomological_bound: u32,
) -> Result<HilbertSeries> {
    let reflections: Vec<usize> = sub
        .positive_system()
        .iter()
        .map(|&ri| group.roots()[ri].reflection)
        .collect();
    let simples: Vec<usize> = (0..group.datum().num_simple())
        .map(|i| group.simple_reflection(i))
        .collect();
    let bound = cohomological_bound / 2;
    let r = group.datum().rank();

    // integral invariants of the subgroup and of the full group per degree
    let sub_invariants: Vec<Vec<Polynomial>> = (0..=bound)
        .map(|d| integral_invariants(group, &reflections, d))
        .collect();
    let full_invariants: Vec<Vec<Polynomial>> = (0..=bound)
        .map(|d| integral_invariants(group, &simples, d))
        .collect();

    let mut counts = vec![0u64; bound as usize + 1];
    let mut warnings = Vec::new();
    for d in 0..=bound {
        let ambient = &sub_invariants[d as usize];
        if ambient.is_empty() {
            counts[d as usize] = 0;
            continue;
        }
        // coordinates of the ideal piece S^W_e * (S^{W_U})_{d-e} in the
        // ambient invariant lattice
        let monomials = monomials_of_degree(r, d);
        let index: BTreeMap<Vec<u32>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let basis_matrix: Vec<Vec<BigInt>> = (0..monomials.len())
            .map(|row| {
                ambient
                    .iter()
                    .map(|p| {
                        let z = Ring::Integers;
                        z.lift_to_integer(&p.coeff(&monomials[row])).expect("int")
                    })
                    .collect()
            })
            .collect();
        let solver = IntSolver::new(&basis_matrix);
        let mut ideal_coords: Vec<Vec<BigInt>> = Vec::new();
        for e in 1..=d {
            for a in &full_invariants[e as usize] {
                for b in &sub_invariants[(d - e) as usize] {
                    let prod = a.mul(b).expect("same ring");
                    let mut vec = vec![BigInt::from(0); monomials.len()];
                    for (exp, c) in prod.terms() {
                        vec[index[exp]] = Ring::Integers.lift_to_integer(c).expect("int");
                    }
                    let coords = solver
                        .solve(&vec)
                        .expect("product of invariants lies in the invariant lattice");
                    ideal_coords.push(coords);
                }
            }
        }
        let dim_ambient = ambient.len();
        let rank = if ideal_coords.is_empty() {
            0
        } else {
            match ring {
                _ if ring.is_field() => {
                    let rows: Vec<Vec<Scalar>> = ideal_coords
                        .iter()
                        .map(|row| row.iter().map(|v| ring.from_bigint(v)).collect())
                        .collect();
                    field_rank(ring, &rows)
                }
                Ring::Integers | Ring::Localized(_) => {
                    let q = Ring::Rationals;
                    let rows: Vec<Vec<Scalar>> = ideal_coords
                        .iter()
                        .map(|row| row.iter().map(|v| q.from_bigint(v)).collect())
                        .collect();
                    // report torsion in the integral quotient
                    let factors = crate::linalg::smith_invariant_factors(&ideal_coords);
                    for f in &factors {
                        let f_ok = match ring {
                            Ring::Integers => f == &BigInt::from(1),
                            Ring::Localized(_) => {
                                ring.is_unit_integer(i64::try_from(f).unwrap_or(i64::MAX))
                            }
                            _ => true,
                        };
                        if !f_ok {
                            warnings.push(format!(
                                "torsion Z/{f} in cohomological degree {}",
                                2 * d
                            ));
                        }
                    }
                    field_rank(&q, &rows)
                }
                _ => {
                    return Err(Error::UnsupportedRing(format!(
                        "quotient dimensions over {ring}"
                    )))
                }
            }
        };
        counts[d as usize] = (dim_ambient - rank) as u64;
    }
    let mut series = HilbertSeries::from_poly_degree_counts(&counts, warnings);
    series.coeffs.truncate(cohomological_bound as usize + 1);
    Ok(series)
}

/// Minimal coset-representative lengths: sum over the cosets w W_U of
/// t^{2 min length}. Equals the quotient series exactly when the subgroup
/// is parabolic; a warning marks the non-parabolic case.
pub fn coset_length_series(group: &WeylGroup, sub: &ReflectionSubgroup) -> HilbertSeries {
    let mut min_by_coset: BTreeMap<usize, u32> = BTreeMap::new();
    for (w, e) in group.elements() {
        let coset_key = sub
            .elements()
            .iter()
            .map(|&u| group.compose(w, u))
            .min()
            .expect("nonempty subgroup");
        let entry = min_by_coset.entry(coset_key).or_insert(u32::MAX);
        if e.length() < *entry {
            *entry = e.length();
        }
    }
    let top = min_by_coset.values().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0u64; top + 1];
    for (_, l) in min_by_coset {
        counts[l as usize] += 1;
    }
    let warnings = if sub.is_parabolic() {
        Vec::new()
    } else {
        vec![
            "non-parabolic subgroup: coset series is not the Poincare series of the quotient"
                .to_string(),
        ]
    };
    HilbertSeries::from_poly_degree_counts(&counts, warnings)
}

/// Preset fundamental invariant generators for a reflection subgroup.
pub fn subgroup_invariant_generators(
    group: &WeylGroup,
    sub: &ReflectionSubgroup,
    ring: &Ring,
) -> Result<Vec<Polynomial>> {
    let r = group.datum().rank();
    if sub.order() == 1 {
        return Ok((0..r).map(|i| Polynomial::variable(ring, r, i)).collect());
    }
    if sub.order() == group.order() {
        return Ok(preset_sw_basis(group, ring)?.generators().to_vec());
    }
    match group.datum().name() {
        Some("U2") | Some("U3") | Some("U4") if sub.is_parabolic() => {
            // block decomposition: the simple reflections inside the
            // subgroup cut {1..n} into consecutive blocks; the invariants
            // are the elementary symmetric functions of each block
            let n = r;
            let inside: Vec<bool> = (0..group.datum().num_simple())
                .map(|i| sub.contains(group.simple_reflection(i)))
                .collect();
            let mut gens = Vec::new();
            let mut block_start = 0usize;
            for k in 0..n {
                let block_ends = k + 1 == n || !inside[k];
                if block_ends {
                    let forms: Vec<Polynomial> = (block_start..=k)
                        .map(|j| Polynomial::variable(ring, r, j))
                        .collect();
                    for deg in 1..=forms.len() {
                        gens.push(crate::schubert::elementary_symmetric(ring, &forms, deg));
                    }
                    block_start = k + 1;
                }
            }
            Ok(gens)
        }
        Some("Sp2") => {
            // the sign-change subgroup of order 4
            let expected: Vec<Vec<i64>> = vec![vec![0, 2], vec![2, 0]];
            let system: Vec<Vec<i64>> = sub
                .positive_system()
                .iter()
                .map(|&ri| group.roots()[ri].vector.clone())
                .collect();
            let matches = expected.iter().all(|v| system.contains(v)) && system.len() == 2;
            if matches {
                Ok((0..2)
                    .map(|i| Polynomial::variable(ring, r, i).pow(2))
                    .collect())
            } else {
                Err(Error::UnknownInvariantGenerators(
                    "no preset generators for this subgroup of Sp2".into(),
                ))
            }
        }
        _ => Err(Error::UnknownInvariantGenerators(
            "no preset generators for this subgroup".into(),
        )),
    }
}

/// Express each of `targets` (polynomials in the lattice variables) as a
/// polynomial in the algebraically independent `gens`.
pub fn express_in_generators(
    ring: &Ring,
    gens: &[Polynomial],
    targets: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    let r = gens
        .first()
        .map(|g| g.nvars())
        .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let degrees: Vec<u32> = gens
        .iter()
        .map(|g| g.degree().expect("nonzero generator"))
        .collect();
    let mut out = Vec::new();
    for t in targets {
        let d = t.degree().unwrap_or(0);
        if !t.is_homogeneous_of(d) {
            return Err(Error::InvalidInput(
                "targets must be homogeneous".into(),
            ));
        }
        let monomials = monomials_of_degree(r, d);
        let index: BTreeMap<Vec<u32>, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mus = weighted_exponents(&degrees, d);
        let mut matrix = vec![vec![ring.zero(); mus.len()]; monomials.len()];
        for (j, mu) in mus.iter().enumerate() {
            let mut p = Polynomial::one(ring, r);
            for (g, &k) in gens.iter().zip(mu) {
                if k > 0 {
                    p = p.mul(&g.pow(k))?;
                }
            }
            for (e, c) in p.terms() {
                matrix[index[e]][j] = c.clone();
            }
        }
        let mut b = vec![ring.zero(); monomials.len()];
        for (e, c) in t.terms() {
            b[index[e]] = c.clone();
        }
        let sol = crate::linalg::solve_over_ring(ring, &matrix, &b)?
            .ok_or_else(|| Error::ExpansionFailed("target outside the subalgebra".into()))?;
        let mut expr = Polynomial::zero(ring, gens.len());
        for (mu, c) in mus.into_iter().zip(sol) {
            if !ring.is_zero(&c) {
                expr = expr.add(&Polynomial::monomial(ring, mu, c))?;
            }
        }
        out.push(expr);
    }
    Ok(out)
}

/// Graded dimensions of the tensor square of the subalgebra generated by
/// `gens_u` over the subalgebra generated by `gens_w`, that is of the
/// quotient of the free algebra on two copies of the u-generators by the
/// relations u_x - u_y for each w-generator.
pub fn tensor_square_dims_with_generators(
    ring: &Ring,
    gens_u: &[Polynomial],
    gens_w: &[Polynomial],
    cohomological_bound: u32,
) -> Result<HilbertSeries> {
    let s = gens_u.len();
    let degrees_u: Vec<u32> = gens_u
        .iter()
        .map(|g| g.degree().expect("nonzero"))
        .collect();
    let w_in_u = express_in_generators(ring, gens_u, gens_w)?;
    // relation polynomials in 2s variables
    let doubled: Vec<u32> = degrees_u.iter().chain(degrees_u.iter()).copied().collect();
    let mut relations: Vec<(Polynomial, u32)> = Vec::new();
    for (expr, g) in w_in_u.iter().zip(gens_w) {
        let dw = g.degree().expect("nonzero");
        let mut x_side = Polynomial::zero(ring, 2 * s);
        let mut y_side = Polynomial::zero(ring, 2 * s);
        for (e, c) in expr.terms() {
            let mut ex = e.clone();
            ex.resize(2 * s, 0);
            x_side = x_side.add(&Polynomial::monomial(ring, ex, c.clone()))?;
            let mut ey = vec![0u32; 2 * s];
            ey[s..].copy_from_slice(e);
            y_side = y_side.add(&Polynomial::monomial(ring, ey, c.clone()))?;
        }
        relations.push((x_side.sub(&y_side)?, dw));
    }
    let bound = cohomological_bound / 2;
    let mut counts = vec![0u64; bound as usize + 1];
    for d in 0..=bound {
        let ambient = weighted_exponents(&doubled, d);
        if ambient.is_empty() {
            counts[d as usize] = 0;
            continue;
        }
        let index: BTreeMap<Vec<u32>, usize> = ambient
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (rel, dw) in &relations {
            if *dw > d {
                continue;
            }
            for beta in weighted_exponents(&doubled, d - dw) {
                let prod = rel.mul(&Polynomial::monomial(ring, beta, ring.one()))?;
                let mut row = vec![ring.zero(); ambient.len()];
                for (e, c) in prod.terms() {
                    row[index[e]] = c.clone();
                }
                rows.push(row);
            }
        }
        let rank = if rows.is_empty() {
            0
        } else if ring.is_field() {
            field_rank(ring, &rows)
        } else {
            let q = Ring::Rationals;
            let rows_q: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| ring.map_scalar(v, &q).expect("into Q"))
                        .collect()
                })
                .collect();
            field_rank(&q, &rows_q)
        };
        counts[d as usize] = (ambient.len() - rank) as u64;
    }
    let mut series = HilbertSeries::from_poly_degree_counts(&counts, Vec::new());
    series.coeffs.truncate(cohomological_bound as usize + 1);
    let _ = FieldSolver::new; // keep the import local to one path
    Ok(series)
}

/// Tensor-square dimensions for a preset pair: the integral invariant
/// generators of the group and the subgroup, reduced into the ring.
pub fn tensor_square_dims(
    group: &WeylGroup,
    sub: &ReflectionSubgroup,
    ring: &Ring,
    cohomological_bound: u32,
) -> Result<HilbertSeries> {
    let gens_u = subgroup_invariant_generators(group, sub, ring)?;
    let gens_w = preset_sw_basis(group, ring)?.generators().to_vec();
    tensor_square_dims_with_generators(ring, &gens_u, &gens_w, cohomological_bound)
}

/// The series of a free graded polynomial algebra on generators of the given
/// polynomial degrees, truncated at the cohomological bound.
pub fn polynomial_algebra_series(degrees: &[u32], cohomological_bound: u32) -> HilbertSeries {
    let bound = cohomological_bound / 2;
    let counts: Vec<u64> = (0..=bound)
        .map(|d| weighted_exponents(degrees, d).len() as u64)
        .collect();
    let mut series = HilbertSeries::from_poly_degree_counts(&counts, Vec::new());
    series.closed_form = None;
    series.coeffs.truncate(cohomological_bound as usize + 1);
    series
}

/// Coefficientwise product of two series, truncated to the shorter length.
pub fn series_product(a: &HilbertSeries, b: &HilbertSeries) -> HilbertSeries {
    let len = a.coeffs.len().min(b.coeffs.len());
    let mut coeffs = vec![0u64; len];
    for i in 0..len {
        for j in 0..=i {
            let bj = b.coeffs.get(i - j).copied().unwrap_or(0);
            coeffs[i] += a.coeffs.get(j).copied().unwrap_or(0) * bj;
        }
    }
    HilbertSeries {
        coeffs,
        closed_form: None,
        warnings: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset_datum;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::enumerate(preset_datum(name).unwrap()).unwrap()
    }

    #[test]
    fn flag_series() {
        let u2 = flag_poincare(&group("U2"));
        assert_eq!(u2.coeffs, vec![1, 0, 1]);

        let u3 = flag_poincare(&group("U3"));
        assert_eq!(u3.coeffs, vec![1, 0, 2, 0, 2, 0, 1]);
        assert_eq!(u3.closed_form.as_deref(), Some("(1+t^2)(1+t^2+t^4)"));

        // B2 length multiset {0,1,1,2,2,3,3,4}
        let sp2 = flag_poincare(&group("Sp2"));
        assert_eq!(sp2.coeffs, vec![1, 0, 2, 0, 2, 0, 2, 0, 1]);
        assert_eq!(sp2.closed_form.as_deref(), Some("(1+t^2)(1+t^2+t^4+t^6)"));
    }

    #[test]
    fn flag_series_matches_coinvariant_dims() {
        // dim (S/S^W_+)_d over Q equals the number of elements of length d
        for name in ["U2", "U3", "Sp2"] {
            let g = group(name);
            let q = Ring::Rationals;
            let trivial = g.parabolic_subgroup(&[]).unwrap();
            let series = quotient_poincare(&g, &trivial, &q, 2 * g.num_positive_roots() as u32)
                .unwrap();
            assert_eq!(series.coeffs, flag_poincare(&g).coeffs, "{name}");
        }
    }

    #[test]
    fn sp2_quaternionic_quotient() {
        let sp = group("Sp2");
        let sub = sp.reflection_subgroup(&[vec![2, 0], vec![0, 2]]).unwrap();
        let q = Ring::Rationals;
        let series = quotient_poincare(&sp, &sub, &q, 8).unwrap();
        assert_eq!(series.coeffs, vec![1, 0, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(series.total(), 2);
        assert_eq!(series.total(), (sp.order() / sub.order()) as u64);
        assert!(series.is_palindromic());
    }

    #[test]
    fn u3_parabolic_quotient() {
        let u3 = group("U3");
        let sub = u3.parabolic_subgroup(&[0]).unwrap();
        let q = Ring::Rationals;
        let series = quotient_poincare(&u3, &sub, &q, 8).unwrap();
        assert_eq!(&series.coeffs[..5], &[1, 0, 1, 0, 1]);
        assert_eq!(series.total(), 3);
        // parabolic: coset lengths agree
        let cosets = coset_length_series(&u3, &sub);
        assert_eq!(cosets.coeffs, vec![1, 0, 1, 0, 1]);
        assert!(cosets.warnings.is_empty());
    }

    #[test]
    fn nonparabolic_coset_discrepancy() {
        let sp = group("Sp2");
        let sub = sp.reflection_subgroup(&[vec![2, 0], vec![0, 2]]).unwrap();
        let cosets = coset_length_series(&sp, &sub);
        assert_eq!(cosets.coeffs, vec![1, 0, 1]);
        assert_eq!(cosets.warnings.len(), 1);
        // differs from the quotient series 1 + t^4
        let q = Ring::Rationals;
        let quotient = quotient_poincare(&sp, &sub, &q, 4).unwrap();
        assert_ne!(cosets.coeffs, quotient.coeffs[..3].to_vec());
    }

    #[test]
    fn full_subgroup_gives_point() {
        let u3 = group("U3");
        let all: Vec<Vec<i64>> = u3.positive_roots().map(|r| r.vector.clone()).collect();
        let sub = u3.reflection_subgroup(&all).unwrap();
        let cosets = coset_length_series(&u3, &sub);
        assert_eq!(cosets.coeffs, vec![1]);
    }

    #[test]
    fn tensor_square_rational_matches_free_module_count() {
        let sp = group("Sp2");
        let sub = sp.reflection_subgroup(&[vec![2, 0], vec![0, 2]]).unwrap();
        let q = Ring::Rationals;
        let tensor = tensor_square_dims(&sp, &sub, &q, 12).unwrap();
        // S^{W_U} is free of rank 2 over S^W: the tensor square dims equal
        // quotient series times the S^{W_U} series
        let quotient = quotient_poincare(&sp, &sub, &q, 12).unwrap();
        let free = polynomial_algebra_series(&[2, 2], 12);
        let product = series_product(&quotient, &free);
        assert_eq!(tensor.coeffs, product.coeffs);
    }

    #[test]
    fn tensor_square_mod2_matches_integral_reduction() {
        let sp = group("Sp2");
        let sub = sp.reflection_subgroup(&[vec![2, 0], vec![0, 2]]).unwrap();
        let f2 = Ring::integers_mod(2);
        let q = Ring::Rationals;
        let over_f2 = tensor_square_dims(&sp, &sub, &f2, 12).unwrap();
        let over_q = tensor_square_dims(&sp, &sub, &q, 12).unwrap();
        assert_eq!(over_f2.coeffs, over_q.coeffs);
    }

    #[test]
    fn tensor_square_char2_invariants_strictly_larger() {
        // (S_{F2})^{W_U} = S_{F2} since the sign changes act trivially mod 2,
        // and (S_{F2})^W is generated by e1, e2; the resulting dimensions
        // strictly exceed the integral-generator computation in low degrees
        let f2 = Ring::integers_mod(2);
        let gens_u: Vec<Polynomial> = (0..2).map(|i| Polynomial::variable(&f2, 2, i)).collect();
        let e1 = Polynomial::linear_form(&f2, &[1, 1]);
        let e2 = Polynomial::variable(&f2, 2, 0)
            .mul(&Polynomial::variable(&f2, 2, 1))
            .unwrap();
        let mod2_side =
            tensor_square_dims_with_generators(&f2, &gens_u, &[e1, e2], 12).unwrap();

        let sp = group("Sp2");
        let sub = sp.reflection_subgroup(&[vec![2, 0], vec![0, 2]]).unwrap();
        let integral_side = tensor_square_dims(&sp, &sub, &f2, 12).unwrap();

        assert!(mod2_side
            .coeffs
            .iter()
            .zip(&integral_side.coeffs)
            .all(|(m, i)| m >= i));
        assert!(
            mod2_side
                .coeffs
                .iter()
                .zip(&integral_side.coeffs)
                .any(|(m, i)| m > i),
            "mod-2 {:?} vs integral {:?}",
            mod2_side.coeffs,
            integral_side.coeffs
        );
    }

    #[test]
    fn quotient_totals_match_index() {
        // |W|/|W_U| for several preset pairs
        let q = Ring::Rationals;
        let u3 = group("U3");
        for simples in [vec![], vec![0], vec![1]] {
            let sub = u3.parabolic_subgroup(&simples).unwrap();
            let series = quotient_poincare(&u3, &sub, &q, 12).unwrap();
            assert_eq!(series.total() as usize, u3.order() / sub.order());
            assert!(series.is_palindromic());
        }
        let sp = group("Sp2");
        let sub = sp.parabolic_subgroup(&[1]).unwrap();
        let series = quotient_poincare(&sp, &sub, &q, 12).unwrap();
        assert_eq!(series.total() as usize, sp.order() / sub.order());
    }
}
