//! Graded Weyl and divided-difference invariants of the polynomial algebra
//! and its quotients, reflection matrices over the Schubert basis, the
//! psi-decomposition of the invariants, and checks of the low-rank table of
//! invariant generators and their annihilating ideals.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::demazure::{delta_simple, psi, weyl_act};
use crate::error::{Error, Result};
use crate::linalg::{field_kernel, int_kernel, FieldSolver};
use crate::poly::{monomials_of_degree, Polynomial};
use crate::ring::{Ring, Scalar};
use crate::schubert::{
    preset_sw_basis, schubert_family, SchubertExpander, SchubertFamily, TopClassStrategy,
};
use crate::weyl::WeylGroup;

/// A graded module: the polynomial algebra of the datum over a ring, modulo
/// the ideal generated by a list of central relations (elements of S^W,
/// annihilated by every divided difference), computed degree by degree.
#[derive(Debug, Clone)]
pub struct ModuleSpec {
    pub ring: Ring,
    /// homogeneous relations in the lattice variables; empty for S itself
    pub relations: Vec<Polynomial>,
    pub degree_bound: u32,
}

impl ModuleSpec {
    pub fn polynomial_algebra(ring: &Ring, degree_bound: u32) -> ModuleSpec {
        ModuleSpec {
            ring: ring.clone(),
            relations: Vec::new(),
            degree_bound,
        }
    }

    pub fn quotient(ring: &Ring, relations: Vec<Polynomial>, degree_bound: u32) -> ModuleSpec {
        ModuleSpec {
            ring: ring.clone(),
            relations,
            degree_bound,
        }
    }

    fn validate(&self, group: &WeylGroup) -> Result<()> {
        for rel in &self.relations {
            if rel.ring() != &self.ring {
                return Err(Error::RingMismatch);
            }
            let d = rel
                .degree()
                .ok_or_else(|| Error::InvalidInput("zero relation".into()))?;
            if !rel.is_homogeneous_of(d) {
                return Err(Error::InvalidInput(
                    "relations must be homogeneous".into(),
                ));
            }
            for i in 0..group.datum().num_simple() {
                let s = group.simple_reflection(i);
                if weyl_act(group, s, rel) != *rel || !delta_simple(group, i, rel).is_zero() {
                    return Err(Error::InvalidInput(
                        "relations must be central (fixed by W and killed by the divided differences)"
                            .into(),
                    ));
                }
            }
        }
        if !self.relations.is_empty() && !self.ring.is_field() {
            return Err(Error::UnsupportedRing(
                "quotient modules need a field ring".into(),
            ));
        }
        match self.ring {
            Ring::Integers | Ring::Rationals | Ring::Localized(_) => Ok(()),
            Ring::IntegersMod(_) if self.ring.is_field() => Ok(()),
            _ => Err(Error::UnsupportedRing(
                "graded invariants need Z, Q, Z/p or a localization".into(),
            )),
        }
    }
}

/// Per-degree lists of class representatives.
#[derive(Debug, Clone)]
pub struct GradedSubspace {
    pub per_degree: Vec<Vec<Polynomial>>,
}

impl GradedSubspace {
    pub fn dims(&self) -> Vec<usize> {
        self.per_degree.iter().map(|b| b.len()).collect()
    }
}

/// Which invariants to compute: fixed points of W, or the kernel of all
/// divided differences (it suffices to kill the simple ones: any reduced
/// word has a simple rightmost factor).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantKind {
    W,
    DividedDifference,
}

/// One graded degree of the quotient module: a monomial basis of the
/// ambient space, a reducer for the ideal piece, and the surviving classes.
struct DegreePiece {
    monomials: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
    /// row-reduced ideal rows and their pivot columns (empty without relations)
    ideal_rref: Vec<Vec<Scalar>>,
    ideal_pivots: Vec<usize>,
    /// ambient coordinates of the quotient basis classes
    basis_classes: Vec<usize>,
}

impl DegreePiece {
    fn reduce(&self, ring: &Ring, coords: &mut [Scalar]) {
        for (row, &p) in self.ideal_rref.iter().zip(&self.ideal_pivots) {
            if ring.is_zero(&coords[p]) {
                continue;
            }
            let factor = coords[p].clone();
            for (c, r) in coords.iter_mut().zip(row) {
                *c = ring.sub(c, &ring.mul(&factor, r));
            }
        }
    }

    fn class_coords(&self, ring: &Ring, f: &Polynomial) -> Vec<Scalar> {
        let mut coords = vec![ring.zero(); self.monomials.len()];
        for (exp, c) in f.terms() {
            coords[*self.index.get(exp).expect("monomial of this degree")] = c.clone();
        }
        self.reduce(ring, &mut coords);
        // project onto the quotient basis positions
        self.basis_classes.iter().map(|&i| coords[i].clone()).collect()
    }
}

/// The graded quotient module with its degreewise structure.
pub struct GradedModule<'g> {
    group: &'g WeylGroup,
    spec: ModuleSpec,
    pieces: Vec<DegreePiece>,
}

impl<'g> GradedModule<'g> {
    pub fn new(group: &'g WeylGroup, spec: ModuleSpec) -> Result<GradedModule<'g>> {
        spec.validate(group)?;
        let ring = spec.ring.clone();
        let r = group.datum().rank();
        let mut pieces = Vec::new();
        for d in 0..=spec.degree_bound {
            let monomials = monomials_of_degree(r, d);
            let index: BTreeMap<Vec<u32>, usize> = monomials
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            let mut ideal_rows: Vec<Vec<Scalar>> = Vec::new();
            for rel in &spec.relations {
                let dr = rel.degree().expect("nonzero");
                if dr > d {
                    continue;
                }
                for exp in monomials_of_degree(r, d - dr) {
                    let prod = Polynomial::monomial(&ring, exp, ring.one())
                        .mul(rel)
                        .expect("same ring");
                    let mut row = vec![ring.zero(); monomials.len()];
                    for (e, c) in prod.terms() {
                        row[index[e]] = c.clone();
                    }
                    ideal_rows.push(row);
                }
            }
            let (ideal_rref, ideal_pivots) = if ideal_rows.is_empty() {
                (Vec::new(), Vec::new())
            } else {
                let solver = FieldSolver::new(&ring, &ideal_rows);
                (solver.rref_rows().to_vec(), solver.pivots().to_vec())
            };
            let pivot_set: std::collections::BTreeSet<usize> =
                ideal_pivots.iter().copied().collect();
            let basis_classes: Vec<usize> = (0..monomials.len())
                .filter(|i| !pivot_set.contains(i))
                .collect();
            pieces.push(DegreePiece {
                monomials,
                index,
                ideal_rref,
                ideal_pivots,
                basis_classes,
            });
        }
        Ok(GradedModule {
            group,
            spec,
            pieces,
        })
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn degree_bound(&self) -> u32 {
        self.spec.degree_bound
    }

    /// Monomial representatives of the quotient basis in degree d.
    pub fn basis(&self, d: u32) -> Vec<Polynomial> {
        let piece = &self.pieces[d as usize];
        piece
            .basis_classes
            .iter()
            .map(|&i| {
                Polynomial::monomial(
                    &self.spec.ring,
                    piece.monomials[i].clone(),
                    self.spec.ring.one(),
                )
            })
            .collect()
    }

    pub fn dim(&self, d: u32) -> usize {
        self.pieces[d as usize].basis_classes.len()
    }

    /// Coordinates of the class of f in the degree-d quotient basis.
    pub fn class_coords(&self, d: u32, f: &Polynomial) -> Vec<Scalar> {
        self.pieces[d as usize].class_coords(&self.spec.ring, f)
    }

    /// Does the class of f vanish in the quotient?
    pub fn class_is_zero(&self, d: u32, f: &Polynomial) -> bool {
        self.class_coords(d, f)
            .iter()
            .all(|c| self.spec.ring.is_zero(c))
    }

    /// Kernel of a graded operator family: for each simple index the map
    /// sends a degree-d class to a vector over the target coordinates.
    /// Returns representative polynomials per degree.
    fn graded_kernel<F>(&self, apply: F) -> GradedSubspace
    where
        F: Fn(u32, &Polynomial, usize) -> Vec<Scalar>,
    {
        let ring = &self.spec.ring;
        let n = self.group.datum().num_simple();
        let mut per_degree = Vec::new();
        for d in 0..=self.spec.degree_bound {
            let basis = self.basis(d);
            if basis.is_empty() {
                per_degree.push(Vec::new());
                continue;
            }
            // stack the operator images for all simple indices
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            let images: Vec<Vec<Vec<Scalar>>> = (0..n)
                .map(|i| basis.iter().map(|b| apply(d, b, i)).collect())
                .collect();
            let target_len: Vec<usize> = images.iter().map(|cols| cols[0].len()).collect();
            for (i, cols) in images.iter().enumerate() {
                for t in 0..target_len[i] {
                    rows.push(cols.iter().map(|col| col[t].clone()).collect());
                }
            }
            let combos: Vec<Vec<Scalar>> = if rows.is_empty() {
                // no constraints: the whole space
                (0..basis.len())
                    .map(|k| {
                        (0..basis.len())
                            .map(|j| if j == k { ring.one() } else { ring.zero() })
                            .collect()
                    })
                    .collect()
            } else if ring.is_field() {
                field_kernel(ring, &rows)
            } else {
                // integer or localized lattice kernel
                let to_int = |rows: &[Vec<Scalar>]| -> Vec<Vec<BigInt>> {
                    rows.iter()
                        .map(|row| {
                            row.iter()
                                .map(|s| match s {
                                    Scalar::Int(v) => v.clone(),
                                    Scalar::Frac(f) => {
                                        debug_assert!(f.is_integer());
                                        f.to_integer()
                                    }
                                    Scalar::Residue(_) => unreachable!(),
                                })
                                .collect()
                        })
                        .collect()
                };
                match &self.spec.ring {
                    Ring::Integers => int_kernel(&to_int(&rows))
                        .into_iter()
                        .map(|v| v.iter().map(|x| ring.from_bigint(x)).collect())
                        .collect(),
                    Ring::Localized(_) => {
                        // localization is exact: scale rational rows to
                        // integers, take the integer kernel
                        let q = Ring::Rationals;
                        let cleared: Vec<Vec<BigInt>> = rows
                            .iter()
                            .map(|row| {
                                let mut lcm = BigInt::from(1);
                                for s in row {
                                    if let Scalar::Frac(f) = s {
                                        lcm = num_integer::lcm(lcm.clone(), f.denom().clone());
                                    }
                                }
                                row.iter()
                                    .map(|s| {
                                        let Scalar::Frac(f) = s else { unreachable!() };
                                        (f * num_rational::BigRational::from(lcm.clone()))
                                            .to_integer()
                                    })
                                    .collect()
                            })
                            .collect();
                        let _ = q;
                        int_kernel(&cleared)
                            .into_iter()
                            .map(|v| v.iter().map(|x| ring.from_bigint(x)).collect())
                            .collect()
                    }
                    _ => unreachable!("validated rings"),
                }
            };
            let mut reps = Vec::new();
            for combo in combos {
                let mut rep = Polynomial::zero(ring, self.group.datum().rank());
                for (c, b) in combo.iter().zip(&basis) {
                    if !ring.is_zero(c) {
                        rep = rep.add(&b.mul_scalar(c)).expect("same ring");
                    }
                }
                if !rep.is_zero() {
                    reps.push(rep);
                }
            }
            per_degree.push(reps);
        }
        GradedSubspace { per_degree }
    }
}

/// Graded basis of the W-invariants or divided-difference invariants of the
/// module, by exact linear algebra degree by degree.
pub fn invariants_graded(
    group: &WeylGroup,
    spec: &ModuleSpec,
    which: InvariantKind,
) -> Result<GradedSubspace> {
    let module = GradedModule::new(group, spec.clone())?;
    Ok(match which {
        InvariantKind::W => module.graded_kernel(|d, b, i| {
            let s = group.simple_reflection(i);
            let diff = weyl_act(group, s, b).sub(b).expect("same ring");
            module.class_coords(d, &diff)
        }),
        InvariantKind::DividedDifference => module.graded_kernel(|d, b, i| {
            let db = delta_simple(group, i, b);
            if d == 0 {
                // degree -1 target is zero
                vec![]
            } else {
                module.class_coords(d - 1, &db)
            }
        }),
    })
}

/// Splits the graded W-invariants of the module by the projection psi:
/// the image part (killed by the augmentation ideal) and the kernel part.
/// The two intersect trivially and sum to A^W in every degree.
pub fn decompose_aw(
    group: &WeylGroup,
    spec: &ModuleSpec,
    family: &SchubertFamily,
) -> Result<(GradedSubspace, GradedSubspace)> {
    if family.ring() != &spec.ring {
        return Err(Error::RingMismatch);
    }
    let module = GradedModule::new(group, spec.clone())?;
    let aw = invariants_graded(group, spec, InvariantKind::W)?;
    let ring = &spec.ring;
    let mut id_part = Vec::new();
    let mut j_part = Vec::new();
    for (d, reps) in aw.per_degree.iter().enumerate() {
        let d = d as u32;
        if reps.is_empty() {
            id_part.push(Vec::new());
            j_part.push(Vec::new());
            continue;
        }
        let images: Vec<Polynomial> = reps.iter().map(|a| psi(group, family, a)).collect();
        let image_coords: Vec<Vec<Scalar>> =
            images.iter().map(|p| module.class_coords(d, p)).collect();
        // columns = A^W representatives, rows = quotient coordinates
        let rows = module.dim(d);
        let matrix: Vec<Vec<Scalar>> = (0..rows)
            .map(|r| image_coords.iter().map(|col| col[r].clone()).collect())
            .collect();
        // image part: independent psi-images
        let mut id_reps: Vec<Polynomial> = Vec::new();
        {
            let mut taken_rows: Vec<Vec<Scalar>> = Vec::new();
            for (img, coords) in images.iter().zip(&image_coords) {
                if img.is_zero() {
                    continue;
                }
                let mut candidate = taken_rows.clone();
                candidate.push(coords.clone());
                let rank_grows = if ring.is_field() {
                    crate::linalg::field_rank(ring, &candidate) > taken_rows.len()
                } else {
                    let q = Ring::Rationals;
                    let as_q: Vec<Vec<Scalar>> = candidate
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|s| ring.map_scalar(s, &q).expect("into Q"))
                                .collect()
                        })
                        .collect();
                    crate::linalg::field_rank(&q, &as_q) > taken_rows.len()
                };
                if rank_grows {
                    taken_rows.push(coords.clone());
                    id_reps.push(img.clone());
                }
            }
        }
        id_part.push(id_reps);
        // kernel part: combinations of A^W representatives with psi = 0
        let combos: Vec<Vec<Scalar>> = if ring.is_field() {
            field_kernel(ring, &matrix)
        } else {
            let q = Ring::Rationals;
            let as_q: Vec<Vec<Scalar>> = matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| ring.map_scalar(s, &q).expect("into Q"))
                        .collect()
                })
                .collect();
            // clear denominators back to the ring
            field_kernel(&q, &as_q)
                .into_iter()
                .map(|v| {
                    let mut lcm = BigInt::from(1);
                    for s in &v {
                        if let Scalar::Frac(f) = s {
                            lcm = num_integer::lcm(lcm.clone(), f.denom().clone());
                        }
                    }
                    v.iter()
                        .map(|s| {
                            let Scalar::Frac(f) = s else { unreachable!() };
                            ring.from_bigint(
                                &(f * num_rational::BigRational::from(lcm.clone())).to_integer(),
                            )
                        })
                        .collect()
                })
                .collect()
        };
        let mut j_reps = Vec::new();
        for combo in combos {
            let mut rep = Polynomial::zero(ring, group.datum().rank());
            for (c, a) in combo.iter().zip(reps) {
                if !ring.is_zero(c) {
                    rep = rep.add(&a.mul_scalar(c)).expect("same ring");
                }
            }
            if !rep.is_zero() {
                j_reps.push(rep);
            }
        }
        j_part.push(j_reps);
        let d = d as usize;
        debug_assert_eq!(
            id_part[d].len() + j_part[d].len(),
            reps.len(),
            "psi splits A^W in degree {d}"
        );
    }
    Ok((
        GradedSubspace {
            per_degree: id_part,
        },
        GradedSubspace {
            per_degree: j_part,
        },
    ))
}

/// The display order of the Schubert basis for the preset groups: descending
/// length, ties in the order the classes are customarily listed. Falls back
/// to descending length with lexicographic words.
pub fn listing_order(group: &WeylGroup) -> Vec<usize> {
    let words: Option<Vec<Vec<usize>>> = match group.datum().name() {
        Some("U2") | Some("SU2") | Some("SO3") => Some(vec![vec![0], vec![]]),
        Some("U3") | Some("SU3") | Some("PSU3") => Some(vec![
            vec![0, 1, 0],
            vec![0, 1],
            vec![1, 0],
            vec![1],
            vec![0],
            vec![],
        ]),
        Some("Sp2") => Some(vec![
            vec![0, 1, 0, 1],
            vec![1, 0, 1],
            vec![0, 1, 0],
            vec![0, 1],
            vec![1, 0],
            vec![1],
            vec![0],
            vec![],
        ]),
        _ => None,
    };
    match words {
        Some(ws) => ws.iter().map(|w| group.element_of_word(w)).collect(),
        None => {
            let mut order: Vec<usize> = (0..group.order()).collect();
            order.sort_by(|&a, &b| {
                let ea = group.element(a);
                let eb = group.element(b);
                eb.length()
                    .cmp(&ea.length())
                    .then_with(|| ea.word().cmp(eb.word()))
            });
            order
        }
    }
}

/// Matrix of the simple reflection s_i on the Schubert basis, entries in
/// S^W written in the named generators, rows and columns in listing order.
pub fn reflection_matrix(
    group: &WeylGroup,
    expander: &SchubertExpander,
    i: usize,
    order: &[usize],
) -> Result<Vec<Vec<Polynomial>>> {
    let ring = expander.family().ring().clone();
    let ngens = expander.basis().generators().len();
    let s = group.simple_reflection(i);
    let position: BTreeMap<usize, usize> = order.iter().enumerate().map(|(p, &w)| (w, p)).collect();
    let n = order.len();
    let mut matrix = vec![vec![Polynomial::zero(&ring, ngens); n]; n];
    for (col, &w) in order.iter().enumerate() {
        let image = weyl_act(group, s, expander.family().member(w));
        let expansion = expander.expand(&image)?;
        for (wp, coeff) in expansion {
            let row = *position
                .get(&wp)
                .ok_or_else(|| Error::ExpansionFailed("element outside basis order".into()))?;
            matrix[row][col] = coeff;
        }
    }
    Ok(matrix)
}

/// An ideal (m, g) of the invariant subalgebra with decidable membership:
/// an integer generator m (0 when absent) and an optional polynomial
/// generator that is linear, with unit constant coefficient, in one
/// designated generator variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleIdeal {
    pub modulus: u64,
    /// (generator polynomial in the named generators, designated variable)
    pub generator: Option<(Polynomial, usize)>,
}

impl SimpleIdeal {
    /// Membership of h (a polynomial in the generator variables over Z):
    /// reduce coefficients mod m, then eliminate the designated variable
    /// using g and test for zero.
    pub fn contains(&self, h: &Polynomial) -> Result<bool> {
        if self.modulus == 0 && self.generator.is_none() {
            return Ok(h.is_zero());
        }
        let ring = if self.modulus == 0 {
            h.ring().clone()
        } else {
            Ring::integers_mod(self.modulus)
        };
        let mut reduced = if self.modulus == 0 {
            h.clone()
        } else {
            h.change_ring(&ring)?
        };
        if let Some((g, var)) = &self.generator {
            let g = if self.modulus == 0 {
                g.clone()
            } else {
                g.change_ring(&ring)?
            };
            // split g = c * x_var + rest with c a unit constant
            let mut exp = vec![0u32; g.nvars()];
            exp[*var] = 1;
            let c = g.coeff(&exp);
            if ring.inverse(&c).is_none() {
                return Err(Error::MembershipUndecidable(
                    "designated variable has non-unit coefficient".into(),
                ));
            }
            if g.terms().any(|(e, _)| e[*var] > 1)
                || g.terms().any(|(e, _)| e[*var] == 1 && e.iter().sum::<u32>() > 1)
            {
                return Err(Error::MembershipUndecidable(
                    "generator is not linear in the designated variable".into(),
                ));
            }
            let mut rest = g.clone();
            rest = rest.sub(&Polynomial::monomial(&ring, exp, c.clone()))?;
            let inv = ring.inverse(&c).expect("checked unit");
            let substitution = rest.neg().mul_scalar(&inv);
            let images: Vec<Polynomial> = (0..g.nvars())
                .map(|k| {
                    if k == *var {
                        substitution.clone()
                    } else {
                        Polynomial::variable(&ring, g.nvars(), k)
                    }
                })
                .collect();
            reduced = reduced.substitute(&images)?;
        }
        Ok(reduced.is_zero())
    }
}

/// A claimed generator of A^J: coefficients over the Schubert basis (in
/// listing-order positions, as polynomials in the named generators over Z)
/// together with its annihilating ideal.
#[derive(Debug, Clone)]
pub struct TableRowClaim {
    pub coeffs: Vec<(usize, Polynomial)>,
    pub ideal: SimpleIdeal,
}

/// The claimed generators for each preset group, transcribed from the
/// low-rank table. Coefficient positions refer to [`listing_order`];
/// polynomials are in the named generators of [`preset_sw_basis`].
pub fn table_claims(name: &str) -> Result<Vec<TableRowClaim>> {
    let z = Ring::Integers;
    match name {
        "U2" => {
            // B^(2,p1) * S_w0
            let one = Polynomial::one(&z, 2);
            let p1 = Polynomial::variable(&z, 2, 0);
            Ok(vec![TableRowClaim {
                coeffs: vec![(0, one)],
                ideal: SimpleIdeal {
                    modulus: 2,
                    generator: Some((p1, 0)),
                },
            }])
        }
        "U3" => {
            // B^(2,p1p2+p3) * (S_w0 + p1 S_{s2s1} + p2 S_{s2} + p1^2 S_{s1})
            let one = Polynomial::one(&z, 3);
            let p1 = Polynomial::variable(&z, 3, 0);
            let p2 = Polynomial::variable(&z, 3, 1);
            let p1p2_plus_p3 = p1
                .mul(&p2)?
                .add(&Polynomial::variable(&z, 3, 2))?;
            Ok(vec![TableRowClaim {
                coeffs: vec![(0, one), (2, p1.clone()), (3, p2), (4, p1.pow(2))],
                ideal: SimpleIdeal {
                    modulus: 2,
                    generator: Some((p1p2_plus_p3, 2)),
                },
            }])
        }
        "SU2" => {
            // B^(2) * S_w0
            let one = Polynomial::one(&z, 1);
            Ok(vec![TableRowClaim {
                coeffs: vec![(0, one)],
                ideal: SimpleIdeal {
                    modulus: 2,
                    generator: None,
                },
            }])
        }
        "SU3" | "PSU3" => {
            // B^(2,q3) * (S_w0 + q2 S_{s2})
            let one = Polynomial::one(&z, 2);
            let q2 = Polynomial::variable(&z, 2, 0);
            let q3 = Polynomial::variable(&z, 2, 1);
            Ok(vec![TableRowClaim {
                coeffs: vec![(0, one), (3, q2)],
                ideal: SimpleIdeal {
                    modulus: 2,
                    generator: Some((q3, 1)),
                },
            }])
        }
        "SO3" => Ok(Vec::new()),
        "Sp2" => {
            // B^(2,p1) S_w0 + B^(2) S_{s2s1s2} + B^(2) S_{s1s2}
            //   + B^(2,p1) S_{s2s1} + B^(2) S_{s2}
            let one = Polynomial::one(&z, 2);
            let p1 = Polynomial::variable(&z, 2, 0);
            let with_p1 = SimpleIdeal {
                modulus: 2,
                generator: Some((p1, 0)),
            };
            let just_two = SimpleIdeal {
                modulus: 2,
                generator: None,
            };
            Ok(vec![
                TableRowClaim {
                    coeffs: vec![(0, one.clone())],
                    ideal: with_p1.clone(),
                },
                TableRowClaim {
                    coeffs: vec![(1, one.clone())],
                    ideal: just_two.clone(),
                },
                TableRowClaim {
                    coeffs: vec![(3, one.clone())],
                    ideal: just_two.clone(),
                },
                TableRowClaim {
                    coeffs: vec![(4, one.clone())],
                    ideal: with_p1,
                },
                TableRowClaim {
                    coeffs: vec![(5, one)],
                    ideal: just_two,
                },
            ])
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

/// Result of checking one group's table row.
#[derive(Debug, Clone)]
pub struct TableRowReport {
    pub group: String,
    pub forward_ok: bool,
    pub forward_failures: Vec<String>,
    pub converse: Vec<ConverseReport>,
}

impl TableRowReport {
    pub fn ok(&self) -> bool {
        self.forward_ok && self.converse.iter().all(|c| c.ok)
    }
}

/// One converse comparison: the psi-kernel dimensions of a witness module
/// against the span of the claimed generators.
#[derive(Debug, Clone)]
pub struct ConverseReport {
    pub ring: Ring,
    pub relation: Option<String>,
    pub computed_dims: Vec<usize>,
    pub claimed_dims: Vec<usize>,
    pub ok: bool,
}

/// Verifies a table row: forward membership of every entry of (M_i - Id) v
/// in the stated ideal for each simple i, and the converse truncated
/// dimension comparison on the witness quotient modules over F2 (and F3,
/// where the torsion index permits).
pub fn table_row_check(group: &WeylGroup, bound: u32) -> Result<TableRowReport> {
    let name = group
        .datum()
        .name()
        .ok_or_else(|| Error::UnknownInvariantGenerators("table rows exist for presets".into()))?
        .to_string();
    let claims = table_claims(&name)?;
    let order = listing_order(group);
    let t = crate::schubert::torsion_index(group) as i64;

    // Forward check over F2 (where every claimed ideal has modulus 2);
    // equivalent to the integral statement since membership in (2, g) only
    // depends on the reduction.
    let mut forward_ok = true;
    let mut forward_failures = Vec::new();
    let f2 = Ring::integers_mod(2);
    if !claims.is_empty() {
        if !f2.is_unit_integer(t) {
            return Err(Error::TorsionNotInvertible(t as u64));
        }
        let family = schubert_family(group, &f2, TopClassStrategy::Preset)?;
        let basis = preset_sw_basis(group, &f2)?;
        let ngens = basis.generators().len();
        let expander = SchubertExpander::new(group, family, basis)?;
        for i in 0..group.datum().num_simple() {
            let matrix = reflection_matrix(group, &expander, i, &order)?;
            for (c, claim) in claims.iter().enumerate() {
                // v in listing coordinates over F2
                let mut v = vec![Polynomial::zero(&f2, ngens); order.len()];
                for (pos, coeff) in &claim.coeffs {
                    v[*pos] = coeff.change_ring(&f2)?;
                }
                // (M_i - Id) v
                for row in 0..order.len() {
                    let mut entry = Polynomial::zero(&f2, ngens);
                    for (col, vc) in v.iter().enumerate() {
                        if !vc.is_zero() {
                            entry = entry.add(&matrix[row][col].mul(vc)?)?;
                        }
                    }
                    entry = entry.sub(&v[row])?;
                    if entry.is_zero() {
                        continue;
                    }
                    // lift to integer coefficients for the ideal test
                    let lifted = entry.lift_to_integers();
                    if !claim.ideal.contains(&lifted)? {
                        forward_ok = false;
                        forward_failures.push(format!(
                            "claim {c}: entry at row {row} of (M_{} - 1)v escapes the ideal",
                            i + 1
                        ));
                    }
                }
            }
        }
    }

    // Converse check: on each witness module, the psi-kernel part of the
    // invariants must match the span of the active claims, degree by degree.
    let mut converse = Vec::new();
    for modulus in [2u64, 3u64] {
        let ring = Ring::integers_mod(modulus);
        if !ring.is_unit_integer(t) {
            continue;
        }
        let family = schubert_family(group, &ring, TopClassStrategy::Preset)?;
        let basis = preset_sw_basis(group, &ring)?;
        // distinct polynomial relation parts, plus the free witness
        let mut witness_relations: Vec<Option<Polynomial>> = vec![None];
        if modulus == 2 {
            for claim in &claims {
                if let Some((g, _)) = &claim.ideal.generator {
                    let expanded = basis.evaluate(&g.change_ring(&ring)?);
                    if !witness_relations
                        .iter()
                        .any(|w| w.as_ref() == Some(&expanded))
                    {
                        witness_relations.push(Some(expanded));
                    }
                }
            }
        }
        for relation in witness_relations {
            let relations: Vec<Polynomial> = relation.iter().cloned().collect();
            let spec = ModuleSpec::quotient(&ring, relations.clone(), bound);
            let module = GradedModule::new(group, spec.clone())?;
            let (_, j_part) = decompose_aw(group, &spec, &family)?;
            let computed_dims = j_part.dims();

            // span of the active claims
            let mut claimed_vectors: Vec<Vec<Polynomial>> =
                vec![Vec::new(); bound as usize + 1];
            if modulus == 2 {
                for claim in &claims {
                    let active = match &claim.ideal.generator {
                        None => true,
                        Some((g, _)) => {
                            let expanded = basis.evaluate(&g.change_ring(&ring)?);
                            let dg = expanded.degree().unwrap_or(0);
                            dg <= bound && module.class_is_zero(dg, &expanded)
                        }
                    };
                    if !active {
                        continue;
                    }
                    let mut a = Polynomial::zero(&ring, group.datum().rank());
                    for (pos, coeff) in &claim.coeffs {
                        let c = basis.evaluate(&coeff.change_ring(&ring)?);
                        a = a.add(&c.mul(family.member(order[*pos]))?)?;
                    }
                    let da = a.degree().expect("nonzero claim");
                    // multiples by invariant-generator monomials
                    let degrees: Vec<u32> = basis.degrees();
                    for d in da..=bound {
                        for mu in crate::schubert::weighted_exponents(&degrees, d - da) {
                            let mut m = a.clone();
                            for (gi, &k) in mu.iter().enumerate() {
                                if k > 0 {
                                    m = m.mul(&basis.generators()[gi].pow(k))?;
                                }
                            }
                            claimed_vectors[d as usize].push(m);
                        }
                    }
                }
            }
            let mut claimed_dims = Vec::with_capacity(bound as usize + 1);
            for d in 0..=bound {
                let vecs = &claimed_vectors[d as usize];
                if vecs.is_empty() {
                    claimed_dims.push(0);
                    continue;
                }
                let rows: Vec<Vec<Scalar>> = vecs
                    .iter()
                    .map(|p| module.class_coords(d, p))
                    .collect();
                claimed_dims.push(crate::linalg::field_rank(&ring, &rows));
            }
            let ok = computed_dims == claimed_dims;
            converse.push(ConverseReport {
                ring: ring.clone(),
                relation: relation
                    .as_ref()
                    .map(|p| p.format_with(group.datum().var_names())),
                computed_dims,
                claimed_dims,
                ok,
            });
        }
    }

    Ok(TableRowReport {
        group: name,
        forward_ok,
        forward_failures,
        converse,
    })
}

/// Per-degree comparison of three graded subspaces of the algebra over the
/// ring: the span of the reduced integral invariants, the W-invariants, and
/// the divided-difference invariants.
#[derive(Debug, Clone)]
pub struct BaseComparison {
    pub ring: Ring,
    /// (reduced integral span, W-invariants, divided-difference invariants)
    pub dims: Vec<(usize, usize, usize)>,
}

impl BaseComparison {
    pub fn strict_degrees(&self) -> Vec<u32> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, (b, w, _))| b != w)
            .map(|(d, _)| d as u32)
            .collect()
    }
}

/// Compare (S^W) tensored to the ring against the ring-level invariants and
/// the divided-difference invariants, degree by degree.
pub fn base_vs_invariants(group: &WeylGroup, ring: &Ring, bound: u32) -> Result<BaseComparison> {
    let t = crate::schubert::torsion_index(group);
    if !ring.is_unit_integer(t as i64) {
        return Err(Error::TorsionNotInvertible(t));
    }
    let z = Ring::Integers;
    let spec_z = ModuleSpec::polynomial_algebra(&z, bound);
    let integral = invariants_graded(group, &spec_z, InvariantKind::W)?;
    let spec_ring = ModuleSpec::polynomial_algebra(ring, bound);
    let ring_w = invariants_graded(group, &spec_ring, InvariantKind::W)?;
    let ring_id = invariants_graded(group, &spec_ring, InvariantKind::DividedDifference)?;

    let mut dims = Vec::new();
    for d in 0..=bound as usize {
        // rank over the ring of the reduced integral basis
        let reduced: Vec<Polynomial> = integral.per_degree[d]
            .iter()
            .map(|p| p.change_ring(ring).expect("Z maps anywhere"))
            .filter(|p| !p.is_zero())
            .collect();
        let span = if reduced.is_empty() {
            0
        } else {
            let r = group.datum().rank();
            let monomials = monomials_of_degree(r, d as u32);
            let index: BTreeMap<Vec<u32>, usize> = monomials
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            let rows: Vec<Vec<Scalar>> = reduced
                .iter()
                .map(|p| {
                    let mut row = vec![ring.zero(); monomials.len()];
                    for (e, c) in p.terms() {
                        row[index[e]] = c.clone();
                    }
                    row
                })
                .collect();
            if ring.is_field() {
                crate::linalg::field_rank(ring, &rows)
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
                crate::linalg::field_rank(&q, &rows_q)
            }
        };
        dims.push((
            span,
            ring_w.per_degree[d].len(),
            ring_id.per_degree[d].len(),
        ));
    }
    Ok(BaseComparison {
        ring: ring.clone(),
        dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::preset_datum;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::enumerate(preset_datum(name).unwrap()).unwrap()
    }

    fn z() -> Ring {
        Ring::Integers
    }

    #[test]
    fn u2_invariant_dims_over_q() {
        let u2 = group("U2");
        let spec = ModuleSpec::polynomial_algebra(&Ring::Rationals, 4);
        let inv = invariants_graded(&u2, &spec, InvariantKind::W).unwrap();
        // monomials in p1, p2: dims 1,1,2,2,3
        assert_eq!(inv.dims(), vec![1, 1, 2, 2, 3]);
        let id = invariants_graded(&u2, &spec, InvariantKind::DividedDifference).unwrap();
        assert_eq!(id.dims(), vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn su2_mod2_invariants_differ_from_reduced_integral() {
        let su2 = group("SU2");
        let f2 = Ring::integers_mod(2);
        let cmp = base_vs_invariants(&su2, &f2, 6).unwrap();
        // reduced integral: 1,0,1,0,...; mod-2 W-invariants: everything
        let expected: Vec<(usize, usize, usize)> = (0..=6)
            .map(|d| ((d + 1) % 2, 1, (d + 1) % 2))
            .collect();
        assert_eq!(cmp.dims, expected);
        assert_eq!(cmp.strict_degrees(), vec![1, 3, 5]);
    }

    #[test]
    fn u3_mod2_all_three_agree() {
        let u3 = group("U3");
        let f2 = Ring::integers_mod(2);
        let cmp = base_vs_invariants(&u3, &f2, 8).unwrap();
        for (d, (b, w, i)) in cmp.dims.iter().enumerate() {
            assert_eq!(b, w, "degree {d}");
            assert_eq!(w, i, "degree {d}");
        }
    }

    #[test]
    fn so3_mod3_agrees() {
        let so3 = group("SO3");
        let f3 = Ring::integers_mod(3);
        let cmp = base_vs_invariants(&so3, &f3, 8).unwrap();
        for (b, w, i) in &cmp.dims {
            assert_eq!(b, w);
            assert_eq!(w, i);
        }
        // but F2 is refused: torsion index 2
        assert!(matches!(
            base_vs_invariants(&so3, &Ring::integers_mod(2), 4),
            Err(Error::TorsionNotInvertible(2))
        ));
    }

    #[test]
    fn quotient_strictness_witness() {
        // S/(p1) over F2 for U(2): in degree 1 the class of e1 is
        // W-invariant but not killed by the divided difference
        let u2 = group("U2");
        let f2 = Ring::integers_mod(2);
        let p1 = Polynomial::linear_form(&f2, &[1, 1]);
        let spec = ModuleSpec::quotient(&f2, vec![p1], 4);
        let aw = invariants_graded(&u2, &spec, InvariantKind::W).unwrap();
        let aid = invariants_graded(&u2, &spec, InvariantKind::DividedDifference).unwrap();
        assert_eq!(aw.per_degree[1].len(), 1);
        assert_eq!(aid.per_degree[1].len(), 0);
    }

    #[test]
    fn j_part_vanishes_over_q_and_z() {
        for name in ["U2", "U3", "SU2", "SU3", "Sp2"] {
            let g = group(name);
            for ring in [Ring::Rationals, z()] {
                let fam = schubert_family(&g, &ring, TopClassStrategy::Preset).unwrap();
                let spec = ModuleSpec::polynomial_algebra(&ring, 6);
                let (id_part, j_part) = decompose_aw(&g, &spec, &fam).unwrap();
                assert!(j_part.dims().iter().all(|&d| d == 0), "{name} {ring}");
                let aw = invariants_graded(&g, &spec, InvariantKind::W).unwrap();
                assert_eq!(id_part.dims(), aw.dims(), "{name} {ring}");
            }
        }
    }

    #[test]
    fn u2_reflection_matrix_display() {
        let u2 = group("U2");
        let fam = schubert_family(&u2, &z(), TopClassStrategy::Preset).unwrap();
        let basis = preset_sw_basis(&u2, &z()).unwrap();
        let expander = SchubertExpander::new(&u2, fam, basis).unwrap();
        let order = listing_order(&u2);
        let m = reflection_matrix(&u2, &expander, 0, &order).unwrap();
        // M = [[-1, 0], [p1, 1]]
        assert_eq!(m[0][0], Polynomial::one(&z(), 2).neg());
        assert!(m[0][1].is_zero());
        assert_eq!(m[1][0], Polynomial::variable(&z(), 2, 0));
        assert_eq!(m[1][1], Polynomial::one(&z(), 2));
    }

    #[test]
    fn reflection_matrices_square_to_identity() {
        for name in ["U2", "U3", "Sp2"] {
            let g = group(name);
            let fam = schubert_family(&g, &z(), TopClassStrategy::Preset).unwrap();
            let basis = preset_sw_basis(&g, &z()).unwrap();
            let ngens = basis.generators().len();
            let expander = SchubertExpander::new(&g, fam, basis).unwrap();
            let order = listing_order(&g);
            let n = order.len();
            for i in 0..g.datum().num_simple() {
                let m = reflection_matrix(&g, &expander, i, &order).unwrap();
                for a in 0..n {
                    for b in 0..n {
                        let mut acc = Polynomial::zero(&z(), ngens);
                        for k in 0..n {
                            acc = acc.add(&m[a][k].mul(&m[k][b]).unwrap()).unwrap();
                        }
                        let expected = if a == b {
                            Polynomial::one(&z(), ngens)
                        } else {
                            Polynomial::zero(&z(), ngens)
                        };
                        assert_eq!(acc, expected, "{name} M_{i}^2 at ({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn simple_ideal_membership() {
        let zr = z();
        let p1 = Polynomial::variable(&zr, 2, 0);
        let p2 = Polynomial::variable(&zr, 2, 1);
        let ideal = SimpleIdeal {
            modulus: 2,
            generator: Some((p1.clone(), 0)),
        };
        assert!(ideal.contains(&p1.mul(&p2).unwrap()).unwrap());
        assert!(ideal.contains(&p2.mul_i64(2)).unwrap());
        assert!(!ideal.contains(&p2).unwrap());
        // modulus-only ideal
        let two = SimpleIdeal {
            modulus: 2,
            generator: None,
        };
        assert!(two.contains(&p2.mul_i64(4)).unwrap());
        assert!(!two.contains(&p2.mul_i64(3)).unwrap());
    }

    #[test]
    fn table_rows_pass() {
        for name in ["U2", "U3", "SU2", "SU3", "SO3", "PSU3", "Sp2"] {
            let g = group(name);
            let report = table_row_check(&g, 6).unwrap();
            assert!(
                report.ok(),
                "{name}: forward {:?}, converse {:?}",
                report.forward_failures,
                report
                    .converse
                    .iter()
                    .map(|c| (c.ring.to_string(), c.ok, c.computed_dims.clone(), c.claimed_dims.clone()))
                    .collect::<Vec<_>>()
            );
        }
    }
}
