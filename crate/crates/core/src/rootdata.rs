//! Root data: a character lattice of fixed rank together with simple roots
//! and coroots, encoding a compact group's isogeny form exactly over Z.

use crate::error::{Error, Result};

/// The preset groups, covering every isogeny form used in the computations.
pub const PRESET_NAMES: [&str; 8] = ["U2", "U3", "U4", "SU2", "SU3", "SO3", "PSU3", "Sp2"];

/// A root datum: rank-r character lattice X(T) with a chosen basis, plus
/// simple roots (in the X(T) basis) and simple coroots (in the dual basis).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    name: Option<String>,
    rank: usize,
    var_names: Vec<String>,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
}

impl RootDatum {
    /// Build and validate a root datum from raw lattice data.
    pub fn new(
        name: Option<String>,
        var_names: Vec<String>,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<RootDatum> {
        let rank = var_names.len();
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::InvalidCartanData(
                "root and coroot counts differ".into(),
            ));
        }
        if simple_roots.iter().any(|r| r.len() != rank)
            || simple_coroots.iter().any(|r| r.len() != rank)
        {
            return Err(Error::InvalidCartanData(
                "root vectors must have length equal to the rank".into(),
            ));
        }
        let datum = RootDatum {
            name,
            rank,
            var_names,
            simple_roots,
            simple_coroots,
        };
        let n = datum.num_simple();
        for i in 0..n {
            for j in 0..n {
                let a = datum.cartan(i, j);
                if i == j {
                    if a != 2 {
                        return Err(Error::InvalidCartanData(format!(
                            "pairing <a_{i}, a_{i}^v> = {a}, expected 2"
                        )));
                    }
                } else {
                    if a > 0 {
                        return Err(Error::InvalidCartanData(format!(
                            "off-diagonal pairing <a_{j}, a_{i}^v> = {a} is positive"
                        )));
                    }
                    let prod = a * datum.cartan(j, i);
                    if !(0..=3).contains(&prod) {
                        return Err(Error::InvalidCartanData(format!(
                            "non-crystallographic product {prod} at ({i},{j})"
                        )));
                    }
                }
            }
        }
        Ok(datum)
    }

    /// Cartan pairing <alpha_j, alpha_i^v>.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.simple_roots[j]
            .iter()
            .zip(&self.simple_coroots[i])
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    /// Matrix of the simple reflection s_i on X(T), row-major:
    /// s_i(x) = x - <x, a_i^v> a_i.
    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<i64> {
        let r = self.rank;
        let mut m = vec![0i64; r * r];
        for a in 0..r {
            for b in 0..r {
                let delta = if a == b { 1 } else { 0 };
                m[a * r + b] = delta - self.simple_roots[i][a] * self.simple_coroots[i][b];
            }
        }
        m
    }
}

/// The lattice-exact presets used throughout.
///
/// U(n) has X(T) = Z^n with the diagonal characters e_k and roots e_i - e_j.
/// SU(n) is realized on the honest rank n-1 quotient lattice, eliminating
/// e_n = -(e_1 + ... + e_{n-1}). SO(3) has rank 1 with the root generating
/// the lattice. PSU(3) lives on the A2 root lattice with basis a1, a2.
/// Sp(2) = U(2,H) has X(T) = Z^2 with roots e1 - e2 and 2e2.
pub fn preset_datum(name: &str) -> Result<RootDatum> {
    let unitary = |n: usize, label: &str| {
        let vars = (1..=n).map(|k| format!("e{k}")).collect();
        let mut roots = Vec::new();
        for i in 0..n - 1 {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[i + 1] = -1;
            roots.push(v);
        }
        RootDatum::new(Some(label.to_string()), vars, roots.clone(), roots)
    };
    let special_unitary = |n: usize, label: &str| {
        let rank = n - 1;
        let vars = (1..=rank).map(|k| format!("e{k}")).collect();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        for i in 0..rank {
            let mut root = vec![0i64; rank];
            if i + 1 < rank {
                root[i] = 1;
                root[i + 1] = -1;
            } else {
                // a_{n-1} = e_{n-1} - e_n with e_n = -(e_1 + ... + e_{n-1})
                for v in root.iter_mut() {
                    *v = 1;
                }
                root[rank - 1] = 2;
            }
            roots.push(root);
            let mut coroot = vec![0i64; rank];
            if i + 1 < rank {
                coroot[i] = 1;
                coroot[i + 1] = -1;
            } else {
                coroot[rank - 1] = 1;
            }
            coroots.push(coroot);
        }
        RootDatum::new(Some(label.to_string()), vars, roots, coroots)
    };
    match name {
        "U2" => unitary(2, "U2"),
        "U3" => unitary(3, "U3"),
        "U4" => unitary(4, "U4"),
        "SU2" => special_unitary(2, "SU2"),
        "SU3" => special_unitary(3, "SU3"),
        "SO3" => RootDatum::new(
            Some("SO3".to_string()),
            vec!["a1".to_string()],
            vec![vec![1]],
            vec![vec![2]],
        ),
        "PSU3" => RootDatum::new(
            Some("PSU3".to_string()),
            vec!["a1".to_string(), "a2".to_string()],
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![2, -1], vec![-1, 2]],
        ),
        "Sp2" => RootDatum::new(
            Some("Sp2".to_string()),
            vec!["e1".to_string(), "e2".to_string()],
            vec![vec![1, -1], vec![0, 2]],
            vec![vec![1, -1], vec![0, 1]],
        ),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

/// A rank-2 datum of type G2 on the root lattice, used as a raw
/// (non-preset) input in tests and verification suites.
pub fn g2_datum() -> RootDatum {
    RootDatum::new(
        Some("G2".to_string()),
        vec!["a1".to_string(), "a2".to_string()],
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![2, -3], vec![-1, 2]],
    )
    .expect("valid G2 Cartan data")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for name in PRESET_NAMES {
            let d = preset_datum(name).unwrap();
            assert_eq!(d.name(), Some(name));
        }
        assert!(matches!(preset_datum("E8"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn preset_shapes() {
        let u3 = preset_datum("U3").unwrap();
        assert_eq!(u3.rank(), 3);
        assert_eq!(u3.simple_roots(), &[vec![1, -1, 0], vec![0, 1, -1]]);

        let sp2 = preset_datum("Sp2").unwrap();
        assert_eq!(sp2.rank(), 2);
        assert_eq!(sp2.simple_roots(), &[vec![1, -1], vec![0, 2]]);
        assert_eq!(sp2.simple_coroots(), &[vec![1, -1], vec![0, 1]]);

        let so3 = preset_datum("SO3").unwrap();
        assert_eq!(so3.rank(), 1);
        assert_eq!(so3.simple_roots(), &[vec![1]]);
    }

    #[test]
    fn su_realization_is_integral() {
        let su3 = preset_datum("SU3").unwrap();
        assert_eq!(su3.rank(), 2);
        assert_eq!(su3.simple_roots(), &[vec![1, -1], vec![1, 2]]);
        // A2 Cartan matrix
        assert_eq!(su3.cartan(0, 0), 2);
        assert_eq!(su3.cartan(0, 1), -1);
        assert_eq!(su3.cartan(1, 0), -1);
        assert_eq!(su3.cartan(1, 1), 2);
    }

    #[test]
    fn invalid_cartan_rejected() {
        // diagonal pairing 1 instead of 2
        let bad = RootDatum::new(
            None,
            vec!["x".to_string()],
            vec![vec![1]],
            vec![vec![1]],
        );
        assert!(matches!(bad, Err(Error::InvalidCartanData(_))));
        // positive off-diagonal pairing
        let bad = RootDatum::new(
            None,
            vec!["x".into(), "y".into()],
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![2, 1], vec![1, 2]],
        );
        assert!(matches!(bad, Err(Error::InvalidCartanData(_))));
    }

    #[test]
    fn reflection_matrices_are_involutions() {
        for name in PRESET_NAMES {
            let d = preset_datum(name).unwrap();
            let r = d.rank();
            for i in 0..d.num_simple() {
                let m = d.simple_reflection_matrix(i);
                let mut sq = vec![0i64; r * r];
                for a in 0..r {
                    for b in 0..r {
                        sq[a * r + b] = (0..r).map(|k| m[a * r + k] * m[k * r + b]).sum();
                    }
                }
                for a in 0..r {
                    for b in 0..r {
                        assert_eq!(sq[a * r + b], if a == b { 1 } else { 0 });
                    }
                }
            }
        }
    }
}
