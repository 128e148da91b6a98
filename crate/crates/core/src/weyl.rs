//! Weyl group enumeration: elements as integer lattice actions with cached
//! reduced words, lengths and determinants, plus the root system, Bruhat
//! order and reflection subgroups.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntSolver;
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::rootdata::RootDatum;

const CLOSURE_BOUND: usize = 1_000_000;

/// A Weyl group element. Equality is equality of the action matrix; the
/// cached word is the lexicographically smallest reduced word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    action: Vec<i64>,
    word: Vec<usize>,
    length: u32,
    det: i8,
}

impl WeylElement {
    /// Row-major action matrix on X(T).
    pub fn action(&self) -> &[i64] {
        &self.action
    }

    /// Cached reduced word, 0-based simple reflection indices.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn det(&self) -> i8 {
        self.det
    }
}

/// A root of the datum, with its coroot, positivity data and the index of
/// the reflection it defines.
#[derive(Debug, Clone)]
pub struct Root {
    pub vector: Vec<i64>,
    pub covector: Vec<i64>,
    /// coefficients over the simple roots
    pub simple_coords: Vec<i64>,
    pub reflection: usize,
    pub positive: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }
}

/// The enumerated Weyl group of a root datum, with product and inverse
/// tables, the full root system and the Bruhat order.
pub struct WeylGroup {
    datum: RootDatum,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    simple: Vec<usize>,
    longest: usize,
    roots: Vec<Root>,
    positive: Vec<usize>,
    bruhat: Vec<Vec<bool>>,
}

fn mat_mul(r: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; r * r];
    for i in 0..r {
        for k in 0..r {
            let v = a[i * r + k];
            if v != 0 {
                for j in 0..r {
                    out[i * r + j] += v * b[k * r + j];
                }
            }
        }
    }
    out
}

fn mat_identity(r: usize) -> Vec<i64> {
    let mut m = vec![0i64; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

fn mat_apply(r: usize, m: &[i64], v: &[i64]) -> Vec<i64> {
    (0..r)
        .map(|i| (0..r).map(|j| m[i * r + j] * v[j]).sum())
        .collect()
}

/// Apply the transpose, i.e. the action on the dual lattice of an involution.
fn mat_apply_transpose(r: usize, m: &[i64], v: &[i64]) -> Vec<i64> {
    (0..r)
        .map(|i| (0..r).map(|j| m[j * r + i] * v[j]).sum())
        .collect()
}

impl WeylGroup {
    /// Enumerate the Weyl group by closure under the simple reflections.
    /// Elements are ordered by length, then lexicographically by word.
    pub fn enumerate(datum: RootDatum) -> Result<WeylGroup> {
        let r = datum.rank();
        let n = datum.num_simple();
        let gens: Vec<Vec<i64>> = (0..n).map(|i| datum.simple_reflection_matrix(i)).collect();

        let mut elements = vec![WeylElement {
            action: mat_identity(r),
            word: Vec::new(),
            length: 0,
            det: 1,
        }];
        let mut index = HashMap::new();
        index.insert(elements[0].action.clone(), 0usize);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(cur) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(r, &elements[cur].action, g);
                if !index.contains_key(&m) {
                    if elements.len() >= CLOSURE_BOUND {
                        return Err(Error::GroupNotFinite);
                    }
                    let mut word = elements[cur].word.clone();
                    word.push(i);
                    let length = elements[cur].length + 1;
                    let det = -elements[cur].det;
                    index.insert(m.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(WeylElement {
                        action: m,
                        word,
                        length,
                        det,
                    });
                }
            }
        }

        let order = elements.len();
        let mut mult = vec![vec![0usize; order]; order];
        for a in 0..order {
            for b in 0..order {
                let m = mat_mul(r, &elements[a].action, &elements[b].action);
                mult[a][b] = index[&m];
            }
        }
        let mut inverse = vec![0usize; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| mult[a][b] == 0)
                .expect("group closure");
        }
        let simple: Vec<usize> = gens.iter().map(|g| index[g]).collect();

        let max_len = elements.iter().map(|e| e.length).max().unwrap_or(0);
        let longest_candidates: Vec<usize> = (0..order)
            .filter(|&i| elements[i].length == max_len)
            .collect();
        if longest_candidates.len() != 1 {
            return Err(Error::InvalidCartanData(
                "no unique longest element".into(),
            ));
        }
        let longest = longest_candidates[0];

        // Root system: orbit of the simple roots, tracking coroots and
        // conjugated reflections.
        let simple_matrix: Vec<Vec<BigInt>> = (0..r)
            .map(|row| (0..n).map(|i| BigInt::from(datum.simple_roots()[i][row])).collect())
            .collect();
        let coord_solver = IntSolver::new(&simple_matrix);
        let mut roots: Vec<Root> = Vec::new();
        let mut root_index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut rqueue: VecDeque<usize> = VecDeque::new();
        for i in 0..n {
            let vector = datum.simple_roots()[i].to_vec();
            if root_index.contains_key(&vector) {
                return Err(Error::InvalidCartanData("repeated simple root".into()));
            }
            root_index.insert(vector.clone(), roots.len());
            rqueue.push_back(roots.len());
            roots.push(Root {
                vector,
                covector: datum.simple_coroots()[i].to_vec(),
                simple_coords: Vec::new(),
                reflection: simple[i],
                positive: false,
            });
        }
        while let Some(cur) = rqueue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let vector = mat_apply(r, g, &roots[cur].vector);
                if !root_index.contains_key(&vector) {
                    let covector = mat_apply_transpose(r, g, &roots[cur].covector);
                    let reflection = mult[simple[i]][mult[roots[cur].reflection][simple[i]]];
                    root_index.insert(vector.clone(), roots.len());
                    rqueue.push_back(roots.len());
                    roots.push(Root {
                        vector,
                        covector,
                        simple_coords: Vec::new(),
                        reflection,
                        positive: false,
                    });
                }
            }
        }
        for root in roots.iter_mut() {
            let b: Vec<BigInt> = root.vector.iter().map(|&v| BigInt::from(v)).collect();
            let coords = coord_solver
                .solve(&b)
                .ok_or_else(|| Error::InvalidCartanData("root outside simple span".into()))?;
            root.simple_coords = coords
                .iter()
                .map(|c| i64::try_from(c).expect("small root coordinates"))
                .collect();
            root.positive = root.simple_coords.iter().all(|&c| c >= 0);
        }
        let mut positive: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].positive).collect();
        positive.sort_by(|&a, &b| {
            (roots[a].height(), &roots[a].vector).cmp(&(roots[b].height(), &roots[b].vector))
        });

        // Bruhat order: subword closure along the cached reduced word.
        let mut bruhat = vec![vec![false; order]; order];
        for w in 0..order {
            let mut reach = vec![false; order];
            reach[0] = true;
            for &letter in &elements[w].word {
                let s = simple[letter];
                for x in 0..order {
                    if reach[x] && !reach[mult[x][s]] {
                        reach[mult[x][s]] = true;
                    }
                }
            }
            for x in 0..order {
                bruhat[x][w] = reach[x];
            }
        }

        Ok(WeylGroup {
            datum,
            elements,
            index,
            mult,
            inverse,
            simple,
            longest,
            roots,
            positive,
            bruhat,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> impl Iterator<Item = (usize, &WeylElement)> {
        self.elements.iter().enumerate()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the simple reflection s_i.
    pub fn simple_reflection(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn longest_element(&self) -> usize {
        self.longest
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn index_of_action(&self, action: &[i64]) -> Option<usize> {
        self.index.get(action).copied()
    }

    /// Element obtained by multiplying the simple reflections of a word.
    pub fn element_of_word(&self, word: &[usize]) -> usize {
        word.iter()
            .fold(0usize, |acc, &i| self.mult[acc][self.simple[i]])
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root_index(&self, vector: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.vector == vector)
    }

    /// Positive roots in the canonical order: by height, then
    /// lexicographically by coordinate vector.
    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.positive.iter().map(|&i| &self.roots[i])
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    /// The discriminant d: the product of the positive roots, homogeneous of
    /// degree N over the requested ring.
    pub fn discriminant(&self, ring: &Ring) -> Polynomial {
        let mut d = Polynomial::one(ring, self.datum.rank());
        for root in self.positive_roots() {
            let form = Polynomial::linear_form(ring, &root.vector);
            d = d.mul(&form).expect("same ring");
        }
        d
    }

    /// All reduced words of an element, each of length l(w).
    pub fn all_reduced_words(&self, w: usize) -> Vec<Vec<usize>> {
        let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        self.reduced_words_memo(w, &mut memo)
    }

    fn reduced_words_memo(
        &self,
        w: usize,
        memo: &mut HashMap<usize, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(ws) = memo.get(&w) {
            return ws.clone();
        }
        if w == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..self.simple.len() {
            let shorter = self.mult[w][self.simple[i]];
            if self.elements[shorter].length < self.elements[w].length {
                for mut prefix in self.reduced_words_memo(shorter, memo) {
                    prefix.push(i);
                    out.push(prefix);
                }
            }
        }
        memo.insert(w, out.clone());
        out
    }

    /// Bruhat order: w1 <= w2.
    pub fn bruhat_leq(&self, w1: usize, w2: usize) -> bool {
        self.bruhat[w1][w2]
    }

    /// Number of positive roots sent to negative roots; equals the length.
    pub fn inversions(&self, w: usize) -> usize {
        let r = self.datum.rank();
        self.positive_roots()
            .filter(|root| {
                let image = mat_apply(r, &self.elements[w].action, &root.vector);
                let idx = self.index_of_root(&image);
                !self.roots[idx].positive
            })
            .count()
    }

    fn index_of_root(&self, vector: &[i64]) -> usize {
        self.roots
            .iter()
            .position(|r| r.vector == vector)
            .expect("image of a root is a root")
    }

    /// The reflection subgroup generated by the reflections in the given
    /// roots (coordinates in the X(T) basis).
    pub fn reflection_subgroup(&self, root_vectors: &[Vec<i64>]) -> Result<ReflectionSubgroup> {
        let mut gens = Vec::new();
        for v in root_vectors {
            let idx = self
                .root_index(v)
                .ok_or_else(|| Error::InvalidInput(format!("{v:?} is not a root")))?;
            gens.push(self.roots[idx].reflection);
        }
        Ok(self.subgroup_closure(&gens))
    }

    /// The parabolic subgroup generated by a set of simple reflections
    /// (0-based indices).
    pub fn parabolic_subgroup(&self, simples: &[usize]) -> Result<ReflectionSubgroup> {
        for &i in simples {
            if i >= self.simple.len() {
                return Err(Error::InvalidInput(format!(
                    "no simple reflection with index {i}"
                )));
            }
        }
        let gens: Vec<usize> = simples.iter().map(|&i| self.simple[i]).collect();
        Ok(self.subgroup_closure(&gens))
    }

    fn subgroup_closure(&self, gens: &[usize]) -> ReflectionSubgroup {
        let mut members = BTreeSet::new();
        members.insert(0usize);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(cur) = queue.pop_front() {
            for &g in gens {
                let next = self.mult[cur][g];
                if members.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        let elements: Vec<usize> = members.iter().copied().collect();
        let positive_system: Vec<usize> = self
            .positive
            .iter()
            .copied()
            .filter(|&ri| members.contains(&self.roots[ri].reflection))
            .collect();
        // parabolic iff the simple reflections inside generate everything
        let inner_simples: Vec<usize> = self
            .simple
            .iter()
            .copied()
            .filter(|s| members.contains(s))
            .collect();
        let is_parabolic = {
            let mut sub = BTreeSet::new();
            sub.insert(0usize);
            let mut q: VecDeque<usize> = VecDeque::from([0]);
            while let Some(cur) = q.pop_front() {
                for &g in &inner_simples {
                    let next = self.mult[cur][g];
                    if sub.insert(next) {
                        q.push_back(next);
                    }
                }
            }
            sub.len() == elements.len()
        };
        ReflectionSubgroup {
            elements,
            positive_system,
            is_parabolic,
        }
    }
}

/// A reflection subgroup of an enumerated Weyl group, stored as indices into
/// the parent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionSubgroup {
    elements: Vec<usize>,
    positive_system: Vec<usize>,
    is_parabolic: bool,
}

impl ReflectionSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, w: usize) -> bool {
        self.elements.binary_search(&w).is_ok()
    }

    /// Indices (into the parent's root list) of the parent positive roots
    /// belonging to the subgroup.
    pub fn positive_system(&self) -> &[usize] {
        &self.positive_system
    }

    pub fn is_parabolic(&self) -> bool {
        self.is_parabolic
    }
}
