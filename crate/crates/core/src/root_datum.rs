//! Finite root data of semisimple simply connected groups.
//!
//! A [`RootDatum`] is built from a Cartan matrix `A` with
//! `A[i][j] = <alpha_j, alpha_i^vee>`. Weights are stored in the basis of
//! fundamental weights, so the pairing with the coroot `alpha_i^vee` is the
//! `i`-th coordinate and the simple root `alpha_j` is the `j`-th column of `A`.
//!
//! The Weyl group is enumerated breadth first from the identity. Elements are
//! keyed by their image of `rho`, which has trivial stabilizer.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of Weyl group elements enumerated.
pub const DEFAULT_WEYL_BOUND: usize = 1_000_000;

/// An element of the weight lattice, in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `varpi_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Weight(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `<x, alpha_i^vee>`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

/// An element of the Weyl group with a reduced word and its matrix on the
/// fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Image of `rho`; determines the element.
    pub id: Weight,
    /// Simple indices `i_1, ..., i_k` with `w = s_{i_1} ... s_{i_k}`.
    pub reduced_word: Vec<usize>,
    pub length: usize,
    /// Row-major matrix; column `j` holds the coordinates of `w(varpi_j)`.
    pub action: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn apply(&self, x: &Weight) -> Weight {
        assert_eq!(x.rank(), self.action.len(), "weight rank mismatch");
        Weight(
            self.action
                .iter()
                .map(|row| row.iter().zip(x.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// `(-1)^length`.
    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Named Cartan types with built-in matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    /// Parses a family letter and a rank, e.g. `("B", 2)`.
    pub fn from_letter(letter: &str, rank: usize) -> Result<Self> {
        let ty = match letter.to_ascii_uppercase().as_str() {
            "A" => CartanType::A(rank),
            "B" => CartanType::B(rank),
            "C" => CartanType::C(rank),
            "D" => CartanType::D(rank),
            "E" => CartanType::E(rank),
            "F" => CartanType::F4,
            "G" => CartanType::G2,
            other => {
                return Err(Error::InvalidCartan(format!("unknown Cartan type {other:?}")));
            }
        };
        let ok = match ty {
            CartanType::A(n) => n >= 1,
            CartanType::B(n) | CartanType::C(n) => n >= 2,
            CartanType::D(n) => n >= 4,
            CartanType::E(n) => (6..=8).contains(&n),
            CartanType::F4 => rank == 4,
            CartanType::G2 => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidCartan(format!(
                "type {letter} does not exist in rank {rank}"
            )));
        }
        Ok(ty)
    }

    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n)
            | CartanType::B(n)
            | CartanType::C(n)
            | CartanType::D(n)
            | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    pub fn letter(&self) -> &'static str {
        match self {
            CartanType::A(_) => "A",
            CartanType::B(_) => "B",
            CartanType::C(_) => "C",
            CartanType::D(_) => "D",
            CartanType::E(_) => "E",
            CartanType::F4 => "F",
            CartanType::G2 => "G",
        }
    }

    /// Bourbaki numbering, `A[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match *self {
            CartanType::A(_) | CartanType::B(_) | CartanType::C(_) => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            CartanType::D(_) => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            CartanType::E(_) => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            CartanType::F4 => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            CartanType::G2 => link(0, 1),
        }
        match *self {
            // alpha_n short
            CartanType::B(_) => a[n - 1][n - 2] = -2,
            // alpha_n long
            CartanType::C(_) => a[n - 2][n - 1] = -2,
            CartanType::F4 => a[2][1] = -2,
            CartanType::G2 => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter(), self.rank())
    }
}

/// Serializable description of the datum a report was produced for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumDescriptor {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
}

/// A finite root datum with its Weyl group fully enumerated.
#[derive(Clone, Debug)]
pub struct RootDatum {
    kind: String,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    rho: Weight,
    weyl: Vec<WeylElement>,
    index: HashMap<Weight, usize>,
    // left_mul[w][i] = index of s_i w
    left_mul: Vec<Vec<usize>>,
}

impl RootDatum {
    pub fn from_type(ty: CartanType) -> Result<Self> {
        let mut d = Self::from_cartan(ty.cartan_matrix())?;
        d.kind = ty.letter().to_string();
        Ok(d)
    }

    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self> {
        Self::with_bound(cartan, DEFAULT_WEYL_BOUND)
    }

    /// Builds the datum, failing with [`Error::WeylTooLarge`] once more than
    /// `bound` Weyl group elements have been found.
    pub fn with_bound(cartan: Vec<Vec<i64>>, bound: usize) -> Result<Self> {
        validate_cartan(&cartan)?;
        let n = cartan.len();
        let simple_roots: Vec<Weight> = (0..n)
            .map(|j| Weight((0..n).map(|i| cartan[i][j]).collect()))
            .collect();
        let rho = Weight(vec![1; n]);

        let reflection = |i: usize| -> Vec<Vec<i64>> {
            // s_i(x) = x - x_i alpha_i
            let mut m = identity_matrix(n);
            for (k, row) in m.iter_mut().enumerate() {
                row[i] -= simple_roots[i].0[k];
            }
            m
        };
        let reflections: Vec<Vec<Vec<i64>>> = (0..n).map(reflection).collect();

        let mut weyl = vec![WeylElement {
            id: rho.clone(),
            reduced_word: Vec::new(),
            length: 0,
            action: identity_matrix(n),
        }];
        let mut index = HashMap::from([(rho.clone(), 0usize)]);
        let mut left_mul: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            let mut row = Vec::with_capacity(n);
            for (i, s) in reflections.iter().enumerate() {
                let action = mat_mul(s, &weyl[w].action);
                let id = mat_vec(&action, &rho);
                let next = match index.get(&id) {
                    Some(&k) => k,
                    None => {
                        if weyl.len() >= bound {
                            return Err(Error::WeylTooLarge { bound });
                        }
                        let mut word = Vec::with_capacity(weyl[w].length + 1);
                        word.push(i);
                        word.extend_from_slice(&weyl[w].reduced_word);
                        let k = weyl.len();
                        weyl.push(WeylElement {
                            id: id.clone(),
                            length: weyl[w].length + 1,
                            reduced_word: word,
                            action,
                        });
                        index.insert(id, k);
                        queue.push_back(k);
                        k
                    }
                };
                row.push(next);
            }
            left_mul.push(row);
        }

        let positive_roots = positive_roots(&cartan, bound)?;

        Ok(RootDatum {
            kind: "custom".to_string(),
            cartan,
            simple_roots,
            positive_roots,
            rho,
            weyl,
            index,
            left_mul,
        })
    }

    /// Reads a Cartan matrix file: first line `n`, then `n` rows of integers.
    pub fn from_cartan_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_cartan(parse_cartan(&text)?)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn descriptor(&self) -> DatumDescriptor {
        DatumDescriptor {
            kind: self.kind.clone(),
            rank: self.rank(),
            cartan: self.cartan.clone(),
        }
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots[i]
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// All Weyl group elements in breadth-first order; index 0 is the identity.
    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.weyl[w]
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, w: usize) -> usize {
        self.weyl[w].length
    }

    /// Index of the simple reflection `s_i`.
    pub fn simple_reflection(&self, i: usize) -> usize {
        self.left_mul[0][i]
    }

    /// Looks an element up by its image of `rho`.
    pub fn index_of(&self, id: &Weight) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Index of `s_i w`.
    pub fn left_mul(&self, i: usize, w: usize) -> usize {
        self.left_mul[w][i]
    }

    /// Index of `v w`.
    pub fn product(&self, v: usize, w: usize) -> usize {
        self.weyl[v]
            .reduced_word
            .iter()
            .rev()
            .fold(w, |acc, &i| self.left_mul(i, acc))
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.weyl[w]
            .reduced_word
            .iter()
            .fold(0, |acc, &i| self.left_mul(i, acc))
    }

    pub fn longest(&self) -> usize {
        (0..self.weyl.len())
            .max_by_key(|&w| self.weyl[w].length)
            .unwrap_or(0)
    }

    /// `s_i(x) = x - <x, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, i: usize, x: &Weight) -> Weight {
        let m = x.pairing(i);
        if m == 0 {
            return x.clone();
        }
        x - &self.simple_roots[i].scale(m)
    }

    pub fn apply(&self, w: usize, x: &Weight) -> Weight {
        self.weyl[w].apply(x)
    }

    /// Order `m_ij` of `s_i s_j`.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            // Not reachable for an enumerated finite datum.
            p => panic!("no finite braid order for Cartan product {p}"),
        }
    }
}

/// Parses the plain-text Cartan matrix format.
pub fn parse_cartan(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::InvalidCartan("empty Cartan matrix file".into()))?
        .parse()
        .map_err(|_| Error::InvalidCartan("first line must be the rank".into()))?;
    let mut rows = Vec::with_capacity(n);
    for line in lines {
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::InvalidCartan(format!("non-integer entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::InvalidCartan(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    Ok(rows)
}

fn validate_cartan(a: &[Vec<i64>]) -> Result<()> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidCartan("rank must be positive".into()));
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCartan(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
    }
    for i in 0..n {
        if a[i][i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry A[{i}][{i}] != 2")));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                return Err(Error::InvalidCartan(format!(
                    "off-diagonal entry A[{i}][{j}] = {} is positive",
                    a[i][j]
                )));
            }
            if (a[i][j] == 0) != (a[j][i] == 0) {
                return Err(Error::InvalidCartan(format!(
                    "A[{i}][{j}] and A[{j}][{i}] must vanish together"
                )));
            }
        }
    }
    Ok(())
}

/// Positive roots in fundamental-weight coordinates, generated as the
/// Weyl-orbit of the simple roots in simple-root coordinates.
fn positive_roots(a: &[Vec<i64>], bound: usize) -> Result<Vec<Weight>> {
    let n = a.len();
    let unit = |j: usize| {
        let mut c = vec![0i64; n];
        c[j] = 1;
        c
    };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for j in 0..n {
        let c = unit(j);
        seen.insert(c.clone());
        order.push(c.clone());
        queue.push_back(c);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            // <beta, alpha_i^vee> = sum_j c_j A[i][j]
            let m: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
            let mut next = beta.clone();
            next[i] -= m;
            if seen.insert(next.clone()) {
                if seen.len() > bound {
                    return Err(Error::WeylTooLarge { bound });
                }
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(order
        .into_iter()
        .filter(|c| c.iter().all(|&k| k >= 0))
        .map(|c| Weight((0..n).map(|i| (0..n).map(|j| a[i][j] * c[j]).sum()).collect()))
        .collect())
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn mat_vec(a: &[Vec<i64>], x: &Weight) -> Weight {
    Weight(
        a.iter()
            .map(|row| row.iter().zip(x.coords()).map(|(p, q)| p * q).sum())
            .collect(),
    )
}
