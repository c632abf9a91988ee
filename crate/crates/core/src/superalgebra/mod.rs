//! Hom-Lie superalgebras given by structure constants over a homogeneous
//! basis.
//!
//! The bracket is stored as a full tensor `c[i][j][k]` with
//! `[e_i, e_j] = sum_k c[i][j][k] e_k`. The twist map `alpha` is a square
//! matrix whose column `j` holds the coordinates of `alpha(e_j)`.

mod axioms;

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub(crate) use axioms::hom_jacobiator;
pub use axioms::{check_axioms, AxiomReport};

use crate::error::{Error, Result};
use crate::ratlin::{format_scalar, unit, zero_vec, Matrix, Scalar, Subspace};

/// The Z/2 degree of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Parity> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Parity of an integer degree.
    pub fn of_degree(d: i64) -> Parity {
        if d.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// `(-1)^{|a||b|}`
pub fn koszul_sign(a: Parity, b: Parity) -> Scalar {
    if a.is_odd() && b.is_odd() {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// A linear combination of basis labels, as written in algebra files.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb(pub Vec<(Scalar, String)>);

impl LinComb {
    pub fn label(label: &str) -> Self {
        LinComb(vec![(Scalar::one(), label.to_string())])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisDecl {
    pub label: String,
    pub parity: Parity,
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketDecl {
    pub left: String,
    pub right: String,
    pub value: LinComb,
}

/// A parsed algebra definition, before validation.
///
/// Brackets are listed only for pairs `(e_i, e_j)` with `i <= j` in basis
/// order; the other half of the table follows from supersymmetry. A missing
/// `alpha` means the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub basis: Vec<BasisDecl>,
    pub brackets: Vec<BracketDecl>,
    pub alpha: Option<Vec<(String, LinComb)>>,
}

/// A finite-dimensional hom-Lie superalgebra over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLieSuperalgebra {
    name: String,
    names: Vec<String>,
    parity: Vec<Parity>,
    zdegree: Option<Vec<i64>>,
    structure: Vec<Scalar>,
    alpha: Matrix,
}

impl HomLieSuperalgebra {
    /// Build from brackets on pairs `i <= j`; the `j > i` half is filled in
    /// by supersymmetry. Unlisted pairs bracket to zero.
    pub fn from_brackets(
        name: impl Into<String>,
        names: Vec<String>,
        parity: Vec<Parity>,
        zdegree: Option<Vec<i64>>,
        brackets: &[(usize, usize, Vec<Scalar>)],
        alpha: Matrix,
    ) -> Result<Self> {
        let n = names.len();
        let mut structure = zero_vec(n * n * n);
        let mut seen = vec![false; n * n];
        for (i, j, value) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: i.max(j) + 1,
                });
            }
            if i > j {
                return Err(Error::BracketOrder {
                    left: names[i].clone(),
                    right: names[j].clone(),
                });
            }
            if std::mem::replace(&mut seen[i * n + j], true) {
                return Err(Error::DuplicateBracket {
                    left: names[i].clone(),
                    right: names[j].clone(),
                });
            }
            if value.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: value.len(),
                });
            }
            let sign = -koszul_sign(parity[i], parity[j]);
            for (k, c) in value.iter().enumerate() {
                structure[(i * n + j) * n + k] = c.clone();
                structure[(j * n + i) * n + k] = &sign * c;
            }
            if i == j && parity[i] == Parity::Even && value.iter().any(|c| !c.is_zero()) {
                return Err(Error::EvenSelfBracket(names[i].clone()));
            }
        }
        Self::from_structure(name, names, parity, zdegree, structure, alpha)
    }

    /// Build from a full structure tensor, flattened as `(i * n + j) * n + k`.
    pub fn from_structure(
        name: impl Into<String>,
        names: Vec<String>,
        parity: Vec<Parity>,
        zdegree: Option<Vec<i64>>,
        structure: Vec<Scalar>,
        alpha: Matrix,
    ) -> Result<Self> {
        let n = names.len();
        let mut seen = HashMap::new();
        for (i, label) in names.iter().enumerate() {
            if seen.insert(label.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        for (len, what) in [(parity.len(), n), (structure.len(), n * n * n)] {
            if len != what {
                return Err(Error::DimensionMismatch {
                    expected: what,
                    found: len,
                });
            }
        }
        if let Some(d) = &zdegree {
            if d.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: d.len(),
                });
            }
        }
        if alpha.rows() != n || alpha.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: alpha.rows().max(alpha.cols()),
            });
        }
        let g = HomLieSuperalgebra {
            name: name.into(),
            names,
            parity,
            zdegree,
            structure,
            alpha,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let sign = -koszul_sign(self.parity[i], self.parity[j]);
                let target = self.parity[i] + self.parity[j];
                for k in 0..n {
                    let c = self.structure_constant(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    if self.parity[k] != target {
                        return Err(Error::InhomogeneousBracket {
                            left: self.names[i].clone(),
                            right: self.names[j].clone(),
                            target: self.names[k].clone(),
                        });
                    }
                    if &(&sign * c) != self.structure_constant(j, i, k) {
                        return Err(Error::NotSupersymmetric(i, j));
                    }
                }
                if i == j && self.parity[i] == Parity::Even && !crate::ratlin::is_zero_vec(&self.bracket_basis(i, i)) {
                    return Err(Error::EvenSelfBracket(self.names[i].clone()));
                }
            }
        }
        for j in 0..n {
            for i in 0..n {
                if !self.alpha.get(i, j).is_zero() && self.parity[i] != self.parity[j] {
                    return Err(Error::OddTwist {
                        source_label: self.names[j].clone(),
                        target: self.names[i].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn zdegrees(&self) -> Option<&[i64]> {
        self.zdegree.as_deref()
    }

    pub fn degree(&self, i: usize) -> Option<i64> {
        self.zdegree.as_ref().map(|d| d[i])
    }

    pub fn is_graded(&self) -> bool {
        self.zdegree.is_some()
    }

    /// The twist map; column `j` is `alpha(e_j)`.
    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim();
        &self.structure[(i * n + j) * n + k]
    }

    /// Flattened structure tensor.
    pub fn structure(&self) -> &[Scalar] {
        &self.structure
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit(self.dim(), i)
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let n = self.dim();
        self.structure[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure tensor.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coeff = xi * yj;
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.structure[base + k];
                    if !c.is_zero() {
                        *o += &coeff * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y -> [x, y]`.
    pub fn left_multiplication(&self, x: &[Scalar]) -> Result<Matrix> {
        self.check_len(x)?;
        let n = self.dim();
        let columns: Vec<_> = (0..n).map(|j| self.bracket_unchecked(x, &unit(n, j))).collect();
        Matrix::from_columns(n, &columns)
    }

    /// Matrix of `y -> [e_i, y]`.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.structure_constant(i, j, k).clone())
    }

    /// Matrix of `x -> [x, e_j]`.
    pub fn right_multiplication(&self, j: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, i| self.structure_constant(i, j, k).clone())
    }

    pub fn apply_alpha(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.alpha.apply(v)
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(Zero::is_zero)
    }

    /// Span of the basis elements of parity `p`.
    pub fn parity_part(&self, p: Parity) -> Subspace {
        Subspace::coordinate(self.dim(), (0..self.dim()).filter(|&i| self.parity[i] == p))
    }

    /// Indices of basis elements in Z-degree `d` (empty if ungraded).
    pub fn degree_indices(&self, d: i64) -> Vec<usize> {
        match &self.zdegree {
            Some(deg) => (0..self.dim()).filter(|&i| deg[i] == d).collect(),
            None => Vec::new(),
        }
    }

    /// Sorted distinct degrees present in the basis.
    pub fn degrees_present(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.zdegree.clone().unwrap_or_default();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn with_alpha(&self, alpha: Matrix) -> Result<Self> {
        Self::from_structure(
            self.name.clone(),
            self.names.clone(),
            self.parity.clone(),
            self.zdegree.clone(),
            self.structure.clone(),
            alpha,
        )
    }

    pub fn with_grading(&self, zdegree: Option<Vec<i64>>) -> Result<Self> {
        Self::from_structure(
            self.name.clone(),
            self.names.clone(),
            self.parity.clone(),
            zdegree,
            self.structure.clone(),
            self.alpha.clone(),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same algebra with the basis reordered: new basis element `k` is old
    /// basis element `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.dim();
        let mut check = order.to_vec();
        check.sort_unstable();
        if check != (0..n).collect::<Vec<_>>() {
            return Err(Error::Invalid("not a permutation of the basis".into()));
        }
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let mut structure = zero_vec(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    structure[(pos[i] * n + pos[j]) * n + pos[k]] = self.structure_constant(i, j, k).clone();
                }
            }
        }
        let alpha = Matrix::from_fn(n, n, |r, c| self.alpha.get(order[r], order[c]).clone());
        Self::from_structure(
            self.name.clone(),
            order.iter().map(|&o| self.names[o].clone()).collect(),
            order.iter().map(|&o| self.parity[o]).collect(),
            self.zdegree.as_ref().map(|d| order.iter().map(|&o| d[o]).collect()),
            structure,
            alpha,
        )
    }

    /// Render a coordinate vector as `e1 + 1/2*e2 - e3`.
    pub fn format_vector(&self, v: &[Scalar]) -> String {
        format_combination(&self.names, v)
    }
}

/// Render `v` as a linear combination of `names`; `"0"` for the zero vector.
pub fn format_combination(names: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let negative = c < &Scalar::zero();
        let mag = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format_scalar(&mag));
            out.push('*');
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn resolve(index: &HashMap<&str, usize>, n: usize, comb: &LinComb) -> Result<Vec<Scalar>> {
    let mut v = zero_vec(n);
    for (c, label) in &comb.0 {
        let &i = index
            .get(label.as_str())
            .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
        v[i] += c;
    }
    Ok(v)
}

/// Validate a parsed definition and build the algebra.
pub fn load_algebra(spec: &AlgebraSpec) -> Result<HomLieSuperalgebra> {
    let n = spec.basis.len();
    let mut index = HashMap::new();
    for (i, b) in spec.basis.iter().enumerate() {
        if index.insert(b.label.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(b.label.clone()));
        }
    }
    let graded = spec.basis.iter().filter(|b| b.degree.is_some()).count();
    if graded != 0 && graded != n {
        return Err(Error::Invalid(
            "either every basis element has a degree or none does".into(),
        ));
    }
    let zdegree = (graded == n && n > 0).then(|| spec.basis.iter().map(|b| b.degree.unwrap()).collect());

    let lookup = |label: &str| {
        index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    };
    let mut brackets = Vec::with_capacity(spec.brackets.len());
    for b in &spec.brackets {
        let (i, j) = (lookup(&b.left)?, lookup(&b.right)?);
        brackets.push((i, j, resolve(&index, n, &b.value)?));
    }

    let alpha = match &spec.alpha {
        None => Matrix::identity(n),
        Some(rows) => {
            let mut columns: Vec<Option<Vec<Scalar>>> = vec![None; n];
            for (label, comb) in rows {
                let i = lookup(label)?;
                if columns[i].replace(resolve(&index, n, comb)?).is_some() {
                    return Err(Error::Invalid(format!("alpha({label}) given twice")));
                }
            }
            let columns = columns
                .into_iter()
                .enumerate()
                .map(|(i, c)| c.ok_or_else(|| Error::Invalid(format!("alpha({}) is missing", spec.basis[i].label))))
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_columns(n, &columns)?
        }
    };

    HomLieSuperalgebra::from_brackets(
        spec.name.clone(),
        spec.basis.iter().map(|b| b.label.clone()).collect(),
        spec.basis.iter().map(|b| b.parity).collect(),
        zdegree,
        &brackets,
        alpha,
    )
}

/// Inverse of [`load_algebra`]: brackets on pairs `i <= j` only, zero
/// brackets omitted, alpha always listed in full.
pub fn to_spec(g: &HomLieSuperalgebra) -> AlgebraSpec {
    let n = g.dim();
    let comb = |v: &[Scalar]| {
        LinComb(
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c.clone(), g.names[k].clone()))
                .collect(),
        )
    };
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i..n {
            let v = g.bracket_basis(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                brackets.push(BracketDecl {
                    left: g.names[i].clone(),
                    right: g.names[j].clone(),
                    value: comb(&v),
                });
            }
        }
    }
    AlgebraSpec {
        name: g.name.clone(),
        basis: (0..n)
            .map(|i| BasisDecl {
                label: g.names[i].clone(),
                parity: g.parity[i],
                degree: g.degree(i),
            })
            .collect(),
        brackets,
        alpha: Some((0..n).map(|j| (g.names[j].clone(), comb(&g.alpha.column(j)))).collect()),
    }
}
