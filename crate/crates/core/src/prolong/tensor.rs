use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::LocalAlgebra;
use crate::error::{Error, Result};
use crate::ratlin::{Matrix, Scalar};
use crate::superalgebra::{koszul_sign, Parity};

/// Sign rule used when an operator moves past a tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// No signs: the formulas exactly as written for the even case.
    Verbatim,
    /// `(-1)^{|b||a_1|}` whenever an operator of parity `|b|` passes `a_1`.
    Koszul,
}

impl Convention {
    fn sign(self, a: Parity, b: Parity) -> Scalar {
        match self {
            Convention::Verbatim => Scalar::one(),
            Convention::Koszul => koszul_sign(a, b),
        }
    }
}

/// `T_0 ⊕ T_1 ⊕ ... ⊕ T_cap` with `T_i = g_{-1}^{⊗i}`. Words are ordered by
/// length, then lexicographically with the first factor most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorWindow {
    cap: usize,
    letters: Vec<Parity>,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    offsets: Vec<usize>,
}

impl TensorWindow {
    pub fn new(local: &LocalAlgebra, cap: usize) -> Result<Self> {
        if cap < 1 {
            return Err(Error::WindowTooSmall(format!("tensor cap {cap} is below 1")));
        }
        let letters: Vec<Parity> = local.minus().iter().map(|&i| local.algebra().parity(i)).collect();
        let m = letters.len();
        let mut words = vec![Vec::new()];
        let mut offsets = vec![0];
        let mut layer = vec![Vec::new()];
        for _ in 0..cap {
            offsets.push(words.len());
            layer = layer
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..m).map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
            words.extend(layer.iter().cloned());
        }
        offsets.push(words.len());
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(TensorWindow {
            cap,
            letters,
            words,
            index,
            offsets,
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Total dimension `sum_i m^i`.
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// Dimension of `T_0 ⊕ ... ⊕ T_k` (clamped to the cap).
    pub fn dim_through(&self, k: usize) -> usize {
        self.offsets[k.min(self.cap) + 1]
    }

    /// Index range of `T_k`.
    pub fn degree_range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn index_of(&self, word: &[usize]) -> Option<usize> {
        self.index.get(word).copied()
    }

    fn word_parity(&self, word: &[usize]) -> Parity {
        word.iter().fold(Parity::Even, |p, &a| p + self.letters[a])
    }

    /// Parity of each window basis vector.
    pub fn parities(&self) -> Vec<Parity> {
        self.words.iter().map(|w| self.word_parity(w)).collect()
    }

    /// Left multiplication by the `a`-th basis element of `g_{-1}`; the top
    /// tensor degree is truncated away.
    pub(crate) fn left_multiplication(&self, a: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (col, w) in self.words.iter().enumerate() {
            if w.len() < self.cap {
                let mut v = vec![a];
                v.extend_from_slice(w);
                m.set(self.index[&v], col, Scalar::one());
            }
        }
        m
    }

    /// Derivation extending `a -> sum_b c[a][b] b` on `g_{-1}` (columns of
    /// `action` index the source letter), with sign rule for an operator of
    /// parity `p`.
    pub(crate) fn derivation(&self, action: &Matrix, p: Parity, convention: Convention) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for (col, w) in self.words.iter().enumerate() {
            let mut sign = Scalar::one();
            for t in 0..w.len() {
                for b in 0..self.letters.len() {
                    let c = action.get(b, w[t]);
                    if c.is_zero() {
                        continue;
                    }
                    let mut v = w.clone();
                    v[t] = b;
                    *out.entry_mut(self.index[&v], col) += &sign * c;
                }
                sign *= convention.sign(p, self.letters[w[t]]);
            }
        }
        out
    }

    /// Operator `phi(x)` for `x` in `g_1` given by the recursion
    /// `phi(x)(a_1 ⊗ a_2) = phi([x, alpha a_1]) a_2 ± alpha(a_1) ⊗ phi(x) a_2`.
    ///
    /// `bracket_op(a)` returns `phi([x, alpha(e_a)])` for the `a`-th letter and
    /// `alpha_minus` is `alpha` restricted to `g_{-1}`.
    pub(crate) fn raising_recursion(
        &self,
        p: Parity,
        convention: Convention,
        bracket_op: impl Fn(usize) -> Matrix,
        alpha_minus: &Matrix,
    ) -> Matrix {
        let n = self.dim();
        let m = self.letters.len();
        let mut out = Matrix::zeros(n, n);
        let bracket_ops: Vec<Matrix> = (0..m).map(&bracket_op).collect();
        for col in 0..n {
            let w = &self.words[col];
            let Some((&a1, rest)) = w.split_first() else {
                continue;
            };
            let rest_index = self.index[rest];
            let mut column = bracket_ops[a1].column(rest_index);
            let tail = out.column(rest_index);
            let sign = convention.sign(p, self.letters[a1]);
            for b in 0..m {
                let c = alpha_minus.get(b, a1);
                if c.is_zero() {
                    continue;
                }
                let coeff = &sign * c;
                for (r, t) in tail.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    let mut v = vec![b];
                    v.extend_from_slice(&self.words[r]);
                    if let Some(&i) = self.index.get(&v) {
                        column[i] += &coeff * t;
                    }
                }
            }
            for (r, value) in column.into_iter().enumerate() {
                out.set(r, col, value);
            }
        }
        out
    }
}
