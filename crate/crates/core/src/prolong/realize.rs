use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{phi_operators, select_convention, super_commutator, verify_operator_relations};
use super::{Convention, LocalAlgebra, OperatorImage, PhiRelationReport, TensorWindow};
use crate::check::{Check, Witness};
use crate::error::{Error, Result};
use crate::ratlin::{int, solve, zero_vec, Matrix, Scalar, Solution, Subspace};
use crate::repth::{largest_invariant_in, Echelon};
use crate::structure::quotient;
use crate::superalgebra::{HomLieSuperalgebra, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recovery {
    /// `phi` is injective on the local part.
    Faithful,
    /// `phi` has a kernel on the local part; the realization is that of
    /// the quotient local algebra.
    QuotientRealized,
}

/// A truncated minimal Z-graded realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prolongation {
    /// Degrees `-d_max ..= d_max`, basis ordered by degree.
    pub algebra: HomLieSuperalgebra,
    pub recovery: Recovery,
    pub relations: PhiRelationReport,
    /// Dimension of each degree piece in `-d_max ..= d_max`.
    pub dims: BTreeMap<i64, usize>,
    /// Whether both pieces of degree `±(d_max + 1)` vanish, so that the
    /// realization is complete; `None` when the window cannot decide.
    pub closed: Option<bool>,
    /// Dimension of the largest graded ideal inside degrees `|k| >= 2` that
    /// was factored out of the operator algebra.
    pub ideal_dim: usize,
    /// Local brackets reproduced exactly; `None` unless `Faithful`.
    pub local_part: Option<Check>,
}

/// One degree piece of the operator algebra.
struct Piece {
    degree: i64,
    ops: Vec<Matrix>,
    parity: Vec<Parity>,
    labels: Vec<String>,
    /// Induced twist in the basis `ops`.
    alpha: Matrix,
}

struct Realizer<'a> {
    window: &'a TensorWindow,
}

impl Realizer<'_> {
    /// Columns `T_0 .. T_w` determine an operator of the given degree.
    fn key(&self, m: &Matrix, degree: i64) -> Vec<Scalar> {
        let w = if degree >= 0 { degree as usize + 1 } else { 0 };
        let cols = self.window.dim_through(w);
        m.submatrix(0..m.rows(), 0..cols).entries().to_vec()
    }

    /// Greedy basis of the span of `candidates`, keeping their order.
    fn basis<T>(&self, candidates: Vec<(Matrix, Parity, T)>, degree: i64) -> Vec<(Matrix, Parity, T)> {
        let mut echelon: Option<Echelon> = None;
        let mut out = Vec::new();
        for (m, p, extra) in candidates {
            let key = self.key(&m, degree);
            let e = echelon.get_or_insert_with(|| Echelon::new(key.len()));
            if e.insert(&key) {
                out.push((m, p, extra));
            }
        }
        out
    }

    fn coordinates(&self, piece: &Piece, m: &Matrix) -> Result<Vec<Scalar>> {
        let key = self.key(m, piece.degree);
        if piece.ops.is_empty() {
            return if key.iter().all(num_traits::Zero::is_zero) {
                Ok(Vec::new())
            } else {
                Err(Error::InconsistentReexpression { degree: piece.degree })
            };
        }
        let columns: Vec<Vec<Scalar>> = piece.ops.iter().map(|b| self.key(b, piece.degree)).collect();
        let a = Matrix::from_columns(key.len(), &columns)?;
        match solve(&a, &key)? {
            Solution::Unique(x) => Ok(x),
            Solution::Affine { particular, .. } => Ok(particular),
            Solution::Inconsistent => Err(Error::InconsistentReexpression { degree: piece.degree }),
        }
    }

    fn operator(&self, piece: &Piece, coords: &[Scalar]) -> Matrix {
        let n = self.window.dim();
        coords
            .iter()
            .zip(&piece.ops)
            .fold(Matrix::zeros(n, n), |acc, (c, m)| &acc + &m.scale(c))
    }

    /// Solve `M x_s = y_s` for the twist on a piece, given operator pairs
    /// `(X, alpha_op(X))` spanning it.
    fn twist(&self, piece: &Piece, pairs: &[(Matrix, Matrix)]) -> Result<Matrix> {
        let d = piece.ops.len();
        if d == 0 {
            return Ok(Matrix::zeros(0, 0));
        }
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (x, y) in pairs {
            xs.push(self.coordinates(piece, x)?);
            ys.push(self.coordinates(piece, y)?);
        }
        let xt = Matrix::from_rows(d, xs)?;
        let mut rows = Vec::with_capacity(d);
        for r in 0..d {
            let rhs: Vec<Scalar> = ys.iter().map(|y| y[r].clone()).collect();
            match solve(&xt, &rhs)? {
                Solution::Inconsistent => {
                    return Err(Error::precondition(
                        format!("the induced twist is not well defined in degree {}", piece.degree),
                        None,
                    ))
                }
                s => rows.push(s.any().expect("consistent").to_vec()),
            }
        }
        Matrix::from_rows(d, rows)
    }

    fn local_piece(
        &self,
        local: &LocalAlgebra,
        image: &OperatorImage,
        indices: &[usize],
        degree: i64,
    ) -> Result<Piece> {
        let g = local.algebra();
        let candidates = indices
            .iter()
            .map(|&i| (image.ops[i].clone(), g.parity(i), g.label(i).to_string()))
            .collect();
        let chosen = self.basis(candidates, degree);
        let mut piece = Piece {
            degree,
            ops: chosen.iter().map(|(m, _, _)| m.clone()).collect(),
            parity: chosen.iter().map(|(_, p, _)| *p).collect(),
            labels: chosen.into_iter().map(|(_, _, l)| l).collect(),
            alpha: Matrix::zeros(0, 0),
        };
        let pairs: Vec<(Matrix, Matrix)> = indices
            .iter()
            .map(|&i| (image.ops[i].clone(), image.phi(&g.alpha().column(i))))
            .collect();
        piece.alpha = self.twist(&piece, &pairs)?;
        Ok(piece)
    }

    /// `[first, previous]` for the next degree outward.
    fn next_piece(&self, first: &Piece, previous: &Piece, degree: i64) -> Result<Piece> {
        let mut candidates = Vec::new();
        let mut pairs = Vec::new();
        for (a, pa) in first.ops.iter().zip(&first.parity) {
            for (b, pb) in previous.ops.iter().zip(&previous.parity) {
                candidates.push((super_commutator(a, *pa, b, *pb), *pa + *pb, ()));
            }
        }
        for (i, (a, pa)) in first.ops.iter().zip(&first.parity).enumerate() {
            let aa = self.operator(first, &first.alpha.column(i));
            for (j, (b, pb)) in previous.ops.iter().zip(&previous.parity).enumerate() {
                let ab = self.operator(previous, &previous.alpha.column(j));
                pairs.push((super_commutator(a, *pa, b, *pb), super_commutator(&aa, *pa, &ab, *pb)));
            }
        }
        let chosen = self.basis(candidates, degree);
        let tag = if degree < 0 { "m" } else { "p" };
        let mut piece = Piece {
            degree,
            labels: (0..chosen.len())
                .map(|k| format!("g{tag}{}_{k}", degree.abs()))
                .collect(),
            parity: chosen.iter().map(|(_, p, _)| *p).collect(),
            ops: chosen.into_iter().map(|(m, _, _)| m).collect(),
            alpha: Matrix::zeros(0, 0),
        };
        piece.alpha = self.twist(&piece, &pairs)?;
        Ok(piece)
    }
}

fn projector(n: usize, keep: impl Fn(usize) -> bool) -> Matrix {
    Matrix::from_fn(n, n, |r, c| if r == c && keep(r) { int(1) } else { int(0) })
}

/// Realize the minimal Z-graded hom-Lie superalgebra with the given local
/// part, in degrees `-d_max ..= d_max`.
///
/// The pieces `G_{-1}, G_0, G_1` are the `phi`-images of the local pieces;
/// further pieces are spanned by super-commutators with `G_1` or `G_{-1}`.
/// Operators of degree `k >= 0` are compared on `T_0 .. T_{k+1}` and
/// negative ones on `T_0`, which is where the window computes them exactly
/// when `cap >= d_max + 1`. The largest graded twist-stable ideal inside
/// degrees `|k| >= 2` is then factored out.
///
/// `convention: None` picks the first sign convention under which the
/// operator relations hold.
pub fn prolong_minimal(
    local: &LocalAlgebra,
    d_max: usize,
    window: &TensorWindow,
    convention: Option<Convention>,
) -> Result<Prolongation> {
    if d_max < 1 {
        return Err(Error::Invalid("the maximal degree must be at least 1".into()));
    }
    if window.cap() < d_max + 1 {
        return Err(Error::WindowTooSmall(format!(
            "degree {d_max} needs tensor cap >= {}, got {}",
            d_max + 1,
            window.cap()
        )));
    }
    let (image, relations) = match convention {
        None => select_convention(local, window)?,
        Some(c) => {
            let image = phi_operators(local, window, c)?;
            let report = verify_operator_relations(local, &image)?;
            if !report.passed() {
                let witness = [&report.minus_zero, &report.plus_minus, &report.zero_plus]
                    .into_iter()
                    .find_map(|c| c.witness().cloned());
                return Err(Error::precondition("the operator relations fail", witness));
            }
            (image, report)
        }
    };

    let r = Realizer { window };
    let mut pieces: BTreeMap<i64, Piece> = BTreeMap::new();
    pieces.insert(-1, r.local_piece(local, &image, local.minus(), -1)?);
    pieces.insert(0, r.local_piece(local, &image, local.zero(), 0)?);
    pieces.insert(1, r.local_piece(local, &image, local.plus(), 1)?);
    let recovery = if pieces[&-1].ops.len() == local.minus().len()
        && pieces[&0].ops.len() == local.zero().len()
        && pieces[&1].ops.len() == local.plus().len()
    {
        Recovery::Faithful
    } else {
        Recovery::QuotientRealized
    };

    let d = d_max as i64;
    for k in 2..=d {
        let up = r.next_piece(&pieces[&1], &pieces[&(k - 1)], k)?;
        let down = r.next_piece(&pieces[&-1], &pieces[&(1 - k)], -k)?;
        pieces.insert(k, up);
        pieces.insert(-k, down);
    }
    let below = r.next_piece(&pieces[&-1], &pieces[&-d], -d - 1)?.ops.is_empty();
    let above = (window.cap() >= d_max + 2)
        .then(|| r.next_piece(&pieces[&1], &pieces[&d], d + 1))
        .transpose()?
        .map(|p| p.ops.is_empty());
    let closed = match (below, above) {
        (false, _) | (_, Some(false)) => Some(false),
        (true, Some(true)) => Some(true),
        (true, None) => None,
    };

    let operator_algebra = assemble(local, &r, &pieces, d)?;
    let n = operator_algebra.dim();
    let degrees = operator_algebra.zdegrees().expect("graded").to_vec();
    let outer = Subspace::coordinate(n, (0..n).filter(|&i| degrees[i].abs() >= 2));
    let mut ops: Vec<Matrix> = (0..n).map(|i| operator_algebra.ad(i)).collect();
    ops.push(operator_algebra.alpha().clone());
    ops.push(projector(n, |i| operator_algebra.parity(i) == Parity::Even));
    for k in -d..=d {
        ops.push(projector(n, |i| degrees[i] == k));
    }
    let ideal = largest_invariant_in(&ops, &outer)?;
    let algebra = if ideal.is_zero() {
        operator_algebra
    } else {
        quotient(&operator_algebra, &ideal)?.with_name(operator_algebra.name())
    };

    let dims = (-d..=d).map(|k| (k, algebra.degree_indices(k).len())).collect();
    let local_part = (recovery == Recovery::Faithful).then(|| local_part_check(local, &algebra));
    Ok(Prolongation {
        algebra,
        recovery,
        relations,
        dims,
        closed,
        ideal_dim: ideal.dim(),
        local_part,
    })
}

fn assemble(
    local: &LocalAlgebra,
    r: &Realizer<'_>,
    pieces: &BTreeMap<i64, Piece>,
    d: i64,
) -> Result<HomLieSuperalgebra> {
    let mut names = Vec::new();
    let mut parity = Vec::new();
    let mut degree = Vec::new();
    let mut start = BTreeMap::new();
    let mut all_ops = Vec::new();
    for (k, piece) in pieces.range(-d..=d) {
        start.insert(*k, names.len());
        names.extend(piece.labels.iter().cloned());
        parity.extend(piece.parity.iter().copied());
        degree.extend(std::iter::repeat_n(*k, piece.ops.len()));
        all_ops.extend(piece.ops.iter().cloned());
    }
    let n = names.len();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i..n {
            let target = degree[i] + degree[j];
            if target.abs() > d {
                continue;
            }
            let c = super_commutator(&all_ops[i], parity[i], &all_ops[j], parity[j]);
            let coords = r.coordinates(&pieces[&target], &c)?;
            let mut v = zero_vec(n);
            for (t, x) in coords.into_iter().enumerate() {
                v[start[&target] + t] = x;
            }
            brackets.push((i, j, v));
        }
    }
    let blocks: Vec<Matrix> = pieces.range(-d..=d).map(|(_, p)| p.alpha.clone()).collect();
    let alpha = Matrix::block_diagonal(&blocks);
    HomLieSuperalgebra::from_brackets(
        format!("{}_min", local.algebra().name()),
        names,
        parity,
        Some(degree),
        &brackets,
        alpha,
    )
}

/// Compare every defined local bracket with the realized one, matching
/// basis elements by label.
fn local_part_check(local: &LocalAlgebra, realized: &HomLieSuperalgebra) -> Check {
    let g = local.algebra();
    let n = g.dim();
    let map: Vec<usize> = (0..n)
        .map(|i| {
            realized
                .index_of(g.label(i))
                .expect("faithful realization keeps local labels")
        })
        .collect();
    let lift = |v: &[Scalar]| {
        let mut out = zero_vec(realized.dim());
        for (i, c) in v.iter().enumerate() {
            out[map[i]] = c.clone();
        }
        out
    };
    for i in 0..n {
        for j in 0..n {
            if (local.degree(i) + local.degree(j)).abs() > 1 {
                continue;
            }
            let expected = lift(&g.bracket_basis(i, j));
            if realized.bracket_basis(map[i], map[j]) != expected {
                return Check::Fail(Witness::Pair(i, j));
            }
        }
    }
    let alpha_ok = (0..n).all(|j| realized.alpha().column(map[j]) == lift(&g.alpha().column(j)));
    if alpha_ok {
        Check::Pass
    } else {
        Check::Fail(Witness::Note("twist on the local part differs".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::superalgebra::check_axioms;

    fn run(local: &LocalAlgebra, d: usize, cap: usize) -> Prolongation {
        let w = TensorWindow::new(local, cap).unwrap();
        prolong_minimal(local, d, &w, None).unwrap()
    }

    fn dims(p: &Prolongation) -> Vec<usize> {
        p.dims.values().copied().collect()
    }

    #[test]
    fn sl2_is_recovered() {
        let p = run(&catalog::sl2_local(), 2, 4);
        assert_eq!(dims(&p), vec![0, 1, 1, 1, 0]);
        assert_eq!(p.recovery, Recovery::Faithful);
        assert_eq!(p.local_part, Some(Check::Pass));
        assert_eq!(p.closed, Some(true));
        assert!(check_axioms(&p.algebra).is_hom_lie_superalgebra());
        assert_eq!(dims(&run(&catalog::sl2_local(), 2, 5)), vec![0, 1, 1, 1, 0]);
    }

    #[test]
    fn zero_local_part_collapses() {
        let p = run(&catalog::zero_local(), 2, 3);
        assert_eq!(p.recovery, Recovery::QuotientRealized);
        assert!(p.algebra.is_abelian());
        assert_eq!(p.algebra.dim(), 1);
        assert_eq!(p.local_part, None);
    }

    #[test]
    fn osp12_from_its_local_part() {
        let p = run(&catalog::osp12_local(), 3, 5);
        assert_eq!(p.relations.convention, Convention::Koszul);
        assert_eq!(dims(&p), vec![0, 1, 1, 1, 1, 1, 0]);
        assert_eq!(p.local_part, Some(Check::Pass));
        assert!(check_axioms(&p.algebra).is_hom_lie_superalgebra());
    }

    #[test]
    fn too_small_window() {
        let l = catalog::sl2_local();
        let w = TensorWindow::new(&l, 2).unwrap();
        assert!(matches!(
            prolong_minimal(&l, 2, &w, None),
            Err(Error::WindowTooSmall(_))
        ));
    }
}
