//! Small named algebras used by the tests, the acceptance suite and the
//! guide. Each one is stored as an algebra file under `data/`.

use crate::format::parse_algebra;
use crate::prolong::LocalAlgebra;
use crate::superalgebra::HomLieSuperalgebra;

macro_rules! algebras {
    ($($(#[$doc:meta])* $name:ident => $file:literal;)*) => {
        $(
            $(#[$doc])*
            pub fn $name() -> HomLieSuperalgebra {
                parse_algebra(include_str!(concat!("../data/", $file)))
                    .expect(concat!("catalog file ", $file, " is valid"))
            }
        )*
    };
}

algebras! {
    /// Two even and one odd basis element, all brackets zero.
    abelian => "abelian.hls";
    /// Graded abelian algebra with a non-semisimple twist.
    abelian_graded => "abelian_graded.hls";
    /// `e1, e2` even, `e3` odd, `[e1, e2] = e1`, identity twist.
    affine => "affine.hls";
    /// The affine algebra with `alpha(e3) = 0`.
    affine_twisted => "affine_twisted.hls";
    /// The affine algebra with `alpha(e2) = e1 + e2`, `alpha(e3) = 0`.
    affine_shear => "affine_shear.hls";
    /// `sl(2)` on the basis `h, e, f`, identity twist.
    sl2 => "sl2.hls";
    /// `sl(2)` with degrees `h:0, e:1, f:-1`.
    sl2_graded => "sl2_graded.hls";
    /// `sl(2)` twisted by the automorphism `diag(1, 2, 1/2)`.
    sl2_yau => "sl2_yau.hls";
    /// The three-dimensional Heisenberg Lie algebra.
    heisenberg => "heisenberg.hls";
    /// `x, y` odd of degrees `-1, 1`, `z` even of degree 0, `[x, y] = z`.
    heisenberg_super => "heisenberg_super.hls";
    /// `osp(1|2)`.
    osp12 => "osp12.hls";
    /// `osp(1|2)` with its consistent grading of depth 2.
    osp12_graded => "osp12_graded.hls";
    /// `gl(1|1)`.
    gl11 => "gl11.hls";
    /// `gl(1|1)` twisted by the automorphism `b -> 2b, c -> c/2`.
    gl11_yau => "gl11_yau.hls";
    /// Two graded copies of `sl(2)`.
    sl2_sum_sl2 => "sl2_sum_sl2.hls";
    /// `sl(2)` plus a central element that the twist kills.
    sl2_center => "sl2_center.hls";
}

/// Every catalog algebra. All of them are multiplicative hom-Lie
/// superalgebras of dimension at most 6.
pub fn corpus() -> Vec<HomLieSuperalgebra> {
    vec![
        abelian(),
        abelian_graded(),
        affine(),
        affine_twisted(),
        affine_shear(),
        sl2(),
        sl2_graded(),
        sl2_yau(),
        heisenberg(),
        heisenberg_super(),
        osp12(),
        osp12_graded(),
        gl11(),
        gl11_yau(),
        sl2_sum_sl2(),
        sl2_center(),
    ]
}

fn local(text: &str) -> LocalAlgebra {
    LocalAlgebra::new(parse_algebra(text).expect("catalog file is valid")).expect("catalog local algebra is valid")
}

/// Local part of `sl(2)`: `f | h | e`.
pub fn sl2_local() -> LocalAlgebra {
    local(include_str!("../data/sl2_local.hls"))
}

/// Local part of `osp(1|2)`: `y | h | x`, both ends odd.
pub fn osp12_local() -> LocalAlgebra {
    local(include_str!("../data/osp12_local.hls"))
}

/// Heisenberg superalgebra read as a local algebra; `g_0` acts trivially.
pub fn heisenberg_local() -> LocalAlgebra {
    local(include_str!("../data/heisenberg_local.hls"))
}

/// One-dimensional pieces, all brackets zero.
pub fn zero_local() -> LocalAlgebra {
    local(include_str!("../data/zero_local.hls"))
}
