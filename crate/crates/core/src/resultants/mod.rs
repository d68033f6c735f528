//! Resultants and the E-characteristic polynomial.

pub mod echar;
pub mod macaulay;
pub mod poly;

pub use echar::{echar_fit, echar_fit_tensor, echar_poly, echar_value, EcharFit, ECHAR_DEGREE};
pub use macaulay::{
    ax2_system, build_macaulay, eigen_system, resultant_via_macaulay, HomQuadratic, MacaulaySystem,
};
pub use poly::{poly_real_roots, RealRoot, UnivariatePoly};

use crate::octupolar::OctupolarParams;

/// `Res(Ax²)` for the reduced tensor, as an explicit polynomial in the
/// parameters. It vanishes on the plane `alpha2 = 0`.
pub fn resultant_closed_form(p: &OctupolarParams) -> f64 {
    let OctupolarParams {
        alpha0: a0,
        beta3: b3,
        alpha2: a2,
    } = *p;
    let a0_2 = a0 * a0;
    let a2_2 = a2 * a2;
    let b3_2 = b3 * b3;
    16.0 * a2_2
        * (48.0 * a0_2.powi(4) * b3
            + 4.0 * a0_2.powi(3) * (a2_2 + b3 * (32.0 * b3_2 + 24.0 * b3 - 9.0))
            + 3.0
                * a0_2.powi(2)
                * (a2_2 * (52.0 * b3_2 + 28.0 * b3 - 1.0)
                    + 4.0 * b3_2 * (8.0 * b3.powi(3) + 8.0 * b3_2 - 9.0 * b3 - 9.0))
            + 6.0
                * a0_2
                * (a2_2 * a2_2 * (4.0 * b3 + 1.0)
                    - a2_2 * b3 * (14.0 * b3.powi(3) + 36.0 * b3_2 + 35.0 * b3 + 10.0)
                    - 2.0 * b3.powi(3) * (b3 + 1.0).powi(2) * (8.0 * b3 + 9.0))
            + (a2_2 - 4.0 * (b3 + 1.0).powi(3)) * (a2_2 - b3_2 * (2.0 * b3 + 3.0)).powi(2))
}

/// The `λ¹²` coefficient of `φ(λ) / (λ² − 1)`.
pub fn c12_closed_form(p: &OctupolarParams) -> f64 {
    let OctupolarParams {
        alpha0: a0,
        beta3: b3,
        alpha2: a2,
    } = *p;
    let a0_2 = a0 * a0;
    let a2_2 = a2 * a2;
    let b = |k: i32| b3.powi(k);
    let t10 = 82944.0 * a0_2.powi(5);
    let t8 = -11520.0 * a0_2.powi(4) * (a2_2 - 36.0 * b(2) - 36.0 * b3 + 1.0);
    let t6 = -320.0
        * a0_2.powi(3)
        * (2.0 * a2_2 * (72.0 * b(2) - 1053.0 * b3 - 577.0) + 73.0 * a2_2.powi(2)
            - 2592.0 * b(4)
            - 5184.0 * b(3)
            - 2448.0 * b(2)
            + 144.0 * b3
            + 73.0);
    let t4 = -240.0
        * a0_2.powi(2)
        * (a2_2.powi(3) - a2_2.powi(2) * (1583.0 * b(2) + 1208.0 * b3 + 922.0)
            + a2_2 * (288.0 * b(4) - 4424.0 * b(3) - 7328.0 * b(2) - 116.0 * b3 + 1203.0)
            - (2.0 * b3 + 1.0).powi(2)
                * (864.0 * b(4) + 1728.0 * b(3) + 576.0 * b(2) - 288.0 * b3 - 1.0));
    let t2 = 60.0
        * a0_2
        * (32.0 * a2_2.powi(4) + a2_2.powi(3) * (-8.0 * b(2) + 1992.0 * b3 + 678.0)
            - a2_2.powi(2)
                * (6168.0 * b(4) + 13336.0 * b(3) + 5042.0 * b(2) - 4376.0 * b3 + 1083.0)
            - 2.0
                * a2_2
                * (384.0 * b(6) - 848.0 * b(5) - 4080.0 * b(4) - 80.0 * b(3)
                    + 4580.0 * b(2)
                    + 437.0 * b3
                    - 714.0)
            + 8.0
                * (2.0 * b3 + 1.0).powi(4)
                * (54.0 * b(4) + 108.0 * b(3) + 21.0 * b(2) - 33.0 * b3 + 4.0));
    let t0 = (a2_2 + (3.0 * b3 + 4.0).powi(2))
        * (16.0 * a2_2.powi(2)
            + a2_2 * (-12.0 * b(2) - 132.0 * b3 + 37.0)
            + 4.0 * (2.0 * b3 + 1.0).powi(3) * (3.0 * b3 - 1.0))
            .powi(2);
    t10 + t8 + t6 + t4 + t2 + t0
}
