//! The dome and separatrix surfaces over the parameter disk.
//!
//! Both surfaces are graphs `alpha2 = f(alpha0, beta3)` over the base disk
//! `alpha0² + beta3² + beta3 <= 0`. Below the dome the north-pole value 1 is
//! the global maximum of the potential. The separatrix lies under the dome
//! and separates the state with four maxima (above it) from the state with
//! three maxima (below it).

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::octupolar::{params_to_polar, polar_to_params, OctupolarParams, PolarPoint};
use crate::resultants::{poly_real_roots, UnivariatePoly};
use crate::spectra::{count_maxima, SolverConfig};

/// The three factors of the dome equation `g1³ · g2 · g3 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomeFactors {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
}

pub fn dome_factors(alpha0: f64, beta3: f64, alpha2: f64) -> DomeFactors {
    let a0_2 = alpha0 * alpha0;
    let s = 1.0 + 2.0 * beta3;
    let a2_2 = alpha2 * alpha2;
    DomeFactors {
        g1: 3.0 - 4.0 * a0_2 - 4.0 * beta3 * beta3 - 4.0 * beta3,
        g2: 64.0 * a2_2 * a2_2 - 16.0 * a2_2 * s * (-12.0 * a0_2 + s * s)
            + (4.0 * a0_2 + s * s).powi(3),
        g3: dome_polynomial(alpha0, beta3).eval(alpha2),
    }
}

/// `g3` as a polynomial of degree 6 in `alpha2` (even powers only).
pub fn dome_polynomial(alpha0: f64, beta3: f64) -> UnivariatePoly {
    let (a0, b3) = (alpha0, beta3);
    let a0_2 = a0 * a0;
    let c6 = (2.0 * b3 - 1.0) * ((2.0 * b3 + 5.0).powi(2) - 12.0 * a0_2);
    let c4 = -48.0 * a0_2 * a0_2 * (3.0 * b3.powi(2) - 1.0)
        + 12.0
            * a0_2
            * (8.0 * b3.powi(4) + 24.0 * b3.powi(3) + 26.0 * b3.powi(2) - 4.0 * b3 - 11.0)
        - 16.0 * b3.powi(6)
        - 96.0 * b3.powi(5)
        - 168.0 * b3.powi(4)
        - 72.0 * b3.powi(3)
        - 21.0 * b3.powi(2)
        - 24.0 * b3
        + 40.0;
    let c2 = 8.0
        * (8.0 * a0_2.powi(3)
            + 6.0 * a0_2 * a0_2 * (4.0 * b3.powi(2) - 2.0 * b3 - 5.0)
            + 3.0
                * a0_2
                * (8.0 * b3.powi(4) + 8.0 * b3.powi(3) - 12.0 * b3.powi(2) - 3.0 * b3 + 6.0)
            + 8.0 * b3.powi(6)
            + 36.0 * b3.powi(5)
            + 42.0 * b3.powi(4)
            + 3.0 * b3.powi(3)
            - 9.0 * b3.powi(2)
            - 2.0);
    let c0 = -16.0 * (a0_2 + b3 * b3 + b3).powi(2) * (4.0 * a0_2 + 4.0 * b3 * b3 + 4.0 * b3 - 3.0);
    UnivariatePoly::new(vec![c0, 0.0, c2, 0.0, c4, 0.0, c6])
}

/// `alpha0² + beta3² + beta3`; nonpositive on the base disk.
pub fn base_disk_level(alpha0: f64, beta3: f64) -> f64 {
    alpha0 * alpha0 + beta3 * beta3 + beta3
}

const DISK_SLACK: f64 = 1e-12;
/// Angular distance within which the exact cross-section formulas are used.
const SECTION_TOL: f64 = 1e-6;

/// Angles where the first closed-form family applies (`chi = -pi/2` and its
/// images under the threefold rotation).
const FAMILY_I: [f64; 3] = [-PI / 2.0, PI / 6.0, 5.0 * PI / 6.0];
/// Angles of the second family (`chi = -pi/6` and its images).
const FAMILY_II: [f64; 3] = [-PI / 6.0, PI / 2.0, -5.0 * PI / 6.0];

fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    I,
    II,
}

fn family_of(chi: f64, tol: f64) -> Option<Family> {
    if FAMILY_I.iter().any(|&c| angle_distance(chi, c) <= tol) {
        Some(Family::I)
    } else if FAMILY_II.iter().any(|&c| angle_distance(chi, c) <= tol) {
        Some(Family::II)
    } else {
        None
    }
}

fn family_dome(f: Family, rho: f64) -> f64 {
    match f {
        Family::I => ((1.0 - 2.0 * rho) / (2.0 - rho)).max(0.0).sqrt(),
        Family::II => (1.0 - 2.0 * rho) / 2f64.sqrt() * (1.0 + rho).sqrt(),
    }
}

fn family_sepa(f: Family, rho: f64) -> f64 {
    let k = 2.0 * rho / 3f64.sqrt();
    match f {
        Family::I => k * ((1.0 - 2.0 * rho) / (3.0 - rho)).max(0.0).sqrt(),
        Family::II => k * ((1.0 + 2.0 * rho) / (3.0 + rho)).sqrt(),
    }
}

fn check_disk(alpha0: f64, beta3: f64) -> Result<()> {
    if base_disk_level(alpha0, beta3) > DISK_SLACK {
        return Err(Error::Domain(format!(
            "({alpha0}, {beta3}) lies outside the base disk"
        )));
    }
    Ok(())
}

/// Smallest nonnegative root of `g3(alpha0, beta3, ·)`.
pub fn dome_alpha2(alpha0: f64, beta3: f64) -> Result<f64> {
    check_disk(alpha0, beta3)?;
    let (rho, chi) = params_to_polar(alpha0, beta3);
    if rho <= DISK_SLACK {
        return Ok(FRAC_1_SQRT_2);
    }
    if let Some(f) = family_of(chi, SECTION_TOL) {
        return Ok(family_dome(f, rho.min(0.5)));
    }
    let g3 = dome_polynomial(alpha0, beta3);
    let roots = poly_real_roots(&g3, 0.0, 10.0, 1e-12)?;
    roots
        .first()
        .map(|r| r.value)
        .ok_or_else(|| Error::Numerical(format!("no nonnegative dome root at ({alpha0}, {beta3})")))
}

/// The coefficients `d0, d2, …, d16` of the separatrix polynomial.
pub fn separatrix_coefficients(alpha0: f64, beta3: f64) -> [f64; 9] {
    let (a0, b3) = (alpha0, beta3);
    let d0 = 256.0
        * (a0.powi(2) + b3.powi(2) + b3).powi(4)
        * (4.0 * a0.powi(2) + 4.0 * b3.powi(2) + 4.0 * b3 - 3.0)
        * (4.0 * a0.powi(2) + (2.0 * b3 + 1.0).powi(2)).powi(5);
    let d2 = -256.0
        * (a0.powi(2) + b3.powi(2) + b3).powi(2)
        * (4.0 * a0.powi(2) + (2.0 * b3 + 1.0).powi(2)).powi(3)
        * (64.0 * a0.powi(8)
            + 8.0 * a0.powi(6) * (32.0 * b3.powi(2) - 112.0 * b3 - 81.0)
            + 2.0
                * a0.powi(4)
                * (192.0 * b3.powi(4) - 576.0 * b3.powi(3) - 1356.0 * b3.powi(2) - 78.0 * b3
                    + 245.0)
            + a0.powi(2)
                * (256.0 * b3.powi(6) + 384.0 * b3.powi(5)
                    - 408.0 * b3.powi(4)
                    - 136.0 * b3.powi(3)
                    + 764.0 * b3.powi(2)
                    + 215.0 * b3
                    - 62.0)
            + (2.0 * b3 + 1.0).powi(2)
                * (16.0 * b3.powi(6)
                    + 144.0 * b3.powi(5)
                    + 266.0 * b3.powi(4)
                    + 87.0 * b3.powi(3)
                    - 89.0 * b3.powi(2)
                    - 32.0 * b3
                    + 6.0));
    let d4 = 16.0
        * (-32768.0 * a0.powi(16)
            + 2048.0 * a0.powi(14) * (241.0 * b3.powi(2) - 284.0 * b3 - 83.0)
            + 256.0
                * a0.powi(12)
                * (9208.0 * b3.powi(4) - 5384.0 * b3.powi(3)
                    + 6390.0 * b3.powi(2)
                    + 25496.0 * b3
                    + 8589.0)
            + 128.0
                * a0.powi(10)
                * (25680.0 * b3.powi(6) - 32160.0 * b3.powi(5)
                    + 7368.0 * b3.powi(4)
                    + 257000.0 * b3.powi(3)
                    + 212292.0 * b3.powi(2)
                    + 23286.0 * b3
                    - 10209.0)
            + 80.0
                * a0.powi(8)
                * (8064.0 * b3.powi(8) - 169344.0 * b3.powi(7) - 304224.0 * b3.powi(6)
                    + 311872.0 * b3.powi(5)
                    + 774736.0 * b3.powi(4)
                    + 306928.0 * b3.powi(3)
                    - 61620.0 * b3.powi(2)
                    - 34824.0 * b3
                    + 1209.0)
            - 8.0
                * a0.powi(6)
                * (281856.0 * b3.powi(10)
                    + 2529280.0 * b3.powi(9)
                    + 6835200.0 * b3.powi(8)
                    + 6572800.0 * b3.powi(7)
                    + 316800.0 * b3.powi(6)
                    - 2303424.0 * b3.powi(5)
                    - 174400.0 * b3.powi(4)
                    + 593920.0 * b3.powi(3)
                    + 124725.0 * b3.powi(2)
                    - 2310.0 * b3
                    + 6019.0)
            - 2.0
                * a0.powi(4)
                * (2.0 * b3 + 1.0).powi(2)
                * (230144.0 * b3.powi(10)
                    + 1285120.0 * b3.powi(9)
                    + 3244032.0 * b3.powi(8)
                    + 4304128.0 * b3.powi(7)
                    + 2583584.0 * b3.powi(6)
                    + 28128.0 * b3.powi(5)
                    - 669240.0 * b3.powi(4)
                    - 261024.0 * b3.powi(3)
                    + 369.0 * b3.powi(2)
                    + 30952.0 * b3
                    - 3232.0)
            - 4.0
                * a0.powi(2)
                * (2.0 * b3 + 1.0).powi(4)
                * (5408.0 * b3.powi(10) + 10240.0 * b3.powi(9)
                    - 22272.0 * b3.powi(8)
                    - 72224.0 * b3.powi(7)
                    - 83578.0 * b3.powi(6)
                    - 75384.0 * b3.powi(5)
                    - 40635.0 * b3.powi(4)
                    + 8889.0 * b3.powi(3)
                    + 10338.0 * b3.powi(2)
                    - 2444.0 * b3
                    - 184.0)
            + 2.0
                * (b3 + 1.0).powi(2)
                * (2.0 * b3 + 1.0).powi(6)
                * (400.0 * b3.powi(8)
                    + 4000.0 * b3.powi(7)
                    + 15408.0 * b3.powi(6)
                    + 16240.0 * b3.powi(5)
                    - 2449.0 * b3.powi(4)
                    - 6128.0 * b3.powi(3)
                    + 104.0 * b3.powi(2)
                    + 272.0 * b3
                    - 24.0));
    let d6 = 16.0
        * (28672.0 * a0.powi(14)
            - 512.0 * a0.powi(12) * (688.0 * b3.powi(2) + 1102.0 * b3 + 941.0)
            - 128.0
                * a0.powi(10)
                * (9696.0 * b3.powi(4)
                    - 40380.0 * b3.powi(3)
                    - 33951.0 * b3.powi(2)
                    - 20148.0 * b3
                    - 11743.0)
            - 160.0
                * a0.powi(8)
                * (5632.0 * b3.powi(6) - 26064.0 * b3.powi(5) - 7644.0 * b3.powi(4)
                    + 35134.0 * b3.powi(3)
                    - 57181.0 * b3.powi(2)
                    - 51958.0 * b3
                    - 5454.0)
            + 40.0
                * a0.powi(6)
                * (18944.0 * b3.powi(8)
                    - 103552.0 * b3.powi(7)
                    - 737312.0 * b3.powi(6)
                    - 1217152.0 * b3.powi(5)
                    - 320576.0 * b3.powi(4)
                    + 504962.0 * b3.powi(3)
                    + 120149.0 * b3.powi(2)
                    - 112824.0 * b3
                    - 29175.0)
            + 2.0
                * a0.powi(4)
                * (577536.0 * b3.powi(10) + 1111040.0 * b3.powi(9)
                    - 2474880.0 * b3.powi(8)
                    - 6705600.0 * b3.powi(7)
                    - 341600.0 * b3.powi(6)
                    + 9137976.0 * b3.powi(5)
                    + 5840100.0 * b3.powi(4)
                    - 884330.0 * b3.powi(3)
                    - 684765.0 * b3.powi(2)
                    + 374580.0 * b3
                    + 132449.0)
            + a0.powi(2)
                * (2.0 * b3 + 1.0).powi(2)
                * (80896.0 * b3.powi(10)
                    + 999808.0 * b3.powi(9)
                    + 3452640.0 * b3.powi(8)
                    + 5398208.0 * b3.powi(7)
                    + 3717992.0 * b3.powi(6)
                    - 367068.0 * b3.powi(5)
                    - 2064016.0 * b3.powi(4)
                    - 746875.0 * b3.powi(3)
                    + 150774.0 * b3.powi(2)
                    + 30796.0 * b3
                    - 25928.0)
            - (2.0 * b3 + 1.0).powi(4)
                * (2048.0 * b3.powi(10)
                    + 25824.0 * b3.powi(9)
                    + 135752.0 * b3.powi(8)
                    + 385692.0 * b3.powi(7)
                    + 535154.0 * b3.powi(6)
                    + 253167.0 * b3.powi(5)
                    - 114083.0 * b3.powi(4)
                    - 118464.0 * b3.powi(3)
                    - 4364.0 * b3.powi(2)
                    + 7632.0 * b3
                    - 656.0));
    let d8 = 5.0
        * (40960.0 * a0.powi(12) - 12288.0 * a0.powi(10) * (97.0 * b3.powi(2) + 88.0 * b3 + 44.0)
            + 256.0
                * a0.powi(8)
                * (39921.0 * b3.powi(4)
                    + 34176.0 * b3.powi(3)
                    + 42870.0 * b3.powi(2)
                    + 12132.0 * b3
                    + 1667.0)
            - 128.0
                * a0.powi(6)
                * (141080.0 * b3.powi(6)
                    + 419208.0 * b3.powi(5)
                    + 389430.0 * b3.powi(4)
                    + 82228.0 * b3.powi(3)
                    - 15613.0 * b3.powi(2)
                    - 100402.0 * b3
                    - 37063.0)
            + 48.0
                * a0.powi(4)
                * (212768.0 * b3.powi(8)
                    + 1023680.0 * b3.powi(7)
                    + 1963504.0 * b3.powi(6)
                    + 1378192.0 * b3.powi(5)
                    - 304390.0 * b3.powi(4)
                    - 508976.0 * b3.powi(3)
                    + 63582.0 * b3.powi(2)
                    - 57076.0 * b3
                    - 52349.0)
            - 8.0
                * a0.powi(2)
                * (149376.0 * b3.powi(10)
                    + 1199488.0 * b3.powi(9)
                    + 4718496.0 * b3.powi(8)
                    + 9599232.0 * b3.powi(7)
                    + 9822584.0 * b3.powi(6)
                    + 3227448.0 * b3.powi(5)
                    - 2548818.0 * b3.powi(4)
                    - 2029036.0 * b3.powi(3)
                    - 53961.0 * b3.powi(2)
                    + 37902.0 * b3
                    - 40196.0)
            + (2.0 * b3 + 1.0).powi(2)
                * (10304.0 * b3.powi(10)
                    + 154304.0 * b3.powi(9)
                    + 911472.0 * b3.powi(8)
                    + 2786464.0 * b3.powi(7)
                    + 4828732.0 * b3.powi(6)
                    + 3895212.0 * b3.powi(5)
                    + 22345.0 * b3.powi(4)
                    - 1558688.0 * b3.powi(3)
                    - 352512.0 * b3.powi(2)
                    + 133184.0 * b3
                    - 7840.0));
    let d10 = -2.0
        * (22528.0 * a0.powi(10)
            + 256.0 * a0.powi(8) * (800.0 * b3.powi(2) + 3620.0 * b3 + 599.0)
            + 64.0
                * a0.powi(6)
                * (5440.0 * b3.powi(4)
                    - 195290.0 * b3.powi(3)
                    - 97221.0 * b3.powi(2)
                    - 44476.0 * b3
                    + 8375.0)
            + 16.0
                * a0.powi(4)
                * (12800.0 * b3.powi(6)
                    + 1073640.0 * b3.powi(5)
                    + 2832444.0 * b3.powi(4)
                    + 2369838.0 * b3.powi(3)
                    - 242151.0 * b3.powi(2)
                    - 492540.0 * b3
                    - 270455.0)
            + 4.0
                * a0.powi(2)
                * (17920.0 * b3.powi(8)
                    - 1188320.0 * b3.powi(7)
                    - 6499376.0 * b3.powi(6)
                    - 13648368.0 * b3.powi(5)
                    - 10198728.0 * b3.powi(4)
                    + 1289514.0 * b3.powi(3)
                    + 3579185.0 * b3.powi(2)
                    + 123260.0 * b3
                    + 206555.0)
            + 32768.0 * b3.powi(10)
            + 483200.0 * b3.powi(9)
            + 3111744.0 * b3.powi(8)
            + 10647136.0 * b3.powi(7)
            + 19890064.0 * b3.powi(6)
            + 19640424.0 * b3.powi(5)
            + 5479324.0 * b3.powi(4)
            - 6109790.0 * b3.powi(3)
            - 3422445.0 * b3.powi(2)
            + 504920.0 * b3
            + 3560.0);
    let d12 = -9.0
        * (4096.0 * a0.powi(8) - 128.0 * a0.powi(6) * (277.0 * b3.powi(2) - 92.0 * b3 - 55.0)
            + 48.0
                * a0.powi(4)
                * (152.0 * b3.powi(4) + 1944.0 * b3.powi(3) - 7094.0 * b3.powi(2) - 1548.0 * b3
                    + 53.0)
            + 8.0
                * a0.powi(2)
                * (5648.0 * b3.powi(6)
                    + 18912.0 * b3.powi(5)
                    + 60408.0 * b3.powi(4)
                    + 115368.0 * b3.powi(3)
                    + 86625.0 * b3.powi(2)
                    - 44964.0 * b3
                    - 18410.0)
            - 1664.0 * b3.powi(8)
            - 22400.0 * b3.powi(7)
            - 124064.0 * b3.powi(6)
            - 377088.0 * b3.powi(5)
            - 624840.0 * b3.powi(4)
            - 383256.0 * b3.powi(3)
            + 109994.0 * b3.powi(2)
            + 181940.0 * b3
            - 17605.0);
    let d14 = -54.0
        * (128.0 * a0.powi(6) - 16.0 * a0.powi(4) * (48.0 * b3.powi(2) + 78.0 * b3 - 29.0)
            + 16.0
                * a0.powi(2)
                * (72.0 * b3.powi(4) + 124.0 * b3.powi(3) + 190.0 * b3.powi(2)
                    - 101.0 * b3
                    - 69.0)
            + (2.0 * b3 + 7.0).powi(2)
                * (40.0 * b3.powi(3) + 44.0 * b3.powi(2) + 62.0 * b3 - 47.0));
    let d16 = 27.0
        * (-16.0 * a0.powi(4)
            - 8.0 * a0.powi(2) * (4.0 * b3.powi(2) - 44.0 * b3 + 13.0)
            - (2.0 * b3 - 1.0) * (2.0 * b3 + 7.0).powi(3));
    [d0, d2, d4, d6, d8, d10, d12, d14, d16]
}

/// The full separatrix polynomial in `alpha2`, degree 16, including the
/// factor `1792 (4 alpha0² + 4 beta3² + 4 beta3 − 3)²`.
pub fn separatrix_poly(alpha0: f64, beta3: f64) -> UnivariatePoly {
    let pre = 1792.0 * (4.0 * base_disk_level(alpha0, beta3) - 3.0).powi(2);
    let d = separatrix_coefficients(alpha0, beta3);
    let mut coeffs = vec![0.0; 17];
    for (i, di) in d.iter().enumerate() {
        coeffs[2 * i] = pre * di;
    }
    UnivariatePoly::new(coeffs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceConfig {
    /// Solver used by the maxima-count oracle.
    pub solver: SolverConfig,
    /// Probe offset is `max(probe_min, probe_frac * dome)`.
    pub probe_min: f64,
    pub probe_frac: f64,
}

impl Default for SurfaceConfig {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            probe_min: 1e-3,
            probe_frac: 0.02,
        }
    }
}

/// Outcome of the separatrix root search at one disk point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatrixSearch {
    pub value: Option<f64>,
    /// Candidate roots in `(0, dome]` that failed the maxima-count check.
    pub rejected: usize,
    pub dome: f64,
}

/// Counts maxima on both sides of `root`; `Ok(true)` when the count is 4
/// above and 3 below.
fn flips_at(alpha0: f64, beta3: f64, root: f64, dome: f64, cfg: &SurfaceConfig) -> Result<bool> {
    let delta = cfg.probe_min.max(cfg.probe_frac * dome);
    let above = if root + delta < dome {
        root + delta
    } else {
        0.5 * (root + dome)
    };
    let below = if root - delta > 0.0 {
        root - delta
    } else {
        0.5 * root
    };
    let count = |a2: f64| count_maxima(&OctupolarParams::new(alpha0, beta3, a2), &cfg.solver);
    match (count(above), count(below)) {
        (Ok(a), Ok(b)) => Ok(a == 4 && b == 3),
        (Err(Error::Degenerate(e)), Err(Error::Degenerate(_))) => Err(Error::Degenerate(e)),
        (Err(e), _) | (_, Err(e)) if !matches!(e, Error::Degenerate(_)) => Err(e),
        _ => Ok(false),
    }
}

pub fn separatrix_search(alpha0: f64, beta3: f64, cfg: &SurfaceConfig) -> Result<SeparatrixSearch> {
    check_disk(alpha0, beta3)?;
    let dome = dome_alpha2(alpha0, beta3)?;
    let (rho, chi) = params_to_polar(alpha0, beta3);
    // The separatrix lies under the dome, so it closes onto the base circle.
    if rho <= DISK_SLACK || dome <= 1e-12 {
        return Ok(SeparatrixSearch {
            value: Some(0.0),
            rejected: 0,
            dome,
        });
    }
    if let Some(f) = family_of(chi, SECTION_TOL) {
        let s = family_sepa(f, rho.min(0.5));
        let value = (s <= dome + 1e-12).then_some(s);
        return Ok(SeparatrixSearch {
            value,
            rejected: 0,
            dome,
        });
    }

    // Work in mu = alpha2², where the polynomial has degree 8.
    let in_square = separatrix_poly(alpha0, beta3).even_part_in_square();
    let mu_max = dome * dome * (1.0 + 1e-9) + 1e-15;
    let roots = poly_real_roots(&in_square, 0.0, mu_max, 1e-11)?;
    let mut rejected = 0;
    for r in roots.iter().filter(|r| r.value > 1e-14) {
        let a2 = r.value.sqrt().min(dome);
        if flips_at(alpha0, beta3, a2, dome, cfg)? {
            return Ok(SeparatrixSearch {
                value: Some(a2),
                rejected,
                dome,
            });
        }
        rejected += 1;
    }
    Ok(SeparatrixSearch {
        value: None,
        rejected,
        dome,
    })
}

/// The separatrix height over `(alpha0, beta3)`, or `None` where no root of
/// the separatrix polynomial in `(0, dome]` separates four maxima from three.
pub fn separatrix_alpha2(alpha0: f64, beta3: f64, cfg: &SurfaceConfig) -> Result<Option<f64>> {
    Ok(separatrix_search(alpha0, beta3, cfg)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSection {
    pub dome: f64,
    pub sepa: f64,
}

/// Exact dome and separatrix heights on the sections `chi = -pi/2` and
/// `chi = -pi/6`.
pub fn cross_section(chi: f64, rho: f64) -> Result<CrossSection> {
    if !(0.0..=0.5).contains(&rho) {
        return Err(Error::Domain(format!("rho = {rho} is outside [0, 1/2]")));
    }
    let f = if angle_distance(chi, -PI / 2.0) <= 1e-12 {
        Family::I
    } else if angle_distance(chi, -PI / 6.0) <= 1e-12 {
        Family::II
    } else {
        return Err(Error::Domain(format!(
            "no closed-form cross-section at chi = {chi}"
        )));
    };
    Ok(CrossSection {
        dome: family_dome(f, rho),
        sepa: family_sepa(f, rho),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SampleFlags {
    pub outside_disk: bool,
    /// The separatrix polynomial had roots under the dome that failed the
    /// maxima-count check.
    pub spurious: bool,
    pub degenerate: bool,
}

impl SampleFlags {
    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.outside_disk {
            out.push("outside_disk");
        }
        if self.spurious {
            out.push("spurious");
        }
        if self.degenerate {
            out.push("degenerate");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub alpha0: f64,
    pub beta3: f64,
    pub rho: f64,
    pub chi: f64,
    pub dome_alpha2: Option<f64>,
    pub sepa_alpha2: Option<f64>,
    pub flags: SampleFlags,
}

pub fn sample_point(rho: f64, chi: f64, cfg: &SurfaceConfig) -> SurfaceSample {
    let (alpha0, beta3) = polar_to_params(&PolarPoint { rho, chi });
    let mut s = SurfaceSample {
        alpha0,
        beta3,
        rho,
        chi,
        dome_alpha2: None,
        sepa_alpha2: None,
        flags: SampleFlags::default(),
    };
    if base_disk_level(alpha0, beta3) > DISK_SLACK {
        s.flags.outside_disk = true;
        return s;
    }
    match separatrix_search(alpha0, beta3, cfg) {
        Ok(found) => {
            s.dome_alpha2 = Some(found.dome);
            s.sepa_alpha2 = found.value;
            s.flags.spurious = found.rejected > 0;
        }
        Err(_) => {
            s.dome_alpha2 = dome_alpha2(alpha0, beta3).ok();
            s.flags.degenerate = true;
        }
    }
    s
}

/// Row `i` has `rho = i / (2 (n_rho − 1))`; column `j` has
/// `chi = −pi + 2 pi (j + 1) / n_chi`. Rows are ordered rho-major.
pub fn sample_disk(n_rho: usize, n_chi: usize, cfg: &SurfaceConfig) -> Result<Vec<SurfaceSample>> {
    if n_rho < 2 || n_chi < 2 {
        return Err(Error::Parameter("grid sizes must be at least 2".into()));
    }
    let points: Vec<(f64, f64)> = (0..n_rho)
        .flat_map(|i| {
            let rho = 0.5 * i as f64 / (n_rho - 1) as f64;
            (0..n_chi).map(move |j| (rho, -PI + 2.0 * PI * (j + 1) as f64 / n_chi as f64))
        })
        .collect();
    Ok(points
        .par_iter()
        .map(|&(rho, chi)| sample_point(rho, chi, cfg))
        .collect())
}
