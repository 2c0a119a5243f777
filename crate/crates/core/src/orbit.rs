//! Coordinates on `SU(3)` modulo conjugation by `S(U(1)×U(2))`.
//!
//! A class is either *regular*, labelled by `x = X₀₀` in the open unit disc
//! together with the disc coordinate `z₁` of the residual `SU(2)` factor, or
//! lies on the *fiber* stratum `|X₀₀| = 1`, a Möbius band labelled by an angle
//! `φ ∈ [0, 2π)` and `s ∈ [−1, 1]`. Crossing `φ = 2π` identifies `s` with `−s`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::json::sig17;
use crate::kp::off_block_max;
use crate::linalg::{
    complete_unitary, ComplexMatrix, LinalgError, SkewHermitianMatrix, SpecialUnitary, ONE,
};

/// Distance of `|x|` from 1 below which a class is treated as lying on the fiber stratum.
pub const TOL_STRATUM: f64 = 1e-7;
/// Largest off-block entry accepted for a fiber-stratum matrix.
pub const TOL_FIBER_BLOCK: f64 = 1e-8;
/// Angles this close below `2π` are reported as `0`.
const SEAM_SNAP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OrbitError {
    #[error("orbit coordinates are implemented for 3x3 matrices, got {0}x{0}")]
    NotThreeLevel(usize),
    #[error("expected a 2x2 special unitary, got {0}x{0}")]
    NotTwoLevel(usize),
    #[error("|x| = {modulus} is not inside the open unit disc")]
    OutOfDisc { modulus: f64 },
    #[error("|X00| = {modulus} is within the stratum tolerance of 1 but the matrix is not block diagonal (off-block entry {residual:.3e})")]
    StratumBoundaryAmbiguous { modulus: f64, residual: f64 },
    #[error("time grid must be ascending and start at 0")]
    BadGrid,
    #[error("at t = {t}: {source}")]
    AtTime { t: f64, source: Box<OrbitError> },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A point of the orbit space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitClass {
    Regular { x: Complex64, z1: Complex64 },
    Fiber { phi: f64, s: f64 },
}

impl OrbitClass {
    pub fn stratum(&self) -> &'static str {
        match self {
            Self::Regular { .. } => "regular",
            Self::Fiber { .. } => "fiber",
        }
    }

    /// Coordinate distance to `other`, or `None` when the strata differ.
    ///
    /// Fiber points are compared on the Möbius band: going across the seam
    /// flips the sign of `s`.
    pub fn distance(&self, other: &Self) -> Option<f64> {
        match (*self, *other) {
            (Self::Regular { x, z1 }, Self::Regular { x: x2, z1: z2 }) => {
                Some((x - x2).norm().max((z1 - z2).norm()))
            }
            (Self::Fiber { phi, s }, Self::Fiber { phi: phi2, s: s2 }) => {
                let d = (phi - phi2).abs();
                let direct = d.max((s - s2).abs());
                let across = (TAU - d).max((s + s2).abs());
                Some(direct.min(across))
            }
            _ => None,
        }
    }

    pub const CSV_COLUMNS: [&'static str; 7] =
        ["stratum", "x_re", "x_im", "z1_re", "z1_im", "phi", "s"];

    /// Fields in the order of [`Self::CSV_COLUMNS`]; unused ones empty.
    pub fn csv_fields(&self) -> [String; 7] {
        match *self {
            Self::Regular { x, z1 } => [
                "regular".into(),
                sig17(x.re),
                sig17(x.im),
                sig17(z1.re),
                sig17(z1.im),
                String::new(),
                String::new(),
            ],
            Self::Fiber { phi, s } => [
                "fiber".into(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                sig17(phi),
                sig17(s),
            ],
        }
    }
}

impl Serialize for OrbitClass {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct C {
            re: f64,
            im: f64,
        }
        let mut map = ser.serialize_map(Some(3))?;
        map.serialize_entry("stratum", self.stratum())?;
        match *self {
            Self::Regular { x, z1 } => {
                map.serialize_entry("x", &C { re: x.re, im: x.im })?;
                map.serialize_entry(
                    "z1",
                    &C {
                        re: z1.re,
                        im: z1.im,
                    },
                )?;
            }
            Self::Fiber { phi, s } => {
                map.serialize_entry("phi", &phi)?;
                map.serialize_entry("s", &s)?;
            }
        }
        map.end()
    }
}

/// One point of a projected trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientSample {
    pub t: f64,
    pub cls: OrbitClass,
}

/// `W(x) = [[x, √(1−|x|²)], [−√(1−|x|²), x̄]] ⊕ 1`.
pub fn w_matrix(x: Complex64) -> ComplexMatrix {
    let s = (1.0 - x.norm_sqr()).max(0.0).sqrt();
    let mut w = ComplexMatrix::identity(3);
    w[(0, 0)] = x;
    w[(0, 1)] = s.into();
    w[(1, 0)] = (-s).into();
    w[(1, 1)] = x.conj();
    w
}

fn embed_lower(z: &SpecialUnitary) -> Result<ComplexMatrix, OrbitError> {
    if z.n() != 2 {
        return Err(OrbitError::NotTwoLevel(z.n()));
    }
    Ok(ComplexMatrix::direct_sum(
        &ComplexMatrix::identity(1),
        z.inner(),
    ))
}

/// Representative `W(x)·diag(1, Z)` of a regular class.
pub fn psi_regular(x: Complex64, z: &SpecialUnitary) -> Result<SpecialUnitary, OrbitError> {
    if x.norm() >= 1.0 {
        return Err(OrbitError::OutOfDisc { modulus: x.norm() });
    }
    Ok(SpecialUnitary::new(&w_matrix(x) * &embed_lower(z)?)?)
}

/// Representative `diag(e^{−iφ}, e^{iφ}, 1)·diag(1, Z)` of a fiber class.
pub fn psi_fiber(phi: f64, z: &SpecialUnitary) -> Result<SpecialUnitary, OrbitError> {
    let d = ComplexMatrix::from_diagonal(&[
        Complex64::from_polar(1.0, -phi),
        Complex64::from_polar(1.0, phi),
        ONE,
    ]);
    Ok(SpecialUnitary::new(&d * &embed_lower(z)?)?)
}

/// Orbit-space coordinates of `X ∈ SU(3)`.
pub fn orbit_class(x: &SpecialUnitary) -> Result<OrbitClass, OrbitError> {
    if x.n() != 3 {
        return Err(OrbitError::NotThreeLevel(x.n()));
    }
    let xm = x.inner();
    let x00 = xm[(0, 0)];
    let modulus = x00.norm();
    if modulus < 1.0 - TOL_STRATUM {
        let col = [xm[(1, 0)], xm[(2, 0)]];
        let s = (col[0].norm_sqr() + col[1].norm_sqr()).sqrt();
        // conjugate so the first column becomes (x, −s, 0)
        let w1 = complete_unitary(&[-col[0] / s, -col[1] / s]);
        let k = ComplexMatrix::direct_sum(&ComplexMatrix::identity(1), &w1.adjoint());
        let y = xm.conjugate_by(&k);
        let peeled = &w_matrix(x00).adjoint() * &y;
        return Ok(OrbitClass::Regular {
            x: x00,
            z1: peeled[(1, 1)],
        });
    }
    let residual = off_block_max(xm);
    if residual > TOL_FIBER_BLOCK {
        return Err(OrbitError::StratumBoundaryAmbiguous { modulus, residual });
    }
    let mut phi = (-x00.arg()).rem_euclid(TAU);
    if phi > TAU - SEAM_SNAP {
        phi = 0.0;
    }
    let trace = xm[(1, 1)] + xm[(2, 2)];
    let s = (Complex64::from_polar(1.0, -phi / 2.0) * trace / 2.0).re;
    Ok(OrbitClass::Fiber { phi, s })
}

/// Classes of `e^{At}e^{(−A+P)t}` along an ascending grid starting at 0.
pub fn project_trajectory(
    a: &SkewHermitianMatrix,
    p: &SkewHermitianMatrix,
    t_grid: &[f64],
) -> Result<Vec<QuotientSample>, OrbitError> {
    if t_grid.first().is_some_and(|&t| t != 0.0) || t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(OrbitError::BadGrid);
    }
    let b = p.sub(a);
    t_grid
        .par_iter()
        .map(|&t| {
            let u = a.exp(t).compose(&b.exp(t));
            orbit_class(&u)
                .map(|cls| QuotientSample { t, cls })
                .map_err(|e| OrbitError::AtTime {
                    t,
                    source: Box::new(e),
                })
        })
        .collect()
}
