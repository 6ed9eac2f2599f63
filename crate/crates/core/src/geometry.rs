//! Polarized Calabi-Yau threefolds of Picard rank one.
//!
//! A geometry is recorded by `d = H^3`, `c2(X).H` and `dim|H|`. On a
//! Calabi-Yau threefold Riemann-Roch and Kodaira vanishing give
//! `h^0(O_X(H)) = chi(O_X(H)) = d/6 + c2(X).H/12`, so `dim|H|` is determined by
//! the other two numbers; a supplied value is checked against it.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Smooth quintic in P^4.
    Quintic,
    /// Complete intersection of type (2, 4) in P^5.
    Ci24,
    /// Complete intersection of type (2, 2, 3) in P^6.
    Ci223,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Quintic, Preset::Ci24, Preset::Ci223];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Quintic => "quintic",
            Preset::Ci24 => "ci24",
            Preset::Ci223 => "ci223",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GeometryRecord", into = "GeometryRecord")]
pub struct PolarizedCY3 {
    d: u32,
    c2xh: i64,
    dimh: i64,
    castelnuovo_known: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GeometryRecord {
    d: u32,
    #[serde(rename = "c2XH")]
    c2xh: i64,
    #[serde(rename = "dimH")]
    dimh: Option<i64>,
    #[serde(default)]
    castelnuovo_known: bool,
}

impl TryFrom<GeometryRecord> for PolarizedCY3 {
    type Error = Error;

    fn try_from(r: GeometryRecord) -> Result<Self, Error> {
        PolarizedCY3::new(r.d, r.c2xh, r.dimh, r.castelnuovo_known)
    }
}

impl From<PolarizedCY3> for GeometryRecord {
    fn from(g: PolarizedCY3) -> Self {
        GeometryRecord {
            d: g.d,
            c2xh: g.c2xh,
            dimh: Some(g.dimh),
            castelnuovo_known: g.castelnuovo_known,
        }
    }
}

impl PolarizedCY3 {
    /// Builds a geometry, deriving `dim|H|` when it is not given and rejecting
    /// a given value that disagrees with Riemann-Roch.
    pub fn new(
        d: u32,
        c2xh: i64,
        dimh: Option<i64>,
        castelnuovo_known: bool,
    ) -> Result<Self, Error> {
        if d == 0 {
            return Err(Error::NonPositiveDegree(0));
        }
        let derived = derive_dimh(d, c2xh)?;
        if let Some(given) = dimh {
            if given != derived {
                return Err(Error::DimHMismatch { given, derived });
            }
        }
        Ok(PolarizedCY3 {
            d,
            c2xh,
            dimh: derived,
            castelnuovo_known,
        })
    }

    pub fn from_preset(preset: Preset) -> Self {
        // c2(X) from the total Chern class of the complete intersection:
        // quintic 10h^2, (2,4) 7h^2, (2,2,3) 5h^2; times d.
        let (d, c2xh, known) = match preset {
            Preset::Quintic => (5, 50, true),
            Preset::Ci24 => (8, 56, false),
            Preset::Ci223 => (12, 60, false),
        };
        PolarizedCY3::new(d, c2xh, None, known).expect("preset geometry is consistent")
    }

    pub fn quintic() -> Self {
        Self::from_preset(Preset::Quintic)
    }

    pub fn ci24() -> Self {
        Self::from_preset(Preset::Ci24)
    }

    pub fn ci223() -> Self {
        Self::from_preset(Preset::Ci223)
    }

    /// `H^3`.
    pub fn degree(&self) -> u32 {
        self.d
    }

    /// `c2(X).H`.
    pub fn c2xh(&self) -> i64 {
        self.c2xh
    }

    /// `dim|H|`.
    pub fn dimh(&self) -> i64 {
        self.dimh
    }

    pub fn castelnuovo_known(&self) -> bool {
        self.castelnuovo_known
    }

    /// `chi(O_X(H)) = d/6 + c2(X).H/12`.
    pub fn chi_oh(&self) -> Rational {
        Rational::frac(2 * i64::from(self.d) + self.c2xh, 12)
    }
}

/// `dim|H| = d/6 + c2XH/12 - 1`.
pub fn derive_dimh(d: u32, c2xh: i64) -> Result<i64, Error> {
    let chi = Rational::frac(2 * i64::from(d) + c2xh, 12);
    if !chi.is_integer() {
        return Err(Error::NonIntegralGeometry {
            d,
            c2h: c2xh,
            value: chi.to_string(),
        });
    }
    let dimh = chi.to_i64().expect("small integer") - 1;
    if dimh < 0 {
        return Err(Error::NegativeLinearSystem(dimh));
    }
    Ok(dimh)
}

/// `(7/6) d - 3`.
pub fn h_threshold(d: u32) -> Rational {
    Rational::frac(7 * i64::from(d), 6) - 3
}

/// `(2/3) d - 3`.
pub fn h_threshold_even(d: u32) -> Rational {
    Rational::frac(2 * i64::from(d), 3) - 3
}

/// `dim|H| >= (7/6) H^3 - 3`.
pub fn check_h_assumption(geom: &PolarizedCY3) -> bool {
    Rational::from(geom.dimh) >= h_threshold(geom.d)
}

/// `dim|H| >= (2/3) H^3 - 3`, only meaningful when `H^3` is even.
pub fn check_h_assumption_even(geom: &PolarizedCY3) -> Result<bool, Error> {
    if geom.d % 2 != 0 {
        return Err(Error::OddDegree(geom.d));
    }
    Ok(Rational::from(geom.dimh) >= h_threshold_even(geom.d))
}

/// Curve degrees `1 <= beta < d/2`.
pub fn castelnuovo_range(geom: &PolarizedCY3) -> Vec<i64> {
    let d = i64::from(geom.d);
    (1..).take_while(|beta| 2 * beta < d).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveBound {
    /// `C.H`
    pub beta: i64,
    /// Smallest `chi(O_C)` occurring in degree `beta`.
    pub chi_min: i64,
}

impl CurveBound {
    pub fn new(beta: i64, chi_min: i64) -> Result<Self, Error> {
        if beta < 1 {
            return Err(Error::NonPositiveCurveDegree(beta));
        }
        Ok(CurveBound { beta, chi_min })
    }
}

/// Parses `beta:chi`.
impl FromStr for CurveBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::config("curve-bound", format!("expected beta:chi, got {s:?}"));
        let (beta, chi) = s.split_once(':').ok_or_else(bad)?;
        let beta = beta.trim().parse::<i64>().map_err(|_| bad())?;
        let chi = chi.trim().parse::<i64>().map_err(|_| bad())?;
        CurveBound::new(beta, chi)
    }
}

fn ensure_in_range(geom: &PolarizedCY3, beta: i64) -> Result<(), Error> {
    if beta < 1 || 2 * beta >= i64::from(geom.d) {
        return Err(Error::BetaOutOfRange { beta, d: geom.d });
    }
    Ok(())
}

/// The curve inequality `chi(O_C) >= d/6 - C.H` at the supplied bound.
pub fn castelnuovo_check(geom: &PolarizedCY3, cb: &CurveBound) -> Result<bool, Error> {
    ensure_in_range(geom, cb.beta)?;
    Ok(Rational::from(cb.chi_min) >= castelnuovo_rhs(geom, cb.beta))
}

/// `d/6 - beta`.
pub fn castelnuovo_rhs(geom: &PolarizedCY3, beta: i64) -> Rational {
    Rational::frac(i64::from(geom.d), 6) - beta
}

/// Smallest integer `chi` allowed by the curve inequality: `ceil(d/6 - beta)`.
pub fn min_castelnuovo_chi(geom: &PolarizedCY3, beta: i64) -> i64 {
    castelnuovo_rhs(geom, beta)
        .ceil()
        .to_i64()
        .expect("small integer")
}
