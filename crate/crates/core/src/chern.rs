//! Numerical Chern characters on a threefold whose Picard group is generated
//! by an ample class `H`.
//!
//! A [`ChernVector`] stores `(ch0, c1, ch2.H, ch3)` with `c1 = a.H` recorded by
//! the integer `a`, and `ch2`, `ch3` recorded by their intersection numbers.
//! The algebra is total: virtual classes with zero or negative rank are
//! representable, and the constructors that model actual sheaves only
//! document their image.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::PolarizedCY3;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChernVector {
    pub ch0: i64,
    /// `c1 = a.H`; this is `a`.
    pub c1: i64,
    #[serde(rename = "ch2H")]
    pub ch2h: Rational,
    pub ch3: Rational,
}

impl ChernVector {
    pub fn new(ch0: i64, c1: i64, ch2h: Rational, ch3: Rational) -> Self {
        ChernVector { ch0, c1, ch2h, ch3 }
    }

    pub fn zero() -> Self {
        ChernVector::new(0, 0, Rational::zero(), Rational::zero())
    }

    /// `ch(O_X)`.
    pub fn structure_sheaf() -> Self {
        ChernVector::new(1, 0, Rational::zero(), Rational::zero())
    }

    /// Multiply every component by `lambda`, i.e. the class of `E^{lambda}`.
    pub fn scale(&self, lambda: i64) -> Self {
        ChernVector::new(
            self.ch0 * lambda,
            self.c1 * lambda,
            &self.ch2h * lambda,
            &self.ch3 * lambda,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.ch0 == 0 && self.c1 == 0 && self.ch2h.is_zero() && self.ch3.is_zero()
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.ch0, self.c1, self.ch2h, self.ch3)
    }
}

/// Parses the `ch0,c1,ch2H,ch3` command-line form.
impl FromStr for ChernVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [ch0, c1, ch2h, ch3] = parts.as_slice() else {
            return Err(Error::MalformedChernVector(s.to_string()));
        };
        let int = |field: &str| -> Result<i64, Error> {
            field
                .parse::<Rational>()?
                .to_i64()
                .ok_or_else(|| Error::MalformedChernVector(s.to_string()))
        };
        Ok(ChernVector::new(
            int(ch0)?,
            int(c1)?,
            ch2h.parse()?,
            ch3.parse()?,
        ))
    }
}

impl Add for &ChernVector {
    type Output = ChernVector;
    fn add(self, rhs: &ChernVector) -> ChernVector {
        ChernVector::new(
            self.ch0 + rhs.ch0,
            self.c1 + rhs.c1,
            &self.ch2h + &rhs.ch2h,
            &self.ch3 + &rhs.ch3,
        )
    }
}

impl Sub for &ChernVector {
    type Output = ChernVector;
    fn sub(self, rhs: &ChernVector) -> ChernVector {
        ChernVector::new(
            self.ch0 - rhs.ch0,
            self.c1 - rhs.c1,
            &self.ch2h - &rhs.ch2h,
            &self.ch3 - &rhs.ch3,
        )
    }
}

impl Neg for &ChernVector {
    type Output = ChernVector;
    fn neg(self) -> ChernVector {
        ChernVector::new(-self.ch0, -self.c1, -&self.ch2h, -&self.ch3)
    }
}

/// `ch(O_X(nH)) = e^{nH} = (1, n, n^2 d/2, n^3 d/6)` where `d = H^3`.
pub fn line_bundle_ch(d: u32, n: i64) -> ChernVector {
    let d = i64::from(d);
    let n = Rational::from(n);
    ChernVector::new(
        1,
        n.to_i64().expect("integer"),
        n.pow(2) * Rational::frac(d, 2),
        n.pow(3) * Rational::frac(d, 6),
    )
}

/// `ch(O_X(H) ⊗ I_Z)` for a zero-dimensional `Z` of the given length.
pub fn ideal_twist_point_ch(d: u32, length: u64) -> ChernVector {
    let d = i64::from(d);
    let length = i64::try_from(length).expect("length fits in i64");
    ChernVector::new(
        1,
        1,
        Rational::frac(d, 2),
        Rational::frac(d, 6) - length,
    )
}

/// `ch(O_X(H) ⊗ I_Z)` for a one-dimensional `Z` with `H.Z = beta` and
/// `chi(O_Z) = chi`.
pub fn ideal_twist_curve_ch(d: u32, beta: i64, chi: i64) -> Result<ChernVector, Error> {
    if beta <= 0 {
        return Err(Error::NonPositiveCurveDegree(beta));
    }
    let d = i64::from(d);
    Ok(ChernVector::new(
        1,
        1,
        Rational::frac(d, 2) - beta,
        Rational::frac(d, 6) - beta - chi,
    ))
}

/// Middle term of `0 -> O_X^m -> E' -> E -> 0`.
pub fn extend_by_trivial(ch: &ChernVector, m: u64) -> ChernVector {
    let m = i64::try_from(m).expect("m fits in i64");
    ChernVector {
        ch0: ch.ch0 + m,
        ..ch.clone()
    }
}

/// Quotient in `0 -> O_X^m -> E -> F -> 0`.
///
/// A negative resulting rank is not a sheaf; it is still returned as a
/// virtual class and logged.
pub fn quotient_by_trivial(ch: &ChernVector, m: u64) -> ChernVector {
    let m = i64::try_from(m).expect("m fits in i64");
    if m > ch.ch0 {
        log::warn!(
            "quotient of rank {} by O_X^{} has negative rank; treating it as a virtual class",
            ch.ch0,
            m
        );
    }
    ChernVector {
        ch0: ch.ch0 - m,
        ..ch.clone()
    }
}

/// Derived dual: signs flip on the odd-degree components.
pub fn dual_ch(ch: &ChernVector) -> ChernVector {
    ChernVector::new(ch.ch0, -ch.c1, ch.ch2h.clone(), -&ch.ch3)
}

/// Class of `E` in a triangle `F1[1] -> E -> F2`, i.e. `ch(F2) - ch(F1)`.
pub fn triangle_ch(ch_sub: &ChernVector, ch_quot: &ChernVector) -> ChernVector {
    ch_quot - ch_sub
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernClasses {
    pub c1: i64,
    #[serde(rename = "c2H")]
    pub c2h: Rational,
    pub c3: Rational,
}

/// Converts to Chern classes via `ch2 = (c1^2 - 2 c2)/2` and
/// `ch3 = (c1^3 - 3 c1 c2 + 3 c3)/6`.
pub fn chern_classes_from_ch(d: u32, ch: &ChernVector) -> ChernClasses {
    let d = Rational::from(i64::from(d));
    let a = Rational::from(ch.c1);
    let c2h = (a.pow(2) * &d - &ch.ch2h * 2) / 2;
    let c3 = (&ch.ch3 * 6 - a.pow(3) * &d + &a * &c2h * 3) / 3;
    ChernClasses {
        c1: ch.c1,
        c2h,
        c3,
    }
}

/// Inverse of [`chern_classes_from_ch`].
pub fn ch_from_chern_classes(d: u32, rank: i64, classes: &ChernClasses) -> ChernVector {
    let d = Rational::from(i64::from(d));
    let a = Rational::from(classes.c1);
    let ch2h = (a.pow(2) * &d - &classes.c2h * 2) / 2;
    let ch3 = (a.pow(3) * &d - &a * &classes.c2h * 3 + &classes.c3 * 3) / 6;
    ChernVector::new(rank, classes.c1, ch2h, ch3)
}

/// Euler characteristic by Hirzebruch-Riemann-Roch on a Calabi-Yau threefold:
/// `chi(E) = ch3 + c1.c2(X)/12`.
pub fn euler_characteristic(geom: &PolarizedCY3, ch: &ChernVector) -> Rational {
    &ch.ch3 + Rational::frac(ch.c1 * geom.c2xh(), 12)
}

/// True iff `c2.H` and `chi` are both integers.
pub fn is_integral(geom: &PolarizedCY3, ch: &ChernVector) -> bool {
    let d = i64::from(geom.degree());
    let c2h = (Rational::from(ch.c1 * ch.c1 * d) - &ch.ch2h * 2) / 2;
    c2h.is_integer() && euler_characteristic(geom, ch).is_integer()
}
