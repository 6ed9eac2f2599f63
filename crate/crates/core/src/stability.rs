//! Slope functions and the slope-window enumerations behind the
//! universal-extension and section-quotient stability arguments.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chern::ChernVector;
use crate::error::Error;
use crate::geometry::PolarizedCY3;
use crate::rational::Rational;

/// A rational number or `+inf`. `+inf` is the slope of torsion classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedRational {
    Finite(Rational),
    PosInfinity,
}

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(x) => Some(x),
            ExtendedRational::PosInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::PosInfinity)
    }
}

impl From<Rational> for ExtendedRational {
    fn from(x: Rational) -> Self {
        ExtendedRational::Finite(x)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(x) => fmt::Display::fmt(x, f),
            ExtendedRational::PosInfinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "+inf" {
            return Ok(ExtendedRational::PosInfinity);
        }
        s.parse()
            .map(ExtendedRational::Finite)
            .map_err(serde::de::Error::custom)
    }
}

/// `mu_H = c1.H^2 / rank`.
pub fn slope_mu(geom: &PolarizedCY3, ch: &ChernVector) -> Result<ExtendedRational, Error> {
    match ch.ch0 {
        r if r < 0 => Err(Error::NegativeRank(r)),
        0 => Ok(ExtendedRational::PosInfinity),
        r => Ok(Rational::frac(ch.c1 * i64::from(geom.degree()), r).into()),
    }
}

/// `(ch1^2 - 2 ch0 ch2).H = a^2 d - 2 ch0 ch2H`.
pub fn bg_discriminant(geom: &PolarizedCY3, ch: &ChernVector) -> Rational {
    let a = ch.c1;
    Rational::from(a * a * i64::from(geom.degree())) - &ch.ch2h * (2 * ch.ch0)
}

pub fn bg_ok(geom: &PolarizedCY3, ch: &ChernVector) -> bool {
    !bg_discriminant(geom, ch).is_negative()
}

/// Numerator of the tilt slope at `B = 0`, `omega = tH`, as a function of
/// `t^2`: `ch2H - (t^2/6) d ch0`.
pub fn nu_numerator(geom: &PolarizedCY3, ch: &ChernVector, t_squared: &Rational) -> Rational {
    &ch.ch2h - t_squared * Rational::frac(i64::from(geom.degree()) * ch.ch0, 6)
}

/// Tilt slope `nu_t = (ch2H - (t^2/6) d ch0) / (a t d)`, `+inf` when `a = 0`.
///
/// Only the sign and ordering of this value are meaningful; any positive
/// rescaling describes the same stability condition.
pub fn tilt_slope_nu(
    geom: &PolarizedCY3,
    ch: &ChernVector,
    t: &Rational,
) -> Result<ExtendedRational, Error> {
    if !t.is_positive() {
        return Err(Error::NonPositiveTilt(t.to_string()));
    }
    if ch.c1 == 0 {
        return Ok(ExtendedRational::PosInfinity);
    }
    let denom = t * Rational::from(ch.c1 * i64::from(geom.degree()));
    Ok((nu_numerator(geom, ch, &t.pow(2)) / denom).into())
}

/// `t * nu_t`, which only depends on `t^2` and so can be evaluated exactly at
/// irrational `t`. It has the same sign and zero locus as `nu_t`.
pub fn scaled_tilt_slope(
    geom: &PolarizedCY3,
    ch: &ChernVector,
    t_squared: &Rational,
) -> Result<ExtendedRational, Error> {
    if !t_squared.is_positive() {
        return Err(Error::NonPositiveTilt(t_squared.to_string()));
    }
    if ch.c1 == 0 {
        return Ok(ExtendedRational::PosInfinity);
    }
    let denom = Rational::from(ch.c1 * i64::from(geom.degree()));
    Ok((nu_numerator(geom, ch, t_squared) / denom).into())
}

/// The value of `t^2 > 0` at which `nu_t` vanishes: `6 ch2H / (d ch0)`.
pub fn nu_zero_tsq(geom: &PolarizedCY3, ch: &ChernVector) -> Result<Rational, Error> {
    if ch.ch0 == 0 {
        return Err(Error::ZeroRank);
    }
    let ratio = &ch.ch2h / ch.ch0;
    if !ratio.is_positive() {
        return Err(Error::NoPositiveRoot(ratio.to_string()));
    }
    Ok(ratio * Rational::frac(6, i64::from(geom.degree())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub ordered: bool,
    pub nu_sub: ExtendedRational,
    pub nu_quot: ExtendedRational,
    #[serde(rename = "ch2H_sub")]
    pub ch2h_sub: Rational,
    #[serde(rename = "ch2H_quot")]
    pub ch2h_quot: Rational,
}

/// Checks `nu_t(F1[1]) <= 0 <= nu_t(F2)` for a triangle `F1[1] -> E -> F2`
/// with `nu_t(E) = 0`. A zero class on either side imposes no condition.
pub fn sandwich_check(
    geom: &PolarizedCY3,
    ch_sub: &ChernVector,
    ch_quot: &ChernVector,
    t: &Rational,
) -> Result<SandwichReport, Error> {
    let shifted = -ch_sub;
    let nu_sub = tilt_slope_nu(geom, &shifted, t)?;
    let nu_quot = tilt_slope_nu(geom, ch_quot, t)?;
    let zero = ExtendedRational::Finite(Rational::zero());
    let sub_ok = ch_sub.is_zero() || nu_sub <= zero;
    let quot_ok = ch_quot.is_zero() || nu_quot >= zero;
    Ok(SandwichReport {
        ordered: sub_ok && quot_ok,
        nu_sub,
        nu_quot,
        ch2h_sub: ch_sub.ch2h.clone(),
        ch2h_quot: ch_quot.ch2h.clone(),
    })
}

/// Pairs `(k, s)` with `1 <= k <= s <= s_max` and
/// `1/lower_den <= k/s <= 1/upper_den`.
fn slope_window(s_max: u64, lower_den: u64, upper_den: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for s in 1..=s_max {
        // s <= k * lower_den  and  k * upper_den <= s
        let k_lo = s.div_ceil(lower_den).max(1);
        let k_hi = (s / upper_den).min(s);
        out.extend((k_lo..=k_hi).map(|k| (k, s)));
    }
    out
}

/// Destabilizing candidates `(k, rank F)` for an extension of a rank `r`
/// sheaf with `c1 = H` by `O_X`: `1/(r+1) <= k/s <= 1/r`, `s <= r`.
/// Only `(1, r)` survives.
pub fn lemma1_slope_window(r: u64) -> Vec<(u64, u64)> {
    if r == 0 {
        return Vec::new();
    }
    slope_window(r, r + 1, r)
}

/// Destabilizing quotients `(k, rank G)` of `E / O_X` for rank `r >= 2`:
/// `1/r <= k/s <= 1/(r-1)`, `s < r - 1`. Always empty.
pub fn lemma2_slope_window(r: u64) -> Vec<(u64, u64)> {
    if r < 2 {
        return Vec::new();
    }
    slope_window(r.saturating_sub(2), r, r - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::{extend_by_trivial, line_bundle_ch, quotient_by_trivial};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn fin(x: Rational) -> ExtendedRational {
        ExtendedRational::Finite(x)
    }

    /// Literal enumeration over `k` in `1..=s` comparing slopes `k d / s`
    /// as rationals.
    fn window_oracle(
        d: i64,
        s_range: std::ops::RangeInclusive<u64>,
        lower: Rational,
        upper: Rational,
    ) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for s in s_range {
            for k in 1..=s {
                let slope = Rational::frac(k as i64 * d, s as i64);
                if lower <= slope && slope <= upper {
                    out.push((k, s));
                }
            }
        }
        out
    }

    #[test]
    fn slope_examples() {
        let g = PolarizedCY3::quintic();
        let v = |r, a| ChernVector::new(r, a, Rational::zero(), Rational::zero());
        assert_eq!(slope_mu(&g, &v(1, 1)), Ok(fin(q(5, 1))));
        assert_eq!(slope_mu(&g, &v(2, 1)), Ok(fin(q(5, 2))));
        assert_eq!(
            slope_mu(&g, &ChernVector::new(0, 0, q(1, 1), q(0, 1))),
            Ok(ExtendedRational::PosInfinity)
        );
        assert_eq!(slope_mu(&g, &v(-1, 1)), Err(Error::NegativeRank(-1)));
    }

    #[test]
    fn infinity_orders_above_everything() {
        assert!(ExtendedRational::PosInfinity > fin(q(1_000_000, 1)));
        assert!(fin(q(-1, 1)) < fin(q(0, 1)));
        let s = serde_json::to_string(&ExtendedRational::PosInfinity).unwrap();
        assert_eq!(s, "\"+inf\"");
        let back: ExtendedRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, ExtendedRational::PosInfinity);
    }

    #[test]
    fn discriminant_examples() {
        let g = PolarizedCY3::quintic();
        for n in -5..=5 {
            assert!(bg_discriminant(&g, &line_bundle_ch(5, n)).is_zero());
        }
        let v = ChernVector::new(3, 1, q(1, 2), q(0, 1));
        assert_eq!(bg_discriminant(&g, &v), q(2, 1));
        let v = ChernVector::new(6, 1, q(1, 2), q(0, 1));
        assert_eq!(bg_discriminant(&g, &v), q(-1, 1));
        assert!(!bg_ok(&g, &v));
    }

    #[test]
    fn nu_examples() {
        let g = PolarizedCY3::quintic();
        let oh = line_bundle_ch(5, 1);
        assert_eq!(tilt_slope_nu(&g, &oh, &q(1, 1)), Ok(fin(q(1, 3))));
        // t = sqrt(3)
        assert_eq!(scaled_tilt_slope(&g, &oh, &q(3, 1)), Ok(fin(q(0, 1))));
        let torsion = ChernVector::new(0, 0, q(1, 1), q(0, 1));
        assert_eq!(tilt_slope_nu(&g, &torsion, &q(7, 2)), Ok(ExtendedRational::PosInfinity));
        assert!(tilt_slope_nu(&g, &oh, &q(0, 1)).is_err());
        assert!(tilt_slope_nu(&g, &oh, &q(-1, 1)).is_err());
    }

    #[test]
    fn nu_zero_examples() {
        let g = PolarizedCY3::quintic();
        assert_eq!(nu_zero_tsq(&g, &line_bundle_ch(5, 1)), Ok(q(3, 1)));
        assert_eq!(nu_zero_tsq(&g, &ChernVector::new(2, 1, q(5, 2), q(0, 1))), Ok(q(3, 2)));
        assert!(matches!(
            nu_zero_tsq(&g, &ChernVector::new(1, 1, q(-1, 1), q(0, 1))),
            Err(Error::NoPositiveRoot(_))
        ));
        assert_eq!(nu_zero_tsq(&g, &ChernVector::zero()), Err(Error::ZeroRank));
    }

    #[test]
    fn sandwich_examples() {
        let g = PolarizedCY3::quintic();
        let oh = line_bundle_ch(5, 1);
        // F1 = F2 = O(H): nu(O(H)[1]) = nu(O(H)) = 1/3 > 0, so not ordered
        let r = sandwich_check(&g, &oh, &oh, &q(1, 1)).unwrap();
        assert_eq!(r.nu_sub, fin(q(1, 3)));
        assert_eq!(r.nu_quot, fin(q(1, 3)));
        assert!(!r.ordered);
        assert_eq!(r.ch2h_sub, q(5, 2));

        let r = sandwich_check(&g, &ChernVector::zero(), &oh, &q(1, 1)).unwrap();
        assert!(r.ordered);

        // past the zero wall nu(O(H)) < 0, so O(H)[1] may sit on the left
        let r = sandwich_check(&g, &oh, &ChernVector::zero(), &q(2, 1)).unwrap();
        assert_eq!(r.nu_sub, fin(q(-1, 12)));
        assert!(r.ordered);
    }

    #[test]
    fn window_examples() {
        assert_eq!(lemma1_slope_window(1), vec![(1, 1)]);
        assert_eq!(lemma1_slope_window(3), vec![(1, 3)]);
        assert!(lemma2_slope_window(2).is_empty());
        assert!(lemma2_slope_window(3).is_empty());
        assert!(lemma2_slope_window(10).is_empty());
    }

    #[test]
    fn windows_match_literal_oracle() {
        for r in 1..=40u64 {
            let ri = r as i64;
            for d in [1i64, 5, 8, 12] {
                let lemma1 = window_oracle(d, 1..=r, q(d, ri + 1), q(d, ri));
                assert_eq!(lemma1_slope_window(r), lemma1, "r = {r}, d = {d}");
                if r >= 2 {
                    let lemma2 = window_oracle(d, 1..=r.saturating_sub(2), q(d, ri), q(d, ri - 1));
                    assert_eq!(lemma2_slope_window(r), lemma2, "r = {r}, d = {d}");
                }
            }
        }
    }

    #[test]
    fn windows_exhaustive() {
        for r in 1..=1000 {
            assert_eq!(lemma1_slope_window(r), vec![(1, r)]);
        }
        for r in 2..=1000 {
            assert!(lemma2_slope_window(r).is_empty());
        }
    }

    fn arb_vector() -> impl Strategy<Value = ChernVector> {
        (-12i64..12, -6i64..6, -200i64..200, 1i64..12, -50i64..50, 1i64..12)
            .prop_map(|(r, a, n2, d2, n3, d3)| {
                ChernVector::new(r, a, Rational::frac(n2, d2), Rational::frac(n3, d3))
            })
    }

    proptest! {
        #[test]
        fn discriminant_under_trivial_extension(x in arb_vector(), m in 1u64..20) {
            let g = PolarizedCY3::quintic();
            let before = bg_discriminant(&g, &x);
            let ext = extend_by_trivial(&x, m);
            prop_assert_eq!(bg_discriminant(&g, &quotient_by_trivial(&ext, m)), before.clone());
            let after = bg_discriminant(&g, &ext);
            prop_assert_eq!(after < before, x.ch2h.is_positive());
        }

        #[test]
        fn line_bundles_saturate_bg(d in 1u32..=30, n in -20i64..=20) {
            let c2h = 12 * 40 - 2 * i64::from(d);
            let g = PolarizedCY3::new(d, c2h, None, false).unwrap();
            prop_assert!(bg_discriminant(&g, &line_bundle_ch(d, n)).is_zero());
        }

        #[test]
        fn nu_is_degree_zero_homogeneous(x in arb_vector(), lambda in 1i64..20,
                                         tn in 1i64..30, td in 1i64..30) {
            let g = PolarizedCY3::quintic();
            let t = Rational::frac(tn, td);
            let nu = tilt_slope_nu(&g, &x, &t).unwrap();
            prop_assert_eq!(tilt_slope_nu(&g, &x.scale(lambda), &t).unwrap(), nu.clone());
            // the shift [1] negates the class but not the slope
            prop_assert_eq!(tilt_slope_nu(&g, &x.scale(-lambda), &t).unwrap(), nu);
        }

        #[test]
        fn sandwich_is_scale_invariant(x in arb_vector(), y in arb_vector(), lambda in 1i64..10,
                                       tn in 1i64..30, td in 1i64..30) {
            let g = PolarizedCY3::quintic();
            let t = Rational::frac(tn, td);
            let a = sandwich_check(&g, &x, &y, &t).unwrap().ordered;
            let b = sandwich_check(&g, &x.scale(lambda), &y.scale(lambda), &t).unwrap().ordered;
            prop_assert_eq!(a, b);
        }

        #[test]
        fn nu_vanishes_exactly_at_zero_tsq(r in 1i64..10, a in 1i64..6, n2 in 1i64..200, d2 in 1i64..12,
                                           tn in 1i64..40, td in 1i64..40) {
            let g = PolarizedCY3::quintic();
            let x = ChernVector::new(r, a, Rational::frac(n2, d2), Rational::zero());
            let root = nu_zero_tsq(&g, &x).unwrap();
            prop_assert_eq!(scaled_tilt_slope(&g, &x, &root).unwrap(), fin(Rational::zero()));
            let tsq = Rational::frac(tn, td).pow(2);
            let vanishes = scaled_tilt_slope(&g, &x, &tsq).unwrap() == fin(Rational::zero());
            prop_assert_eq!(vanishes, tsq == root);
            let t = Rational::frac(tn, td);
            let sign_nu = tilt_slope_nu(&g, &x, &t).unwrap().finite().unwrap().signum();
            let sign_scaled = scaled_tilt_slope(&g, &x, &tsq).unwrap().finite().unwrap().signum();
            prop_assert_eq!(sign_nu, sign_scaled);
        }
    }
}
