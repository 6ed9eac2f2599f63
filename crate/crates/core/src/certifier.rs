//! Replay of the case analysis bounding `ch3(E)` for slope stable sheaves with
//! `c1(E) = H` and `ch2(E).H > 0`, packaged as a [`Certificate`].
//!
//! Writing `0 -> O_X^m -> E -> F -> 0` with `F` either `O_X(H) ⊗ I_Z` or of
//! rank at least two without sections, the three cases are:
//!
//! * Case 1, `dim Z = 0`: `ch3 = d/6 - length(Z)`, compared symbolically
//!   against the target bound as affine functions of the length.
//! * Case 2, `dim Z = 1`: `ch3 = d/6 - beta - chi(O_Z)`, bounded with the
//!   curve inequality for every `beta < d/2`.
//! * Case 3, `rank F >= 2`: Riemann-Roch plus the Bogomolov-Gieseker cap on
//!   `ext^1(F, O_X)` after the universal extension.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chern::ChernVector;
use crate::error::Error;
use crate::geometry::{
    castelnuovo_check, castelnuovo_range, check_h_assumption, check_h_assumption_even,
    h_threshold, h_threshold_even, min_castelnuovo_chi, CurveBound, PolarizedCY3,
};
use crate::rational::Rational;

/// `x -> slope * x + intercept` on `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineFn {
    pub slope: Rational,
    pub intercept: Rational,
}

impl AffineFn {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        AffineFn { slope, intercept }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }
}

/// `f(x) <= g(x)` for every `x >= 0`.
pub fn affine_dominates(f: &AffineFn, g: &AffineFn) -> bool {
    f.slope <= g.slope && f.intercept <= g.intercept
}

/// Where two affine functions agree on `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualitySet {
    Empty,
    Point(Rational),
    Everywhere,
}

fn equality_set(f: &AffineFn, g: &AffineFn) -> EqualitySet {
    let ds = &f.slope - &g.slope;
    let di = &g.intercept - &f.intercept;
    if ds.is_zero() {
        return if di.is_zero() {
            EqualitySet::Everywhere
        } else {
            EqualitySet::Empty
        };
    }
    let x = di / ds;
    if x.is_negative() {
        EqualitySet::Empty
    } else {
        EqualitySet::Point(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case1Reading {
    pub label: String,
    pub rhs: AffineFn,
    pub dominated: bool,
    pub equality: EqualitySet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case1Trace {
    /// `ch3` as a function of the length of `Z`.
    pub ch3: AffineFn,
    pub readings: Vec<Case1Reading>,
    pub holds_for_all_lengths: bool,
    /// Integer lengths at which the bound is attained.
    pub equality_lengths: Vec<u64>,
    pub equality_value: Rational,
}

/// Case 1 over all lengths at once.
///
/// The right side `ch2H / (3 ch0)` is recorded under two readings: with
/// `ch2H = d/2` (a zero-dimensional `Z` leaves `ch2` unchanged), and with the
/// length-dependent value `d/6 - length/3`. Both must give the same verdict.
pub fn case1_check(geom: &PolarizedCY3) -> Result<Case1Trace, Error> {
    let d = i64::from(geom.degree());
    let sixth = Rational::frac(d, 6);
    let ch3 = AffineFn::new(Rational::from(-1), sixth.clone());
    let candidates = [
        ("constant", AffineFn::new(Rational::zero(), sixth.clone())),
        ("length_dependent", AffineFn::new(Rational::frac(-1, 3), sixth.clone())),
    ];
    let readings: Vec<Case1Reading> = candidates
        .into_iter()
        .map(|(label, rhs)| Case1Reading {
            label: label.to_string(),
            dominated: affine_dominates(&ch3, &rhs),
            equality: equality_set(&ch3, &rhs),
            rhs,
        })
        .collect();

    let holds = readings.iter().all(|r| r.dominated);
    let first = &readings[0];
    if readings.iter().any(|r| r.dominated != first.dominated || r.equality != first.equality) {
        return Err(Error::InconsistentTrace(
            "the two Case 1 readings disagree".to_string(),
        ));
    }
    let equality_lengths = match &first.equality {
        EqualitySet::Point(x) if x.is_integer() => vec![x.to_i64().expect("small") as u64],
        EqualitySet::Point(_) | EqualitySet::Empty => Vec::new(),
        EqualitySet::Everywhere => {
            return Err(Error::InconsistentTrace(
                "Case 1 bound attained at every length".to_string(),
            ))
        }
    };
    let equality_value = ch3.eval(&Rational::zero());
    Ok(Case1Trace {
        ch3,
        readings,
        holds_for_all_lengths: holds,
        equality_lengths,
        equality_value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2Row {
    pub beta: i64,
    pub chi_min: i64,
    /// Whether `chi_min` satisfies the curve inequality.
    pub castelnuovo_ok: bool,
    pub ch3_bound: Rational,
    pub ok: bool,
}

/// Case 2 rows for every `beta` in `castelnuovo_range`. Without bounds,
/// `chi_min` defaults to the smallest value the curve inequality allows.
pub fn case2_check(
    geom: &PolarizedCY3,
    bounds: Option<&[CurveBound]>,
) -> Result<Vec<Case2Row>, Error> {
    let range = castelnuovo_range(geom);
    let chosen: Vec<CurveBound> = match bounds {
        None => range
            .iter()
            .map(|&beta| CurveBound {
                beta,
                chi_min: min_castelnuovo_chi(geom, beta),
            })
            .collect(),
        Some(bounds) => {
            for cb in bounds {
                castelnuovo_check(geom, cb)?;
                if bounds.iter().filter(|o| o.beta == cb.beta).count() > 1 {
                    return Err(Error::DuplicateBeta(cb.beta));
                }
            }
            range
                .iter()
                .map(|&beta| {
                    bounds
                        .iter()
                        .find(|cb| cb.beta == beta)
                        .copied()
                        .ok_or(Error::MissingBeta(beta))
                })
                .collect::<Result<_, _>>()?
        }
    };

    let sixth = Rational::frac(i64::from(geom.degree()), 6);
    chosen
        .into_iter()
        .map(|cb| {
            let ch3_bound = &sixth - cb.beta - cb.chi_min;
            Ok(Case2Row {
                beta: cb.beta,
                chi_min: cb.chi_min,
                castelnuovo_ok: castelnuovo_check(geom, &cb)?,
                ok: !ch3_bound.is_positive(),
                ch3_bound,
            })
        })
        .collect()
}

fn ensure_case3_domain(ch2h: &Rational, ch0_f: i64) -> Result<(), Error> {
    if !ch2h.is_positive() {
        return Err(Error::NonpositiveCh2H(ch2h.to_string()));
    }
    if ch0_f < 2 {
        return Err(Error::QuotientRankTooSmall(ch0_f));
    }
    Ok(())
}

/// Bogomolov-Gieseker cap `ext^1(F, O_X) <= d / (2 ch2H) - ch0(F)`.
///
/// A negative value means no such `F` exists.
pub fn ext1_cap(geom: &PolarizedCY3, ch2h: &Rational, ch0_f: i64) -> Result<Rational, Error> {
    ensure_case3_domain(ch2h, ch0_f)?;
    Ok(Rational::from(i64::from(geom.degree())) / (ch2h * 2) - ch0_f)
}

/// Upper bound for `ch3(E)` in Case 3:
/// `ext1_cap + d/6 - dim|H| - 1`.
pub fn case3_bound(geom: &PolarizedCY3, ch2h: &Rational, ch0_f: i64) -> Result<Rational, Error> {
    let cap = ext1_cap(geom, ch2h, ch0_f)?;
    Ok(cap + Rational::frac(i64::from(geom.degree()), 6) - geom.dimh() - 1)
}

/// Smallest positive `ch2H` for `c1 = H` with integral `c2.H`: `1/2` when `d`
/// is odd and `1` when `d` is even.
pub fn min_positive_ch2h(geom: &PolarizedCY3) -> Rational {
    if geom.degree() % 2 == 0 {
        Rational::one()
    } else {
        Rational::frac(1, 2)
    }
}

/// `case3_bound` at the extreme `ch0(F) = 2`, `ch2H = min_positive_ch2h`.
pub fn worst_case3_bound(geom: &PolarizedCY3) -> Rational {
    case3_bound(geom, &min_positive_ch2h(geom), 2).expect("extreme point is in the domain")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case3Row {
    pub r: i64,
    #[serde(rename = "c2H")]
    pub c2h: i64,
    #[serde(rename = "ch2H")]
    pub ch2h: Rational,
    pub ext1_cap: Rational,
    /// A negative cap: no quotient of rank two with this `ch2H` exists.
    pub impossible: bool,
    pub ch3_bound: Rational,
    /// `ch2H / (3 r)`, the target bound for this candidate.
    pub target: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case3Trace {
    #[serde(rename = "min_ch2H")]
    pub min_ch2h: Rational,
    pub min_ch0_f: i64,
    pub ext1_cap: Rational,
    pub worst_bound: Rational,
    pub rows: Vec<Case3Row>,
}

pub fn case3_check(geom: &PolarizedCY3, candidates: &[Candidate]) -> Result<Case3Trace, Error> {
    let min_ch2h = min_positive_ch2h(geom);
    let rows = candidates
        .iter()
        .filter(|c| c.r >= 2)
        .map(|c| {
            let cap = ext1_cap(geom, &c.ch2h, 2)?;
            Ok(Case3Row {
                r: c.r,
                c2h: c.c2h,
                ch2h: c.ch2h.clone(),
                impossible: cap.is_negative(),
                ch3_bound: case3_bound(geom, &c.ch2h, 2)?,
                target: &c.ch2h / (3 * c.r),
                ext1_cap: cap,
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok(Case3Trace {
        ext1_cap: ext1_cap(geom, &min_ch2h, 2)?,
        worst_bound: worst_case3_bound(geom),
        min_ch0_f: 2,
        min_ch2h,
        rows,
    })
}

/// An admissible `(rank, c2.H)` pair for `c1 = H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub r: i64,
    #[serde(rename = "c2H")]
    pub c2h: i64,
    #[serde(rename = "ch2H")]
    pub ch2h: Rational,
}

/// All `(r, c2H)` with `r >= 1`, `0 <= c2H < d/2` and `2 r c2H >= (r - 1) d`,
/// ordered lexicographically.
pub fn enumerate_candidates(geom: &PolarizedCY3) -> Vec<Candidate> {
    let d = i64::from(geom.degree());
    // c2H ranges over 0..=c2h_max; the lower bound ceil((r-1)d / 2r) is
    // non-decreasing in r, so the loop stops at the first empty rank.
    let c2h_max = (d + 1) / 2 - 1;
    let mut out = Vec::new();
    for r in 1.. {
        let c2h_min = ((r - 1) * d + 2 * r - 1) / (2 * r);
        if c2h_min > c2h_max {
            break;
        }
        out.extend((c2h_min..=c2h_max).map(|c2h| Candidate {
            r,
            c2h,
            ch2h: Rational::frac(d, 2) - c2h,
        }));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub equality: bool,
}

/// `ch3 <= ch2H / (3 ch0)`.
pub fn check_ineq_1_2(ch: &ChernVector) -> Result<InequalityCheck, Error> {
    match ch.ch0 {
        0 => return Err(Error::ZeroRank),
        r if r < 0 => return Err(Error::NegativeRank(r)),
        _ => {}
    }
    let rhs = &ch.ch2h / (3 * ch.ch0);
    Ok(InequalityCheck {
        holds: ch.ch3 <= rhs,
        equality: ch.ch3 == rhs,
        lhs: ch.ch3.clone(),
        rhs,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeRequest {
    #[default]
    Auto,
    Full,
    Even,
}

/// Which lower bound on `dim|H|` is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisMode {
    /// `dim|H| >= (7/6) d - 3`.
    Full,
    /// `dim|H| >= (2/3) d - 3`, for even `d`.
    Even,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CastelnuovoStatus {
    /// The geometry is known to satisfy the curve inequality.
    Asserted,
    /// The curve inequality is taken as a hypothesis.
    Assumed,
    /// A supplied curve bound contradicts the curve inequality.
    Violated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    CertifiedStrict,
    Certified,
    Conditional,
    HypothesisFail,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::CertifiedStrict | Verdict::Certified => 0,
            Verdict::Conditional => 1,
            Verdict::HypothesisFail => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedStrict => "CERTIFIED_STRICT",
            Verdict::Certified => "CERTIFIED",
            Verdict::Conditional => "CONDITIONAL",
            Verdict::HypothesisFail => "HYPOTHESIS_FAIL",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisTrace {
    pub mode: HypothesisMode,
    #[serde(rename = "dimH")]
    pub dimh: i64,
    pub threshold: Rational,
    /// `None` when the mode does not apply (even mode on odd `d`).
    pub holds: Option<bool>,
    pub castelnuovo_violations: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub geometry: PolarizedCY3,
    pub hypothesis_mode: HypothesisMode,
    pub hypothesis_ok: bool,
    pub hypothesis: HypothesisTrace,
    pub castelnuovo_status: CastelnuovoStatus,
    pub case1: Case1Trace,
    pub case2: Vec<Case2Row>,
    pub case3: Case3Trace,
    pub candidates: Vec<Candidate>,
    pub verdict: Verdict,
}

/// Outcome of the numeric checks, strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumericOutcome {
    /// `ch3 <= 0` away from `O_X(H)`, with equality in the target only there.
    Strict,
    /// The target inequality holds in every case but some bound is positive.
    Target,
    Fails,
}

/// Verdict from the hypothesis gate, the curve inequality status and the
/// numeric outcome. Numerics failing under satisfied hypotheses would mean
/// the case analysis is wrong and is reported as an error.
pub fn decide_verdict(
    hypothesis_ok: bool,
    status: CastelnuovoStatus,
    numerics: NumericOutcome,
) -> Result<Verdict, Error> {
    if !hypothesis_ok {
        return Ok(Verdict::HypothesisFail);
    }
    match (numerics, status) {
        (NumericOutcome::Fails, _) => Err(Error::InconsistentTrace(
            "hypotheses hold but a case bound fails".to_string(),
        )),
        (_, CastelnuovoStatus::Violated) => Err(Error::InconsistentTrace(
            "hypotheses hold with a violated curve bound".to_string(),
        )),
        (NumericOutcome::Strict, CastelnuovoStatus::Asserted) => Ok(Verdict::CertifiedStrict),
        (NumericOutcome::Target, CastelnuovoStatus::Asserted) => Ok(Verdict::Certified),
        (_, CastelnuovoStatus::Assumed) => Ok(Verdict::Conditional),
    }
}

fn numeric_outcome(
    geom: &PolarizedCY3,
    case1: &Case1Trace,
    case2: &[Case2Row],
    case3: &Case3Trace,
) -> NumericOutcome {
    let case1_ok = case1.holds_for_all_lengths && case1.equality_lengths == [0];
    let strict = case1_ok
        && case2.iter().all(|row| row.ok)
        && !case3.worst_bound.is_positive();
    if strict {
        return NumericOutcome::Strict;
    }
    let half = Rational::frac(i64::from(geom.degree()), 2);
    let case2_target = case2
        .iter()
        .all(|row| row.ch3_bound <= (&half - row.beta) / 3);
    let case3_target = case3
        .rows
        .iter()
        .all(|row| row.impossible || row.ch3_bound <= row.target);
    if case1.holds_for_all_lengths && case2_target && case3_target {
        NumericOutcome::Target
    } else {
        NumericOutcome::Fails
    }
}

/// Runs every check for `geom` and assembles the certificate.
///
/// Supplied curve bounds override the defaults for their `beta`; every other
/// `beta` uses the weakest value allowed by the curve inequality. A supplied
/// bound outside `1 <= beta < d/2` or a repeated `beta` is an error.
pub fn certify_theorem(
    geom: &PolarizedCY3,
    curve_bounds: Option<&[CurveBound]>,
    mode: ModeRequest,
) -> Result<Certificate, Error> {
    let d = geom.degree();
    let full_ok = check_h_assumption(geom);
    let even = check_h_assumption_even(geom).ok();
    let hypothesis_mode = match mode {
        ModeRequest::Full => HypothesisMode::Full,
        ModeRequest::Even => HypothesisMode::Even,
        ModeRequest::Auto if full_ok || even.is_none() => HypothesisMode::Full,
        ModeRequest::Auto => HypothesisMode::Even,
    };
    let (threshold, degree_ok) = match hypothesis_mode {
        HypothesisMode::Full => (h_threshold(d), Some(full_ok)),
        HypothesisMode::Even => (h_threshold_even(d), even),
    };

    let supplied = curve_bounds.unwrap_or(&[]);
    let mut merged = Vec::new();
    for beta in castelnuovo_range(geom) {
        match supplied.iter().find(|cb| cb.beta == beta) {
            Some(cb) => merged.push(*cb),
            None => merged.push(CurveBound {
                beta,
                chi_min: min_castelnuovo_chi(geom, beta),
            }),
        }
    }
    let mut checked = supplied.to_vec();
    checked.extend(merged.iter().filter(|m| !supplied.iter().any(|s| s.beta == m.beta)));
    // validates range and duplicates of the supplied bounds
    let case2 = case2_check(geom, Some(&checked))?;

    let violations: Vec<i64> = case2
        .iter()
        .filter(|row| !row.castelnuovo_ok)
        .map(|row| row.beta)
        .collect();
    let castelnuovo_status = if !violations.is_empty() {
        CastelnuovoStatus::Violated
    } else if geom.castelnuovo_known() {
        CastelnuovoStatus::Asserted
    } else {
        CastelnuovoStatus::Assumed
    };
    let hypothesis_ok = degree_ok == Some(true) && violations.is_empty();

    let case1 = case1_check(geom)?;
    let candidates = enumerate_candidates(geom);
    let case3 = case3_check(geom, &candidates)?;
    let numerics = numeric_outcome(geom, &case1, &case2, &case3);
    let verdict = decide_verdict(hypothesis_ok, castelnuovo_status, numerics)?;

    Ok(Certificate {
        geometry: geom.clone(),
        hypothesis_mode,
        hypothesis_ok,
        hypothesis: HypothesisTrace {
            mode: hypothesis_mode,
            dimh: geom.dimh(),
            threshold,
            holds: degree_ok,
            castelnuovo_violations: violations,
        },
        castelnuovo_status,
        case1,
        case2,
        case3,
        candidates,
        verdict,
    })
}
