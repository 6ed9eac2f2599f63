//! Report values shared by the JSON and human renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::certifier::{AffineFn, Candidate, Certificate, EqualitySet, HypothesisMode};
use crate::chern::ChernVector;
use crate::geometry::{PolarizedCY3, Preset};
use crate::rational::Rational;
use crate::stability::ExtendedRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdCheck {
    pub threshold: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeomReport {
    pub preset: Option<Preset>,
    pub geometry: PolarizedCY3,
    #[serde(rename = "chi_OH")]
    pub chi_oh: Rational,
    #[serde(rename = "chi_OX")]
    pub chi_ox: Rational,
    pub full_hypothesis: ThresholdCheck,
    /// Absent for odd degree.
    pub even_hypothesis: Option<ThresholdCheck>,
    pub castelnuovo_range: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EvalOp {
    Chi,
    Mu,
    Nu,
    Bg,
    Ineq12,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    pub op: EvalOp,
    pub ch: ChernVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Rational>,
    pub value: ExtendedRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integral: Option<bool>,
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn affine(f: &AffineFn, var: &str) -> String {
    if f.slope.is_zero() {
        return f.intercept.to_string();
    }
    let slope = if f.slope == 1 {
        String::new()
    } else if f.slope == -1 {
        "-".to_string()
    } else {
        format!("{} ", f.slope)
    };
    if f.intercept.is_zero() {
        format!("{slope}{var}")
    } else if f.intercept.is_negative() {
        format!("{slope}{var} - {}", -&f.intercept)
    } else {
        format!("{slope}{var} + {}", f.intercept)
    }
}

fn geometry_line(geom: &PolarizedCY3) -> String {
    format!(
        "d = {}, c2.H = {}, dim|H| = {}, chi(O(H)) = {}",
        geom.degree(),
        geom.c2xh(),
        geom.dimh(),
        geom.chi_oh()
    )
}

pub fn render_geom(r: &GeomReport) -> String {
    let mut out = String::new();
    if let Some(p) = r.preset {
        writeln!(out, "preset: {p}").unwrap();
    }
    let g = &r.geometry;
    writeln!(out, "d = {}", g.degree()).unwrap();
    writeln!(out, "c2XH = {}", g.c2xh()).unwrap();
    writeln!(out, "dimH = {}", g.dimh()).unwrap();
    writeln!(out, "chi(O(H)) = {}", r.chi_oh).unwrap();
    writeln!(out, "chi(O_X) = {}", r.chi_ox).unwrap();
    writeln!(out, "castelnuovo_known = {}", g.castelnuovo_known()).unwrap();
    writeln!(
        out,
        "degree hypothesis dim|H| >= 7/6 d - 3 = {}: {}",
        r.full_hypothesis.threshold,
        pass(r.full_hypothesis.holds)
    )
    .unwrap();
    match &r.even_hypothesis {
        Some(even) => writeln!(
            out,
            "even-degree variant dim|H| >= 2/3 d - 3 = {}: {}",
            even.threshold,
            pass(even.holds)
        )
        .unwrap(),
        None => writeln!(out, "even-degree variant: n/a (odd degree)").unwrap(),
    }
    let range: Vec<String> = r.castelnuovo_range.iter().map(i64::to_string).collect();
    writeln!(out, "curve degrees below d/2: [{}]", range.join(", ")).unwrap();
    out
}

pub fn render_candidates(candidates: &[Candidate]) -> String {
    let mut out = String::new();
    for c in candidates {
        writeln!(out, "({}, {})  ch2H = {}", c.r, c.c2h, c.ch2h).unwrap();
    }
    out
}

pub fn render_certificate(c: &Certificate) -> String {
    let mut out = String::new();
    writeln!(out, "geometry: {}", geometry_line(&c.geometry)).unwrap();
    let h = &c.hypothesis;
    let (mode, rule) = match c.hypothesis_mode {
        HypothesisMode::Full => ("full", "7/6 d - 3"),
        HypothesisMode::Even => ("even", "2/3 d - 3"),
    };
    let status = match h.holds {
        Some(b) => pass(b).to_string(),
        None => "n/a (odd degree)".to_string(),
    };
    writeln!(
        out,
        "hypothesis ({mode}): dim|H| = {} >= {rule} = {}: {status}",
        h.dimh, h.threshold
    )
    .unwrap();
    let cast = match c.castelnuovo_status {
        crate::certifier::CastelnuovoStatus::Asserted => "asserted",
        crate::certifier::CastelnuovoStatus::Assumed => "assumed",
        crate::certifier::CastelnuovoStatus::Violated => "violated",
    };
    writeln!(out, "curve inequality chi(O_C) >= d/6 - C.H: {cast}").unwrap();

    let c1 = &c.case1;
    writeln!(out, "Case 1 (F = O(H) ⊗ I_Z, dim Z = 0):").unwrap();
    writeln!(out, "  ch3 = {}", affine(&c1.ch3, "l")).unwrap();
    for reading in &c1.readings {
        let eq = match &reading.equality {
            EqualitySet::Empty => "never".to_string(),
            EqualitySet::Point(x) => format!("l = {x}"),
            EqualitySet::Everywhere => "everywhere".to_string(),
        };
        writeln!(
            out,
            "  bound ({}) {}: {}, equality at {eq}",
            reading.label,
            affine(&reading.rhs, "l"),
            if reading.dominated { "holds for all l >= 0" } else { "FAILS" }
        )
        .unwrap();
    }
    let lengths: Vec<String> = c1.equality_lengths.iter().map(u64::to_string).collect();
    writeln!(
        out,
        "  equality lengths {{{}}}, value {}",
        lengths.join(", "),
        c1.equality_value
    )
    .unwrap();

    writeln!(out, "Case 2 (F = O(H) ⊗ I_Z, dim Z = 1):").unwrap();
    if c.case2.is_empty() {
        writeln!(out, "  no curve degrees below d/2").unwrap();
    }
    for row in &c.case2 {
        let note = if row.castelnuovo_ok {
            String::new()
        } else {
            "  [violates curve inequality]".to_string()
        };
        writeln!(
            out,
            "  beta = {}: chi_min = {}, ch3 <= {}  {}{note}",
            row.beta,
            row.chi_min,
            row.ch3_bound,
            if row.ok { "ok" } else { "FAIL" }
        )
        .unwrap();
    }

    let c3 = &c.case3;
    writeln!(out, "Case 3 (rank F >= 2, h0(F) = 0):").unwrap();
    writeln!(
        out,
        "  min ch2H = {}, ch0(F) >= {}, ext1 cap = {}, worst bound ch3 <= {}",
        c3.min_ch2h, c3.min_ch0_f, c3.ext1_cap, c3.worst_bound
    )
    .unwrap();
    for row in &c3.rows {
        writeln!(
            out,
            "  (r, c2H) = ({}, {}): ch2H = {}, ext1 cap = {}, ch3 <= {}{}",
            row.r,
            row.c2h,
            row.ch2h,
            row.ext1_cap,
            row.ch3_bound,
            if row.impossible { "  [impossible]" } else { "" }
        )
        .unwrap();
    }

    let pairs: Vec<String> = c
        .candidates
        .iter()
        .map(|x| format!("({}, {})", x.r, x.c2h))
        .collect();
    writeln!(out, "candidates (r, c2H): {}", pairs.join(" ")).unwrap();
    writeln!(out, "verdict: {}", c.verdict).unwrap();
    out
}

pub fn render_eval(r: &EvalReport) -> String {
    let mut out = String::new();
    match r.op {
        EvalOp::Chi => {
            writeln!(out, "chi = {}", r.value).unwrap();
            if let Some(integral) = r.integral {
                writeln!(out, "integral: {}", if integral { "yes" } else { "no" }).unwrap();
            }
        }
        EvalOp::Mu => writeln!(out, "mu = {}", r.value).unwrap(),
        EvalOp::Nu => writeln!(
            out,
            "nu(t = {}) = {}",
            r.t.as_ref().map(ToString::to_string).unwrap_or_default(),
            r.value
        )
        .unwrap(),
        EvalOp::Bg => {
            writeln!(out, "discriminant = {}", r.value).unwrap();
            writeln!(out, "bogomolov: {}", pass(r.holds == Some(true))).unwrap();
        }
        EvalOp::Ineq12 => {
            let rhs = r.rhs.as_ref().map(ToString::to_string).unwrap_or_default();
            writeln!(out, "ch3 = {} <= ch2H/(3 ch0) = {}", r.value, rhs).unwrap();
            let verdict = match (r.holds, r.equality) {
                (_, Some(true)) => "equality",
                (Some(true), _) => "strict",
                _ => "fail",
            };
            writeln!(out, "{verdict}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_rendering() {
        let f = AffineFn::new(Rational::from(-1), Rational::frac(5, 6));
        assert_eq!(affine(&f, "l"), "-l + 5/6");
        let g = AffineFn::new(Rational::frac(-1, 3), Rational::frac(-1, 6));
        assert_eq!(affine(&g, "l"), "-1/3 l - 1/6");
        let h = AffineFn::new(Rational::zero(), Rational::frac(5, 6));
        assert_eq!(affine(&h, "l"), "5/6");
    }
}
