//! Geometry configuration files.
//!
//! Either a JSON object or `key = value` lines (`#` starts a comment) with the
//! fields `preset`, `d`, `c2h`, `dimh` and `castelnuovo_known`.

use serde_json::Value;

use crate::error::Error;
use crate::geometry::{PolarizedCY3, Preset};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeometryConfig {
    pub preset: Option<Preset>,
    pub d: Option<i64>,
    pub c2h: Option<i64>,
    pub dimh: Option<i64>,
    pub castelnuovo_known: Option<bool>,
}

const FIELDS: [&str; 5] = ["preset", "d", "c2h", "dimh", "castelnuovo_known"];

impl GeometryConfig {
    pub fn parse(text: &str) -> Result<Self, Error> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_key_value(text)
        }
    }

    fn parse_json(text: &str) -> Result<Self, Error> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::config("<file>", e.to_string()))?;
        let Value::Object(map) = value else {
            return Err(Error::config("<file>", "expected a JSON object"));
        };
        let mut cfg = GeometryConfig::default();
        for (key, v) in &map {
            let raw = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                Value::Bool(b) => b.to_string(),
                Value::Null => continue,
                _ => return Err(Error::config(key, "expected a scalar value")),
            };
            cfg.set(key, &raw)?;
        }
        Ok(cfg)
    }

    fn parse_key_value(text: &str) -> Result<Self, Error> {
        let mut cfg = GeometryConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config("<file>", format!("line {}: expected key = value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim().trim_matches('"'))?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, raw: &str) -> Result<(), Error> {
        let int = |field: &str| {
            raw.parse::<i64>()
                .map_err(|_| Error::config(field, format!("expected an integer, got {raw:?}")))
        };
        match key {
            "preset" => self.preset = Some(raw.parse().map_err(|e: Error| Error::config(key, e.to_string()))?),
            "d" => self.d = Some(int(key)?),
            "c2h" => self.c2h = Some(int(key)?),
            "dimh" => self.dimh = Some(int(key)?),
            "castelnuovo_known" => {
                self.castelnuovo_known = Some(raw.parse().map_err(|_| {
                    Error::config(key, format!("expected true or false, got {raw:?}"))
                })?)
            }
            other => {
                return Err(Error::config(
                    other,
                    format!("unknown field (expected one of {})", FIELDS.join(", ")),
                ))
            }
        }
        Ok(())
    }

    /// Overlays `flags` on top of `self`; any geometry given on the command
    /// line replaces the other geometry group from the file.
    pub fn overlay(mut self, flags: &GeometryConfig) -> GeometryConfig {
        let flag_custom = flags.d.is_some() || flags.c2h.is_some();
        if flags.preset.is_some() {
            self.d = None;
            self.c2h = None;
            self.dimh = None;
            self.castelnuovo_known = None;
        } else if flag_custom {
            self.preset = None;
        }
        GeometryConfig {
            preset: flags.preset.or(self.preset),
            d: flags.d.or(self.d),
            c2h: flags.c2h.or(self.c2h),
            dimh: flags.dimh.or(self.dimh),
            castelnuovo_known: flags.castelnuovo_known.or(self.castelnuovo_known),
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == GeometryConfig::default()
    }

    /// Resolves to a geometry. Exactly one of `preset` or the custom group
    /// (`d`, `c2h`, optional `dimh`, `castelnuovo_known`) must be present.
    pub fn resolve(&self) -> Result<(Option<Preset>, PolarizedCY3), Error> {
        let custom = self.d.is_some()
            || self.c2h.is_some()
            || self.dimh.is_some()
            || self.castelnuovo_known.is_some();
        match (self.preset, custom) {
            (Some(_), true) => Err(Error::config(
                "preset",
                "give either a preset or a custom geometry (d, c2h, dimh, castelnuovo_known), not both",
            )),
            (Some(p), false) => Ok((Some(p), PolarizedCY3::from_preset(p))),
            (None, false) => Err(Error::config(
                "preset",
                "no geometry given (use a preset or d and c2h)",
            )),
            (None, true) => {
                let d = self.d.ok_or_else(|| Error::config("d", "missing"))?;
                let c2h = self.c2h.ok_or_else(|| Error::config("c2h", "missing"))?;
                let d = u32::try_from(d)
                    .ok()
                    .filter(|&d| d > 0)
                    .ok_or_else(|| Error::config("d", format!("must be a positive integer, got {d}")))?;
                let geom = PolarizedCY3::new(
                    d,
                    c2h,
                    self.dimh,
                    self.castelnuovo_known.unwrap_or(false),
                )?;
                Ok((None, geom))
            }
        }
    }
}
