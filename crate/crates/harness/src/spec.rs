//! Experiment description: flat `key = value` text, overridable from the CLI.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use chdd_core::dn::StripSolve;
use chdd_core::YBoundary;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dn,
    Nn,
    Monodomain,
}

impl FromStr for Method {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dn" => Ok(Method::Dn),
            "nn" => Ok(Method::Nn),
            "monodomain" => Ok(Method::Monodomain),
            _ => Err(HarnessError::Spec(format!("unknown method `{s}`"))),
        }
    }
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Dn => "dn",
            Method::Nn => "nn",
            Method::Monodomain => "monodomain",
        }
    }
}

/// Shape of the frozen concentration `c = uⁿ` used for the linear step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CProfile {
    /// `c·(1 + 0.05 cos(2π(x − x₀)/L))`, times `1 + 0.05 cos(πy/L_y)` on strips.
    Smooth,
    /// The x-factor only, so strip problems split into `y`-modes.
    SmoothX,
    Constant,
}

impl FromStr for CProfile {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smooth" => Ok(CProfile::Smooth),
            "smooth-x" => Ok(CProfile::SmoothX),
            "constant" => Ok(CProfile::Constant),
            _ => Err(HarnessError::Spec(format!("unknown c profile `{s}`"))),
        }
    }
}

impl CProfile {
    pub fn as_str(&self) -> &'static str {
        match self {
            CProfile::Smooth => "smooth",
            CProfile::SmoothX => "smooth-x",
            CProfile::Constant => "constant",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub method: Method,
    pub dim: usize,
    /// `x₀, x₁` and for strips also `y₀, y₁`.
    pub domain: Vec<f64>,
    /// Interior breakpoints; empty means use `sd`.
    pub split: Vec<f64>,
    pub sd: usize,
    pub unequal: bool,
    pub swap: bool,
    pub theta: f64,
    pub h: f64,
    pub hy: f64,
    pub dt: f64,
    pub eps: f64,
    pub c: f64,
    pub c_profile: CProfile,
    pub y_boundary: YBoundary,
    pub strip_solve: StripSolve,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// Time steps for `monodomain`.
    pub steps: usize,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            method: Method::Dn,
            dim: 1,
            domain: vec![0.0, 1.0],
            split: Vec::new(),
            sd: 2,
            unequal: false,
            swap: false,
            theta: 0.5,
            h: 1.0 / 64.0,
            hy: 1.0 / 32.0,
            dt: 1e-6,
            eps: 0.01,
            c: 1.0,
            c_profile: CProfile::Smooth,
            y_boundary: YBoundary::Neumann,
            strip_solve: StripSolve::Auto,
            tol: 1e-6,
            max_iter: 500,
            seed: 42,
            steps: 200,
            out: None,
        }
    }
}

fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| HarnessError::Spec(format!("bad value `{v}` for `{key}`")))
}

/// Accepts `1e-3`, `0.25` and fractions such as `1/64`.
pub fn parse_real(key: &str, v: &str) -> Result<f64> {
    match v.split_once('/') {
        Some((a, b)) => {
            let (a, b): (f64, f64) = (num(key, a.trim())?, num(key, b.trim())?);
            Ok(a / b)
        }
        None => num(key, v),
    }
}

fn list(key: &str, v: &str) -> Result<Vec<f64>> {
    if v.trim().is_empty() {
        return Ok(Vec::new());
    }
    v.split(',').map(|s| parse_real(key, s.trim())).collect()
}

fn bool_of(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(HarnessError::Spec(format!("bad value `{v}` for `{key}`"))),
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

impl ExperimentSpec {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "method" => self.method = v.parse()?,
            "dim" => self.dim = num(key, v)?,
            "domain" => self.domain = list(key, v)?,
            "split" => self.split = list(key, v)?,
            "sd" => self.sd = num(key, v)?,
            "unequal" => self.unequal = bool_of(key, v)?,
            "swap" => self.swap = bool_of(key, v)?,
            "theta" => self.theta = parse_real(key, v)?,
            "h" | "hx" => self.h = parse_real(key, v)?,
            "hy" => self.hy = parse_real(key, v)?,
            "dt" => self.dt = parse_real(key, v)?,
            "eps" => self.eps = parse_real(key, v)?,
            "c" => self.c = parse_real(key, v)?,
            "c_profile" => self.c_profile = v.parse()?,
            "y_boundary" => {
                self.y_boundary = match v {
                    "neumann" => YBoundary::Neumann,
                    "dirichlet" => YBoundary::Dirichlet,
                    _ => return Err(HarnessError::Spec(format!("bad value `{v}` for `y_boundary`"))),
                }
            }
            "strip_solve" => {
                self.strip_solve = match v {
                    "direct" => StripSolve::Direct,
                    "modal" => StripSolve::Modal,
                    "auto" => StripSolve::Auto,
                    _ => return Err(HarnessError::Spec(format!("bad value `{v}` for `strip_solve`"))),
                }
            }
            "tol" => self.tol = parse_real(key, v)?,
            "max_iter" => self.max_iter = num(key, v)?,
            "seed" => self.seed = num(key, v)?,
            "steps" => self.steps = num(key, v)?,
            "out" => self.out = if v.is_empty() { None } else { Some(PathBuf::from(v)) },
            k => return Err(HarnessError::Spec(format!("unknown key `{k}`"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`; `#` starts a comment.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| HarnessError::Spec(format!("line {}: expected `key = value`", n + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_config(text: &str) -> Result<Self> {
        let mut s = Self::default();
        s.apply_config(text)?;
        s.validate()?;
        Ok(s)
    }

    /// Every field as `key = value` lines; parsing the result gives `self` back.
    pub fn to_config(&self) -> String {
        let mut o = String::new();
        let yb = match self.y_boundary {
            YBoundary::Neumann => "neumann",
            YBoundary::Dirichlet => "dirichlet",
        };
        let ss = match self.strip_solve {
            StripSolve::Direct => "direct",
            StripSolve::Modal => "modal",
            StripSolve::Auto => "auto",
        };
        let _ = writeln!(o, "method = {}", self.method.as_str());
        let _ = writeln!(o, "dim = {}", self.dim);
        let _ = writeln!(o, "domain = {}", join(&self.domain));
        let _ = writeln!(o, "split = {}", join(&self.split));
        let _ = writeln!(o, "sd = {}", self.sd);
        let _ = writeln!(o, "unequal = {}", self.unequal);
        let _ = writeln!(o, "swap = {}", self.swap);
        let _ = writeln!(o, "theta = {:?}", self.theta);
        let _ = writeln!(o, "h = {:?}", self.h);
        let _ = writeln!(o, "hy = {:?}", self.hy);
        let _ = writeln!(o, "dt = {:?}", self.dt);
        let _ = writeln!(o, "eps = {:?}", self.eps);
        let _ = writeln!(o, "c = {:?}", self.c);
        let _ = writeln!(o, "c_profile = {}", self.c_profile.as_str());
        let _ = writeln!(o, "y_boundary = {yb}");
        let _ = writeln!(o, "strip_solve = {ss}");
        let _ = writeln!(o, "tol = {:?}", self.tol);
        let _ = writeln!(o, "max_iter = {}", self.max_iter);
        let _ = writeln!(o, "seed = {}", self.seed);
        let _ = writeln!(o, "steps = {}", self.steps);
        let _ = writeln!(o, "out = {}", self.out.as_ref().map(|p| p.display().to_string()).unwrap_or_default());
        o
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HarnessError::Spec(m));
        if !(self.tol > 0.0) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.dim != 1 && self.dim != 2 {
            return bad(format!("dim must be 1 or 2, got {}", self.dim));
        }
        if self.domain.len() != 2 * self.dim {
            return bad(format!("domain needs {} values for dim {}", 2 * self.dim, self.dim));
        }
        if self.domain[1] <= self.domain[0] || (self.dim == 2 && self.domain[3] <= self.domain[2]) {
            return bad("domain extents must be increasing".into());
        }
        for (k, v) in [("h", self.h), ("hy", self.hy), ("dt", self.dt), ("eps", self.eps)] {
            if !(v > 0.0) || !v.is_finite() {
                return bad(format!("{k} must be positive"));
            }
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return bad(format!("theta must lie in (0, 1), got {}", self.theta));
        }
        match self.method {
            Method::Dn => {
                let parts = if self.split.is_empty() { self.sd } else { self.split.len() + 1 };
                if parts != 2 {
                    return bad("dn needs exactly one interface".into());
                }
            }
            Method::Nn => {
                if self.split.is_empty() && self.sd < 2 {
                    return bad("nn needs at least two subdomains".into());
                }
            }
            Method::Monodomain => {}
        }
        if self.split.iter().any(|&x| x <= self.domain[0] || x >= self.domain[1]) {
            return bad("split points must lie inside the domain".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let mut s = ExperimentSpec { method: Method::Nn, dim: 2, domain: vec![0.0, 16.0, 0.0, 1.0], ..Default::default() };
        s.set("h", "1/512").unwrap();
        s.set("split", "1.5, 3").unwrap();
        s.set("out", "runs/a").unwrap();
        s.set("strip_solve", "modal").unwrap();
        let back = ExperimentSpec::from_config(&s.to_config()).unwrap();
        assert_eq!(s, back);
        assert_eq!(back.h, 1.0 / 512.0);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(ExperimentSpec::from_config("tol = 0").is_err());
        assert!(ExperimentSpec::from_config("theta = 1").is_err());
        assert!(ExperimentSpec::from_config("method = dn\nsd = 3").is_err());
        assert!(ExperimentSpec::from_config("dim = 2").is_err());
        assert!(ExperimentSpec::from_config("colour = red").is_err());
        assert!(ExperimentSpec::from_config("no equals sign").is_err());
        assert!(ExperimentSpec::from_config("split = 2").is_err());
    }

    #[test]
    fn defaults() {
        let s = ExperimentSpec::from_config("# nothing\n\n").unwrap();
        assert_eq!(s.eps, 0.01);
        assert_eq!(s.tol, 1e-6);
    }
}
