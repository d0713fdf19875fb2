//! Tiny waveform expression language for time-dependent scalar coefficients.
//!
//! Grammar: one or more terms joined by `+`, each term one of
//!
//! ```text
//! const:c        -> c
//! cos:a,f        -> a * cos(f * t)         (optional third arg: phase)
//! cos:a,f,p      -> a * cos(f * t + p)
//! sin:a,f[,p]    -> a * sin(f * t + p)
//! exp:a,r        -> a * exp(r * t)
//! ```
//!
//! Example: `const:1 + cos:2,10` is the rate 1 + 2·cos(10t).

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term {
    Const(f64),
    Cos { amp: f64, freq: f64, phase: f64 },
    Sin { amp: f64, freq: f64, phase: f64 },
    Exp { amp: f64, rate: f64 },
}

impl Term {
    fn eval(&self, t: f64) -> f64 {
        match *self {
            Term::Const(c) => c,
            Term::Cos { amp, freq, phase } => amp * (freq * t + phase).cos(),
            Term::Sin { amp, freq, phase } => amp * (freq * t + phase).sin(),
            Term::Exp { amp, rate } => amp * (rate * t).exp(),
        }
    }
}

/// A parsed waveform: the sum of its terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    terms: Vec<Term>,
}

impl Waveform {
    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    /// True when every term is a constant (the waveform cannot vary in time).
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| matches!(t, Term::Const(_)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

fn err(msg: impl Into<String>) -> ParseError {
    ParseError(msg.into())
}

fn parse_args(name: &str, args: &str, min: usize, max: usize) -> Result<Vec<f64>, ParseError> {
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    if parts.len() < min || parts.len() > max {
        let counts = if min == max {
            format!("{min}")
        } else {
            format!("{min} to {max}")
        };
        return Err(err(format!(
            "`{name}` takes {counts} comma-separated numbers, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| err(format!("`{name}`: not a number: `{p}`")))
        })
        .collect()
}

pub fn parse(text: &str) -> Result<Waveform, ParseError> {
    let mut terms = Vec::new();
    for raw in text.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(err("empty term in waveform (stray `+`?)"));
        }
        let (name, args) = term
            .split_once(':')
            .ok_or_else(|| err(format!("term `{term}` is missing `:` (e.g. const:1)")))?;
        let name = name.trim();
        let parsed = match name {
            "const" => {
                let a = parse_args(name, args, 1, 1)?;
                Term::Const(a[0])
            }
            "cos" | "sin" => {
                let a = parse_args(name, args, 2, 3)?;
                let (amp, freq) = (a[0], a[1]);
                let phase = a.get(2).copied().unwrap_or(0.0);
                if name == "cos" {
                    Term::Cos { amp, freq, phase }
                } else {
                    Term::Sin { amp, freq, phase }
                }
            }
            "exp" => {
                let a = parse_args(name, args, 2, 2)?;
                Term::Exp {
                    amp: a[0],
                    rate: a[1],
                }
            }
            other => {
                return Err(err(format!(
                    "unknown term `{other}` (expected const, cos, sin, or exp)"
                )))
            }
        };
        terms.push(parsed);
    }
    if terms.is_empty() {
        return Err(err("empty waveform"));
    }
    Ok(Waveform { terms })
}
