//! Initial-condition mini-language.
//!
//! Three forms cover every probe and solve need:
//!
//! * `random:s=<σ>:seed=<k>` — Hermitian complex-Gaussian coefficients with
//!   radial decay `(1+m²+n²)^{-σ/2}`. Optional keys: `norm=<v>:norm_s=<s>`
//!   (rescale to `‖·‖_{H^{norm_s}} = v`) and `mean0=<bool>` (zero the `m = 0`
//!   row; default true).
//! * `modes:(m,n)=<re>+<im>i,...` — explicit coefficients, Hermitian
//!   completion applied.
//! * `file:<path>` — an SPF2 field.

use num_complex::Complex;
use shrira_core::grid::{FrequencyIndex, GridSpec};
use shrira_core::Field64;

#[derive(Debug)]
pub struct IcError(pub String);

impl std::fmt::Display for IcError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid initial condition: {}", self.0)
    }
}

impl std::error::Error for IcError {}

pub fn parse_ic(input: &str, grid: GridSpec) -> Result<Field64, IcError> {
    let (kind, rest) = input
        .split_once(':')
        .ok_or_else(|| IcError(format!("expected <kind>:<args>, got {input:?}")))?;
    match kind {
        "random" => parse_random(rest, grid),
        "modes" => parse_modes(rest, grid),
        "file" => shrira_core::io::load_field(rest).map_err(|e| IcError(e.to_string())),
        other => Err(IcError(format!(
            "unknown kind {other:?}; expected random, modes or file"
        ))),
    }
}

fn parse_random(args: &str, grid: GridSpec) -> Result<Field64, IcError> {
    let mut sigma: Option<f64> = None;
    let mut seed: Option<u64> = None;
    let mut norm: Option<f64> = None;
    let mut norm_s: f64 = 0.0;
    let mut mean0 = true;
    for part in args.split(':') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| IcError(format!("expected key=value, got {part:?}")))?;
        match key {
            "s" => sigma = Some(parse_num(value)?),
            "seed" => {
                seed = Some(
                    value
                        .parse()
                        .map_err(|_| IcError(format!("bad seed {value:?}")))?,
                )
            }
            "norm" => norm = Some(parse_num(value)?),
            "norm_s" => norm_s = parse_num(value)?,
            "mean0" => {
                mean0 = value
                    .parse()
                    .map_err(|_| IcError(format!("bad bool {value:?}")))?
            }
            other => return Err(IcError(format!("unknown random key {other:?}"))),
        }
    }
    let sigma = sigma.ok_or_else(|| IcError("random needs s=<decay>".into()))?;
    let seed = seed.ok_or_else(|| IcError("random needs seed=<k>".into()))?;
    let mut rng = shrira_lab::sampling::sample_rng(seed, 0);
    let f = shrira_lab::sampling::random_field(grid, sigma, mean0, &mut rng);
    Ok(match norm {
        Some(target) => shrira_lab::sampling::normalize_sobolev(&f, norm_s, target),
        None => f,
    })
}

fn parse_modes(args: &str, grid: GridSpec) -> Result<Field64, IcError> {
    let mut list = Vec::new();
    for entry in split_outside_parens(args) {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let (idx_part, value_part) = entry
            .split_once('=')
            .ok_or_else(|| IcError(format!("expected (m,n)=value, got {entry:?}")))?;
        let idx = parse_index(idx_part)?;
        let value = parse_complex(value_part)?;
        list.push((idx, value));
    }
    if list.is_empty() {
        return Err(IcError("modes list is empty".into()));
    }
    Field64::synthesize(&list, grid, true).map_err(|e| IcError(e.to_string()))
}

/// Splits on commas that are not nested inside parentheses, so entries like
/// `(1,0)=0.5` keep their index intact.
fn split_outside_parens(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_index(s: &str) -> Result<FrequencyIndex, IcError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| IcError(format!("expected (m,n), got {s:?}")))?;
    let (m, n) = inner
        .split_once(',')
        .ok_or_else(|| IcError(format!("expected (m,n), got {s:?}")))?;
    Ok(FrequencyIndex::new(
        m.trim()
            .parse()
            .map_err(|_| IcError(format!("bad m in {s:?}")))?,
        n.trim()
            .parse()
            .map_err(|_| IcError(format!("bad n in {s:?}")))?,
    ))
}

fn parse_num(s: &str) -> Result<f64, IcError> {
    s.parse().map_err(|_| IcError(format!("bad number {s:?}")))
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (decimal or scientific notation).
pub fn parse_complex(s: &str) -> Result<Complex<f64>, IcError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(IcError("empty complex literal".into()));
    }
    if let Ok(re) = s.parse::<f64>() {
        return Ok(Complex::new(re, 0.0));
    }
    let body = s
        .strip_suffix('i')
        .ok_or_else(|| IcError(format!("bad complex literal {s:?}")))?;
    // split at the last +/- that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    match split {
        Some(i) => {
            let re: f64 = body[..i]
                .parse()
                .map_err(|_| IcError(format!("bad real part in {s:?}")))?;
            let im_str = &body[i..];
            let im: f64 = if im_str == "+" {
                1.0
            } else if im_str == "-" {
                -1.0
            } else {
                im_str
                    .parse()
                    .map_err(|_| IcError(format!("bad imaginary part in {s:?}")))?
            };
            Ok(Complex::new(re, im))
        }
        None => {
            let im: f64 = if body.is_empty() {
                1.0
            } else if body == "-" {
                -1.0
            } else {
                body.parse()
                    .map_err(|_| IcError(format!("bad imaginary literal {s:?}")))?
            };
            Ok(Complex::new(0.0, im))
        }
    }
}
