//! Line-oriented solution specs:
//!
//! ```text
//! mass 1
//! kind DIRAC
//! # branch kx ky kz re(amp) im(amp)
//! 1 0.5 0 -1 0.3 0.7
//! ```

use std::fmt::Write as _;

use relwave_core::linalg::c;
use relwave_core::solutions::{Mode, SolutionKind, SolutionSpec};

use crate::Error;

pub fn parse_spec(text: &str) -> Result<SolutionSpec, Error> {
    let mut mass = None;
    let mut kind = None;
    let mut modes = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let parts: Vec<&str> = body.split_whitespace().collect();
        match parts[0] {
            "mass" => {
                let v = parts.get(1).and_then(|s| s.parse::<f64>().ok());
                mass = Some(v.ok_or_else(|| err("expected `mass <value>`".into()))?);
            }
            "kind" => {
                let v = parts.get(1).and_then(|s| SolutionKind::from_name(s));
                kind = Some(v.ok_or_else(|| err("expected `kind <SF|DIRAC|GENMAXWELL>`".into()))?);
            }
            _ => {
                if parts.len() != 6 {
                    return Err(err(format!("expected 6 fields, found {}", parts.len())));
                }
                let branch: u8 = parts[0]
                    .parse()
                    .map_err(|_| err(format!("bad branch `{}`", parts[0])))?;
                let mut v = [0.0; 5];
                for (slot, s) in v.iter_mut().zip(&parts[1..]) {
                    *slot = s.parse().map_err(|_| err(format!("bad number `{s}`")))?;
                }
                modes.push(Mode {
                    k: [v[0], v[1], v[2]],
                    branch,
                    amplitude: c(v[3], v[4]),
                });
            }
        }
    }
    let mass = mass.ok_or(Error::Parse {
        line: 0,
        msg: "missing `mass` header".into(),
    })?;
    let kind = kind.ok_or(Error::Parse {
        line: 0,
        msg: "missing `kind` header".into(),
    })?;
    Ok(SolutionSpec::new(kind, mass, modes)?)
}

pub fn format_spec(spec: &SolutionSpec) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "mass {}", spec.mass());
    let _ = writeln!(s, "kind {}", spec.kind().name());
    for m in spec.modes() {
        let _ = writeln!(
            s,
            "{} {} {} {} {} {}",
            m.branch, m.k[0], m.k[1], m.k[2], m.amplitude.re, m.amplitude.im
        );
    }
    s
}
