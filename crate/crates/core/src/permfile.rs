//! Plain-text permutation generator files.
//!
//! ```text
//! # comment
//! degree 4
//! 2 1 3 4
//! 2 3 4 1
//! ```
//!
//! Images are 1-based; `#` starts a comment anywhere on a line.

use crate::error::{Error, Result};
use crate::perm::{Perm, MAX_DEGREE};

pub fn parse(text: &str) -> Result<(usize, Vec<Perm>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse(format!("line {}: {msg}", lineno + 1));
        match degree {
            None => {
                let mut it = line.split_whitespace();
                if it.next() != Some("degree") {
                    return Err(err("expected `degree N`".into()));
                }
                let n: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("bad degree".into()))?;
                if it.next().is_some() {
                    return Err(err("trailing tokens after degree".into()));
                }
                if n == 0 || n > MAX_DEGREE {
                    return Err(Error::DegreeCapExceeded { degree: n, cap: MAX_DEGREE });
                }
                degree = Some(n);
            }
            Some(n) => {
                let imgs = line
                    .split_whitespace()
                    .map(|t| match t.parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(err(format!("bad image `{t}`"))),
                    })
                    .collect::<Result<Vec<usize>>>()?;
                if imgs.len() != n {
                    return Err(err(format!("expected {n} images, found {}", imgs.len())));
                }
                gens.push(Perm::from_images(imgs).map_err(|e| err(e.to_string()))?);
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::Parse("missing `degree` line".into()))?;
    Ok((degree, gens))
}

pub fn render(degree: usize, gens: &[Perm]) -> String {
    let mut out = format!("degree {degree}\n");
    for g in gens {
        let imgs: Vec<String> = g.to_one_based().iter().map(|x| x.to_string()).collect();
        out.push_str(&imgs.join(" "));
        out.push('\n');
    }
    out
}
