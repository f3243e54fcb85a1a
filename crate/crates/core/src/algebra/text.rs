//! Line-oriented algebra files.
//!
//! ```text
//! # comment
//! name heisenberg
//! generator X
//! generator Y
//! generator Z
//! constant m 1/2
//! bracket X Y Z 1
//! ```
//!
//! `bracket i j k c` adds `c X_k` to `[X_i, X_j]`; the mirrored entry is
//! implied. Listing both orders is allowed if they agree up to sign.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{AlgebraSpec, LieElement};
use crate::constants::Constants;
use crate::poly::{fmt_rational, parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct AlgebraParseError {
    pub line: usize,
    pub message: String,
}

pub fn parse_algebra(text: &str) -> Result<AlgebraSpec, AlgebraParseError> {
    let mut name = String::from("custom");
    let mut labels: Vec<String> = Vec::new();
    let mut constants = Constants::default();
    let mut entries: BTreeMap<(usize, usize), LieElement> = BTreeMap::new();
    let mut pending: Vec<(usize, [String; 3], Rational)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |message: String| AlgebraParseError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "name" if words.len() == 2 => name = words[1].to_string(),
            "generator" if words.len() == 2 => {
                if labels.iter().any(|l| l == words[1]) {
                    return Err(err(format!("duplicate generator {:?}", words[1])));
                }
                labels.push(words[1].to_string());
            }
            "constant" if words.len() == 3 => constants
                .set_str(words[1], words[2])
                .map_err(|e| err(e.to_string()))?,
            "bracket" if words.len() == 5 => {
                let c = parse_rational(words[4]).map_err(|e| err(e.to_string()))?;
                pending.push((
                    line,
                    [words[1].to_string(), words[2].to_string(), words[3].to_string()],
                    c,
                ));
            }
            other => {
                return Err(err(format!(
                    "expected `name`, `generator`, `constant` or `bracket` with the right number of fields, got {other:?}"
                )))
            }
        }
    }
    if labels.is_empty() {
        return Err(AlgebraParseError {
            line: 0,
            message: "no generators declared".into(),
        });
    }
    let index = |line: usize, l: &str| {
        labels
            .iter()
            .position(|x| x == l)
            .ok_or_else(|| AlgebraParseError {
                line,
                message: format!("unknown generator {l:?}"),
            })
    };
    for (line, [a, b, k], c) in pending {
        let (i, j, k) = (index(line, &a)?, index(line, &b)?, index(line, &k)?);
        entries.entry((i, j)).or_default().add_term(k, c);
    }
    let n = labels.len();
    let mut alg = AlgebraSpec::new(&name, labels, constants);
    let mut seen = vec![vec![false; n]; n];
    for ((i, j), e) in entries {
        alg.set_ordered(i, j, e, &mut seen);
    }
    Ok(alg)
}

pub(crate) fn write_algebra(alg: &AlgebraSpec) -> String {
    let mut s = format!("name {}\n", alg.name);
    for l in alg.labels() {
        s.push_str(&format!("generator {l}\n"));
    }
    let k = &alg.constants;
    for (n, v) in [
        ("m", &k.m),
        ("q", &k.q),
        ("g", &k.g),
        ("kappa", &k.kappa),
        ("hbar", &k.hbar),
        ("c", &k.c),
    ] {
        s.push_str(&format!("constant {n} {}\n", fmt_rational(v)));
    }
    for (i, j, e) in alg.nonzero_brackets() {
        for (k, c) in e.terms() {
            s.push_str(&format!(
                "bracket {} {} {} {}\n",
                alg.label(i),
                alg.label(j),
                alg.label(k),
                fmt_rational(c)
            ));
        }
    }
    s
}
