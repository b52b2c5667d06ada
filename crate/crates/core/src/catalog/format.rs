//! Parser for `.grp` catalog files.
//!
//! ```text
//! # comments run to end of line
//! group C7:C3            # starts a record; names must be unique
//! semidirect C7          # base group, another record's name
//! aut g0^2               # one automorphism: image of each base generator,
//!                        # separated by ';', as a word or a cycle string
//! flags solvable         # optional: simple, solvable
//! cap 200000             # optional per-record enumeration cap
//! end
//!
//! group S4
//! builder symmetric 4    # cyclic n | dihedral n | symmetric n |
//!                        # alternating n | psl2 q | psl2-gamma q e
//! end
//!
//! group V4
//! degree 4
//! gen (0 1)(2 3)
//! gen (0 2)(1 3)
//! end
//! ```

use std::path::Path;

use crate::error::{Error, Result};
use crate::perm::{AutomorphismSpec, GeneratorImage, Perm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builder {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Psl2(u64),
    Psl2Gamma(u64, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Generators { degree: usize, generators: Vec<Perm> },
    Builder(Builder),
    Semidirect { base: String, automorphisms: Vec<Vec<ImageText>> },
}

/// A generator image as written; cycle strings wait for the base degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImageText {
    Word(Vec<(usize, i64)>),
    Cycles(String),
}

/// Resolves written images against a base group of the given degree.
pub fn automorphism_spec(images: &[ImageText], degree: usize) -> Result<AutomorphismSpec> {
    let mut out = Vec::with_capacity(images.len());
    for img in images {
        out.push(match img {
            ImageText::Word(w) => GeneratorImage::Word(w.clone()),
            ImageText::Cycles(s) => GeneratorImage::Perm(Perm::parse_cycles(degree, s)?),
        });
    }
    Ok(AutomorphismSpec::new(out))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub simple: bool,
    pub solvable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: EntryKind,
    pub flags: Flags,
    pub cap: Option<usize>,
    pub file: String,
    pub line: usize,
}

#[derive(Default)]
struct Draft {
    name: String,
    line: usize,
    degree: Option<usize>,
    gens: Vec<(usize, String)>,
    builder: Option<Builder>,
    base: Option<String>,
    auts: Vec<Vec<ImageText>>,
    flags: Flags,
    cap: Option<usize>,
}

pub fn parse_file(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path)?;
    parse_str(&path.display().to_string(), &text)
}

pub fn parse_str(file: &str, text: &str) -> Result<Vec<CatalogEntry>> {
    let err = |line: usize, msg: String| Error::Parse {
        file: file.to_string(),
        line,
        msg,
    };
    let mut out = Vec::new();
    let mut draft: Option<Draft> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((content, ""));
        if key == "group" {
            if draft.is_some() {
                return Err(err(line, "'group' inside an unfinished record".into()));
            }
            if rest.is_empty() || rest.contains(char::is_whitespace) {
                return Err(err(line, format!("bad group name {rest:?}")));
            }
            draft = Some(Draft {
                name: rest.to_string(),
                line,
                ..Draft::default()
            });
            continue;
        }
        let Some(d) = draft.as_mut() else {
            return Err(err(line, format!("'{key}' outside a group record")));
        };
        match key {
            "degree" => {
                d.degree = Some(parse_num(rest).map_err(|m| err(line, m))?);
            }
            "gen" => d.gens.push((line, rest.to_string())),
            "builder" => {
                if d.builder.is_some() {
                    return Err(err(line, "second builder line".into()));
                }
                d.builder = Some(parse_builder(rest).map_err(|m| err(line, m))?);
            }
            "semidirect" => {
                if rest.is_empty() {
                    return Err(err(line, "semidirect needs a base group name".into()));
                }
                d.base = Some(rest.to_string());
            }
            "aut" => d.auts.push(parse_aut(rest).map_err(|m| err(line, m))?),
            "flags" => {
                for f in rest.split_whitespace() {
                    match f {
                        "simple" => d.flags.simple = true,
                        "solvable" => d.flags.solvable = true,
                        other => return Err(err(line, format!("unknown flag {other:?}"))),
                    }
                }
            }
            "cap" => d.cap = Some(parse_num(rest).map_err(|m| err(line, m))?),
            "end" => {
                let d = draft.take().unwrap();
                out.push(finish(file, d).map_err(|(l, m)| err(l, m))?);
            }
            other => return Err(err(line, format!("unknown keyword {other:?}"))),
        }
    }
    if let Some(d) = draft {
        return Err(err(d.line, format!("record {:?} has no 'end'", d.name)));
    }
    Ok(out)
}

fn finish(file: &str, d: Draft) -> std::result::Result<CatalogEntry, (usize, String)> {
    let kinds = [!d.gens.is_empty() || d.degree.is_some(), d.builder.is_some(), d.base.is_some()];
    if kinds.iter().filter(|&&k| k).count() != 1 {
        return Err((
            d.line,
            "a record needs exactly one of: degree/gen, builder, semidirect".into(),
        ));
    }
    if !d.auts.is_empty() && d.base.is_none() {
        return Err((d.line, "'aut' lines require 'semidirect'".into()));
    }
    let kind = if let Some(b) = d.builder {
        EntryKind::Builder(b)
    } else if let Some(base) = d.base {
        EntryKind::Semidirect {
            base,
            automorphisms: d.auts,
        }
    } else {
        let Some(degree) = d.degree else {
            return Err((d.line, "generator records need a 'degree' line".into()));
        };
        let mut generators = Vec::new();
        for (line, s) in d.gens {
            generators.push(Perm::parse_cycles(degree, &s).map_err(|e| (line, e.to_string()))?);
        }
        EntryKind::Generators { degree, generators }
    };
    Ok(CatalogEntry {
        name: d.name,
        kind,
        flags: d.flags,
        cap: d.cap,
        file: file.to_string(),
        line: d.line,
    })
}

fn parse_num<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String> {
    s.trim().parse().map_err(|_| format!("expected a number, found {s:?}"))
}

fn parse_builder(s: &str) -> std::result::Result<Builder, String> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    let arg = |i: usize| -> std::result::Result<u64, String> {
        parts
            .get(i)
            .ok_or_else(|| format!("builder {:?} is missing an argument", parts[0]))
            .and_then(|a| parse_num(a))
    };
    let expect_len = |n: usize| {
        if parts.len() == n {
            Ok(())
        } else {
            Err(format!("builder {:?} takes {} argument(s)", parts[0], n - 1))
        }
    };
    let Some(&tag) = parts.first() else {
        return Err("empty builder".into());
    };
    let b = match tag {
        "cyclic" => Builder::Cyclic(arg(1)? as usize),
        "dihedral" => Builder::Dihedral(arg(1)? as usize),
        "symmetric" => Builder::Symmetric(arg(1)? as usize),
        "alternating" => Builder::Alternating(arg(1)? as usize),
        "psl2" => Builder::Psl2(arg(1)?),
        "psl2-gamma" => {
            expect_len(3)?;
            Builder::Psl2Gamma(arg(1)?, arg(2)? as u32)
        }
        other => return Err(format!("unknown builder {other:?}")),
    };
    if !matches!(b, Builder::Psl2Gamma(..)) {
        expect_len(2)?;
    }
    Ok(b)
}

/// `g0^2 g1^-1; (0 1 2)` lists one image per base generator.
fn parse_aut(s: &str) -> std::result::Result<Vec<ImageText>, String> {
    let mut images = Vec::new();
    for part in s.split(';').map(str::trim) {
        if part.is_empty() {
            return Err("empty generator image".into());
        }
        if part.starts_with('(') {
            // syntax only; the base degree is checked at build time
            let max = part
                .split(|c: char| !c.is_ascii_digit())
                .filter_map(|t| t.parse::<usize>().ok())
                .max()
                .unwrap_or(0);
            Perm::parse_cycles(max + 1, part).map_err(|e| e.to_string())?;
            images.push(ImageText::Cycles(part.to_string()));
        } else {
            let mut word = Vec::new();
            for tok in part.split_whitespace() {
                let (g, e) = tok.split_once('^').unwrap_or((tok, "1"));
                let Some(idx) = g.strip_prefix('g') else {
                    return Err(format!("bad word token {tok:?}"));
                };
                let idx: usize = parse_num(idx)?;
                let e: i64 = parse_num(e)?;
                word.push((idx, e));
            }
            images.push(ImageText::Word(word));
        }
    }
    Ok(images)
}
