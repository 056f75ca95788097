//! Plain-text manifests: one block per check.
//!
//! ```text
//! # comment
//! check sylow.sl2.q3
//!   op: sylow.type
//!   group: SL(2,3)
//!   expect: generalized-quaternion(8)
//!   source: derived
//!   anchor: Sylow subgroup of SL(2,3)
//!   tier: fast
//! ```
//!
//! Keys other than `op`, `expect`, `source`, `anchor` and `tier` are
//! parameters of the operation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Fast,
    Standard,
    Long,
}

impl FromStr for Tier {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Tier, String> {
        match s {
            "fast" => Ok(Tier::Fast),
            "standard" => Ok(Tier::Standard),
            "long" => Ok(Tier::Long),
            _ => Err(format!("unknown tier `{s}` (expected fast, standard or long)")),
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Fast => "fast",
            Tier::Standard => "standard",
            Tier::Long => "long",
        })
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated in the reference text.
    Reference,
    /// Computed independently.
    Derived,
    Trivial,
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Source, String> {
        match s {
            "reference" => Ok(Source::Reference),
            "derived" => Ok(Source::Derived),
            "trivial" => Ok(Source::Trivial),
            _ => Err(format!("unknown source `{s}` (expected reference, derived or trivial)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSpec {
    pub id: String,
    pub op: String,
    pub params: BTreeMap<String, String>,
    pub expect: String,
    pub source: Source,
    pub anchor: String,
    pub tier: Tier,
    #[serde(skip)]
    pub line: usize,
}

impl CheckSpec {
    pub fn param(&self, key: &str) -> Result<&str> {
        self.params
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Precondition(format!("check `{}` needs parameter `{key}`", self.id)))
    }

    pub fn param_usize(&self, key: &str) -> Result<usize> {
        let v = self.param(key)?;
        v.parse()
            .map_err(|_| Error::Precondition(format!("check `{}`: `{key}` = {v:?} is not a number", self.id)))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Manifest {
    /// In file order.
    pub checks: Vec<CheckSpec>,
}

impl Manifest {
    /// Checks sorted by id.
    pub fn sorted(&self) -> Vec<&CheckSpec> {
        let mut v: Vec<&CheckSpec> = self.checks.iter().collect();
        v.sort_by(|a, b| a.id.cmp(&b.id));
        v
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Block {
    id: String,
    line: usize,
    fields: BTreeMap<String, (String, usize, usize)>,
}

fn finish(b: Block) -> Result<CheckSpec> {
    let mut fields = b.fields;
    let mut take = |k: &str| {
        fields
            .remove(k)
            .ok_or_else(|| err(b.line, 1, format!("check `{}` is missing `{k}`", b.id)))
    };
    let op = take("op")?.0;
    let expect = take("expect")?.0;
    let (source, sl, sc) = take("source")?;
    let anchor = take("anchor")?.0;
    let (tier, tl, tc) = take("tier")?;
    let source = source.parse().map_err(|m| err(sl, sc, m))?;
    let tier = tier.parse().map_err(|m| err(tl, tc, m))?;
    Ok(CheckSpec {
        id: b.id,
        op,
        params: fields.into_iter().map(|(k, (v, _, _))| (k, v)).collect(),
        expect,
        source,
        anchor,
        tier,
        line: b.line,
    })
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "._-".contains(c))
}

/// Parses a manifest. Positions in errors are 1-based.
pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let mut checks: Vec<CheckSpec> = Vec::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut current: Option<Block> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.chars().count() - trimmed.chars().count();
        if indent == 0 {
            if let Some(b) = current.take() {
                checks.push(finish(b)?);
            }
            let rest = trimmed
                .strip_prefix("check")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| err(line, 1, "expected `check <id>`"))?;
            let id = rest.trim();
            let column = raw.find(id).map(|c| c + 1).unwrap_or(7);
            if !valid_id(id) {
                return Err(err(line, column, format!("invalid check id {id:?}")));
            }
            if let Some(first) = seen.insert(id.to_string(), line) {
                return Err(err(line, column, format!("duplicate check id `{id}` (first on line {first})")));
            }
            current = Some(Block {
                id: id.to_string(),
                line,
                fields: BTreeMap::new(),
            });
            continue;
        }
        let column = indent + 1;
        let Some(b) = current.as_mut() else {
            return Err(err(line, column, "field outside a check block"));
        };
        let (key, value) = trimmed
            .split_once(':')
            .ok_or_else(|| err(line, column, "expected `key: value`"))?;
        let key = key.trim_end();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(err(line, column, format!("invalid key {key:?}")));
        }
        let value = value.trim();
        let colon = raw.find(':').expect("split_once found a colon");
        let after = &raw[colon + 1..];
        let vcol = colon + 2 + (after.len() - after.trim_start().len());
        if b.fields.contains_key(key) {
            return Err(err(line, column, format!("duplicate key `{key}` in check `{}`", b.id)));
        }
        b.fields.insert(key.to_string(), (value.to_string(), line, vcol));
    }
    if let Some(b) = current.take() {
        checks.push(finish(b)?);
    }
    Ok(Manifest { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: &str = "check a.b\n  op: sylow.type\n  group: SL(2,3)\n  expect: x\n  source: derived\n  anchor: here\n  tier: fast\n";

    #[test]
    fn parses_a_block() {
        let m = parse_manifest(ONE).unwrap();
        assert_eq!(m.checks.len(), 1);
        assert_eq!(m.checks[0].params["group"], "SL(2,3)");
        assert_eq!(m.checks[0].tier, Tier::Fast);
    }

    #[test]
    fn empty_manifest() {
        assert!(parse_manifest("# nothing\n\n").unwrap().checks.is_empty());
    }

    #[test]
    fn duplicate_id() {
        let text = format!("{ONE}{ONE}");
        let Err(Error::Parse { line, column, .. }) = parse_manifest(&text) else {
            panic!("expected a parse error")
        };
        assert_eq!((line, column), (8, 7));
    }

    #[test]
    fn positions() {
        let Err(Error::Parse { line, column, .. }) = parse_manifest("check x\n  op sylow\n") else {
            panic!()
        };
        assert_eq!((line, column), (2, 3));
        let bad_tier = ONE.replace("tier: fast", "tier: slow");
        let Err(Error::Parse { line, column, .. }) = parse_manifest(&bad_tier) else {
            panic!()
        };
        assert_eq!((line, column), (7, 9));
    }
}
