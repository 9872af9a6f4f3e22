//! Text serialization of modules.
//!
//! ```text
//! char2-module 1
//! label 2a
//! group S3 order 6 gens 2
//! field k 2 poly 7 m 3
//! dim 2
//! gen 1
//! 0101
//! 0100
//! gen 2
//! ...
//! ```
//!
//! Each row lists its entries as hex digits, `ceil(k/4)` per entry.

use std::fmt::Write as _;
use std::sync::Arc;

use super::Representation;
use crate::error::{Error, Result};
use crate::fld::SplittingField;
use crate::grp::Group;
use crate::mat::Mat;

pub const FORMAT_VERSION: u32 = 1;

pub fn to_text(m: &Representation) -> String {
    let f = m.field();
    let mut s = String::new();
    let _ = writeln!(s, "char2-module {FORMAT_VERSION}");
    let _ = writeln!(s, "label {}", m.label());
    let _ = writeln!(
        s,
        "group {} order {} gens {}",
        m.group().name(),
        m.group().order(),
        m.group().ngens()
    );
    let _ = writeln!(s, "field k {} poly {:x} m {}", f.k(), f.defining_poly(), f.m());
    let _ = writeln!(s, "dim {}", m.dim());
    for (i, a) in m.images().iter().enumerate() {
        let _ = writeln!(s, "gen {}", i + 1);
        for row in a.hex_rows() {
            let _ = writeln!(s, "{row}");
        }
    }
    s
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn expect_kv<'a>(line: usize, text: Option<&'a str>, key: &str) -> Result<Vec<&'a str>> {
    let t = text.ok_or_else(|| parse_err(line, format!("missing `{key}` line")))?;
    let mut parts = t.split_whitespace();
    if parts.next() != Some(key) {
        return Err(parse_err(line, format!("expected `{key}`")));
    }
    Ok(parts.collect())
}

fn num<T: std::str::FromStr>(line: usize, s: Option<&&str>, radix16: bool) -> Result<T>
where
    T: TryFrom<u64>,
{
    let s = s.ok_or_else(|| parse_err(line, "missing number"))?;
    let v = if radix16 {
        u64::from_str_radix(s, 16)
    } else {
        s.parse::<u64>()
    }
    .map_err(|_| parse_err(line, format!("bad number `{s}`")))?;
    T::try_from(v).map_err(|_| parse_err(line, "number out of range"))
}

/// Parses a module for `group` over `field`, verifying that the header
/// matches and that the matrices define a representation.
pub fn from_text(text: &str, group: &Group, field: &Arc<SplittingField>) -> Result<Representation> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut it = lines.iter().copied().enumerate().map(|(i, l)| (i + 1, l));
    let mut next = || it.next();

    let (ln, l) = next().ok_or_else(|| parse_err(1, "empty module file"))?;
    let head = expect_kv(ln, Some(l), "char2-module")?;
    let ver: u32 = num(ln, head.first(), false)?;
    if ver != FORMAT_VERSION {
        return Err(parse_err(ln, format!("unsupported version {ver}")));
    }
    let (ln, l) = next().ok_or_else(|| parse_err(2, "truncated"))?;
    let label = expect_kv(ln, Some(l), "label")?.join(" ");

    let (ln, l) = next().ok_or_else(|| parse_err(3, "truncated"))?;
    let g = expect_kv(ln, Some(l), "group")?;
    if g.len() != 5 || g[1] != "order" || g[3] != "gens" {
        return Err(parse_err(ln, "expected `group NAME order N gens R`"));
    }
    let order: usize = num(ln, g.get(2), false)?;
    let ngens: usize = num(ln, g.get(4), false)?;
    if order != group.order() || ngens != group.ngens() {
        return Err(Error::InvalidInput(format!(
            "module is for a group of order {order} with {ngens} generators"
        )));
    }

    let (ln, l) = next().ok_or_else(|| parse_err(4, "truncated"))?;
    let fl = expect_kv(ln, Some(l), "field")?;
    if fl.len() != 6 || fl[0] != "k" || fl[2] != "poly" || fl[4] != "m" {
        return Err(parse_err(ln, "expected `field k K poly P m M`"));
    }
    let k: usize = num(ln, fl.get(1), false)?;
    let poly: u64 = num(ln, fl.get(3), true)?;
    if k != field.k() || poly != field.defining_poly() {
        return Err(Error::InvalidInput("module is over a different field".into()));
    }

    let (ln, l) = next().ok_or_else(|| parse_err(5, "truncated"))?;
    let dim: usize = num(ln, expect_kv(ln, Some(l), "dim")?.first(), false)?;

    let mut images = Vec::with_capacity(ngens);
    for gi in 0..ngens {
        let (ln, l) = next().ok_or_else(|| parse_err(0, "missing generator block"))?;
        let idx: usize = num(ln, expect_kv(ln, Some(l), "gen")?.first(), false)?;
        if idx != gi + 1 {
            return Err(parse_err(ln, format!("expected generator {}", gi + 1)));
        }
        let mut rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            let (_, l) = next().ok_or_else(|| parse_err(ln, "truncated matrix"))?;
            rows.push(l);
        }
        let m = Mat::from_hex_rows(field.gf(), dim, &rows)
            .ok_or_else(|| parse_err(ln, "malformed matrix row"))?;
        images.push(m);
    }
    if let Some((ln, _)) = next() {
        return Err(parse_err(ln, "trailing content"));
    }
    Representation::checked(group, field, dim, images, label)
}
