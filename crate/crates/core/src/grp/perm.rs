//! Permutations on `0..n` as image vectors, and the group file format.
//!
//! Products compose left to right: `(a * b)[i] = b[a[i]]`, i.e. apply `a`
//! first. Points are 1-based in text and 0-based in memory.

use crate::error::{Error, Result};

pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn inverse(a: &[u32]) -> Perm {
    let mut inv = vec![0u32; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    inv
}

/// `g^-1 x g`.
pub fn conjugate(x: &[u32], g: &[u32]) -> Perm {
    let mut out = vec![0u32; x.len()];
    for (i, &xi) in x.iter().enumerate() {
        out[g[i] as usize] = g[xi as usize];
    }
    out
}

pub fn is_identity(a: &[u32]) -> bool {
    a.iter().enumerate().all(|(i, &j)| i as u32 == j)
}

/// Element order as the lcm of cycle lengths.
pub fn order(a: &[u32]) -> u64 {
    let mut seen = vec![false; a.len()];
    let mut ord = 1u64;
    for s in 0..a.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = a[i] as usize;
            len += 1;
        }
        ord = crate::fld::ints::lcm(ord, len);
    }
    ord
}

pub fn power(a: &[u32], e: u64) -> Perm {
    let n = a.len();
    let mut out = vec![0u32; n];
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i as u32);
            i = a[i] as usize;
        }
        let l = cyc.len() as u64;
        for (idx, &p) in cyc.iter().enumerate() {
            out[p as usize] = cyc[((idx as u64 + e % l) % l) as usize];
        }
    }
    out
}

/// Builds a permutation on `n` points from 1-based cycles.
pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Perm> {
    let mut p = identity(n);
    let mut used = vec![false; n];
    for cyc in cycles {
        for (i, &a) in cyc.iter().enumerate() {
            let b = cyc[(i + 1) % cyc.len()];
            if a == 0 || a as usize > n || b == 0 || b as usize > n {
                return Err(Error::InvalidInput(format!("point out of range 1..{n}")));
            }
            if used[a as usize - 1] {
                return Err(Error::InvalidInput(format!("point {a} repeated in cycles")));
            }
            used[a as usize - 1] = true;
            p[a as usize - 1] = b - 1;
        }
    }
    Ok(p)
}

/// Cycle notation with 1-based points; `()` for the identity.
pub fn to_cycles(a: &[u32]) -> String {
    let mut seen = vec![false; a.len()];
    let mut s = String::new();
    for st in 0..a.len() {
        if seen[st] || a[st] as usize == st {
            continue;
        }
        s.push('(');
        let mut i = st;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                s.push(' ');
            }
            first = false;
            s.push_str(&(i + 1).to_string());
            i = a[i] as usize;
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses one generator: cycles like `(1 2)(3 4)` or an image list `[2,1,3]`.
pub fn parse_perm(n: usize, text: &str, line: usize) -> Result<Perm> {
    let t = text.trim();
    if let Some(body) = t.strip_prefix('[') {
        let body = body
            .strip_suffix(']')
            .ok_or_else(|| parse_err(line, "unterminated image list"))?;
        let imgs: Vec<u32> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| parse_err(line, format!("bad point `{s}`"))))
            .collect::<Result<_>>()?;
        if imgs.len() != n {
            return Err(parse_err(line, format!("image list has {} entries, degree is {n}", imgs.len())));
        }
        let mut seen = vec![false; n];
        let mut p = Vec::with_capacity(n);
        for &x in &imgs {
            if x == 0 || x as usize > n || seen[x as usize - 1] {
                return Err(parse_err(line, "image list is not a permutation"));
            }
            seen[x as usize - 1] = true;
            p.push(x - 1);
        }
        return Ok(p);
    }
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let r = rest.trim_start();
        if r.is_empty() {
            break;
        }
        let body = r
            .strip_prefix('(')
            .ok_or_else(|| parse_err(line, format!("expected `(` in `{t}`")))?;
        let end = body
            .find(')')
            .ok_or_else(|| parse_err(line, "unterminated cycle"))?;
        let pts: Vec<u32> = body[..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| parse_err(line, format!("bad point `{s}`"))))
            .collect::<Result<_>>()?;
        cycles.push(pts);
        rest = &body[end + 1..];
    }
    let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
    from_cycles(n, &refs).map_err(|e| parse_err(line, e.to_string()))
}

/// Parses a group file into `(degree, generators)`.
pub fn parse_group_text(text: &str) -> Result<(usize, Vec<Perm>)> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match degree {
            None => {
                let n = content
                    .strip_prefix("degree")
                    .ok_or_else(|| parse_err(line, "first line must be `degree n`"))?
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| parse_err(line, "degree must be a nonnegative integer"))?;
                degree = Some(n);
            }
            Some(n) => gens.push(parse_perm(n, content, line)?),
        }
    }
    let n = degree.ok_or_else(|| parse_err(1, "missing `degree n` line"))?;
    Ok((n, gens))
}

/// Renders `(degree, generators)` in the group file format.
pub fn format_group_text(n: usize, gens: &[Perm]) -> String {
    let mut s = format!("degree {n}\n");
    for g in gens {
        s.push_str(&to_cycles(g));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_left_to_right() {
        let a = parse_perm(3, "(1 2)", 1).unwrap();
        let b = parse_perm(3, "(2 3)", 1).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(compose(&a, &b)[0], 2);
        assert_eq!(to_cycles(&compose(&a, &b)), "(1 3 2)");
    }

    #[test]
    fn parse_both_syntaxes() {
        let (n, g) = parse_group_text("# S3\ndegree 3\n(1 2)\n[2,3,1] # 3-cycle\n").unwrap();
        assert_eq!(n, 3);
        assert_eq!(g[0], vec![1, 0, 2]);
        assert_eq!(g[1], vec![1, 2, 0]);
        assert!(parse_group_text("degree 3\n(1 4)\n").is_err());
        assert!(parse_group_text("degree 3\n[1,1,2]\n").is_err());
        assert!(parse_group_text("(1 2)\n").is_err());
        let (_, none) = parse_group_text("degree 5\n").unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn conjugation_and_powers() {
        let x = parse_perm(4, "(1 2 3 4)", 1).unwrap();
        let g = parse_perm(4, "(1 3)", 1).unwrap();
        let c = conjugate(&x, &g);
        assert_eq!(c, compose(&compose(&inverse(&g), &x), &g));
        assert_eq!(order(&x), 4);
        assert_eq!(power(&x, 3), inverse(&x));
        assert!(is_identity(&power(&x, 4)));
    }
}
