//! Text forms: `cyclic:N`, `dihedral:N`, `product:spec,spec,...`, `gendihedral:spec`,
//! `symmetric:n`, `wreath-s:n`, and element lists like `[(3,1),(0,1)]`.

use crate::error::{HspError, Result};
use crate::group::{Elem, GroupSpec};

fn split_top(s: &str) -> Vec<&str> {
    // commas inside a nested product belong to it, so `product:` swallows the rest
    let mut parts = Vec::new();
    let mut rest = s;
    loop {
        if rest.starts_with("product:") || rest.starts_with("gendihedral:product:") {
            parts.push(rest);
            return parts;
        }
        match rest.find(',') {
            Some(i) => {
                parts.push(&rest[..i]);
                rest = &rest[i + 1..];
            }
            None => {
                parts.push(rest);
                return parts;
            }
        }
    }
}

pub fn parse_group(s: &str) -> Result<GroupSpec> {
    let s = s.trim();
    let (kind, arg) = s
        .split_once(':')
        .ok_or_else(|| HspError::Parse(format!("group spec `{s}` lacks `kind:`")))?;
    let num = |a: &str| -> Result<usize> {
        a.trim().parse().map_err(|_| HspError::Parse(format!("bad size `{a}` in `{s}`")))
    };
    match kind {
        "cyclic" => {
            let n = num(arg)?;
            if n == 0 {
                return Err(HspError::Parse("cyclic:0".into()));
            }
            Ok(GroupSpec::cyclic(n))
        }
        "dihedral" => {
            let n = num(arg)?;
            if n == 0 {
                return Err(HspError::Parse("dihedral:0".into()));
            }
            Ok(GroupSpec::dihedral(n))
        }
        "symmetric" => Ok(GroupSpec::symmetric(num(arg)?)),
        "wreath-s" => Ok(GroupSpec::wreath_sym_z2(num(arg)?)),
        "gendihedral" => GroupSpec::generalized_dihedral(parse_group(arg)?),
        "product" => {
            let fs = split_top(arg).into_iter().map(parse_group).collect::<Result<Vec<_>>>()?;
            Ok(GroupSpec::product(fs))
        }
        _ => Err(HspError::Parse(format!("unknown group kind `{kind}`"))),
    }
}

/// Parses `[(a,b),(c,d)]` or `[4,8]` into elements of `g` using natural coordinates.
pub fn parse_elements(g: &GroupSpec, s: &str) -> Result<Vec<Elem>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| HspError::Parse(format!("element list `{s}` needs brackets")))?
        .trim();
    if inner.is_empty() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        rest = rest.trim_start_matches([',', ' ']);
        if rest.is_empty() {
            break;
        }
        let (tuple, tail) = if let Some(r) = rest.strip_prefix('(') {
            let end = r.find(')').ok_or_else(|| HspError::Parse("unclosed tuple".into()))?;
            (&r[..end], &r[end + 1..])
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            (&rest[..end], &rest[end..])
        };
        let coords = tuple
            .split(',')
            .map(|c| c.trim().parse::<usize>().map_err(|_| HspError::Parse(format!("bad coordinate `{c}`"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(g.from_coords(&coords)?);
        rest = tail;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_group("dihedral:4").unwrap(), GroupSpec::dihedral(4));
        let p = parse_group("product:cyclic:2,cyclic:3").unwrap();
        assert_eq!(p.order(), 6);
        let nested = parse_group("product:cyclic:2,product:cyclic:2,cyclic:5").unwrap();
        assert_eq!(nested.order(), 20);
        let d4 = GroupSpec::dihedral(4);
        assert_eq!(parse_elements(&d4, "[(1,1)]").unwrap(), vec![5]);
        assert_eq!(parse_elements(&d4, "[]").unwrap(), Vec::<usize>::new());
        let z = GroupSpec::cyclic(12);
        assert_eq!(parse_elements(&z, "[4, 8]").unwrap(), vec![4, 8]);
        assert!(parse_group("torus:3").is_err());
    }
}
