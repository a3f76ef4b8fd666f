//! Built-in groups resolvable by name.

use super::{FiniteGroup, GroupError};

/// Names accepted by [`preset`]; `zN` (cyclic) and `dN` (dihedral of order 2N)
/// are also accepted for any N ≥ 1 and N ≥ 3 respectively.
pub const PRESET_NAMES: &[&str] = &["z2", "z3", "s3", "z2xz2", "z3xz3", "z2xz2xz2", "q8", "a4"];

pub fn preset(name: &str) -> Result<FiniteGroup, GroupError> {
    let key = name.trim().to_ascii_lowercase();
    let g = match key.as_str() {
        "z2" => named(cyclic_with_names(&["e", "x"]), "Z2"),
        "z3" => named(cyclic_with_names(&["e", "y", "y2"]), "Z3"),
        "s3" => s3(),
        "z2xz2" => product(&cyclic(2), &cyclic(2), "Z2xZ2"),
        "z3xz3" => product(&cyclic(3), &cyclic(3), "Z3xZ3"),
        "z2xz2xz2" => {
            let k = product(&cyclic(2), &cyclic(2), "Z2xZ2");
            product(&k, &cyclic(2), "Z2xZ2xZ2")
        }
        "q8" => quaternion(),
        "a4" => alternating4(),
        _ => {
            if let Some(n) = key.strip_prefix('z').and_then(|s| s.parse::<usize>().ok()) {
                if n >= 1 {
                    return Ok(cyclic(n));
                }
            }
            if let Some(n) = key.strip_prefix('d').and_then(|s| s.parse::<usize>().ok()) {
                if n >= 3 {
                    return Ok(dihedral(n));
                }
            }
            return Err(GroupError::UnknownPreset(name.to_string()));
        }
    };
    Ok(g)
}

fn named(mut g: FiniteGroup, name: &str) -> FiniteGroup {
    g.name = name.to_string();
    g
}

fn build(name: &str, elements: Vec<String>, table: Vec<Vec<usize>>) -> FiniteGroup {
    FiniteGroup::new(name, table, elements).expect("preset tables are valid groups")
}

pub(crate) fn cyclic(n: usize) -> FiniteGroup {
    let names: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a{k}"),
        })
        .collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    build(&format!("Z{n}"), names, table)
}

fn cyclic_with_names(names: &[&str]) -> FiniteGroup {
    let n = names.len();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    build("", names.iter().map(|s| s.to_string()).collect(), table)
}

/// S3 generated by x² = y³ = e, xyx = y², listed as e, x, xy, xy², y, y².
fn s3() -> FiniteGroup {
    // Element x^a y^b is stored as (a, b).
    let words = [(0, 0), (1, 0), (1, 1), (1, 2), (0, 1), (0, 2)];
    let names = ["e", "x", "xy", "xy2", "y", "y2"];
    let index = |a: usize, b: usize| words.iter().position(|&w| w == (a, b)).unwrap();
    let table = words
        .iter()
        .map(|&(a, b)| {
            words
                .iter()
                .map(|&(c, d)| {
                    // y^b x^c = x^c y^{±b}
                    let b2 = if c == 1 { (3 - b) % 3 } else { b };
                    index((a + c) % 2, (b2 + d) % 3)
                })
                .collect()
        })
        .collect();
    build("S3", names.iter().map(|s| s.to_string()).collect(), table)
}

/// Dihedral group of order 2n: rotations r^k then reflections s r^k.
pub(crate) fn dihedral(n: usize) -> FiniteGroup {
    let mut names = Vec::with_capacity(2 * n);
    for k in 0..n {
        names.push(match k {
            0 => "e".to_string(),
            1 => "r".to_string(),
            _ => format!("r{k}"),
        });
    }
    for k in 0..n {
        names.push(match k {
            0 => "s".to_string(),
            1 => "sr".to_string(),
            _ => format!("sr{k}"),
        });
    }
    let decode = |i: usize| (i / n, i % n);
    let encode = |f: usize, k: usize| f * n + k;
    let table = (0..2 * n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let (f1, k1) = decode(i);
                    let (f2, k2) = decode(j);
                    // r^k s = s r^{-k}
                    let k1 = if f2 == 1 { (n - k1) % n } else { k1 };
                    encode((f1 + f2) % 2, (k1 + k2) % n)
                })
                .collect()
        })
        .collect();
    build(&format!("D{n}"), names, table)
}

pub(crate) fn product(a: &FiniteGroup, b: &FiniteGroup, name: &str) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let names = (0..na * nb)
        .map(|i| format!("({},{})", a.element_name(i / nb), b.element_name(i % nb)))
        .collect();
    let table = (0..na * nb)
        .map(|i| {
            (0..na * nb)
                .map(|j| a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb))
                .collect()
        })
        .collect();
    build(name, names, table)
}

fn quaternion() -> FiniteGroup {
    // Unit quaternions as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k.
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    let decode = |x: usize| (x % 2, x / 2);
    let encode = |s: usize, axis: usize| axis * 2 + s;
    let unit = |p: usize, q: usize| -> (usize, usize) {
        match (p, q) {
            (0, q) => (0, q),
            (p, 0) => (0, p),
            (p, q) if p == q => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (s1, a1) = decode(x);
                    let (s2, a2) = decode(y);
                    let (s3, a3) = unit(a1, a2);
                    encode((s1 + s2 + s3) % 2, a3)
                })
                .collect()
        })
        .collect();
    build("Q8", names.iter().map(|s| s.to_string()).collect(), table)
}

fn alternating4() -> FiniteGroup {
    let mut perms: Vec<[usize; 4]> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                    if distinct && parity(&p) == 0 {
                        perms.push(p);
                    }
                }
            }
        }
    }
    let names = perms.iter().map(|p| format!("[{}{}{}{}]", p[0], p[1], p[2], p[3])).collect();
    // (p·q)(i) = p(q(i))
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let r = [p[q[0]], p[q[1]], p[q[2]], p[q[3]]];
                    perms.iter().position(|x| *x == r).unwrap()
                })
                .collect()
        })
        .collect();
    build("A4", names, table)
}

fn parity(p: &[usize; 4]) -> usize {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_relations() {
        let g = preset("s3").unwrap();
        let x = g.index_of("x").unwrap();
        let y = g.index_of("y").unwrap();
        let e = g.identity();
        assert_eq!(g.mul(x, x), e);
        assert_eq!(g.mul(g.mul(y, y), y), e);
        assert_eq!(g.mul(g.mul(x, y), x), g.index_of("y2").unwrap());
        assert_eq!(g.mul(x, y), g.index_of("xy").unwrap());
        assert_eq!(g.mul(x, g.mul(y, y)), g.index_of("xy2").unwrap());
        assert!(!g.is_abelian());
    }

    #[test]
    fn preset_orders() {
        for (name, order) in [
            ("z2", 2),
            ("z3", 3),
            ("s3", 6),
            ("z2xz2", 4),
            ("z3xz3", 9),
            ("z2xz2xz2", 8),
            ("q8", 8),
            ("a4", 12),
            ("d4", 8),
            ("z7", 7),
        ] {
            assert_eq!(preset(name).unwrap().order(), order, "{name}");
        }
        assert!(matches!(preset("d_q8"), Err(GroupError::UnknownPreset(_))));
    }

    #[test]
    fn quaternion_is_nonabelian_with_unique_involution() {
        let q = preset("q8").unwrap();
        assert!(!q.is_abelian());
        let involutions = (0..8).filter(|&g| q.element_order(g) == 2).count();
        assert_eq!(involutions, 1);
    }
}
