//! Named arrangements.

use super::{set_of, Arrangement, HSet, RankThreeMatroid};
use crate::error::{Error, Result};

fn pair_label(i: usize, j: usize, wide: bool) -> String {
    if wide {
        format!("{}_{}", i + 1, j + 1)
    } else {
        format!("{}{}", i + 1, j + 1)
    }
}

/// Diagonal hyperplanes z_i = z_j, 1 <= i < j <= l, in Q^l.
pub fn braid(l: usize) -> Result<Arrangement> {
    if l < 2 {
        return Err(Error::Precondition("braid(l) needs l >= 2".into()));
    }
    let edges: Vec<(usize, usize)> =
        (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).collect();
    graphic(l, &edges)
}

/// Coordinate hyperplanes in Q^n.
pub fn boolean(n: usize) -> Result<Arrangement> {
    if n == 0 {
        return Err(Error::Precondition("boolean(n) needs n >= 1".into()));
    }
    let normals: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    Arrangement::from_i64(n, &normals)?.with_labels((1..=n).map(|i| format!("x{i}")).collect())
}

/// n hyperplanes in general position in Q^l, with Vandermonde normals
/// (1, t, t^2, ..., t^{l-1}) for t = 1..n.
pub fn generic(n: usize, l: usize) -> Result<Arrangement> {
    if l == 0 {
        return Err(Error::Precondition("generic(n, l) needs l >= 1".into()));
    }
    if l == 1 && n > 1 {
        return Err(Error::Precondition("only one hyperplane fits in Q^1".into()));
    }
    let normals: Vec<Vec<i64>> = (1..=n as i64)
        .map(|t| (0..l as u32).map(|k| t.pow(k)).collect())
        .collect();
    Arrangement::from_i64(l, &normals)
}

/// Graphic arrangement: one hyperplane z_i - z_j per edge, in Q^v.
/// Vertices are 0-based.
pub fn graphic(v: usize, edges: &[(usize, usize)]) -> Result<Arrangement> {
    let mut seen = Vec::new();
    let mut normals = Vec::new();
    let mut labels = Vec::new();
    for &(a, b) in edges {
        if a == b {
            return Err(Error::Precondition(format!("loop at vertex {}", a + 1)));
        }
        if a >= v || b >= v {
            return Err(Error::Precondition(format!(
                "edge {}-{} outside {v} vertices",
                a + 1,
                b + 1
            )));
        }
        let (i, j) = (a.min(b), a.max(b));
        if seen.contains(&(i, j)) {
            return Err(Error::Precondition(format!(
                "duplicate edge {}-{}",
                i + 1,
                j + 1
            )));
        }
        seen.push((i, j));
        let mut row = vec![0i64; v];
        row[i] = 1;
        row[j] = -1;
        normals.push(row);
        labels.push(pair_label(i, j, v > 9));
    }
    Arrangement::from_i64(v, &normals)?.with_labels(labels)
}

/// Reflection planes of the cube with vertices (+-1, +-1, +-1); the
/// coordinate planes carry multiplicity 2.
pub fn cube_symmetry() -> Result<Arrangement> {
    let normals = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, -1, 0],
        [1, 1, 0],
        [0, 1, -1],
        [0, 1, 1],
        [-1, 0, 1],
        [1, 0, 1],
    ];
    let labels = ["x", "y", "z", "x-y", "x+y", "y-z", "y+z", "z-x", "z+x"];
    Arrangement::from_i64(3, &normals.map(|r| r.to_vec()))?
        .with_labels(labels.iter().map(|s| s.to_string()).collect())?
        .with_multiplicities(vec![2, 2, 2, 1, 1, 1, 1, 1, 1])
}

/// The Ceva arrangement (x^n - y^n)(y^n - z^n)(z^n - x^n) of 3n lines.
///
/// Line `xy{a}` is x - w^a y for a primitive n-th root of unity w, and
/// similarly for `yz{b}`, `zx{c}`. For n = 2 the lines are rational and a
/// realization is returned; for n >= 3 the matroid is returned abstractly:
/// xy{a}, yz{b}, zx{c} are concurrent iff a + b + c = 0 mod n, and each
/// family of n lines meets in one point.
pub fn ceva(n: usize) -> Result<Arrangement> {
    if n < 2 {
        return Err(Error::Precondition("ceva(n) needs n >= 2".into()));
    }
    if n == 2 {
        let normals = [
            [1, -1, 0],
            [1, 1, 0],
            [0, 1, -1],
            [0, 1, 1],
            [-1, 0, 1],
            [1, 0, 1],
        ];
        let labels = ["x-y", "x+y", "y-z", "y+z", "z-x", "z+x"];
        return Arrangement::from_i64(3, &normals.map(|r| r.to_vec()))?
            .with_labels(labels.iter().map(|s| s.to_string()).collect());
    }
    if 3 * n > super::MAX_HYPERPLANES {
        return Err(Error::Precondition("ceva(n) too large".into()));
    }
    let xy = |a: usize| a;
    let yz = |b: usize| n + b;
    let zx = |c: usize| 2 * n + c;
    let mut lines: Vec<HSet> = Vec::new();
    for family in 0..3 {
        lines.push(set_of(&(0..n).map(|a| family * n + a).collect::<Vec<_>>()));
    }
    for a in 0..n {
        for b in 0..n {
            let c = (2 * n - a - b) % n;
            lines.push(set_of(&[xy(a), yz(b), zx(c)]));
        }
    }
    let labels = ["xy", "yz", "zx"]
        .iter()
        .flat_map(|p| (0..n).map(move |a| format!("{p}{a}")))
        .collect();
    Arrangement::abstract_matroid(RankThreeMatroid::new(3 * n, lines)?).with_labels(labels)
}

/// The Hessian arrangement of 12 lines, as an abstract matroid.
///
/// Its 9 quadruple points and 12 lines are the points and lines of the
/// affine plane over F_3: element `3*k + c` is the line with direction class
/// `k` and offset `c`, and a quadruple point collects the four lines through
/// an affine point. Elements 3k..3k+2 form the k-th parallel class.
pub fn hessian() -> Result<Arrangement> {
    let directions = [(1u32, 0u32), (0, 1), (1, 1), (1, 2)];
    let mut lines = Vec::new();
    for u in 0..3u32 {
        for v in 0..3u32 {
            let mut pt = Vec::new();
            for (k, (d1, d2)) in directions.iter().enumerate() {
                let c = ((d2 * u + 3 * 3 - d1 * v) % 3) as usize;
                pt.push(3 * k + c);
            }
            lines.push(set_of(&pt));
        }
    }
    let labels = (0..4)
        .flat_map(|k| (0..3).map(move |c| format!("h{}{}", k + 1, c + 1)))
        .collect();
    Arrangement::abstract_matroid(RankThreeMatroid::new(12, lines)?).with_labels(labels)
}

fn parse_params(name: &str) -> Result<(String, Vec<usize>)> {
    let name = name.trim().to_ascii_lowercase();
    if let Some(open) = name.find('(') {
        let close = name
            .rfind(')')
            .ok_or_else(|| Error::UnknownCatalog(name.clone()))?;
        let head = name[..open].to_string();
        let params = name[open + 1..close]
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::UnknownCatalog(name.clone()))?;
        return Ok((head, params));
    }
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(name.len());
    let head = name[..split].trim_end_matches(['-', '_']).to_string();
    let tail = &name[split..];
    if tail.is_empty() {
        return Ok((head, Vec::new()));
    }
    let params = tail
        .split([',', '_', 'x'])
        .map(|s| s.parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::UnknownCatalog(name.clone()))?;
    Ok((head, params))
}

/// Looks up a named arrangement: `braid(l)`, `boolean(n)`, `generic(n,l)`,
/// `ceva(n)`, `hessian`, `cube_symmetry`, `complete(v)`, `cycle(v)`,
/// `complete_minus_edge(v)`. Short forms such as `braid4` are accepted.
pub fn catalog(name: &str) -> Result<Arrangement> {
    let (head, params) = parse_params(name)?;
    let bad = || Error::Precondition(format!("invalid parameters for `{name}`"));
    let one = |p: &[usize]| if p.len() == 1 { Ok(p[0]) } else { Err(bad()) };
    match head.as_str() {
        "braid" => braid(one(&params)?),
        "boolean" => boolean(one(&params)?),
        "generic" => {
            if params.len() != 2 {
                return Err(bad());
            }
            generic(params[0], params[1])
        }
        "ceva" => ceva(one(&params)?),
        "hessian" if params.is_empty() => hessian(),
        "cube_symmetry" | "cube" if params.is_empty() => cube_symmetry(),
        "complete" | "k" => braid(one(&params)?),
        "cycle" | "c" => {
            let v = one(&params)?;
            if v < 3 {
                return Err(bad());
            }
            let edges: Vec<_> = (0..v).map(|i| (i, (i + 1) % v)).collect();
            graphic(v, &edges)
        }
        "complete_minus_edge" | "k-e" | "k_minus_edge" => {
            let v = one(&params)?;
            if v < 3 {
                return Err(bad());
            }
            let edges: Vec<_> = (0..v)
                .flat_map(|i| (i + 1..v).map(move |j| (i, j)))
                .skip(1)
                .collect();
            graphic(v, &edges)
        }
        _ => Err(Error::UnknownCatalog(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_poset;
    use super::*;

    #[test]
    fn braid_sizes() {
        let a = catalog("braid(4)").unwrap();
        assert_eq!(a.n(), 6);
        assert_eq!(a.ambient_dim(), 4);
        assert_eq!(catalog("braid4").unwrap(), a);
        assert!(catalog("braid(1)").is_err());
        assert!(matches!(catalog("nonsense"), Err(Error::UnknownCatalog(_))));
    }

    #[test]
    fn cube_has_nine_planes() {
        let a = cube_symmetry().unwrap();
        assert_eq!(a.n(), 9);
        assert_eq!(&a.multiplicities()[..3], &[2, 2, 2]);
    }

    #[test]
    fn hessian_matroid() {
        let a = hessian().unwrap();
        assert_eq!(a.n(), 12);
        let p = build_poset(&a);
        assert_eq!(p.multiple_points(4).len(), 9);
        assert_eq!(p.multiple_points(3).len(), 9);
        let doubles = p.flats_of_rank(2).iter().filter(|f| f.size() == 2).count();
        assert_eq!(doubles, 12);
        // double points only inside parallel classes
        for f in p.flats_of_rank(2).iter().filter(|f| f.size() == 2) {
            let idx: Vec<_> = super::super::members(f.set).collect();
            assert_eq!(idx[0] / 3, idx[1] / 3);
        }
    }

    #[test]
    fn ceva2_matches_braid4_lattice() {
        let a = build_poset(&ceva(2).unwrap()).fingerprint();
        let b = build_poset(&braid(4).unwrap()).fingerprint();
        assert_eq!(a.census, b.census);
        assert_eq!(a.mobius, b.mobius);
    }

    #[test]
    fn ceva3_has_twelve_triple_points() {
        let p = build_poset(&ceva(3).unwrap());
        assert_eq!(p.multiple_points(3).len(), 12);
    }

    #[test]
    fn graphic_errors() {
        assert!(graphic(3, &[(0, 1), (1, 0)]).is_err());
        assert!(graphic(3, &[(0, 0)]).is_err());
        let path = graphic(3, &[(0, 1), (1, 2)]).unwrap();
        let p = build_poset(&path);
        // Boolean lattice on two atoms
        assert_eq!(p.flats().len(), 4);
    }
}
