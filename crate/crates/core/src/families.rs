//! Named graph families, abstract and embedded.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::plane::PlaneGraph;
use crate::planarity;

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs at least 3 vertices, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Hub 0 joined to the rim cycle `1..=n`.
pub fn wheel(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("wheel needs a rim of at least 3, got {n}")));
    }
    let rim = (0..n).map(|i| (1 + i, 1 + (i + 1) % n));
    let spokes = (1..=n).map(|i| (0, i));
    Graph::from_edges(n + 1, rim.chain(spokes))
}

pub fn complete(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
}

/// Vertex `(i, j)` is `i * n + j`.
pub fn grid(m: usize, n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if j + 1 < n {
                edges.push((i * n + j, i * n + j + 1));
            }
            if i + 1 < m {
                edges.push((i * n + j, (i + 1) * n + j));
            }
        }
    }
    Graph::from_edges(m * n, edges)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("fixed family")
}

pub fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        let (u, u1) = (1 + i, 1 + (i + 1) % 5);
        let (l, l1) = (6 + i, 6 + (i + 1) % 5);
        edges.extend([(0, u), (u, u1), (l, l1), (u, l), (u, l1), (l, 11)]);
    }
    Graph::from_edges(12, edges).expect("fixed family")
}

/// Outer pentagon `0..5`, middle ten-cycle `5..15`, inner pentagon `15..20`.
pub fn dodecahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((5 + 2 * i + 1, 15 + i));
        edges.push((15 + i, 15 + (i + 1) % 5));
    }
    for j in 0..10 {
        edges.push((5 + j, 5 + (j + 1) % 10));
    }
    Graph::from_edges(20, edges).expect("fixed family")
}

pub fn plane_cycle(n: usize) -> Result<PlaneGraph> {
    let g = cycle(n)?;
    let rot = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
    PlaneGraph::with_longest_outer(g, rot)
}

pub fn plane_path(n: usize) -> Result<PlaneGraph> {
    let g = path(n)?;
    let rot = (0..n)
        .map(|i| {
            let mut r = Vec::new();
            if i > 0 {
                r.push(i - 1);
            }
            if i + 1 < n {
                r.push(i + 1);
            }
            r
        })
        .collect();
    PlaneGraph::with_longest_outer(g, rot)
}

/// The rim is the outer face once it has more than three vertices.
pub fn plane_wheel(n: usize) -> Result<PlaneGraph> {
    let g = wheel(n)?;
    let mut rot = vec![(1..=n).collect::<Vec<_>>()];
    for i in 0..n {
        let next = 1 + (i + 1) % n;
        let prev = 1 + (i + n - 1) % n;
        rot.push(vec![next, 0, prev]);
    }
    let rim: Vec<usize> = (1..=n).collect();
    PlaneGraph::new(g, rot, &rim)
}

pub fn plane_complete(n: usize) -> Result<PlaneGraph> {
    match n {
        0..=2 => plane_path(n),
        3 => plane_cycle(3),
        4 => plane_wheel(3),
        _ => Err(Error::InvalidArgument(format!("K{n} is not planar"))),
    }
}

pub fn plane_grid(m: usize, n: usize) -> Result<PlaneGraph> {
    let g = grid(m, n)?;
    let mut rot = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut r = Vec::new();
            if j + 1 < n {
                r.push(i * n + j + 1);
            }
            if i + 1 < m {
                r.push((i + 1) * n + j);
            }
            if j > 0 {
                r.push(i * n + j - 1);
            }
            if i > 0 {
                r.push((i - 1) * n + j);
            }
            rot.push(r);
        }
    }
    PlaneGraph::with_longest_outer(g, rot)
}

pub fn plane_icosahedron() -> PlaneGraph {
    planarity::embed(&icosahedron()).expect("icosahedron is planar")
}

pub fn plane_dodecahedron() -> PlaneGraph {
    let pg = planarity::embed(&dodecahedron()).expect("dodecahedron is planar");
    let outer = pg
        .faces()
        .iter()
        .position(|f| f.iter().all(|&v| v < 5))
        .expect("outer pentagon is a face");
    pg.with_outer_index(outer).expect("face exists")
}

fn parse_args(name: &str) -> Option<(String, Vec<usize>)> {
    let name = name.trim().to_ascii_lowercase();
    if let Some(open) = name.find('(') {
        let inner = name[open + 1..].strip_suffix(')')?;
        let args = inner
            .split(',')
            .map(|s| s.trim().parse().ok())
            .collect::<Option<Vec<usize>>>()?;
        return Some((name[..open].to_string(), args));
    }
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (head, digits) = name.split_at(split);
    let long = match head {
        "c" => "cycle",
        "p" => "path",
        "w" => "wheel",
        "k" => "complete",
        other => other,
    };
    if digits.is_empty() {
        Some((long.to_string(), vec![]))
    } else {
        Some((long.to_string(), vec![digits.parse().ok()?]))
    }
}

fn unknown(name: &str) -> Error {
    Error::InvalidArgument(format!("unknown graph family {name:?}"))
}

/// Parses names like `cycle(5)`, `c5`, `w6`, `k4`, `grid(2,3)`, `petersen`.
pub fn named(name: &str) -> Result<Graph> {
    let (family, args) = parse_args(name).ok_or_else(|| unknown(name))?;
    match (family.as_str(), args.as_slice()) {
        ("cycle", [n]) => cycle(*n),
        ("path", [n]) => path(*n),
        ("wheel", [n]) => wheel(*n),
        ("complete", [n]) => complete(*n),
        ("grid", [m, n]) => grid(*m, *n),
        ("petersen", []) => Ok(petersen()),
        ("icosahedron", []) => Ok(icosahedron()),
        ("dodecahedron", []) => Ok(dodecahedron()),
        _ => Err(unknown(name)),
    }
}

/// The embedded version of [`named`]; non-planar families are rejected.
pub fn named_plane(name: &str) -> Result<PlaneGraph> {
    let (family, args) = parse_args(name).ok_or_else(|| unknown(name))?;
    match (family.as_str(), args.as_slice()) {
        ("cycle", [n]) => plane_cycle(*n),
        ("path", [n]) => plane_path(*n),
        ("wheel", [n]) => plane_wheel(*n),
        ("complete", [n]) => plane_complete(*n),
        ("grid", [m, n]) => plane_grid(*m, *n),
        ("icosahedron", []) => Ok(plane_icosahedron()),
        ("dodecahedron", []) => Ok(plane_dodecahedron()),
        ("petersen", []) => Err(Error::InvalidArgument("the Petersen graph is not planar".into())),
        _ => Err(unknown(name)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, Girth};

    #[test]
    fn sizes() {
        assert_eq!(wheel(5).unwrap().edge_count(), 10);
        assert_eq!(grid(2, 3).unwrap().edge_count(), 7);
        assert_eq!(petersen().edge_count(), 15);
        let ico = icosahedron();
        assert_eq!(ico.edge_count(), 30);
        assert!((0..12).all(|v| ico.degree(v) == 5));
        let dod = dodecahedron();
        assert_eq!(dod.edge_count(), 30);
        assert!((0..20).all(|v| dod.degree(v) == 3));
        assert_eq!(girth(&dod), Girth::Finite(5));
    }

    #[test]
    fn embedded_families_have_expected_faces() {
        assert_eq!(plane_icosahedron().faces().len(), 20);
        let dod = plane_dodecahedron();
        assert_eq!(dod.faces().len(), 12);
        assert!(dod.faces().iter().all(|f| f.len() == 5));
        assert_eq!(dod.outer_vertices().iter().collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        let w6 = plane_wheel(6).unwrap();
        assert_eq!(w6.outer_face().len(), 6);
        assert_eq!(plane_grid(3, 3).unwrap().outer_face().len(), 8);
    }

    #[test]
    fn names() {
        assert_eq!(named("c5").unwrap(), cycle(5).unwrap());
        assert_eq!(named("cycle(5)").unwrap(), cycle(5).unwrap());
        assert_eq!(named("W6").unwrap(), wheel(6).unwrap());
        assert_eq!(named("grid(2,3)").unwrap(), grid(2, 3).unwrap());
        assert_eq!(named("K4").unwrap(), complete(4).unwrap());
        assert!(named("k5").is_ok());
        assert!(named_plane("k5").is_err());
        assert!(named("blob").is_err());
        assert!(named_plane("petersen").is_err());
    }
}
