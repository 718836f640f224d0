//! Reading and writing the interchange formats: graph6 lines, JSON embeddings,
//! JSON assignments and colourings, and run manifests.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::correspondence::{self, Colour, CorrespondenceAssignment, PartialColouring};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::graph6;
use crate::plane::PlaneGraph;
use crate::rational::{self, Rational};

/// What a file turned out to hold.
#[derive(Clone, Debug)]
pub enum Input {
    Graphs(Vec<Graph>),
    Embedding(PlaneGraph),
    /// Needs a graph before it can be checked.
    Assignment(AssignmentDoc),
}

/// A JSON object with `rotation` is an embedding, one with `lists` or `mode`
/// an assignment; anything else is read as graph6 lines.
pub fn ingest_str(text: &str) -> Result<Input> {
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
        if value.get("rotation").is_some() {
            return Ok(Input::Embedding(parse_embedding(text)?));
        }
        if value.get("lists").is_some() || value.get("mode").is_some() {
            return Ok(Input::Assignment(serde_json::from_value(value).map_err(|e| {
                Error::parse("assignment", e.to_string())
            })?));
        }
        return Err(Error::parse(
            "line 1",
            "JSON document has neither \"rotation\" nor \"lists\"",
        ));
    }
    Ok(Input::Graphs(graph6::decode_lines(text)?))
}

pub fn ingest(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path)?;
    ingest_str(&text).map_err(|e| match e {
        Error::Parse { location, message } => {
            Error::parse(format!("{}: {location}", path.display()), message)
        }
        other => other,
    })
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

fn parse_vertex(key: &str, n: usize, field: &str) -> Result<usize> {
    let v: usize = key
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("{field}.{key:?}"), "vertex key is not an integer"))?;
    if v >= n {
        return Err(Error::parse(
            format!("{field}.{key:?}"),
            format!("vertex {v} out of range for {n} vertices"),
        ));
    }
    Ok(v)
}

/// Entries in the given order as a JSON object.
struct Ordered<'a, V>(&'a [(String, V)]);

impl<V: Serialize> Serialize for Ordered<'_, V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbeddingDoc {
    rotation: BTreeMap<String, Vec<usize>>,
    outer_face: Vec<usize>,
}

/// `{"rotation": {"v": [neighbours in cyclic order]}, "outer_face": [walk]}`.
/// The graph is read off the rotation, which must be symmetric.
pub fn parse_embedding(text: &str) -> Result<PlaneGraph> {
    let doc: EmbeddingDoc = serde_json::from_str(text).map_err(json_error)?;
    let n = doc.rotation.len();
    let mut rotation = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    for (key, nbrs) in &doc.rotation {
        let v = parse_vertex(key, n, "rotation")?;
        if seen[v] {
            return Err(Error::parse(format!("rotation.{key:?}"), "vertex given twice"));
        }
        seen[v] = true;
        rotation[v] = nbrs.clone();
    }
    let mut edges = Vec::new();
    for (v, nbrs) in rotation.iter().enumerate() {
        for &u in nbrs {
            if u >= n {
                return Err(Error::parse(
                    format!("rotation.\"{v}\""),
                    format!("neighbour {u} out of range for {n} vertices"),
                ));
            }
            if !rotation[u].contains(&v) {
                return Err(Error::parse(
                    format!("rotation.\"{v}\""),
                    format!("{u} is listed as a neighbour of {v} but not the reverse"),
                ));
            }
            if v < u {
                edges.push((v, u));
            }
        }
    }
    let graph = Graph::from_edges(n, edges)?;
    PlaneGraph::new(graph, rotation, &doc.outer_face)
        .map_err(|e| Error::parse("embedding", e.to_string()))
}

pub fn emit_embedding(pg: &PlaneGraph) -> String {
    let rotation: Vec<(String, Vec<usize>)> = pg
        .rotation()
        .iter()
        .enumerate()
        .map(|(v, r)| (v.to_string(), r.clone()))
        .collect();
    serde_json::json!({
        "rotation": serde_json::to_value(Ordered(&rotation)).expect("plain data"),
        "outer_face": pg.outer_face(),
    })
    .to_string()
}

/// The assignment document as written, before it is checked against a graph.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentDoc {
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub lists: Option<BTreeMap<String, Vec<Colour>>>,
    #[serde(default)]
    pub matchings: BTreeMap<String, Vec<(Colour, Colour)>>,
    #[serde(default)]
    pub mode: Option<String>,
}

impl AssignmentDoc {
    /// Builds and validates the assignment on `g`. Omitted matchings are empty;
    /// `"mode": "identity"` matches equal colours on every edge, and with no
    /// lists gives `{0, .., k-1}` everywhere.
    pub fn resolve(&self, g: &Graph) -> Result<CorrespondenceAssignment> {
        let n = g.vertex_count();
        let identity = match self.mode.as_deref() {
            None => false,
            Some("identity") => true,
            Some(other) => {
                return Err(Error::parse("mode", format!("unknown mode {other:?}")));
            }
        };
        let lists = match &self.lists {
            Some(map) => {
                let mut lists = vec![None; n];
                for (key, list) in map {
                    let v = parse_vertex(key, n, "lists")?;
                    if lists[v].replace(list.clone()).is_some() {
                        return Err(Error::parse(format!("lists.{key:?}"), "vertex given twice"));
                    }
                }
                lists
                    .into_iter()
                    .enumerate()
                    .map(|(v, l)| l.ok_or_else(|| Error::parse("lists", format!("no list for vertex {v}"))))
                    .collect::<Result<Vec<_>>>()?
            }
            None if identity => match self.k {
                Some(k) => vec![(0..k as Colour).collect(); n],
                None => return Err(Error::parse("lists", "identity mode needs lists or k")),
            },
            None => return Err(Error::parse("lists", "missing")),
        };
        let mut a = if identity {
            if !self.matchings.is_empty() {
                return Err(Error::parse("matchings", "not allowed in identity mode"));
            }
            correspondence::from_lists(g, lists)?
        } else {
            let mut matchings = BTreeMap::new();
            for (key, pairs) in &self.matchings {
                let at = || format!("matchings.{key:?}");
                let (x, y) = key
                    .split_once(',')
                    .ok_or_else(|| Error::parse(at(), "edge key must be \"u,v\""))?;
                let u = parse_vertex(x, n, "matchings")?;
                let v = parse_vertex(y, n, "matchings")?;
                if u == v || !g.has_edge(u, v) {
                    return Err(Error::parse(at(), format!("{u},{v} is not an edge")));
                }
                let e = Edge::new(u, v);
                let oriented: Vec<(Colour, Colour)> = if e.0 == u {
                    pairs.clone()
                } else {
                    pairs.iter().map(|&(a, b)| (b, a)).collect()
                };
                if matchings.insert(e, oriented).is_some() {
                    return Err(Error::parse(at(), "edge given twice"));
                }
            }
            CorrespondenceAssignment {
                lists,
                matchings,
                k: None,
            }
        };
        a.k = self.k;
        a.validate(g).map_err(|vs| {
            let msgs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            Error::InvalidAssignment(msgs.join("; "))
        })?;
        Ok(a)
    }
}

pub fn parse_assignment(text: &str, g: &Graph) -> Result<CorrespondenceAssignment> {
    let doc: AssignmentDoc = serde_json::from_str(text).map_err(json_error)?;
    doc.resolve(g)
}

/// Explicit form: every stored matching is written, empty ones included.
pub fn emit_assignment(a: &CorrespondenceAssignment) -> String {
    let lists: Vec<(String, Vec<Colour>)> = a
        .lists
        .iter()
        .enumerate()
        .map(|(v, l)| (v.to_string(), l.clone()))
        .collect();
    let matchings: Vec<(String, Vec<(Colour, Colour)>)> = a
        .matchings
        .iter()
        .map(|(e, m)| (format!("{},{}", e.0, e.1), m.clone()))
        .collect();
    let mut doc = serde_json::Map::new();
    if let Some(k) = a.k {
        doc.insert("k".into(), k.into());
    }
    doc.insert("lists".into(), serde_json::to_value(Ordered(&lists)).expect("plain data"));
    doc.insert(
        "matchings".into(),
        serde_json::to_value(Ordered(&matchings)).expect("plain data"),
    );
    serde_json::Value::Object(doc).to_string()
}

/// `{"v": colour}`.
pub fn parse_colouring(text: &str) -> Result<PartialColouring> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn emit_colouring(c: &PartialColouring) -> String {
    serde_json::to_string(c).expect("plain data")
}

pub fn emit_graphs(graphs: &[Graph]) -> String {
    graphs.iter().map(|g| graph6::encode(g) + "\n").collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Everything needed to rerun a command and get the same report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub k: Option<usize>,
    pub r: Option<usize>,
    #[serde(with = "rational::option", default)]
    pub epsilon: Option<Rational>,
    pub budget: Option<u64>,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
}

/// A row of a batch bound report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub graph_id: String,
    pub bound_name: String,
    pub count: String,
    pub holds: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn graph6_corpus_line() {
        match ingest_str("D??\n").unwrap() {
            Input::Graphs(gs) => {
                assert_eq!(gs.len(), 1);
                assert_eq!(gs[0].vertex_count(), 5);
                assert_eq!(gs[0].edge_count(), 0);
            }
            other => panic!("{other:?}"),
        }
        let err = ingest_str("D??\nD?\n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn embedding_round_trip() {
        for pg in [families::plane_wheel(5).unwrap(), families::plane_icosahedron()] {
            let text = emit_embedding(&pg);
            assert_eq!(parse_embedding(&text).unwrap(), pg);
        }
    }

    #[test]
    fn embedding_rejections() {
        // K4 with one rotation reversed has the wrong face count
        let bad = r#"{"rotation": {"0": [1,2,3], "1": [0,2,3], "2": [0,1,3], "3": [0,1,2]}, "outer_face": [0,1,2]}"#;
        let err = parse_embedding(bad).unwrap_err().to_string();
        assert!(err.contains("v - e + f"), "{err}");
        let asym = r#"{"rotation": {"0": [1], "1": []}, "outer_face": [0]}"#;
        assert!(parse_embedding(asym).unwrap_err().to_string().contains("not the reverse"));
        let syntax = "{\"rotation\": {\n\"0\": [1,}";
        assert!(parse_embedding(syntax).unwrap_err().to_string().contains("line 2"));
    }

    #[test]
    fn assignment_forms() {
        let g = families::cycle(3).unwrap();
        let a = parse_assignment(
            r#"{"lists": {"0": [0,1], "1": [0,1], "2": [0,1]}, "matchings": {"1,0": [[1,0]]}}"#,
            &g,
        )
        .unwrap();
        assert_eq!(a.matching(Edge::new(0, 1)), &[(0, 1)]);
        assert!(a.matching(Edge::new(1, 2)).is_empty());
        let id = parse_assignment(r#"{"k": 3, "mode": "identity"}"#, &g).unwrap();
        assert_eq!(id.lists, correspondence::uniform(&g, 3).lists);
        assert_eq!(id.matchings, correspondence::uniform(&g, 3).matchings);
        let err = parse_assignment(
            r#"{"lists": {"0": [0], "1": [0], "2": [0]}, "matchings": {"0,1": [[0,0],[0,0]]}}"#,
            &g,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidAssignment(_)), "{err}");
        let err = parse_assignment(r#"{"lists": {"0": [0], "1": [0], "5": [0]}}"#, &g).unwrap_err();
        assert!(err.to_string().contains("lists.\"5\""), "{err}");
    }

    #[test]
    fn assignment_and_colouring_round_trip() {
        let g = families::wheel(5).unwrap();
        let mut a = correspondence::uniform(&g, 4);
        a.matchings.insert(Edge::new(0, 1), vec![]);
        a.k = Some(4);
        assert_eq!(parse_assignment(&emit_assignment(&a), &g).unwrap(), a);
        let c = PartialColouring::from_full(&[3, 1, 2, 0, 1, 2]);
        assert_eq!(parse_colouring(&emit_colouring(&c)).unwrap(), c);
    }

    #[test]
    fn manifest_json() {
        let m = RunManifest {
            command: "count".into(),
            epsilon: Some(Rational::new(1, 50)),
            seed: 7,
            ..Default::default()
        };
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains(r#""epsilon":{"num":1,"den":50}"#));
        assert_eq!(serde_json::from_str::<RunManifest>(&text).unwrap(), m);
    }
}
