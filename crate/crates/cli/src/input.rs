//! Resolving graph, embedding, assignment and vertex-list arguments.

use std::path::Path;

use corrcount::correspondence::{self, CorrespondenceAssignment, PartialColouring};
use corrcount::io::{self, Input};
use corrcount::{corpus, families, graph6, planarity, Edge, Error, Graph, PlaneGraph, Result, Subgraph, VertexSet};

pub struct Instance {
    pub id: String,
    pub graph: Graph,
    pub plane: Option<PlaneGraph>,
}

impl Instance {
    fn abstract_graph(id: String, graph: Graph) -> Self {
        Instance { id, graph, plane: None }
    }

    /// The given embedding, or one computed for a planar graph.
    pub fn plane(&self) -> Result<PlaneGraph> {
        match &self.plane {
            Some(pg) => Ok(pg.clone()),
            None => planarity::embed(&self.graph)
                .ok_or_else(|| Error::PreconditionViolation(format!("{} is not planar", self.id))),
        }
    }
}

/// A graph argument: a file of graph6 lines or a JSON embedding, a corpus
/// `corpus:<family>:<max n>`, a named family such as `c5` or `grid(2,3)`, or
/// a graph6 string.
pub fn graphs(spec: &str) -> Result<Vec<Instance>> {
    let path = Path::new(spec);
    if path.is_file() {
        let stem = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok(match io::ingest(path)? {
            Input::Graphs(gs) => gs
                .into_iter()
                .enumerate()
                .map(|(i, g)| Instance::abstract_graph(format!("{stem}:{}", i + 1), g))
                .collect(),
            Input::Embedding(pg) => vec![Instance {
                id: stem,
                graph: pg.graph().clone(),
                plane: Some(pg),
            }],
            Input::Assignment(_) => {
                return Err(Error::Parse {
                    location: spec.into(),
                    message: "expected graphs or an embedding, found an assignment".into(),
                })
            }
        });
    }
    if let Some(rest) = spec.strip_prefix("corpus:") {
        return corpus_graphs(rest);
    }
    if let Ok(pg) = families::named_plane(spec) {
        return Ok(vec![Instance {
            id: spec.into(),
            graph: pg.graph().clone(),
            plane: Some(pg),
        }]);
    }
    if let Ok(g) = families::named(spec) {
        return Ok(vec![Instance::abstract_graph(spec.into(), g)]);
    }
    match graph6::decode(spec) {
        Ok(g) => Ok(vec![Instance::abstract_graph(spec.into(), g)]),
        Err(e) => Err(Error::Parse {
            location: "--graph".into(),
            message: format!("{spec:?} is not a file, corpus, family name or graph6 string ({e})"),
        }),
    }
}

fn corpus_graphs(rest: &str) -> Result<Vec<Instance>> {
    let bad = || Error::Parse {
        location: "--graph".into(),
        message: format!("corpus spec {rest:?} should be <family>:<max n>"),
    };
    let (family, max_n) = rest.split_once(':').ok_or_else(bad)?;
    let max_n: usize = max_n.parse().map_err(|_| bad())?;
    let (levels, connected_only) = match family {
        "planar" => (corpus::planar_graphs(max_n)?, false),
        "planar-connected" => (corpus::planar_graphs(max_n)?, true),
        "girth5" => (corpus::planar_girth5_graphs(max_n)?, false),
        "girth5-connected" => (corpus::planar_girth5_graphs(max_n)?, true),
        "outerplanar-girth5" => (corpus::outerplanar_girth5_graphs(max_n)?, false),
        _ => return Err(bad()),
    };
    Ok(levels
        .into_iter()
        .flatten()
        .filter(|g| !connected_only || g.is_connected())
        .map(|g| Instance::abstract_graph(graph6::encode(&g), g))
        .collect())
}

/// Comma-separated vertex ids.
pub fn vertex_list(text: &str, n: usize) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let v: usize = s.parse().map_err(|_| Error::Parse {
                location: "vertex list".into(),
                message: format!("{s:?} is not a vertex id"),
            })?;
            if v >= n {
                return Err(Error::UnknownVertex(v));
            }
            Ok(v)
        })
        .collect()
}

/// The subgraph on `vertices`, with `edges` (`u-v,...`) if given and the
/// induced edges otherwise.
pub fn subgraph(g: &Graph, vertices: &str, edges: Option<&str>) -> Result<Subgraph> {
    let set: VertexSet = vertex_list(vertices, g.vertex_count())?.into_iter().collect();
    let Some(edges) = edges else {
        return Ok(Subgraph::induced(g, set));
    };
    let mut es = Vec::new();
    for part in edges.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = part.split_once('-').ok_or_else(|| Error::Parse {
            location: "edge list".into(),
            message: format!("{part:?} should be u-v"),
        })?;
        let ends = vertex_list(&format!("{a},{b}"), g.vertex_count())?;
        let e = Edge::new(ends[0], ends[1]);
        if !g.contains_edge(e) {
            return Err(Error::UnknownEdge(e));
        }
        es.push(e);
    }
    let s = Subgraph::new(set, es)?;
    s.check_within(g)?;
    Ok(s)
}

pub fn read_text(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        location: path.into(),
        message: e.to_string(),
    })
}

pub fn colouring(path: &str) -> Result<PartialColouring> {
    io::parse_colouring(&read_text(path)?).map_err(|e| located(path, e))
}

pub fn assignment_file(path: &str, g: &Graph) -> Result<CorrespondenceAssignment> {
    io::parse_assignment(&read_text(path)?, g).map_err(|e| located(path, e))
}

fn located(path: &str, e: Error) -> Error {
    match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{path}: {location}"),
            message,
        },
        other => other,
    }
}

/// How assignments are produced for each graph.
#[derive(Clone, Debug)]
pub enum AssignmentSource {
    Identity(usize),
    /// Seeded random full permutations.
    Permutation(usize),
    File(String),
}

impl AssignmentSource {
    pub fn parse(text: &str, k: Option<usize>) -> Result<Self> {
        let need_k = || {
            k.ok_or_else(|| Error::InvalidArgument(format!("--assignment {text} needs --k")))
        };
        match text {
            "identity" => Ok(AssignmentSource::Identity(need_k()?)),
            "permutation" => Ok(AssignmentSource::Permutation(need_k()?)),
            path => Ok(AssignmentSource::File(path.into())),
        }
    }

    /// `samples` assignments for `g` (one for identity and files), labelled.
    pub fn draw<R: rand::Rng>(&self, g: &Graph, samples: usize, rng: &mut R) -> Result<Vec<(String, CorrespondenceAssignment)>> {
        Ok(match self {
            AssignmentSource::Identity(k) => vec![("identity".into(), correspondence::uniform(g, *k))],
            AssignmentSource::Permutation(k) => (0..samples)
                .map(|i| (format!("permutation#{i}"), correspondence::random_permutation_assignment(g, *k, rng)))
                .collect(),
            AssignmentSource::File(path) => vec![(path.clone(), assignment_file(path, g)?)],
        })
    }
}
