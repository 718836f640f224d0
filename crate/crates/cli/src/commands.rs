use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use corrcount::bounds::{self, BoundName, Threshold};
use corrcount::correspondence::{self, CorrespondenceAssignment, PartialColouring};
use corrcount::counting::{count_colourings, count_extensions, CountConfig, CountResult, DEFAULT_NODE_BUDGET};
use corrcount::extension::{extend_3cc_girth5, extend_5cc_traced};
use corrcount::graph::{edge_girth, girth, vertex_girth, Girth};
use corrcount::io::{Format, RunManifest};
use corrcount::rational::{format_rational, Rational};
use corrcount::structure::{
    cheeger_disk_check, deficiency, deletable_subgraph_search, is_critical, is_exponentially_deletable,
    subsets_by_size, DeletabilityStatus,
};
use corrcount::{graph6, planarity, Edge, Error, Graph, Subgraph, VertexSet};

use crate::input::{self, AssignmentSource, Instance};
use crate::output::Report;
use crate::{exit, Cli, Command, SearchMode};

pub enum Failure {
    UnknownBound(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(Report, u8), Failure>;

/// Default assignment budget for deletability checks.
const DELETABLE_BUDGET: u64 = 10_000_000;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Count { graph, assignment, k, samples } => count(cli, graph, assignment, *k, *samples),
        Command::Extend { embedding, assignment, precoloured, girth5, independent } => {
            extend(cli, embedding, assignment, precoloured, *girth5, independent)
        }
        Command::Verify { bound, graph, assignment, k, samples, precoloured, count_override } => verify(
            cli,
            bound,
            graph,
            assignment.as_deref(),
            *k,
            *samples,
            precoloured.as_deref(),
            count_override.as_deref(),
        ),
        Command::Search { mode } => search(cli, mode),
        Command::Deficiency { graph, h, h_edges, g_param, epsilon } => {
            deficiency_cmd(cli, graph, h, h_edges.as_deref(), *g_param, *epsilon)
        }
        Command::Girth { graph, edge, vertex } => girth_cmd(cli, graph, edge.as_deref(), *vertex),
    }
}

fn manifest(cli: &Cli, command: &str, inputs: &[&str]) -> RunManifest {
    RunManifest {
        command: command.into(),
        inputs: inputs.iter().map(Into::into).collect(),
        budget: cli.budget,
        seed: cli.seed,
        output: cli.out.clone(),
        format: cli.format.into(),
        ..Default::default()
    }
}

/// Each instance draws from its own stream, so results do not depend on scheduling.
fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

#[cfg(feature = "parallel")]
fn map_ordered<T: Sync, U: Send>(items: &[T], f: impl Fn(usize, &T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().enumerate().map(|(i, x)| f(i, x)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_ordered<T, U>(items: &[T], f: impl Fn(usize, &T) -> U) -> Vec<U> {
    items.iter().enumerate().map(|(i, x)| f(i, x)).collect()
}

fn count_config(cli: &Cli) -> CountConfig {
    CountConfig {
        node_budget: cli.budget.unwrap_or(DEFAULT_NODE_BUDGET),
        ..Default::default()
    }
}

fn vertices(set: VertexSet) -> Vec<usize> {
    set.iter().collect()
}

#[derive(Serialize)]
struct CountRow {
    graph_id: String,
    graph6: String,
    assignment: String,
    result: CountResult,
}

fn count(cli: &Cli, graph: &str, assignment: &str, k: Option<usize>, samples: usize) -> Outcome {
    let instances = input::graphs(graph)?;
    let source = AssignmentSource::parse(assignment, k)?;
    let config = count_config(cli);
    let per: Vec<corrcount::Result<Vec<CountRow>>> = map_ordered(&instances, |i, inst| {
        let mut rng = instance_rng(cli.seed, i);
        let mut out = Vec::new();
        for (label, a) in source.draw(&inst.graph, samples, &mut rng)? {
            out.push(CountRow {
                graph_id: inst.id.clone(),
                graph6: graph6::encode(&inst.graph),
                assignment: label,
                result: count_colourings(&inst.graph, &a, &config)?,
            });
        }
        Ok(out)
    });
    let mut rows = Vec::new();
    for r in per {
        rows.extend(r?);
    }
    let code = if rows.iter().any(|r| r.result.truncated) { exit::TRUNCATED } else { 0 };
    let mut m = manifest(cli, "count", &[graph, assignment]);
    m.k = k;
    let csv = rows
        .iter()
        .map(|r| {
            vec![
                r.graph_id.clone(),
                r.assignment.clone(),
                r.result.count.to_string(),
                r.result.explored_nodes.to_string(),
                r.result.truncated.to_string(),
            ]
        })
        .collect();
    let header = vec!["graph_id", "assignment", "count", "explored_nodes", "truncated"];
    let doc = json!({ "manifest": m, "results": rows });
    Ok((Report::tabular(cli.format.into(), header, csv, &doc), code))
}

fn extend(cli: &Cli, embedding: &str, assignment: &str, precoloured: &str, girth5: bool, independent: &str) -> Outcome {
    let inst = single(input::graphs(embedding)?, embedding)?;
    let pg = inst.plane()?;
    let g = pg.graph();
    let a = input::assignment_file(assignment, g)?;
    let phi = input::colouring(precoloured)?;
    let s = Subgraph::induced(g, phi.domain());
    let (colouring, route) = if girth5 {
        let ind: VertexSet = input::vertex_list(independent, g.vertex_count())?.into_iter().collect();
        (extend_3cc_girth5(&pg, &a, &s, ind, &phi)?, None)
    } else {
        let x = extend_5cc_traced(&pg, &a, &s, &phi)?;
        (x.colouring, Some(x.route))
    };
    let m = manifest(cli, "extend", &[embedding, assignment, precoloured]);
    let doc = json!({ "manifest": m, "graph_id": inst.id, "colouring": colouring, "route": route });
    Ok((Report::Json(doc), 0))
}

fn single(mut instances: Vec<Instance>, spec: &str) -> corrcount::Result<Instance> {
    if instances.len() != 1 {
        return Err(Error::InvalidArgument(format!("{spec} holds {} graphs, expected one", instances.len())));
    }
    Ok(instances.remove(0))
}

#[derive(Serialize)]
struct VerifyRow {
    graph_id: String,
    assignment: Option<String>,
    bound_name: String,
    /// The compared quantity: a colouring count, the Euler slack or the interior size.
    count: String,
    holds: bool,
    /// False when a truncated count fell short of the bound.
    conclusive: bool,
    detail: serde_json::Value,
}

#[derive(Serialize)]
struct Skipped {
    graph_id: String,
    assignment: Option<String>,
    reason: String,
}

enum Entry {
    Row(VerifyRow),
    Skip(Skipped),
}

struct VerifyJob<'a> {
    name: BoundName,
    phi: Option<&'a PartialColouring>,
    override_count: Option<&'a BigUint>,
    config: CountConfig,
    budget: u128,
}

impl VerifyJob<'_> {
    fn counted(&self, inst: &Instance, label: Option<String>, count: CountResult, threshold: &Threshold) -> Entry {
        let count = match self.override_count {
            Some(c) => CountResult { count: c.clone(), ..count },
            None => count,
        };
        let verdict = bounds::verify_bound(self.name.as_str(), &count, threshold);
        Entry::Row(VerifyRow {
            graph_id: inst.id.clone(),
            assignment: label,
            bound_name: self.name.as_str().into(),
            count: count.count.to_string(),
            holds: verdict.holds,
            conclusive: verdict.conclusive,
            detail: serde_json::to_value(&verdict).expect("plain data"),
        })
    }

    fn evaluate(&self, inst: &Instance, labelled: Option<(String, CorrespondenceAssignment)>) -> corrcount::Result<Entry> {
        let g = &inst.graph;
        let n = g.vertex_count();
        let (label, a) = match labelled {
            Some((l, a)) => (Some(l), Some(a)),
            None => (None, None),
        };
        let skip = |reason: &str| {
            Ok(Entry::Skip(Skipped {
                graph_id: inst.id.clone(),
                assignment: label.clone(),
                reason: reason.into(),
            }))
        };
        let planar = inst.plane.is_some() || planarity::is_planar(g);
        if !planar {
            return skip("not planar");
        }
        let girth5 = girth(g) >= Girth::Finite(5);
        let min_list = a.as_ref().map_or(0, |a| a.min_list_size());
        use BoundName::*;
        match self.name {
            Planar5cc | Girth5Threecc => {
                let a = a.expect("assignment drawn");
                let (need, t) = if self.name == Planar5cc {
                    (5, bounds::planar_5cc_bound(n))
                } else {
                    if !girth5 {
                        return skip("girth below five");
                    }
                    (3, bounds::girth5_3cc_bound(n))
                };
                if min_list < need {
                    return skip("lists too short");
                }
                let c = count_colourings(g, &a, &self.config)?;
                Ok(self.counted(inst, label, c, &t))
            }
            Extension5cc | Extension3cc => {
                let a = a.expect("assignment drawn");
                let phi = self.phi.expect("checked by caller");
                let s = Subgraph::induced(g, phi.domain());
                if !s.vertices.is_empty() && !s.is_connected(n) {
                    return skip("precoloured subgraph is not connected");
                }
                let (need, t) = if self.name == Extension5cc {
                    (5, bounds::extension_5cc_bound(g, &s)?)
                } else {
                    if !girth5 {
                        return skip("girth below five");
                    }
                    (3, bounds::extension_3cc_bound(g, &s)?)
                };
                if min_list < need {
                    return skip("lists too short");
                }
                let c = count_extensions(g, &a, &s, phi, &self.config)?;
                if c.count == BigUint::from(0u8) && !c.truncated && self.override_count.is_none() {
                    return skip("precolouring does not extend");
                }
                Ok(self.counted(inst, label, c, &t))
            }
            AlonFuredi => {
                let a = a.expect("assignment drawn");
                let identity = correspondence::from_lists(g, a.lists.clone())?;
                if identity.matchings != a.matchings {
                    return skip("matchings are not the identity on shared colours");
                }
                let (s_sum, vn, d, t) = bounds::alon_furedi_params(g, &a);
                if t < 2 {
                    return skip("largest list has fewer than two colours");
                }
                let c = count_colourings(g, &a, &self.config)?;
                if c.count == BigUint::from(0u8) && !c.truncated && self.override_count.is_none() {
                    return skip("no colouring exists");
                }
                Ok(self.counted(inst, label, c, &bounds::alon_furedi(s_sum, vn, d, t)?))
            }
            BirkhoffLewis => {
                if n < 3 || g.edge_count() != 3 * n - 6 {
                    return skip("not a triangulation");
                }
                let c = count_colourings(g, &correspondence::uniform(g, 5), &self.config)?;
                Ok(self.counted(inst, Some("identity".into()), c, &bounds::birkhoff_lewis_bound(n)?))
            }
            LocalGirth => {
                let pg = inst.plane()?;
                let a = correspondence::from_lists(g, correspondence::local_girth_lists(&pg))?;
                let c = count_colourings(g, &a, &self.config)?;
                Ok(self.counted(inst, Some("local-girth".into()), c, &bounds::local_girth_bound(n)))
            }
            EulerGirth => {
                if g.is_forest() {
                    return skip("no cycle");
                }
                let slack = bounds::euler_girth_slack(g)?;
                let holds = slack >= Rational::from_integer(2);
                Ok(Entry::Row(VerifyRow {
                    graph_id: inst.id.clone(),
                    assignment: None,
                    bound_name: self.name.as_str().into(),
                    count: format_rational(&slack),
                    holds,
                    conclusive: true,
                    detail: json!({ "slack": format_rational(&slack), "required": 2 }),
                }))
            }
            Cheeger52 | Cheeger270 => {
                let (r, eps, c) = if self.name == Cheeger52 {
                    (5, Rational::new(1, 3484), Rational::from_integer(52))
                } else {
                    if !girth5 {
                        return skip("girth below five");
                    }
                    (3, Rational::new(1, 25380), Rational::from_integer(270))
                };
                // membership: no exponentially deletable induced subgraph
                for x in subsets_by_size(g.vertices()).filter(|x| !x.is_empty()) {
                    let v = is_exponentially_deletable(g, &Subgraph::induced(g, x), r, eps, self.budget)?;
                    match v.status {
                        DeletabilityStatus::Deletable => {
                            return skip(&format!("G[{:?}] is exponentially deletable", vertices(x)))
                        }
                        DeletabilityStatus::UnknownBudget => return skip("membership undetermined within budget"),
                        DeletabilityStatus::NotDeletable => {}
                    }
                }
                let pg = inst.plane()?;
                let v = cheeger_disk_check(&pg, pg.outer_face(), c)?;
                Ok(Entry::Row(VerifyRow {
                    graph_id: inst.id.clone(),
                    assignment: None,
                    bound_name: self.name.as_str().into(),
                    count: v.interior.to_string(),
                    holds: v.holds,
                    conclusive: true,
                    detail: serde_json::to_value(&v).expect("plain data"),
                }))
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    cli: &Cli,
    bound: &str,
    graph: &str,
    assignment: Option<&str>,
    k: Option<usize>,
    samples: usize,
    precoloured: Option<&str>,
    count_override: Option<&str>,
) -> Outcome {
    let name: BoundName = bound.parse().map_err(|e: Error| Failure::UnknownBound(e.to_string()))?;
    let instances = input::graphs(graph)?;
    let override_count = count_override
        .map(|s| {
            BigUint::parse_bytes(s.as_bytes(), 10)
                .ok_or_else(|| Error::InvalidArgument(format!("--count-override {s:?} is not a count")))
        })
        .transpose()?;
    let phi = precoloured.map(input::colouring).transpose()?;
    use BoundName::*;
    let default_source = match name {
        Planar5cc | Extension5cc => Some(AssignmentSource::Permutation(k.unwrap_or(5))),
        Girth5Threecc | Extension3cc => Some(AssignmentSource::Permutation(k.unwrap_or(3))),
        AlonFuredi => Some(AssignmentSource::Identity(k.unwrap_or(3))),
        BirkhoffLewis | LocalGirth | EulerGirth | Cheeger52 | Cheeger270 => None,
    };
    let source = match (assignment, &default_source) {
        (Some(text), Some(_)) => Some(AssignmentSource::parse(text, k.or(Some(5)))?),
        (Some(_), None) => {
            return Err(Error::InvalidArgument(format!("{name} takes no --assignment")).into());
        }
        (None, d) => d.clone(),
    };
    if matches!(name, Extension5cc | Extension3cc) && phi.is_none() {
        return Err(Error::InvalidArgument(format!("{name} needs --precoloured")).into());
    }
    let job = VerifyJob {
        name,
        phi: phi.as_ref(),
        override_count: override_count.as_ref(),
        config: count_config(cli),
        budget: cli.budget.unwrap_or(DELETABLE_BUDGET) as u128,
    };
    let per: Vec<corrcount::Result<Vec<Entry>>> = map_ordered(&instances, |i, inst| {
        let mut rng = instance_rng(cli.seed, i);
        match &source {
            Some(src) => src
                .draw(&inst.graph, samples, &mut rng)?
                .into_iter()
                .map(|la| job.evaluate(inst, Some(la)))
                .collect(),
            None => Ok(vec![job.evaluate(inst, None)?]),
        }
    });
    let (mut rows, mut skipped) = (Vec::new(), Vec::new());
    for entries in per {
        for e in entries? {
            match e {
                Entry::Row(r) => rows.push(r),
                Entry::Skip(s) => skipped.push(s),
            }
        }
    }
    let falsified = rows.iter().any(|r| !r.holds && r.conclusive);
    let inconclusive = rows.iter().any(|r| !r.holds && !r.conclusive);
    let code = if falsified {
        exit::FALSIFIED
    } else if inconclusive {
        exit::TRUNCATED
    } else {
        0
    };
    let mut m = manifest(cli, "verify", &[bound, graph]);
    m.k = k;
    let csv = rows
        .iter()
        .map(|r| vec![r.graph_id.clone(), r.bound_name.clone(), r.count.clone(), r.holds.to_string()])
        .collect();
    let doc = json!({
        "manifest": m,
        "bound": name.as_str(),
        "all_hold": !falsified && !inconclusive,
        "verdicts": rows,
        "skipped": skipped,
    });
    Ok((Report::tabular(cli.format.into(), vec!["graph_id", "bound_name", "count", "holds"], csv, &doc), code))
}

fn search(cli: &Cli, mode: &SearchMode) -> Outcome {
    if matches!(cli.format, crate::FormatArg::Csv) {
        return Err(Error::InvalidArgument("search writes JSON lines only".into()).into());
    }
    match mode {
        SearchMode::Deletable { graph, r, h } => {
            let instances = input::graphs(graph)?;
            let budget = cli.budget.unwrap_or(DELETABLE_BUDGET) as u128;
            let per: Vec<corrcount::Result<Option<serde_json::Value>>> = map_ordered(&instances, |_, inst| {
                let g = &inst.graph;
                let hs = input::subgraph(g, h, None)?;
                let out = deletable_subgraph_search(g, &hs, *r, budget)?;
                Ok(match out.found {
                    Some(x) => Some(json!({
                        "kind": "deletable",
                        "graph_id": inst.id,
                        "r": r,
                        "h": vertices(hs.vertices),
                        "x": vertices(x),
                        "complete": out.complete,
                        "candidates_checked": out.candidates_checked,
                    })),
                    None if !out.complete => Some(json!({
                        "kind": "partial",
                        "graph_id": inst.id,
                        "r": r,
                        "h": vertices(hs.vertices),
                        "x": null,
                        "complete": false,
                        "candidates_checked": out.candidates_checked,
                    })),
                    None => None,
                })
            });
            let mut lines = Vec::new();
            for p in per {
                lines.extend(p?);
            }
            let partial = lines.iter().any(|l| l["complete"] == false);
            Ok((Report::Lines(lines), if partial { exit::TRUNCATED } else { 0 }))
        }
        SearchMode::Critical { graph, assignment, s, s_edges } => {
            let mut lines = Vec::new();
            for inst in input::graphs(graph)? {
                let g = &inst.graph;
                let a = input::assignment_file(assignment, g)?;
                let sub = input::subgraph(g, s, s_edges.as_deref())?;
                let v = is_critical(g, &sub, &a)?;
                if v.critical {
                    lines.push(json!({
                        "kind": "critical",
                        "graph_id": inst.id,
                        "s": vertices(sub.vertices),
                        "certificate": v.certificate,
                        "s_colourings": v.s_colourings,
                        "non_extendable": v.non_extendable,
                    }));
                }
            }
            Ok((Report::Lines(lines), 0))
        }
    }
}

fn deficiency_cmd(cli: &Cli, graph: &str, h: &str, h_edges: Option<&str>, g_param: u32, epsilon: Option<Rational>) -> Outcome {
    let mut results = Vec::new();
    let mut csv = Vec::new();
    for inst in input::graphs(graph)? {
        let sub = input::subgraph(&inst.graph, h, h_edges)?;
        let mut rep = deficiency(&inst.graph, &sub, g_param)?;
        if let Some(eps) = epsilon {
            rep = rep.with_epsilon(eps);
        }
        csv.push(vec![
            inst.id.clone(),
            g_param.to_string(),
            rep.v_diff.to_string(),
            rep.e_diff.to_string(),
            rep.def_g.to_string(),
            epsilon.map(|e| format_rational(&e)).unwrap_or_default(),
            rep.d_sign.map(|s| s.to_string()).unwrap_or_default(),
        ]);
        results.push(json!({ "graph_id": inst.id, "report": rep }));
    }
    let mut m = manifest(cli, "deficiency", &[graph]);
    m.epsilon = epsilon;
    let header = vec!["graph_id", "g", "v_diff", "e_diff", "def", "epsilon", "d_sign"];
    let doc = json!({ "manifest": m, "results": results });
    Ok((Report::tabular(cli.format.into(), header, csv, &doc), 0))
}

fn girth_cmd(cli: &Cli, graph: &str, edge: Option<&str>, vertex: Option<usize>) -> Outcome {
    let mut results = Vec::new();
    let mut csv = Vec::new();
    for inst in input::graphs(graph)? {
        let g: &Graph = &inst.graph;
        let e_girth = match edge {
            Some(text) => {
                let ends = input::vertex_list(text, g.vertex_count())?;
                let [a, b] = ends[..] else {
                    return Err(Error::InvalidArgument(format!("--edge {text:?} should be u,v")).into());
                };
                Some(edge_girth(g, Edge::new(a, b))?)
            }
            None => None,
        };
        let v_girth = vertex.map(|v| vertex_girth(g, v)).transpose()?;
        let total = girth(g);
        let show = |x: Option<Girth>| x.map(|x| x.to_string()).unwrap_or_default();
        csv.push(vec![inst.id.clone(), total.to_string(), show(e_girth), show(v_girth)]);
        results.push(json!({
            "graph_id": inst.id,
            "girth": total,
            "edge_girth": e_girth,
            "vertex_girth": v_girth,
        }));
    }
    let header = vec!["graph_id", "girth", "edge_girth", "vertex_girth"];
    let doc = json!({ "manifest": manifest(cli, "girth", &[graph]), "results": results });
    Ok((Report::tabular(Format::from(cli.format), header, csv, &doc), 0))
}
