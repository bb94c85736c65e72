//! Instance files and solution output.
//!
//! Instance files are line based with 1-based vertices:
//!
//! ```text
//! c comment
//! p ccut <n> <m>
//! e <u> <v> <w>        (m times, w >= 1; edge ids follow record order)
//! r <v>: <u> <u#k> ... (optional cyclic neighbour order; #k picks edge record k)
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::decompose::{EdgeLabel, PartTree, Witness};
use crate::graph::{build_graph, EdgeId, Graph, GraphError};
use crate::planar::{HcReport, PlanarError, RotationSystem};
use crate::solver::{CountSolution, Solution, Stats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("missing `p ccut <n> <m>` header")]
    MissingHeader,
    #[error("line {line}: second header")]
    DuplicateHeader { line: usize },
    #[error("header announces {expected} edges but {found} were given")]
    CountMismatch { expected: usize, found: usize },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("no rotation given for vertex {0}")]
    MissingVertex(usize),
    #[error("rotation of vertex {vertex} is not a permutation of its neighbours")]
    NeighbourMismatch { vertex: usize },
}

fn malformed(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Malformed { line, reason: reason.into() }
}

fn number<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, FormatError> {
    let tok = tok.ok_or_else(|| malformed(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| malformed(line, format!("bad {what} `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut triples = Vec::new();
    let mut record_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") | Some("r") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(FormatError::DuplicateHeader { line });
                }
                if toks.next() != Some("ccut") {
                    return Err(malformed(line, "header must read `p ccut <n> <m>`"));
                }
                let n: usize = number(line, toks.next(), "vertex count")?;
                let m: usize = number(line, toks.next(), "edge count")?;
                if n == 0 {
                    return Err(malformed(line, "graph needs at least one vertex"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or(FormatError::MissingHeader)?;
                let u: usize = number(line, toks.next(), "endpoint")?;
                let v: usize = number(line, toks.next(), "endpoint")?;
                let w: i64 = number(line, toks.next(), "weight")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(malformed(line, format!("vertex {x} outside 1..={n}")));
                    }
                }
                if w < 1 {
                    return Err(malformed(line, format!("weight {w} must be at least 1")));
                }
                triples.push((u - 1, v - 1, w));
                record_lines.push(line);
            }
            Some(other) => return Err(malformed(line, format!("unknown record `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(malformed(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or(FormatError::MissingHeader)?;
    if triples.len() != m {
        return Err(FormatError::CountMismatch { expected: m, found: triples.len() });
    }
    build_graph(n, &triples).map_err(|e| match e {
        GraphError::WeightOverflow => malformed(*record_lines.last().unwrap_or(&0), "total weight overflows"),
        other => malformed(0, other.to_string()),
    })
}

/// Writes `g` so that [`parse_graph`] returns it with the same ids, provided
/// ids are `0..m`.
pub fn write_graph(g: &Graph, comments: &[String]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "c {c}");
    }
    let _ = writeln!(s, "p ccut {} {}", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(s, "e {} {} {}", e.u + 1, e.v + 1, e.weight);
    }
    s
}

pub fn parse_rotation(text: &str, g: &Graph) -> Result<RotationSystem, FormatError> {
    let n = g.vertex_count();
    let inc = g.incidence();
    let mut order: Vec<Option<Vec<EdgeId>>> = vec![None; n];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let Some(rest) = raw.trim_start().strip_prefix('r') else { continue };
        if !rest.starts_with(char::is_whitespace) {
            continue;
        }
        let (head, tail) = rest.split_once(':').ok_or_else(|| malformed(line, "rotation needs `r <v>: ...`"))?;
        let v: usize = number(line, Some(head.trim()), "vertex")?;
        if v == 0 || v > n {
            return Err(malformed(line, format!("vertex {v} outside 1..={n}")));
        }
        let v = v - 1;
        if order[v].is_some() {
            return Err(malformed(line, format!("second rotation for vertex {}", v + 1)));
        }
        let mut used = Vec::new();
        for tok in tail.split_whitespace() {
            let (u, k) = match tok.split_once('#') {
                Some((u, k)) => (u, Some(number::<usize>(line, Some(k), "edge record")?)),
                None => (tok, None),
            };
            let u: usize = number(line, Some(u), "neighbour")?;
            let candidates: Vec<EdgeId> = inc[v]
                .iter()
                .map(|&p| &g.edges()[p])
                .filter(|e| u >= 1 && e.other(v) == u - 1)
                .map(|e| e.id)
                .collect();
            let id = match k {
                Some(k) => *candidates
                    .iter()
                    .find(|id| id.0 + 1 == k)
                    .ok_or_else(|| malformed(line, format!("edge record {k} does not join {} and {u}", v + 1)))?,
                None => match candidates.as_slice() {
                    [id] => *id,
                    [] => return Err(malformed(line, format!("{u} is not a neighbour of {}", v + 1))),
                    _ => return Err(malformed(line, format!("parallel edges to {u} need a `#k` suffix"))),
                },
            };
            used.push(id);
        }
        order[v] = Some(used);
    }
    let order = order
        .into_iter()
        .enumerate()
        .map(|(v, r)| match r {
            Some(r) => Ok(r),
            None if inc[v].is_empty() => Ok(Vec::new()),
            None => Err(FormatError::MissingVertex(v + 1)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    RotationSystem::new(g, order).map_err(|e| match e {
        PlanarError::InvalidRotation { vertex, .. } => FormatError::NeighbourMismatch { vertex: vertex + 1 },
        other => malformed(0, other.to_string()),
    })
}

pub fn write_rotation(g: &Graph, rot: &RotationSystem) -> String {
    let mut s = String::new();
    for v in 0..g.vertex_count() {
        let _ = write!(s, "r {}:", v + 1);
        for &id in rot.at(v) {
            let e = g.edge(id).expect("rotation matches graph");
            let _ = write!(s, " {}#{}", e.other(v) + 1, id.0 + 1);
        }
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct StatsOut<'a> {
    parts: usize,
    rigid_kinds: BTreeMap<&'a str, usize>,
    elapsed_ms: u64,
}

impl<'a> StatsOut<'a> {
    fn of(s: &'a Stats) -> Self {
        StatsOut {
            parts: s.parts,
            rigid_kinds: s.rigid_kinds.iter().map(|(k, c)| (k.as_str(), *c)).collect(),
            elapsed_ms: s.elapsed_ms,
        }
    }

    fn text(&self) -> String {
        let kinds: Vec<String> = self.rigid_kinds.iter().map(|(k, c)| format!("{k}={c}")).collect();
        format!(
            "parts: {}\nrigid_kinds: {}\nelapsed_ms: {}\n",
            self.parts,
            if kinds.is_empty() { "-".to_string() } else { kinds.join(" ") },
            self.elapsed_ms
        )
    }
}

#[derive(Serialize)]
struct SolutionOut<'a> {
    status: &'static str,
    mode: &'static str,
    value: u64,
    side_a: Vec<usize>,
    side_b: Vec<usize>,
    cut_edges: Vec<[u64; 3]>,
    stats: StatsOut<'a>,
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = vs.iter().map(|v| v + 1).collect();
    out.sort_unstable();
    out
}

fn json_line(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialize");
    s.push('\n');
    s
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn emit_solution(g: &Graph, sol: &Solution, format: Format) -> String {
    let mut cut_edges: Vec<[u64; 3]> = sol
        .cut
        .edge_ids
        .iter()
        .map(|&id| {
            let e = g.edge(id).expect("cut edge belongs to the graph");
            let (a, b) = (e.u.min(e.v) + 1, e.u.max(e.v) + 1);
            [a as u64, b as u64, e.weight]
        })
        .collect();
    cut_edges.sort_unstable();
    let out = SolutionOut {
        status: "ok",
        mode: sol.mode.name(),
        value: sol.value,
        side_a: one_based(&sol.cut.side_a),
        side_b: one_based(&sol.cut.side_b),
        cut_edges,
        stats: StatsOut::of(&sol.stats),
    };
    match format {
        Format::Json => json_line(&out),
        Format::Text => {
            let edges: Vec<String> = out.cut_edges.iter().map(|[u, v, w]| format!("{u}-{v}:{w}")).collect();
            format!(
                "status: ok\nmode: {}\nvalue: {}\nside_a: {}\nside_b: {}\ncut_edges: {}\n{}",
                out.mode,
                out.value,
                list(&out.side_a),
                list(&out.side_b),
                edges.join(" "),
                out.stats.text()
            )
        }
    }
}

#[derive(Serialize)]
struct CountOut<'a> {
    status: &'static str,
    mode: &'static str,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_part: Option<Vec<PartCountOut>>,
    stats: StatsOut<'a>,
}

#[derive(Serialize)]
struct PartCountOut {
    part: usize,
    kind: &'static str,
    cuts: usize,
}

/// Count output; `per_part` pairs each part's kind name with its own cut count.
pub fn emit_count(sol: &CountSolution, per_part: Option<&[(&'static str, usize)]>, format: Format) -> String {
    let out = CountOut {
        status: "ok",
        mode: "count",
        value: sol.value.to_str_radix(10),
        per_part: per_part
            .map(|pp| pp.iter().enumerate().map(|(part, &(kind, cuts))| PartCountOut { part, kind, cuts }).collect()),
        stats: StatsOut::of(&sol.stats),
    };
    match format {
        Format::Json => json_line(&out),
        Format::Text => {
            let mut s = format!("status: ok\nmode: count\nvalue: {}\n", out.value);
            for p in out.per_part.iter().flatten() {
                let _ = writeln!(s, "part {}: {} {}", p.part, p.kind, p.cuts);
            }
            s + &out.stats.text()
        }
    }
}

/// Decimal rendering used for counts.
pub fn count_string(v: &BigUint) -> String {
    v.to_str_radix(10)
}

#[derive(Serialize)]
struct WitnessOut {
    status: &'static str,
    vertices: Vec<usize>,
    /// `[u, v, record]`, with record 0 for virtual edges.
    edges: Vec<[usize; 3]>,
}

pub fn emit_not_in_class(w: &Witness, format: Format) -> String {
    let mut edges: Vec<[usize; 3]> = w
        .edges
        .iter()
        .map(|&(u, v, id)| [u.min(v) + 1, u.max(v) + 1, id.map_or(0, |id| id.0 + 1)])
        .collect();
    edges.sort_unstable();
    let out = WitnessOut { status: "not_in_class", vertices: one_based(&w.vertices), edges };
    match format {
        Format::Json => json_line(&out),
        Format::Text => {
            let es: Vec<String> = out
                .edges
                .iter()
                .map(|[u, v, r]| if *r == 0 { format!("{u}-{v}:virtual") } else { format!("{u}-{v}:e{r}") })
                .collect();
            format!(
                "status: not_in_class\nwitness_vertices: {}\nwitness_edges: {}\n",
                list(&out.vertices),
                es.join(" ")
            )
        }
    }
}

#[derive(Serialize)]
struct PartOut {
    id: usize,
    block: usize,
    kind: &'static str,
    vertices: Vec<usize>,
    /// `[u, v, record]`, with record 0 for virtual edges.
    edges: Vec<[usize; 3]>,
}

#[derive(Serialize)]
struct DecompositionOut<'a> {
    status: &'static str,
    blocks: usize,
    parts: Vec<PartOut>,
    twins: Vec<[usize; 2]>,
    articulations: Vec<usize>,
    rigid_kinds: BTreeMap<&'a str, usize>,
}

pub fn emit_decomposition(tree: &PartTree, format: Format) -> String {
    let parts: Vec<PartOut> = tree
        .parts
        .iter()
        .enumerate()
        .map(|(id, p)| PartOut {
            id,
            block: p.block,
            kind: p.kind().name(),
            vertices: one_based(&p.vertices),
            edges: p
                .edges
                .iter()
                .map(|e| {
                    let (a, b) = (p.vertices[e.a], p.vertices[e.b]);
                    let record = match e.label {
                        EdgeLabel::Real { id, .. } => id.0 + 1,
                        EdgeLabel::Virtual { .. } => 0,
                    };
                    [a.min(b) + 1, a.max(b) + 1, record]
                })
                .collect(),
        })
        .collect();
    let mut rigid_kinds = BTreeMap::new();
    for k in tree.rigid_kinds() {
        *rigid_kinds.entry(k.name()).or_insert(0) += 1;
    }
    let out = DecompositionOut {
        status: "ok",
        blocks: tree.blocks.len(),
        parts,
        twins: tree.twins.iter().map(|t| [t.ends[0].0, t.ends[1].0]).collect(),
        articulations: tree.articulations.iter().map(|a| a.vertex + 1).collect(),
        rigid_kinds,
    };
    match format {
        Format::Json => json_line(&out),
        Format::Text => {
            let mut s = format!("status: ok\nblocks: {}\nparts: {}\n", out.blocks, out.parts.len());
            for p in &out.parts {
                let _ = writeln!(s, "part {} (block {}): {} on {}", p.id, p.block, p.kind, list(&p.vertices));
            }
            for t in &out.twins {
                let _ = writeln!(s, "twin: {} {}", t[0], t[1]);
            }
            let _ = writeln!(s, "articulations: {}", list(&out.articulations));
            s
        }
    }
}

#[derive(Serialize)]
struct RecognizeOut<'a> {
    status: &'static str,
    in_class: bool,
    blocks: usize,
    parts: usize,
    rigid_kinds: BTreeMap<&'a str, usize>,
}

pub fn emit_recognized(tree: &PartTree, format: Format) -> String {
    let mut rigid_kinds = BTreeMap::new();
    for k in tree.rigid_kinds() {
        *rigid_kinds.entry(k.name()).or_insert(0) += 1;
    }
    let out = RecognizeOut { status: "ok", in_class: true, blocks: tree.blocks.len(), parts: tree.parts.len(), rigid_kinds };
    match format {
        Format::Json => json_line(&out),
        Format::Text => {
            let kinds: Vec<String> = out.rigid_kinds.iter().map(|(k, c)| format!("{k}={c}")).collect();
            format!(
                "status: ok\nin_class: true\nblocks: {}\nparts: {}\nrigid_kinds: {}\n",
                out.blocks,
                out.parts,
                if kinds.is_empty() { "-".to_string() } else { kinds.join(" ") }
            )
        }
    }
}

#[derive(Serialize)]
struct HcOut {
    status: &'static str,
    hamiltonian: bool,
    dual_value: u64,
    dual_vertices: usize,
    method: &'static str,
}

pub fn emit_hc(r: &HcReport, format: Format) -> String {
    let out = HcOut {
        status: "ok",
        hamiltonian: r.hamiltonian,
        dual_value: r.dual_value,
        dual_vertices: r.dual_vertices,
        method: match r.method {
            crate::planar::HcMethod::Solver => "solver",
            crate::planar::HcMethod::Oracle => "oracle",
        },
    };
    match format {
        Format::Json => json_line(&out),
        Format::Text => format!(
            "status: ok\nhamiltonian: {}\ndual_value: {}\ndual_vertices: {}\nmethod: {}\n",
            if out.hamiltonian { "yes" } else { "no" },
            out.dual_value,
            out.dual_vertices,
            out.method
        ),
    }
}

#[derive(Serialize)]
struct ErrorOut<'a> {
    status: &'a str,
    message: String,
}

/// Error report with a machine-readable status tag.
pub fn emit_error(status: &str, message: &str, format: Format) -> String {
    match format {
        Format::Json => json_line(&ErrorOut { status, message: message.to_string() }),
        Format::Text => format!("status: {status}\nmessage: {message}\n"),
    }
}
