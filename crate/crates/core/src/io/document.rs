use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::construct::{check_level, witness_len, Level};
use crate::exact::{parse_rational, Rational};
use crate::geom::{Point, PointSet};
use crate::graphs::{family, BipartiteDrawing, BipartiteGraph, GraphError, VertexId};
use crate::report::Check;

pub const FORMAT_VERSION: &str = "sechain/1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    #[error("empty input")]
    Empty,
    #[error("parse error at line {line}, column {column}, field `{path}`: {message}")]
    Parse { line: usize, column: usize, path: String, message: String },
    #[error("unsupported format version `{0}` (expected `{FORMAT_VERSION}`)")]
    UnsupportedVersion(String),
    #[error("missing object `{0}`")]
    MissingObject(&'static str),
    #[error("object `{name}` should be a {expected}")]
    WrongKind { name: &'static str, expected: &'static str },
    #[error("metadata field `{0}` is missing or invalid")]
    Metadata(&'static str),
    #[error("graph object: {0}")]
    Graph(#[from] GraphError),
    #[error("document contains nothing to {0}")]
    Nothing(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalWire {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalWire {
    fn from(r: &Rational) -> Self {
        RationalWire { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

/// A named object inside a document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Object {
    /// An ordered point sequence.
    Chain { points: Vec<Point> },
    /// An unordered point set.
    Points { points: Vec<Point> },
    /// 0-based index pairs `[i, j]` into the `P` and `Q` chains.
    Pairs { pairs: Vec<[usize; 2]> },
    Graph {
        u: Vec<String>,
        v: Vec<String>,
        edges: Vec<[String; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        placements: Option<BTreeMap<String, Point>>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eps_history: Vec<RationalWire>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, usize>,
}

/// The on-disk JSON document. Every coordinate is stored exactly as
/// `{"p": {"num", "den"}, "q": {"num", "den"}}` meaning `p + q√3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub version: String,
    pub objects: BTreeMap<String, Object>,
    #[serde(default)]
    pub metadata: Metadata,
}

/// Raw level data read back from a document, not yet validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelData {
    pub k: u32,
    pub a: Vec<Point>,
    pub b: Vec<Point>,
    pub witness: Vec<(usize, usize)>,
    pub witness_points: Option<Vec<Point>>,
    pub eps_history: Vec<Rational>,
}

impl LevelData {
    pub fn checks(&self) -> Vec<Check> {
        check_level(self.k, &self.a, &self.b, &self.witness, self.witness_points.as_deref(), &self.eps_history)
    }
}

impl Document {
    pub fn new() -> Self {
        Document { version: FORMAT_VERSION.to_owned(), objects: BTreeMap::new(), metadata: Metadata::default() }
    }

    pub fn from_level(level: &Level) -> Self {
        let mut doc = Document::new();
        doc.objects.insert("P".into(), Object::Chain { points: level.a.points().to_vec() });
        doc.objects.insert("Q".into(), Object::Chain { points: level.b.points().to_vec() });
        doc.objects
            .insert("witness".into(), Object::Pairs { pairs: level.witness.iter().map(|&(i, j)| [i, j]).collect() });
        doc.objects.insert("witness_points".into(), Object::Chain { points: level.witness_points() });
        doc.metadata.k = Some(level.k);
        doc.metadata.eps_history = level.eps_history.iter().map(RationalWire::from).collect();
        doc.metadata.counts = BTreeMap::from([
            ("P".to_owned(), level.a.len()),
            ("Q".to_owned(), level.b.len()),
            ("witness".to_owned(), level.witness.len()),
        ]);
        doc
    }

    pub fn from_points(points: &PointSet) -> Self {
        let mut doc = Document::new();
        doc.objects.insert("points".into(), Object::Points { points: points.to_vec() });
        doc.metadata.counts.insert("points".into(), points.len());
        doc
    }

    /// A graph document, optionally with vertex positions.
    pub fn from_graph(k: u32, graph: &BipartiteGraph, placement: Option<&BTreeMap<VertexId, Point>>) -> Self {
        let mut doc = Document::new();
        let ids = |xs: &[VertexId]| xs.iter().map(ToString::to_string).collect();
        doc.objects.insert(
            "graph".into(),
            Object::Graph {
                u: ids(graph.u()),
                v: ids(graph.v()),
                edges: graph.edges().iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
                placements: placement.map(|pl| pl.iter().map(|(id, p)| (id.to_string(), p.clone())).collect()),
            },
        );
        doc.metadata.k = Some(k);
        doc.metadata.counts =
            BTreeMap::from([("vertices".to_owned(), graph.vertex_count()), ("edges".to_owned(), graph.edges().len())]);
        doc
    }

    fn chain(&self, name: &'static str) -> Result<&[Point], DocError> {
        match self.objects.get(name) {
            None => Err(DocError::MissingObject(name)),
            Some(Object::Chain { points }) => Ok(points),
            Some(_) => Err(DocError::WrongKind { name, expected: "chain" }),
        }
    }

    pub fn has_level(&self) -> bool {
        ["P", "Q", "witness"].iter().all(|n| self.objects.contains_key(*n))
    }

    pub fn has_graph(&self) -> bool {
        self.objects.contains_key("graph")
    }

    pub fn level_data(&self) -> Result<LevelData, DocError> {
        let a = self.chain("P")?.to_vec();
        let b = self.chain("Q")?.to_vec();
        let witness = match self.objects.get("witness") {
            None => return Err(DocError::MissingObject("witness")),
            Some(Object::Pairs { pairs }) => pairs.iter().map(|&[i, j]| (i, j)).collect(),
            Some(_) => return Err(DocError::WrongKind { name: "witness", expected: "pairs" }),
        };
        let witness_points = match self.objects.get("witness_points") {
            None => None,
            Some(Object::Chain { points }) => Some(points.clone()),
            Some(_) => return Err(DocError::WrongKind { name: "witness_points", expected: "chain" }),
        };
        let k = self.metadata.k.ok_or(DocError::Metadata("k"))?;
        let eps_history = self
            .metadata
            .eps_history
            .iter()
            .map(|w| parse_rational(&w.num, &w.den).map_err(|_| DocError::Metadata("eps_history")))
            .collect::<Result<_, _>>()?;
        Ok(LevelData { k, a, b, witness, witness_points, eps_history })
    }

    pub fn drawing(&self) -> Result<(BipartiteGraph, Option<BTreeMap<VertexId, Point>>), DocError> {
        let Some(obj) = self.objects.get("graph") else {
            return Err(DocError::MissingObject("graph"));
        };
        let Object::Graph { u, v, edges, placements } = obj else {
            return Err(DocError::WrongKind { name: "graph", expected: "graph" });
        };
        let parse = |xs: &[String]| xs.iter().map(|s| s.parse::<VertexId>()).collect::<Result<Vec<_>, _>>();
        let edges = edges.iter().map(|[a, b]| Ok((a.parse()?, b.parse()?))).collect::<Result<Vec<_>, GraphError>>()?;
        let graph = BipartiteGraph::new(parse(u)?, parse(v)?, edges)?;
        let placement = placements
            .as_ref()
            .map(|pl| {
                pl.iter().map(|(id, p)| Ok((id.parse()?, p.clone()))).collect::<Result<BTreeMap<_, _>, GraphError>>()
            })
            .transpose()?;
        Ok((graph, placement))
    }

    /// Midpoints of every `P`, `Q` pair, or the `points` object.
    pub fn point_set(&self) -> Result<PointSet, DocError> {
        if let Some(obj) = self.objects.get("points") {
            return match obj {
                Object::Points { points } | Object::Chain { points } => Ok(points.iter().collect()),
                _ => Err(DocError::WrongKind { name: "points", expected: "point set" }),
            };
        }
        if self.objects.contains_key("P") && self.objects.contains_key("Q") {
            let a: PointSet = self.chain("P")?.iter().collect();
            let b: PointSet = self.chain("Q")?.iter().collect();
            return Ok(crate::geom::midpoint_set(&a, &b));
        }
        Err(DocError::Nothing("measure"))
    }

    /// Every invariant the document claims, one check each.
    pub fn verify(&self) -> Result<Vec<Check>, DocError> {
        let mut checks = Vec::new();
        if self.has_level() {
            checks.extend(self.level_data()?.checks());
        }
        if self.has_graph() {
            let (graph, placement) = self.drawing()?;
            if let Some(k) = self.metadata.k {
                if (1..=24).contains(&k) {
                    let expected = family(k);
                    checks.push(Check::new(
                        "graph-family",
                        graph == expected,
                        format!(
                            "{} vertices, {} edges (expected {} and {})",
                            graph.vertex_count(),
                            graph.edges().len(),
                            1usize << (k + 1),
                            witness_len(k)
                        ),
                    ));
                } else {
                    checks.push(Check::new("graph-family", false, format!("k = {k} out of range")));
                }
            }
            checks.push(Check::new("graph-connected", graph.is_connected(), "single component"));
            if let Some(placement) = placement {
                checks.extend(crate::graphs::check_drawing(&BipartiteDrawing { graph, placement }));
            }
        }
        if checks.is_empty() {
            return Err(DocError::Nothing("verify"));
        }
        Ok(checks)
    }
}

impl Default for Document {
    fn default() -> Self {
        Document::new()
    }
}

/// Canonical text form: pretty JSON followed by a newline.
pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Document, DocError> {
    if text.trim().is_empty() {
        return Err(DocError::Empty);
    }
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        DocError::Parse { line: inner.line(), column: inner.column(), path, message: inner.to_string() }
    })?;
    if doc.version != FORMAT_VERSION {
        return Err(DocError::UnsupportedVersion(doc.version));
    }
    Ok(doc)
}
