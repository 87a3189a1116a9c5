//! Persistent records of enumerated groups, and the text formats used to
//! ship them around: line-delimited JSON, CSV and DOT.
//!
//! Persisted data always uses 1-based numeric point names, so records stay
//! readable past 26 points.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{connectivity, eulerian_class, is_bipartite_underlying, ConnectivityVerdict, LoopPolicy};
use crate::digraph::{build_digraph, DegreeProfile, Digraph};
use crate::error::{Error, Result};
use crate::group::{classify, enumerate_ng_groups, EnumerateOptions, NGGroup, SetKind};
use crate::transformation::{PointSet, Style, Transformation};

/// Stable identifier: the first 16 hex digits of SHA-256 over the sorted
/// element tuples, written numerically and joined by `;`.
pub fn group_id(g: &NGGroup) -> String {
    let canonical: Vec<String> = g.elements().iter().map(|f| f.format(Style::Numeric)).collect();
    let digest = Sha256::digest(canonical.join(";").as_bytes());
    hex::encode(digest)[..16].to_string()
}

/// Degree data with 1-based vertex names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub out: Vec<u32>,
    #[serde(rename = "in")]
    pub inn: Vec<u32>,
    pub total: Vec<u32>,
    pub delta_min: u32,
    pub delta_max: u32,
    pub fix_degrees: BTreeMap<usize, u32>,
}

impl From<&DegreeProfile> for DegreeRecord {
    fn from(p: &DegreeProfile) -> Self {
        DegreeRecord {
            out: p.out.clone(),
            inn: p.inn.clone(),
            total: p.total.clone(),
            delta_min: p.delta_min,
            delta_max: p.delta_max,
            fix_degrees: p.fix_degrees.iter().map(|(&v, &d)| (v + 1, d)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityRecord {
    pub weakly_connected: bool,
    pub strongly_connected: bool,
    pub quasi_strongly_connected: bool,
    pub roots: Vec<usize>,
    /// A set with no incoming arcs from outside, when one exists.
    pub witness: Option<Vec<usize>>,
}

impl From<&ConnectivityVerdict> for ConnectivityRecord {
    fn from(c: &ConnectivityVerdict) -> Self {
        ConnectivityRecord {
            weakly_connected: c.weakly_connected,
            strongly_connected: c.strongly_connected,
            quasi_strongly_connected: c.quasi_strongly_connected,
            roots: c.roots.to_one_based(),
            witness: c.witness.as_ref().map(PointSet::to_one_based),
        }
    }
}

/// One enumerated group with its digraph invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub n: usize,
    pub group_id: String,
    pub order: usize,
    pub rank: usize,
    pub elements: Vec<String>,
    pub identity: String,
    pub ng_fix: Vec<usize>,
    pub degrees: DegreeRecord,
    pub size_pair: (usize, u64),
    pub adjacency: Vec<Vec<u32>>,
    pub connectivity: ConnectivityRecord,
    pub eulerian: String,
}

impl CatalogRecord {
    pub fn from_group(g: &NGGroup) -> Result<Self> {
        let d = build_digraph(g.elements())?;
        let verdict = connectivity(d.graph())?;
        Ok(CatalogRecord {
            n: g.arity(),
            group_id: group_id(g),
            order: g.order(),
            rank: g.rank(),
            elements: g.elements().iter().map(|f| f.format(Style::Numeric)).collect(),
            identity: g.identity().format(Style::Numeric),
            ng_fix: g.ng_fix().to_one_based(),
            degrees: DegreeRecord::from(&d.degree_profile()),
            size_pair: d.size_pair(),
            adjacency: d.adjacency_matrix(),
            connectivity: ConnectivityRecord::from(&verdict),
            eulerian: eulerian_class(d.graph()).as_str().to_string(),
        })
    }

    /// Rebuilds and revalidates the group.
    pub fn to_group(&self) -> Result<NGGroup> {
        let elements = self
            .elements
            .iter()
            .map(|t| Transformation::parse_with_arity(t, self.n))
            .collect::<Result<Vec<_>>>()?;
        let g = NGGroup::from_elements(elements)?;
        if group_id(&g) != self.group_id {
            return Err(Error::InvariantViolation(format!(
                "record {} does not match its elements (id {})",
                self.group_id,
                group_id(&g)
            )));
        }
        if g.identity().format(Style::Numeric) != self.identity {
            return Err(Error::InvariantViolation(format!(
                "record {} names identity {} but the group's is {}",
                self.group_id,
                self.identity,
                g.identity().format(Style::Numeric)
            )));
        }
        Ok(g)
    }
}

/// Records for every NG-group selected by `opts`, in canonical order.
pub fn build_catalog(n: usize, opts: &EnumerateOptions) -> Result<Vec<CatalogRecord>> {
    enumerate_ng_groups(n, opts)?
        .iter()
        .map(CatalogRecord::from_group)
        .collect()
}

/// Finds a group by its [`group_id`] among the groups on `n` points,
/// trivial groups included.
pub fn find_by_id(n: usize, id: &str, opts: &EnumerateOptions) -> Result<Option<NGGroup>> {
    let opts = EnumerateOptions {
        order: None,
        include_trivial: true,
        ..opts.clone()
    };
    Ok(enumerate_ng_groups(n, &opts)?
        .into_iter()
        .find(|g| group_id(g) == id))
}

fn io_error(e: std::io::Error) -> Error {
    Error::Domain(format!("i/o: {e}"))
}

/// One JSON object per line, newline-terminated.
pub fn write_jsonl<W: Write>(records: &[CatalogRecord], mut out: W) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r).map_err(|e| Error::Domain(e.to_string()))?;
        writeln!(out, "{line}").map_err(io_error)?;
    }
    Ok(())
}

/// Reads records written by [`write_jsonl`]; blank lines are skipped.
pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<CatalogRecord>> {
    let mut records = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(io_error)?;
        if line.trim().is_empty() {
            continue;
        }
        let r = serde_json::from_str(&line)
            .map_err(|e| Error::parse(e.column(), format!("line {}: {e}", i + 1)))?;
        records.push(r);
    }
    Ok(records)
}

/// CSV header. Point lists are space-separated 1-based numbers; `elements`
/// is a space-separated list of tuples.
pub const CSV_COLUMNS: [&str; 16] = [
    "n",
    "group_id",
    "order",
    "rank",
    "identity",
    "elements",
    "ng_fix",
    "arcs",
    "degree_sum",
    "delta_min",
    "delta_max",
    "weakly_connected",
    "strongly_connected",
    "quasi_strongly_connected",
    "roots",
    "eulerian",
];

fn spaced<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// Header plus one row per record, columns as in [`CSV_COLUMNS`].
pub fn write_csv<W: Write>(records: &[CatalogRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Domain(format!("csv: {e}"));
    w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for r in records {
        let degree_sum: u64 = r.degrees.total.iter().map(|&d| d as u64).sum();
        w.write_record([
            r.n.to_string(),
            r.group_id.clone(),
            r.order.to_string(),
            r.rank.to_string(),
            r.identity.clone(),
            spaced(&r.elements),
            spaced(&r.ng_fix),
            r.size_pair.1.to_string(),
            degree_sum.to_string(),
            r.degrees.delta_min.to_string(),
            r.degrees.delta_max.to_string(),
            r.connectivity.weakly_connected.to_string(),
            r.connectivity.strongly_connected.to_string(),
            r.connectivity.quasi_strongly_connected.to_string(),
            spaced(&r.connectivity.roots),
            r.eulerian.clone(),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(io_error)
}

/// DOT text for a digraph: every vertex declared, one edge per distinct arc
/// with its multiplicity as an integer label, loops included.
pub fn to_dot(d: &Digraph, name: &str, style: Style) -> String {
    let style = style.effective(d.vertex_count());
    let mut s = format!("digraph \"{}\" {{\n", name.replace('"', "\\\""));
    for v in 0..d.vertex_count() {
        s.push_str(&format!("  \"{}\";\n", style.point(v)));
    }
    for (u, v, c) in d.arcs() {
        s.push_str(&format!(
            "  \"{}\" -> \"{}\" [label={c}];\n",
            style.point(u),
            style.point(v)
        ));
    }
    s.push_str("}\n");
    s
}

/// Everything reported about an arbitrary transformation set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inspection {
    /// Human summary: `NG-group of order k`, or why the set is not one.
    pub status: String,
    pub kind: SetKind,
    pub idempotent_count: usize,
    pub is_ng_group: bool,
    pub group_id: Option<String>,
    pub n: usize,
    pub elements: Vec<String>,
    /// `(element, fixed-point count)` pairs.
    pub fixed_counts: Vec<(String, usize)>,
    /// Points fixed by some idempotent in the set.
    pub fixed_vertices: Vec<usize>,
    pub moved_pair_count: usize,
    pub size_pair: (usize, u64),
    pub adjacency: Vec<Vec<u32>>,
    pub degrees: DegreeRecord,
    pub connectivity: ConnectivityRecord,
    pub eulerian: String,
    pub loop_policy: LoopPolicy,
    /// Bipartiteness of the underlying multigraph under `loop_policy`.
    pub bipartite: bool,
}

impl Inspection {
    /// Deduplicates and sorts the set, then analyses it whether or not it is a group.
    pub fn of(set: &[Transformation], loop_policy: LoopPolicy) -> Result<Self> {
        let mut set = set.to_vec();
        set.sort();
        set.dedup();
        let class = classify(&set)?;
        let d = build_digraph(&set)?;
        let verdict = connectivity(d.graph())?;
        let group = match class.kind {
            SetKind::Group if !set.iter().all(Transformation::is_permutation) => {
                Some(NGGroup::from_elements(set.iter().cloned())?)
            }
            _ => None,
        };
        let status = match (&group, class.kind) {
            (Some(g), _) => format!("NG-group of order {}", g.order()),
            (None, SetKind::Group) => "not an NG set: permutation".to_string(),
            (None, SetKind::NotClosed) => {
                let (f, g) = class.witness.as_ref().expect("not-closed carries a witness");
                format!(
                    "not closed: {} * {} = {} lies outside the set",
                    f.format(Style::Numeric),
                    g.format(Style::Numeric),
                    f.compose_unchecked(g).format(Style::Numeric)
                )
            }
            (None, kind) => format!(
                "not a group: {}, {} idempotents",
                kind.as_str(),
                class.idempotent_count
            ),
        };
        Ok(Inspection {
            status,
            kind: class.kind,
            idempotent_count: class.idempotent_count,
            is_ng_group: group.is_some(),
            group_id: group.as_ref().map(group_id),
            n: d.graph().vertex_count(),
            elements: set.iter().map(|f| f.format(Style::Numeric)).collect(),
            fixed_counts: set
                .iter()
                .map(|f| (f.format(Style::Numeric), f.fixed_point_count()))
                .collect(),
            fixed_vertices: d.fixed_vertices().to_one_based(),
            moved_pair_count: set.iter().map(|f| f.moved_points().len()).sum(),
            size_pair: d.size_pair(),
            adjacency: d.adjacency_matrix(),
            degrees: DegreeRecord::from(&d.degree_profile()),
            connectivity: ConnectivityRecord::from(&verdict),
            eulerian: eulerian_class(d.graph()).as_str().to_string(),
            loop_policy,
            bipartite: is_bipartite_underlying(d.graph(), loop_policy),
        })
    }

    /// Multi-line report with points in `style`.
    pub fn render(&self, style: Style) -> String {
        let style = style.effective(self.n);
        let pt = |v: &usize| style.point(v - 1);
        let set = |vs: &[usize]| format!("{{{}}}", vs.iter().map(pt).collect::<Vec<_>>().join(","));
        let tuple = |t: &str| {
            Transformation::parse_with_arity(t, self.n)
                .map(|f| f.format(style))
                .unwrap_or_else(|_| t.to_string())
        };
        let mut s = String::new();
        s.push_str(&format!("set: {{{}}}\n", self.elements.iter().map(|t| tuple(t)).collect::<Vec<_>>().join(",")));
        s.push_str(&format!("classification: {}\n", self.status));
        if let Some(id) = &self.group_id {
            s.push_str(&format!("group id: {id}\n"));
        }
        s.push_str("fixed points per element:");
        for (t, c) in &self.fixed_counts {
            s.push_str(&format!(" {}={c}", tuple(t)));
        }
        s.push('\n');
        s.push_str(&format!("fixed vertices: {}\n", set(&self.fixed_vertices)));
        s.push_str(&format!("moved pairs: {}\n", self.moved_pair_count));
        s.push_str(&format!("size pair: ({}, {})\n", self.size_pair.0, self.size_pair.1));
        s.push_str("adjacency:\n");
        for row in &self.adjacency {
            s.push_str(&format!("  ({})\n", spaced(row).replace(' ', ",")));
        }
        s.push_str(&format!(
            "degrees: out {:?} in {:?} total {:?}, min {} max {}\n",
            self.degrees.out, self.degrees.inn, self.degrees.total, self.degrees.delta_min, self.degrees.delta_max
        ));
        let c = &self.connectivity;
        s.push_str(&format!(
            "connectivity: weak {}, strong {}, quasi-strong {}\n",
            c.weakly_connected, c.strongly_connected, c.quasi_strongly_connected
        ));
        s.push_str(&format!("roots: {}\n", set(&c.roots)));
        if let Some(w) = &c.witness {
            s.push_str(&format!("closed-off set: {}\n", set(w)));
        }
        s.push_str(&format!("eulerian: {}\n", self.eulerian));
        s.push_str(&format!("bipartite ({}): {}\n", self.loop_policy, self.bipartite));
        s
    }
}
