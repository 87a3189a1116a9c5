//! Mechanical checks of the graph-theoretic claims about NG-groups.
//!
//! Each [`PropositionId`] names one predicate. A sweep evaluates the
//! predicate on every enumerated NG-group in an arity range, or on a seeded
//! random digraph family, and records counterexamples. Claims are never
//! assumed: a report says whether the computation confirms or diverges from
//! the claim, and an [`Expectations`] table records which divergences are
//! already known.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    bipartition, euler_walk, eulerian_class, has_two_way_pair, is_in_closed_witness,
    is_quasi_strongly_connected, is_strongly_connected, root_by_elimination, roots,
    sources_and_sinks, EulerianClass, LoopPolicy,
};
use crate::digraph::{build_digraph, Digraph};
use crate::error::{Error, Result};
use crate::group::{classify, enumerate_ng_groups, EnumerateOptions, NGGroup, SetKind};
use crate::random::{random_acyclic_digraphs, random_digraphs};
use crate::transformation::{parse_set, Limits, Style, Transformation};

/// The claims under test. `P3_6_EULER` and `P3_6_ROOT` are unrelated claims
/// told apart by suffix; `N4_ORDERS` is the claim about which group orders
/// occur on four points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(non_camel_case_types)]
pub enum PropositionId {
    P3_1,
    P3_2,
    P3_3,
    P3_4,
    P3_5,
    P3_6_EULER,
    P3_6_ROOT,
    P4_1,
    P4_3,
    P4_5,
    P4_6a,
    P4_6b,
    P4_7,
    P4_9,
    P4_11,
    P4_12,
    N4_ORDERS,
}

impl PropositionId {
    pub const ALL: [PropositionId; 17] = [
        PropositionId::P3_1,
        PropositionId::P3_2,
        PropositionId::P3_3,
        PropositionId::P3_4,
        PropositionId::P3_5,
        PropositionId::P3_6_EULER,
        PropositionId::P3_6_ROOT,
        PropositionId::P4_1,
        PropositionId::P4_3,
        PropositionId::P4_5,
        PropositionId::P4_6a,
        PropositionId::P4_6b,
        PropositionId::P4_7,
        PropositionId::P4_9,
        PropositionId::P4_11,
        PropositionId::P4_12,
        PropositionId::N4_ORDERS,
    ];

    pub fn as_str(self) -> &'static str {
        use PropositionId::*;
        match self {
            P3_1 => "P3_1",
            P3_2 => "P3_2",
            P3_3 => "P3_3",
            P3_4 => "P3_4",
            P3_5 => "P3_5",
            P3_6_EULER => "P3_6_EULER",
            P3_6_ROOT => "P3_6_ROOT",
            P4_1 => "P4_1",
            P4_3 => "P4_3",
            P4_5 => "P4_5",
            P4_6a => "P4_6a",
            P4_6b => "P4_6b",
            P4_7 => "P4_7",
            P4_9 => "P4_9",
            P4_11 => "P4_11",
            P4_12 => "P4_12",
            N4_ORDERS => "N4_ORDERS",
        }
    }

    /// One-line statement of the predicate that is actually evaluated.
    pub fn statement(self) -> &'static str {
        use PropositionId::*;
        match self {
            P3_1 => "degree sum equals twice the arc count",
            P3_2 => "degree sum equals twice the arc count, on NG digraphs",
            P3_3 => "groups of order >= 2 have opposite arcs between two fixed points",
            P3_4 => "degree sum equals 2 * n * |G|",
            P3_5 => "underlying graph is bipartite",
            P3_6_EULER => "Euler trails exist exactly as degree parity predicts; n = 3 digraphs are semi-Eulerian",
            P3_6_ROOT => "a root exists iff the digraph is quasi-strongly connected",
            P4_1 => "degree sum equals 2 * n * |G| for every group order",
            P4_3 => "order-2 groups: fixed-point counts differ by 2 and degree sum = 2n * difference",
            P4_5 => "order-2 groups on 3 points: an element fixes 2 points and sends the third into them",
            P4_6a => "some element has exactly one fixed point",
            P4_6b => "some element has no fixed point",
            P4_7 => "acyclic digraphs have a source and a sink",
            P4_9 => "degree sum is at most 2 * n!",
            P4_11 => "|stabilizer| * |orbit| = |G| at every fixed point",
            P4_12 => "no NG digraph is strongly connected; the non-image points witness it",
            N4_ORDERS => "on 4 points the group orders are 2, 4 and 6, the order-4 example being a group",
        }
    }

    fn reports_degree_sums(self) -> bool {
        use PropositionId::*;
        matches!(self, P3_1 | P3_2 | P3_4 | P4_1 | P4_9)
    }

    fn uses_groups(self) -> bool {
        !matches!(self, PropositionId::P4_7 | PropositionId::N4_ORDERS)
    }
}

impl fmt::Display for PropositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropositionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropositionId::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownProposition(s.to_string()))
    }
}

impl Serialize for PropositionId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for PropositionId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnAll,
    Fails,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HoldsOnAll => "holds-on-all",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

/// Whether the computation agrees with the claim. A vacuous sweep confirms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Confirmed,
    Diverges,
}

impl ClaimStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimStatus::Confirmed => "confirmed",
            ClaimStatus::Diverges => "diverges",
        }
    }
}

/// The object a counterexample was found on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Group(NGGroup),
    /// A transformation set that is not necessarily a group.
    Set(Vec<Transformation>),
    Digraph(Digraph),
    /// The whole enumeration on this many points.
    Census(usize),
}

impl Instance {
    pub fn describe(&self) -> String {
        match self {
            Instance::Group(g) => g.format(Style::Numeric),
            Instance::Set(s) => {
                let parts: Vec<String> = s.iter().map(|f| f.format(Style::Numeric)).collect();
                format!("{{{}}}", parts.join(","))
            }
            Instance::Digraph(d) => format!(
                "digraph on {} vertices: {}",
                d.vertex_count(),
                d.format_arcs(Style::Numeric)
            ),
            Instance::Census(n) => format!("all NG-groups on {n} points"),
        }
    }

    fn to_json(&self) -> Value {
        let tuples = |s: &[Transformation]| -> Vec<String> { s.iter().map(|f| f.format(Style::Numeric)).collect() };
        match self {
            Instance::Group(g) => json!({"kind": "group", "n": g.arity(), "elements": tuples(g.elements())}),
            Instance::Set(s) => json!({"kind": "set", "n": s[0].arity(), "elements": tuples(s)}),
            Instance::Digraph(d) => json!({
                "kind": "digraph",
                "n": d.vertex_count(),
                "arcs": d.arcs().map(|(u, v, c)| [u + 1, v + 1, c as usize]).collect::<Vec<_>>(),
            }),
            Instance::Census(n) => json!({"kind": "census", "n": n}),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub instance: Instance,
    pub condition: String,
    pub observed: String,
}

/// What a sweep covered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub n_min: usize,
    pub n_max: usize,
    pub instances: usize,
    pub description: String,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub proposition: PropositionId,
    pub sweep: Sweep,
    pub verdict: Verdict,
    /// At most the configured cap, in canonical instance order.
    pub counterexamples: Vec<Counterexample>,
    pub counterexample_total: usize,
    pub claim_status: ClaimStatus,
    /// Observed values worth reporting even when the claim holds.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    /// Structured form. Timing is left out unless asked for, which keeps
    /// repeated runs byte-identical.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let mut v = json!({
            "proposition": self.proposition.as_str(),
            "statement": self.proposition.statement(),
            "sweep": self.sweep,
            "verdict": self.verdict.as_str(),
            "claim_status": self.claim_status.as_str(),
            "counterexample_total": self.counterexample_total,
            "notes": self.notes,
            "counterexamples": self.counterexamples.iter().map(|c| json!({
                "instance": c.instance.to_json(),
                "condition": c.condition,
                "observed": c.observed,
            })).collect::<Vec<_>>(),
        });
        if with_timing {
            v["elapsed_ms"] = json!(self.elapsed.as_secs_f64() * 1e3);
        }
        v
    }

    /// One table row: id, verdict, expectation, sweep, first counterexample.
    pub fn summary_line(&self) -> String {
        let mut line = format!(
            "{:<11} {:<15} {:<10} {}",
            self.proposition.as_str(),
            self.verdict.as_str(),
            self.claim_status.as_str(),
            self.sweep.description
        );
        for note in &self.notes {
            line.push_str(&format!("\n            {note}"));
        }
        if let Some(c) = self.counterexamples.first() {
            line.push_str(&format!(
                "\n            counterexample ({} total): {} -- {}; {}",
                self.counterexample_total,
                c.instance.describe(),
                c.condition,
                c.observed
            ));
        }
        line
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Size of each random digraph family.
    pub random_count: usize,
    pub counterexample_cap: usize,
    /// Keep every counterexample instead of the capped list.
    pub full_dump: bool,
    pub limits: Limits,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 2024,
            random_count: 1000,
            counterexample_cap: 10,
            full_dump: false,
            limits: Limits::default(),
        }
    }
}

/// The four-point set listed as a group of order 4. It is closed but has two
/// idempotents.
pub const ORDER_FOUR_EXAMPLE: &str = "(1,1,4,4),(4,4,1,1),(1,4,1,4),(4,1,4,1)";

const CLAIMED_N4_ORDERS: [usize; 3] = [2, 4, 6];

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

type Violation = Option<(String, String)>;

fn violated(condition: impl Into<String>, observed: impl Into<String>) -> Violation {
    Some((condition.into(), observed.into()))
}

/// Whether the predicate applies to this group at all.
fn applies_to(p: PropositionId, g: &NGGroup) -> bool {
    match p {
        PropositionId::P3_3 => g.order() >= 2,
        PropositionId::P4_3 => g.order() == 2,
        PropositionId::P4_5 => g.arity() == 3 && g.order() == 2,
        _ => p.uses_groups(),
    }
}

fn check_group(p: PropositionId, g: &NGGroup) -> Result<Violation> {
    use PropositionId::*;
    let dg = build_digraph(g.elements())?;
    let d = dg.graph();
    let profile = dg.degree_profile();
    let sum = profile.degree_sum();
    let (n, m) = dg.size_pair();
    let order = g.order() as u64;
    Ok(match p {
        P3_1 | P3_2 => (sum != 2 * m).then(|| ("sum rho = 2m".into(), format!("sum {sum}, m {m}"))),
        P3_4 | P4_1 => {
            let want = 2 * n as u64 * order;
            (sum != want).then(|| ("sum rho = 2n|G|".into(), format!("sum {sum}, 2n|G| {want}")))
        }
        P3_3 => match has_two_way_pair(d, &g.ng_fix()) {
            Some(_) => None,
            None => violated("two-way arc pair inside ng_fix", format!("ng_fix {}", g.ng_fix().format(Style::Numeric))),
        },
        P3_5 => match bipartition(d, LoopPolicy::Ignore) {
            Ok(_) => None,
            Err(cycle) => {
                let path: Vec<String> = cycle.iter().map(|&v| Style::Numeric.point(v)).collect();
                let strict = match bipartition(d, LoopPolicy::CountAsOddCycle) {
                    Ok(_) => "bipartite".to_string(),
                    Err(c) if c.len() == 1 => format!("loop at {}", Style::Numeric.point(c[0])),
                    Err(_) => "odd circuit".to_string(),
                };
                violated(
                    "underlying graph bipartite",
                    format!(
                        "odd circuit {}-{} of length {} with loops ignored; counting loops: {strict}",
                        path.join("-"),
                        path[0],
                        cycle.len()
                    ),
                )
            }
        },
        P3_6_EULER => {
            let class = eulerian_class(d);
            let walk = euler_walk(d);
            let consistent = match class {
                EulerianClass::Eulerian => walk.as_ref().is_some_and(|w| w.closed),
                EulerianClass::SemiEulerian => walk.as_ref().is_some_and(|w| !w.closed),
                EulerianClass::Neither | EulerianClass::Disconnected => walk.is_none(),
            };
            let walk_kind = match &walk {
                Some(w) if w.closed => "closed Euler trail",
                Some(_) => "open Euler trail",
                None => "no Euler trail",
            };
            if !consistent {
                violated("parity class matches Euler trail search", format!("{} vs {walk_kind}", class.as_str()))
            } else if n == 3 && class != EulerianClass::SemiEulerian {
                violated("semi-Eulerian on 3 points", class.as_str())
            } else {
                None
            }
        }
        P3_6_ROOT => check_root_equivalence(d),
        P4_3 => {
            let census = g.census();
            let a = census.fixed_counts[0].1 as i64;
            let b = census.fixed_counts[1].1 as i64;
            let diff = (a - b).unsigned_abs();
            let want = 2 * n as u64 * diff;
            if diff != 2 {
                violated("fixed-point counts differ by 2", format!("counts {a} and {b}, difference {diff}"))
            } else if sum != want {
                violated("sum rho = 2n * difference", format!("sum {sum}, 2n * difference {want}"))
            } else {
                None
            }
        }
        P4_5 => {
            let ok = g.elements().iter().any(|f| {
                let fix = f.fixed_points();
                fix.len() == 2 && f.moved_points().iter().all(|x| fix.contains(f.apply(x)))
            });
            (!ok).then(|| ("element fixing two points and mapping the third into them".into(), "none".into()))
        }
        P4_6a | P4_6b => {
            let want = if p == P4_6a { 1 } else { 0 };
            let counts: Vec<usize> = g.elements().iter().map(|f| f.fixed_point_count()).collect();
            (!counts.contains(&want)).then(|| {
                (
                    format!("an element with {want} fixed point{}", if want == 1 { "" } else { "s" }),
                    format!("fixed-point counts {counts:?}"),
                )
            })
        }
        P4_9 => {
            let bound = 2 * factorial(n);
            (sum > bound).then(|| ("sum rho <= 2n!".into(), format!("sum {sum}, 2n! {bound}")))
        }
        P4_11 => g.ng_fix().iter().find_map(|i| {
            let stab = g.stabilizer(i).expect("fixed points are in range").len();
            let orb = g.orbit(i).expect("fixed points are in range").len();
            (stab * orb != g.order()).then(|| {
                (
                    "|stabilizer| * |orbit| = |G|".to_string(),
                    format!("point {}: {stab} * {orb} vs {}", i + 1, g.order()),
                )
            })
        }),
        P4_12 => {
            let verdict = is_strongly_connected(d)?;
            let outside_image = g.ng_fix().complement();
            if verdict.strongly_connected {
                violated("not strongly connected", "strongly connected")
            } else if !is_in_closed_witness(d, &outside_image) {
                violated(
                    "non-image points form a witness set",
                    format!("{} has incoming arcs", outside_image.format(Style::Numeric)),
                )
            } else {
                None
            }
        }
        P4_7 | N4_ORDERS => None,
    })
}

/// `n=4: degree sum 16 on 60 groups, 24 on 12, 48 on 12`.
fn degree_sum_note(n: usize, groups: &[NGGroup]) -> Result<String> {
    let mut tally: BTreeMap<u64, usize> = BTreeMap::new();
    for g in groups {
        *tally.entry(build_digraph(g.elements())?.degree_profile().degree_sum()).or_default() += 1;
    }
    let parts: Vec<String> = tally
        .iter()
        .enumerate()
        .map(|(i, (sum, count))| {
            let noun = if i == 0 { if *count == 1 { " group" } else { " groups" } } else { "" };
            format!("{sum} on {count}{noun}")
        })
        .collect();
    Ok(format!("n={n}: degree sum {}", parts.join(", ")))
}

fn check_root_equivalence(d: &Digraph) -> Violation {
    let has_root = !roots(d).is_empty();
    let qsc = is_quasi_strongly_connected(d);
    let elimination = root_by_elimination(d);
    if has_root != qsc {
        violated("roots exist iff quasi-strongly connected", format!("roots {has_root}, quasi-strong {qsc}"))
    } else if elimination.is_some() != has_root {
        violated("candidate elimination finds a root iff one exists", format!("elimination {elimination:?}, roots {has_root}"))
    } else {
        None
    }
}

fn check_digraph(p: PropositionId, d: &Digraph) -> Violation {
    match p {
        PropositionId::P3_6_ROOT => check_root_equivalence(d),
        PropositionId::P4_7 => {
            let (src, snk) = sources_and_sinks(d);
            (src.is_empty() || snk.is_empty()).then(|| {
                (
                    "a source and a sink".into(),
                    format!("sources {}, sinks {}", src.format(Style::Numeric), snk.format(Style::Numeric)),
                )
            })
        }
        _ => None,
    }
}

fn order_four_example() -> Vec<Transformation> {
    parse_set(ORDER_FOUR_EXAMPLE).expect("constant parses")
}

/// Runs sweeps, caching the group enumeration per arity.
pub struct Verifier {
    options: VerifyOptions,
    groups: BTreeMap<usize, Vec<NGGroup>>,
}

impl Verifier {
    pub fn new(options: VerifyOptions) -> Self {
        Verifier {
            options,
            groups: BTreeMap::new(),
        }
    }

    pub fn options(&self) -> &VerifyOptions {
        &self.options
    }

    /// Nontrivial NG-groups on `n` points.
    pub fn groups(&mut self, n: usize) -> Result<&[NGGroup]> {
        if !self.groups.contains_key(&n) {
            let opts = EnumerateOptions {
                limits: self.options.limits,
                ..Default::default()
            };
            self.groups.insert(n, enumerate_ng_groups(n, &opts)?);
        }
        Ok(&self.groups[&n])
    }

    fn orders_violation(&mut self, n: usize) -> Result<Violation> {
        let orders: BTreeSet<usize> = self.groups(n)?.iter().map(NGGroup::order).collect();
        let claimed: BTreeSet<usize> = CLAIMED_N4_ORDERS.into_iter().collect();
        Ok((orders != claimed).then(|| {
            (
                format!("group orders {claimed:?}"),
                format!("group orders {orders:?}"),
            )
        }))
    }

    fn set_violation(set: &[Transformation]) -> Result<Violation> {
        let class = classify(set)?;
        Ok((class.kind != SetKind::Group).then(|| {
            (
                "order-4 example is a group".into(),
                format!("{} with {} idempotents", class.kind.as_str(), class.idempotent_count),
            )
        }))
    }

    pub fn verify(&mut self, p: PropositionId, range: RangeInclusive<usize>) -> Result<VerificationReport> {
        let started = Instant::now();
        let (n_min, n_max) = (*range.start(), *range.end());
        if n_min == 0 || n_min > n_max {
            return Err(Error::Domain(format!("bad arity range {n_min}..={n_max}")));
        }
        self.options.limits.check_arity(n_max)?;

        let mut found: Vec<Counterexample> = Vec::new();
        let mut total = 0usize;
        let mut instances = 0usize;
        let mut parts: Vec<String> = Vec::new();
        let mut notes: Vec<String> = Vec::new();
        let cap = if self.options.full_dump { usize::MAX } else { self.options.counterexample_cap };
        let record = |instance: Instance, v: Violation, found: &mut Vec<Counterexample>, total: &mut usize| {
            if let Some((condition, observed)) = v {
                *total += 1;
                if found.len() < cap {
                    found.push(Counterexample {
                        instance,
                        condition,
                        observed,
                    });
                }
            }
        };

        if p.uses_groups() {
            let mut swept = 0;
            for n in range.clone() {
                let groups: Vec<NGGroup> = self.groups(n)?.iter().filter(|g| applies_to(p, g)).cloned().collect();
                swept += groups.len();
                if p.reports_degree_sums() && !groups.is_empty() {
                    notes.push(degree_sum_note(n, &groups)?);
                }
                for g in groups {
                    let v = check_group(p, &g)?;
                    record(Instance::Group(g), v, &mut found, &mut total);
                }
            }
            instances += swept;
            parts.push(format!("{swept} NG-groups"));
        }
        if matches!(p, PropositionId::P3_6_ROOT | PropositionId::P4_7) {
            let family = if p == PropositionId::P4_7 {
                random_acyclic_digraphs(self.options.seed, self.options.random_count)
            } else {
                random_digraphs(self.options.seed, self.options.random_count)
            };
            instances += family.len();
            parts.push(format!(
                "{} random {}digraphs (seed {})",
                family.len(),
                if p == PropositionId::P4_7 { "acyclic " } else { "" },
                self.options.seed
            ));
            for d in family {
                let v = check_digraph(p, &d);
                record(Instance::Digraph(d), v, &mut found, &mut total);
            }
        }
        if p == PropositionId::N4_ORDERS && range.contains(&4) {
            instances += 2;
            parts.push("census and order-4 example".into());
            let v = self.orders_violation(4)?;
            record(Instance::Census(4), v, &mut found, &mut total);
            let set = order_four_example();
            let v = Self::set_violation(&set)?;
            record(Instance::Set(set), v, &mut found, &mut total);
        }

        let verdict = if instances == 0 {
            Verdict::NotApplicable
        } else if total > 0 {
            Verdict::Fails
        } else {
            Verdict::HoldsOnAll
        };
        let description = if parts.is_empty() {
            format!("n={n_min}..={n_max}: nothing to check")
        } else {
            format!("n={n_min}..={n_max}: {}", parts.join(" + "))
        };
        Ok(VerificationReport {
            proposition: p,
            sweep: Sweep {
                n_min,
                n_max,
                instances,
                description,
            },
            verdict,
            counterexamples: found,
            counterexample_total: total,
            claim_status: if verdict == Verdict::Fails {
                ClaimStatus::Diverges
            } else {
                ClaimStatus::Confirmed
            },
            notes,
            elapsed: started.elapsed(),
        })
    }

    /// Every proposition, in declaration order.
    pub fn verify_all(&mut self, range: RangeInclusive<usize>) -> Result<Vec<VerificationReport>> {
        PropositionId::ALL
            .into_iter()
            .map(|p| self.verify(p, range.clone()))
            .collect()
    }

    /// Re-evaluates a counterexample on its own; `true` when it still violates `p`.
    pub fn recheck(&mut self, p: PropositionId, c: &Counterexample) -> Result<bool> {
        Ok(match &c.instance {
            Instance::Group(g) => applies_to(p, g) && check_group(p, g)?.is_some(),
            Instance::Digraph(d) => check_digraph(p, d).is_some(),
            Instance::Set(s) => p == PropositionId::N4_ORDERS && Self::set_violation(s)?.is_some(),
            Instance::Census(n) => p == PropositionId::N4_ORDERS && self.orders_violation(*n)?.is_some(),
        })
    }
}

pub fn verify(p: PropositionId, range: RangeInclusive<usize>, options: &VerifyOptions) -> Result<VerificationReport> {
    Verifier::new(options.clone()).verify(p, range)
}

pub fn verify_all(range: RangeInclusive<usize>, options: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    Verifier::new(options.clone()).verify_all(range)
}

/// A divergence known in advance, for arities `n_min..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedDivergence {
    pub proposition: PropositionId,
    pub n_min: usize,
    #[serde(default)]
    pub n_max: Option<usize>,
}

/// Table of divergences that are already known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    pub divergences: Vec<ExpectedDivergence>,
}

impl Default for Expectations {
    fn default() -> Self {
        use PropositionId::*;
        let entry = |proposition, n_min, n_max| ExpectedDivergence {
            proposition,
            n_min,
            n_max,
        };
        Expectations {
            divergences: vec![
                entry(P3_5, 3, None),
                entry(P4_3, 5, None),
                entry(P4_6a, 3, None),
                entry(P4_6b, 4, None),
                entry(N4_ORDERS, 4, Some(4)),
            ],
        }
    }
}

impl Expectations {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))
    }

    /// Whether a sweep of `p` over `n_min..=n_max` is expected to diverge.
    pub fn expects_divergence(&self, p: PropositionId, n_min: usize, n_max: usize) -> bool {
        self.divergences.iter().any(|e| {
            e.proposition == p && e.n_min <= n_max && e.n_max.is_none_or(|hi| hi >= n_min)
        })
    }
}

/// Comparison of a batch of reports against an expectation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    /// Propositions whose computed result differs from the table, either way.
    pub mismatches: Vec<PropositionId>,
    /// Propositions whose computation diverges from the claim.
    pub divergences: Vec<PropositionId>,
    pub strict: bool,
}

impl Evaluation {
    /// Lenient runs pass when every report matches the table; strict runs
    /// pass only when nothing diverges.
    pub fn passed(&self) -> bool {
        if self.strict {
            self.divergences.is_empty() && self.mismatches.is_empty()
        } else {
            self.mismatches.is_empty()
        }
    }
}

pub fn evaluate(reports: &[VerificationReport], table: &Expectations, strict: bool) -> Evaluation {
    let mut mismatches = Vec::new();
    let mut divergences = Vec::new();
    for r in reports {
        let diverged = r.claim_status == ClaimStatus::Diverges;
        if diverged {
            divergences.push(r.proposition);
        }
        if diverged != table.expects_divergence(r.proposition, r.sweep.n_min, r.sweep.n_max) {
            mismatches.push(r.proposition);
        }
    }
    Evaluation {
        mismatches,
        divergences,
        strict,
    }
}
