//! Groups of non-permutation transformations.
//!
//! Every group of transformations has an idempotent identity `e`, and all of
//! its elements share `e`'s kernel and image. The elements with that kernel
//! and image form the H-class of `e`, a group isomorphic to the symmetric
//! group on `image(e)`: each element is `σ ∘ e` for a permutation `σ` of the
//! image. Enumeration therefore walks non-identity idempotents, builds each
//! H-class and collects its subgroups. A naive closure over subsets is kept
//! only as a test oracle.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transformation::{Limits, PointSet, Style, Transformation};

fn uniform_arity(set: &[Transformation]) -> Result<usize> {
    let first = set
        .first()
        .ok_or_else(|| Error::Domain("empty transformation set".into()))?;
    let n = first.arity();
    if let Some(bad) = set.iter().find(|f| f.arity() != n) {
        return Err(Error::ArityMismatch {
            expected: n,
            found: bad.arity(),
        });
    }
    Ok(n)
}

/// Smallest composition-closed superset of `seed`.
///
/// Every element of the closure is a product of seeds, so the search only
/// right-multiplies discovered elements by seeds.
pub fn closure(seed: &[Transformation], limit: usize) -> Result<BTreeSet<Transformation>> {
    uniform_arity(seed)?;
    let gens: Vec<Transformation> = seed.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let over = || Error::ResourceLimit {
        what: "closure size",
        limit,
    };
    if gens.len() > limit {
        return Err(over());
    }
    let mut set: BTreeSet<Transformation> = gens.iter().cloned().collect();
    let mut queue: Vec<Transformation> = gens.clone();
    while let Some(x) = queue.pop() {
        for g in &gens {
            let p = x.compose_unchecked(g);
            if !set.contains(&p) {
                if set.len() >= limit {
                    return Err(over());
                }
                set.insert(p.clone());
                queue.push(p);
            }
        }
    }
    Ok(set)
}

/// How a finite set of transformations behaves under composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Group,
    /// Closed, not a group, every element inside some subgroup of the set.
    UnionOfGroups,
    OtherSemigroup,
    NotClosed,
}

impl SetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SetKind::Group => "group",
            SetKind::UnionOfGroups => "union-of-groups",
            SetKind::OtherSemigroup => "other-semigroup",
            SetKind::NotClosed => "not-closed",
        }
    }
}

/// Result of [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSetClass {
    pub kind: SetKind,
    pub idempotent_count: usize,
    /// For `NotClosed`: a pair whose product escapes the set.
    /// For `UnionOfGroups`: two distinct idempotents.
    /// For `OtherSemigroup`: an element outside every subgroup and its idempotent power.
    pub witness: Option<(Transformation, Transformation)>,
}

/// Whether `f` lies in a subgroup of any closed set containing it, i.e. its
/// powers cycle back to `f` itself.
fn lies_in_subgroup(f: &Transformation) -> bool {
    let mut seen = BTreeSet::new();
    let mut p = f.clone();
    loop {
        if !seen.insert(p.clone()) {
            return &p == f;
        }
        p = p.compose_unchecked(f);
    }
}

fn idempotent_power(f: &Transformation) -> Transformation {
    let mut p = f.clone();
    while !p.is_idempotent() {
        p = p.compose_unchecked(f);
    }
    p
}

/// Classifies a set under composition: group, union of groups, other
/// semigroup, or not closed.
pub fn classify(set: &[Transformation]) -> Result<ClosedSetClass> {
    uniform_arity(set)?;
    let s: BTreeSet<&Transformation> = set.iter().collect();
    let elems: Vec<&Transformation> = s.iter().copied().collect();
    let idems: Vec<&Transformation> = elems.iter().copied().filter(|f| f.is_idempotent()).collect();
    let idempotent_count = idems.len();

    for &a in &elems {
        for &b in &elems {
            if !s.contains(&a.compose_unchecked(b)) {
                return Ok(ClosedSetClass {
                    kind: SetKind::NotClosed,
                    idempotent_count,
                    witness: Some((a.clone(), b.clone())),
                });
            }
        }
    }

    let identity = elems.iter().copied().find(|&e| {
        elems
            .iter()
            .all(|&f| &e.compose_unchecked(f) == f && &f.compose_unchecked(e) == f)
    });
    if let Some(e) = identity {
        let all_invertible = elems.iter().all(|&f| {
            elems
                .iter()
                .any(|&g| &f.compose_unchecked(g) == e && &g.compose_unchecked(f) == e)
        });
        if all_invertible {
            return Ok(ClosedSetClass {
                kind: SetKind::Group,
                idempotent_count,
                witness: None,
            });
        }
    }

    match elems.iter().find(|f| !lies_in_subgroup(f)) {
        None => Ok(ClosedSetClass {
            kind: SetKind::UnionOfGroups,
            idempotent_count,
            witness: Some((idems[0].clone(), idems[1].clone())),
        }),
        Some(&f) => Ok(ClosedSetClass {
            kind: SetKind::OtherSemigroup,
            idempotent_count,
            witness: Some((f.clone(), idempotent_power(f))),
        }),
    }
}

/// A group of non-permutation transformations on `arity` points.
///
/// Elements are kept in canonical (lexicographic image-table) order; two
/// groups compare by their element lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NGGroup {
    elements: Vec<Transformation>,
    identity: Transformation,
}

impl PartialOrd for NGGroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NGGroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements.cmp(&other.elements)
    }
}

impl NGGroup {
    /// Validates an arbitrary element set as a group of non-permutations.
    pub fn from_elements(elements: impl IntoIterator<Item = Transformation>) -> Result<Self> {
        let elements: Vec<Transformation> = elements
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let class = classify(&elements)?;
        if class.kind != SetKind::Group {
            return Err(Error::Domain(format!(
                "set is {} with {} idempotents, not a group",
                class.kind.as_str(),
                class.idempotent_count
            )));
        }
        let identity = elements
            .iter()
            .find(|f| f.is_idempotent())
            .cloned()
            .expect("a group has an idempotent");
        if identity.is_permutation() {
            return Err(Error::Domain("group consists of permutations".into()));
        }
        Ok(NGGroup { elements, identity })
    }

    fn from_sorted_unchecked(elements: Vec<Transformation>, identity: Transformation) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        NGGroup { elements, identity }
    }

    pub fn arity(&self) -> usize {
        self.identity.arity()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Common rank of every element.
    pub fn rank(&self) -> usize {
        self.identity.rank()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn identity(&self) -> &Transformation {
        &self.identity
    }

    pub fn contains(&self, f: &Transformation) -> bool {
        self.elements.binary_search(f).is_ok()
    }

    /// Union of the elements' fixed points; equals the identity's image.
    pub fn ng_fix(&self) -> PointSet {
        self.identity.image()
    }

    pub fn census(&self) -> GroupCensus {
        let fixed_counts = self
            .elements
            .iter()
            .map(|f| (f.clone(), f.fixed_point_count()))
            .collect::<Vec<_>>();
        let moved_pair_count = self
            .elements
            .iter()
            .map(|f| f.arity() - f.fixed_point_count())
            .sum();
        GroupCensus {
            fixed_counts,
            ng_fix: self.ng_fix(),
            moved_pair_count,
        }
    }

    fn check_point(&self, i: usize) -> Result<()> {
        if i >= self.arity() {
            return Err(Error::PointOutOfRange {
                point: i,
                arity: self.arity(),
            });
        }
        Ok(())
    }

    /// `{f(i) : f ∈ G}`.
    pub fn orbit(&self, i: usize) -> Result<PointSet> {
        self.check_point(i)?;
        PointSet::new(self.arity(), self.elements.iter().map(|f| f.apply(i)))
    }

    /// `{f ∈ G : f(i) = i}`.
    pub fn stabilizer(&self, i: usize) -> Result<Vec<Transformation>> {
        self.check_point(i)?;
        Ok(self
            .elements
            .iter()
            .filter(|f| f.apply(i) == i)
            .cloned()
            .collect())
    }

    /// Subgroups found by closing every generator subset of size at most
    /// `max_generators`, deduplicated and sorted. The trivial group `{e}` is
    /// included only on request.
    pub fn subgroups(&self, max_generators: usize, include_trivial: bool) -> Vec<NGGroup> {
        let others: Vec<&Transformation> = self
            .elements
            .iter()
            .filter(|f| **f != self.identity)
            .collect();
        let mut found: BTreeSet<Vec<Transformation>> = BTreeSet::new();
        if include_trivial {
            found.insert(vec![self.identity.clone()]);
        }
        for k in 1..=max_generators.min(others.len()) {
            for gens in others.iter().copied().combinations(k) {
                let gens: Vec<Transformation> = gens.into_iter().cloned().collect();
                let sub = closure(&gens, self.order()).expect("closure inside a finite group");
                found.insert(sub.into_iter().collect());
            }
        }
        found
            .into_iter()
            .map(|els| NGGroup::from_sorted_unchecked(els, self.identity.clone()))
            .collect()
    }

    /// Element list such as `{(a,a,c),(c,c,a)}`.
    pub fn format(&self, style: Style) -> String {
        let parts: Vec<String> = self.elements.iter().map(|f| f.format(style)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Fixed-point data of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCensus {
    /// `|fix(f)|` for every element, in canonical order.
    pub fixed_counts: Vec<(Transformation, usize)>,
    pub ng_fix: PointSet,
    /// `Σ_f |moved_points(f)|`.
    pub moved_pair_count: usize,
}

/// All idempotents on `n` points, optionally of a single rank, in canonical order.
///
/// Built directly: choose the image, fix it pointwise, send every other point
/// somewhere into it.
pub fn idempotents(n: usize, rank: Option<usize>, limits: &Limits) -> Result<Vec<Transformation>> {
    limits.check_arity(n)?;
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let image: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
        if rank.is_some_and(|r| r != image.len()) {
            continue;
        }
        let free: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) == 0).collect();
        if free.is_empty() {
            out.push(Transformation::identity(n));
            continue;
        }
        for targets in std::iter::repeat_n(image.iter().copied(), free.len()).multi_cartesian_product() {
            let mut images: Vec<usize> = (0..n).collect();
            for (&x, &y) in free.iter().zip(&targets) {
                images[x] = y;
            }
            out.push(Transformation::new(images)?);
        }
    }
    out.sort();
    Ok(out)
}

/// The maximal subgroup (H-class) of a non-identity idempotent: every
/// `σ ∘ e` with `σ` a permutation of `image(e)`. Its order is `rank(e)!`.
pub fn h_class_group(e: &Transformation) -> Result<NGGroup> {
    if !e.is_idempotent() {
        return Err(Error::Domain(format!("{e} is not idempotent")));
    }
    if e.is_identity() {
        return Err(Error::Domain("the identity map generates a permutation group".into()));
    }
    let image: Vec<usize> = e.image().iter().collect();
    let mut slot = vec![usize::MAX; e.arity()];
    for (k, &v) in image.iter().enumerate() {
        slot[v] = k;
    }
    let mut elements: Vec<Transformation> = image
        .iter()
        .copied()
        .permutations(image.len())
        .map(|perm| {
            Transformation::new(e.images().map(|v| perm[slot[v]]).collect())
                .expect("images stay in range")
        })
        .collect();
    elements.sort();
    Ok(NGGroup::from_sorted_unchecked(elements, e.clone()))
}

/// Options for [`enumerate_ng_groups`].
#[derive(Debug, Clone, Default)]
pub struct EnumerateOptions {
    /// Keep only groups of this order.
    pub order: Option<usize>,
    /// Also report the one-element groups `{e}`.
    pub include_trivial: bool,
    pub limits: Limits,
}

/// All groups of non-permutations on `n` points, in canonical order.
pub fn enumerate_ng_groups(n: usize, opts: &EnumerateOptions) -> Result<Vec<NGGroup>> {
    let ids: Vec<Transformation> = idempotents(n, None, &opts.limits)?
        .into_iter()
        .filter(|e| !e.is_identity())
        .collect();
    let mut groups: Vec<NGGroup> = ids
        .par_iter()
        .flat_map_iter(|e| {
            h_class_group(e)
                .expect("non-identity idempotent")
                .subgroups(opts.limits.max_generators, opts.include_trivial)
        })
        .filter(|g| opts.order.is_none_or(|o| g.order() == o))
        .collect();
    groups.sort();
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transformation::{enumerate_all, parse_set};

    fn t(s: &str) -> Transformation {
        s.parse().unwrap()
    }

    #[test]
    fn closure_examples() {
        let c = closure(&[t("(c,c,a)")], 100).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![t("(a,a,c)"), t("(c,c,a)")]);
        let id = Transformation::identity(3);
        assert_eq!(closure(std::slice::from_ref(&id), 100).unwrap().len(), 1);
        let ab_swap = parse_set("(a,b,b),(b,a,a)").unwrap();
        assert_eq!(closure(&ab_swap, 100).unwrap().len(), 2);
    }

    #[test]
    fn closure_limit_is_enforced() {
        // a 3-cycle and a transposition generate S_3
        let gens = parse_set("(b,c,a),(b,a,c)").unwrap();
        assert_eq!(closure(&gens, 6).unwrap().len(), 6);
        assert!(matches!(
            closure(&gens, 5),
            Err(Error::ResourceLimit { what: "closure size", .. })
        ));
    }

    #[test]
    fn closure_rejects_mixed_arity() {
        assert!(closure(&[t("(a,b)"), t("(a,b,c)")], 10).is_err());
        assert!(closure(&[], 10).is_err());
    }

    #[test]
    fn classify_examples() {
        let ac_swap = parse_set("(a,a,c),(c,c,a)").unwrap();
        let c = classify(&ac_swap).unwrap();
        assert_eq!(c.kind, SetKind::Group);
        assert_eq!(c.idempotent_count, 1);

        let four = parse_set("(1,1,4,4),(4,4,1,1),(1,4,1,4),(4,1,4,1)").unwrap();
        let c = classify(&four).unwrap();
        assert_eq!(c.kind, SetKind::UnionOfGroups);
        assert_eq!(c.idempotent_count, 2);
        assert_eq!(c.witness, Some((t("(1,1,4,4)"), t("(1,4,1,4)"))));
    }

    #[test]
    fn classify_idempotent_with_identity() {
        // closed, two idempotents, each its own trivial group
        let s = vec![t("(a,a,c)"), Transformation::identity(3)];
        let c = classify(&s).unwrap();
        assert_eq!(c.kind, SetKind::UnionOfGroups);
        assert_eq!(c.idempotent_count, 2);
    }

    #[test]
    fn classify_not_closed_and_other() {
        let c = classify(&[t("(c,c,a)")]).unwrap();
        assert_eq!(c.kind, SetKind::NotClosed);
        assert_eq!(c.witness, Some((t("(c,c,a)"), t("(c,c,a)"))));
        assert_eq!(c.idempotent_count, 0);

        // nilpotent-ish chain: f = (a,a,b), f^2 = (a,a,a)
        let c = classify(&[t("(a,a,b)"), t("(a,a,a)")]).unwrap();
        assert_eq!(c.kind, SetKind::OtherSemigroup);
        assert_eq!(c.witness, Some((t("(a,a,b)"), t("(a,a,a)"))));
    }

    #[test]
    fn idempotent_counts_match_brute_force() {
        let limits = Limits::default();
        for n in 1..=5 {
            let brute: Vec<_> = enumerate_all(n, &limits)
                .unwrap()
                .filter(|f| f.is_idempotent())
                .collect();
            assert_eq!(idempotents(n, None, &limits).unwrap(), brute, "n={n}");
        }
        assert_eq!(idempotents(3, None, &limits).unwrap().len(), 10);
        assert_eq!(idempotents(3, Some(2), &limits).unwrap().len(), 6);
        assert_eq!(idempotents(4, None, &limits).unwrap().len(), 41);
        assert!(idempotents(4, Some(4), &limits)
            .unwrap()
            .contains(&Transformation::identity(4)));
    }

    #[test]
    fn h_class_examples() {
        let g = h_class_group(&t("(1,1,3,4)")).unwrap();
        let expected: Vec<_> = {
            let mut v = parse_set("(1,1,4,3) (1,1,3,4) (4,4,1,3) (4,4,3,1) (3,3,1,4) (3,3,4,1)").unwrap();
            v.sort();
            v
        };
        assert_eq!(g.elements(), expected.as_slice());
        assert_eq!(g.identity(), &t("(1,1,3,4)"));

        let ac_swap = h_class_group(&t("(a,a,c)")).unwrap();
        assert_eq!(ac_swap.elements(), &[t("(a,a,c)"), t("(c,c,a)")]);
    }

    #[test]
    fn h_class_order_is_rank_factorial_and_matches_closure() {
        for e in idempotents(4, None, &Limits::default()).unwrap() {
            if e.is_identity() {
                continue;
            }
            let g = h_class_group(&e).unwrap();
            let fact: usize = (1..=e.rank()).product();
            assert_eq!(g.order(), fact);
            let c = closure(g.elements(), 1000).unwrap();
            assert_eq!(c.into_iter().collect::<Vec<_>>(), g.elements());
        }
    }

    #[test]
    fn h_class_rejects_bad_input() {
        assert!(h_class_group(&t("(c,c,a)")).is_err());
        assert!(h_class_group(&Transformation::identity(3)).is_err());
    }

    #[test]
    fn from_elements_validates() {
        assert!(NGGroup::from_elements(parse_set("(a,a,c),(c,c,a)").unwrap()).is_ok());
        assert!(NGGroup::from_elements(vec![Transformation::identity(3)]).is_err());
        assert!(NGGroup::from_elements(parse_set("(1,1,4,4),(4,4,1,1),(1,4,1,4),(4,1,4,1)").unwrap()).is_err());
    }

    #[test]
    fn enumeration_n3_is_the_six_order_two_groups() {
        let groups = enumerate_ng_groups(3, &EnumerateOptions::default()).unwrap();
        let listed: Vec<String> = groups.iter().map(|g| g.format(Style::Letter)).collect();
        assert_eq!(
            listed,
            vec![
                "{(a,a,c),(c,c,a)}",
                "{(a,b,a),(b,a,b)}",
                "{(a,b,b),(b,a,a)}",
                "{(a,c,c),(c,a,a)}",
                "{(b,b,c),(c,c,b)}",
                "{(b,c,b),(c,b,c)}",
            ]
        );
    }

    #[test]
    fn enumeration_n4_order_counts() {
        let groups = enumerate_ng_groups(4, &EnumerateOptions::default()).unwrap();
        let count = |o| groups.iter().filter(|g| g.order() == o).count();
        assert_eq!((count(2), count(3), count(6)), (60, 12, 12));
        assert_eq!(groups.len(), 84);
        let with_trivial = enumerate_ng_groups(
            4,
            &EnumerateOptions {
                include_trivial: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(with_trivial.len(), 84 + 40);
        let only3 = enumerate_ng_groups(
            4,
            &EnumerateOptions {
                order: Some(3),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(only3.len(), 12);
    }

    #[test]
    fn census_examples() {
        let ac_swap = NGGroup::from_elements(parse_set("(a,a,c),(c,c,a)").unwrap()).unwrap();
        let c = ac_swap.census();
        assert_eq!(c.fixed_counts, vec![(t("(a,a,c)"), 2), (t("(c,c,a)"), 0)]);
        assert_eq!(c.ng_fix.format(Style::Letter), "{a,c}");
        assert_eq!(c.moved_pair_count, 1 + 3);

        let g6 = h_class_group(&t("(1,1,3,4)")).unwrap();
        assert_eq!(g6.census().ng_fix.format(Style::Numeric), "{1,3,4}");

        let e = t("(1,1,3,3)");
        let trivial = NGGroup::from_elements(vec![e.clone()]).unwrap();
        assert_eq!(trivial.census().fixed_counts, vec![(e, 2)]);
    }

    #[test]
    fn orbit_and_stabilizer() {
        let ac_swap = NGGroup::from_elements(parse_set("(a,a,c),(c,c,a)").unwrap()).unwrap();
        assert_eq!(ac_swap.orbit(0).unwrap().format(Style::Letter), "{a,c}");
        assert_eq!(ac_swap.orbit(1).unwrap().format(Style::Letter), "{a,c}");
        assert_eq!(ac_swap.stabilizer(0).unwrap(), vec![t("(a,a,c)")]);
        assert!(ac_swap.orbit(3).is_err());
        assert!(ac_swap.stabilizer(7).is_err());

        let g6 = h_class_group(&t("(1,1,3,4)")).unwrap();
        let stab = g6.stabilizer(0).unwrap();
        assert_eq!(stab, vec![t("(1,1,3,4)"), t("(1,1,4,3)")]);
        assert_eq!(stab.len() * g6.orbit(0).unwrap().len(), 6);

        let trivial = NGGroup::from_elements(vec![t("(1,1,3,3)")]).unwrap();
        assert_eq!(trivial.stabilizer(2).unwrap().len(), 1);
        assert_eq!(trivial.orbit(2).unwrap().members(), &[2]);
    }
}
