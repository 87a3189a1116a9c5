//! Groups of non-permutation transformations on a finite set, and the
//! directed multigraphs they induce.
//!
//! A transformation of `{0, .., n-1}` that is not a bijection can still
//! belong to a group under composition, provided the group's identity is a
//! non-identity idempotent. This crate enumerates such NG-groups, builds the
//! union digraph of a set (one arc `x -> f(x)` per element `f` and point
//! `x`), and analyses it: degrees, reachability, the several flavours of
//! connectivity, bipartiteness and Euler trails.
//!
//! ```
//! use ngroups::{build_digraph, h_class_group, is_strongly_connected, Transformation};
//!
//! let e: Transformation = "(a,a,c)".parse().unwrap();
//! let g = h_class_group(&e).unwrap();
//! assert_eq!(g.order(), 2);
//!
//! let d = build_digraph(g.elements()).unwrap();
//! assert_eq!(d.size_pair(), (3, 6));
//! assert!(!is_strongly_connected(d.graph()).unwrap().strongly_connected);
//! ```

pub mod analysis;
pub mod catalog;
pub mod digraph;
pub mod error;
pub mod group;
pub mod random;
pub mod transformation;
pub mod verify;

pub use analysis::{
    bipartition, connectivity, euler_walk, eulerian_class, is_quasi_strongly_connected,
    is_strongly_connected, reachability, roots, strongly_connected_components,
    ConnectivityVerdict, EulerianClass, LoopPolicy, VertexSet,
};
pub use catalog::{build_catalog, group_id, CatalogRecord, Inspection};
pub use digraph::{build_digraph, DegreeProfile, Digraph, UnionDigraph};
pub use error::{Error, Result};
pub use group::{
    classify, closure, enumerate_ng_groups, h_class_group, idempotents, ClosedSetClass,
    EnumerateOptions, NGGroup, SetKind,
};
pub use transformation::{parse_set, Limits, PointSet, Style, Transformation};
pub use verify::{
    evaluate, verify, verify_all, Expectations, ClaimStatus, PropositionId,
    VerificationReport, Verdict, Verifier, VerifyOptions,
};

/// Runs the guide's snippets as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/transformations.md")]
    struct Transformations;
    #[doc = include_str!("../../../book/src/ng-groups.md")]
    struct NgGroups;
    #[doc = include_str!("../../../book/src/union-digraph.md")]
    struct UnionDigraph;
    #[doc = include_str!("../../../book/src/connectivity.md")]
    struct Connectivity;
    #[doc = include_str!("../../../book/src/verification.md")]
    struct Verification;
    #[doc = include_str!("../../../book/src/catalog.md")]
    struct Catalog;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
