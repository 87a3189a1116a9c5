//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use ngroups::analysis::is_in_closed_witness;
use ngroups::transformation::enumerate_all;
use ngroups::*;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

macro_rules! ensure_eq {
    ($left:expr, $right:expr, $what:expr) => {{
        let (l, r) = (&$left, &$right);
        if l != r {
            return Err(format!("{}: got {:?}, want {:?}", $what, l, r));
        }
    }};
}

const SAMPLE_SEED: u64 = 20_240_611;

fn groups(n: usize) -> Vec<NGGroup> {
    enumerate_ng_groups(n, &EnumerateOptions::default()).unwrap()
}

fn group(s: &str) -> NGGroup {
    NGGroup::from_elements(parse_set(s).unwrap()).unwrap()
}

fn options() -> VerifyOptions {
    VerifyOptions::default()
}

fn expect_verdict(p: PropositionId, range: std::ops::RangeInclusive<usize>, want: Verdict) -> Result<VerificationReport, String> {
    let r = verify(p, range.clone(), &options()).map_err(|e| e.to_string())?;
    if r.verdict != want {
        return Err(format!(
            "{p} on {range:?}: {} ({} counterexamples), want {}",
            r.verdict.as_str(),
            r.counterexample_total,
            want.as_str()
        ));
    }
    Ok(r)
}

fn c1_enumeration_three_points() -> Outcome {
    let started = Instant::now();
    let lib = groups(3);
    let elapsed = started.elapsed();
    let listed = [
        "(a,a,c),(c,c,a)",
        "(a,b,a),(b,a,b)",
        "(a,b,b),(b,a,a)",
        "(a,c,c),(c,a,a)",
        "(b,b,c),(c,c,b)",
        "(b,c,b),(c,b,c)",
    ];
    let listed: Vec<NGGroup> = listed.iter().map(|s| group(s)).collect();
    ensure_eq!(lib, listed, "groups on 3 points");
    ensure!(lib.iter().all(|g| g.order() == 2), "a group of order other than 2");
    let oracle = pair_closure_oracle::<3>();
    let lib_maps: BTreeSet<_> = lib.iter().map(to_maps::<3>).collect();
    ensure!(oracle == lib_maps, "pair/closure oracle disagrees");
    ensure!(elapsed < Duration::from_secs(1), "enumeration took {elapsed:?}");
    Ok(())
}

fn c2_ac_swap_profile() -> Outcome {
    let g = group("(a,a,c),(c,c,a)");
    let d = build_digraph(g.elements()).unwrap();
    let p = d.degree_profile();
    ensure_eq!(d.size_pair(), (3, 6), "size pair");
    ensure_eq!(p.total, vec![5, 2, 5], "degrees");
    ensure_eq!((p.delta_min, p.delta_max), (2, 5), "delta");
    ensure_eq!(d.adjacency_matrix(), vec![vec![1, 0, 1]; 3], "adjacency");
    let oracle = arc_matrix(&to_maps::<3>(&g));
    ensure_eq!(d.adjacency_matrix(), oracle, "adjacency vs tally");
    ensure_eq!(p.total, total_degrees(&oracle), "degrees vs tally");
    let c = connectivity(d.graph()).map_err(|e| e.to_string())?;
    ensure_eq!(c.roots.format(Style::Letter), "{b}", "roots");
    ensure!(c.quasi_strongly_connected, "not quasi-strongly connected");
    ensure!(!c.strongly_connected, "strongly connected");
    ensure_eq!(eulerian_class(d.graph()), EulerianClass::SemiEulerian, "eulerian class");
    Ok(())
}

fn c3_other_three_point_matrices() -> Outcome {
    for (s, row, degrees) in [
        ("(a,b,a),(b,a,b)", [1, 1, 0], [5, 5, 2]),
        ("(a,b,b),(b,a,a)", [1, 1, 0], [5, 5, 2]),
        ("(b,b,c),(c,c,b)", [0, 1, 1], [2, 5, 5]),
        ("(b,c,b),(c,b,c)", [0, 1, 1], [2, 5, 5]),
    ] {
        let g = group(s);
        let d = build_digraph(g.elements()).unwrap();
        ensure_eq!(d.adjacency_matrix(), vec![row.to_vec(); 3], format!("{s} adjacency"));
        ensure_eq!(d.degree_profile().total, degrees.to_vec(), format!("{s} degrees"));
        ensure_eq!(arc_matrix(&to_maps::<3>(&g)), d.adjacency_matrix(), format!("{s} tally"));
    }
    Ok(())
}

fn c4_four_point_order_two() -> Outcome {
    let g = group("(1,1,4,4),(4,4,1,1)");
    let d = build_digraph(g.elements()).unwrap();
    let p = d.degree_profile();
    ensure_eq!(p.degree_sum(), 16, "degree sum");
    ensure_eq!(p.total, vec![6, 2, 2, 6], "degrees");
    ensure_eq!((p.delta_min, p.delta_max), (2, 6), "delta");
    ensure!(roots(d.graph()).is_empty(), "unexpected root");
    ensure_eq!(total_degrees(&arc_matrix(&to_maps::<4>(&g))), p.total, "degrees vs tally");
    Ok(())
}

fn c5_four_point_order_six() -> Outcome {
    let g = group("(1,1,4,3),(1,1,3,4),(4,4,1,3),(4,4,3,1),(3,3,1,4),(3,3,4,1)");
    let d = build_digraph(g.elements()).unwrap();
    let p = d.degree_profile();
    ensure_eq!(d.size_pair(), (4, 24), "size pair");
    ensure_eq!(p.degree_sum(), 48, "degree sum");
    ensure_eq!(p.total, vec![14, 6, 14, 14], "degrees");
    ensure_eq!(g.ng_fix().to_one_based(), vec![1, 3, 4], "ng_fix");
    let h = h_class_group(&"(1,1,3,4)".parse().unwrap()).map_err(|e| e.to_string())?;
    ensure!(h == g, "H-class of (1,1,3,4) differs: {}", h.format(Style::Numeric));
    Ok(())
}

fn c6_order_four_set() -> Outcome {
    let set = parse_set(verify::ORDER_FOUR_EXAMPLE).unwrap();
    let class = classify(&set).map_err(|e| e.to_string())?;
    ensure_eq!(class.kind, SetKind::UnionOfGroups, "classification");
    ensure_eq!(class.idempotent_count, 2, "idempotent count");
    // The composition table, built by hand, says the same.
    let maps: BTreeSet<Map<4>> = set.iter().map(map_of::<4>).collect();
    ensure!(is_closed(&maps), "oracle: not closed");
    ensure!(group_identity(&maps).is_none(), "oracle: found a group identity");
    ensure_eq!(maps.iter().filter(|f| comp(f, f) == **f).count(), 2, "oracle idempotents");
    let d = build_digraph(&set).unwrap();
    ensure_eq!(d.adjacency_matrix(), vec![vec![2, 0, 0, 2]; 4], "adjacency");
    Ok(())
}

fn direct_degree_sum(g: &NGGroup) -> u64 {
    let n = g.arity();
    let mut out = vec![0u64; n];
    let mut inn = vec![0u64; n];
    for f in g.elements() {
        for x in 0..n {
            out[x] += 1;
            inn[f.apply(x)] += 1;
        }
    }
    out.iter().chain(&inn).sum()
}

fn c7_sum_law() -> Outcome {
    let check = |g: &NGGroup| -> Outcome {
        let want = 2 * (g.arity() * g.order()) as u64;
        let lib = build_digraph(g.elements()).unwrap().degree_profile().degree_sum();
        ensure!(
            lib == want && direct_degree_sum(g) == want,
            "{}: library {lib}, tally {}, want {want}",
            g.format(Style::Numeric),
            direct_degree_sum(g)
        );
        Ok(())
    };
    for n in 3..=4 {
        groups(n).iter().try_for_each(check)?;
    }
    let five = groups(5);
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let sample: Vec<&NGGroup> = five.choose_multiple(&mut rng, 1000).collect();
    ensure_eq!(sample.len(), 1000, "sample size");
    sample.into_iter().try_for_each(check)?;
    for p in [PropositionId::P3_1, PropositionId::P3_2, PropositionId::P3_4, PropositionId::P4_1] {
        expect_verdict(p, 3..=4, Verdict::HoldsOnAll)?;
    }
    Ok(())
}

fn c8_fixed_point_difference() -> Outcome {
    let low = expect_verdict(PropositionId::P4_3, 3..=4, Verdict::HoldsOnAll)?;
    ensure_eq!(low.claim_status, ClaimStatus::Confirmed, "n <= 4 expectation");
    let high = expect_verdict(PropositionId::P4_3, 5..=5, Verdict::Fails)?;
    ensure_eq!(high.claim_status, ClaimStatus::Diverges, "n = 5 expectation");
    let with_four = high.counterexamples.iter().find(|c| match &c.instance {
        verify::Instance::Group(g) => {
            let counts: Vec<usize> = g.elements().iter().map(|f| f.fixed_point_count()).collect();
            counts.len() == 2 && counts[0].abs_diff(counts[1]) == 4
        }
        _ => false,
    });
    ensure!(with_four.is_some(), "no counterexample with difference 4");
    let table = Expectations::default();
    ensure!(evaluate(&[low, high], &table, false).passed(), "expectation table mismatch");
    Ok(())
}

fn c9_root_equivalence() -> Outcome {
    let r = expect_verdict(PropositionId::P3_6_ROOT, 3..=4, Verdict::HoldsOnAll)?;
    ensure!(r.sweep.instances >= 90 + 1000, "only {} instances", r.sweep.instances);
    Ok(())
}

fn c10_never_strongly_connected() -> Outcome {
    for n in 3..=5 {
        for g in groups(n) {
            let d = build_digraph(g.elements()).unwrap();
            // Errors if the component and witness routes disagree.
            let s = is_strongly_connected(d.graph()).map_err(|e| e.to_string())?;
            ensure!(!s.strongly_connected, "{} is strongly connected", g.format(Style::Numeric));
            let moved = g.ng_fix().complement();
            ensure!(is_in_closed_witness(d.graph(), &moved), "{}: bad witness", g.format(Style::Numeric));
            let sccs = strongly_connected_components(d.graph());
            ensure!(sccs.len() > 1, "single component");
        }
    }
    expect_verdict(PropositionId::P4_12, 3..=5, Verdict::HoldsOnAll)?;
    Ok(())
}

fn c11_factorial_bound() -> Outcome {
    expect_verdict(PropositionId::P4_9, 3..=5, Verdict::HoldsOnAll).map(drop)
}

fn c12_orbit_stabilizer() -> Outcome {
    expect_verdict(PropositionId::P4_11, 3..=4, Verdict::HoldsOnAll).map(drop)
}

fn c13_two_way_pair() -> Outcome {
    let r = expect_verdict(PropositionId::P3_3, 3..=5, Verdict::HoldsOnAll)?;
    ensure_eq!(r.sweep.instances, 6 + 84 + 1110, "groups of order >= 2");
    Ok(())
}

fn c14_divergences() -> Outcome {
    use PropositionId::*;
    let run = || verify_all(3..=4, &options()).map_err(|e| e.to_string());
    let reports = run()?;
    let again = run()?;
    let text = |rs: &[VerificationReport]| rs.iter().map(|r| r.to_json(false).to_string()).collect::<Vec<_>>();
    ensure!(text(&reports) == text(&again), "reports differ between runs");
    let ids: Vec<PropositionId> = reports.iter().map(|r| r.proposition).collect();
    ensure_eq!(ids, PropositionId::ALL.to_vec(), "coverage");

    let p35 = verify(P3_5, 3..=3, &options()).map_err(|e| e.to_string())?;
    ensure!(p35.verdict == Verdict::Fails, "P3_5 holds on 3 points");
    ensure!(p35.counterexamples[0].observed.contains("length 3"), "no triangle witness");
    for p in [P4_6a, P4_6b] {
        let r = reports.iter().find(|r| r.proposition == p).unwrap();
        ensure!(r.counterexample_total > 0, "{p} has no counterexample");
    }

    let mut verifier = Verifier::new(options());
    for r in &reports {
        for c in &r.counterexamples {
            ensure!(
                verifier.recheck(r.proposition, c).map_err(|e| e.to_string())?,
                "{} counterexample does not recheck",
                r.proposition
            );
        }
    }

    let table = Expectations::default();
    let strict = evaluate(&reports, &table, true);
    ensure!(!strict.passed(), "strict mode passed");
    ensure_eq!(strict.divergences, vec![P3_5, P4_6a, P4_6b, N4_ORDERS], "strict divergences");
    ensure!(strict.mismatches.is_empty(), "mismatches {:?}", strict.mismatches);
    ensure!(evaluate(&reports, &table, false).passed(), "lenient mode failed");
    Ok(())
}

fn c15_transformation_counts() -> Outcome {
    let limits = Limits::default();
    ensure_eq!(enumerate_all(3, &limits).unwrap().count(), 27, "n = 3");
    ensure_eq!(enumerate_all(4, &limits).unwrap().count(), 256, "n = 4");
    Ok(())
}

fn c16_h_class_oracle() -> Outcome {
    let lib3: BTreeSet<_> = groups(3).iter().map(to_maps::<3>).collect();
    let mut from_h = BTreeSet::new();
    for e in idempotents(3, None, &Limits::default()).unwrap().iter().filter(|e| !e.is_identity()) {
        from_h.extend(h_class_subset_oracle(&map_of::<3>(e)));
    }
    ensure!(from_h == lib3, "n = 3: H-class subset oracle differs");
    ensure!(pair_closure_oracle::<3>() == lib3, "n = 3: closure oracle differs");

    let lib4: BTreeSet<_> = groups(4).iter().map(to_maps::<4>).collect();
    let mut by_class: BTreeMap<Map<4>, usize> = BTreeMap::new();
    for e in idempotents(4, Some(3), &Limits::default()).unwrap() {
        let em = map_of::<4>(&e);
        let oracle = h_class_subset_oracle(&em);
        let lib: BTreeSet<_> = lib4.iter().filter(|g| g.contains(&em)).cloned().collect();
        ensure!(oracle == lib, "n = 4: H-class of {e} differs");
        by_class.insert(em, oracle.len());
    }
    ensure_eq!(by_class.len(), 12, "rank-3 H-classes");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 16] = [
        ("enumeration on 3 points matches the listed six groups and the oracle", c1_enumeration_three_points),
        ("{(a,a,c),(c,c,a)}: degrees, matrix, root, Euler class", c2_ac_swap_profile),
        ("matrices and degrees of the other listed 3-point groups", c3_other_three_point_matrices),
        ("order-2 example on 4 points", c4_four_point_order_two),
        ("order-6 example on 4 points is the H-class of (1,1,3,4)", c5_four_point_order_six),
        ("order-4 set is a union of groups with 2 idempotents", c6_order_four_set),
        ("degree sum 2n|G| on n = 3, 4 and a 1000-group sample at n = 5", c7_sum_law),
        ("fixed-point difference holds to n = 4 and fails with difference 4 at n = 5", c8_fixed_point_difference),
        ("roots exist iff quasi-strongly connected", c9_root_equivalence),
        ("no NG digraph is strongly connected; both routes agree", c10_never_strongly_connected),
        ("degree sum at most 2n!", c11_factorial_bound),
        ("orbit-stabilizer at every fixed point", c12_orbit_stabilizer),
        ("two-way arc pair between fixed points", c13_two_way_pair),
        ("recorded divergences reproduce; strict mode flags exactly them", c14_divergences),
        ("27 and 256 transformations", c15_transformation_counts),
        ("H-class enumeration equals the closure and subset oracles", c16_h_class_oracle),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
