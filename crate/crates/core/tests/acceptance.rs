//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p cyclen --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cyclen::bounds::{
    lai2017_constant, liminf6_constant, lower_below_upper, optimize_ratio, ratio5, ratio5_supremum,
    theorem5_target,
};
use cyclen::constructions::theorem5::n_t_theorem5;
use cyclen::constructions::theorem6::{ten_chord_block, Params6};
use cyclen::constructions::{audit_theorem6, build_theorem5, build_theorem6, validate5, Params5};
use cyclen::graph::{
    counts, materialize, read_edge_list, write_edge_list, Block, ChordSpec, ConstructionPlan,
    DEFAULT_VERTEX_CAP,
};
use cyclen::oracle::{check_graph, oracle_max_edges};
use cyclen::spectrum::{
    block_spectrum, compare_with_plan, enumerate_cycles_exact, predicted_spectrum6, verify,
    VerifyMode, DEFAULT_CYCLE_CAP, TEN_CHORD_TABLE,
};
use cyclen::{Graph, Rational};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed < limit {
        Ok(String::new())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn c1_theorem5_desk() -> Outcome {
    let start = Instant::now();
    let p = Params5::new(4, 3, 2, 1, 1);
    let plan = build_theorem5(&p).map_err(|e| e.to_string())?;
    let m = materialize(&plan, DEFAULT_VERTEX_CAP).map_err(|e| e.to_string())?;
    let (v, e) = (m.graph.vertex_count(), m.graph.edge_count());
    ensure!((v, e) == (125, 132), "V,E = {v},{e}");
    let s = enumerate_cycles_exact(&m.graph, DEFAULT_CYCLE_CAP).map_err(|e| e.to_string())?;
    let expected = [4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 56, 60, 72];
    ensure!(s.lengths() == expected, "spectrum {:?}", s.lengths());
    ensure!(
        s.is_distinct() && s.all_multiples_of(4),
        "not distinct multiples of 4"
    );
    ensure!(
        e as u64 - v as u64 == p.cycle_rank() - 1,
        "E - V = {}",
        e - v
    );
    // (3+2+2+1)*1 - 1 = 132 - 125 = 7.
    ensure!(e - v == 7, "E - V = {}", e - v);
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "V=125 E=132, 15 distinct lengths ≡ 0 mod 4, E-V=(k+s1+2s2+1)t-1=7 in {:?}",
        start.elapsed()
    ))
}

fn c2_theorem5_grid() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for m in [2, 4, 6] {
        for k in 1..=4 {
            for s1 in 1..=4 {
                for s2 in 1..=4 {
                    for t in 1..=3 {
                        let p = Params5::new(m, k, s1, s2, t);
                        if !validate5(&p).is_empty() {
                            continue;
                        }
                        let plan = build_theorem5(&p).map_err(|e| e.to_string())?;
                        let nt = n_t_theorem5(&p).map_err(|e| e.to_string())?;
                        let c = counts(&plan);
                        ensure!(
                            BigInt::from(c.vertices) == nt,
                            "{}: V={} n_t={nt}",
                            p.label(),
                            c.vertices
                        );
                        let structural = verify(&plan, VerifyMode::Structural, Some(m))
                            .map_err(|e| e.to_string())?;
                        let exact = verify(&plan, VerifyMode::exact(), Some(m))
                            .map_err(|e| e.to_string())?;
                        ensure!(
                            structural.cycle_spectrum() == exact.cycle_spectrum(),
                            "{}: structural and exact spectra differ",
                            p.label()
                        );
                        ensure!(exact.passed(), "{}: {}", p.label(), exact.summary());
                        ensure!(
                            structural.prediction_mismatches.is_empty(),
                            "{}: prediction mismatch {:?}",
                            p.label(),
                            structural.prediction_mismatches
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!(
        "{checked} parameter sets, all consistent, in {:?}",
        start.elapsed()
    ))
}

fn c3_ten_chord_block() -> Outcome {
    let start = Instant::now();
    let (t, i) = (1429i64, 58i64);
    let p = Params6::new(t as u64);
    let block = ten_chord_block(&p, i as u64).map_err(|e| e.to_string())?;
    let plan =
        ConstructionPlan::new("ten-chord t=1429 i=58", vec![block]).map_err(|e| e.to_string())?;
    let m = materialize(&plan, DEFAULT_VERTEX_CAP).map_err(|e| e.to_string())?;
    let s = enumerate_cycles_exact(&m.graph, DEFAULT_CYCLE_CAP).map_err(|e| e.to_string())?;
    let mut table: Vec<u64> = TEN_CHORD_TABLE
        .iter()
        .map(|&(a, c, b)| (a as i64 * t + c as i64 * i + b) as u64)
        .collect();
    table.sort_unstable();
    ensure!(s.len() == 66, "{} cycles", s.len());
    ensure!(
        s.lengths() == table,
        "enumerated lengths differ from the table"
    );
    ensure!(
        s.min() == Some(45_726) && s.max() == Some(197_302),
        "extremes {:?} {:?}",
        s.min(),
        s.max()
    );
    ensure!(s.is_distinct(), "block has repeated lengths");
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "{} vertices, 66 cycles = table, 45726..197302 in {:?}",
        m.graph.vertex_count(),
        start.elapsed()
    ))
}

fn c4_theorem6_structural() -> Outcome {
    let start = Instant::now();
    let p = Params6::from_r(1);
    let predicted = predicted_spectrum6(&p).map_err(|e| e.to_string())?;
    ensure!(
        predicted.len() == 87_292,
        "{} predicted lengths",
        predicted.len()
    );
    ensure!(
        predicted.spectrum().is_distinct(),
        "predicted lengths collide"
    );
    let plan = build_theorem6(&p).map_err(|e| e.to_string())?;
    let report = verify(&plan, VerifyMode::Structural, None).map_err(|e| e.to_string())?;
    ensure!(
        report.distinct,
        "collisions: {:?}",
        &report.collisions[..report.collisions.len().min(5)]
    );
    ensure!(
        report.cycle_spectrum() == predicted.realizable(),
        "structural spectrum differs from the realizable prediction"
    );
    ensure!(
        compare_with_plan(&plan, &predicted).is_empty(),
        "block mismatches"
    );
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!(
        "87292 predicted lengths distinct ({} realized, lengths 1,2 unrealizable) in {:?}",
        report.cycle_count(),
        start.elapsed()
    ))
}

fn c5_theorem6_audit() -> Outcome {
    let p = Params6::new(1429);
    let audit = audit_theorem6(&p).map_err(|e| e.to_string())?;
    ensure!(
        audit == audit_theorem6(&p).map_err(|e| e.to_string())?,
        "audit not deterministic"
    );
    let mu = audit.row("cyclomatic(listed)").ok_or("missing row")?;
    ensure!(
        mu.construction == BigInt::from(47_884),
        "construction mu {}",
        mu.construction
    );
    ensure!(mu.claimed == q(47_885, 1), "claimed mu {}", mu.claimed);
    ensure!(
        mu.difference() == -Rational::one(),
        "difference {}",
        mu.difference()
    );
    ensure!(
        audit
            .findings
            .iter()
            .any(|f| f.starts_with("erratum candidate")),
        "erratum not flagged"
    );
    let vertices = audit.row("vertices(listed)").ok_or("missing row")?;
    let built = audit.row("vertices").ok_or("missing row")?;
    Ok(format!(
        "mu 47884 vs implied 47885 (erratum flagged); vertex diff listed {} built {}",
        vertices.difference(),
        built.difference()
    ))
}

fn c6_constants() -> Outcome {
    let start = Instant::now();
    let v = ratio5::<Rational>(14_249_542, 28_499_066, 4_749_839);
    ensure!(v > theorem5_target(), "ratio5 at the stated triple is {v}");
    let c6 = liminf6_constant();
    ensure!(
        c6 == q(238, 99) && c6 == q(2, 1) + q(40, 99),
        "liminf constant {c6}"
    );
    ensure!(c6 > q(2, 1) + q(7654, 19071), "not above 2 + 7654/19071");
    ensure!(
        lai2017_constant() == q(2, 1) + q(7654, 19071),
        "earlier constant {}",
        lai2017_constant()
    );
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("ratio5 > 2.444; 238/99 = 2+40/99 > 2+7654/19071".into())
}

fn c7_optimizer() -> Outcome {
    let start = Instant::now();
    let p = optimize_ratio(10_000, 10_000_000);
    ensure!(p.feasible, "infeasible {:?}", p.triple());
    ensure!(
        p.ratio > theorem5_target(),
        "ratio {} not above 2.444",
        p.ratio
    );
    ensure!(
        p.ratio < ratio5_supremum(),
        "ratio {} not below 22/9",
        p.ratio
    );
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{:?} in {:?}", p.triple(), start.elapsed()))
}

fn c8_oracle() -> Outcome {
    let start = Instant::now();
    for (n, m, expected) in [(3, 1, 3), (4, 1, 4), (5, 1, 6), (4, 2, 4)] {
        let r = oracle_max_edges(n, m, 8).map_err(|e| e.to_string())?;
        ensure!(r.max_edges == expected, "({n},{m}) gave {}", r.max_edges);
        ensure!(
            check_graph(&r.witness, m, DEFAULT_CYCLE_CAP).map_err(|e| e.to_string())?,
            "({n},{m}) witness fails recheck"
        );
    }
    let r6 = oracle_max_edges(6, 1, 8).map_err(|e| e.to_string())?;
    ensure!(
        check_graph(&r6.witness, 1, DEFAULT_CYCLE_CAP).unwrap_or(false),
        "n=6 witness"
    );
    let small = start.elapsed();
    within(small, Duration::from_secs(60))?;
    let seven = Instant::now();
    let r7 = oracle_max_edges(7, 1, 8).map_err(|e| e.to_string())?;
    ensure!(
        check_graph(&r7.witness, 1, DEFAULT_CYCLE_CAP).unwrap_or(false),
        "n=7 witness"
    );
    within(seven.elapsed(), Duration::from_secs(600))?;
    Ok(format!(
        "3,4,6 and g(4,2)=4; f(6)={} f(7)={}; n<=6 in {small:?}, n=7 in {:?}",
        r6.max_edges,
        r7.max_edges,
        seven.elapsed()
    ))
}

fn chorded_block() -> impl Strategy<Value = Block> {
    (3u64..=64).prop_flat_map(|cycle_len| {
        let positions: Vec<u64> = (1..cycle_len).collect();
        let most = 4usize.min(positions.len());
        (
            proptest::sample::subsequence(positions, 0..=most),
            proptest::collection::vec(1u64..=10, 4),
        )
            .prop_map(move |(attach, lens)| Block::ChordedCycle {
                cycle_len,
                chords: attach
                    .into_iter()
                    .zip(lens)
                    .map(|(a, l)| ChordSpec::new(a, l))
                    .collect(),
            })
    })
}

fn random_graph() -> impl Strategy<Value = Graph> {
    (2usize..40).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..120).prop_map(move |pairs| {
            let edges = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::new(n, edges).expect("loops filtered")
        })
    })
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn c9_properties() -> Outcome {
    let start = Instant::now();
    runner(200)
        .run(&chorded_block(), |block| {
            let plan = ConstructionPlan::new("random", vec![block.clone()]).expect("valid block");
            let m = materialize(&plan, DEFAULT_VERTEX_CAP).expect("small");
            let exact = enumerate_cycles_exact(&m.graph, DEFAULT_CYCLE_CAP).expect("few cycles");
            prop_assert_eq!(block_spectrum(&block), exact);
            Ok(())
        })
        .map_err(|e| format!("chorded blocks: {e}"))?;
    runner(100)
        .run(&random_graph(), |g| {
            let mut buf = Vec::new();
            write_edge_list(&g, &mut buf).expect("in-memory write");
            let back = read_edge_list(buf.as_slice()).expect("own output parses");
            prop_assert_eq!(&back, &g);
            let mut again = Vec::new();
            write_edge_list(&back, &mut again).expect("in-memory write");
            prop_assert_eq!(again, buf);
            Ok(())
        })
        .map_err(|e| format!("round trip: {e}"))?;
    let mut sampled = 0;
    let sweep = (47..=10_000u64)
        .chain((10_001..1_000_000).step_by(997))
        .chain([1_000_000]);
    for n in sweep {
        ensure!(
            lower_below_upper(n) == Some(true),
            "shi_lower({n}) not certified below boros_upper"
        );
        sampled += 1;
    }
    Ok(format!(
        "200 blocks structural=exact, 100 round trips, {sampled} sweep points in {:?}",
        start.elapsed()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("1 theorem5 desk instance", c1_theorem5_desk),
        ("2 theorem5 parameter grid", c2_theorem5_grid),
        ("3 theorem6 ten-chord block", c3_ten_chord_block),
        ("4 theorem6 structural t=1429", c4_theorem6_structural),
        ("5 theorem6 closed-form audit", c5_theorem6_audit),
        ("6 ratio constants", c6_constants),
        ("7 optimizer", c7_optimizer),
        ("8 oracle ground truth", c8_oracle),
        ("9 property suites", c9_properties),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
