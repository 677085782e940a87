//! One line per acceptance criterion. The run fails if the set of failing
//! criteria is not exactly the set of known discrepancies with target values.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use boolnet::boolfn::{is_nested_canalizing, stratify, BooleanFunction, LayerStructure};
use boolnet::extend::{
    apply_placement, count_extensions_general, count_ncf_extensions, enumerate_extensions_brute, ncf_placements,
    restrict_ncf,
};
use boolnet::io::{emit_network, parse_network};
use boolnet::network::{
    compose, count_graphical_compositions, count_graphical_extensions, count_network_extensions, graphical_extend,
    graphical_realize, graphical_realize_named, scc_decompose, Connections, CutPolicy, ExtensionMode,
    GraphicalFamily, LabeledMatrix,
};
use boolnet::verify::{brute_ncf_extensions, brute_network_extensions, ncf_function_count, ncf_layer_structures};
use boolnet::BooleanNetwork;
use num_bigint::BigUint;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

mod common;

use common::{assembly, corpus, realize_all};

/// Target extension counts of a two-input NCF by q = 1..6 new inputs.
const TARGET_NCF_SEQUENCE: [u64; 6] = [8, 92, 1328, 23184, 483840, 12050112];

/// Criteria whose target values disagree with exhaustive enumeration.
const KNOWN_DISCREPANCIES: [u32; 1] = [4];

type Criterion = (u32, fn() -> Outcome, Duration);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn f(n: usize, rule: impl Fn(&[bool]) -> bool) -> BooleanFunction {
    BooleanFunction::from_fn(n, rule).unwrap()
}

fn structure(g: &BooleanFunction) -> Vec<usize> {
    stratify(g).unwrap().layer_structure().sizes().to_vec()
}

/// x1(x2+1)[x3[(x4+1)x5+1]+1]+1 over F2.
fn layered_212() -> BooleanFunction {
    f(5, |x| !(x[0] & !x[1] & !(x[2] & !(!x[3] & x[4]))))
}

fn criterion_1() -> Outcome {
    let a = f(4, |x| x[0] & (!x[1] | (x[2] & x[3])));
    let b = f(4, |x| x[0] & (!x[1] | x[2] | x[3]));
    let got = [structure(&a), structure(&b), structure(&layered_212())];
    let want = [vec![1, 1, 2], vec![1, 3], vec![2, 1, 2]];
    outcome(got == want, format!("{got:?}"))
}

fn criterion_2() -> Outcome {
    let g = layered_212();
    let cases = [
        (vec![0, 2, 3, 4], f(4, |x| !(x[0] & !(x[1] & !(!x[2] & x[3])))), vec![1, 1, 2]),
        (vec![0, 1, 3, 4], f(4, |x| !(x[0] & !x[1] & !x[2] & x[3])), vec![4]),
        (vec![0, 1, 2, 3], f(4, |x| !(x[0] & !x[1] & !(x[2] & x[3]))), vec![2, 2]),
    ];
    let mut ok = true;
    let mut found = Vec::new();
    for (kept, expected, layers) in cases {
        let r = restrict_ncf(&g, &kept).unwrap();
        ok &= r == expected && structure(&r) == layers;
        found.push(structure(&r));
    }
    outcome(ok, format!("structures {found:?}"))
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, q) in [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (3, 1)] {
        let base = f(n, |x| x.iter().fold(true, |a, &b| a & b));
        let brute = enumerate_extensions_brute(&base, q).unwrap().len();
        let formula = count_extensions_general(n, q).unwrap();
        ok &= formula == BigUint::from(brute);
        parts.push(format!("({n},{q})={brute}"));
    }
    for n in 1..=3u32 {
        let closed = (BigUint::from(1u8) << (2usize.pow(n) + 1)) - 1u8;
        ok &= count_extensions_general(n as usize, 1).unwrap() == closed;
    }
    outcome(ok, parts.join(" "))
}

fn criterion_4() -> Outcome {
    let ls = LayerStructure::ncf(vec![2]).unwrap();
    let computed: Vec<BigUint> = (1..=6).map(|q| count_ncf_extensions(&ls, q).unwrap()).collect();
    let target: Vec<BigUint> = TARGET_NCF_SEQUENCE.iter().map(|&v| BigUint::from(v)).collect();
    let and2 = BooleanFunction::from_bits("0001").unwrap();
    let brute = [brute_ncf_extensions(&and2, 1).unwrap(), brute_ncf_extensions(&and2, 2).unwrap()];
    let brute_ok = brute.iter().zip(&computed).all(|(&b, c)| BigUint::from(b) == *c);
    // Independent count: the NCFs on q + 2 inputs split evenly over the 8 two-input NCFs.
    let symmetric: Vec<BigUint> = (1..=6).map(|q| ncf_function_count(q + 2) / 8u8).collect();
    let mismatches: Vec<String> = computed
        .iter()
        .zip(&target)
        .enumerate()
        .filter(|(_, (c, p))| c != p)
        .map(|(i, (c, p))| format!("q={} computed {c} target {p}", i + 1))
        .collect();
    let detail = format!(
        "computed {}; brute force q=1,2 {}; NCF(q+2)/8 {}{}",
        join(&computed),
        if brute_ok { "agrees" } else { "DISAGREES" },
        if symmetric == computed { "agrees" } else { "DISAGREES" },
        if mismatches.is_empty() { String::new() } else { format!("; {}", mismatches.join(", ")) },
    );
    outcome(mismatches.is_empty() && brute_ok, detail)
}

fn join(values: &[BigUint]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut structures = 0;
    for n in 1..=5 {
        for ls in ncf_layer_structures(n) {
            let base = ls.representative().unwrap();
            let placements = ncf_placements(&base).unwrap();
            let closed = 2 + 2 * ls.sizes().iter().map(|&k| (1usize << k) - 1).sum::<usize>();
            ok &= placements.len() == closed;
            let kept: Vec<usize> = (0..n).collect();
            let mut seen = HashSet::new();
            for p in &placements {
                let g = apply_placement(&base, p, n).unwrap();
                ok &= is_nested_canalizing(&g) && restrict_ncf(&g, &kept).unwrap() == base && seen.insert(g);
            }
            structures += 1;
        }
    }
    outcome(ok, format!("{structures} layer structures"))
}

const FOUR_NODE: &str = "x1 = x2 & x1\nx2 = !x1\nx3 = x1 | !x4\nx4 = (x1 & !x2) | (x3 & x4)";

fn criterion_6() -> Outcome {
    let f = parse_network(FOUR_NODE).unwrap();
    let d = scc_decompose(&f, &CutPolicy::Zeros).unwrap();
    let components: Vec<Vec<String>> = d.simple_networks.iter().map(BooleanNetwork::names).collect();
    let expected = [
        parse_network("x1 = x2 & x1\nx2 = !x1").unwrap(),
        parse_network("x3 = !x4\nx4 = x3 & x4").unwrap(),
    ];
    let ok = components == [vec!["x1", "x2"], vec!["x3", "x4"]]
        && d.q_graph == BTreeSet::from([(0, 1)])
        && d.simple_networks == expected;
    outcome(ok, format!("components {components:?}, Q {:?}", d.q_graph))
}

fn matrix(rows: &[&[u8]], z: u8) -> LabeledMatrix {
    LabeledMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect(), z).unwrap()
}

fn criterion_7() -> Outcome {
    let w1 = matrix(&[&[1, 1], &[1, 0]], 2);
    let w2 = matrix(&[&[0, 1], &[1, 1]], 2);
    let mut distinct: Vec<BooleanNetwork> = Vec::new();
    for p in LabeledMatrix::all(2, 2, 2).unwrap() {
        let g = graphical_realize(&graphical_extend(&w1, &w2, &p).unwrap(), GraphicalFamily::Linear).unwrap();
        if !distinct.contains(&g) {
            distinct.push(g);
        }
    }

    let names = |a: &[&str]| a.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let assemble = |family, w1: &LabeledMatrix, w2: &LabeledMatrix, p: LabeledMatrix| {
        let simple = [
            graphical_realize_named(w1, family, names(&["x1", "x2"])).unwrap(),
            graphical_realize_named(w2, family, names(&["x3", "x4"])).unwrap(),
        ];
        let conn = Connections::Graphical { family, blocks: [((0, 1), p)].into() };
        compose(&simple, &BTreeSet::from([(0, 1)]), &conn).unwrap()
    };
    let linear = assemble(GraphicalFamily::Linear, &w1, &w2, matrix(&[&[1, 0], &[1, 1]], 2));
    let linear_ok =
        linear == parse_network("x1 = x1 ^ x2\nx2 = x1\nx3 = x1 ^ x4\nx4 = x1 ^ x2 ^ x3 ^ x4").unwrap();

    let a1 = matrix(&[&[0, 2], &[1, 1]], 3);
    let a2 = matrix(&[&[2, 1], &[1, 0]], 3);
    let and_not = assemble(GraphicalFamily::AndNot, &a1, &a2, matrix(&[&[0, 0], &[1, 2]], 3));
    let and_not_ok =
        and_not == parse_network("x1 = !x2\nx2 = x1 & x2\nx3 = !x3 & x4\nx4 = x1 & !x2 & x3").unwrap();

    let sixteen = count_graphical_extensions(2, 2, 2).unwrap();
    let eighty_one = count_graphical_extensions(2, 2, 3).unwrap();
    let ok = distinct.len() == 16
        && linear_ok
        && and_not_ok
        && sixteen == BigUint::from(16u8)
        && eighty_one == BigUint::from(81u8);
    outcome(
        ok,
        format!("{} distinct, counts {sixteen} and {eighty_one}, linear {linear_ok}, and-not {and_not_ok}", distinct.len()),
    )
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut tuples = 0;
    for z in [2u8, 3] {
        for m in 1..=4u32 {
            for code in 0..3usize.pow(m) {
                let sizes: Vec<usize> = (0..m).map(|i| code / 3usize.pow(i) % 3 + 1).collect();
                let (by_graphs, closed) = count_graphical_compositions(&sizes, z).unwrap();
                // Sum over every edge set on pairs i < j, independent of the library.
                let pairs: Vec<(usize, usize)> =
                    (0..sizes.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
                let mut direct = BigUint::from(0u8);
                for mask in 0..1usize << pairs.len() {
                    let mut term = BigUint::from(1u8);
                    for (k, &(i, j)) in pairs.iter().enumerate() {
                        if mask >> k & 1 == 1 {
                            term *= BigUint::from(z).pow((sizes[i] * sizes[j]) as u32) - 1u8;
                        }
                    }
                    direct += term;
                }
                let pairs_product: usize = pairs.iter().map(|&(i, j)| sizes[i] * sizes[j]).sum();
                ok &= by_graphs == closed && by_graphs == direct && closed == BigUint::from(z).pow(pairs_product as u32);
                tuples += 1;
            }
        }
    }
    outcome(ok, format!("{tuples} size tuples"))
}

fn criterion_9() -> Outcome {
    let x = BooleanFunction::variable(1, 0);
    let g = BooleanNetwork::from_rules(vec![("x".to_string(), vec!["x"], x.clone())]).unwrap();
    let ncf = count_network_extensions(1, &g, ExtensionMode::Ncf).unwrap();
    let general = count_network_extensions(1, &g, ExtensionMode::General).unwrap();
    let ncf_brute = brute_network_extensions(&x, true).unwrap();
    let general_brute = brute_network_extensions(&x, false).unwrap();
    let ok = ncf == BigUint::from(ncf_brute)
        && general == BigUint::from(general_brute)
        && (ncf_brute, general_brute) == (5, 8);
    outcome(ok, format!("ncf {ncf} vs {ncf_brute}, general {general} vs {general_brute}"))
}

fn criterion_10() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 256, failure_persistence: None, ..Config::default() });
    let identity = runner.run(&assembly(), |a| {
        let simple = realize_all(&a);
        let q: BTreeSet<(usize, usize)> = a.blocks.keys().copied().collect();
        let conn = Connections::Graphical { family: a.family, blocks: a.blocks.clone() };
        let big = compose(&simple, &q, &conn).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let d = scc_decompose(&big, &CutPolicy::Graphical(a.family)).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let mut recovered = d.simple_networks.clone();
        let mut original = simple.clone();
        recovered.sort_by_key(BooleanNetwork::names);
        original.sort_by_key(BooleanNetwork::names);
        if recovered != original || d.q_graph.len() != q.len() {
            return Err(TestCaseError::fail("decomposition differs"));
        }
        Ok(())
    });
    let networks = corpus();
    let round_trip_failures = networks
        .iter()
        .filter(|f| parse_network(&emit_network(f)).ok().as_ref() != Some(*f))
        .count();
    let ok = identity.is_ok() && round_trip_failures == 0;
    outcome(
        ok,
        format!(
            "decompose-compose: 256 cases, {}; parse-emit: {} networks, {round_trip_failures} failures",
            if identity.is_ok() { "0 failures".to_string() } else { format!("{identity:?}") },
            networks.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(1)),
        (3, criterion_3, Duration::from_secs(30)),
        (4, criterion_4, Duration::from_secs(60)),
        (5, criterion_5, Duration::from_secs(60)),
        (6, criterion_6, Duration::from_secs(10)),
        (7, criterion_7, Duration::from_secs(10)),
        (8, criterion_8, Duration::from_secs(10)),
        (9, criterion_9, Duration::from_secs(10)),
        (10, criterion_10, Duration::from_secs(60)),
    ];
    let mut failing = Vec::new();
    for (n, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let passed = result.passed && elapsed < limit;
        println!(
            "criterion {n}: {} ({}; {:.2}s, limit {}s)",
            if passed { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !passed {
            failing.push(n);
        }
    }
    if failing == KNOWN_DISCREPANCIES {
        println!("acceptance: failing criteria {failing:?} are exactly the known discrepancies");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failing criteria {failing:?}, known {KNOWN_DISCREPANCIES:?}");
        ExitCode::FAILURE
    }
}
