//! Acceptance criteria. Run with `cargo test -p gengraph --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use gengraph::graph::{
    circuit_covers_edges, count_partners, degree_table, euler_verdict, even_degree_criterion,
    generating_graph_edges, probability_report, EulerMode, PartnerScan,
};
use gengraph::group::{
    conjugacy_classes, enumerate_elements, generates, normalizer_by_scan, normalizer_constructive,
    GroupSpec,
};
use gengraph::mobius::{degree_via_mobius, hio_divisibility, overgroup_lattice, SubgroupLattice};
use gengraph::numtheory::{decompositions, factorial};
use gengraph::perm::sym_centralizer_order;
use gengraph::{Caps, Family, Parity, Permutation};

const SMALL_CASES_LIMIT: Duration = Duration::from_secs(1);
const PARITY_LIMIT: Duration = Duration::from_secs(600);
const NAMED_DEGREES_LIMIT: Duration = Duration::from_secs(30);
const MOBIUS_LIMIT: Duration = Duration::from_secs(120);
const EULER_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn p(text: &str, n: usize) -> Permutation {
    Permutation::parse(text, n).unwrap()
}

fn caps() -> Caps {
    Caps::default()
}

fn check(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let elapsed = start.elapsed();
    check(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )
}

fn specs(range: std::ops::RangeInclusive<usize>) -> Vec<GroupSpec> {
    range
        .flat_map(|n| [GroupSpec::alt(n).unwrap(), GroupSpec::sym(n).unwrap()])
        .collect()
}

/// Oracle: a plain scan of all partners with the public generation test.
fn scan_degree(spec: GroupSpec, g: &Permutation) -> u64 {
    enumerate_elements(spec, &caps())
        .unwrap()
        .filter(|x| !x.is_identity() && generates(spec, g, x).unwrap())
        .count() as u64
}

fn trial_division_prime(q: usize) -> bool {
    q >= 2
        && (2..q)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

fn small_cases() -> Outcome {
    let start = Instant::now();
    let sym4 = GroupSpec::sym(4).unwrap();
    let isolated: Vec<Permutation> = enumerate_elements(sym4, &caps())
        .unwrap()
        .filter(|x| !x.is_identity() && scan_degree(sym4, x) == 0)
        .collect();
    check(
        isolated.len() == 3,
        format!("Sym_4 isolated: {}", isolated.len()),
    )?;
    check(
        isolated.iter().all(|x| x.order() == 2 && x.is_even()),
        "Sym_4 isolated vertices are not the even involutions",
    )?;
    let alt4 = GroupSpec::alt(4).unwrap();
    let sym3 = GroupSpec::sym(3).unwrap();
    for x in enumerate_elements(alt4, &caps())
        .unwrap()
        .filter(|x| x.order() == 3)
    {
        check(scan_degree(alt4, &x) == 9, format!("Alt_4 δ({x}) ≠ 9"))?;
    }
    for x in enumerate_elements(sym3, &caps())
        .unwrap()
        .filter(|x| !x.is_identity())
    {
        let expected = if x.order() == 2 { 4 } else { 3 };
        check(
            scan_degree(sym3, &x) == expected,
            format!("Sym_3 δ({x}) ≠ {expected}"),
        )?;
    }
    within(start, SMALL_CASES_LIMIT)?;
    Ok(format!("{:?}", start.elapsed()))
}

fn parity_classification() -> Outcome {
    let start = Instant::now();
    for spec in specs(3..=9) {
        let n = spec.n;
        let table = degree_table(spec, &caps()).map_err(|e| e.to_string())?;
        let observed: BTreeSet<String> = table.odd_rows().map(|r| r.shape.to_string()).collect();
        let expected: BTreeSet<String> = table
            .rows
            .iter()
            .filter(|r| {
                let order = r.element_order as usize;
                (order == n || order == n - 1) && trial_division_prime(order) && order % 4 == 3
            })
            .map(|r| r.shape.to_string())
            .collect();
        check(
            observed == expected,
            format!("{spec}: odd {observed:?}, predicted {expected:?}"),
        )?;
    }
    within(start, PARITY_LIMIT)?;
    Ok(format!("{:?}", start.elapsed()))
}

fn named_degrees() -> Outcome {
    let start = Instant::now();
    let g = p("(1 2 3 4 5 6 7)", 7);
    for (spec, expected) in [
        (GroupSpec::sym(7).unwrap(), 2499),
        (GroupSpec::alt(7).unwrap(), 2205),
    ] {
        let brute = count_partners(spec, &g, &caps(), PartnerScan::Full)
            .unwrap()
            .degree;
        let mobius = degree_via_mobius(spec, &g, &caps()).unwrap();
        check(
            brute == expected && mobius == expected as i128,
            format!("{spec}: brute {brute}, Möbius {mobius}, expected {expected}"),
        )?;
    }
    let q = 7u128;
    let closed = factorial(7) / 2 - q * (q - 1) / 2;
    check(closed == 2499, format!("closed form {closed}"))?;
    within(start, NAMED_DEGREES_LIMIT)?;
    Ok(format!("{:?}", start.elapsed()))
}

fn exact_lattice_specs() -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = (3..=6).map(|n| GroupSpec::sym(n).unwrap()).collect();
    out.extend((3..=7).map(|n| GroupSpec::alt(n).unwrap()));
    out
}

fn class_representatives(spec: GroupSpec) -> Vec<Permutation> {
    conjugacy_classes(spec, &caps())
        .unwrap()
        .into_iter()
        .map(|c| c.representative)
        .filter(|g| !g.is_identity())
        .collect()
}

fn mobius_agreement() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for spec in exact_lattice_specs() {
        for g in class_representatives(spec) {
            let brute = count_partners(spec, &g, &caps(), PartnerScan::Full)
                .unwrap()
                .degree;
            let mobius = degree_via_mobius(spec, &g, &caps()).unwrap();
            check(
                brute as i128 == mobius,
                format!("{spec} {g}: brute {brute}, Möbius {mobius}"),
            )?;
            checked += 1;
        }
    }
    within(start, MOBIUS_LIMIT)?;
    Ok(format!("{checked} classes, {:?}", start.elapsed()))
}

fn lattice_reproduction() -> Outcome {
    let g = p("(1 2 3 4 5 6 7)", 7);
    let alt7 = overgroup_lattice(GroupSpec::alt(7).unwrap(), &g, &caps()).unwrap();
    let nodes: Vec<(u128, i64)> = alt7.nodes.iter().map(|n| (n.order, n.mobius)).collect();
    check(
        nodes == [(7, 0), (21, 1), (168, -1), (168, -1), (2520, 1)],
        format!("Alt_7 lattice {nodes:?}"),
    )?;
    let fingerprints: BTreeSet<&str> = alt7.nodes.iter().map(|n| n.fingerprint.as_str()).collect();
    check(fingerprints.len() == 5, "Alt_7 nodes are not distinct")?;
    let sym7 = overgroup_lattice(GroupSpec::sym(7).unwrap(), &g, &caps()).unwrap();
    let mu = |order: u128| -> Vec<i64> {
        sym7.nodes
            .iter()
            .filter(|n| n.order == order)
            .map(|n| n.mobius)
            .collect()
    };
    check(
        mu(2520) == [-1] && mu(42) == [-1] && mu(21) == [1],
        format!(
            "Sym_7 μ: Alt_7 {:?}, order 42 {:?}, order 21 {:?}",
            mu(2520),
            mu(42),
            mu(21)
        ),
    )?;
    Ok(format!(
        "Alt_7 {} nodes, Sym_7 {} nodes",
        alt7.nodes.len(),
        sym7.nodes.len()
    ))
}

fn phi(m: u64) -> u64 {
    (1..=m)
        .filter(|&i| (1..=i).rev().find(|d| i % d == 0 && m.is_multiple_of(*d)) == Some(1))
        .count() as u64
}

fn normalizer_laws() -> Outcome {
    let mut checked = 0;
    for spec in specs(3..=8) {
        for g in class_representatives(spec) {
            let scan = normalizer_by_scan(spec, &g, &caps()).unwrap();
            let built = normalizer_constructive(spec, &g).unwrap();
            check(
                scan.normalizer_order == built.normalizer_order,
                format!(
                    "{spec} {g}: scan {}, constructive {}",
                    scan.normalizer_order, built.normalizer_order
                ),
            )?;
            if spec.family == Family::Sym {
                let formula = sym_centralizer_order(&g.cycle_shape()) * phi(g.order()) as u128;
                check(
                    scan.normalizer_order == formula,
                    format!(
                        "{spec} {g}: |N| {} ≠ |C|·φ {formula}",
                        scan.normalizer_order
                    ),
                )?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} classes"))
}

fn criterion_soundness() -> Outcome {
    let mut certified = 0;
    for spec in specs(3..=8) {
        for row in degree_table(spec, &caps()).unwrap().rows {
            let verdict = even_degree_criterion(spec, &row.representative, &caps()).unwrap();
            if verdict.is_certified() {
                certified += 1;
                check(
                    row.parity == Parity::Even,
                    format!(
                        "{spec} {}: certified but δ = {}",
                        row.representative, row.degree
                    ),
                )?;
            }
        }
    }
    Ok(format!("{certified} certified classes, 0 counterexamples"))
}

fn decomposition_biconditional() -> Outcome {
    for spec in specs(4..=8) {
        let failing: BTreeSet<String> = class_representatives(spec)
            .into_iter()
            .filter(|g| {
                !even_degree_criterion(spec, g, &caps())
                    .unwrap()
                    .is_certified()
            })
            .map(|g| g.cycle_shape().to_string())
            .collect();
        let certificates: BTreeSet<String> = decompositions(spec.n, spec.family)
            .unwrap()
            .into_iter()
            .map(|c| c.shape.to_string())
            .collect();
        check(
            failing == certificates,
            format!("{spec}: failing classes {failing:?}, certificates {certificates:?}"),
        )?;
    }
    Ok("n = 4..=8, both families".into())
}

fn euler_certificates() -> Outcome {
    let start = Instant::now();
    for spec in [GroupSpec::alt(5).unwrap(), GroupSpec::sym(5).unwrap()] {
        let verdict = euler_verdict(spec, EulerMode::WithCircuit, &caps()).unwrap();
        let edges = generating_graph_edges(spec, &caps()).unwrap();
        let circuit = verdict.circuit.ok_or(format!("{spec}: no circuit"))?;
        check(
            circuit_covers_edges(&circuit, &edges),
            format!("{spec}: circuit does not cover the edges"),
        )?;
    }
    let sym4 = euler_verdict(GroupSpec::sym(4).unwrap(), EulerMode::Empirical, &caps()).unwrap();
    let e = sym4.empirical.unwrap();
    check(
        !sym4.predicted_eulerian && !e.connected,
        "Sym_4 is not reported disconnected",
    )?;
    let sym7 = euler_verdict(GroupSpec::sym(7).unwrap(), EulerMode::Empirical, &caps()).unwrap();
    let e = sym7.empirical.unwrap();
    check(
        !sym7.predicted_eulerian && !e.all_even && e.odd_witness.is_some_and(|w| w.order() == 7),
        "Sym_7 has no odd 7-cycle witness",
    )?;
    within(start, EULER_LIMIT)?;
    Ok(format!("{:?}", start.elapsed()))
}

fn probability() -> Outcome {
    for (spec, numerator, denominator) in [
        (GroupSpec::sym(7).unwrap(), 720u128, 5039u128),
        (GroupSpec::alt(7).unwrap(), 720, 2519),
        (GroupSpec::alt(8).unwrap(), 5760, 20159),
    ] {
        let report = probability_report(spec, &caps()).unwrap();
        check(
            (report.numerator, report.denominator) == (numerator, denominator),
            format!(
                "{spec}: formula {}/{}",
                report.numerator, report.denominator
            ),
        )?;
        let count = report
            .odd_vertex_count
            .ok_or(format!("{spec}: no odd-vertex count"))?;
        let vertices = spec.order() - 1;
        // count / vertices = numerator / denominator, cross-multiplied
        check(
            count * denominator == numerator * vertices,
            format!("{spec}: {count} odd of {vertices} vertices"),
        )?;
    }
    Ok("720/5039, 720/2519, 5760/20159".into())
}

fn hio() -> Outcome {
    let mut lattices: Vec<SubgroupLattice> = Vec::new();
    for spec in exact_lattice_specs() {
        for g in class_representatives(spec) {
            lattices.push(overgroup_lattice(spec, &g, &caps()).unwrap());
        }
    }
    lattices.push(
        overgroup_lattice(
            GroupSpec::sym(7).unwrap(),
            &p("(1 2 3 4 5 6 7)", 7),
            &caps(),
        )
        .unwrap(),
    );
    let mut nodes = 0;
    for lattice in &lattices {
        for i in 0..lattice.nodes.len() {
            let check_result = hio_divisibility(lattice, i, &caps()).unwrap();
            check(
                check_result.holds,
                format!(
                    "{} ⟨{}⟩ node {i}: {check_result:?}",
                    lattice.spec, lattice.base_generator
                ),
            )?;
            nodes += 1;
        }
    }
    Ok(format!("{} lattices, {nodes} nodes", lattices.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("small-case exactness", small_cases),
        ("odd-degree classification, n ≤ 9", parity_classification),
        ("named degrees 2499 and 2205", named_degrees),
        ("Möbius sum equals degree", mobius_agreement),
        ("Alt_7 and Sym_7 lattices", lattice_reproduction),
        ("normalizer laws", normalizer_laws),
        ("even-degree criterion soundness", criterion_soundness),
        ("decomposition biconditional", decomposition_biconditional),
        ("Euler certificates", euler_certificates),
        ("odd-degree probability", probability),
        ("normalizer index divisibility", hio),
    ];
    println!();
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(reason) => {
                println!("FAIL {:>2} {name}: {reason}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
