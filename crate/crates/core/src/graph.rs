//! Vertex degrees of the generating graph, parity predictions, the
//! normalizer-based even-degree criterion and Eulerian verdicts.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{
    conjugacy_classes, enumerate_elements, normalizer_of_cyclic, sym_centralizer_generators,
    Family, GenerationTest, GroupSpec,
};
use crate::numtheory::{
    eulerian_predicate, is_prime, odd_degree_prime, odd_degree_probability, ProbabilityReport,
};
use crate::perm::{sym_centralizer_order, CycleShape, Parity, Permutation};

/// How partners of a vertex are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartnerScan {
    /// Test every element of the group.
    Full,
    /// Test one element per orbit of `C_{Sym_n}(g)` acting by conjugation,
    /// weighting by orbit size. Exact: conjugation by an element of
    /// `Sym_n` that fixes `g` preserves both the group and adjacency to `g`.
    CentralizerOrbits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartnerCount {
    pub degree: u64,
    /// Neighbors of order 2.
    pub involution_neighbors: u64,
}

/// Counts the neighbors of `g`, together with how many of them are involutions.
pub fn count_partners(
    spec: GroupSpec,
    g: &Permutation,
    caps: &Caps,
    scan: PartnerScan,
) -> Result<PartnerCount> {
    spec.check_nontrivial_member(g)?;
    spec.check_enumerable(caps).map_err(|e| match e {
        Error::CapExceeded {
            what,
            value,
            cap,
            limit,
            ..
        } => Error::CapExceeded {
            what,
            value,
            cap,
            limit,
            hint: Some("class-level tables are available up to the enumeration cap"),
        },
        other => other,
    })?;
    let elements: Vec<Permutation> = enumerate_elements(spec, caps)?.collect();
    let test = GenerationTest::new(spec);
    let weighted: Vec<(Permutation, u64)> = match scan {
        PartnerScan::Full => elements.into_iter().map(|x| (x, 1)).collect(),
        PartnerScan::CentralizerOrbits => centralizer_orbits(spec, g, &elements),
    };
    let (degree, involutions) = weighted
        .par_iter()
        .filter(|(x, _)| !x.is_identity() && test.test(g, x))
        .map(|(x, w)| (*w, if x.order() == 2 { *w } else { 0 }))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(PartnerCount {
        degree,
        involution_neighbors: involutions,
    })
}

/// One representative per orbit of `C_{Sym_n}(g)` on the group, with orbit sizes.
fn centralizer_orbits(
    spec: GroupSpec,
    g: &Permutation,
    elements: &[Permutation],
) -> Vec<(Permutation, u64)> {
    let gens = sym_centralizer_generators(g);
    let total: usize = (1..=spec.n).product();
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for x in elements {
        let r = x.rank();
        if seen[r] {
            continue;
        }
        seen[r] = true;
        stack.push(*x);
        let mut size = 0u64;
        while let Some(y) = stack.pop() {
            size += 1;
            for c in &gens {
                let z = y.conjugate_by(c);
                let rz = z.rank();
                if !seen[rz] {
                    seen[rz] = true;
                    stack.push(z);
                }
            }
        }
        out.push((*x, size));
    }
    out
}

/// `δ(g)`: the number of `x ∈ G \ {1}`, `x ≠ g`, with `⟨g, x⟩ = G`.
pub fn degree(spec: GroupSpec, g: &Permutation, caps: &Caps) -> Result<u64> {
    Ok(count_partners(spec, g, caps, PartnerScan::CentralizerOrbits)?.degree)
}

/// Parity forced by the odd-degree classification: odd exactly for elements
/// of prime order `p ≡ 3 (mod 4)` with `p ∈ {n, n − 1}`.
pub fn predicted_parity(spec: GroupSpec, g: &Permutation) -> Parity {
    let order = g.order();
    let odd = odd_degree_prime(spec.n) == Some(order) && is_prime(order);
    if odd {
        Parity::Odd
    } else {
        Parity::Even
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionSource {
    /// The odd-degree classification for `Alt_n` / `Sym_n`.
    ParityTheorem,
    /// The normalizer criterion certified an even degree.
    NormalizerCriterion,
    None,
}

impl fmt::Display for PredictionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PredictionSource::ParityTheorem => "parity_theorem",
            PredictionSource::NormalizerCriterion => "normalizer_criterion",
            PredictionSource::None => "none",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub representative: Permutation,
    pub shape: CycleShape,
    pub element_order: u64,
    pub class_size: u128,
    pub degree: u64,
    pub parity: Parity,
    pub predicted_parity: Parity,
    pub prediction_source: PredictionSource,
}

/// Degrees per conjugacy class, identity excluded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub spec: GroupSpec,
    pub rows: Vec<DegreeRow>,
}

impl DegreeReport {
    /// `Σ class_size · degree`, twice the number of edges.
    pub fn degree_sum(&self) -> u128 {
        self.rows
            .iter()
            .map(|r| r.class_size * r.degree as u128)
            .sum()
    }

    pub fn edge_count(&self) -> u128 {
        self.degree_sum() / 2
    }

    pub fn odd_rows(&self) -> impl Iterator<Item = &DegreeRow> {
        self.rows.iter().filter(|r| r.parity == Parity::Odd)
    }

    pub fn odd_vertex_count(&self) -> u128 {
        self.odd_rows().map(|r| r.class_size).sum()
    }

    pub fn all_even(&self) -> bool {
        self.odd_rows().next().is_none()
    }

    /// Degree of any element, looked up through its class.
    ///
    /// The two `Alt_n` classes of a split shape are conjugate under `Sym_n`,
    /// which preserves degrees, so the shape determines the row.
    pub fn degree_of(&self, x: &Permutation) -> Option<u64> {
        let shape = x.cycle_shape();
        self.rows
            .iter()
            .find(|r| r.shape == shape)
            .map(|r| r.degree)
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record([
                "shape",
                "class_size",
                "degree",
                "parity",
                "predicted_parity",
                "source",
            ])
            .expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record([
                    row.shape.to_string(),
                    row.class_size.to_string(),
                    row.degree.to_string(),
                    row.parity.to_string(),
                    row.predicted_parity.to_string(),
                    row.prediction_source.to_string(),
                ])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Γ({}): {} classes of nontrivial elements",
            self.spec,
            self.rows.len()
        )?;
        writeln!(
            f,
            "{:<22} {:>14} {:>10} {:>6} {:>10}  representative",
            "shape", "class size", "δ", "parity", "predicted"
        )?;
        for row in &self.rows {
            writeln!(
                f,
                "{:<22} {:>14} {:>10} {:>6} {:>10}  {}",
                row.shape.to_string(),
                row.class_size,
                row.degree,
                row.parity,
                row.predicted_parity,
                row.representative
            )?;
        }
        write!(f, "edges: {}", self.edge_count())
    }
}

/// One degree computation per conjugacy class.
pub fn degree_table(spec: GroupSpec, caps: &Caps) -> Result<DegreeReport> {
    degree_table_with(spec, caps, PartnerScan::CentralizerOrbits)
}

pub fn degree_table_with(spec: GroupSpec, caps: &Caps, scan: PartnerScan) -> Result<DegreeReport> {
    let classes = conjugacy_classes(spec, caps)?;
    let mut rows = Vec::new();
    for class in classes {
        let g = class.representative;
        if g.is_identity() {
            continue;
        }
        let degree = count_partners(spec, &g, caps, scan)?.degree;
        rows.push(DegreeRow {
            representative: g,
            element_order: g.order(),
            shape: class.shape,
            class_size: class.size,
            degree,
            parity: Parity::of(degree),
            predicted_parity: predicted_parity(spec, &g),
            prediction_source: PredictionSource::ParityTheorem,
        });
    }
    Ok(DegreeReport { spec, rows })
}

/// Outcome of the normalizer criterion: `2^ε | |N_G(⟨g⟩)|` forces an even
/// degree, with `ε = 1` when `G^ab` has odd order and `ε = 2` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CriterionVerdict {
    EvenCertified {
        epsilon: u32,
        normalizer_order: u128,
    },
    Inconclusive {
        epsilon: u32,
        normalizer_order: u128,
    },
}

impl CriterionVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, CriterionVerdict::EvenCertified { .. })
    }
}

/// `ε` for the ambient group: `Alt_n^ab` is `C_3` or trivial, `Sym_n^ab = C_2`.
pub fn abelianization_epsilon(spec: GroupSpec) -> u32 {
    match spec.family {
        Family::Alt => 1,
        Family::Sym => 2,
    }
}

pub fn even_degree_criterion(
    spec: GroupSpec,
    g: &Permutation,
    caps: &Caps,
) -> Result<CriterionVerdict> {
    spec.check_nontrivial_member(g)?;
    let epsilon = abelianization_epsilon(spec);
    let normalizer_order = normalizer_of_cyclic(spec, g, caps)?.normalizer_order;
    Ok(if normalizer_order % (1 << epsilon) == 0 {
        CriterionVerdict::EvenCertified {
            epsilon,
            normalizer_order,
        }
    } else {
        CriterionVerdict::Inconclusive {
            epsilon,
            normalizer_order,
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionParity {
    pub degree: u64,
    pub involution_neighbors: u64,
    pub degree_parity: Parity,
    pub involution_parity: Parity,
}

impl InvolutionParity {
    pub fn agrees(&self) -> bool {
        self.degree_parity == self.involution_parity
    }
}

/// The degree of `g` and the number of involutions adjacent to it; their
/// parities always agree in a non-cyclic group.
pub fn involution_parity_check(
    spec: GroupSpec,
    g: &Permutation,
    caps: &Caps,
) -> Result<InvolutionParity> {
    let count = count_partners(spec, g, caps, PartnerScan::CentralizerOrbits)?;
    Ok(InvolutionParity {
        degree: count.degree,
        involution_neighbors: count.involution_neighbors,
        degree_parity: Parity::of(count.degree),
        involution_parity: Parity::of(count.involution_neighbors),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EulerMode {
    PredicateOnly,
    Empirical,
    WithCircuit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalEuler {
    pub connected: bool,
    pub all_even: bool,
    pub odd_witness: Option<Permutation>,
    pub component_count: usize,
    pub isolated_vertices: Vec<Permutation>,
    pub edge_count: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerVerdict {
    pub spec: GroupSpec,
    pub predicted_eulerian: bool,
    pub empirical: Option<EmpiricalEuler>,
    /// Closed vertex walk; consecutive entries are adjacent and every edge
    /// appears exactly once.
    pub circuit: Option<Vec<Permutation>>,
}

impl fmt::Display for EulerVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Γ({}): predicted {}",
            self.spec,
            if self.predicted_eulerian {
                "Eulerian"
            } else {
                "not Eulerian"
            }
        )?;
        if let Some(e) = &self.empirical {
            write!(
                f,
                "; observed connected = {}, components = {}, isolated = {}, all degrees even = {}, edges = {}",
                e.connected,
                e.component_count,
                e.isolated_vertices.len(),
                e.all_even,
                e.edge_count
            )?;
            if let Some(w) = &e.odd_witness {
                write!(f, ", odd vertex {w}")?;
            }
        }
        if let Some(c) = &self.circuit {
            write!(f, "; circuit of {} edges", c.len().saturating_sub(1))?;
        }
        Ok(())
    }
}

/// Nontrivial elements in lexicographic order, indexed by rank.
struct VertexSet {
    vertices: Vec<Permutation>,
    test: GenerationTest,
}

impl VertexSet {
    fn new(spec: GroupSpec, caps: &Caps) -> Result<VertexSet> {
        let vertices = enumerate_elements(spec, caps)?
            .filter(|x| !x.is_identity())
            .collect();
        Ok(VertexSet {
            vertices,
            test: GenerationTest::new(spec),
        })
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.test.test(&self.vertices[a], &self.vertices[b])
    }

    /// Connected components by breadth-first search, testing each popped
    /// vertex only against still-unvisited vertices.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut remaining: Vec<usize> = (0..self.vertices.len()).collect();
        let mut components = Vec::new();
        while let Some(&start) = remaining.first() {
            remaining.remove(0);
            let mut component = vec![start];
            let mut cursor = 0;
            while cursor < component.len() {
                let v = component[cursor];
                let (hit, miss): (Vec<usize>, Vec<usize>) =
                    remaining.par_iter().partition(|&&u| self.adjacent(v, u));
                component.extend(hit);
                remaining = miss;
                cursor += 1;
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Sorted neighbor lists.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.vertices.len())
            .into_par_iter()
            .map(|v| {
                (0..self.vertices.len())
                    .filter(|&u| self.adjacent(v, u))
                    .collect()
            })
            .collect()
    }
}

/// Hierholzer's algorithm from vertex 0, always leaving by the least unused edge.
/// Returns `None` when some vertex has odd degree or the edges are disconnected.
pub(crate) fn hierholzer(adjacency: &[Vec<usize>]) -> Option<Vec<usize>> {
    if adjacency.iter().any(|nbrs| nbrs.len() % 2 == 1) {
        return None;
    }
    let mut edge_ids: Vec<Vec<(usize, usize)>> = vec![Vec::new(); adjacency.len()];
    let mut edges = 0;
    for (v, nbrs) in adjacency.iter().enumerate() {
        for &u in nbrs {
            if v < u {
                edge_ids[v].push((u, edges));
                edge_ids[u].push((v, edges));
                edges += 1;
            }
        }
    }
    for list in &mut edge_ids {
        list.sort_unstable();
    }
    if edges == 0 {
        return Some(vec![0]);
    }
    let mut used = vec![false; edges];
    let mut cursor = vec![0usize; adjacency.len()];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(edges + 1);
    while let Some(&v) = stack.last() {
        while cursor[v] < edge_ids[v].len() && used[edge_ids[v][cursor[v]].1] {
            cursor[v] += 1;
        }
        if cursor[v] == edge_ids[v].len() {
            circuit.push(v);
            stack.pop();
        } else {
            let (u, e) = edge_ids[v][cursor[v]];
            used[e] = true;
            stack.push(u);
        }
    }
    circuit.reverse();
    (circuit.len() == edges + 1).then_some(circuit)
}

pub fn euler_verdict(spec: GroupSpec, mode: EulerMode, caps: &Caps) -> Result<EulerVerdict> {
    let predicted_eulerian = eulerian_predicate(spec.n)?;
    let mut verdict = EulerVerdict {
        spec,
        predicted_eulerian,
        empirical: None,
        circuit: None,
    };
    if mode == EulerMode::PredicateOnly {
        return Ok(verdict);
    }
    let cap = |what_cap: &'static str, limit: usize| Error::CapExceeded {
        what: "n",
        value: spec.n as u128,
        cap: what_cap,
        limit: limit as u128,
        hint: Some("use predicate_only mode"),
    };
    if spec.n > caps.connectivity_cap {
        return Err(cap("connectivity_cap", caps.connectivity_cap));
    }
    if mode == EulerMode::WithCircuit && spec.n > caps.circuit_cap {
        return Err(cap("circuit_cap", caps.circuit_cap));
    }
    let table = degree_table(spec, caps)?;
    let vertices = VertexSet::new(spec, caps)?;
    let components = vertices.components();
    let isolated_vertices = components
        .iter()
        .filter(|c| c.len() == 1 && table.degree_of(&vertices.vertices[c[0]]) == Some(0))
        .map(|c| vertices.vertices[c[0]])
        .collect();
    verdict.empirical = Some(EmpiricalEuler {
        connected: components.len() == 1,
        all_even: table.all_even(),
        odd_witness: table.odd_rows().next().map(|r| r.representative),
        component_count: components.len(),
        isolated_vertices,
        edge_count: table.edge_count(),
    });
    if mode == EulerMode::WithCircuit && predicted_eulerian {
        let adjacency = vertices.adjacency();
        verdict.circuit = hierholzer(&adjacency)
            .map(|walk| walk.into_iter().map(|i| vertices.vertices[i]).collect());
    }
    Ok(verdict)
}

/// Every edge of the generating graph as an ordered pair `(a, b)` with `a < b`,
/// by testing all pairs.
pub fn generating_graph_edges(
    spec: GroupSpec,
    caps: &Caps,
) -> Result<Vec<(Permutation, Permutation)>> {
    let vertices = VertexSet::new(spec, caps)?;
    let n = vertices.vertices.len();
    Ok((0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let vertices = &vertices;
            (a + 1..n)
                .filter(move |&b| vertices.adjacent(a, b))
                .map(move |b| (vertices.vertices[a], vertices.vertices[b]))
        })
        .collect())
}

/// Whether a closed walk uses every edge of `edges` exactly once.
pub fn circuit_covers_edges(circuit: &[Permutation], edges: &[(Permutation, Permutation)]) -> bool {
    if circuit.first() != circuit.last() {
        return false;
    }
    let mut walked: Vec<(Permutation, Permutation)> = circuit
        .windows(2)
        .map(|w| {
            if w[0] < w[1] {
                (w[0], w[1])
            } else {
                (w[1], w[0])
            }
        })
        .collect();
    let mut expected = edges.to_vec();
    walked.sort_unstable();
    expected.sort_unstable();
    walked == expected
}

/// The odd-degree probability, with the odd-vertex count from the degree
/// table when the group is enumerable.
pub fn probability_report(spec: GroupSpec, caps: &Caps) -> Result<ProbabilityReport> {
    let mut report = odd_degree_probability(spec)?;
    if spec.n <= caps.enumeration_cap {
        report.odd_vertex_count = Some(degree_table(spec, caps)?.odd_vertex_count());
    }
    Ok(report)
}

/// `|C_{Aut(G)}(g)|` with `Aut(G)` realized as conjugation by `Sym_n`.
///
/// The action has kernel `C_{Sym_n}(G)`, which is trivial except for the
/// abelian `Alt_3`. For `n = 6` conjugation misses the outer automorphisms.
pub fn automorphism_centralizer_order(spec: GroupSpec, g: &Permutation) -> Result<u128> {
    spec.check_member(g)?;
    if spec.n == 6 {
        return Err(Error::Unsupported(
            "Aut(Alt_6) and Aut(Sym_6) are larger than conjugation by Sym_6".into(),
        ));
    }
    let kernel = if spec.family == Family::Alt && spec.n == 3 {
        3
    } else {
        1
    };
    Ok(sym_centralizer_order(&g.cycle_shape()) / kernel)
}
