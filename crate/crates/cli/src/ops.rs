use std::fmt::Write as _;

use gengraph::graph::{self, DegreeReport, EulerMode, EulerVerdict};
use gengraph::group::{normalizer_by_scan, normalizer_constructive, NormalizerReport};
use gengraph::mobius::{overgroup_lattice, SubgroupLattice, SymbolicLattice};
use gengraph::numtheory::{
    decompositions, is_sym3_exception, DecompositionCertificate, ProbabilityReport,
};
use gengraph::verify::FactLedger;
use gengraph::{Caps, CycleShape, Error, Family, GroupSpec, Parity, Permutation, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum NormalizerChoice {
    /// Scan when n ≤ scan_cap, otherwise constructive.
    Auto,
    Scan,
    Constructive,
}

/// A cacheable computation with its canonical input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Request {
    Degrees {
        spec: GroupSpec,
    },
    Degree {
        spec: GroupSpec,
        element: Permutation,
    },
    Euler {
        spec: GroupSpec,
        mode: EulerMode,
    },
    Mobius {
        spec: GroupSpec,
        element: Permutation,
    },
    Lattice {
        spec: GroupSpec,
        element: Permutation,
    },
    Normalizer {
        spec: GroupSpec,
        element: Permutation,
        method: NormalizerChoice,
    },
    Prob {
        spec: GroupSpec,
    },
}

impl Request {
    pub fn op(&self) -> &'static str {
        match self {
            Request::Degrees { .. } => "degrees",
            Request::Degree { .. } => "degree",
            Request::Euler { .. } => "euler",
            Request::Mobius { .. } => "mobius",
            Request::Lattice { .. } => "lattice",
            Request::Normalizer { .. } => "normalizer",
            Request::Prob { .. } => "prob",
        }
    }

    pub fn compute(&self, caps: &Caps) -> Result<Output> {
        Ok(match *self {
            Request::Degrees { spec } => Output::Degrees(graph::degree_table(spec, caps)?),
            Request::Degree { spec, element } => {
                let degree = graph::degree(spec, &element, caps)?;
                Output::Degree(DegreeResult {
                    spec,
                    element,
                    shape: element.cycle_shape(),
                    element_order: element.order(),
                    degree,
                    parity: Parity::of(degree),
                    predicted_parity: graph::predicted_parity(spec, &element),
                })
            }
            Request::Euler { spec, mode } => Output::Euler(graph::euler_verdict(spec, mode, caps)?),
            Request::Mobius { spec, element } => {
                let lattice = overgroup_lattice(spec, &element, caps)?;
                let non_edges = if lattice.nodes.len() == 1 { 2 } else { 0 };
                Output::Mobius(MobiusResult {
                    spec,
                    element,
                    degree: lattice.mobius_sum() - non_edges,
                    terms: lattice
                        .nodes
                        .iter()
                        .filter(|node| node.mobius != 0)
                        .map(|node| MobiusTerm {
                            order: node.order,
                            mobius: node.mobius,
                            structure_hint: node.structure_hint.clone(),
                        })
                        .collect(),
                    overgroups: lattice.nodes.len(),
                })
            }
            Request::Lattice { spec, element } => {
                Output::Lattice(overgroup_lattice(spec, &element, caps)?)
            }
            Request::Normalizer {
                spec,
                element,
                method,
            } => Output::Normalizer(match method {
                NormalizerChoice::Auto => {
                    gengraph::group::normalizer_of_cyclic(spec, &element, caps)?
                }
                NormalizerChoice::Scan => {
                    spec.check_nontrivial_member(&element)?;
                    normalizer_by_scan(spec, &element, caps)?
                }
                NormalizerChoice::Constructive => normalizer_constructive(spec, &element)?,
            }),
            Request::Prob { spec } => Output::Prob(graph::probability_report(spec, caps)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeResult {
    pub spec: GroupSpec,
    pub element: Permutation,
    pub shape: CycleShape,
    pub element_order: u64,
    pub degree: u64,
    pub parity: Parity,
    pub predicted_parity: Parity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusTerm {
    pub order: u128,
    pub mobius: i64,
    pub structure_hint: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusResult {
    pub spec: GroupSpec,
    pub element: Permutation,
    pub degree: i128,
    /// Overgroups with nonzero μ.
    pub terms: Vec<MobiusTerm>,
    pub overgroups: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeResult {
    pub n: usize,
    pub family: Family,
    pub certificates: Vec<DecompositionCertificate>,
    /// `Sym_3` has odd-degree transpositions that no certificate predicts.
    pub sym3_exception: bool,
}

pub fn decompose(n: usize, family: Family) -> Result<DecomposeResult> {
    Ok(DecomposeResult {
        n,
        family,
        certificates: decompositions(n, family)?,
        sym3_exception: is_sym3_exception(n, family),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Output {
    Degrees(DegreeReport),
    Degree(DegreeResult),
    Euler(EulerVerdict),
    Mobius(MobiusResult),
    Lattice(SubgroupLattice),
    Normalizer(NormalizerReport),
    Prob(ProbabilityReport),
    Decompose(DecomposeResult),
    Symbolic(SymbolicLattice),
    Verify(FactLedger),
}

impl Output {
    /// The JSON body shown to users, without the enum tag.
    pub fn to_json(&self) -> String {
        let text = match self {
            Output::Degrees(v) => serde_json::to_string_pretty(v),
            Output::Degree(v) => serde_json::to_string_pretty(v),
            Output::Euler(v) => serde_json::to_string_pretty(v),
            Output::Mobius(v) => serde_json::to_string_pretty(v),
            Output::Lattice(v) => serde_json::to_string_pretty(v),
            Output::Normalizer(v) => serde_json::to_string_pretty(v),
            Output::Prob(v) => serde_json::to_string_pretty(v),
            Output::Decompose(v) => serde_json::to_string_pretty(v),
            Output::Symbolic(v) => serde_json::to_string_pretty(v),
            Output::Verify(v) => return v.to_json(),
        };
        text.expect("reports serialize")
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json() + "\n"),
            Format::Text => Ok(self.to_text()),
            Format::Csv => self.to_csv(),
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Output::Degree(d) => {
                let _ = writeln!(
                    out,
                    "δ({}) = {} in {} (shape {}, |g| = {}, {}, predicted {})",
                    d.element,
                    d.degree,
                    d.spec,
                    d.shape,
                    d.element_order,
                    d.parity,
                    d.predicted_parity
                );
            }
            Output::Mobius(m) => {
                let _ = writeln!(
                    out,
                    "δ({}) = Σ μ(H)·|H| = {} in {}",
                    m.element, m.degree, m.spec
                );
                for term in &m.terms {
                    let _ = writeln!(
                        out,
                        "  μ(H) = {:>3}  |H| = {:<8} {}",
                        term.mobius, term.order, term.structure_hint
                    );
                }
                let _ = writeln!(out, "  {} overgroups of <g>", m.overgroups);
            }
            Output::Decompose(d) => {
                if d.certificates.is_empty() {
                    let _ = writeln!(out, "{}_{}: no decomposition", d.family, d.n);
                }
                for cert in &d.certificates {
                    let _ = writeln!(out, "{cert}");
                }
                if d.sym3_exception {
                    let _ = writeln!(out, "Sym_3: the transpositions also have odd degree");
                }
            }
            Output::Verify(ledger) => out = ledger.to_markdown(),
            Output::Degrees(v) => out = format!("{v}"),
            Output::Euler(v) => out = format!("{v}"),
            Output::Lattice(v) => out = format!("{v}"),
            Output::Normalizer(v) => out = format!("{v}"),
            Output::Prob(v) => out = format!("{v}"),
            Output::Symbolic(v) => out = format!("{v}"),
        }
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }

    fn to_csv(&self) -> Result<String> {
        let rows: Vec<Vec<String>> = match self {
            Output::Degrees(report) => return Ok(report.to_csv()),
            Output::Verify(ledger) => return Ok(ledger.to_csv()),
            Output::Degree(d) => vec![
                vec!["element", "shape", "degree", "parity", "predicted_parity"]
                    .into_iter()
                    .map(String::from)
                    .collect(),
                vec![
                    d.element.to_string(),
                    d.shape.to_string(),
                    d.degree.to_string(),
                    d.parity.to_string(),
                    d.predicted_parity.to_string(),
                ],
            ],
            Output::Mobius(m) => {
                std::iter::once(vec!["order".into(), "mobius".into(), "structure".into()])
                    .chain(m.terms.iter().map(|t| {
                        vec![
                            t.order.to_string(),
                            t.mobius.to_string(),
                            t.structure_hint.clone(),
                        ]
                    }))
                    .collect()
            }
            Output::Lattice(l) => std::iter::once(
                [
                    "index",
                    "order",
                    "mobius",
                    "transitive",
                    "primitive",
                    "structure",
                    "fingerprint",
                ]
                .map(String::from)
                .to_vec(),
            )
            .chain(l.nodes.iter().enumerate().map(|(i, node)| {
                vec![
                    i.to_string(),
                    node.order.to_string(),
                    node.mobius.to_string(),
                    node.transitive.to_string(),
                    node.primitive.to_string(),
                    node.structure_hint.clone(),
                    node.fingerprint.clone(),
                ]
            }))
            .collect(),
            Output::Symbolic(l) => {
                std::iter::once(["name", "order", "mobius"].map(String::from).to_vec())
                    .chain(l.nodes.iter().map(|node| {
                        vec![
                            node.name.clone(),
                            node.order.to_string(),
                            node.mobius.to_string(),
                        ]
                    }))
                    .collect()
            }
            Output::Decompose(d) => {
                std::iter::once(["n", "p", "k", "sum", "shape"].map(String::from).to_vec())
                    .chain(d.certificates.iter().map(|c| {
                        vec![
                            c.n.to_string(),
                            c.p.to_string(),
                            c.k.to_string(),
                            c.render_sum(),
                            c.shape.to_string(),
                        ]
                    }))
                    .collect()
            }
            Output::Prob(p) => vec![
                [
                    "group",
                    "p",
                    "out_order",
                    "numerator",
                    "denominator",
                    "odd_vertex_count",
                ]
                .map(String::from)
                .to_vec(),
                vec![
                    p.spec.to_string(),
                    p.p.to_string(),
                    p.out_order.to_string(),
                    p.numerator.to_string(),
                    p.denominator.to_string(),
                    p.odd_vertex_count
                        .map(|c| c.to_string())
                        .unwrap_or_default(),
                ],
            ],
            Output::Normalizer(r) => vec![
                [
                    "element",
                    "m",
                    "centralizer_order",
                    "normalizer_order",
                    "automizer_order",
                    "index_loss",
                ]
                .map(String::from)
                .to_vec(),
                vec![
                    r.generator.to_string(),
                    r.m.to_string(),
                    r.centralizer_order.to_string(),
                    r.normalizer_order.to_string(),
                    r.automizer_order().to_string(),
                    r.index_loss.to_string(),
                ],
            ],
            Output::Euler(_) => {
                return Err(Error::Unsupported(
                    "csv output for euler; use json or text".into(),
                ))
            }
        };
        let mut writer = csv::Writer::from_writer(Vec::new());
        for row in rows {
            writer
                .write_record(&row)
                .map_err(|e| Error::Input(e.to_string()))?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::Input(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}
