//! Overgroup lattices of cyclic subgroups, the Möbius function on them and
//! the divisibility law `|N_G(H):H|  |  m(H)·μ_G(H)`.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::chain::StabChain;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::{
    block_system, enumerate_elements, normalizes, BlockClassification, Family, GroupSpec,
};
use crate::numtheory::{factorial, square_free_part};
use crate::perm::Permutation;

/// Membership over `Sym_n`, indexed by rank.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn new(len: usize) -> Bitset {
        Bitset(vec![0; len.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns whether the bit was newly set.
    fn set(&mut self, i: usize) -> bool {
        let word = &mut self.0[i / 64];
        let mask = 1 << (i % 64);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

/// FNV-1a over the sorted ranks of the elements.
fn fingerprint(members: &Bitset) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for rank in members.ones() {
        for byte in (rank as u64).to_le_bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{hash:016x}")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeNode {
    pub generators: Vec<Permutation>,
    pub order: u128,
    pub fingerprint: String,
    pub mobius: i64,
    pub transitive: bool,
    pub primitive: bool,
    pub structure_hint: String,
}

/// Subgroups `H` with `g ∈ H ≤ G`, ordered by increasing order. Node 0 is
/// `⟨g⟩`, the last node is `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupLattice {
    pub spec: GroupSpec,
    pub base_generator: Permutation,
    pub nodes: Vec<LatticeNode>,
    /// Hasse diagram as `(lower, upper)` index pairs.
    pub edges: Vec<(usize, usize)>,
    /// Set once every overgroup has been found.
    pub saturated: bool,
}

struct Subgroup {
    gens: Vec<Permutation>,
    order: u128,
    members: Bitset,
}

impl Subgroup {
    fn generated_by(n: usize, gens: Vec<Permutation>) -> Subgroup {
        let chain = StabChain::new(n, &gens);
        let mut members = Bitset::new(factorial(n) as usize);
        for x in chain.elements() {
            members.set(x.rank());
        }
        Subgroup {
            gens,
            order: chain.order(),
            members,
        }
    }

    fn contains_all(&self, gens: &[Permutation]) -> bool {
        gens.iter().all(|x| self.members.get(x.rank()))
    }
}

/// Finds every overgroup of `⟨g⟩` by saturation: from each subgroup `H`
/// found so far, adjoin one element `x` per double coset `HxH` outside `H`
/// (as `⟨H, x⟩ = ⟨H, h·x·h'⟩`) and keep the closures not seen before.
pub fn overgroup_lattice(spec: GroupSpec, g: &Permutation, caps: &Caps) -> Result<SubgroupLattice> {
    spec.check_nontrivial_member(g)?;
    if spec.order() > caps.lattice_cap {
        return Err(Error::CapExceeded {
            what: "group order",
            value: spec.order(),
            cap: "lattice_cap",
            limit: caps.lattice_cap,
            hint: Some("raise lattice_cap, or use a symbolic lattice"),
        });
    }
    let n = spec.n;
    let elements: Vec<Permutation> = enumerate_elements(spec, caps)?.collect();
    let mut found = vec![Subgroup::generated_by(n, vec![*g])];
    let mut by_order: HashMap<u128, Vec<usize>> = HashMap::from([(found[0].order, vec![0])]);
    let mut next = 0;
    while next < found.len() {
        let mut done = found[next].members.clone();
        let h_gens = found[next].gens.clone();
        for x in &elements {
            if done.get(x.rank()) {
                continue;
            }
            mark_double_coset(&mut done, x, &h_gens);
            let mut gens = h_gens.clone();
            gens.push(*x);
            let order = StabChain::new(n, &gens).order();
            let known = by_order
                .get(&order)
                .is_some_and(|ids| ids.iter().any(|&i| found[i].contains_all(&gens)));
            if !known {
                let sub = Subgroup::generated_by(n, gens);
                by_order.entry(order).or_default().push(found.len());
                found.push(sub);
            }
        }
        next += 1;
    }
    found.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| a.members.cmp(&b.members))
    });

    let count = found.len();
    let above = |lower: usize, upper: usize| {
        lower != upper
            && found[upper].order > found[lower].order
            && found[upper].contains_all(&found[lower].gens)
    };
    let mut edges = Vec::new();
    for lower in 0..count {
        for upper in lower + 1..count {
            if above(lower, upper)
                && !(lower + 1..upper).any(|mid| above(lower, mid) && above(mid, upper))
            {
                edges.push((lower, upper));
            }
        }
    }
    let nodes = found
        .iter()
        .enumerate()
        .map(|(i, sub)| {
            let blocks = block_system(&sub.gens, n)?;
            Ok(LatticeNode {
                structure_hint: structure_hint(spec, g, i == 0, sub, &blocks),
                generators: sub.gens.clone(),
                order: sub.order,
                fingerprint: fingerprint(&sub.members),
                mobius: 0,
                transitive: blocks.is_transitive(),
                primitive: blocks.is_primitive(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    mobius_values(SubgroupLattice {
        spec,
        base_generator: *g,
        nodes,
        edges,
        saturated: true,
    })
}

fn mark_double_coset(done: &mut Bitset, x: &Permutation, h_gens: &[Permutation]) {
    let mut stack = vec![*x];
    done.set(x.rank());
    while let Some(y) = stack.pop() {
        for s in h_gens {
            for z in [s.then(&y), y.then(s)] {
                if done.set(z.rank()) {
                    stack.push(z);
                }
            }
        }
    }
}

/// Informational name from order, orbit structure and primitivity.
fn structure_hint(
    spec: GroupSpec,
    g: &Permutation,
    is_base: bool,
    sub: &Subgroup,
    blocks: &BlockClassification,
) -> String {
    let n = spec.n;
    let order = sub.order;
    let all_even = sub.gens.iter().all(|x| x.is_even());
    if order == factorial(n) {
        return format!("Sym_{n}");
    }
    if order == factorial(n) / 2 && all_even {
        return format!("Alt_{n}");
    }
    if is_base {
        return format!("C_{}", g.order());
    }
    match blocks {
        BlockClassification::Intransitive { orbits } => {
            let sizes: Vec<String> = orbits.iter().map(|o| o.len().to_string()).collect();
            let moved: Vec<&Vec<usize>> = orbits.iter().filter(|o| o.len() > 1).collect();
            if let [orbit] = moved.as_slice() {
                let k = orbit.len();
                if order == factorial(k) {
                    return format!("Sym_{k}");
                }
                if order == factorial(k) / 2 {
                    return format!("Alt_{k}");
                }
            }
            format!("intransitive, orbits {}", sizes.join("+"))
        }
        BlockClassification::Imprimitive { blocks } => {
            format!(
                "imprimitive, {} blocks of size {}",
                blocks.len(),
                blocks[0].len()
            )
        }
        BlockClassification::Primitive => {
            let p = n as u128;
            if crate::numtheory::is_prime(n as u64)
                && order.is_multiple_of(p)
                && (p - 1).is_multiple_of(order / p)
            {
                let d = order / p;
                return if d == p - 1 {
                    format!("AGL1({n})")
                } else {
                    format!("{n}:{d}")
                };
            }
            match (n, order) {
                (7, 168) | (8, 168) => "PSL2(7)-like".into(),
                (8, 336) => "PGL2(7)-like".into(),
                (8, 1344) => "AGL3(2)-like".into(),
                (8, 56) => "AGL1(8)-like".into(),
                (6, 60) => "PSL2(5)-like".into(),
                (6, 120) => "PGL2(5)-like".into(),
                (5, 20) => "AGL1(5)".into(),
                _ => format!("primitive of order {order}"),
            }
        }
    }
}

impl SubgroupLattice {
    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `strict_above[i]`: nodes strictly containing node `i`, from the Hasse edges.
    pub fn strictly_above(&self) -> Vec<Vec<usize>> {
        let count = self.nodes.len();
        let mut covers = vec![Vec::new(); count];
        for &(lower, upper) in &self.edges {
            covers[lower].push(upper);
        }
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); count];
        for i in (0..count).rev() {
            let mut set = vec![false; count];
            for &u in &covers[i] {
                set[u] = true;
                for &w in &above[u] {
                    set[w] = true;
                }
            }
            above[i] = (0..count).filter(|&j| set[j]).collect();
        }
        above
    }

    /// `Σ_{K ⊇ H} μ(K) − [H = G]` for every node; all zero for a correct μ.
    pub fn defining_sum_residuals(&self) -> Vec<i64> {
        let above = self.strictly_above();
        (0..self.nodes.len())
            .map(|i| {
                let sum: i64 = self.nodes[i].mobius
                    + above[i].iter().map(|&k| self.nodes[k].mobius).sum::<i64>();
                sum - i64::from(i == self.top())
            })
            .collect()
    }

    /// `Σ μ(H)·|H|`.
    pub fn mobius_sum(&self) -> i128 {
        self.nodes
            .iter()
            .map(|node| node.mobius as i128 * node.order as i128)
            .sum()
    }

    /// Nodes covered by the top.
    pub fn maximal_nodes(&self) -> Vec<usize> {
        let top = self.top();
        self.edges
            .iter()
            .filter(|&&(_, u)| u == top)
            .map(|&(l, _)| l)
            .collect()
    }

    /// Proper nodes with `μ ≠ 0` that are not the intersection of the maximal
    /// nodes containing them. Empty whenever μ is correct.
    pub fn intersection_of_maximals_violations(&self, caps: &Caps) -> Result<Vec<usize>> {
        let n = self.spec.n;
        let above = self.strictly_above();
        let maximal = self.maximal_nodes();
        let chains: Vec<StabChain> = self
            .nodes
            .iter()
            .map(|node| StabChain::new(n, &node.generators))
            .collect();
        let elements: Vec<Permutation> = enumerate_elements(self.spec, caps)?.collect();
        let mut violations = Vec::new();
        for i in 0..self.top() {
            if self.nodes[i].mobius == 0 {
                continue;
            }
            let containing: Vec<usize> = maximal
                .iter()
                .copied()
                .filter(|m| *m == i || above[i].contains(m))
                .collect();
            let intersection = elements
                .iter()
                .filter(|x| containing.iter().all(|&m| chains[m].contains(x)))
                .count() as u128;
            if intersection != self.nodes[i].order {
                violations.push(i);
            }
        }
        Ok(violations)
    }

    /// Whether `μ` agrees on nodes conjugate in `G`: for every node `H` and
    /// `s ∈ G` with `g ∈ H^s`, the node equal to `H^s` has the same μ.
    pub fn conjugation_invariant(&self, caps: &Caps) -> Result<bool> {
        let n = self.spec.n;
        let chains: Vec<StabChain> = self
            .nodes
            .iter()
            .map(|node| StabChain::new(n, &node.generators))
            .collect();
        let g = self.base_generator;
        for s in enumerate_elements(self.spec, caps)? {
            let s_inv = s.inverse();
            // g ∈ H^s  ⇔  s·g·s⁻¹ ∈ H
            let pulled = g.conjugate_by(&s_inv);
            for (i, node) in self.nodes.iter().enumerate() {
                if !chains[i].contains(&pulled) {
                    continue;
                }
                let conjugated: Vec<Permutation> =
                    node.generators.iter().map(|h| h.conjugate_by(&s)).collect();
                let image = (0..self.nodes.len()).find(|&j| {
                    self.nodes[j].order == node.order
                        && conjugated.iter().all(|x| chains[j].contains(x))
                });
                match image {
                    Some(j) if self.nodes[j].mobius == node.mobius => {}
                    _ => return Ok(false),
                }
            }
        }
        Ok(true)
    }

    /// Graphviz rendering of the Hasse diagram, larger subgroups on top.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph overgroups {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=box];").unwrap();
        for (i, node) in self.nodes.iter().enumerate() {
            writeln!(
                out,
                "  n{i} [label=\"{}\\n|H| = {}\\nμ = {}\"];",
                node.structure_hint, node.order, node.mobius
            )
            .unwrap();
        }
        for &(lower, upper) in &self.edges {
            writeln!(out, "  n{lower} -> n{upper} [dir=none];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for SubgroupLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "overgroups of ⟨{}⟩ in {}: {} nodes",
            self.base_generator,
            self.spec,
            self.nodes.len()
        )?;
        for (i, node) in self.nodes.iter().enumerate() {
            writeln!(
                f,
                "  [{i}] {:<28} order {:>8}  μ = {:>3}",
                node.structure_hint, node.order, node.mobius
            )?;
        }
        write!(f, "  Σ μ(H)|H| = {}", self.mobius_sum())
    }
}

/// Fills `mobius` top-down from the Hasse edges: `μ(G) = 1` and
/// `μ(H) = −Σ_{K ⊋ H} μ(K)`.
pub fn mobius_values(mut lattice: SubgroupLattice) -> Result<SubgroupLattice> {
    if !lattice.saturated {
        return Err(Error::input("the lattice is not saturated"));
    }
    if lattice.nodes.is_empty() || lattice.nodes[lattice.top()].order != lattice.spec.order() {
        return Err(Error::input("the lattice has no top node"));
    }
    let above = lattice.strictly_above();
    for i in (0..lattice.nodes.len()).rev() {
        let sum: i64 = above[i].iter().map(|&k| lattice.nodes[k].mobius).sum();
        lattice.nodes[i].mobius = if i == lattice.top() { 1 } else { -sum };
    }
    Ok(lattice)
}

/// `δ(g) = Σ_{H ∋ g} μ_G(H)·|H|`.
///
/// The sum counts every `x ∈ G` with `⟨g, x⟩ = G`. When `G = ⟨g⟩` (only
/// `Alt_3`) that includes `x = 1` and `x = g`, which are not neighbors of `g`
/// in Γ(G), so they are subtracted.
pub fn degree_via_mobius(spec: GroupSpec, g: &Permutation, caps: &Caps) -> Result<i128> {
    let lattice = overgroup_lattice(spec, g, caps)?;
    let non_edges = if lattice.nodes.len() == 1 { 2 } else { 0 };
    Ok(lattice.mobius_sum() - non_edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HioCheck {
    pub node: usize,
    /// `|N_G(H) : H|`.
    pub normalizer_index: u128,
    /// Square-free part of `|G : G′H|`.
    pub m: u128,
    pub mobius: i64,
    pub holds: bool,
}

/// Checks `|N_G(H):H|  |  m(H)·μ_G(H)` for one node, scanning `G` for the normalizer.
pub fn hio_divisibility(lattice: &SubgroupLattice, node: usize, caps: &Caps) -> Result<HioCheck> {
    let spec = lattice.spec;
    let entry = lattice
        .nodes
        .get(node)
        .ok_or_else(|| Error::input(format!("no node {node} in the lattice")))?;
    if spec.n > caps.scan_cap {
        return Err(Error::CapExceeded {
            what: "n",
            value: spec.n as u128,
            cap: "scan_cap",
            limit: caps.scan_cap as u128,
            hint: None,
        });
    }
    let n = spec.n;
    let chain = StabChain::new(n, &entry.generators);
    let normalizer = enumerate_elements(spec, caps)?
        .filter(|s| normalizes(s, &entry.generators, |x| chain.contains(x)))
        .count() as u128;
    let mut product_gens = spec.derived_subgroup_generators();
    product_gens.extend_from_slice(&entry.generators);
    let product = StabChain::new(n, &product_gens).order();
    let m = square_free_part(spec.order() / product);
    let normalizer_index = normalizer / entry.order;
    let holds = (m as i128 * entry.mobius as i128) % normalizer_index as i128 == 0;
    Ok(HioCheck {
        node,
        normalizer_index,
        m,
        mobius: entry.mobius,
        holds,
    })
}

/// A lattice read off a drawing rather than computed: orders and μ values
/// are as drawn and only the arithmetic on them is checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicLattice {
    pub label: String,
    pub group: String,
    pub base_order: u64,
    /// Nodes with nonzero μ; the first is the whole group.
    pub nodes: Vec<SymbolicNode>,
    /// `(lower, upper)` cover pairs as drawn.
    pub edges: Vec<(usize, usize)>,
    pub symbolic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicNode {
    pub name: String,
    pub order: u128,
    pub mobius: i64,
}

impl SymbolicLattice {
    fn build(
        label: &str,
        group: &str,
        base_order: u64,
        nodes: &[(&str, u128, i64)],
        edges: &[(usize, usize)],
    ) -> Self {
        SymbolicLattice {
            label: label.into(),
            group: group.into(),
            base_order,
            nodes: nodes
                .iter()
                .map(|&(name, order, mobius)| SymbolicNode {
                    name: name.into(),
                    order,
                    mobius,
                })
                .collect(),
            edges: edges.to_vec(),
            symbolic: true,
        }
    }

    fn strictly_above(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![i];
        while let Some(v) = stack.pop() {
            for &(lower, upper) in &self.edges {
                if lower == v && !seen[upper] {
                    seen[upper] = true;
                    stack.push(upper);
                }
            }
        }
        (0..self.nodes.len()).filter(|&j| seen[j]).collect()
    }

    /// μ recomputed from the drawn inclusions. Zero-μ subgroups omitted from
    /// the drawing contribute nothing, so this must reproduce the drawn values.
    pub fn recomputed_mobius(&self) -> Vec<i64> {
        let mut mu = vec![0i64; self.nodes.len()];
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.nodes[i].order));
        for i in order {
            let above = self.strictly_above(i);
            mu[i] = if above.is_empty() {
                1
            } else {
                -above.iter().map(|&k| mu[k]).sum::<i64>()
            };
        }
        mu
    }

    pub fn mobius_consistent(&self) -> bool {
        self.recomputed_mobius() == self.nodes.iter().map(|n| n.mobius).collect::<Vec<_>>()
    }

    /// `Σ μ(H)|H|` over the drawn nodes.
    pub fn degree(&self) -> i128 {
        self.nodes
            .iter()
            .map(|n| n.mobius as i128 * n.order as i128)
            .sum()
    }

    pub fn degree_is_odd(&self) -> bool {
        self.degree().rem_euclid(2) == 1
    }
}

impl fmt::Display for SymbolicLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (symbolic, as drawn)", self.label)?;
        for node in &self.nodes {
            writeln!(
                f,
                "  {:<16} order {:>26}  μ = {:>3}",
                node.name, node.order, node.mobius
            )?;
        }
        write!(f, "  Σ μ(H)|H| = {}", self.degree())
    }
}

/// The drawn lattices of nonzero-μ overgroups of an element of order `p`.
///
/// Known names: `alt7`, `alt11`, `alt12`, `alt23`, `alt24`, `sym-p` and
/// `sym-p-plus-1` (the last two take `p ≡ 3 (mod 4)`, `p ≥ 7`).
pub fn symbolic_lattice(name: &str, p: Option<u64>) -> Result<SymbolicLattice> {
    let half = |n: usize| factorial(n) / 2;
    let diamond = |label: &str,
                   group: &str,
                   n: usize,
                   sub: &str,
                   sub_order: u128,
                   bottom: &str,
                   bottom_order: u128| {
        SymbolicLattice::build(
            label,
            group,
            n as u64,
            &[
                (group, half(n), 1),
                (&format!("{sub}_1"), sub_order, -1),
                (&format!("{sub}_2"), sub_order, -1),
                (bottom, bottom_order, 1),
            ],
            &[(1, 0), (2, 0), (3, 1), (3, 2)],
        )
    };
    let even_case = |label: &str,
                     group: &str,
                     n: usize,
                     point: &str,
                     m: &str,
                     m_order: u128,
                     psl: &str,
                     psl_order: u128,
                     bottom: &str,
                     bottom_order: u128| {
        SymbolicLattice::build(
            label,
            group,
            (n - 1) as u64,
            &[
                (group, half(n), 1),
                (point, half(n - 1), -1),
                (&format!("{m}_1"), m_order, -1),
                (&format!("{m}_2"), m_order, -1),
                (psl, psl_order, 1),
                (bottom, bottom_order, 1),
            ],
            &[(1, 0), (2, 0), (3, 0), (4, 2), (4, 3), (5, 1), (5, 4)],
        )
    };
    match name {
        "alt7" => Ok(diamond("overgroups of a 7-cycle in Alt_7", "Alt_7", 7, "PSL2(7)", 168, "7:3", 21)),
        "alt11" => Ok(diamond("overgroups of an 11-cycle in Alt_11", "Alt_11", 11, "M11", 7920, "11:5", 55)),
        "alt23" => Ok(diamond("overgroups of a 23-cycle in Alt_23", "Alt_23", 23, "M23", 10_200_960, "23:11", 253)),
        "alt12" => Ok(even_case(
            "overgroups of an 11-cycle in Alt_12",
            "Alt_12",
            12,
            "Alt_11",
            "M12",
            95_040,
            "PSL2(11)",
            660,
            "11:5",
            55,
        )),
        "alt24" => Ok(even_case(
            "overgroups of a 23-cycle in Alt_24",
            "Alt_24",
            24,
            "Alt_23",
            "M24",
            244_823_040,
            "PSL2(23)",
            6072,
            "23:11",
            253,
        )),
        "sym-p" | "sym-p-plus-1" => {
            let p = p.ok_or_else(|| Error::input("a prime p is required"))?;
            if !(p >= 7 && p % 4 == 3 && crate::numtheory::is_prime(p)) || p > 31 {
                return Err(Error::input(format!("p must be a prime ≡ 3 (mod 4) in 7..=31, got {p}")));
            }
            let q = p as u128;
            let pu = p as usize;
            let metacyclic = format!("{p}:{}", (p - 1) / 2);
            if name == "sym-p" {
                Ok(SymbolicLattice::build(
                    &format!("overgroups of a {p}-cycle in Sym_{p}"),
                    &format!("Sym_{p}"),
                    p,
                    &[
                        (&format!("Sym_{p}"), factorial(pu), 1),
                        (&format!("Alt_{p}"), half(pu), -1),
                        (&format!("AGL1({p})"), q * (q - 1), -1),
                        (&metacyclic, q * (q - 1) / 2, 1),
                    ],
                    &[(1, 0), (2, 0), (3, 1), (3, 2)],
                ))
            } else {
                let n = pu + 1;
                Ok(SymbolicLattice::build(
                    &format!("overgroups of a {p}-cycle in Sym_{n}"),
                    &format!("Sym_{n}"),
                    p,
                    &[
                        (&format!("Sym_{n}"), factorial(n), 1),
                        (&format!("Alt_{n}"), half(n), -1),
                        (&format!("PGL2({p})"), q * (q * q - 1), -1),
                        (&format!("Sym_{p}"), factorial(pu), -1),
                        (&format!("PSL2({p})"), q * (q * q - 1) / 2, 1),
                        (&format!("Alt_{p}"), half(pu), 1),
                        (&format!("AGL1({p})"), q * (q - 1), 1),
                        (&metacyclic, q * (q - 1) / 2, -1),
                    ],
                    &[(1, 0), (2, 0), (3, 0), (4, 1), (4, 2), (5, 1), (5, 3), (6, 3), (6, 2), (7, 4), (7, 5), (7, 6)],
                ))
            }
        }
        other => Err(Error::input(format!(
            "unknown symbolic lattice {other:?}; expected alt7, alt11, alt12, alt23, alt24, sym-p or sym-p-plus-1"
        ))),
    }
}

/// Whether the family admits a symbolic lattice for `n`.
pub fn symbolic_lattice_for(family: Family, n: usize) -> Option<(&'static str, Option<u64>)> {
    match (family, n) {
        (Family::Alt, 7) => Some(("alt7", None)),
        (Family::Alt, 11) => Some(("alt11", None)),
        (Family::Alt, 12) => Some(("alt12", None)),
        (Family::Alt, 23) => Some(("alt23", None)),
        (Family::Alt, 24) => Some(("alt24", None)),
        (Family::Sym, _) => {
            let p = crate::numtheory::odd_degree_prime(n)?;
            if p < 7 {
                None
            } else if p as usize == n {
                Some(("sym-p", Some(p)))
            } else {
                Some(("sym-p-plus-1", Some(p)))
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degree;
    use crate::group::conjugacy_classes;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    fn summary(lattice: &SubgroupLattice) -> Vec<(u128, i64)> {
        lattice.nodes.iter().map(|n| (n.order, n.mobius)).collect()
    }

    #[test]
    fn alt7_seven_cycle() {
        let spec = GroupSpec::alt(7).unwrap();
        let lattice = overgroup_lattice(spec, &p("(1 2 3 4 5 6 7)", 7), &caps()).unwrap();
        assert_eq!(
            summary(&lattice),
            vec![(7, 0), (21, 1), (168, -1), (168, -1), (2520, 1)]
        );
        assert_ne!(lattice.nodes[2].fingerprint, lattice.nodes[3].fingerprint);
        assert_eq!(lattice.mobius_sum(), 2205);
        assert_eq!(lattice.nodes[1].structure_hint, "7:3");
        assert_eq!(lattice.nodes[2].structure_hint, "PSL2(7)-like");
    }

    #[test]
    fn sym7_seven_cycle() {
        let spec = GroupSpec::sym(7).unwrap();
        let lattice = overgroup_lattice(spec, &p("(1 2 3 4 5 6 7)", 7), &caps()).unwrap();
        let orders: Vec<u128> = lattice.nodes.iter().map(|n| n.order).collect();
        assert_eq!(orders, vec![7, 14, 21, 42, 168, 168, 2520, 5040]);
        let mu = |order: u128| {
            lattice
                .nodes
                .iter()
                .find(|n| n.order == order)
                .unwrap()
                .mobius
        };
        assert_eq!(
            (mu(5040), mu(2520), mu(42), mu(21), mu(168), mu(14), mu(7)),
            (1, -1, -1, 1, 0, 0, 0)
        );
        assert_eq!(lattice.mobius_sum(), 2499);
    }

    #[test]
    fn small_examples() {
        let sym3 = GroupSpec::sym(3).unwrap();
        let lattice = overgroup_lattice(sym3, &p("(1 2 3)", 3), &caps()).unwrap();
        assert_eq!(summary(&lattice), vec![(3, -1), (6, 1)]);
        assert_eq!(lattice.mobius_sum(), 3);

        let sym5 = GroupSpec::sym(5).unwrap();
        let lattice = overgroup_lattice(sym5, &p("(1 2 3 4 5)", 5), &caps()).unwrap();
        assert!(lattice
            .nodes
            .iter()
            .any(|n| n.order == 20 && n.structure_hint == "AGL1(5)"));
        assert!(lattice
            .nodes
            .iter()
            .any(|n| n.order == 60 && n.structure_hint == "Alt_5"));
    }

    #[test]
    fn cyclic_alt3() {
        let spec = GroupSpec::alt(3).unwrap();
        let g = p("(1 2 3)", 3);
        let lattice = overgroup_lattice(spec, &g, &caps()).unwrap();
        assert_eq!(summary(&lattice), vec![(3, 1)]);
        assert_eq!(lattice.mobius_sum(), 3);
        assert_eq!(degree_via_mobius(spec, &g, &caps()).unwrap(), 1);
    }

    #[test]
    fn cap_and_member_errors() {
        let sym8 = GroupSpec::sym(8).unwrap();
        assert!(matches!(
            overgroup_lattice(sym8, &p("(1 2)", 8), &caps()),
            Err(Error::CapExceeded {
                cap: "lattice_cap",
                ..
            })
        ));
        let alt5 = GroupSpec::alt(5).unwrap();
        assert!(overgroup_lattice(alt5, &Permutation::identity(5), &caps()).is_err());
        assert!(overgroup_lattice(alt5, &p("(1 2)", 5), &caps()).is_err());
    }

    #[test]
    fn unsaturated_lattice_is_rejected() {
        let spec = GroupSpec::alt(5).unwrap();
        let mut lattice = overgroup_lattice(spec, &p("(1 2 3)", 5), &caps()).unwrap();
        lattice.saturated = false;
        assert!(mobius_values(lattice).is_err());
    }

    #[test]
    fn mobius_sum_matches_degree_and_laws_hold() {
        for n in 3..=6 {
            for spec in [GroupSpec::alt(n).unwrap(), GroupSpec::sym(n).unwrap()] {
                for class in conjugacy_classes(spec, &caps()).unwrap() {
                    let g = class.representative;
                    if g.is_identity() {
                        continue;
                    }
                    let lattice = overgroup_lattice(spec, &g, &caps()).unwrap();
                    assert_eq!(
                        degree_via_mobius(spec, &g, &caps()).unwrap(),
                        degree(spec, &g, &caps()).unwrap() as i128,
                        "{spec} {g}"
                    );
                    assert!(lattice.defining_sum_residuals().iter().all(|&r| r == 0));
                    assert!(lattice
                        .intersection_of_maximals_violations(&caps())
                        .unwrap()
                        .is_empty());
                    for i in 0..lattice.nodes.len() {
                        assert!(
                            hio_divisibility(&lattice, i, &caps()).unwrap().holds,
                            "{spec} {g} node {i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_invariance() {
        let spec = GroupSpec::sym(5).unwrap();
        let lattice = overgroup_lattice(spec, &p("(1 2)(3 4)", 5), &caps()).unwrap();
        assert!(lattice.conjugation_invariant(&caps()).unwrap());
    }

    #[test]
    fn hio_examples() {
        let alt7 = GroupSpec::alt(7).unwrap();
        let lattice = overgroup_lattice(alt7, &p("(1 2 3 4 5 6 7)", 7), &caps()).unwrap();
        let bottom = hio_divisibility(&lattice, 0, &caps()).unwrap();
        assert!(bottom.holds && bottom.mobius == 0);
        let metacyclic = hio_divisibility(&lattice, 1, &caps()).unwrap();
        assert_eq!(metacyclic.normalizer_index, 1);
        assert!(metacyclic.holds);

        let sym5 = GroupSpec::sym(5).unwrap();
        let lattice = overgroup_lattice(sym5, &p("(1 2 3 4 5)", 5), &caps()).unwrap();
        let alt = lattice.nodes.iter().position(|n| n.order == 60).unwrap();
        let check = hio_divisibility(&lattice, alt, &caps()).unwrap();
        assert_eq!(
            (check.normalizer_index, check.m, check.mobius, check.holds),
            (2, 2, -1, true)
        );
    }

    #[test]
    fn dot_and_json_exports() {
        let spec = GroupSpec::sym(3).unwrap();
        let lattice = overgroup_lattice(spec, &p("(1 2 3)", 3), &caps()).unwrap();
        let dot = lattice.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("n0 -> n1"));
        let json = serde_json::to_string(&lattice).unwrap();
        let back: SubgroupLattice = serde_json::from_str(&json).unwrap();
        assert_eq!(back, lattice);
        assert_eq!(mobius_values(back).unwrap(), lattice);
    }

    #[test]
    fn symbolic_lattices_are_consistent() {
        for name in ["alt7", "alt11", "alt12", "alt23", "alt24"] {
            let lattice = symbolic_lattice(name, None).unwrap();
            assert!(lattice.mobius_consistent(), "{name}");
            assert!(lattice.degree_is_odd(), "{name}");
        }
        assert_eq!(symbolic_lattice("alt7", None).unwrap().degree(), 2205);
        for p in [7, 11, 19, 23] {
            let q = p as i128;
            let sym_p = symbolic_lattice("sym-p", Some(p)).unwrap();
            assert!(sym_p.mobius_consistent());
            assert_eq!(
                sym_p.degree(),
                factorial(p as usize) as i128 / 2 - q * (q - 1) / 2
            );
            assert!(sym_p.degree_is_odd());
            let sym_p1 = symbolic_lattice("sym-p-plus-1", Some(p)).unwrap();
            assert!(sym_p1.mobius_consistent());
            assert_eq!(
                sym_p1.degree(),
                factorial(p as usize) as i128 / 2 * q - q * q * (q - 1) / 2
            );
            assert!(sym_p1.degree_is_odd());
        }
        assert!(symbolic_lattice("sym-p", Some(5)).is_err());
        assert!(symbolic_lattice("alt9", None).is_err());
    }

    #[test]
    fn symbolic_sym8_matches_brute_force() {
        let spec = GroupSpec::sym(8).unwrap();
        let g = p("(1 2 3 4 5 6 7)", 8);
        let symbolic = symbolic_lattice("sym-p-plus-1", Some(7)).unwrap();
        assert_eq!(symbolic.degree(), 17493);
        assert_eq!(degree(spec, &g, &caps()).unwrap(), 17493);
    }
}
