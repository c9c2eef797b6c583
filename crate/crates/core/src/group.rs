//! `Alt_n` and `Sym_n` as computable groups: enumeration, generation tests,
//! conjugacy classes, normalizers of cyclic subgroups and block systems.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chain::StabChain;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, factorial, gcd, units_mod};
use crate::perm::{is_transitive, sym_centralizer_order, CycleShape, Permutation, MAX_DEGREE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Alt,
    Sym,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "alt" => Ok(Family::Alt),
            "sym" => Ok(Family::Sym),
            other => Err(Error::input(format!("unknown group family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Alt => "Alt",
            Family::Sym => "Sym",
        })
    }
}

/// The ambient group `Alt_n` or `Sym_n`, `n ≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
}

#[derive(Deserialize)]
struct RawSpec {
    family: Family,
    n: usize,
}

impl TryFrom<RawSpec> for GroupSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<GroupSpec> {
        GroupSpec::new(raw.family, raw.n)
    }
}

impl GroupSpec {
    pub fn new(family: Family, n: usize) -> Result<GroupSpec> {
        if !(3..=MAX_DEGREE).contains(&n) {
            return Err(Error::input(format!(
                "n must be in 3..={MAX_DEGREE}, got {n}"
            )));
        }
        Ok(GroupSpec { family, n })
    }

    pub fn alt(n: usize) -> Result<GroupSpec> {
        Self::new(Family::Alt, n)
    }

    pub fn sym(n: usize) -> Result<GroupSpec> {
        Self::new(Family::Sym, n)
    }

    pub fn order(&self) -> u128 {
        match self.family {
            Family::Sym => factorial(self.n),
            Family::Alt => factorial(self.n) / 2,
        }
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.n && (self.family == Family::Sym || p.is_even())
    }

    pub fn check_member(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: self.n,
            });
        }
        if !self.contains(p) {
            return Err(Error::NotMember {
                element: p.to_string(),
                group: self.to_string(),
            });
        }
        Ok(())
    }

    pub fn check_nontrivial_member(&self, p: &Permutation) -> Result<()> {
        self.check_member(p)?;
        if p.is_identity() {
            return Err(Error::input(
                "the identity is not a vertex of the generating graph",
            ));
        }
        Ok(())
    }

    pub fn check_degree_limit(&self, caps: &Caps) -> Result<()> {
        if self.n > caps.degree_limit {
            return Err(Error::CapExceeded {
                what: "n",
                value: self.n as u128,
                cap: "degree_limit",
                limit: caps.degree_limit as u128,
                hint: None,
            });
        }
        Ok(())
    }

    pub fn check_enumerable(&self, caps: &Caps) -> Result<()> {
        if self.n > caps.enumeration_cap {
            return Err(Error::CapExceeded {
                what: "n",
                value: self.n as u128,
                cap: "enumeration_cap",
                limit: caps.enumeration_cap as u128,
                hint: None,
            });
        }
        Ok(())
    }

    /// Generators of the commutator subgroup `G′`.
    pub fn derived_subgroup_generators(&self) -> Vec<Permutation> {
        let n = self.n;
        let cyc = |c: &[usize]| Permutation::from_cycles(n, &[c.to_vec()]).unwrap();
        match (self.family, n) {
            (Family::Alt, 3) => Vec::new(),
            (Family::Alt, 4) => vec![
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ],
            // Alt_n is generated by the 3-cycles (1 2 k)
            _ => (2..n).map(|k| cyc(&[0, 1, k])).collect(),
        }
    }

    /// A fixed generating set.
    pub fn generators(&self) -> Vec<Permutation> {
        let n = self.n;
        match self.family {
            Family::Sym => vec![
                Permutation::from_cycles(n, &[(0..n).collect()]).unwrap(),
                Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
            ],
            Family::Alt => (2..n)
                .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
                .collect(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.n)
    }
}

/// Elements in lexicographic order of their image sequences.
pub struct Elements {
    family: Family,
    current: Option<Permutation>,
}

impl Iterator for Elements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        loop {
            let out = self.current?;
            let mut next = out;
            self.current = if next.next_lexicographic() {
                Some(next)
            } else {
                None
            };
            if self.family == Family::Sym || out.is_even() {
                return Some(out);
            }
        }
    }
}

pub fn enumerate_elements(spec: GroupSpec, caps: &Caps) -> Result<Elements> {
    spec.check_enumerable(caps)?;
    Ok(Elements {
        family: spec.family,
        current: Some(Permutation::identity(spec.n)),
    })
}

/// `|⟨generators⟩|`; 1 for an empty list.
pub fn subgroup_order(generators: &[Permutation]) -> Result<u128> {
    let Some(first) = generators.first() else {
        return Ok(1);
    };
    let n = first.degree();
    if let Some(bad) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch {
            left: n,
            right: bad.degree(),
        });
    }
    Ok(StabChain::new(n, generators).order())
}

/// Whether `g` and `x` generate the whole of `spec`.
pub fn generates(spec: GroupSpec, g: &Permutation, x: &Permutation) -> Result<bool> {
    spec.check_member(g)?;
    spec.check_member(x)?;
    Ok(GenerationTest::new(spec).test(g, x))
}

/// Membership-checked-once generation test for hot loops.
#[derive(Debug, Clone, Copy)]
pub struct GenerationTest {
    spec: GroupSpec,
    target: u128,
}

impl GenerationTest {
    pub fn new(spec: GroupSpec) -> GenerationTest {
        GenerationTest {
            spec,
            target: spec.order(),
        }
    }

    /// Both arguments must already be members of the group.
    #[inline]
    pub fn test(&self, g: &Permutation, x: &Permutation) -> bool {
        // Γ(G) has no loops, even for the cyclic Alt_3
        if g == x {
            return false;
        }
        if self.spec.family == Family::Sym && g.is_even() && x.is_even() {
            return false;
        }
        if !is_transitive(self.spec.n, &[*g, *x]) {
            return false;
        }
        StabChain::order_reaches(self.spec.n, &[*g, *x], self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: u128,
    pub shape: CycleShape,
}

/// Conjugacy classes from cycle shapes: one `Sym_n` class per partition; for
/// `Alt_n` the even shapes, with shapes of distinct odd parts split in two.
///
/// Ordered by shape (identity first); split halves are adjacent, the
/// canonical representative first.
pub fn conjugacy_classes(spec: GroupSpec, caps: &Caps) -> Result<Vec<ConjugacyClass>> {
    spec.check_enumerable(caps)?;
    Ok(classes_from_shapes(spec))
}

pub(crate) fn classes_from_shapes(spec: GroupSpec) -> Vec<ConjugacyClass> {
    let n = spec.n;
    let mut out = Vec::new();
    for shape in CycleShape::partitions(n) {
        let size = shape.class_size();
        let rep = shape.representative();
        match spec.family {
            Family::Sym => out.push(ConjugacyClass {
                representative: rep,
                size,
                shape,
            }),
            Family::Alt if !shape.is_even() => {}
            Family::Alt if shape.has_distinct_odd_parts() && size > 1 => {
                // conjugating by the odd permutation (1 2) lands in the other half
                let swap = Permutation::from_cycles(n, &[vec![0, 1]]).unwrap();
                let other = rep.conjugate_by(&swap);
                out.push(ConjugacyClass {
                    representative: rep,
                    size: size / 2,
                    shape: shape.clone(),
                });
                out.push(ConjugacyClass {
                    representative: other,
                    size: size / 2,
                    shape,
                });
            }
            Family::Alt => out.push(ConjugacyClass {
                representative: rep,
                size,
                shape,
            }),
        }
    }
    out
}

/// Classes by explicit orbit computation over the enumerated group.
pub fn conjugacy_classes_by_orbits(spec: GroupSpec, caps: &Caps) -> Result<Vec<ConjugacyClass>> {
    let elements: Vec<Permutation> = enumerate_elements(spec, caps)?.collect();
    let gens = spec.generators();
    let mut seen = vec![false; factorial(spec.n) as usize];
    let mut out = Vec::new();
    for x in &elements {
        if seen[x.rank()] {
            continue;
        }
        seen[x.rank()] = true;
        let mut stack = vec![*x];
        let mut size = 1u128;
        while let Some(y) = stack.pop() {
            for s in &gens {
                let z = y.conjugate_by(s);
                if !seen[z.rank()] {
                    seen[z.rank()] = true;
                    size += 1;
                    stack.push(z);
                }
            }
        }
        out.push(ConjugacyClass {
            representative: *x,
            size,
            shape: x.cycle_shape(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizerMethod {
    /// Scan every `s ∈ G` for `s⁻¹gs ∈ ⟨g⟩`.
    Scan,
    /// Centralizer formula plus explicit conjugators for each unit.
    Constructive,
}

/// `N_G(⟨g⟩)` and `C_G(g)` for a nontrivial `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerReport {
    pub spec: GroupSpec,
    pub generator: Permutation,
    /// `|g|`.
    pub m: u64,
    pub centralizer_order: u128,
    pub normalizer_order: u128,
    /// Units `i` of `ℤ/mℤ` with `s⁻¹gs = gⁱ` for some `s ∈ G`.
    pub power_images: Vec<u64>,
    /// `φ(m) / |power_images|`; 2 exactly when `G = Alt_n` realizes only
    /// half of the units.
    pub index_loss: u64,
    pub method: NormalizerMethod,
}

impl NormalizerReport {
    pub fn automizer_order(&self) -> u64 {
        self.power_images.len() as u64
    }
}

impl fmt::Display for NormalizerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g = {} in {}: |g| = {}, |C(g)| = {}, |N(<g>)| = {}, |N/C| = {} (phi = {}, loss {})",
            self.generator,
            self.spec,
            self.m,
            self.centralizer_order,
            self.normalizer_order,
            self.power_images.len(),
            self.power_images.len() as u64 * self.index_loss,
            self.index_loss,
        )
    }
}

/// Normalizer of `⟨g⟩`: by scanning when `n ≤ scan_cap`, else constructively.
pub fn normalizer_of_cyclic(
    spec: GroupSpec,
    g: &Permutation,
    caps: &Caps,
) -> Result<NormalizerReport> {
    spec.check_nontrivial_member(g)?;
    if spec.n <= caps.scan_cap {
        normalizer_by_scan(spec, g, caps)
    } else {
        normalizer_constructive(spec, g)
    }
}

pub fn normalizer_by_scan(
    spec: GroupSpec,
    g: &Permutation,
    caps: &Caps,
) -> Result<NormalizerReport> {
    spec.check_nontrivial_member(g)?;
    if spec.n > caps.scan_cap {
        return Err(Error::CapExceeded {
            what: "n",
            value: spec.n as u128,
            cap: "scan_cap",
            limit: caps.scan_cap as u128,
            hint: Some("use the constructive normalizer"),
        });
    }
    let m = g.order();
    let mut exponent_of: HashMap<Permutation, u64> = HashMap::new();
    let mut power = Permutation::identity(spec.n);
    for i in 0..m {
        exponent_of.insert(power, i);
        power = power.then(g);
    }
    let mut centralizer = 0u128;
    let mut normalizer = 0u128;
    let mut images = BTreeSet::new();
    for s in enumerate_elements(spec, caps)? {
        if let Some(&i) = exponent_of.get(&g.conjugate_by(&s)) {
            normalizer += 1;
            images.insert(i);
            if i == 1 {
                centralizer += 1;
            }
        }
    }
    let power_images: Vec<u64> = images.into_iter().collect();
    let phi = euler_phi(m)?;
    Ok(NormalizerReport {
        spec,
        generator: *g,
        m,
        centralizer_order: centralizer,
        normalizer_order: normalizer,
        index_loss: phi / power_images.len() as u64,
        power_images,
        method: NormalizerMethod::Scan,
    })
}

/// A permutation `s` with `s⁻¹gs = gⁱ`, for `i` a unit modulo `|g|`.
///
/// Each cycle `(c₀ c₁ … c_{ℓ−1})` of `g` is mapped onto itself by
/// `c_j ↦ c_{j·i mod ℓ}`.
pub fn power_conjugator(g: &Permutation, i: u64) -> Permutation {
    let n = g.degree();
    let mut images: Vec<usize> = (0..n).collect();
    for cycle in g.cycles() {
        let len = cycle.len() as u64;
        for (j, &point) in cycle.iter().enumerate() {
            images[point] = cycle[((j as u64 * i) % len) as usize];
        }
    }
    Permutation::from_zero_based(&images).expect("cycle relabelling is a permutation")
}

/// Generators of `C_{Sym_n}(g)`: each cycle, and for each cycle length with
/// several cycles, a swap of the first two and a shift through all of them.
pub fn sym_centralizer_generators(g: &Permutation) -> Vec<Permutation> {
    let n = g.degree();
    let cycles = g.cycles();
    let mut gens: Vec<Permutation> = cycles
        .iter()
        .map(|c| Permutation::from_cycles(n, std::slice::from_ref(c)).unwrap())
        .collect();
    let fixed: Vec<usize> = (0..n).filter(|&i| g.apply(i) == i).collect();
    let mut by_len: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    for c in cycles {
        match by_len.iter_mut().find(|(len, _)| *len == c.len()) {
            Some((_, list)) => list.push(c),
            None => by_len.push((c.len(), vec![c])),
        }
    }
    if fixed.len() > 1 {
        by_len.push((1, fixed.into_iter().map(|p| vec![p]).collect()));
    }
    for (len, list) in by_len {
        if list.len() < 2 {
            continue;
        }
        let mut swap: Vec<usize> = (0..n).collect();
        for j in 0..len {
            swap[list[0][j]] = list[1][j];
            swap[list[1][j]] = list[0][j];
        }
        gens.push(Permutation::from_zero_based(&swap).unwrap());
        if list.len() > 2 {
            let mut shift: Vec<usize> = (0..n).collect();
            for (k, c) in list.iter().enumerate() {
                let next = &list[(k + 1) % list.len()];
                for j in 0..len {
                    shift[c[j]] = next[j];
                }
            }
            gens.push(Permutation::from_zero_based(&shift).unwrap());
        }
    }
    gens
}

/// Normalizer from the centralizer order formula and explicit conjugators.
///
/// In `Sym_n` every unit is realized. In `Alt_n` the centralizer is the even
/// part of `C_{Sym_n}(g)`; if that centralizer contains an odd element every
/// unit is realized by an even conjugator, otherwise unit `i` is realized
/// exactly when [`power_conjugator`] for `i` is even.
pub fn normalizer_constructive(spec: GroupSpec, g: &Permutation) -> Result<NormalizerReport> {
    spec.check_nontrivial_member(g)?;
    let shape = g.cycle_shape();
    let m = g.order();
    let units = units_mod(m);
    let sym_centralizer = sym_centralizer_order(&shape);
    let (centralizer_order, power_images) = match spec.family {
        Family::Sym => (sym_centralizer, units),
        Family::Alt => {
            let has_odd = sym_centralizer_generators(g).iter().any(|c| !c.is_even());
            if has_odd {
                (sym_centralizer / 2, units)
            } else {
                let realized = units
                    .into_iter()
                    .filter(|&i| power_conjugator(g, i).is_even())
                    .collect();
                (sym_centralizer, realized)
            }
        }
    };
    let phi = euler_phi(m)?;
    Ok(NormalizerReport {
        spec,
        generator: *g,
        m,
        centralizer_order,
        normalizer_order: centralizer_order * power_images.len() as u128,
        index_loss: phi / power_images.len() as u64,
        power_images,
        method: NormalizerMethod::Constructive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockClassification {
    /// Orbits as 1-based point sets.
    Intransitive {
        orbits: Vec<Vec<usize>>,
    },
    /// A nontrivial block system with the smallest blocks, 1-based.
    Imprimitive {
        blocks: Vec<Vec<usize>>,
    },
    Primitive,
}

impl BlockClassification {
    pub fn is_transitive(&self) -> bool {
        !matches!(self, BlockClassification::Intransitive { .. })
    }

    pub fn is_primitive(&self) -> bool {
        matches!(self, BlockClassification::Primitive)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller point as the root so classes are labelled canonically
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn classes(&mut self, n: usize) -> Vec<Vec<usize>> {
        let mut map: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = self.find(i);
            map[r].push(i + 1);
        }
        map.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

/// Classifies the action of `⟨generators⟩` on `{1..n}`.
///
/// For transitive groups each seed pair `{1, b}` is closed into the finest
/// block system containing it; the smallest nontrivial result wins.
pub fn block_system(generators: &[Permutation], n: usize) -> Result<BlockClassification> {
    if let Some(bad) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch {
            left: bad.degree(),
            right: n,
        });
    }
    let mut orbits = UnionFind::new(n);
    for g in generators {
        for i in 0..n {
            orbits.union(i, g.apply(i));
        }
    }
    let orbit_list = orbits.classes(n);
    if orbit_list.len() > 1 {
        return Ok(BlockClassification::Intransitive { orbits: orbit_list });
    }
    let mut best: Option<Vec<Vec<usize>>> = None;
    for seed in 1..n {
        let mut uf = UnionFind::new(n);
        uf.union(0, seed);
        let mut queue = vec![(0usize, seed)];
        while let Some((a, b)) = queue.pop() {
            for g in generators {
                let (ga, gb) = (g.apply(a), g.apply(b));
                if uf.union(ga, gb) {
                    queue.push((ga, gb));
                }
            }
        }
        let blocks = uf.classes(n);
        if blocks.len() > 1 && best.as_ref().is_none_or(|b| blocks[0].len() < b[0].len()) {
            best = Some(blocks);
        }
    }
    Ok(match best {
        Some(blocks) => BlockClassification::Imprimitive { blocks },
        None => BlockClassification::Primitive,
    })
}

/// Whether `s` normalizes the subgroup generated by `gens`, given a
/// membership test for it.
pub fn normalizes(
    s: &Permutation,
    gens: &[Permutation],
    contains: impl Fn(&Permutation) -> bool,
) -> bool {
    gens.iter().all(|h| contains(&h.conjugate_by(s)))
}

/// Whether the units realized form a subgroup of `(ℤ/mℤ)*`.
pub fn is_unit_subgroup(m: u64, units: &[u64]) -> bool {
    let set: BTreeSet<u64> = units.iter().copied().collect();
    if m == 1 {
        return set == BTreeSet::from([0]);
    }
    set.contains(&1)
        && units.iter().all(|&a| gcd(a, m) == 1)
        && units
            .iter()
            .all(|&a| units.iter().all(|&b| set.contains(&((a * b) % m))))
}
