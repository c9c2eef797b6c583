//! Base and strong generating sets (Schreier–Sims).
//!
//! Each level `i` keeps its base point `bᵢ`, the strong generators `Sᵢ`
//! fixing `b₀..bᵢ₋₁`, the orbit of `bᵢ` under `⟨Sᵢ⟩` and a transversal.
//! Generators added at a deep level are also added to every shallower
//! level, so `Sᵢ₊₁ ⊆ Sᵢ`. Every Schreier generator `(β, s)` is sifted
//! exactly once: transversal entries never change after being set, and a
//! Schreier generator that sifts to the identity lies in `⟨Sᵢ₊₁⟩`, which
//! only grows. Once the worklist drains the chain is complete.

use crate::perm::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<u8>,
    /// `transversal[β] = (u, u⁻¹)` with `u` mapping the base point to `β`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Level {
        let mut transversal = vec![None; degree];
        let id = Permutation::identity(degree);
        transversal[base] = Some((id, id));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base as u8],
            transversal,
        }
    }
}

/// A stabilizer chain for `⟨generators⟩ ≤ Sym_n`, with base points chosen as
/// the least point moved by the generator that opens each level.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

struct Builder {
    chain: StabChain,
    /// Pending Schreier generators: `(level, orbit point, generator index)`.
    pending: Vec<(usize, u8, usize)>,
    target: Option<u128>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> StabChain {
        let mut builder = Builder::new(degree, None);
        builder.run(generators);
        builder.chain
    }

    /// Whether `|⟨generators⟩| ≥ target`, stopping as soon as the partial
    /// chain certifies it.
    ///
    /// The product of basic orbit lengths of a partial chain is a lower
    /// bound for the group order, so early exit never gives a false positive.
    pub fn order_reaches(degree: usize, generators: &[Permutation], target: u128) -> bool {
        let mut builder = Builder::new(degree, Some(target));
        builder.run(generators);
        builder.chain.order() >= target
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Strong generators (the generators of the first level).
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels
            .first()
            .map(|l| l.gens.as_slice())
            .unwrap_or(&[])
    }

    /// Sifts `h` from `from`; returns the residue and the level where it stopped.
    fn sift(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            match &level.transversal[beta] {
                Some((_, u_inv)) => h = h.then(u_inv),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift(*p, 0).0.is_identity()
    }

    /// All elements, each exactly once.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.order() as usize);
        self.collect_elements(
            self.levels.len(),
            Permutation::identity(self.degree),
            &mut out,
        );
        out
    }

    // element = u_{k-1} * ... * u_1 * u_0, built from the deepest level outwards
    fn collect_elements(&self, depth: usize, prefix: Permutation, out: &mut Vec<Permutation>) {
        if depth == 0 {
            out.push(prefix);
            return;
        }
        let level = &self.levels[depth - 1];
        for &beta in &level.orbit {
            let (u, _) = level.transversal[beta as usize].as_ref().unwrap();
            self.collect_elements(depth - 1, prefix.then(u), out);
        }
    }
}

impl Builder {
    fn new(degree: usize, target: Option<u128>) -> Builder {
        Builder {
            chain: StabChain {
                degree,
                levels: Vec::new(),
            },
            pending: Vec::new(),
            target,
        }
    }

    fn reached(&self) -> bool {
        self.target.is_some_and(|t| self.chain.order() >= t)
    }

    fn run(&mut self, generators: &[Permutation]) {
        for g in generators {
            assert_eq!(g.degree(), self.chain.degree, "generator degree mismatch");
            let (h, j) = self.chain.sift(*g, 0);
            if !h.is_identity() {
                self.insert(h, 0, j);
                if self.reached() {
                    return;
                }
            }
            while let Some((level, beta, gen)) = self.pending.pop() {
                self.process(level, beta as usize, gen);
                if self.reached() {
                    return;
                }
            }
        }
    }

    fn process(&mut self, level: usize, beta: usize, gen: usize) {
        let lvl = &self.chain.levels[level];
        let s = lvl.gens[gen];
        let (u, _) = lvl.transversal[beta].as_ref().unwrap();
        let image = s.apply(beta);
        let (_, v_inv) = lvl.transversal[image].as_ref().unwrap();
        let schreier = u.then(&s).then(v_inv);
        let (h, j) = self.chain.sift(schreier, level + 1);
        if !h.is_identity() {
            self.insert(h, level + 1, j);
        }
    }

    /// Adds `h` as a strong generator to levels `from..=to`, opening level `to`
    /// if needed.
    fn insert(&mut self, h: Permutation, from: usize, to: usize) {
        let degree = self.chain.degree;
        if to == self.chain.levels.len() {
            let base = (0..degree)
                .find(|&i| h.apply(i) != i)
                .expect("residue is not the identity");
            self.chain.levels.push(Level::new(degree, base));
        }
        for level_idx in from..=to {
            let level = &mut self.chain.levels[level_idx];
            let gen_idx = level.gens.len();
            level.gens.push(h);
            let old_len = level.orbit.len();
            for &beta in &level.orbit {
                self.pending.push((level_idx, beta, gen_idx));
            }
            // close the orbit: old points under `h`, new points under everything
            for i in 0..old_len {
                let beta = level.orbit[i] as usize;
                extend(level, beta, &h);
            }
            let mut cursor = old_len;
            while cursor < level.orbit.len() {
                let beta = level.orbit[cursor] as usize;
                for gi in 0..level.gens.len() {
                    let s = level.gens[gi];
                    extend(level, beta, &s);
                }
                cursor += 1;
            }
            for &beta in &level.orbit[old_len..] {
                for gi in 0..level.gens.len() {
                    self.pending.push((level_idx, beta, gi));
                }
            }
        }
    }
}

fn extend(level: &mut Level, beta: usize, s: &Permutation) {
    let image = s.apply(beta);
    if level.transversal[image].is_none() {
        let (u, _) = level.transversal[beta].unwrap();
        let w = u.then(s);
        level.transversal[image] = Some((w, w.inverse()));
        level.orbit.push(image as u8);
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    /// Closure by breadth-first multiplication; independent of the chain.
    fn closure(n: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(n);
        seen.insert(id);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn standard_examples() {
        assert_eq!(
            StabChain::new(4, &[p("(1 2)", 4), p("(1 2 3 4)", 4)]).order(),
            24
        );
        assert_eq!(
            StabChain::new(4, &[p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).order(),
            4
        );
        assert_eq!(StabChain::new(7, &[p("(1 2 3 4 5 6 7)", 7)]).order(), 7);
        assert_eq!(StabChain::new(5, &[]).order(), 1);
    }

    #[test]
    fn matches_closure_and_enumerates_elements() {
        let cases = [
            (6, vec!["(1 2 3 4 5 6)", "(1 2)"]),
            (6, vec!["(1 2 3)(4 5 6)", "(1 4)(2 5)(3 6)"]),
            (7, vec!["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
            (8, vec!["(1 2 3 4)(5 6 7 8)", "(1 5)(2 6)", "(1 3)"]),
            (5, vec!["(1 2 3)", "(3 4 5)"]),
        ];
        for (n, gens) in cases {
            let gens: Vec<Permutation> = gens.iter().map(|s| p(s, n)).collect();
            let chain = StabChain::new(n, &gens);
            let reference = closure(n, &gens);
            assert_eq!(chain.order(), reference.len() as u128);
            let elements: HashSet<Permutation> = chain.elements().into_iter().collect();
            assert_eq!(elements, reference);
            let mut q = Permutation::identity(n);
            loop {
                assert_eq!(chain.contains(&q), reference.contains(&q));
                if !q.next_lexicographic() {
                    break;
                }
            }
        }
    }

    #[test]
    fn psl27_on_seven_points() {
        let gens = [p("(1 2 3 4 5 6 7)", 7), p("(2 3 5)(4 7 6)", 7)];
        assert_eq!(StabChain::new(7, &gens).order(), 21);
        let gens = [p("(1 2 3 4 5 6 7)", 7), p("(1 2)(3 6)", 7)];
        assert_eq!(StabChain::new(7, &gens).order(), 168);
    }

    #[test]
    fn early_exit_is_never_a_false_positive() {
        let gens = [p("(1 2 3 4 5 6 7)", 7), p("(1 2)(3 6)", 7)];
        assert!(StabChain::order_reaches(7, &gens, 168));
        assert!(!StabChain::order_reaches(7, &gens, 169));
        let sym9 = [p("(1 2 3 4 5 6 7 8 9)", 9), p("(1 2)", 9)];
        assert!(StabChain::order_reaches(9, &sym9, 362_880));
    }
}
