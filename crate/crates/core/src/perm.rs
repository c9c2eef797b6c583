//! Permutations of `{1..n}` and their cycle shapes.
//!
//! Permutations act on the right: in a product `a * b` the factor `a` is
//! applied first. Points are 1-based in every textual and JSON form and
//! 0-based internally.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{factorial, lcm};

/// Storage capacity of a [`Permutation`]; no degree above this is representable.
pub const MAX_DEGREE: usize = 32;

/// Default upper bound on the degree accepted from user input.
pub const DEFAULT_DEGREE_LIMIT: usize = 24;

/// A permutation of `{0..degree}`, stored inline so it is `Copy`.
///
/// Entries past `degree` hold their own index, so equality and hashing only
/// depend on the mathematical content.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    degree: u8,
    images: [u8; MAX_DEGREE],
}

const fn padded_identity() -> [u8; MAX_DEGREE] {
    let mut images = [0u8; MAX_DEGREE];
    let mut i = 0;
    while i < MAX_DEGREE {
        images[i] = i as u8;
        i += 1;
    }
    images
}

const IDENTITY_IMAGES: [u8; MAX_DEGREE] = padded_identity();

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation {
            degree: degree as u8,
            images: IDENTITY_IMAGES,
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_zero_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree must be in 1..={MAX_DEGREE}, got {n}"
            )));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut perm = Permutation::identity(n);
        for (i, &img) in images.iter().enumerate() {
            if img >= n || seen[img] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a permutation of 0..{n}"
                )));
            }
            seen[img] = true;
            perm.images[i] = img as u8;
        }
        Ok(perm)
    }

    /// Builds a permutation from 1-based images, `images[i]` being the image of point `i + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(
                "images are 1-based; 0 is not a point".into(),
            ));
        }
        let zero: Vec<usize> = images.iter().map(|&i| i - 1).collect();
        Self::from_zero_based(&zero)
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree must be in 1..={MAX_DEGREE}, got {degree}"
            )));
        }
        let mut perm = Permutation::identity(degree);
        let mut used = [false; MAX_DEGREE];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} exceeds degree {degree}",
                        a + 1
                    )));
                }
                if used[a] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears twice",
                        a + 1
                    )));
                }
                used[a] = true;
                perm.images[a] = cycle[(k + 1) % cycle.len()] as u8;
            }
        }
        Ok(perm)
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(err("empty input"));
        }
        let mut cycles = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            rest = rest.trim_start();
            let Some(body) = rest.strip_prefix('(') else {
                return Err(err("expected '('"));
            };
            let Some(close) = body.find(')') else {
                return Err(err("missing ')'"));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(err("nested '('"));
            }
            let mut cycle = Vec::new();
            for token in inner.split_whitespace() {
                let point: usize = token
                    .parse()
                    .map_err(|_| err(&format!("{token:?} is not a point")))?;
                if point == 0 || point > degree {
                    return Err(err(&format!("point {point} outside 1..={degree}")));
                }
                cycle.push(point - 1);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
            rest = &body[close + 1..];
        }
        Self::from_cycles(degree, &cycles).map_err(|e| match e {
            Error::InvalidPermutation(reason) => err(&reason),
            other => other,
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// 0-based images.
    #[inline]
    pub fn images(&self) -> &[u8] {
        &self.images[..self.degree as usize]
    }

    /// 1-based images, the JSON form.
    pub fn images_one_based(&self) -> Vec<usize> {
        self.images().iter().map(|&i| i as usize + 1).collect()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.images == IDENTITY_IMAGES
    }

    /// The product `self * other`: apply `self`, then `other`.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree, other.degree);
        let mut images = IDENTITY_IMAGES;
        for i in 0..self.degree as usize {
            images[i] = other.images[self.images[i] as usize];
        }
        Permutation {
            degree: self.degree,
            images,
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = IDENTITY_IMAGES;
        for i in 0..self.degree as usize {
            images[self.images[i] as usize] = i as u8;
        }
        Permutation {
            degree: self.degree,
            images,
        }
    }

    /// `s⁻¹ * self * s`, i.e. `self` with its points relabelled by `s`.
    #[inline]
    pub fn conjugate_by(&self, s: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree, s.degree);
        let mut images = IDENTITY_IMAGES;
        for i in 0..self.degree as usize {
            images[s.images[i] as usize] = s.images[self.images[i] as usize];
        }
        Permutation {
            degree: self.degree,
            images,
        }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { *self };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_shape(&self) -> CycleShape {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.apply(p);
            }
            parts.push(len);
        }
        CycleShape::from_parts_unchecked(n, parts)
    }

    /// Order of the element: the lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_shape().order()
    }

    pub fn is_even(&self) -> bool {
        let n = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                transpositions += 1;
                p = self.apply(p);
            }
            transpositions -= 1;
        }
        transpositions % 2 == 0
    }

    pub fn parity(&self) -> Parity {
        if self.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Lehmer-code rank in `0..n!`, consistent with the lexicographic order of image sequences.
    pub fn rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0usize;
        let mut used: u32 = 0;
        for i in 0..n {
            let v = self.images[i] as u32;
            let smaller_unused = (v - (used & ((1u32 << v) - 1)).count_ones()) as usize;
            rank = rank * (n - i) + smaller_unused;
            used |= 1 << v;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(degree: usize, mut rank: usize) -> Permutation {
        let mut digits = [0usize; MAX_DEGREE];
        for i in (0..degree).rev() {
            let radix = degree - i;
            digits[i] = rank % radix;
            rank /= radix;
        }
        let mut available: Vec<u8> = (0..degree as u8).collect();
        let mut perm = Permutation::identity(degree);
        for i in 0..degree {
            perm.images[i] = available.remove(digits[i]);
        }
        perm
    }

    /// Advances to the next permutation in lexicographic order of images.
    /// Returns `false` (leaving `self` unchanged) at the last permutation.
    pub fn next_lexicographic(&mut self) -> bool {
        let s = &mut self.images[..self.degree as usize];
        let n = s.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && s[i - 1] >= s[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while s[j] <= s[i - 1] {
            j -= 1;
        }
        s.swap(i - 1, j);
        s[i..].reverse();
        true
    }
}

/// Composes `a` then `b`, checking degrees.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(a.then(b))
}

impl Mul for Permutation {
    type Output = Permutation;

    /// `a * b` applies `a` first.
    fn mul(self, rhs: Permutation) -> Permutation {
        self.then(&rhs)
    }
}

impl Mul<&Permutation> for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then lexicographic on image sequences.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.images().cmp(other.images()))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree)
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    degree: usize,
    images: Vec<usize>,
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationJson {
            degree: self.degree(),
            images: self.images_one_based(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PermutationJson::deserialize(deserializer)?;
        if raw.images.len() != raw.degree {
            return Err(serde::de::Error::custom(format!(
                "degree {} but {} images",
                raw.degree,
                raw.images.len()
            )));
        }
        Permutation::from_images(&raw.images).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(value: u64) -> Parity {
        if value.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A cycle type: a partition of `n` with fixed points recorded as parts equal to 1.
///
/// Parts are kept in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct CycleShape {
    parts: Vec<usize>,
}

impl CycleShape {
    pub fn new(degree: usize, mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::input("cycle shape parts must be positive"));
        }
        let sum: usize = parts.iter().sum();
        if sum != degree {
            return Err(Error::input(format!(
                "cycle shape {parts:?} sums to {sum}, not {degree}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleShape { parts })
    }

    fn from_parts_unchecked(degree: usize, mut parts: Vec<usize>) -> Self {
        debug_assert_eq!(parts.iter().sum::<usize>(), degree);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleShape { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn order(&self) -> u64 {
        self.parts.iter().fold(1u64, |acc, &p| lcm(acc, p as u64))
    }

    pub fn parity(&self) -> Parity {
        let transpositions: usize = self.parts.iter().map(|p| p - 1).sum();
        if transpositions.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// `(length, multiplicity)` pairs in decreasing length.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((len, m)) if *len == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The canonical element: cycles on consecutive points, longest first.
    pub fn representative(&self) -> Permutation {
        let n = self.degree();
        let mut cycles = Vec::new();
        let mut next = 0;
        for &len in &self.parts {
            cycles.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        Permutation::from_cycles(n, &cycles).expect("shape parts fit the degree")
    }

    /// Whether every cycle has odd length and no two cycles share a length.
    ///
    /// Exactly then the centralizer in `Sym_n` lies inside `Alt_n`, so the
    /// `Sym_n` class splits into two `Alt_n` classes.
    pub fn has_distinct_odd_parts(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1) && self.parts.windows(2).all(|w| w[0] != w[1])
    }

    /// Number of elements of `Sym_n` with this shape.
    pub fn class_size(&self) -> u128 {
        factorial(self.degree()) / sym_centralizer_order(self)
    }

    /// Partitions of `n` in increasing lexicographic order of their
    /// non-increasing part sequences (identity shape first, `{n}` last).
    pub fn partitions(n: usize) -> Vec<CycleShape> {
        fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if remaining == 0 {
                out.push(prefix.clone());
                return;
            }
            for part in 1..=max.min(remaining) {
                prefix.push(part);
                rec(remaining - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out.sort();
        out.into_iter().map(|parts| CycleShape { parts }).collect()
    }
}

impl TryFrom<Vec<usize>> for CycleShape {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        let degree = parts.iter().sum();
        CycleShape::new(degree, parts)
    }
}

impl From<CycleShape> for Vec<usize> {
    fn from(shape: CycleShape) -> Vec<usize> {
        shape.parts
    }
}

impl fmt::Display for CycleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// `|C_{Sym_n}(g)|` for `g` of the given shape: the product of `ℓ^m · m!`
/// over cycle lengths `ℓ` of multiplicity `m`.
pub fn sym_centralizer_order(shape: &CycleShape) -> u128 {
    shape
        .multiplicities()
        .into_iter()
        .map(|(len, mult)| (len as u128).pow(mult as u32) * factorial(mult))
        .product()
}

/// Whether all points of `0..n` lie in one orbit of `⟨gens⟩`.
pub fn is_transitive(n: usize, gens: &[Permutation]) -> bool {
    let mut parent = [0u8; MAX_DEGREE];
    for (i, p) in parent.iter_mut().enumerate().take(n) {
        *p = i as u8;
    }
    fn find(parent: &mut [u8; MAX_DEGREE], mut x: usize) -> usize {
        while parent[x] as usize != x {
            parent[x] = parent[parent[x] as usize];
            x = parent[x] as usize;
        }
        x
    }
    let mut components = n;
    for g in gens {
        for i in 0..n {
            let a = find(&mut parent, i);
            let b = find(&mut parent, g.apply(i));
            if a != b {
                parent[a] = b as u8;
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
    }
    components <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn inverse_pair_composes_to_identity() {
        let a = p("(1 2 3)", 3);
        let b = p("(1 3 2)", 3);
        assert!(compose(&a, &b).unwrap().is_identity());
    }

    #[test]
    fn identity_is_left_neutral() {
        let q = p("(1 4)(2 3 5)", 5);
        assert_eq!(compose(&Permutation::identity(5), &q).unwrap(), q);
    }

    #[test]
    fn composition_applies_left_factor_first() {
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        let r = compose(&p("(1 2)", 3), &p("(2 3)", 3)).unwrap();
        assert_eq!(r, p("(1 3 2)", 3));
        assert_eq!(r.to_string(), "(1 3 2)");
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = compose(&Permutation::identity(3), &Permutation::identity(4)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn cycle_shapes() {
        assert_eq!(p("(1 2 3)(4 5)", 5).cycle_shape().parts(), &[3, 2]);
        assert_eq!(
            Permutation::identity(4).cycle_shape().parts(),
            &[1, 1, 1, 1]
        );
        assert_eq!(p("(1 2 3 4 5 6 7)", 8).cycle_shape().parts(), &[7, 1]);
    }

    #[test]
    fn element_orders() {
        assert_eq!(p("(1 2 3)(4 5)", 5).order(), 6);
        assert_eq!(Permutation::identity(6).order(), 1);
        let g = p("(1 2 3 4 5 6 7 8 9)(10 11 12)", 12);
        assert_eq!(g.order(), 9);
        // cross-check by repeated composition
        let mut acc = g;
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.then(&g);
            k += 1;
        }
        assert_eq!(k, 9);
    }

    #[test]
    fn centralizer_orders() {
        let seven = CycleShape::new(7, vec![7]).unwrap();
        assert_eq!(sym_centralizer_order(&seven), 7);
        let nine_three = CycleShape::new(12, vec![9, 3]).unwrap();
        assert_eq!(sym_centralizer_order(&nine_three), 27);
        let id = CycleShape::new(6, vec![1; 6]).unwrap();
        assert_eq!(sym_centralizer_order(&id), 720);
    }

    #[test]
    fn centralizer_of_three_cycle_in_sym4_by_scan() {
        let g = p("(1 2 3)", 4);
        let mut s = Permutation::identity(4);
        let mut count = 1;
        while s.next_lexicographic() {
            if s.then(&g) == g.then(&s) {
                count += 1;
            }
        }
        assert_eq!(count, 3);
        assert_eq!(sym_centralizer_order(&g.cycle_shape()), 3);
    }

    #[test]
    fn text_format() {
        assert_eq!(Permutation::identity(5).to_string(), "()");
        assert_eq!(p("()", 5), Permutation::identity(5));
        assert_eq!(p(" (4 5)(1 2 3) ", 5).to_string(), "(1 2 3)(4 5)");
        assert_eq!(p("(3)(1 2)", 3).to_string(), "(1 2)");
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "1 2 3",
            "(1 2",
            "(1 0)",
            "(1 7)",
            "(1 2)(2 3)",
            "(a b)",
            "((1 2))",
        ] {
            assert!(
                matches!(Permutation::parse(bad, 5), Err(Error::Parse { .. })),
                "{bad:?} should not parse"
            );
        }
    }

    #[test]
    fn json_form() {
        let g = p("(1 2 3)(4 5)", 5);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"degree":5,"images":[2,3,1,5,4]}"#);
        let back: Permutation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Permutation>(r#"{"degree":3,"images":[1,1,2]}"#).is_err());
        assert!(serde_json::from_str::<Permutation>(r#"{"degree":4,"images":[1,2,3]}"#).is_err());
    }

    #[test]
    fn rank_matches_lexicographic_enumeration() {
        let mut q = Permutation::identity(5);
        let mut expected = 0;
        loop {
            assert_eq!(q.rank(), expected);
            assert_eq!(Permutation::unrank(5, expected), q);
            expected += 1;
            if !q.next_lexicographic() {
                break;
            }
        }
        assert_eq!(expected, 120);
    }

    #[test]
    fn partitions_are_ordered() {
        let shapes: Vec<Vec<usize>> = CycleShape::partitions(4)
            .into_iter()
            .map(Vec::from)
            .collect();
        assert_eq!(
            shapes,
            vec![
                vec![1, 1, 1, 1],
                vec![2, 1, 1],
                vec![2, 2],
                vec![3, 1],
                vec![4]
            ]
        );
        assert_eq!(CycleShape::partitions(9).len(), 30);
    }

    #[test]
    fn shape_json_rejects_non_positive_parts() {
        assert!(serde_json::from_str::<CycleShape>("[3,0]").is_err());
        let s: CycleShape = serde_json::from_str("[2,3]").unwrap();
        assert_eq!(s.parts(), &[3, 2]);
    }

    #[test]
    fn transitivity() {
        assert!(is_transitive(4, &[p("(1 2 3 4)", 4)]));
        assert!(!is_transitive(5, &[p("(1 2 3)", 5)]));
        assert!(is_transitive(1, &[]));
    }
}
