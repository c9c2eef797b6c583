//! Integer arithmetic: totients, primes, power-sum decompositions of the
//! degree, the Eulerian predicate and the odd-degree probability.

use std::fmt;

use num::{BigInt, BigRational, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Family, GroupSpec};
use crate::perm::CycleShape;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// `n!`; exact for `n ≤ 34`.
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn euler_phi(m: u64) -> Result<u64> {
    if m < 1 {
        return Err(Error::input("totient is defined for m ≥ 1"));
    }
    Ok(factorize(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1)))
}

/// Units of `ℤ/mℤ` in increasing order.
pub fn units_mod(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&i| gcd(i, m) == 1).collect()
}

/// Product of the distinct primes dividing `m` (the radical).
pub fn square_free_part(m: u128) -> u128 {
    let mut m = m;
    let mut out = 1u128;
    let mut d = 2u128;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out *= d;
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out *= m;
    }
    out
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_prime_3mod4(q: u64) -> Result<bool> {
    if q < 2 {
        return Err(Error::input(format!("expected q ≥ 2, got {q}")));
    }
    Ok(q % 4 == 3 && is_prime(q))
}

/// Whether the generating graph of `Alt_n` / `Sym_n` is Eulerian: neither
/// `n` nor `n - 1` is a prime congruent to 3 mod 4.
pub fn eulerian_predicate(n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::input(format!("expected n ≥ 3, got {n}")));
    }
    Ok(!is_prime_3mod4(n as u64)? && !is_prime_3mod4(n as u64 - 1)?)
}

/// The prime `p ≡ 3 (mod 4)` with `p ∈ {n, n-1}`, if any. At most one exists
/// since `n` and `n - 1` cannot both be odd.
pub fn odd_degree_prime(n: usize) -> Option<u64> {
    [n as u64, n as u64 - 1]
        .into_iter()
        .find(|&q| q >= 2 && q % 4 == 3 && is_prime(q))
}

/// A witness `n = Σ aᵢ·pⁱ` with `aᵢ ∈ {0,1}`, `a_k = 1`, `p ≡ 3 (mod 4)` prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    pub n: usize,
    pub p: u64,
    pub k: u32,
    /// `a₀..a_k`.
    pub coefficients: Vec<u8>,
    /// Whether the number of nonzero `aᵢ` with `i` odd is odd.
    pub alt_condition: bool,
    pub shape: CycleShape,
}

impl DecompositionCertificate {
    /// `"12 = 3^2 + 3^1"`, largest power first.
    pub fn render_sum(&self) -> String {
        let terms: Vec<String> = (0..=self.k)
            .rev()
            .filter(|&i| self.coefficients[i as usize] == 1)
            .map(|i| format!("{}^{}", self.p, i))
            .collect();
        format!("{} = {}", self.n, terms.join(" + "))
    }
}

impl fmt::Display for DecompositionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, shape {}", self.render_sum(), self.shape)
    }
}

/// All decompositions of `n` as a sum of distinct powers `pⁱ` (top power
/// `p^k`, `k ≥ 1`, always present) for primes `p ≡ 3 (mod 4)`, `p ≤ n`.
///
/// For `Alt` only certificates satisfying the odd-index condition are kept.
/// `Sym_3` is an exception to the normalizer characterisation these
/// certificates feed; callers must special-case it (see
/// [`is_sym3_exception`]).
pub fn decompositions(n: usize, family: Family) -> Result<Vec<DecompositionCertificate>> {
    if n < 3 {
        return Err(Error::input(format!("expected n ≥ 3, got {n}")));
    }
    let mut out = Vec::new();
    for p in (3..=n as u64).filter(|&p| p % 4 == 3 && is_prime(p)) {
        let mut powers = vec![1u64];
        while powers.last().unwrap() * p <= n as u64 {
            powers.push(powers.last().unwrap() * p);
        }
        for k in 1..powers.len() {
            let top = powers[k];
            for mask in 0u32..(1 << k) {
                let lower: u64 = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| powers[i])
                    .sum();
                if top + lower != n as u64 {
                    continue;
                }
                let mut coefficients: Vec<u8> = (0..k).map(|i| (mask >> i & 1) as u8).collect();
                coefficients.push(1);
                let odd_terms = coefficients
                    .iter()
                    .enumerate()
                    .filter(|&(i, &a)| i % 2 == 1 && a == 1)
                    .count();
                let alt_condition = odd_terms % 2 == 1;
                if family == Family::Alt && !alt_condition {
                    continue;
                }
                let parts = coefficients
                    .iter()
                    .enumerate()
                    .filter(|&(_, &a)| a == 1)
                    .map(|(i, _)| powers[i] as usize)
                    .collect();
                out.push(DecompositionCertificate {
                    n,
                    p,
                    k: k as u32,
                    coefficients,
                    alt_condition,
                    shape: CycleShape::new(n, parts)?,
                });
            }
        }
    }
    Ok(out)
}

/// `Sym_3`: every nontrivial normalizer has order `≡ 2 (mod 4)`, so the
/// transpositions fail `4 | |N|` although `3 = 3¹` only certifies 3-cycles.
pub fn is_sym3_exception(n: usize, family: Family) -> bool {
    n == 3 && family == Family::Sym
}

/// Exact probability that a nontrivial element has odd degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbabilityReport {
    pub spec: GroupSpec,
    pub p: u64,
    pub out_order: u64,
    pub numerator: u128,
    pub denominator: u128,
    /// Number of odd-degree vertices, when a degree table was available.
    pub odd_vertex_count: Option<u128>,
}

impl ProbabilityReport {
    pub fn as_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numerator), BigInt::from(self.denominator))
    }
}

impl fmt::Display for ProbabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P({}) = {}/{} (p = {}, |Out| = {})",
            self.spec, self.numerator, self.denominator, self.p, self.out_order
        )?;
        if let Some(count) = self.odd_vertex_count {
            write!(f, ", odd vertices = {count}")?;
        }
        Ok(())
    }
}

/// `|Out(G)|` for `n ≠ 6`.
pub fn out_order(spec: GroupSpec) -> Result<u64> {
    if spec.n == 6 {
        return Err(Error::Unsupported(
            "|Out| of Alt_6 / Sym_6 is not covered by the probability formula".into(),
        ));
    }
    Ok(match spec.family {
        Family::Sym => 1,
        Family::Alt => 2,
    })
}

/// `|Out(G)| / (p·(1 − |Out(G)|/n!))` as an exact reduced fraction.
pub fn odd_degree_probability(spec: GroupSpec) -> Result<ProbabilityReport> {
    let out = out_order(spec)?;
    let Some(p) = odd_degree_prime(spec.n) else {
        return Err(Error::Precondition(format!(
            "the generating graph of {spec} is Eulerian; no vertex has odd degree"
        )));
    };
    let n_fact = BigInt::from(factorial(spec.n));
    let out_big = BigInt::from(out);
    let one = BigRational::from_integer(BigInt::from(1));
    let ratio = BigRational::new(out_big.clone(), n_fact);
    let denominator = BigRational::from_integer(BigInt::from(p)) * (one - ratio);
    if denominator.is_zero() {
        return Err(Error::Precondition("degenerate probability".into()));
    }
    let value = BigRational::from_integer(out_big) / denominator;
    let to_u128 = |x: &BigInt| {
        x.to_u128()
            .ok_or_else(|| Error::Unsupported("probability does not fit in 128 bits".into()))
    };
    Ok(ProbabilityReport {
        spec,
        p,
        out_order: out,
        numerator: to_u128(value.numer())?,
        denominator: to_u128(value.denom())?,
        odd_vertex_count: None,
    })
}

/// Number of `p`-cycles in `Sym_n`: `n! / (p·(n−p)!)`.
pub fn p_cycle_count(n: usize, p: usize) -> u128 {
    factorial(n) / (p as u128 * factorial(n - p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(9).unwrap(), 6);
        assert_eq!(euler_phi(7).unwrap(), 6);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn totient_matches_unit_count() {
        for m in 1..200 {
            assert_eq!(euler_phi(m).unwrap(), units_mod(m).len() as u64, "m = {m}");
        }
    }

    #[test]
    fn primes_3mod4() {
        assert!(is_prime_3mod4(7).unwrap());
        assert!(!is_prime_3mod4(5).unwrap());
        assert!(!is_prime_3mod4(9).unwrap());
        assert!(is_prime_3mod4(3).unwrap());
        assert!(is_prime_3mod4(1).is_err());
    }

    #[test]
    fn eulerian_examples() {
        assert!(!eulerian_predicate(7).unwrap());
        assert!(eulerian_predicate(5).unwrap());
        assert!(eulerian_predicate(9).unwrap());
        assert!(!eulerian_predicate(8).unwrap());
        assert!(!eulerian_predicate(3).unwrap());
        assert!(!eulerian_predicate(4).unwrap());
        assert!(eulerian_predicate(2).is_err());
    }

    /// Brute force over all 0/1 coefficient vectors for every prime.
    fn decomposition_oracle(n: usize, family: Family) -> Vec<(u64, Vec<usize>)> {
        let mut out = Vec::new();
        for p in 2..=n as u64 {
            if !(is_prime(p) && p % 4 == 3) {
                continue;
            }
            for k in 1..=20u32 {
                let top = p.pow(k);
                if top > n as u64 {
                    break;
                }
                for mask in 0..(1u32 << k) {
                    let mut parts = vec![top as usize];
                    let mut odd = k % 2;
                    for i in 0..k {
                        if mask >> i & 1 == 1 {
                            parts.push(p.pow(i) as usize);
                            odd += i % 2;
                        }
                    }
                    if parts.iter().sum::<usize>() == n && (family == Family::Sym || odd % 2 == 1) {
                        parts.sort_unstable_by(|a, b| b.cmp(a));
                        out.push((p, parts));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn decompositions_match_oracle() {
        for n in 3..60 {
            for family in [Family::Alt, Family::Sym] {
                let got: Vec<(u64, Vec<usize>)> = decompositions(n, family)
                    .unwrap()
                    .into_iter()
                    .map(|c| (c.p, c.shape.parts().to_vec()))
                    .collect();
                assert_eq!(got, decomposition_oracle(n, family), "n = {n} {family:?}");
            }
        }
    }

    #[test]
    fn twelve_for_alt_has_two_certificates() {
        let certs = decompositions(12, Family::Alt).unwrap();
        assert_eq!(certs.len(), 2);
        assert_eq!(certs[0].p, 3);
        assert_eq!(certs[0].k, 2);
        assert_eq!(certs[0].coefficients, vec![0, 1, 1]);
        assert!(certs[0].alt_condition);
        assert_eq!(certs[0].shape.parts(), &[9, 3]);
        assert_eq!(certs[0].render_sum(), "12 = 3^2 + 3^1");
        assert_eq!(certs[1].p, 11);
        assert_eq!(certs[1].shape.parts(), &[11, 1]);
        assert_eq!(certs[1].render_sum(), "12 = 11^1 + 11^0");
    }

    #[test]
    fn six_has_no_decomposition() {
        assert!(decompositions(6, Family::Alt).unwrap().is_empty());
        assert!(decompositions(6, Family::Sym).unwrap().is_empty());
    }

    #[test]
    fn eight_for_sym() {
        let certs = decompositions(8, Family::Sym).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!((certs[0].p, certs[0].k), (7, 1));
        assert_eq!(certs[0].shape.parts(), &[7, 1]);
    }

    #[test]
    fn certificates_have_prime_power_order_and_distinct_parts() {
        for n in 3..80 {
            for c in decompositions(n, Family::Sym).unwrap() {
                assert_eq!(c.shape.order(), c.p.pow(c.k));
                assert!(c.shape.parts().windows(2).all(|w| w[0] > w[1]));
                let sum: u64 = c
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| a as u64 * c.p.pow(i as u32))
                    .sum();
                assert_eq!(sum, n as u64);
                assert_eq!(*c.coefficients.last().unwrap(), 1);
            }
        }
    }

    #[test]
    fn probabilities() {
        let sym7 = odd_degree_probability(GroupSpec::sym(7).unwrap()).unwrap();
        assert_eq!((sym7.numerator, sym7.denominator), (720, 5039));
        let alt7 = odd_degree_probability(GroupSpec::alt(7).unwrap()).unwrap();
        assert_eq!((alt7.numerator, alt7.denominator), (720, 2519));
        let alt8 = odd_degree_probability(GroupSpec::alt(8).unwrap()).unwrap();
        assert_eq!((alt8.numerator, alt8.denominator), (5760, 20159));
    }

    #[test]
    fn probability_matches_p_cycle_count() {
        for n in [3, 4, 7, 8, 11, 12, 19, 20, 23, 24] {
            for spec in [GroupSpec::alt(n).unwrap(), GroupSpec::sym(n).unwrap()] {
                let report = odd_degree_probability(spec).unwrap();
                let count = p_cycle_count(n, report.p as usize);
                let direct = BigRational::new(BigInt::from(count), BigInt::from(spec.order() - 1));
                assert_eq!(report.as_rational(), direct, "{spec}");
            }
        }
    }

    #[test]
    fn probability_preconditions() {
        assert!(matches!(
            odd_degree_probability(GroupSpec::sym(5).unwrap()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            odd_degree_probability(GroupSpec::alt(6).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn probability_decreases_along_primes() {
        let values: Vec<BigRational> = [7, 11, 19, 23]
            .into_iter()
            .map(|n| {
                odd_degree_probability(GroupSpec::sym(n).unwrap())
                    .unwrap()
                    .as_rational()
            })
            .collect();
        assert!(values.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn square_free_parts() {
        assert_eq!(square_free_part(1), 1);
        assert_eq!(square_free_part(2), 2);
        assert_eq!(square_free_part(12), 6);
        assert_eq!(square_free_part(49), 7);
    }
}
