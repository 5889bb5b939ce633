//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored as sparse rational combinations of the Zumbroich
//! basis of `Q(ζ_n)`. Every power `ζ_n^k` has a fixed expansion in that
//! basis, so reducing an arbitrary combination of roots of unity is a single
//! linear pass and equal field elements always have identical term lists.
//!
//! For `n = ∏ q` with `q = p^a`, an exponent `k` belongs to the basis when,
//! for every prime `p`, the leading base-`p` digit `d` of `k mod q` satisfies
//! `d ≠ 0` (odd `p`) or `d = 0` (`p = 2`). Bad exponents are rewritten with
//! `1 + ζ_p + … + ζ_p^{p-1} = 0` and `ζ_2 = -1`, where `ζ_p = ζ_n^{n/p}`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

struct Basis {
    conductor: u32,
    /// `expansion[k]` is `ζ_n^k` written in the basis; coefficients are ±1.
    expansion: Vec<Vec<(u32, i8)>>,
}

fn prime_powers(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

impl Basis {
    fn build(n: u32) -> Basis {
        let primes = prime_powers(n);
        let expansion = (0..n)
            .map(|k| {
                let mut cur: BTreeMap<u32, i32> = BTreeMap::from([(k, 1)]);
                for &(p, q) in &primes {
                    let step = n / p;
                    let top = q / p;
                    let mut next: BTreeMap<u32, i32> = BTreeMap::new();
                    for (e, s) in cur {
                        let digit = (e % q) / top;
                        let bad = if p == 2 { digit == 1 } else { digit == 0 };
                        if !bad {
                            *next.entry(e).or_default() += s;
                        } else if p == 2 {
                            *next.entry((e + step) % n).or_default() -= s;
                        } else {
                            for i in 1..p {
                                *next.entry((e + i * step) % n).or_default() -= s;
                            }
                        }
                    }
                    next.retain(|_, s| *s != 0);
                    cur = next;
                }
                cur.into_iter().map(|(e, s)| (e, s as i8)).collect()
            })
            .collect();
        Basis { conductor: n, expansion }
    }

    fn get(n: u32) -> Arc<Basis> {
        static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Basis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(b) = cache.read().unwrap().get(&n) {
            return b.clone();
        }
        let b = Arc::new(Basis::build(n));
        cache.write().unwrap().entry(n).or_insert(b).clone()
    }

    fn contains(&self, k: u32) -> bool {
        let e = &self.expansion[k as usize];
        e.len() == 1 && e[0] == (k, 1)
    }

    fn exponents(&self) -> Vec<u32> {
        (0..self.conductor).filter(|&k| self.contains(k)).collect()
    }
}

/// Exponents of the Zumbroich basis of `Q(ζ_n)`, ascending.
pub fn basis_exponents(n: u32) -> Vec<u32> {
    assert!(n > 0, "conductor must be positive");
    Basis::get(n).exponents()
}

/// An element of `Q(ζ_n)` in canonical form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    /// Nonzero coefficients on basis exponents, sorted by exponent.
    terms: Vec<(u32, BigRational)>,
}

impl Cyclotomic {
    pub fn zero(conductor: u32) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        Cyclotomic { conductor, terms: Vec::new() }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_integer(conductor, 1)
    }

    pub fn from_integer(conductor: u32, value: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(conductor: u32, value: BigRational) -> Self {
        Self::from_raw(conductor, [(0, value)])
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let n = conductor as i64;
        Self::from_raw(conductor, [(k.rem_euclid(n) as u32, BigRational::one())])
    }

    /// Builds `Σ c · ζ_n^k` from arbitrary (possibly repeated) exponents.
    pub fn from_raw<I>(conductor: u32, raw: I) -> Self
    where
        I: IntoIterator<Item = (u32, BigRational)>,
    {
        assert!(conductor > 0, "conductor must be positive");
        let mut dense = vec![BigRational::zero(); conductor as usize];
        for (k, c) in raw {
            dense[(k % conductor) as usize] += c;
        }
        Self::reduce_dense(conductor, dense)
    }

    fn reduce_dense(conductor: u32, raw: Vec<BigRational>) -> Self {
        let basis = Basis::get(conductor);
        let mut out = vec![BigRational::zero(); conductor as usize];
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(e, s) in &basis.expansion[k] {
                if s > 0 {
                    out[e as usize] += &c;
                } else {
                    out[e as usize] -= &c;
                }
            }
        }
        let terms = out
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c))
            .collect();
        Cyclotomic { conductor, terms }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> &[(u32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-expresses the value in `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u32) -> Cyclotomic {
        assert!(m.is_multiple_of(self.conductor), "cannot embed conductor {} into {m}", self.conductor);
        if m == self.conductor {
            return self.clone();
        }
        let f = m / self.conductor;
        Self::from_raw(m, self.terms.iter().map(|(k, c)| (k * f, c.clone())))
    }

    fn common(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = a.conductor.lcm(&b.conductor);
        (a.embed(m), b.embed(m))
    }

    /// The Galois automorphism `ζ ↦ ζ^a`; `a` must be coprime to the conductor.
    pub fn galois(&self, a: i64) -> Cyclotomic {
        let n = self.conductor as i64;
        assert!(a.gcd(&n) == 1, "{a} is not a unit modulo {n}");
        let a = a.rem_euclid(n) as u64;
        Self::from_raw(
            self.conductor,
            self.terms
                .iter()
                .map(|(k, c)| (((*k as u64 * a) % n as u64) as u32, c.clone())),
        )
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Cyclotomic {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        let one = Cyclotomic::one(self.conductor);
        let (e0, s0) = &one.terms[0];
        let q = self
            .terms
            .iter()
            .find(|(k, _)| k == e0)
            .map(|(_, c)| c / s0)?;
        (*self == one.scale(&q)).then_some(q)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn is_rational_integer(&self) -> Option<i64> {
        self.to_integer().and_then(|z| z.to_i64())
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        if q.is_zero() {
            return Cyclotomic::zero(self.conductor);
        }
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, z: i64) -> Cyclotomic {
        self.scale(&BigRational::from_integer(BigInt::from(z)))
    }

    pub fn div_rational(&self, q: &BigRational) -> Result<Cyclotomic> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&q.recip()))
    }

    /// Multiplicative inverse, via the product of all nontrivial Galois conjugates.
    pub fn inverse(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Cyclotomic::from_rational(self.conductor, q.recip()));
        }
        let n = self.conductor as i64;
        let mut others = Cyclotomic::one(self.conductor);
        for a in 2..n {
            if a.gcd(&n) == 1 {
                others = &others * &self.galois(a);
            }
        }
        let norm = (self * &others)
            .to_rational()
            .ok_or_else(|| Error::Defect("field norm is not rational".into()))?;
        others.div_rational(&norm)
    }

    pub fn checked_div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        if let Some(q) = other.to_rational() {
            return self.div_rational(&q);
        }
        Ok(self * &other.inverse()?)
    }

    /// Total order on canonical forms, used for deterministic sorting.
    pub fn cmp_canonical(&self, other: &Cyclotomic) -> Ordering {
        self.conductor.cmp(&other.conductor).then_with(|| {
            for (a, b) in self.terms.iter().zip(&other.terms) {
                let o = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.terms.len().cmp(&other.terms.len())
        })
    }

    /// `[exponent, numerator, denominator]` triples in basis order.
    pub fn to_triples(&self) -> Vec<(u32, String, String)> {
        self.terms
            .iter()
            .map(|(k, c)| (*k, c.numer().to_string(), c.denom().to_string()))
            .collect()
    }

    /// Smallest `d` with the value in `Q(ζ_d)`, and the value re-expressed there.
    pub fn reduce_conductor(&self) -> Cyclotomic {
        if let Some(q) = self.to_rational() {
            return Cyclotomic::from_rational(1, q);
        }
        let n = self.conductor;
        let units: Vec<u32> = (1..n).filter(|a| a.gcd(&n) == 1).collect();
        for d in (1..n).filter(|d| n.is_multiple_of(*d) && d % 4 != 2) {
            let fixed = units
                .iter()
                .filter(|&&a| a % d == 1 % d)
                .all(|&a| self.galois(a as i64) == *self);
            if fixed {
                if let Some(v) = self.express_in(d) {
                    return v;
                }
            }
        }
        self.clone()
    }

    /// Solves for coordinates over the basis of `Q(ζ_d)`, `d | n`.
    fn express_in(&self, d: u32) -> Option<Cyclotomic> {
        let n = self.conductor;
        let small = basis_exponents(d);
        let big = basis_exponents(n);
        let row_of: HashMap<u32, usize> = big.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let cols = small.len();
        // augmented matrix: rows indexed by the basis of Q(ζ_n)
        let mut m = vec![vec![BigRational::zero(); cols + 1]; big.len()];
        for (j, &e) in small.iter().enumerate() {
            let img = Cyclotomic::root_of_unity(d, e as i64).embed(n);
            for (k, c) in img.terms {
                m[row_of[&k]][j] = c;
            }
        }
        for (k, c) in &self.terms {
            m[row_of[k]][cols] = c.clone();
        }
        let mut row = 0;
        let mut pivots = Vec::new();
        for col in 0..cols {
            let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..m.len() {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..=cols {
                        let t = &m[row][c] * &f;
                        m[r][c] -= t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if m[row..].iter().any(|r| !r[cols].is_zero()) {
            return None;
        }
        let raw = pivots
            .iter()
            .enumerate()
            .map(|(r, &c)| (small[c], m[r][cols].clone()));
        Some(Cyclotomic::from_raw(d, raw))
    }

    fn add_same(&self, other: &Cyclotomic, negate: bool) -> Cyclotomic {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Cyclotomic { conductor: self.conductor, terms: out }
    }

    fn mul_same(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero(self.conductor);
        }
        let n = self.conductor;
        let mut raw = vec![BigRational::zero(); n as usize];
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                raw[((i + j) % n) as usize] += a * b;
            }
        }
        Self::reduce_dense(n, raw)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.terms == other.terms
        } else {
            let (a, b) = Cyclotomic::common(self, other);
            a.terms == b.terms
        }
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            self.add_same(rhs, false)
        } else {
            let (a, b) = Cyclotomic::common(self, rhs);
            a.add_same(&b, false)
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            self.add_same(rhs, true)
        } else {
            let (a, b) = Cyclotomic::common(self, rhs);
            a.add_same(&b, true)
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            self.mul_same(rhs)
        } else {
            let (a, b) = Cyclotomic::common(self, rhs);
            a.mul_same(&b)
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        let mut acc: Option<Cyclotomic> = None;
        for x in iter {
            acc = Some(match acc {
                None => x,
                Some(a) => &a + &x,
            });
        }
        acc.unwrap_or_else(|| Cyclotomic::zero(1))
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// GAP-style display: `E(n)^k` is `ζ_n^k`, shown at the smallest conductor.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{}", fmt_rational(&q));
        }
        let v = self.reduce_conductor();
        let n = v.conductor;
        let mut s = String::new();
        for (i, (k, c)) in v.terms.iter().enumerate() {
            let root = match k {
                0 => String::new(),
                1 => format!("E({n})"),
                _ => format!("E({n})^{k}"),
            };
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            if root.is_empty() {
                s.push_str(&fmt_rational(&mag));
            } else if mag.is_one() {
                s.push_str(&root);
            } else {
                s.push_str(&format!("{}*{}", fmt_rational(&mag), root));
            }
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn basis_sizes_match_euler_phi() {
        for (n, phi) in [(1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (8, 4), (12, 4), (15, 8), (24, 8), (60, 16), (840, 192)] {
            assert_eq!(basis_exponents(n).len(), phi, "n = {n}");
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_integer(4, -1));
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        assert_eq!(&z(3, 1) + &z(3, 2), Cyclotomic::from_integer(3, -1));
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        let s: Cyclotomic = (0..5).map(|k| z(5, k)).sum();
        assert!(s.is_zero());
    }

    #[test]
    fn conjugation() {
        let q = Cyclotomic::from_rational(12, BigRational::new(3.into(), 7.into()));
        assert_eq!(q.conjugate(), q);
        assert_eq!(z(4, 1).conjugate(), -z(4, 1));
        let r = &z(8, 1) + &z(8, -1);
        assert_eq!(r.conjugate(), r);
        assert!(r.is_real());
    }

    #[test]
    fn reality_and_integrality_predicates() {
        assert!(!z(3, 1).is_real());
        assert_eq!(Cyclotomic::from_integer(7, -2).is_rational_integer(), Some(-2));
        let w = &z(5, 1) + &z(5, 4);
        assert!(w.is_real());
        assert_eq!(w.is_rational_integer(), None);
    }

    #[test]
    fn embedding_is_consistent() {
        assert_eq!(z(3, 1).embed(6), z(6, 2));
        assert_eq!(z(3, 1), z(6, 2));
        assert_eq!(z(4, 1).embed(24), z(24, 6));
    }

    #[test]
    fn division() {
        let a = &z(5, 1) + &Cyclotomic::from_integer(5, 2);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Cyclotomic::one(5));
        assert!(matches!(Cyclotomic::zero(3).inverse(), Err(Error::DivisionByZero)));
        let b = a.checked_div(&a).unwrap();
        assert_eq!(b, Cyclotomic::one(5));
    }

    #[test]
    fn display_uses_smallest_conductor() {
        assert_eq!(Cyclotomic::from_integer(12, -3).to_string(), "-3");
        assert_eq!(z(24, 8).to_string(), "E(3)");
        assert_eq!(z(4, 1).scale_int(2).to_string(), "2*E(4)");
        let half = Cyclotomic::from_rational(6, BigRational::new(1.into(), 2.into()));
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn reduce_conductor_finds_real_subfield() {
        let r = &z(8, 1) + &z(8, 7); // sqrt 2
        assert_eq!(r.reduce_conductor().conductor(), 8);
        let w = &z(12, 4) - &z(12, 8); // sqrt(-3)
        assert_eq!(w.reduce_conductor().conductor(), 3);
    }
}
