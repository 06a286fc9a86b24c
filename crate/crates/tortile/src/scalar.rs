//! Exact arithmetic in cyclotomic number fields, plus a floating-point mode.
//!
//! A [`Cyclotomic`] is an element of Q(zeta_N) stored as coordinates in the
//! power basis `1, z, ..., z^(phi(N)-1)` modulo the N-th cyclotomic
//! polynomial. Arithmetic promotes operands to the least common conductor;
//! equality compares coordinates there (the power basis is a basis, so the
//! reduced representation at a fixed conductor is unique). Canonicalization
//! to the minimal conductor is applied when printing.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};
use thiserror::Error;

/// Arbitrary-precision rational: always in lowest terms, denominator > 0.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("scalar parse error: {0}")]
    Parse(String),
    #[error("scalar cannot be serialized exactly in this mode")]
    Inexact,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Euler totient of n.
pub fn phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            ds.push(d);
        }
    }
    ds
}

/// Dense polynomial over Q, little-endian coefficients.
type Poly = Vec<Rational>;

fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] += ca * cb;
        }
    }
    poly_trim(&mut out);
    out
}

/// Division with remainder by a monic divisor.
fn poly_divmod(num: &Poly, den: &Poly) -> (Poly, Poly) {
    let mut rem = num.clone();
    poly_trim(&mut rem);
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one(), "divisor must be monic");
    if rem.len() - 1 < dd || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    while rem.len() > dd || (rem.len() == dd + 1 && !rem[dd].is_zero()) {
        if rem.len() < dd + 1 {
            break;
        }
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap().clone();
        if c.is_zero() {
            rem.pop();
            continue;
        }
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            let v = dc * &c;
            rem[k + i] -= v;
        }
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0].is_zero() {
            break;
        }
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// N-th cyclotomic polynomial, memoized.
fn cyclotomic_poly(n: u64) -> Poly {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, Poly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = if n == 1 {
        vec![rat(-1), rat(1)]
    } else {
        // (x^n - 1) / prod_{d|n, d<n} Phi_d
        let mut num = vec![Rational::zero(); (n + 1) as usize];
        num[0] = rat(-1);
        num[n as usize] = rat(1);
        let mut den = vec![rat(1)];
        for d in divisors(n) {
            if d < n {
                den = poly_mul(&den, &cyclotomic_poly(d));
            }
        }
        let (q, r) = poly_divmod(&num, &den);
        debug_assert!(r.iter().all(|c| c.is_zero()));
        q
    };
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Exact element of the cyclotomic field Q(zeta_N).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    /// Length phi(conductor), coordinates in the power basis mod Phi_N.
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![Rational::one()] }
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Reduce a polynomial in zeta_N to the power basis of Q(zeta_N).
    fn reduce_at(conductor: u64, poly: Poly) -> Self {
        let modp = cyclotomic_poly(conductor);
        let (_, mut rem) = poly_divmod(&poly, &modp);
        let dim = phi(conductor) as usize;
        rem.resize(dim, Rational::zero());
        Cyclotomic { conductor, coeffs: rem }
    }

    /// zeta_N^k. The pair (k mod N, N) is reduced by their gcd first, so
    /// `root_of_unity(2, 8)` is stored at conductor 4.
    pub fn root_of_unity(k: i64, n: u64) -> Result<Self, ScalarError> {
        if n == 0 {
            return Err(ScalarError::ZeroConductor);
        }
        let kk = k.rem_euclid(n as i64) as u64;
        if kk == 0 {
            return Ok(Self::one());
        }
        let g = num::integer::gcd(kk, n);
        let (kk, n) = (kk / g, n / g);
        let mut poly = vec![Rational::zero(); kk as usize + 1];
        poly[kk as usize] = Rational::one();
        Ok(Self::reduce_at(n, poly))
    }

    /// Image in Q(zeta_M) for conductor | M (substitute z -> z^(M/N)).
    fn promote(&self, m: u64) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        debug_assert_eq!(m % self.conductor, 0);
        let step = (m / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); self.coeffs.len() * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] += c;
            }
        }
        Self::reduce_at(m, poly)
    }

    fn common(&self, other: &Self) -> (Self, Self, u64) {
        let m = num::integer::lcm(self.conductor, other.conductor);
        (self.promote(m), other.promote(m), m)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, m) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { conductor: m, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b, m) = self.common(other);
        Self::reduce_at(m, poly_mul(&a.coeffs, &b.coeffs))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // Extended Euclid in Q[x] against the (irreducible) cyclotomic
        // polynomial: a*self + b*Phi = 1, so a is the inverse.
        let modp = cyclotomic_poly(self.conductor);
        let mut r0 = modp;
        let mut r1 = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Poly = vec![Rational::zero()];
        let mut s1: Poly = vec![Rational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            // make r1 monic for poly_divmod
            let lead = r1.last().unwrap().clone();
            let monic: Poly = r1.iter().map(|c| c / &lead).collect();
            let (q, r) = poly_divmod(&r0, &monic);
            // real quotient is q / lead
            let q: Poly = q.iter().map(|c| c / &lead).collect();
            let qs1 = poly_mul(&q, &s1);
            let mut new_s = s0.clone();
            new_s.resize(new_s.len().max(qs1.len()), Rational::zero());
            for (i, c) in qs1.iter().enumerate() {
                new_s[i] -= c;
            }
            poly_trim(&mut new_s);
            r0 = r1;
            s0 = s1;
            r1 = r;
            s1 = new_s;
        }
        // r0 is the (constant) gcd
        debug_assert!(r0.len() == 1 && !r0[0].is_zero());
        let scale = Rational::one() / &r0[0];
        let inv_poly: Poly = s0.iter().map(|c| c * &scale).collect();
        Ok(Self::reduce_at(self.conductor, inv_poly))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        let (a, b, _) = self.common(other);
        Ok(a.mul(&b.inv()?))
    }

    /// Image under the automorphism zeta -> zeta^(-1) (complex conjugation).
    pub fn conjugate(&self) -> Self {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        let mut poly = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((n as usize) - i) % n as usize;
                poly[e] += c;
            }
        }
        Self::reduce_at(n, poly)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.eq_exact(&Self::one())
    }

    fn eq_exact(&self, other: &Self) -> bool {
        let (a, b, _) = self.common(other);
        a.coeffs == b.coeffs
    }

    /// Is this element fixed by every automorphism zeta -> zeta^j with
    /// j = 1 mod d? Equivalent to lying in Q(zeta_d).
    fn lies_in(&self, d: u64) -> bool {
        let n = self.conductor;
        for j in 1..n {
            if num::integer::gcd(j, n) != 1 || j % d != 1 {
                continue;
            }
            if !self.galois(j).eq_exact(self) {
                return false;
            }
        }
        true
    }

    /// Galois automorphism zeta -> zeta^j, gcd(j, N) = 1.
    fn galois(&self, j: u64) -> Self {
        let n = self.conductor;
        let mut poly = vec![Rational::zero(); ((n as usize - 1) * (j as usize)).max(1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(i * j as usize) % n as usize] += c;
            }
        }
        Self::reduce_at(n, poly)
    }

    /// Rewrite at the smallest conductor containing the value.
    pub fn canonicalize(&self) -> Self {
        let n = self.conductor;
        for d in divisors(n) {
            if d == n {
                break;
            }
            if self.lies_in(d) {
                if let Some(v) = self.descend(d) {
                    return v;
                }
            }
        }
        self.clone()
    }

    /// Express the value in the power basis of Q(zeta_d), d | conductor.
    fn descend(&self, d: u64) -> Option<Self> {
        let dim_small = phi(d) as usize;
        let dim_big = phi(self.conductor) as usize;
        // columns: promoted basis vectors of Q(zeta_d)
        let mut cols = Vec::with_capacity(dim_small);
        for j in 0..dim_small {
            let mut poly = vec![Rational::zero(); j + 1];
            poly[j] = Rational::one();
            let v = Self::reduce_at(d, poly).promote(self.conductor);
            cols.push(v.coeffs);
        }
        // solve cols * x = self.coeffs by Gaussian elimination
        let mut aug: Vec<Vec<Rational>> = (0..dim_big)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..dim_small {
            let Some(p) = (prow..dim_big).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(prow, p);
            let lead = aug[prow][col].clone();
            for c in aug[prow].iter_mut() {
                *c /= &lead;
            }
            for r in 0..dim_big {
                if r != prow && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in 0..=dim_small {
                        let v = &aug[prow][c] * &f;
                        aug[r][c] -= v;
                    }
                }
            }
            pivots.push((prow, col));
            prow += 1;
        }
        // inconsistent rows mean the value does not lie in the subfield
        for r in prow..dim_big {
            if !aug[r][dim_small].is_zero() {
                return None;
            }
        }
        let mut coeffs = vec![Rational::zero(); dim_small];
        for (r, c) in pivots {
            coeffs[c] = aug[r][dim_small].clone();
        }
        Some(Cyclotomic { conductor: d, coeffs })
    }

    /// Numerical value, for the floating-point mode.
    pub fn to_complex(&self) -> num::complex::Complex64 {
        use num::complex::Complex64;
        use num::ToPrimitive;
        let n = self.conductor as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let arg = 2.0 * std::f64::consts::PI * (i as f64) / n;
            let cf = c.to_f64().unwrap_or_else(|| {
                c.numer().to_f64().unwrap() / c.denom().to_f64().unwrap()
            });
            acc += Complex64::new(arg.cos(), arg.sin()) * cf;
        }
        acc
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.eq_exact(other)
    }
}
impl Eq for Cyclotomic {}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Canonical form: minimal conductor, nonzero terms in increasing power
    /// order, each `q` or `q*z(N)^k`, joined by " + ".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonicalize();
        if c.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, q) in c.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            if i == 0 {
                terms.push(fmt_rational(q));
            } else {
                terms.push(format!("{}*z({})^{}", fmt_rational(q), c.conductor, i));
            }
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl std::str::FromStr for Cyclotomic {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: &str| ScalarError::Parse(format!("{m}: {s:?}"));
        let mut acc = Cyclotomic::zero();
        for raw in s.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (rat_part, z_part) = match term.split_once('*') {
                Some((a, b)) => (a.trim(), Some(b.trim())),
                None => {
                    if term.starts_with('z') {
                        ("1", Some(term))
                    } else {
                        (term, None)
                    }
                }
            };
            let q: Rational = rat_part
                .parse()
                .map_err(|_| err("bad rational"))?;
            let t = match z_part {
                None => Cyclotomic::from_rational(q),
                Some(z) => {
                    let rest = z.strip_prefix("z(").ok_or_else(|| err("expected z("))?;
                    let (n_str, after) = rest.split_once(')').ok_or_else(|| err("expected )"))?;
                    let n: u64 = n_str.trim().parse().map_err(|_| err("bad conductor"))?;
                    let k: i64 = match after.trim().strip_prefix('^') {
                        Some(e) => e.trim().parse().map_err(|_| err("bad exponent"))?,
                        None if after.trim().is_empty() => 1,
                        _ => return Err(err("trailing junk")),
                    };
                    Cyclotomic::from_rational(q).mul(&Cyclotomic::root_of_unity(k, n)?)
                }
            };
            acc = acc.add(&t);
        }
        Ok(acc)
    }
}

/// The scalar interface the whole engine is generic over.
///
/// `eq_scalar` is exact for [`Cyclotomic`] and tolerance-based for the
/// floating-point mode.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Result<Self, ScalarError>;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn eq_scalar(&self, other: &Self) -> bool;
    fn from_exact(c: &Cyclotomic) -> Self;
    /// Exact bundle-file representation, if one exists in this mode.
    fn to_exact_string(&self) -> Result<String, ScalarError>;
}

impl Scalar for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn add(&self, other: &Self) -> Self {
        Cyclotomic::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Cyclotomic::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Cyclotomic::mul(self, other)
    }
    fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Cyclotomic::div(self, other)
    }
    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn eq_scalar(&self, other: &Self) -> bool {
        self.eq_exact(other)
    }
    fn from_exact(c: &Cyclotomic) -> Self {
        c.clone()
    }
    fn to_exact_string(&self) -> Result<String, ScalarError> {
        Ok(self.to_string())
    }
}

/// Complex doubles compared within 1e-9, the fast checking mode.
#[derive(Clone, Copy, Debug)]
pub struct ApproxC64(pub num::complex::Complex64);

pub const FLOAT_TOLERANCE: f64 = 1e-9;

impl fmt::Display for ApproxC64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}+{:.12}i", self.0.re, self.0.im)
    }
}

impl PartialEq for ApproxC64 {
    fn eq(&self, other: &Self) -> bool {
        (self.0 - other.0).norm() <= FLOAT_TOLERANCE
    }
}

impl Scalar for ApproxC64 {
    fn zero() -> Self {
        ApproxC64(num::complex::Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        ApproxC64(num::complex::Complex64::new(1.0, 0.0))
    }
    fn add(&self, other: &Self) -> Self {
        ApproxC64(self.0 + other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        ApproxC64(self.0 - other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        ApproxC64(self.0 * other.0)
    }
    fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.0.norm() <= FLOAT_TOLERANCE {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(ApproxC64(self.0 / other.0))
    }
    fn neg(&self) -> Self {
        ApproxC64(-self.0)
    }
    fn conj(&self) -> Self {
        ApproxC64(self.0.conj())
    }
    fn is_zero(&self) -> bool {
        self.0.norm() <= FLOAT_TOLERANCE
    }
    fn eq_scalar(&self, other: &Self) -> bool {
        self == other
    }
    fn from_exact(c: &Cyclotomic) -> Self {
        ApproxC64(c.to_complex())
    }
    fn to_exact_string(&self) -> Result<String, ScalarError> {
        Err(ScalarError::Inexact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(k: i64, n: u64) -> Cyclotomic {
        Cyclotomic::root_of_unity(k, n).unwrap()
    }

    #[test]
    fn vanishing_sum_of_cube_roots() {
        let s = zeta(1, 3).add(&zeta(2, 3)).add(&Cyclotomic::one());
        assert!(s.is_zero());
    }

    #[test]
    fn eighth_root_squares_to_quarter_root() {
        assert_eq!(zeta(1, 8).mul(&zeta(1, 8)), zeta(1, 4));
        assert_eq!(zeta(2, 8), zeta(1, 4));
    }

    #[test]
    fn inverse_of_fifth_root() {
        let x = Cyclotomic::one().div(&zeta(1, 5)).unwrap();
        assert_eq!(x, zeta(4, 5));
    }

    #[test]
    fn conjugate_of_i() {
        let i = zeta(1, 4);
        assert_eq!(i.conjugate(), i.neg().canonicalize());
        assert_eq!(i.conjugate().mul(&i), Cyclotomic::one());
        assert_eq!(i.conjugate().conjugate(), i);
    }

    #[test]
    fn field_axioms_on_mixed_conductors() {
        let xs = [
            zeta(1, 3),
            zeta(1, 4),
            zeta(5, 8).add(&Cyclotomic::from_integer(2)),
            Cyclotomic::from_rational(Rational::new(BigInt::from(3), BigInt::from(7))),
            zeta(1, 5).sub(&zeta(3, 5)),
        ];
        for a in &xs {
            for b in &xs {
                for c in &xs {
                    let lhs = a.mul(&b.add(c));
                    let rhs = a.mul(b).add(&a.mul(c));
                    assert_eq!(lhs, rhs, "distributivity");
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)), "associativity");
                }
                assert!(a.sub(a).is_zero());
                if !b.is_zero() {
                    assert_eq!(a.div(b).unwrap().mul(b), *a, "division inverts");
                }
            }
        }
    }

    #[test]
    fn promotion_round_trips() {
        let x = zeta(1, 3).add(&Cyclotomic::from_integer(1));
        let promoted = x.promote(12);
        assert_eq!(promoted.conductor(), 12);
        assert_eq!(promoted, x);
        assert_eq!(promoted.canonicalize().conductor(), 3);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            Cyclotomic::one().div(&Cyclotomic::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn string_round_trip_is_exact() {
        let xs = [
            Cyclotomic::zero(),
            Cyclotomic::from_integer(-3),
            Cyclotomic::from_rational(Rational::new(BigInt::from(-2), BigInt::from(9))),
            zeta(1, 4),
            zeta(1, 4).neg(),
            zeta(3, 8).mul(&Cyclotomic::from_integer(2)).add(&zeta(1, 3)),
        ];
        for x in &xs {
            let s = x.to_string();
            let back: Cyclotomic = s.parse().unwrap();
            assert_eq!(&back, x, "round trip through {s:?}");
        }
    }

    #[test]
    fn sixth_root_canonicalizes_to_conductor_three() {
        let z6 = zeta(1, 6);
        assert_eq!(z6.canonicalize().conductor(), 3);
        assert_eq!(z6.pow(6).unwrap(), Cyclotomic::one());
        assert_eq!(z6, zeta(2, 3).neg());
    }

    #[test]
    fn float_mode_matches_exact_values() {
        let x = zeta(1, 8);
        let f = ApproxC64::from_exact(&x);
        let expected = num::complex::Complex64::new(
            std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_1_SQRT_2,
        );
        assert!((f.0 - expected).norm() < 1e-12);
    }
}
