//! Univariate polynomials with integer coefficients.
//!
//! A [`Poly`] stores its coefficients constant term first; the zero
//! polynomial is the empty sequence. Everything here is exact: GCDs use a
//! primitive pseudo-remainder sequence, root counting uses Sturm chains, and
//! rational points are evaluated by clearing denominators.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::arith::{self, int, BigRat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from small coefficients, constant term first.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::from_i64s(&[0, 1])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    /// `den * x^k - num` for the rational `num/den`.
    pub fn binomial(k: usize, q: &BigRat) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = -q.numer().clone();
        coeffs[k] += q.denom();
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("degree of the zero polynomial")
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    fn lc(&self) -> &BigInt {
        self.leading().expect("leading coefficient of the zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Poly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.lc().is_positive() && self.content().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Exact value at a rational point.
    pub fn eval(&self, q: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * q + int(c.clone()))
    }

    /// Sign of the value at a rational point, computed over the integers.
    pub fn sign_at(&self, q: &BigRat) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        // b^n p(a/b) = sum c_i a^i b^(n-i), and b^n > 0
        let (a, b) = (q.numer(), q.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            // Horner on the homogenised form
            acc = acc * a + c * &bpow;
            if !b.is_one() {
                bpow *= b;
            }
        }
        acc.sign_cmp()
    }

    /// Long division by `d` when the quotient is known to have integer
    /// coefficients. Panics if some step is not exact.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Poly::zero();
        }
        let dd = d.deg();
        assert!(self.deg() >= dd, "inexact polynomial division");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            let (q, r) = top.div_rem(d.lc());
            assert!(r.is_zero(), "inexact polynomial division");
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Poly::new(quot)
    }

    /// Pseudo-remainder of `self` by `d`, together with the number `k` of
    /// multiplications by `lc(d)`: the result is `lc(d)^k * (self mod d)`.
    fn pseudo_rem(&self, d: &Poly) -> (Poly, usize) {
        let dd = d.deg();
        let mut rem = self.clone();
        let mut k = 0;
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let lc_r = rem.lc().clone();
            let shift = rd - dd;
            let mut coeffs: Vec<BigInt> = rem.coeffs.iter().map(|c| c * d.lc()).collect();
            for (i, c) in d.coeffs.iter().enumerate() {
                coeffs[shift + i] -= &lc_r * c;
            }
            rem = Poly::new(coeffs);
            k += 1;
        }
        (rem, k)
    }

    /// Primitive GCD with positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).0.primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Primitive polynomial with the same roots, all simple.
    pub fn square_free(&self) -> Poly {
        assert!(!self.is_zero(), "square-free part of the zero polynomial");
        if self.is_constant() {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.primitive().div_exact(&g).primitive()
    }

    /// `1 + max |a_i| / |a_n|`; every real root lies strictly inside `(-B, B)`.
    pub fn cauchy_bound(&self) -> BigRat {
        assert!(self.degree().is_some_and(|d| d >= 1), "cauchy bound of a constant");
        let n = self.deg();
        let m = self.coeffs[..n].iter().map(|c| c.abs()).max().unwrap_or_default();
        BigRat::one() + BigRat::new(m, self.lc().abs())
    }

    /// Removes the factor `x^k` for the largest possible `k`, returning `k`.
    pub fn strip_x_power(&self) -> (usize, Poly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Poly::new(self.coeffs[k..].to_vec()))
    }

    /// Every rational `a/b` in lowest terms with `a | a0`, `b | an` and
    /// `lo <= a/b <= hi`, where `a0` is the constant term after removing
    /// powers of `x` (with `0` added explicitly when `x` divides `p`).
    ///
    /// Ordered by absolute value, negative first on ties.
    pub fn rational_root_candidates(&self, lo: &BigRat, hi: &BigRat) -> Vec<BigRat> {
        assert!(!self.is_zero(), "rational root candidates of the zero polynomial");
        let mut out = BTreeSet::new();
        let (k, q) = self.strip_x_power();
        let zero = BigRat::zero();
        if k > 0 && *lo <= zero && zero <= *hi {
            out.insert(RatKey(zero));
        }
        if lo > hi || q.is_constant() {
            return out.into_iter().map(|k| k.0).collect();
        }
        let a0 = q.coeff(0);
        let an = q.lc().clone();
        let mut a0_divisors: Option<Vec<BigInt>> = None;
        let mut a0_count: Option<BigInt> = None;
        for b in arith::divisors(&an) {
            let br = int(b.clone());
            let from = arith::ceil(&(lo * &br));
            let to = arith::floor(&(hi * &br));
            if from > to {
                continue;
            }
            let span = &to - &from + 1;
            let push = |a: BigInt, out: &mut BTreeSet<RatKey>| {
                if !a.is_zero() && a.gcd(&b).is_one() && (&a0 % &a).is_zero() {
                    out.insert(RatKey(BigRat::new(a, b.clone())));
                }
            };
            // factoring a word-sized a0 is cheap; larger ones only when the scan would be long
            let scan = (a0.bits() > 64 && span <= BigInt::from(4096)) || {
                let count = a0_count
                    .get_or_insert_with(|| BigInt::from(arith::divisor_count(&a0)));
                span <= &*count * 2
            };
            if scan {
                let mut a = from;
                while a <= to {
                    push(a.clone(), &mut out);
                    a += 1;
                }
            } else {
                let divs = a0_divisors.get_or_insert_with(|| arith::divisors(&a0));
                for d in divs.iter() {
                    for a in [d.clone(), -d] {
                        if a >= from && a <= to {
                            push(a, &mut out);
                        }
                    }
                }
            }
        }
        out.into_iter().map(|k| k.0).collect()
    }

    /// Eisenstein's criterion: some prime divides every non-leading
    /// coefficient, does not divide the leading one, and its square does
    /// not divide the constant term. Returns the prime, or `None` when the
    /// criterion does not apply (which says nothing about reducibility).
    pub fn eisenstein_prime(&self) -> Option<BigInt> {
        let n = self.degree()?;
        if n == 0 {
            return None;
        }
        let g = self.coeffs[..n].iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() || g.is_one() {
            return None;
        }
        let a0 = &self.coeffs[0];
        arith::factorize(g.magnitude())
            .into_iter()
            .map(|(t, _)| BigInt::from(t))
            .find(|t| !(self.lc() % t).is_zero() && !(a0 % (t * t)).is_zero())
    }

    pub fn eisenstein_irreducible(&self) -> bool {
        self.eisenstein_prime().is_some()
    }

    /// A square-free primitive polynomial vanishing at `b^n` for every
    /// (complex) root `b` of `self`.
    ///
    /// Power sums of the roots are obtained from Newton's identities; the
    /// sums of index `n, 2n, ..., mn` are the power sums of the `n`-th powers,
    /// from which the elementary symmetric functions are recovered.
    pub fn power_carrier(&self, n: u32) -> Poly {
        assert!(!self.is_zero(), "power carrier of the zero polynomial");
        assert!(n >= 1, "power carrier needs n >= 1");
        if n == 1 || self.is_constant() {
            return self.square_free();
        }
        let m = self.deg();
        let lc = int(self.lc().clone());
        // monic coefficients c_0 .. c_{m-1}
        let c: Vec<BigRat> = self.coeffs[..m].iter().map(|a| int(a.clone()) / &lc).collect();
        let total = m * n as usize;
        let mut sums = vec![BigRat::zero(); total + 1];
        sums[0] = int(m);
        for k in 1..=total {
            let mut s = BigRat::zero();
            for i in 1..=m.min(k - 1) {
                s += &c[m - i] * &sums[k - i];
            }
            if k <= m {
                s += &c[m - k] * int(k);
            }
            sums[k] = -s;
        }
        let q: Vec<&BigRat> = (1..=m).map(|j| &sums[j * n as usize]).collect();
        let mut e = vec![BigRat::one()];
        for j in 1..=m {
            let mut s = BigRat::zero();
            for i in 1..=j {
                let term = &e[j - i] * q[i - 1];
                if i % 2 == 1 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            e.push(s / int(j));
        }
        // y^m - e1 y^(m-1) + e2 y^(m-2) - ...
        let mut coeffs_q = vec![BigRat::zero(); m + 1];
        for (j, ej) in e.iter().enumerate() {
            coeffs_q[m - j] = if j % 2 == 0 { ej.clone() } else { -ej.clone() };
        }
        let den = coeffs_q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let coeffs = coeffs_q
            .iter()
            .map(|c| (c * int(den.clone())).to_integer())
            .collect();
        Poly::new(coeffs).square_free()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| Value::String(c.to_string())).collect())
    }

    pub fn from_json(v: &Value) -> Option<Poly> {
        let arr = v.as_array()?;
        let coeffs = arr
            .iter()
            .map(|c| c.as_str()?.parse::<BigInt>().ok())
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::new(coeffs))
    }

    /// Pretty form in the variable `var`, e.g. `x^3 - 11`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }
}

/// Orders rationals by absolute value, negative before positive.
#[derive(PartialEq, Eq)]
struct RatKey(BigRat);

impl Ord for RatKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .abs()
            .cmp(&other.0.abs())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for RatKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...` of a square-free polynomial,
/// each element scaled by a positive constant to stay in `Z[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    /// Chain of the square-free part of `p`.
    pub fn new(p: &Poly) -> Self {
        let first = p.square_free();
        let mut chain = vec![first.clone()];
        if !first.is_constant() {
            chain.push(first.derivative().primitive());
            loop {
                let n = chain.len();
                let (a, b) = (&chain[n - 2], &chain[n - 1]);
                if b.is_constant() {
                    break;
                }
                let (r, k) = a.pseudo_rem(b);
                if r.is_zero() {
                    break;
                }
                // r = lc(b)^k * rem; undo a negative multiplier
                let flip = b.lc().is_negative() && k % 2 == 1;
                let next = r.primitive();
                let r_lc_neg = r.lc().is_negative();
                // primitive() forced a positive leading coefficient; restore -sign(rem)
                let rem_neg = r_lc_neg != flip;
                chain.push(if rem_neg { next } else { -&next });
            }
        }
        SturmChain { chain }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.chain
    }

    /// The square-free polynomial whose roots the chain counts.
    pub fn first(&self) -> &Poly {
        &self.chain[0]
    }

    fn variations_at(&self, q: &BigRat) -> usize {
        count_variations(self.chain.iter().map(|p| p.sign_at(q)))
    }

    /// Distinct real roots in `(lo, hi)`; neither endpoint may be a root.
    pub fn count_roots_in(&self, lo: &BigRat, hi: &BigRat) -> Result<usize> {
        for e in [lo, hi] {
            if self.first().sign_at(e) == Ordering::Equal {
                return Err(Error::EndpointIsRoot(e.to_string()));
            }
        }
        if lo >= hi {
            return Ok(0);
        }
        Ok(self.variations_at(lo) - self.variations_at(hi))
    }

    /// Distinct real roots in `(lo, hi]`. Endpoints may be roots: at a root
    /// the chain's variation count equals the count just to its right.
    pub fn count_roots_half_open(&self, lo: &BigRat, hi: &BigRat) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Number of distinct real roots.
    pub fn count_all_roots(&self) -> usize {
        let at_neg_inf = self.chain.iter().map(|p| {
            let s = p.lc().sign_cmp();
            if p.deg() % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        });
        let at_pos_inf = self.chain.iter().map(|p| p.lc().sign_cmp());
        count_variations(at_neg_inf) - count_variations(at_pos_inf)
    }
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut v = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Disjoint ordered intervals `(lo, hi)`, each containing exactly one real
/// root of `p` with neither endpoint a root, covering all real roots.
pub fn isolate_real_roots(p: &Poly) -> Result<Vec<(BigRat, BigRat)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(p);
    let b = chain.first().cauchy_bound();
    let (lo, hi) = (-b.clone(), b);
    let total = chain.count_roots_in(&lo, &hi)?;
    let mut out = Vec::with_capacity(total);
    bisect(&chain, lo, hi, total, &mut out);
    Ok(out)
}

fn bisect(chain: &SturmChain, lo: BigRat, hi: BigRat, count: usize, out: &mut Vec<(BigRat, BigRat)>) {
    match count {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = split_point(chain.first(), &lo, &hi);
            let left = chain
                .count_roots_in(&lo, &mid)
                .expect("split point avoids roots");
            bisect(chain, lo, mid.clone(), left, out);
            bisect(chain, mid, hi, count - left, out);
        }
    }
}

/// Midpoint of `(lo, hi)`, nudged towards `hi` by halving steps until it
/// is not a root of `p`.
pub(crate) fn split_point(p: &Poly, lo: &BigRat, hi: &BigRat) -> BigRat {
    let half = (hi - lo) / int(2);
    let mid = lo + &half;
    let mut step = half;
    let mut m = mid.clone();
    while p.sign_at(&m) == Ordering::Equal {
        step /= int(2);
        m = &mid + &step;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[-2, 0, 1]).eval(&int(2)), int(2));
        assert_eq!(p(&[-2, 0, 1]).eval(&int(0)), int(-2));
        assert_eq!(p(&[-121, 0, 0, 1]).eval(&int(11)), int(1210));
        assert_eq!(p(&[1, -3, 2]).sign_at(&rat(3, 4)), Ordering::Less);
        assert_eq!(p(&[1, -3, 2]).sign_at(&rat(1, 2)), Ordering::Equal);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[-2, 0, 1]).gcd(&p(&[2, 0, 1])), p(&[1]));
        assert_eq!(p(&[-2, 0, 2]).gcd(&p(&[-4, 4])), p(&[-1, 1]));
        assert_eq!(Poly::zero().gcd(&p(&[3, -6])), p(&[-1, 2]));
    }

    #[test]
    fn square_free_examples() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        assert_eq!(p(&[2, -3, 0, 1]).square_free(), p(&[-2, 1, 1]));
        assert_eq!(p(&[-2, 0, 1]).square_free(), p(&[-2, 0, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).square_free(), p(&[0, 1]));
        assert_eq!(p(&[0, 0, 0, -5]).square_free(), p(&[0, 1]));
    }

    #[test]
    fn sturm_counts() {
        let c = SturmChain::new(&p(&[-2, 0, 1]));
        assert_eq!(c.count_roots_in(&int(-2), &int(2)).unwrap(), 2);
        let c = SturmChain::new(&p(&[1, 0, 1]));
        assert_eq!(c.count_roots_in(&int(-10), &int(10)).unwrap(), 0);
        let c = SturmChain::new(&p(&[-10, 0, 0, 1]));
        assert_eq!(c.count_roots_in(&int(2), &int(3)).unwrap(), 1);
        assert_eq!(c.count_all_roots(), 1);
        let c = SturmChain::new(&p(&[-1, 0, 1]));
        assert!(matches!(c.count_roots_in(&int(1), &int(3)), Err(Error::EndpointIsRoot(_))));
    }

    #[test]
    fn sturm_chain_ends_in_constant() {
        let c = SturmChain::new(&p(&[3, -1, 0, 4, -2, 1]));
        assert!(c.polys().last().unwrap().is_constant());
        assert!(!c.polys().last().unwrap().is_zero());
    }

    #[test]
    fn isolation_examples() {
        let iv = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(iv.len(), 2);
        assert!(iv[0].0 >= int(-2) || iv[0].1 <= int(0));
        assert!(iv[0].1 <= int(0) && iv[1].0 >= int(0));
        assert!(isolate_real_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        let iv = isolate_real_roots(&p(&[2, -3, 1])).unwrap();
        assert_eq!(iv.len(), 2);
        assert!(iv[0].0 < int(1) && int(1) < iv[0].1);
        assert!(iv[1].0 < int(2) && int(2) < iv[1].1);
        assert!(isolate_real_roots(&p(&[5])).unwrap().is_empty());
        assert_eq!(isolate_real_roots(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn isolation_with_rational_midpoint_root() {
        // roots -1, 0, 1: the first midpoint is a root
        let iv = isolate_real_roots(&p(&[0, -1, 0, 1])).unwrap();
        assert_eq!(iv.len(), 3);
        assert!(iv[1].0 < int(0) && int(0) < iv[1].1);
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(p(&[-2, 0, 1]).cauchy_bound(), int(3));
        assert_eq!(p(&[-10, 0, 0, 1]).cauchy_bound(), int(11));
        assert_eq!(p(&[-4, 2]).cauchy_bound(), int(3));
    }

    #[test]
    fn rrt_examples() {
        let c = p(&[-2, 0, 1]).rational_root_candidates(&int(-2), &rat(-1, 3));
        assert_eq!(c, vec![int(-1), int(-2)]);
        let c = p(&[-121, 0, 0, 1]).rational_root_candidates(&rat(1, 144), &int(121));
        assert_eq!(c, vec![int(1), int(11), int(121)]);
        let c = p(&[-3, 2]).rational_root_candidates(&int(-10), &int(10));
        let expect: BTreeSet<_> = [-1, 1, -3, 3].iter().map(|&a| int(a))
            .chain([rat(-1, 2), rat(1, 2), rat(-3, 2), rat(3, 2)])
            .collect();
        assert_eq!(c.into_iter().collect::<BTreeSet<_>>(), expect);
        // zero constant term
        let c = p(&[0, -2, 1]).rational_root_candidates(&int(-5), &int(5));
        assert_eq!(c, vec![int(0), int(-1), int(1), int(-2), int(2)]);
    }

    #[test]
    fn rrt_large_constant_uses_divisors() {
        // x - 10^15 on a wide interval
        let big = BigInt::from(10).pow(15);
        let q = Poly::new(vec![-big.clone(), BigInt::one()]);
        let c = q.rational_root_candidates(&int(big.clone() - 1), &int(big.clone() * 2));
        assert_eq!(c, vec![int(big)]);
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(p(&[-11, 0, 0, 1]).eisenstein_prime(), Some(BigInt::from(11)));
        assert!(!p(&[-4, 0, 1]).eisenstein_irreducible());
        assert_eq!(p(&[-10, 0, 3]).eisenstein_prime(), Some(BigInt::from(2)));
        assert!(!p(&[0, 0, 1]).eisenstein_irreducible());
    }

    #[test]
    fn power_carrier_examples() {
        let c = p(&[-11, 0, 0, 1]).power_carrier(3);
        assert_eq!(c.sign_at(&int(11)), Ordering::Equal);
        let c = p(&[-11, 0, 0, 1]).power_carrier(2);
        assert_eq!(c, p(&[-121, 0, 0, 1]));
        assert_eq!(p(&[-2, 0, 1]).power_carrier(1), p(&[-2, 0, 1]));
        let c = p(&[-2, 0, 1]).power_carrier(2);
        assert_eq!(c, p(&[-2, 1]));
        // roots 1 and -1 of x^2 - 1 both square to 1
        assert_eq!(p(&[-1, 0, 1]).power_carrier(2), p(&[-1, 1]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[-11, 0, 0, 1]).to_string(), "x^3 - 11");
        assert_eq!(p(&[-49, 1, 1]).to_string(), "x^2 + x - 49");
        assert_eq!(p(&[1, 2, 0, 0, 3]).to_string(), "3x^4 + 2x + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let v = p(&[-11, 0, 0, 1]).to_json();
        assert_eq!(v.to_string(), r#"["-11","0","0","1"]"#);
        assert_eq!(Poly::from_json(&v), Some(p(&[-11, 0, 0, 1])));
    }
}
