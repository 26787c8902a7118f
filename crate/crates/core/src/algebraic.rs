//! Exact real algebraic numbers.
//!
//! An [`AlgReal`] is either a rational or a root-triple `Root(p, lo, hi)`:
//! the unique root of the square-free primitive carrier `p` in `[lo, hi]`.
//! Every constructor runs the rational-root test, so a number whose value
//! is rational is always the `Rat` variant. Root carriers therefore have
//! degree at least two and no rational root inside the interval.
//!
//! The operations here are the ones the decision procedure needs:
//! comparison, sign of a polynomial at a point, powers, positive `d`-th
//! roots of rationals and negation. There is no general field arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{self, int, BigRat};
use crate::error::{Error, Result};
use crate::poly::{Poly, SturmChain};

#[derive(Clone)]
pub enum AlgReal {
    Rat(BigRat),
    Root(RootTriple),
}

/// The unique root of `carrier` in `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootTriple {
    carrier: Poly,
    lo: BigRat,
    hi: BigRat,
}

impl RootTriple {
    pub fn carrier(&self) -> &Poly {
        &self.carrier
    }

    pub fn lo(&self) -> &BigRat {
        &self.lo
    }

    pub fn hi(&self) -> &BigRat {
        &self.hi
    }

    pub fn width(&self) -> BigRat {
        &self.hi - &self.lo
    }

    /// Halves the interval. Returns the root instead if the midpoint hits it.
    fn bisect(&mut self) -> Option<BigRat> {
        let mid = (&self.lo + &self.hi) / int(2);
        let s = self.carrier.sign_at(&mid);
        if s == Ordering::Equal {
            return Some(mid);
        }
        if s == self.carrier.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
        None
    }
}

/// What the rational-root test saw for a number: its carrier, the interval
/// searched, the candidates the rational root theorem allows there, and
/// the candidate that turned out to be a root, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrtReport {
    pub poly: Poly,
    pub lo: BigRat,
    pub hi: BigRat,
    pub candidates: Vec<BigRat>,
    pub root: Option<BigRat>,
}

impl AlgReal {
    pub fn from_rat(q: BigRat) -> Self {
        AlgReal::Rat(q)
    }

    pub fn from_int(n: i64) -> Self {
        AlgReal::Rat(int(n))
    }

    pub fn zero() -> Self {
        AlgReal::Rat(BigRat::zero())
    }

    /// The unique root of `p` in the closed interval `[lo, hi]`, normalised.
    pub fn new(p: &Poly, lo: &BigRat, hi: &BigRat) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sf = p.square_free();
        let ambiguous = |count| Error::AmbiguousRoot {
            poly: p.to_string(),
            lo: lo.to_string(),
            hi: hi.to_string(),
            count,
        };
        if sf.is_constant() || lo > hi {
            return Err(ambiguous(0));
        }
        let lo_root = sf.sign_at(lo) == Ordering::Equal;
        if lo == hi {
            return if lo_root { Ok(AlgReal::Rat(lo.clone())) } else { Err(ambiguous(0)) };
        }
        let chain = SturmChain::new(&sf);
        let count = chain.count_roots_half_open(lo, hi) + lo_root as usize;
        if count != 1 {
            return Err(ambiguous(count));
        }
        if lo_root {
            return Ok(AlgReal::Rat(lo.clone()));
        }
        if sf.sign_at(hi) == Ordering::Equal {
            return Ok(AlgReal::Rat(hi.clone()));
        }
        Ok(Self::from_isolated(sf, lo.clone(), hi.clone()))
    }

    /// Builds from a square-free primitive carrier with exactly one root in
    /// the open interval and no root at either endpoint.
    pub(crate) fn from_isolated(carrier: Poly, lo: BigRat, hi: BigRat) -> Self {
        if carrier.degree() == Some(1) {
            let c = carrier.coeffs();
            return AlgReal::Rat(BigRat::new(-c[0].clone(), c[1].clone()));
        }
        let triple = RootTriple { carrier, lo, hi };
        match rrt_search(&triple).root {
            Some(q) => AlgReal::Rat(q),
            None => AlgReal::Root(triple),
        }
    }

    pub fn as_rat(&self) -> Option<&BigRat> {
        match self {
            AlgReal::Rat(q) => Some(q),
            AlgReal::Root(_) => None,
        }
    }

    pub fn as_root(&self) -> Option<&RootTriple> {
        match self {
            AlgReal::Root(r) => Some(r),
            AlgReal::Rat(_) => None,
        }
    }

    /// Rational bounds `l <= self <= u`, strict for `Root`.
    pub fn bounds(&self) -> (BigRat, BigRat) {
        match self {
            AlgReal::Rat(q) => (q.clone(), q.clone()),
            AlgReal::Root(r) => (r.lo.clone(), r.hi.clone()),
        }
    }

    /// Same number with an isolating interval no wider than `width`.
    pub fn refine(&self, width: &BigRat) -> AlgReal {
        assert!(width.is_positive(), "refinement width must be positive");
        match self {
            AlgReal::Rat(_) => self.clone(),
            AlgReal::Root(r) => {
                let mut r = r.clone();
                while r.width() > *width {
                    if let Some(q) = r.bisect() {
                        return AlgReal::Rat(q);
                    }
                }
                AlgReal::Root(r)
            }
        }
    }

    /// One bisection step; rationals are unchanged.
    pub fn refine_step(&mut self) {
        if let AlgReal::Root(r) = self {
            if let Some(q) = r.bisect() {
                *self = AlgReal::Rat(q);
            }
        }
    }

    /// Rationals `u < l` with `self <= u` and `l <= other`, where each
    /// inequality is strict unless that side is rational. Needs `self < other`.
    pub fn separating_bounds(&self, other: &AlgReal) -> (BigRat, BigRat) {
        assert_eq!(self.compare(other), Ordering::Less, "separating bounds need a < b");
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            let u = a.bounds().1;
            let l = b.bounds().0;
            if u < l {
                return (u, l);
            }
            a.refine_step();
            b.refine_step();
        }
    }

    pub fn signum(&self) -> Ordering {
        self.compare(&AlgReal::zero())
    }

    /// Exact order of the denoted reals.
    pub fn compare(&self, other: &AlgReal) -> Ordering {
        match (self, other) {
            (AlgReal::Rat(a), AlgReal::Rat(b)) => a.cmp(b),
            (AlgReal::Root(r), AlgReal::Rat(q)) => cmp_root_rat(r, q),
            (AlgReal::Rat(q), AlgReal::Root(r)) => cmp_root_rat(r, q).reverse(),
            (AlgReal::Root(a), AlgReal::Root(b)) => cmp_roots(a.clone(), b.clone()),
        }
    }

    /// Exact sign of `p` at this number.
    pub fn sign_of(&self, p: &Poly) -> Ordering {
        match self {
            AlgReal::Rat(q) => p.sign_at(q),
            AlgReal::Root(r) => sign_at_root(p, r.clone()),
        }
    }

    /// `self^n`, normalised.
    pub fn pow(&self, n: u32) -> AlgReal {
        match self {
            AlgReal::Rat(q) => AlgReal::Rat(num_traits::pow(q.clone(), n as usize)),
            AlgReal::Root(_) if n == 0 => AlgReal::Rat(BigRat::one()),
            AlgReal::Root(_) if n == 1 => self.clone(),
            AlgReal::Root(r) => pow_root(r.clone(), n),
        }
    }

    /// The non-negative real `d`-th root of `q`, carried by `den x^d - num`.
    pub fn nth_root(q: &BigRat, d: u32) -> Result<AlgReal> {
        assert!(d >= 1, "root index must be positive");
        if q.is_negative() {
            return Err(Error::NegativeRadicand(q.to_string()));
        }
        if q.is_zero() || q.is_one() || d == 1 {
            return Ok(AlgReal::Rat(q.clone()));
        }
        let carrier = Poly::binomial(d as usize, q);
        let one = BigRat::one();
        let (lo, hi) = if *q > one {
            (BigRat::new(BigInt::one(), arith::floor(q) + 1), q.clone())
        } else {
            (q / int(2), one)
        };
        Ok(AlgReal::from_isolated(carrier, lo, hi))
    }

    pub fn negate(&self) -> AlgReal {
        match self {
            AlgReal::Rat(q) => AlgReal::Rat(-q),
            AlgReal::Root(r) => AlgReal::Root(RootTriple {
                carrier: r.carrier.reflect().primitive(),
                lo: -&r.hi,
                hi: -&r.lo,
            }),
        }
    }

    /// The rational value, decided by the rational root theorem.
    pub fn is_rational(&self) -> Option<BigRat> {
        self.rrt_check().root
    }

    pub fn is_integer(&self) -> Option<BigInt> {
        self.is_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Runs the rational-root test and reports what it examined.
    pub fn rrt_check(&self) -> RrtReport {
        match self {
            AlgReal::Rat(q) => {
                let poly = Poly::binomial(1, q);
                let candidates = vec![q.clone()];
                RrtReport { poly, lo: q.clone(), hi: q.clone(), candidates, root: Some(q.clone()) }
            }
            AlgReal::Root(r) => rrt_search(r),
        }
    }

    /// Largest integer not above this number.
    pub fn floor(&self) -> BigInt {
        match self {
            AlgReal::Rat(q) => arith::floor(q),
            AlgReal::Root(r) => {
                let mut r = r.clone();
                loop {
                    let (fl, fh) = (arith::floor(&r.lo), arith::floor(&r.hi));
                    if fl == fh {
                        return fl;
                    }
                    if let Some(q) = r.bisect() {
                        return arith::floor(&q);
                    }
                }
            }
        }
    }

    /// Smallest integer not below this number.
    pub fn ceil(&self) -> BigInt {
        -self.negate().floor()
    }

    /// Decimal approximation to `digits` significant digits.
    pub fn approx(&self, digits: u32) -> String {
        match self {
            AlgReal::Rat(q) => arith::to_sig_digits(q, digits),
            AlgReal::Root(r) => {
                let mut r = r.clone();
                let scale = BigRat::new(BigInt::one(), BigInt::from(10).pow(digits + 4));
                loop {
                    let definite = !r.lo.is_negative() || !r.hi.is_positive();
                    let mag = r.lo.abs().min(r.hi.abs());
                    if definite && r.width() <= &mag * &scale {
                        break;
                    }
                    if let Some(q) = r.bisect() {
                        return arith::to_sig_digits(&q, digits);
                    }
                }
                arith::to_sig_digits(&((&r.lo + &r.hi) / int(2)), digits)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AlgReal::Rat(q) => json!({ "kind": "rational", "value": arith::fmt_rat(q) }),
            AlgReal::Root(r) => json!({
                "kind": "root",
                "poly": r.carrier.to_json(),
                "interval": [arith::fmt_rat(&r.lo), arith::fmt_rat(&r.hi)],
                "approx": self.approx(10),
            }),
        }
    }
}

fn rrt_search(r: &RootTriple) -> RrtReport {
    let candidates = r.carrier.rational_root_candidates(&r.lo, &r.hi);
    let root = candidates
        .iter()
        .find(|c| r.carrier.sign_at(c) == Ordering::Equal)
        .cloned();
    RrtReport { poly: r.carrier.clone(), lo: r.lo.clone(), hi: r.hi.clone(), candidates, root }
}

fn cmp_root_rat(r: &RootTriple, q: &BigRat) -> Ordering {
    if *q <= r.lo {
        return Ordering::Greater;
    }
    if *q >= r.hi {
        return Ordering::Less;
    }
    let s = r.carrier.sign_at(q);
    if s == Ordering::Equal {
        Ordering::Equal
    } else if s == r.carrier.sign_at(&r.lo) {
        // no sign change between lo and q, so the root is above q
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn cmp_roots(mut a: RootTriple, mut b: RootTriple) -> Ordering {
    let g = a.carrier.gcd(&b.carrier);
    let mut check_shared = !g.is_constant();
    loop {
        if a.hi <= b.lo {
            return Ordering::Less;
        }
        if b.hi <= a.lo {
            return Ordering::Greater;
        }
        if check_shared {
            // overlap endpoints are interval endpoints, hence not roots of g;
            // a root of g in the overlap is both numbers at once
            let lo = (&a.lo).max(&b.lo);
            let hi = (&a.hi).min(&b.hi);
            if SturmChain::new(&g).count_roots_half_open(lo, hi) > 0 {
                return Ordering::Equal;
            }
            check_shared = false;
        }
        if let Some(q) = a.bisect() {
            return cmp_root_rat(&b, &q).reverse();
        }
        if let Some(q) = b.bisect() {
            return cmp_root_rat(&a, &q);
        }
    }
}

fn sign_at_root(p: &Poly, mut r: RootTriple) -> Ordering {
    if p.is_zero() {
        return Ordering::Equal;
    }
    if p.is_constant() {
        return p.coeffs()[0].cmp(&BigInt::zero());
    }
    let g = p.gcd(&r.carrier);
    if !g.is_constant() && SturmChain::new(&g).count_roots_half_open(&r.lo, &r.hi) > 0 {
        return Ordering::Equal;
    }
    let chain = SturmChain::new(p);
    loop {
        let s_lo = p.sign_at(&r.lo);
        if s_lo != Ordering::Equal
            && p.sign_at(&r.hi) == s_lo
            && chain.count_roots_half_open(&r.lo, &r.hi) == 0
        {
            return s_lo;
        }
        if let Some(q) = r.bisect() {
            return p.sign_at(&q);
        }
    }
}

/// `(d, c)` when the carrier is `a x^d - b`, so that the root's `d`-th power
/// is `c = b / a`.
fn binomial_power(p: &Poly) -> Option<(u32, BigRat)> {
    let cs = p.coeffs();
    let d = cs.len() - 1;
    if d < 2 || cs[1..d].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some((d as u32, BigRat::new(-cs[0].clone(), cs[d].clone())))
}

fn pow_root(mut r: RootTriple, n: u32) -> AlgReal {
    let carrier = match binomial_power(&r.carrier) {
        // x^n is a real (d/g)-th root of c^(n/g) with g = gcd(n, d)
        Some((d, c)) => {
            let g = num_integer::gcd(n, d);
            let radicand = num_traits::pow(c, (n / g) as usize);
            if d == g {
                return AlgReal::Rat(radicand);
            }
            Poly::binomial((d / g) as usize, &radicand)
        }
        None => r.carrier.power_carrier(n),
    };
    if carrier.degree() == Some(1) {
        let c = carrier.coeffs();
        return AlgReal::Rat(BigRat::new(-c[0].clone(), c[1].clone()));
    }
    while r.lo.is_negative() && r.hi.is_positive() {
        if let Some(q) = r.bisect() {
            return AlgReal::Rat(num_traits::pow(q, n as usize));
        }
    }
    let chain = SturmChain::new(&carrier);
    loop {
        let pl = num_traits::pow(r.lo.clone(), n as usize);
        let ph = num_traits::pow(r.hi.clone(), n as usize);
        let (lo, hi) = if pl < ph { (pl, ph) } else { (ph, pl) };
        if carrier.sign_at(&lo) != Ordering::Equal
            && carrier.sign_at(&hi) != Ordering::Equal
            && chain.count_roots_half_open(&lo, &hi) == 1
        {
            return AlgReal::from_isolated(carrier, lo, hi);
        }
        if let Some(q) = r.bisect() {
            return AlgReal::Rat(num_traits::pow(q, n as usize));
        }
    }
}

impl PartialEq for AlgReal {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for AlgReal {}

impl PartialOrd for AlgReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl From<BigRat> for AlgReal {
    fn from(q: BigRat) -> Self {
        AlgReal::Rat(q)
    }
}

impl fmt::Display for AlgReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgReal::Rat(q) => write!(f, "{q}"),
            AlgReal::Root(r) => write!(f, "Root({}, [{}, {}])", r.carrier, r.lo, r.hi),
        }
    }
}

impl fmt::Debug for AlgReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
