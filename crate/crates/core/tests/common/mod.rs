//! Generators and brute-force oracles shared by the integration suites.
//! The oracles use plain integer, `f64` or rational evaluation and never
//! call the library's isolation, comparison or membership code.
#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use realqz::algebraic::AlgReal;
use realqz::formula::{Formula, Quant};
use realqz::membership::{MemberAtom, MembershipSystem, NumSet};
use realqz::poly::Poly;
use realqz::rcell::{RealAtom, RealFormula, Rel};

pub type Q = BigRational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Nonconstant polynomial of degree in `1..=max_deg` with coefficients in
/// `[-c, c]` and a nonzero leading coefficient.
pub fn random_poly(r: &mut ChaCha8Rng, max_deg: usize, c: i64) -> Vec<i64> {
    let deg = r.gen_range(1..=max_deg);
    let mut cs: Vec<i64> = (0..=deg).map(|_| r.gen_range(-c..=c)).collect();
    while cs[deg] == 0 {
        cs[deg] = r.gen_range(-c..=c);
    }
    cs
}

pub fn poly(cs: &[i64]) -> Poly {
    Poly::from_i64s(cs)
}

/// Exact value of `cs` at `x`.
pub fn eval_exact(cs: &[i64], x: &Q) -> Q {
    cs.iter().rev().fold(Q::zero(), |acc, c| acc * x + Q::from_integer((*c).into()))
}

/// Exact sign at the dyadic `k / 2^s`: `f64` Horner with a rounding bound,
/// falling back to integer arithmetic when the bound is inconclusive.
pub fn sign_at_dyadic(cs: &[i64], k: i64, s: u32) -> Ordering {
    let x = k as f64 / (1u64 << s) as f64;
    let n = cs.len();
    let mut v = 0.0f64;
    let mut mag = 0.0f64;
    for c in cs.iter().rev() {
        v = v * x + *c as f64;
        mag = mag * x.abs() + (*c as f64).abs();
    }
    let bound = mag * (2 * n + 2) as f64 * f64::EPSILON;
    if v.abs() > bound {
        return v.partial_cmp(&0.0).unwrap();
    }
    // 2^(s*deg) * p(k / 2^s) = sum c_i k^i 2^(s*(deg-i))
    let deg = n - 1;
    let kb = BigInt::from(k);
    let total: BigInt = cs
        .iter()
        .enumerate()
        .map(|(i, c)| BigInt::from(*c) * num_traits::pow(kb.clone(), i) << (s as usize * (deg - i)))
        .sum();
    total.sign().cmp_zero()
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

/// A real root located by the scan: exactly at `lo` when `lo == hi`,
/// otherwise strictly inside `(lo, hi)`.
#[derive(Clone, Debug)]
pub struct ScanRoot {
    pub lo: Q,
    pub hi: Q,
}

pub const SCAN_BITS: u32 = 20;

/// Sign-change scan at step `2^-SCAN_BITS` over `[-B, B]`, `B` a power of
/// two at least the Cauchy bound. Subintervals on which a derivative bound
/// rules out any root are skipped, so the scan only descends to the fine
/// grid near roots. Finds every root of odd multiplicity that is more than
/// one grid step away from its neighbours.
pub fn scan_roots(cs: &[i64]) -> Vec<ScanRoot> {
    let n = cs.len() - 1;
    let lead = cs[n].abs() as f64;
    let cauchy = 1.0 + cs[..n].iter().map(|c| c.abs() as f64 / lead).fold(0.0, f64::max);
    let mut b_exp = 0u32;
    while ((1u64 << b_exp) as f64) < cauchy {
        b_exp += 1;
    }
    let span = 1i64 << (b_exp + SCAN_BITS);
    let mut out: Vec<ScanRoot> = Vec::new();
    scan(cs, -span, span, &mut out);
    // neighbouring leaves both report a root on their shared endpoint
    out.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    out.dedup_by(|a, b| a.lo == b.lo && a.hi == b.hi);
    out
}

fn scan(cs: &[i64], lo: i64, hi: i64, out: &mut Vec<ScanRoot>) {
    if hi - lo > 1 {
        if may_have_root(cs, lo, hi) {
            let mid = lo + (hi - lo) / 2;
            scan(cs, lo, mid, out);
            scan(cs, mid, hi, out);
        }
        return;
    }
    let at = |k: i64| Q::new(k.into(), BigInt::one() << SCAN_BITS as usize);
    let (sl, sh) = (sign_at_dyadic(cs, lo, SCAN_BITS), sign_at_dyadic(cs, hi, SCAN_BITS));
    if sl == Ordering::Equal {
        out.push(ScanRoot { lo: at(lo), hi: at(lo) });
    }
    if sh == Ordering::Equal {
        out.push(ScanRoot { lo: at(hi), hi: at(hi) });
    }
    if sl != Ordering::Equal && sh != Ordering::Equal && sl != sh {
        out.push(ScanRoot { lo: at(lo), hi: at(hi) });
    }
}

/// False only when `|p(lo)| > max|p'| * (hi - lo)` on the interval, with
/// rounding slack, which rules out a root in `[lo, hi]`.
fn may_have_root(cs: &[i64], lo: i64, hi: i64) -> bool {
    let scale = (1u64 << SCAN_BITS) as f64;
    let x = lo as f64 / scale;
    let w = (hi - lo) as f64 / scale;
    let r = (lo.abs().max(hi.abs())) as f64 / scale;
    let mut v = 0.0f64;
    let mut mag = 0.0f64;
    for c in cs.iter().rev() {
        v = v * x + *c as f64;
        mag = mag * x.abs() + (*c as f64).abs();
    }
    let err = mag * (2 * cs.len() + 2) as f64 * f64::EPSILON;
    let mut dmax = 0.0f64;
    for (i, c) in cs.iter().enumerate().skip(1) {
        dmax += i as f64 * (*c as f64).abs() * r.powi(i as i32 - 1);
    }
    v.abs() - err <= dmax * w * (1.0 + 1e-9) + 1e-300
}

/// Sign of the integer polynomial `cs` at `k / 2^s`.
fn sign_at_dyadic_big(cs: &[BigInt], k: &BigInt, s: usize) -> Ordering {
    let deg = cs.len() - 1;
    let total: BigInt = cs
        .iter()
        .enumerate()
        .map(|(i, c)| (c * num_traits::pow(k.clone(), i)) << (s * (deg - i)))
        .sum();
    total.sign().cmp_zero()
}

/// Compares isolation against the sign-change scan; returns a description
/// of the first disagreement.
pub fn isolation_mismatch(cs: &[i64]) -> Option<String> {
    let p = poly(cs);
    let got = realqz::poly::isolate_real_roots(&p).unwrap();
    let want = scan_roots(cs);
    if got.len() != want.len() {
        return Some(format!("{p}: {} intervals, scan found {} roots", got.len(), want.len()));
    }
    for ((lo, hi), r) in got.iter().zip(&want) {
        let inside = if r.lo == r.hi { lo < &r.lo && &r.lo < hi } else { &r.lo < hi && lo < &r.hi };
        if !inside {
            return Some(format!("{p}: interval [{lo}, {hi}] misses scan root near {}", r.lo));
        }
    }
    None
}

/// Value of `a` to within `2^-bits`, by integer bisection of its carrier
/// on the dyadic grid inside its interval.
pub fn approx(a: &AlgReal, bits: u32) -> Q {
    let AlgReal::Root(r) = a else {
        return a.as_rat().unwrap().clone();
    };
    let s = bits as usize;
    let scale = Q::from_integer(BigInt::one() << s);
    let cs = r.carrier().coeffs();
    let mut lo = (r.lo() * &scale).ceil().to_integer();
    let mut hi = (r.hi() * &scale).floor().to_integer();
    let s_lo = sign_at_dyadic_big(cs, &lo, s);
    if lo >= hi || s_lo == sign_at_dyadic_big(cs, &hi, s) {
        // the root is within one grid step of an endpoint
        return r.lo().clone();
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1usize;
        match sign_at_dyadic_big(cs, &mid, s) {
            Ordering::Equal => return Q::new(mid, BigInt::one() << s),
            o if o == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Q::new(lo, BigInt::one() << s)
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap()
}

/// A random real algebraic number: a root of a random polynomial, or a
/// random rational when that polynomial has no real roots.
pub fn random_alg(r: &mut ChaCha8Rng, max_deg: usize) -> AlgReal {
    let cs = random_poly(r, max_deg, 10);
    let p = poly(&cs);
    let roots = realqz::poly::isolate_real_roots(&p.square_free()).unwrap();
    if roots.is_empty() {
        return AlgReal::from_rat(q(r.gen_range(-50..=50), r.gen_range(1..=9)));
    }
    let (lo, hi) = &roots[r.gen_range(0..roots.len())];
    AlgReal::new(&p, lo, hi).unwrap()
}

// ---- membership oracle for points of the form +-(n/m)^(1/d) ----

/// `+-(n/m)^(1/d)` with `n/m` in lowest terms, `n >= 0`, `m >= 1`.
#[derive(Clone, Copy, Debug)]
pub struct RootPoint {
    pub negative: bool,
    pub n: u64,
    pub m: u64,
    pub d: u32,
}

impl RootPoint {
    pub fn new(negative: bool, n: u64, m: u64, d: u32) -> Self {
        let g = n.gcd(&m);
        RootPoint { negative, n: n / g, m: m / g, d }
    }

    pub fn value(&self) -> AlgReal {
        let v = AlgReal::nth_root(&q(self.n as i64, self.m as i64), self.d).unwrap();
        if self.negative { v.negate() } else { v }
    }

    /// Whether `x^k` lies in the set, by integer arithmetic.
    pub fn power_in(&self, k: u32, set: NumSet) -> bool {
        if self.n == 0 {
            return true;
        }
        let f = self.d / k.gcd(&self.d);
        let rational = perfect_power(self.n, f) && perfect_power(self.m, f);
        match set {
            NumSet::Q => rational,
            NumSet::Z => rational && self.m == 1,
        }
    }

    pub fn satisfies(&self, g: &MembershipSystem) -> bool {
        g.atoms().iter().all(|a| self.power_in(a.power, a.set) == a.positive)
    }
}

pub fn perfect_power(n: u64, f: u32) -> bool {
    let r = n.nth_root(f);
    r.checked_pow(f) == Some(n)
}

/// Random system of `1..=max_atoms` constraints over powers `1..=max_power`.
pub fn random_system(r: &mut ChaCha8Rng, max_atoms: usize, max_power: u32) -> MembershipSystem {
    let k = r.gen_range(1..=max_atoms);
    MembershipSystem::from_atoms((0..k).map(|_| random_member(r, max_power)))
}

pub fn random_member(r: &mut ChaCha8Rng, max_power: u32) -> MemberAtom {
    let set = if r.gen_bool(0.5) { NumSet::Q } else { NumSet::Z };
    MemberAtom::new(r.gen_range(1..=max_power), set, r.gen_bool(0.5))
}

/// Test points: small rationals, and `d`-th roots of small rationals.
pub fn random_root_point(r: &mut ChaCha8Rng) -> RootPoint {
    let d = *[1, 1, 2, 2, 3, 4, 5, 6].get(r.gen_range(0..8)).unwrap();
    let n = r.gen_range(0..=40);
    let m = if r.gen_bool(0.5) { 1 } else { r.gen_range(1..=12) };
    RootPoint::new(r.gen_bool(0.3), n, m, d)
}

// ---- brute-force witness search on a bounded positive interval ----

/// Searches `(p/q)^(1/d)` for `d <= max_d`, over every integer in range and
/// every fraction with numerator and denominator at most `frac_bound`, for
/// a point strictly inside `(a, b)` satisfying `g`.
pub fn brute_force_witness(g: &MembershipSystem, a: &Q, b: &Q, max_d: u32, frac_bound: u64) -> Option<RootPoint> {
    for d in 1..=max_d {
        let ad = num_traits::pow(a.clone(), d as usize);
        let bd = num_traits::pow(b.clone(), d as usize);
        // integers in (a^d, b^d)
        let mut z = ad.floor().to_integer().to_u64().unwrap() + 1;
        while Q::from_integer(z.into()) < bd {
            let p = RootPoint::new(false, z, 1, d);
            if p.satisfies(g) {
                return Some(p);
            }
            z += 1;
        }
        for den in 2..=frac_bound {
            let dq = Q::from_integer(den.into());
            let lo = (&ad * &dq).floor().to_integer().to_u64().unwrap() + 1;
            let hi = (&bd * &dq).ceil().to_integer().to_u64().unwrap().saturating_sub(1).min(frac_bound);
            for num in lo..=hi {
                if num.gcd(&den) != 1 {
                    continue;
                }
                let p = RootPoint::new(false, num, den, d);
                if p.satisfies(g) {
                    return Some(p);
                }
            }
        }
    }
    None
}

// ---- random formulas ----

fn random_rel(r: &mut ChaCha8Rng) -> Rel {
    Rel::ALL[r.gen_range(0..Rel::ALL.len())]
}

pub fn random_real_formula(r: &mut ChaCha8Rng, depth: u32, max_deg: usize) -> RealFormula {
    if depth == 0 || r.gen_bool(0.4) {
        let p = poly(&random_poly(r, max_deg, 6));
        return RealFormula::Atom(RealAtom::new(p, random_rel(r)));
    }
    let k = r.gen_range(2..=3);
    let parts = (0..k).map(|_| random_real_formula(r, depth - 1, max_deg)).collect();
    if r.gen_bool(0.5) { RealFormula::And(parts) } else { RealFormula::Or(parts) }
}

/// Quantifier-free formula over real and membership atoms.
pub fn random_qf_formula(r: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || r.gen_bool(0.35) {
        return random_atom(r);
    }
    match r.gen_range(0..3) {
        0 => Formula::not(random_qf_formula(r, depth - 1)),
        1 => Formula::And((0..r.gen_range(2..=3)).map(|_| random_qf_formula(r, depth - 1)).collect()),
        _ => Formula::Or((0..r.gen_range(2..=3)).map(|_| random_qf_formula(r, depth - 1)).collect()),
    }
}

fn random_atom(r: &mut ChaCha8Rng) -> Formula {
    match r.gen_range(0..10) {
        0..=5 => {
            let lhs = poly(&random_poly(r, 3, 5));
            let rhs = if r.gen_bool(0.5) { Poly::zero() } else { poly(&random_poly(r, 2, 5)) };
            Formula::real(lhs, random_rel(r), rhs)
        }
        _ => Formula::Member(random_member(r, 4)),
    }
}

/// Any formula the grammar can express, including quantifiers, constants
/// and implications.
pub fn random_formula(r: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || r.gen_bool(0.3) {
        return match r.gen_range(0..12) {
            0 => Formula::Const(r.gen_bool(0.5)),
            _ => random_atom(r),
        };
    }
    match r.gen_range(0..6) {
        0 => Formula::not(random_formula(r, depth - 1)),
        1 | 2 => Formula::And((0..r.gen_range(2..=3)).map(|_| random_formula(r, depth - 1)).collect()),
        3 | 4 => Formula::Or((0..r.gen_range(2..=3)).map(|_| random_formula(r, depth - 1)).collect()),
        _ => {
            let qn = if r.gen_bool(0.5) { Quant::Exists } else { Quant::Forall };
            Formula::Quant(qn, Box::new(random_formula(r, depth - 1)))
        }
    }
}

pub fn bigint(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn is_positive(v: &Q) -> bool {
    v.is_positive()
}

// ---- bounded-cell instances for the completeness spot-check ----

pub struct BoundedInstance {
    pub g: MembershipSystem,
    pub a: Q,
    pub b: Q,
}

/// Random system over powers `<= 4` and a cell `(a, b)` with small-denominator
/// endpoints in `(0, 10)`.
pub fn random_bounded_instance(r: &mut ChaCha8Rng) -> BoundedInstance {
    let g = random_system(r, 4, 4);
    loop {
        let a = q(r.gen_range(1..40), r.gen_range(1..=4));
        let b = q(r.gen_range(1..40), r.gen_range(1..=4));
        if a < b && b < q(10, 1) {
            return BoundedInstance { g, a, b };
        }
    }
}

/// Runs the solver on the instance and the brute-force search, and
/// describes any disagreement. The search uses root degrees up to 5 so that
/// systems made only of negative constraints over powers up to 4 have
/// candidates too.
pub fn bounded_instance_mismatch(inst: &BoundedInstance, mirrored: bool) -> Option<String> {
    use realqz::membership::{decide_bounded_cell, eval_membership};
    use realqz::rcell::RCell;
    use realqz::trace::ProofTrace;

    let (lo, hi) = (AlgReal::from_rat(inst.a.clone()), AlgReal::from_rat(inst.b.clone()));
    let cell = if mirrored {
        RCell::Open { lower: Some(hi.negate()), upper: Some(lo.negate()) }
    } else {
        RCell::Open { lower: Some(lo), upper: Some(hi) }
    };
    let got = match decide_bounded_cell(&inst.g, &cell, 1_000_000, &mut ProofTrace::new()) {
        Ok(w) => w,
        Err(e) => return Some(format!("solver error {e}")),
    };
    let oracle = brute_force_witness(&inst.g, &inst.a, &inst.b, 5, 200);
    let label = format!("Gamma = {}, cell {cell}", inst.g);
    match (&got, &oracle) {
        (Some(w), _) if !cell.contains(w) || !eval_membership(&inst.g, w) => {
            Some(format!("{label}: witness {w} does not verify"))
        }
        (Some(w), None) => Some(format!("{label}: solver found {w}, search found nothing")),
        (None, Some(p)) => Some(format!("{label}: solver found nothing, search found {p:?}")),
        _ => None,
    }
}
