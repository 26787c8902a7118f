//! Exact integer and rational helpers.
//!
//! Rationals are [`num_rational::BigRational`] values, which are kept in
//! lowest terms with a positive denominator by construction. On top of that
//! this module provides the number theory the witness constructions need:
//! exact primality, prime search in an interval, ratios of primes, and
//! integer factorisation for divisor enumeration.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number in canonical form.
pub type BigRat = BigRational;

/// Builds `n / d`. Panics if `d` is zero.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> BigRat {
    BigRat::from_integer(n.into())
}

/// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Below this bound trial division is cheap enough to be the primary test.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;

/// Exact primality test.
///
/// Trial division for `n < 10^12`. Above that, Miller-Rabin with the first
/// 13 primes as bases, which is deterministic for every `n < 3.3 * 10^24`.
/// Larger inputs additionally use bases up to 97.
pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    let n = n.magnitude();
    if let Some(small) = n.to_u64() {
        if small < TRIAL_DIVISION_LIMIT {
            return is_prime_trial(small);
        }
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let bases: &[u64] = if n.bits() <= 81 {
        &SMALL_PRIMES[..13]
    } else {
        &SMALL_PRIMES[..]
    };
    miller_rabin(n, bases)
}

fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut f = 5u64;
    while f * f <= n {
        if n % f == 0 || n % (f + 2) == 0 {
            return false;
        }
        f += 6;
    }
    true
}

fn miller_rabin(n: &BigUint, bases: &[u64]) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in bases {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Least prime `p` with `lo < p < hi`, if any.
pub fn find_prime_in(lo: &BigRat, hi: &BigRat) -> Option<BigInt> {
    let mut z = lo.floor().to_integer() + 1;
    let two = BigInt::from(2);
    if z < two {
        z = two;
    }
    while int(z.clone()) < *hi {
        if is_prime(&z) {
            return Some(z);
        }
        z += 1;
    }
    None
}

/// A ratio `p/q` of two distinct primes with `lo < p/q < hi`.
///
/// Denominators are tried over the primes in ascending order; for each one
/// the least admissible numerator is taken. Requires `0 <= lo < hi`.
pub fn prime_ratio_in(lo: &BigRat, hi: &BigRat) -> BigRat {
    assert!(lo < hi, "prime_ratio_in: empty interval");
    assert!(!lo.is_negative(), "prime_ratio_in: negative lower bound");
    let mut q = BigInt::from(2);
    loop {
        let qr = int(q.clone());
        let (l, h) = (lo * &qr, hi * &qr);
        let mut found = find_prime_in(&l, &h);
        if found.as_ref() == Some(&q) {
            found = find_prime_in(&qr, &h);
        }
        if let Some(p) = found {
            return BigRat::new(p, q);
        }
        q = next_prime(&q);
    }
}

/// Least prime strictly greater than `n`.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut z = n + 1;
    while !is_prime(&z) {
        z += 1;
    }
    z
}

/// Prime factorisation of `n > 0` as `(prime, multiplicity)` pairs in
/// ascending order.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factorize: zero");
    let mut primes = Vec::new();
    let mut rest = n.clone();
    let mut f = 2u64;
    while f < 10_000 {
        let fb = BigUint::from(f);
        if &fb * &fb > rest {
            break;
        }
        while (&rest % f).is_zero() {
            primes.push(fb.clone());
            rest /= f;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&BigInt::from(m.clone())) {
            primes.push(m);
            continue;
        }
        if let Some(r) = m.to_u64().filter(|_| m.bits() < 40) {
            // small enough that a square root bound trial division is fine
            let s = r.sqrt();
            if let Some(d) = (10_000..=s).find(|d| r % d == 0) {
                stack.push(BigUint::from(d));
                stack.push(BigUint::from(r / d));
                continue;
            }
        }
        // rho needs about sqrt(p) steps on p^k; take roots first
        if let Some((root, k)) = perfect_power(&m) {
            stack.extend(std::iter::repeat_n(root, k as usize));
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(d.clone());
        stack.push(m / d);
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// `(r, k)` with `n = r^k`, `k >= 2` as large as possible.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    (2..=n.bits() as u32).rev().find_map(|k| {
        let r = n.nth_root(k);
        (num_traits::pow(r.clone(), k as usize) == *n).then_some((r, k))
    })
}

/// A nontrivial factor of the odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 64u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

/// Positive divisors of `n != 0`, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigUint::one()];
    for (p, k) in factorize(n.magnitude()) {
        let mut next = Vec::with_capacity(divs.len() * (k as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..k {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    let mut out: Vec<BigInt> = divs.into_iter().map(BigInt::from).collect();
    out.sort();
    out
}

/// Number of positive divisors of `n != 0`, computed without listing them.
pub fn divisor_count(n: &BigInt) -> BigUint {
    factorize(n.magnitude())
        .into_iter()
        .fold(BigUint::one(), |acc, (_, k)| acc * (k + 1))
}

/// Largest integer `<= q`.
pub fn floor(q: &BigRat) -> BigInt {
    q.floor().to_integer()
}

/// Smallest integer `>= q`.
pub fn ceil(q: &BigRat) -> BigInt {
    q.ceil().to_integer()
}

/// The rational with least denominator (then least absolute numerator)
/// strictly inside `(lo, hi)`.
pub fn simplest_between(lo: &BigRat, hi: &BigRat) -> BigRat {
    assert!(lo < hi, "simplest_between: empty interval");
    if lo.is_negative() && hi.is_positive() {
        return BigRat::zero();
    }
    if !hi.is_positive() {
        return -simplest_between(&-hi, &-lo);
    }
    // 0 <= lo < hi
    let fl = floor(lo);
    let next: BigInt = &fl + 1;
    if int(next.clone()) < *hi {
        return int(next);
    }
    // every point of (lo, hi) has integer part fl
    let frac_lo = lo - int(fl.clone());
    let frac_hi = hi - int(fl.clone());
    if frac_lo.is_zero() {
        let k = floor(&frac_hi.recip()) + 1;
        return int(fl) + BigRat::new(BigInt::one(), k);
    }
    let inner = simplest_between(&frac_hi.recip(), &frac_lo.recip());
    int(fl) + inner.recip()
}

/// Decimal rendering of `q` rounded to `digits` significant digits.
pub fn to_sig_digits(q: &BigRat, digits: u32) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = (a.numer().to_string().len() as i64) - (a.denom().to_string().len() as i64);
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let mut m = scaled.round().to_integer();
    let mut shift = shift;
    if m.to_string().len() as u32 > digits {
        m /= 10;
        shift -= 1;
    }
    let s = m.to_string();
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{s}{zeros}")
    } else if (shift as usize) < s.len() {
        let (i, f) = s.split_at(s.len() - shift as usize);
        format!("{i}.{f}")
    } else {
        let zeros = "0".repeat(shift as usize - s.len());
        format!("0.{zeros}{s}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn pow10(e: i64) -> BigRat {
    let p = BigInt::from(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRat::from_integer(p)
    } else {
        BigRat::new(BigInt::one(), p)
    }
}

/// `q` as `"a/b"`, or `"a"` when the denominator is one.
pub fn fmt_rat(q: &BigRat) -> String {
    q.to_string()
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rat(s: &str) -> Option<BigRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRat::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRat::from_integer),
    }
}
