mod common;

use std::cmp::Ordering;

use num_traits::Signed;
use rand::Rng;

use common::*;
use realqz::algebraic::AlgReal;
use realqz::poly::isolate_real_roots;

/// Order of the numeric approximations when they are clearly apart.
fn numeric_order(x: &Q, y: &Q) -> Option<Ordering> {
    let gap = q(1, 1) / Q::from_integer(num_bigint::BigInt::from(1) << 100usize);
    if (x - y).abs() > gap {
        Some(x.cmp(&y))
    } else {
        None
    }
}

#[test]
fn compare_agrees_with_numeric_values() {
    let mut r = rng(0xA1_01);
    let xs: Vec<AlgReal> = (0..1000).map(|_| random_alg(&mut r, 6)).collect();
    let vals: Vec<Q> = xs.iter().map(|x| approx(x, 110)).collect();
    for (w, v) in xs.windows(2).zip(vals.windows(2)) {
        let c = w[0].compare(&w[1]);
        match numeric_order(&v[0], &v[1]) {
            Some(o) => assert_eq!(c, o, "{} vs {}", w[0], w[1]),
            // values within 2^-100 of each other must be equal
            None => assert_eq!(c, Ordering::Equal, "{} vs {}", w[0], w[1]),
        }
    }
}

#[test]
fn compare_is_a_total_order() {
    let mut r = rng(0xA1_02);
    for _ in 0..300 {
        let v: Vec<AlgReal> = (0..3).map(|_| random_alg(&mut r, 4)).collect();
        for a in &v {
            assert_eq!(a.compare(a), Ordering::Equal);
            for b in &v {
                assert_eq!(a.compare(b), b.compare(a).reverse());
                for c in &v {
                    if a.compare(b) != Ordering::Greater && b.compare(c) != Ordering::Greater {
                        assert_ne!(a.compare(c), Ordering::Greater, "{a} <= {b} <= {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn roots_vanish_on_their_carrier() {
    let mut r = rng(0xA1_03);
    for _ in 0..300 {
        if let AlgReal::Root(t) = random_alg(&mut r, 6) {
            let a = AlgReal::Root(t.clone());
            assert_eq!(a.sign_of(t.carrier()), Ordering::Equal, "{a}");
            assert!(t.carrier().degree().unwrap() >= 2);
        }
    }
}

#[test]
fn powering_inverts_nth_root() {
    for n in 0..=50i64 {
        for d in 1..=50i64 {
            let v = q(n, d);
            for k in 1..=5u32 {
                let root = AlgReal::nth_root(&v, k).unwrap();
                assert_eq!(root.pow(k).is_rational(), Some(v.clone()), "({v})^(1/{k})^{k}");
            }
        }
    }
}

#[test]
fn power_of_power() {
    let mut r = rng(0xA1_05);
    for _ in 0..120 {
        let a = random_alg(&mut r, 4);
        let (m, n) = (r.gen_range(1..=4u32), r.gen_range(1..=4u32));
        let lhs = a.pow(m * n);
        let rhs = a.pow(m).pow(n);
        assert_eq!(lhs.compare(&rhs), Ordering::Equal, "{a}: ^{m}^{n}");
        let v = to_f64(&approx(&a, 60)).powi((m * n) as i32);
        let got = to_f64(&approx(&lhs, 60));
        assert!((v - got).abs() <= 1e-6 * v.abs().max(1.0), "{a}^{}: {got} vs {v}", m * n);
    }
}

#[test]
fn rational_values_collapse() {
    let mut r = rng(0xA1_06);
    for _ in 0..200 {
        let (a, b) = (r.gen_range(-20i64..=20), r.gen_range(1i64..=9));
        // x^2 - c with c not a square has no rational roots
        let c = *[2i64, 3, 5, 6, 7, 10].get(r.gen_range(0..6)).unwrap();
        let p = &poly(&[-a, b]) * &poly(&[-c, 0, 1]);
        let want = q(a, b);
        for (lo, hi) in isolate_real_roots(&p).unwrap() {
            let x = AlgReal::new(&p, &lo, &hi).unwrap();
            let contains = lo < want && want < hi;
            match &x {
                AlgReal::Rat(v) => assert!(contains && *v == want, "{p} on [{lo}, {hi}]"),
                AlgReal::Root(_) => assert!(!contains, "{p}: rational root left as {x}"),
            }
        }
    }
    // powers that land on rationals collapse as well
    let s2 = AlgReal::nth_root(&q(2, 1), 2).unwrap();
    assert!(matches!(s2.pow(2), AlgReal::Rat(_)));
    assert!(matches!(s2.pow(3), AlgReal::Root(_)));
    assert!(matches!(AlgReal::nth_root(&q(27, 8), 3).unwrap(), AlgReal::Rat(_)));
}

#[test]
fn negation_reverses_order() {
    let mut r = rng(0xA1_07);
    for _ in 0..200 {
        let (a, b) = (random_alg(&mut r, 4), random_alg(&mut r, 4));
        assert_eq!(a.negate().compare(&b.negate()), a.compare(&b).reverse());
        assert_eq!(a.negate().negate().compare(&a), Ordering::Equal);
    }
}

#[test]
fn floor_and_ceil_bracket_the_value() {
    let mut r = rng(0xA1_08);
    for _ in 0..200 {
        let a = random_alg(&mut r, 5);
        let v = approx(&a, 80);
        let (f, c) = (a.floor(), a.ceil());
        assert!(Q::from_integer(f.clone()) <= v && v < Q::from_integer(f + 1), "{a}");
        assert!(Q::from_integer(c.clone() - 1) < v && v <= Q::from_integer(c), "{a}");
    }
}
