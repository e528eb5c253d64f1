use fussnc::ncw::{g_act_chain, NCPoset};
use fussnc::qcatalan::{cat_poly, cyclotomic, eval_at_root, verify_csp, CycloInt, IntPoly};
use fussnc::{Group, GroupSpec, DEFAULT_CAP};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn specs() -> Vec<GroupSpec> {
    let mut v = vec![GroupSpec::a(2), GroupSpec::a(3), GroupSpec::a(4), GroupSpec::b(2), GroupSpec::b(3), GroupSpec::d(3)];
    v.extend((3..=8).map(GroupSpec::i2));
    v
}

#[test]
fn poly_arithmetic() {
    let p = IntPoly::from_i64(&[1, 2, 0, 0]);
    assert_eq!(p.coeffs().len(), 2);
    assert_eq!(p.to_string(), "1+2q");
    assert_eq!(IntPoly::from_i64(&[0, -1, 0, 3]).to_string(), "-q+3q^3");
    assert_eq!(IntPoly::zero().to_string(), "0");
    let a = IntPoly::q_int(3);
    let b = IntPoly::from_i64(&[-1, 1]);
    assert_eq!(a.mul(&b), IntPoly::from_i64(&[-1, 0, 0, 1]));
    assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
    assert!(a.div_exact(&IntPoly::from_i64(&[1, 1])).is_err());
    assert!(a.divrem(&IntPoly::from_i64(&[1, 2])).is_err());
    assert_eq!(a.fold(2), IntPoly::from_i64(&[2, 1]));
    assert!(a.is_palindromic());
}

#[test]
fn cyclotomic_products() {
    for m in 1..=64 {
        let prod = (1..=m).filter(|d| m % d == 0).fold(IntPoly::one(), |acc, d| acc.mul(&cyclotomic(d)));
        assert_eq!(prod, IntPoly::monomial(1, m).sub(&IntPoly::one()), "m={m}");
    }
    assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
    assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
}

#[test]
fn cat_poly_examples() {
    // A_1 has h = 2 and one degree 2: (1 - q^4)/(1 - q^2)
    assert_eq!(cat_poly(&GroupSpec::a(2), 1).unwrap(), IntPoly::from_i64(&[1, 0, 1]));
    assert_eq!(cat_poly(&GroupSpec::a(3), 1).unwrap().eval_at_one(), BigInt::from(5));
    assert_eq!(cat_poly(&GroupSpec::a(3), 2).unwrap().eval_at_one(), BigInt::from(12));
    // q-Catalan for S_3: 1 + q^2 + q^3 + q^4 + q^6
    assert_eq!(cat_poly(&GroupSpec::a(3), 1).unwrap(), IntPoly::from_i64(&[1, 0, 1, 1, 1, 0, 1]));
}

#[test]
fn cat_poly_shape() {
    for spec in specs() {
        for k in 1..=3 {
            let p = cat_poly(&spec, k).unwrap();
            assert!(p.coeffs().iter().all(|c| !c.is_negative()), "{spec} k={k}");
            assert!(p.is_palindromic(), "{spec} k={k}");
            let kh = k * spec.coxeter_number();
            let d = spec.degrees();
            let at_one = d.iter().map(|&x| BigInt::from(kh + x)).product::<BigInt>() / d.iter().map(|&x| BigInt::from(x)).product::<BigInt>();
            assert_eq!(p.eval_at_one(), at_one);
            assert_eq!(p.degree(), spec.rank() * kh);
        }
    }
}

#[test]
fn root_evaluation_examples() {
    let p = cat_poly(&GroupSpec::a(3), 1).unwrap();
    assert_eq!(eval_at_root(&p, 3, 0).unwrap().as_integer(), Some(BigInt::from(5)));
    assert_eq!(eval_at_root(&IntPoly::q_int(3), 3, 1).unwrap().as_integer(), Some(BigInt::zero()));
    assert_eq!(eval_at_root(&p, 3, 1).unwrap().as_integer(), Some(BigInt::from(2)));
    assert_eq!(eval_at_root(&p, 3, 2).unwrap().as_integer(), Some(BigInt::from(2)));
    // q^2 at a primitive cube root is -1 - ζ
    let e = eval_at_root(&IntPoly::monomial(1, 2), 3, 1).unwrap();
    assert!(!e.is_integer());
    assert_eq!(e, CycloInt { m: 3, coeffs: vec![BigInt::from(-1), BigInt::from(-1)] });
    assert!(eval_at_root(&p, 3, 3).is_err());
    assert!(eval_at_root(&p, 0, 0).is_err());
}

/// Fixed chains of `g^d` by direct iteration.
fn fixed_chains(spec: GroupSpec, k: usize) -> Vec<usize> {
    let g = Group::build(spec, DEFAULT_CAP).unwrap();
    let chains = NCPoset::build(&g).multichains(k);
    let kh = k * spec.coxeter_number();
    let mut out = vec![0; kh];
    for c in &chains {
        let mut x = c.clone();
        for slot in out.iter_mut() {
            if x == *c {
                *slot += 1;
            }
            x = g_act_chain(&g, &x);
        }
    }
    out
}

#[test]
fn csp_examples() {
    assert_eq!(fixed_chains(GroupSpec::a(3), 1), vec![5, 2, 2]);
    let g = Group::build(GroupSpec::a(3), DEFAULT_CAP).unwrap();
    let rows = verify_csp(&g, 1).unwrap();
    assert_eq!(rows.iter().map(|r| r.actual).collect::<Vec<_>>(), vec![5, 2, 2]);
    let g = Group::build(GroupSpec::b(2), DEFAULT_CAP).unwrap();
    let rows = verify_csp(&g, 2).unwrap();
    let brute = fixed_chains(GroupSpec::b(2), 2);
    assert_eq!(rows.iter().map(|r| r.actual as usize).collect::<Vec<_>>(), brute);
    assert!(rows.iter().all(|r| r.pass));
}

#[test]
fn csp_holds() {
    for spec in specs() {
        let g = Group::build(spec, DEFAULT_CAP).unwrap();
        for k in 1..=3 {
            let rows = verify_csp(&g, k).unwrap();
            assert_eq!(rows.len(), k * spec.coxeter_number());
            assert!(rows.iter().all(|r| r.pass), "{spec} k={k}: {:?}", rows.iter().find(|r| !r.pass));
        }
    }
}

fn to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap()
}

proptest! {
    #[test]
    fn exact_evaluation_matches_floating(coeffs in proptest::collection::vec(-20i64..20, 1..30), m in 1usize..24, d in 0usize..24) {
        let d = d % m;
        let p = IntPoly::from_i64(&coeffs);
        let e = eval_at_root(&p, m, d).unwrap();
        let theta = 2.0 * std::f64::consts::PI * d as f64 / m as f64;
        let direct = p.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            (re + to_f64(c) * (theta * i as f64).cos(), im + to_f64(c) * (theta * i as f64).sin())
        });
        let reduced = e.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            (re + to_f64(c) * (theta * i as f64).cos(), im + to_f64(c) * (theta * i as f64).sin())
        });
        prop_assert!((direct.0 - reduced.0).abs() < 1e-6 && (direct.1 - reduced.1).abs() < 1e-6);
    }

    #[test]
    fn division_roundtrip(a in proptest::collection::vec(-9i64..9, 1..12), b in proptest::collection::vec(-9i64..9, 0..6)) {
        let mut b = b;
        b.push(1);
        let (a, b) = (IntPoly::from_i64(&a), IntPoly::from_i64(&b));
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }
}
