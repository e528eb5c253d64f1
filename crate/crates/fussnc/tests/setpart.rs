use std::collections::{BTreeMap, HashSet};

use fussnc::setpart::{
    bc_nabla, bc_nabla_partition, bc_noncrossing_partitions, boundary_delta, kdivisible_noncrossing, long_cycle, nabla, nc_lambda_count,
    noncrossing_partitions, openers, order_isomorphic, shuffle, symmetric_kdiv_count,
};
use fussnc::{Ground, SetPartition, SignedPerm};
use num_bigint::BigUint;
use proptest::prelude::*;

fn sp(s: &str) -> SetPartition {
    s.parse().unwrap()
}

fn perm(n: usize, s: &str) -> SignedPerm {
    SignedPerm::parse(n, s).unwrap()
}

/// All `k`-multichains `π_1 ≤ .. ≤ π_k` of noncrossing partitions of `[n]`.
fn multichains(n: usize, k: usize) -> Vec<Vec<SetPartition>> {
    let nc = noncrossing_partitions(n);
    let mut out: Vec<Vec<SetPartition>> = nc.iter().map(|p| vec![p.clone()]).collect();
    for _ in 1..k {
        out = out
            .into_iter()
            .flat_map(|c| {
                let last = c.last().unwrap().clone();
                nc.iter().filter(move |q| last.refines(q)).map(move |q| {
                    let mut c = c.clone();
                    c.push(q.clone());
                    c
                })
            })
            .collect();
    }
    out
}

fn fuss_catalan_a(n: usize, k: usize) -> usize {
    // (1/n) binom((k+1)n, n-1)
    let mut b: u128 = 1;
    for i in 0..(n - 1) as u128 {
        b = b * ((k as u128 + 1) * n as u128 - i) / (i + 1);
    }
    (b / n as u128) as usize
}

#[test]
fn parse_and_display() {
    let p = sp("1,2,5/3,4/6");
    assert_eq!(p.to_string(), "1,2,5/3,4/6");
    assert_eq!(p.ground(), Ground::Plain(6));
    let q = sp("1,-4/2,3/-1,4/-2,-3");
    assert_eq!(q.ground(), Ground::Signed(4));
    assert_eq!(sp(&q.to_string()), q);
    assert!("1,2/2,3".parse::<SetPartition>().is_err());
    assert!("1,3".parse::<SetPartition>().is_err());
}

#[test]
fn noncrossing_examples() {
    assert!(sp("1,2,5/3,4/6").is_noncrossing());
    assert!(!sp("1,3/2,4").is_noncrossing());
    assert!(SetPartition::singletons(Ground::Plain(7)).is_noncrossing());
    // clockwise order 1,2,-1,-2 on ±[2]
    assert!(sp("1,2/-1,-2").is_noncrossing());
    assert!(!sp("1,-1/2,-2").is_noncrossing());
}

#[test]
fn noncrossing_counts() {
    let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
    for n in 1..=8 {
        assert_eq!(noncrossing_partitions(n).len(), catalan[n]);
    }
    // centrally symmetric noncrossing partitions of ±[n]: binom(2n, n)
    for (n, c) in [(1, 2), (2, 6), (3, 20), (4, 70)] {
        assert_eq!(bc_noncrossing_partitions(n).len(), c);
    }
}

#[test]
fn kreweras_examples() {
    assert_eq!(sp("1,2,5/3,4/6").kreweras().unwrap(), sp("1,6/2/3,5/4"));
    for n in 1..=6 {
        let lo = SetPartition::singletons(Ground::Plain(n));
        let hi = SetPartition::full(Ground::Plain(n));
        assert_eq!(lo.kreweras().unwrap(), hi);
        assert_eq!(hi.kreweras().unwrap(), lo);
    }
    assert!(sp("1,3/2,4").kreweras().is_err());
}

#[test]
fn kreweras_is_a_bijection_and_squares_to_rotation() {
    for n in 1..=8 {
        let all = noncrossing_partitions(n);
        let images: HashSet<SetPartition> = all.iter().map(|p| p.kreweras().unwrap()).collect();
        assert_eq!(images.len(), all.len());
        for p in &all {
            let k = p.kreweras().unwrap();
            assert!(k.is_noncrossing());
            assert_eq!(k.blocks().len() + p.blocks().len(), n + 1);
            assert_eq!(k.kreweras().unwrap(), p.rotate(1), "n={n} {p}");
        }
    }
}

#[test]
fn omega_and_pi() {
    let p = sp("1,2,5/3,4/6");
    assert_eq!(p.omega().unwrap(), perm(6, "(1,2,5)(3,4)"));
    assert_eq!(SetPartition::pi_of(&perm(6, "(1,2,5)(3,4)(6)"), Ground::Plain(6)).unwrap(), p);
    assert!(SetPartition::singletons(Ground::Plain(4)).omega().unwrap().is_identity());
    assert!(SetPartition::pi_of(&perm(3, "(1,3,2)"), Ground::Plain(3)).is_err());
    for n in 1..=7 {
        for p in noncrossing_partitions(n) {
            assert_eq!(SetPartition::pi_of(&p.omega().unwrap(), Ground::Plain(n)).unwrap(), p);
        }
    }
}

#[test]
fn boundary_map_examples() {
    let c = long_cycle(4);
    let ws = [perm(4, "(1,4)"), perm(4, "(1,3,4)"), perm(4, "(1,3,4)")];
    assert_eq!(boundary_delta(&ws, &c), vec![perm(4, "(1,3)"), perm(4, "()"), perm(4, "(1,2)")]);
    let id = perm(4, "()");
    assert_eq!(boundary_delta(&[c.clone(), c.clone()], &c), vec![id.clone(), id.clone()]);
    assert_eq!(boundary_delta(&[id.clone(), id.clone()], &c), vec![id, c]);
}

#[test]
fn shuffle_examples() {
    assert_eq!(shuffle(&[sp("1,2"), sp("1,2")]).unwrap(), sp("1,3/2,4"));
    let blocks = order_isomorphic(&sp("1,3/2,4/5"), &[1, 5, 7, 8, 9]).unwrap();
    assert_eq!(SetPartition::from_blocks(Ground::Plain(9), {
        let mut b = blocks;
        b.extend([vec![2], vec![3], vec![4], vec![6]]);
        b
    })
    .unwrap()
    .to_string(), "1,7/2/3/4/5,8/6/9");
    let s = SetPartition::singletons(Ground::Plain(3));
    assert_eq!(shuffle(&[s.clone(), s.clone()]).unwrap(), SetPartition::singletons(Ground::Plain(6)));
}

#[test]
fn nabla_worked_example() {
    let chain = [sp("1,4/2/3"), sp("1,3,4/2"), sp("1,3,4/2")];
    // the literal composite; the printed value is 1,8,9,10,11,12/2,6,7/3,4,5
    assert_eq!(nabla(&chain).unwrap(), sp("1,8,9,10,11,12/2,3,7/4,5,6"));
    let s = SetPartition::singletons(Ground::Plain(2));
    assert_eq!(nabla(&[s.clone(), s]).unwrap(), sp("1,2/3,4"));
    assert!(nabla(&[sp("1,3/2/4"), sp("1,2/3/4")]).is_err());
}

#[test]
fn nabla_k1_is_identity() {
    for n in 1..=6 {
        for p in noncrossing_partitions(n) {
            assert_eq!(nabla(std::slice::from_ref(&p)).unwrap(), p);
        }
    }
}

#[test]
fn nabla_is_a_bijection_onto_kdivisible() {
    for n in 1..=4 {
        for k in 1..=3 {
            let chains = multichains(n, k);
            assert_eq!(chains.len(), fuss_catalan_a(n, k), "n={n} k={k}");
            let targets: HashSet<SetPartition> = kdivisible_noncrossing(n, k).into_iter().collect();
            assert_eq!(targets.len(), chains.len());
            let mut images = HashSet::new();
            for c in &chains {
                let p = nabla(c).unwrap();
                assert!(targets.contains(&p), "n={n} k={k}: {p}");
                images.insert(p.clone());
                // the restriction to {1, k+1, ..} is order-isomorphic to π_1
                let lab = p.block_lookup();
                let first = &c[0];
                let flab = first.block_lookup();
                for i in 1..=n as i32 {
                    for j in 1..=n as i32 {
                        let (a, b) = ((i - 1) * k as i32 + 1, (j - 1) * k as i32 + 1);
                        assert_eq!(lab(a) == lab(b), flab(i) == flab(j));
                    }
                }
                // a block of size b in π_1 lies in a block of size kb
                for b in first.blocks() {
                    let img = lab((b[0] - 1) * k as i32 + 1);
                    assert_eq!(p.blocks()[img].len(), k * b.len());
                }
            }
            assert_eq!(images.len(), chains.len());
        }
    }
}

/// Noncrossing partitions of `[n]` by block sizes, brute force.
fn lambda_counts(n: usize) -> BTreeMap<Vec<usize>, usize> {
    let mut out = BTreeMap::new();
    for p in noncrossing_partitions(n) {
        let mut l: Vec<usize> = p.blocks().iter().map(|b| b.len()).collect();
        l.sort_unstable_by(|a, b| b.cmp(a));
        *out.entry(l).or_insert(0) += 1;
    }
    out
}

#[test]
fn nc_lambda_counts() {
    assert_eq!(nc_lambda_count(&[5]).unwrap(), BigUint::from(1u32));
    assert_eq!(nc_lambda_count(&[1, 1, 1, 1]).unwrap(), BigUint::from(1u32));
    assert_eq!(nc_lambda_count(&[2, 1]).unwrap(), BigUint::from(3u32));
    assert!(nc_lambda_count(&[2, 0]).is_err());
    for n in 1..=8 {
        for (l, c) in lambda_counts(n) {
            assert_eq!(nc_lambda_count(&l).unwrap(), BigUint::from(c), "{l:?}");
        }
    }
}

/// Type `μ` of a `k`-divisible partition with `m`-fold symmetry: `μ_j` free
/// rotation orbits of blocks of size `kj`.
fn symmetric_type(p: &SetPartition, n: usize, k: usize, m: usize) -> Vec<usize> {
    let step = (k * n / m) as i64;
    let mut mu = vec![0; n];
    let mut seen = HashSet::new();
    for b in p.blocks() {
        if seen.contains(b) {
            continue;
        }
        let mut orbit = vec![b.clone()];
        let mut cur = b.clone();
        loop {
            let mut next: Vec<i32> = cur.iter().map(|&x| ((x as i64 - 1 + step).rem_euclid((k * n) as i64) + 1) as i32).collect();
            next.sort_unstable();
            if next == *b {
                break;
            }
            orbit.push(next.clone());
            cur = next;
        }
        for o in &orbit {
            seen.insert(o.clone());
        }
        if orbit.len() == m {
            mu[b.len() / k - 1] += 1;
        } else {
            assert_eq!(orbit.len(), 1, "noncrossing orbits are free or fixed");
        }
    }
    mu
}

fn all_types(n: usize, m: usize, j: usize, mu: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<usize>>) {
    if j > n {
        out.push(mu.clone());
        return;
    }
    let mut c = 0;
    while used + c * j * m <= n {
        mu[j - 1] = c;
        all_types(n, m, j + 1, mu, used + c * j * m, out);
        c += 1;
    }
    mu[j - 1] = 0;
}

#[test]
fn symmetric_kdiv_examples() {
    assert_eq!(symmetric_kdiv_count(&[0, 0], 2, 2, 2).unwrap(), BigUint::from(1u32));
    assert_eq!(symmetric_kdiv_count(&[1, 0], 2, 2, 2).unwrap(), BigUint::from(2u32));
    assert_eq!(symmetric_kdiv_count(&[1, 0, 0], 3, 1, 3).unwrap(), BigUint::from(1u32));
    assert!(symmetric_kdiv_count(&[0, 0, 0], 3, 1, 2).is_err());
    assert!(symmetric_kdiv_count(&[0], 1, 1, 1).is_err());
}

#[test]
fn symmetric_kdiv_matches_enumeration() {
    for n in 1..=12 {
        for k in 1..=12 / n {
            let parts = kdivisible_noncrossing(n, k);
            for m in (2..=k * n).filter(|m| (k * n) % m == 0) {
                let step = (k * n / m) as i64;
                let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
                for p in parts.iter().filter(|p| p.rotate(step) == **p) {
                    *counts.entry(symmetric_type(p, n, k, m)).or_insert(0) += 1;
                }
                let mut types = Vec::new();
                all_types(n, m, 1, &mut vec![0; n], 0, &mut types);
                for mu in types {
                    let brute = counts.get(&mu).copied().unwrap_or(0);
                    assert_eq!(symmetric_kdiv_count(&mu, n, k, m).unwrap(), BigUint::from(brute), "n={n} k={k} m={m} {mu:?}");
                }
            }
        }
    }
}

#[test]
fn openers_examples() {
    let p = sp("1/2,-4/3,-3/4,-2/-1");
    let ops = openers(&p).unwrap();
    let by_block: BTreeMap<String, Option<i32>> =
        p.blocks().iter().zip(&ops).map(|(b, o)| (format!("{b:?}"), *o)).collect();
    assert_eq!(by_block["[1]"], Some(1));
    assert_eq!(by_block["[2, -4]"], Some(-4));
    assert_eq!(by_block["[4, -2]"], Some(4));
    assert_eq!(by_block["[-1]"], Some(-1));
    assert_eq!(by_block["[3, -3]"], None);
    assert!(openers(&SetPartition::full(Ground::Signed(3))).unwrap().iter().all(|o| o.is_none()));
    let s = SetPartition::singletons(Ground::Signed(3));
    for (b, o) in s.blocks().iter().zip(openers(&s).unwrap()) {
        assert_eq!(o, Some(b[0]));
    }
}

#[test]
fn openers_are_block_members_and_pair_up() {
    for n in 1..=4 {
        for p in bc_noncrossing_partitions(n) {
            let ops = openers(&p).unwrap();
            for (b, o) in p.blocks().iter().zip(&ops) {
                if let Some(o) = o {
                    assert!(b.contains(o));
                    // the opener of -B is -(opener of B)
                    let neg = p.blocks().iter().position(|c| c.contains(&-o)).unwrap();
                    assert_eq!(ops[neg], Some(-o), "{p}");
                }
            }
        }
    }
}

#[test]
fn bc_nabla_k1_keeps_the_partition() {
    for n in 1..=3 {
        for p in bc_noncrossing_partitions(n) {
            assert_eq!(bc_nabla_partition(std::slice::from_ref(&p)).unwrap(), p);
        }
    }
}

#[test]
fn bc_nabla_is_symmetric_and_restricts() {
    // k = 2 multichains on ±[2]
    let nc = bc_noncrossing_partitions(2);
    let id = SignedPerm::identity(2);
    for a in &nc {
        for b in nc.iter().filter(|b| a.refines(b)) {
            let lp = bc_nabla(&id, &[a.clone(), b.clone()]).unwrap();
            assert!(lp.partition.is_centrally_symmetric() && lp.partition.is_noncrossing());
            assert_eq!(lp.partition.zero_block().is_some(), a.zero_block().is_some(), "{a} {b}");
            lp.validate(2).unwrap();
        }
    }
}

proptest! {
    #[test]
    fn rotation_preserves_noncrossing(idx in 0usize..1430, s in -20i64..20) {
        let all = noncrossing_partitions(8);
        let p = &all[idx % all.len()];
        prop_assert!(p.rotate(s).is_noncrossing());
        prop_assert_eq!(p.rotate(s).rotate(-s), p.clone());
        prop_assert_eq!(p.rotate(8), p.clone());
    }

    #[test]
    fn kreweras_reverses_refinement(i in 0usize..132, j in 0usize..132) {
        let all = noncrossing_partitions(6);
        let (p, q) = (&all[i % all.len()], &all[j % all.len()]);
        if p.refines(q) {
            prop_assert!(q.kreweras().unwrap().refines(&p.kreweras().unwrap()));
        }
    }
}
