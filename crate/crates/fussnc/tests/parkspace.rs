use fussnc::parkspace::{
    act_classical, all_pass, classical_from_chain, classical_from_labeled, enumerate_classical, equivariant_function_count,
    equivariant_function_formula, is_classical_park, power, ParkSpace,
};
use fussnc::setpart::kdivisible_noncrossing;
use fussnc::{GroupSpec, SetPartition, SignedPerm, DEFAULT_CAP};
use rand::{Rng, SeedableRng};

fn space(spec: GroupSpec, k: usize) -> ParkSpace {
    ParkSpace::build(spec, k, DEFAULT_CAP).unwrap()
}

fn parts(s: &[&str]) -> Vec<SetPartition> {
    s.iter().map(|p| p.parse().unwrap()).collect()
}

#[test]
fn class_counts() {
    for (spec, k) in [
        (GroupSpec::a(2), 1),
        (GroupSpec::a(3), 2),
        (GroupSpec::a(4), 1),
        (GroupSpec::b(2), 3),
        (GroupSpec::d(3), 1),
        (GroupSpec::i2(5), 2),
    ] {
        let p = space(spec, k);
        let expected = power(k * spec.coxeter_number() + 1, spec.rank());
        assert_eq!(p.len() as u128, expected, "{spec} k={k}");
    }
}

#[test]
fn rank_one_classes() {
    for k in 1..=4 {
        let p = space(GroupSpec::a(2), k);
        assert_eq!(p.len(), 2 * k + 1);
        // g.[w, V^i 0^{k-i}] = [w, V^{i+1} 0^{k-i-1}] keeps the representative for 0 < i < k
        for id in 0..p.len() as u32 {
            let c = p.class(id);
            let ch = p.chain(c.chain);
            let i = ch.0.iter().filter(|&&u| u == p.group().identity()).count();
            if i > 0 && i < k {
                let q = p.class(p.act_g(id));
                assert_eq!(q.rep, c.rep);
                let j = p.chain(q.chain).0.iter().filter(|&&u| u == p.group().identity()).count();
                assert_eq!(j, i + 1);
            }
        }
    }
}

#[test]
fn rank_one_g_on_full_chain() {
    let k = 3;
    let p = space(GroupSpec::a(2), k);
    let g = p.group();
    let s = g.coxeter();
    for id in 0..p.len() as u32 {
        let c = p.class(id);
        if p.chain(c.chain).0.iter().all(|&u| u == g.identity()) {
            let q = p.class(p.act_g(id));
            assert_eq!(q.rep, g.mul(s, c.rep));
            let ids = p.chain(q.chain).0.iter().filter(|&&u| u == g.identity()).count();
            assert_eq!(ids, 1);
        }
    }
}

#[test]
fn weak_small() {
    for (spec, k) in [(GroupSpec::a(3), 2), (GroupSpec::b(2), 2), (GroupSpec::d(3), 1), (GroupSpec::i2(6), 2)] {
        let rows = space(spec, k).verify_weak().unwrap();
        assert!(all_pass(&rows), "{spec} k={k}: {:?}", rows.iter().find(|r| !r.pass));
    }
}

#[test]
fn a2_k2_fixed_points_at_d0() {
    // (kn+1)^{r(w)-1}
    let p = space(GroupSpec::a(3), 2);
    let g = p.group();
    assert_eq!(p.fixed_count(g.coxeter(), 0), 1);
    let t = g.index_of(&fussnc::GroupElem::parse(g.spec(), "(1,2)").unwrap()).unwrap();
    assert_eq!(p.fixed_count(t, 0), 7);
    assert_eq!(p.fixed_count(g.identity(), 0), 49);
}

#[test]
fn g_power_kh_is_identity_and_kthpower() {
    for (spec, k) in [(GroupSpec::a(3), 2), (GroupSpec::b(2), 3), (GroupSpec::i2(4), 3)] {
        let p = space(spec, k);
        let g = p.group();
        let cinv = g.inv(g.coxeter());
        for id in 0..p.len() as u32 {
            assert_eq!(p.act_g_pow(id, p.kh()), id);
            let c = p.class(id);
            let direct = p.class_of(g.mul(c.rep, cinv), p.conj_chain_by_c(c.chain));
            assert_eq!(p.act_g_pow(id, k), direct);
        }
    }
}

#[test]
fn actions_commute() {
    let p = space(GroupSpec::b(2), 2);
    for v in 0..p.group().size() as u32 {
        for id in 0..p.len() as u32 {
            assert_eq!(p.act_w(v, p.act_g(id)), p.act_g(p.act_w(v, id)));
        }
    }
}

#[test]
fn g_action_well_defined_under_fuzzing() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let p = space(GroupSpec::b(3), 2);
    let g = p.group();
    for _ in 0..2000 {
        let id = rng.gen_range(0..p.len() as u32);
        let c = p.class(id);
        let x1 = g.fixed_flat_id(p.chain(c.chain).first());
        let iso = g.isotropy(x1);
        let h = iso[rng.gen_range(0..iso.len())];
        assert_eq!(p.act_g_raw(g.mul(c.rep, h), c.chain), p.act_g(id));
    }
}

#[test]
fn classical_counts() {
    assert_eq!(enumerate_classical(3, 1).len(), 16);
    for n in 1..=4 {
        for k in 1..=3 {
            let all = enumerate_classical(n, k);
            assert_eq!(all.len() as u128, power(k * n + 1, n - 1));
            assert!(all.iter().all(|a| is_classical_park(a, n, k)));
        }
    }
    assert!(is_classical_park(&[1, 3, 5], 3, 2));
    assert!(!is_classical_park(&[1, 4, 4], 3, 2));
}

#[test]
fn classical_figure_vectors_n3() {
    // π = {1,8,9 / 2..7} with f({1,8,9}) = {2}, f({2..7}) = {1,3}
    let p = space(GroupSpec::a(3), 3);
    let target = "1,8,9:{2} / 2,3,4,5,6,7:{1,3}";
    let id = (0..p.len() as u32).find(|&i| p.labeled(i).unwrap().to_string() == target).unwrap();
    assert_eq!(p.to_classical(id).unwrap(), vec![2, 1, 2]);
    let g = p.group();
    let v = g.index_of(&fussnc::GroupElem::parse(g.spec(), "(1,2)").unwrap()).unwrap();
    assert_eq!(p.to_classical(p.act_w(v, id)).unwrap(), vec![1, 2, 2]);
    // g rotates the labeled partition one step clockwise
    let rotated = p.act_g(id);
    assert_eq!(p.labeled(rotated).unwrap(), p.labeled(id).unwrap().rotate(1));
    assert_eq!(p.to_classical(rotated).unwrap(), vec![3, 1, 3]);
}

#[test]
fn g_rotates_labeled_partitions() {
    for (spec, k) in [(GroupSpec::a(3), 2), (GroupSpec::a(4), 2), (GroupSpec::b(2), 2), (GroupSpec::b(3), 1)] {
        let p = space(spec, k);
        for id in 0..p.len() as u32 {
            assert_eq!(p.labeled(p.act_g(id)).unwrap(), p.labeled(id).unwrap().rotate(1), "{spec} k={k}");
        }
    }
}

#[test]
fn classical_figure_vectors_n9() {
    // π = {1,9 / 2,3,4,8 / 5,7 / 6} labeled {4,8}, {1,3,5,6}, {2,7}, {9}
    let chain = parts(&["1,9/2,3,4,8/5,7/6"]);
    let w = SignedPerm::from_images(vec![4, 1, 3, 5, 2, 9, 7, 6, 8]).unwrap();
    let lp = fussnc::setpart::labeled_nabla(&w, &chain).unwrap();
    assert_eq!(lp.to_string(), "1,9:{4,8} / 2,3,4,8:{1,3,5,6} / 5,7:{2,7} / 6:{9}");
    let a = classical_from_chain(&w, &chain).unwrap();
    assert_eq!(a, vec![2, 5, 2, 1, 2, 2, 5, 1, 6]);
    let v = SignedPerm::parse(9, "(1,3,4)(2,5,8)(6,9,7)").unwrap();
    assert_eq!(act_classical(&v, &a), vec![1, 1, 2, 2, 5, 5, 6, 2, 2]);
    assert_eq!(classical_from_chain(&v.mul(&w), &chain).unwrap(), vec![1, 1, 2, 2, 5, 5, 6, 2, 2]);
    assert_eq!(classical_from_labeled(&lp.rotate(1)), vec![3, 6, 3, 1, 3, 3, 6, 1, 7]);
}

#[test]
fn to_classical_is_a_bijection() {
    for n in 2..=4 {
        for k in 1..=3 {
            let p = space(GroupSpec::a(n), k);
            let mut got: Vec<Vec<u32>> = (0..p.len() as u32).map(|i| p.to_classical(i).unwrap()).collect();
            got.sort();
            assert_eq!(got, enumerate_classical(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn to_classical_is_equivariant() {
    let p = space(GroupSpec::a(3), 2);
    for v in 0..p.group().size() as u32 {
        let vp = p.group().elem(v).as_signed().unwrap().clone();
        for id in 0..p.len() as u32 {
            let a = p.to_classical(id).unwrap();
            assert_eq!(p.to_classical(p.act_w(v, id)).unwrap(), act_classical(&vp, &a));
        }
    }
}

#[test]
fn orbit_multiplicities_type_a() {
    for n in 2..=4 {
        for k in 1..=3 {
            let p = space(GroupSpec::a(n), k);
            let mut by_shape = std::collections::BTreeMap::new();
            for q in kdivisible_noncrossing(n, k) {
                let mut l: Vec<usize> = q.blocks().iter().map(|b| b.len() / k).collect();
                l.sort_unstable_by(|a, b| b.cmp(a));
                *by_shape.entry(l).or_insert(0usize) += 1;
            }
            let got: std::collections::BTreeMap<Vec<usize>, usize> =
                p.orbit_decomposition().into_iter().map(|o| (o.lambda.unwrap(), o.count)).collect();
            assert_eq!(got, by_shape, "n={n} k={k}");
        }
    }
}

#[test]
fn prep_one_examples() {
    let c3 = SignedPerm::parse(3, "(1,2,3)").unwrap();
    assert_eq!(equivariant_function_count(3, 2, &c3, 2).unwrap(), 7);
    let w = SignedPerm::parse(4, "(1,2)(3,4)").unwrap();
    assert_eq!(equivariant_function_count(4, 1, &w, 2).unwrap(), 25);
    assert_eq!(equivariant_function_formula(4, 1, &w, 2), 25);
    assert!(equivariant_function_count(3, 1, &c3, 3).is_err());
}
