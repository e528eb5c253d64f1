//! The locus `V^Θ` for the power hsops `θ_i = x_i^{kh+1}` (types B and D)
//! and `x^{km+1}, y^{km+1}` (type I2(m), diagonal coordinates), with its
//! `W × Z_kh` action, the type BC bijections `φ`/`ψ` and an equivariant
//! bijection onto `Park^NC` in type I2(m).
//!
//! A coordinate is `0` or a root of unity `ω^e`, stored as `Some(e)` with
//! `e` modulo `kh`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncw::NCChain;
use crate::parkspace::{power, ParkSpace};
use crate::reflgroup::{Dihedral, Family, Group, GroupElem, GroupSpec};
use crate::setpart::{openers, Ground, LabeledPartition, SetPartition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocusPoint(pub Vec<Option<u32>>);

impl LocusPoint {
    /// JSON array with `"0"` for zero coordinates and exponents otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|c| match c {
                    None => serde_json::json!("0"),
                    Some(e) => serde_json::json!(e),
                })
                .collect(),
        )
    }
}

impl fmt::Display for LocusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|c| match c {
                None => "0".to_string(),
                Some(0) => "1".to_string(),
                Some(1) => "ω".to_string(),
                Some(e) => format!("ω^{e}"),
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The full locus, with points numbered in mixed radix `kh + 1`.
pub struct Locus {
    spec: GroupSpec,
    k: usize,
    kh: u32,
    rank: usize,
}

impl Locus {
    pub fn new(spec: GroupSpec, k: usize, cap: u64) -> Result<Locus> {
        if spec.family == Family::A {
            return Err(Error::Invalid("no explicit locus is modeled in type A".into()));
        }
        if k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        let kh = k * spec.coxeter_number();
        let needed = power(kh + 1, spec.rank());
        if needed > cap as u128 {
            return Err(Error::CapExceeded { what: format!("locus of {spec} with k={k}"), needed, cap });
        }
        Ok(Locus { spec, k, kh: kh as u32, rank: spec.rank() })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kh(&self) -> u32 {
        self.kh
    }

    pub fn len(&self) -> usize {
        (self.kh as usize + 1).pow(self.rank as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, mut id: u32) -> LocusPoint {
        let base = self.kh + 1;
        let mut v = vec![None; self.rank];
        for c in v.iter_mut().rev() {
            let x = id % base;
            *c = if x == 0 { None } else { Some(x - 1) };
            id /= base;
        }
        LocusPoint(v)
    }

    pub fn id(&self, p: &LocusPoint) -> u32 {
        p.0.iter().fold(0, |acc, c| acc * (self.kh + 1) + c.map_or(0, |e| e + 1))
    }

    pub fn points(&self) -> impl Iterator<Item = LocusPoint> + '_ {
        (0..self.len() as u32).map(|i| self.point(i))
    }

    fn neg(&self, c: Option<u32>) -> Option<u32> {
        c.map(|e| (e + self.kh / 2) % self.kh)
    }

    fn shift(&self, c: Option<u32>, by: i64) -> Option<u32> {
        c.map(|e| (e as i64 + by).rem_euclid(self.kh as i64) as u32)
    }

    /// `w.v`: `(w.v)_{|w(i)|} = sign(w(i)) v_i` in types B/D; in I2(m),
    /// `ρ^a.(v_1,v_2) = (ω^{ka}v_1, ω^{-ka}v_2)`, `σ_a.(v_1,v_2) = (ω^{ka}v_2, ω^{-ka}v_1)`.
    pub fn act_w(&self, w: &GroupElem, p: &LocusPoint) -> LocusPoint {
        match w {
            GroupElem::Signed(w) => {
                let mut out = vec![None; self.rank];
                for (i, &c) in p.0.iter().enumerate() {
                    let t = w.apply(i as i32 + 1);
                    out[t.unsigned_abs() as usize - 1] = if t > 0 { c } else { self.neg(c) };
                }
                LocusPoint(out)
            }
            GroupElem::Dihedral(d) => {
                let ka = (self.k as i64) * d.j as i64;
                let (a, b) = if d.reflection { (p.0[1], p.0[0]) } else { (p.0[0], p.0[1]) };
                LocusPoint(vec![self.shift(a, ka), self.shift(b, -ka)])
            }
        }
    }

    /// `g^d` multiplies every coordinate by `ω^d`.
    pub fn act_g(&self, p: &LocusPoint, d: usize) -> LocusPoint {
        LocusPoint(p.0.iter().map(|&c| self.shift(c, d as i64)).collect())
    }

    /// `|{p : v.g^d.p = p}|`.
    pub fn fixed_count(&self, w: &GroupElem, d: usize) -> u128 {
        (0..self.len() as u32)
            .into_par_iter()
            .filter(|&i| {
                let p = self.point(i);
                self.act_w(w, &self.act_g(&p, d)) == p
            })
            .count() as u128
    }

    /// Dimension of the least flat through `p`.
    pub fn point_dimension(&self, p: &LocusPoint) -> usize {
        match self.spec.family {
            Family::I2 => match (p.0[0], p.0[1]) {
                (None, None) => 0,
                (Some(i), Some(j)) if (i as i64 - j as i64).rem_euclid(self.k as i64) == 0 => 1,
                _ => 2,
            },
            _ => {
                let half = self.kh / 2;
                let mut classes: Vec<u32> = p.0.iter().flatten().map(|e| e % half).collect();
                classes.sort_unstable();
                classes.dedup();
                let zeros = p.0.iter().filter(|c| c.is_none()).count();
                // D_n has no flat with a single vanishing coordinate
                classes.len() + usize::from(self.spec.family == Family::D && zeros == 1)
            }
        }
    }

    /// Dimension of the least flat through `p`, by scanning all flats `X`
    /// and testing whether `W_X` fixes `p`.
    pub fn point_dimension_scan(&self, group: &Group, p: &LocusPoint) -> usize {
        (0..group.flats().len() as u32)
            .filter(|&f| group.isotropy(f).iter().all(|&w| self.act_w(group.elem(w), p) == *p))
            .map(|f| group.flat(f).dim())
            .min()
            .unwrap()
    }
}

/// One line of the locus/park character comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntermediateRow {
    pub elem: u32,
    pub d: usize,
    pub mult: usize,
    pub expected: u128,
    pub park: u128,
    pub locus: u128,
    pub pass: bool,
}

/// For one `v` per conjugacy class and every `d`, compares the fixed points
/// of `(v, g^d)` on `V^Θ` and on `Park^NC` with `(kh+1)^{mult_v(ω^d)}`.
pub fn verify_intermediate_character(space: &ParkSpace, locus: &Locus) -> Result<Vec<IntermediateRow>> {
    let g = space.group();
    let kh = space.kh();
    let mut rows = Vec::new();
    let reps: Vec<u32> = g.conjugacy_classes().iter().map(|c| c[0]).collect();
    for d in 0..kh {
        for &v in &reps {
            let mult = g.eigenvalue_multiplicity(v, d, kh)?;
            let expected = power(kh + 1, mult);
            let park = space.fixed_count(v, d);
            let loc = locus.fixed_count(g.elem(v), d);
            rows.push(IntermediateRow {
                elem: v,
                d,
                mult,
                expected,
                park,
                locus: loc,
                pass: expected == park && park == loc,
            });
        }
    }
    Ok(rows)
}

/// Exponent of `ω` attached to an opener `x ∈ ±[kn]`: `x` for `x > 0`,
/// `|x| + kn` (that is, `-ω^{|x|}`) for `x < 0`.
fn opener_exponent(x: i32, kn: u32) -> u32 {
    if x > 0 {
        x as u32 % (2 * kn)
    } else {
        (x.unsigned_abs() + kn) % (2 * kn)
    }
}

/// `φ(π, f)` in type B_n: zero for labels of the zero block, `±ω^j` for
/// labels of a block opened by `±j`.
pub fn bc_phi(lp: &LabeledPartition) -> Result<LocusPoint> {
    let kn = match lp.partition.ground() {
        Ground::Signed(kn) => kn as u32,
        Ground::Plain(_) => return Err(Error::Invalid("φ takes a partition of ±[kn]".into())),
    };
    let n = lp.labels.iter().map(|l| l.len()).sum::<usize>() / 2;
    let ops = openers(&lp.partition)?;
    let mut v: Vec<Option<Option<u32>>> = vec![None; n];
    for (l, op) in lp.labels.iter().zip(&ops) {
        for &y in l {
            let val = op.map(|x| {
                let e = opener_exponent(x, kn);
                if y > 0 {
                    e
                } else {
                    (e + kn) % (2 * kn)
                }
            });
            let slot = &mut v[y.unsigned_abs() as usize - 1];
            if slot.is_some_and(|old| old != val) {
                return Err(Error::Invalid("labels are not centrally symmetric".into()));
            }
            *slot = Some(val);
        }
    }
    v.into_iter()
        .map(|c| c.ok_or_else(|| Error::Invalid("labels do not cover ±[n]".into())))
        .collect::<Result<Vec<_>>>()
        .map(LocusPoint)
}

/// `ψ(v)`: left parentheses before every `±j` with some `v_i = ±ω^j`, each
/// closed after `k·#{i : v_i = ±ω^j}` symbols of the iterative pairing.
pub fn bc_psi(v: &LocusPoint, k: usize) -> Result<LabeledPartition> {
    let n = v.0.len();
    let kn = k * n;
    let ground = Ground::Signed(kn);
    let size = 2 * kn;
    let twokn = 2 * kn as u32;
    if v.0.iter().flatten().any(|&e| e >= twokn) {
        return Err(Error::Invalid(format!("{v} is not a point of the B_{n} locus with k = {k}")));
    }
    // block size opened at each clockwise position
    let mut open = vec![0usize; size + 1];
    for p in 1..=size {
        let e = opener_exponent(ground.at(p), kn as u32) % kn as u32;
        let cnt = v.0.iter().flatten().filter(|&&x| x % kn as u32 == e).count();
        open[p] = k * cnt;
    }
    let mut alive = vec![true; size + 1];
    let mut blocks: Vec<Vec<i32>> = Vec::new();
    let mut labels: Vec<Vec<i32>> = Vec::new();
    let mut pending: Vec<usize> = (1..=size).filter(|&p| open[p] > 0).collect();
    while !pending.is_empty() {
        let live: Vec<usize> = (1..=size).filter(|&q| alive[q]).collect();
        let at: HashMap<usize, usize> = live.iter().enumerate().map(|(t, &q)| (q, t)).collect();
        let pick = pending.iter().position(|&p| {
            let t = at[&p];
            let s = open[p];
            s <= live.len() && (1..s).all(|r| {
                let q = live[(t + r) % live.len()];
                !pending.contains(&q)
            })
        });
        let Some(idx) = pick else {
            return Err(Error::Logic(format!("no closable parenthesis while building ψ{v}")));
        };
        let p = pending.remove(idx);
        let t = at[&p];
        let block: Vec<i32> = (0..open[p]).map(|r| ground.at(live[(t + r) % live.len()])).collect();
        for &x in &block {
            alive[ground.pos(x)] = false;
        }
        let e = opener_exponent(ground.at(p), kn as u32);
        let mut lab = Vec::new();
        for (i, c) in v.0.iter().enumerate() {
            match c {
                Some(x) if *x == e => lab.push(i as i32 + 1),
                Some(x) if (*x + kn as u32) % twokn == e => lab.push(-(i as i32 + 1)),
                _ => {}
            }
        }
        blocks.push(block);
        labels.push(lab);
    }
    let zero: Vec<i32> = (1..=size).filter(|&q| alive[q]).map(|q| ground.at(q)).collect();
    if !zero.is_empty() {
        blocks.push(zero);
        let mut lab = Vec::new();
        for (i, c) in v.0.iter().enumerate() {
            if c.is_none() {
                lab.push(i as i32 + 1);
                lab.push(-(i as i32 + 1));
            }
        }
        labels.push(lab);
    }
    assemble(ground, n, blocks, labels)
}

fn assemble(ground: Ground, n: usize, blocks: Vec<Vec<i32>>, labels: Vec<Vec<i32>>) -> Result<LabeledPartition> {
    let lg = Ground::Signed(n);
    let partition = SetPartition::from_blocks(ground, blocks.clone())?;
    let mut out = vec![Vec::new(); partition.blocks().len()];
    {
        let lookup = partition.block_lookup();
        for (b, mut l) in blocks.into_iter().zip(labels) {
            l.sort_by_key(|&x| lg.pos(x));
            out[lookup(b[0])] = l;
        }
    }
    Ok(LabeledPartition { partition, labels: out })
}

/// `φ` and `ψ` between the classes of `Park^NC_{B_n}(k)` and `V^Θ`, as
/// tables of ids.
pub struct BcBijection {
    pub to_point: Vec<u32>,
    pub to_class: Vec<u32>,
}

impl BcBijection {
    /// Builds both tables and checks that they are mutually inverse.
    pub fn build(space: &ParkSpace, locus: &Locus) -> Result<BcBijection> {
        if space.group().spec().family != Family::B || locus.spec() != space.group().spec() {
            return Err(Error::Invalid("φ/ψ are defined in type B".into()));
        }
        let labeled: Vec<LabeledPartition> =
            (0..space.len() as u32).into_par_iter().map(|p| space.labeled(p)).collect::<Result<_>>()?;
        let by_label: HashMap<&LabeledPartition, u32> = labeled.iter().enumerate().map(|(i, l)| (l, i as u32)).collect();
        let to_point: Vec<u32> =
            labeled.par_iter().map(|l| bc_phi(l).map(|v| locus.id(&v))).collect::<Result<_>>()?;
        let to_class: Vec<u32> = (0..locus.len() as u32)
            .into_par_iter()
            .map(|i| {
                let lp = bc_psi(&locus.point(i), space.k())?;
                by_label
                    .get(&lp)
                    .copied()
                    .ok_or_else(|| Error::Logic(format!("ψ{} = {lp} is not a parking class", locus.point(i))))
            })
            .collect::<Result<_>>()?;
        Ok(BcBijection { to_point, to_class })
    }

    pub fn mutually_inverse(&self) -> bool {
        self.to_point.len() == self.to_class.len()
            && self.to_point.iter().enumerate().all(|(p, &x)| self.to_class[x as usize] == p as u32)
            && self.to_class.iter().enumerate().all(|(x, &p)| self.to_point[p as usize] == x as u32)
    }

    /// Checks `φ(x.p) = x.φ(p)` for every group element and for `g`.
    pub fn equivariance_failures(&self, space: &ParkSpace, locus: &Locus) -> usize {
        let g = space.group();
        (0..space.len() as u32)
            .into_par_iter()
            .map(|p| {
                let v = locus.point(self.to_point[p as usize]);
                let mut bad = 0;
                if locus.id(&locus.act_g(&v, 1)) != self.to_point[space.act_g(p) as usize] {
                    bad += 1;
                }
                for w in 0..g.size() as u32 {
                    if locus.id(&locus.act_w(g.elem(w), &v)) != self.to_point[space.act_w(w, p) as usize] {
                        bad += 1;
                    }
                }
                bad
            })
            .sum()
    }
}

/// A seed `point ↦ [1, chain]` of the dihedral construction.
#[derive(Clone, Debug)]
pub struct DihedralSeed {
    pub point: LocusPoint,
    pub chain: NCChain,
    pub description: String,
}

/// The orbit representatives: `(0,0) ↦ [1,0^k]`, `(0,1) ↦ [1,V^k]`,
/// `(1,1) ↦ [1,H^k]`, for even `m` also `(1,ω^k) ↦ [1,H'^k]`, and
/// `(ω^i,1) ↦ [1, V H^i 0^{k-i-1}]`, where `H`, `H'` are the mirrors of
/// `s`, `t`.
pub fn dihedral_seeds(group: &Group, k: usize) -> Result<Vec<DihedralSeed>> {
    let spec = group.spec();
    if spec.family != Family::I2 {
        return Err(Error::Invalid("the dihedral construction needs type I2(m)".into()));
    }
    let m = spec.param as u32;
    let id = group.identity();
    let c = group.coxeter();
    let s = group.index_of(&GroupElem::Dihedral(Dihedral::refl(m, 0))).unwrap();
    let t = group.index_of(&GroupElem::Dihedral(Dihedral::refl(m, m as i64 - 1))).unwrap();
    let chain = |parts: &[(u32, usize)]| NCChain(parts.iter().flat_map(|&(u, r)| std::iter::repeat_n(u, r)).collect());
    let pt = |a: Option<u32>, b: Option<u32>| LocusPoint(vec![a, b]);
    let mut seeds = vec![
        DihedralSeed { point: pt(None, None), chain: chain(&[(c, k)]), description: "(0,0) -> [1, 0^k]".into() },
        DihedralSeed { point: pt(None, Some(0)), chain: chain(&[(id, k)]), description: "(0,1) -> [1, V^k]".into() },
        DihedralSeed { point: pt(Some(0), Some(0)), chain: chain(&[(s, k)]), description: "(1,1) -> [1, H^k]".into() },
    ];
    let top = if m % 2 == 0 {
        seeds.push(DihedralSeed {
            point: pt(Some(0), Some(k as u32)),
            chain: chain(&[(t, k)]),
            description: "(1,ω^k) -> [1, H'^k]".into(),
        });
        k.saturating_sub(1)
    } else {
        k / 2
    };
    for i in 1..=top {
        seeds.push(DihedralSeed {
            point: pt(Some(i as u32), Some(0)),
            chain: chain(&[(id, 1), (s, i), (c, k - i - 1)]),
            description: format!("(ω^{i},1) -> [1, V H^{i} 0^{}]", k - i - 1),
        });
    }
    Ok(seeds)
}

/// An equivariant bijection `Park^NC_{I2(m)}(k) → V^Θ`, grown from the seeds
/// along the generators `(s,1)`, `(c,1)`, `(1,g)`.
pub struct DihedralBijection {
    pub seeds: Vec<DihedralSeed>,
    /// Orbit size reached from each seed.
    pub orbit_sizes: Vec<usize>,
    pub to_point: Vec<u32>,
}

pub fn dihedral_bijection(space: &ParkSpace, locus: &Locus) -> Result<DihedralBijection> {
    dihedral_bijection_from(space, locus, dihedral_seeds(space.group(), space.k())?)
}

/// Grows a bijection from arbitrary seeds; fails if two seeds share an
/// orbit, if a seed's stabilizers differ, or if something is not reached.
pub fn dihedral_bijection_from(space: &ParkSpace, locus: &Locus, seeds: Vec<DihedralSeed>) -> Result<DihedralBijection> {
    let group = space.group();
    let m = group.spec().param as u32;
    let s = group.index_of(&GroupElem::Dihedral(Dihedral::refl(m, 0))).unwrap();
    let c = group.coxeter();
    let gens = [s, c];
    const UNSET: u32 = u32::MAX;
    let mut to_point = vec![UNSET; space.len()];
    let mut to_class = vec![UNSET; locus.len()];
    let mut orbit_sizes = Vec::new();
    for seed in &seeds {
        let chain = space
            .chain_id(&seed.chain)
            .ok_or_else(|| Error::Logic(format!("seed chain of {} is not a multichain", seed.description)))?;
        let p0 = space.class_of(group.identity(), chain);
        let x0 = locus.id(&seed.point);
        if to_point[p0 as usize] != UNSET || to_class[x0 as usize] != UNSET {
            return Err(Error::Logic(format!("seed {} lies in an orbit already covered", seed.description)));
        }
        to_point[p0 as usize] = x0;
        to_class[x0 as usize] = p0;
        let mut size = 1;
        let mut queue = VecDeque::from([p0]);
        while let Some(p) = queue.pop_front() {
            let x = locus.point(to_point[p as usize]);
            let mut moves: Vec<(u32, LocusPoint)> =
                gens.iter().map(|&w| (space.act_w(w, p), locus.act_w(group.elem(w), &x))).collect();
            moves.push((space.act_g(p), locus.act_g(&x, 1)));
            for (q, y) in moves {
                let yi = locus.id(&y);
                match (to_point[q as usize], to_class[yi as usize]) {
                    (UNSET, UNSET) => {
                        to_point[q as usize] = yi;
                        to_class[yi as usize] = q;
                        size += 1;
                        queue.push_back(q);
                    }
                    (a, b) if a == yi && b == q => {}
                    _ => {
                        return Err(Error::Logic(format!(
                            "extending {} is not well defined: stabilizers differ",
                            seed.description
                        )))
                    }
                }
            }
        }
        orbit_sizes.push(size);
    }
    if let Some(p) = to_point.iter().position(|&x| x == UNSET) {
        return Err(Error::Logic(format!("class {} is not reached from any seed", space.class_json(p as u32))));
    }
    if let Some(x) = to_class.iter().position(|&p| p == UNSET) {
        return Err(Error::Logic(format!("locus point {} is not reached from any seed", locus.point(x as u32))));
    }
    Ok(DihedralBijection { seeds, orbit_sizes, to_point })
}

impl DihedralBijection {
    /// Number of `(class, x)` with `φ(x.p) ≠ x.φ(p)` over all of `W` and `g`.
    pub fn equivariance_failures(&self, space: &ParkSpace, locus: &Locus) -> usize {
        let g = space.group();
        (0..space.len() as u32)
            .map(|p| {
                let v = locus.point(self.to_point[p as usize]);
                let mut bad = usize::from(locus.id(&locus.act_g(&v, 1)) != self.to_point[space.act_g(p) as usize]);
                for w in 0..g.size() as u32 {
                    if locus.id(&locus.act_w(g.elem(w), &v)) != self.to_point[space.act_w(w, p) as usize] {
                        bad += 1;
                    }
                }
                bad
            })
            .sum()
    }

    pub fn is_injective(&self) -> bool {
        let mut v = self.to_point.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }
}
