//! `Park^NC_W(k)`: classes `[w, X_1 ≤ .. ≤ X_k]` with `w` taken modulo
//! `W_{X_1}`, and the commuting actions of `W` and `Z_kh`.
//!
//! The type A side also carries the classical `k`-parking functions.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncw::{chain_flats, g_act_chain, NCChain, NCPoset};
use crate::reflgroup::{Family, Flat, Group, GroupSpec, SignedPerm};
use crate::setpart::{bc_nabla, labeled_nabla, LabeledPartition, SetPartition};

/// A class, by chain index and the index of its canonical representative
/// (the lexicographically least element of `w W_{X_1}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkClass {
    pub chain: u32,
    pub rep: u32,
}

/// One line of a character comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharRow {
    /// Conjugacy class representative, as a group index.
    pub elem: u32,
    pub d: usize,
    pub mult: usize,
    pub expected: u128,
    pub actual: u128,
    pub pass: bool,
}

pub fn all_pass(rows: &[CharRow]) -> bool {
    rows.iter().all(|r| r.pass)
}

/// `(kh+1)^e` as an exact integer.
pub fn power(base: usize, e: usize) -> u128 {
    (base as u128).pow(e as u32)
}

pub struct ParkSpace {
    group: Group,
    nc: NCPoset,
    k: usize,
    chains: Vec<NCChain>,
    chain_index: HashMap<NCChain, u32>,
    g_chain: Vec<u32>,
    /// Per NC position: `w ↦ min(w W_{X})`.
    canon: Vec<Vec<u32>>,
    /// Per NC position: local coset number of a canonical representative.
    local: Vec<HashMap<u32, u32>>,
    offset: Vec<u32>,
    classes: Vec<ParkClass>,
    g_perm: Vec<u32>,
}

impl ParkSpace {
    /// Builds every class; refuses when `(kh+1)^n` or `|W|` exceeds `cap`.
    pub fn build(spec: GroupSpec, k: usize, cap: u64) -> Result<ParkSpace> {
        if k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        let needed = power(k * spec.coxeter_number() + 1, spec.rank());
        if needed > cap as u128 {
            return Err(Error::CapExceeded { what: format!("Park^NC of {spec} with k={k}"), needed, cap });
        }
        let group = Group::build(spec, cap)?;
        Ok(ParkSpace::from_group(group, k))
    }

    pub fn from_group(group: Group, k: usize) -> ParkSpace {
        let nc = NCPoset::build(&group);
        let chains = nc.multichains(k);
        let chain_index: HashMap<NCChain, u32> =
            chains.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
        let g_chain = chains.iter().map(|c| chain_index[&g_act_chain(&group, c)]).collect();
        let mut canon = Vec::with_capacity(nc.len());
        let mut local = Vec::with_capacity(nc.len());
        for &u in nc.elements() {
            let iso = group.isotropy(group.fixed_flat_id(u));
            let table: Vec<u32> = (0..group.size() as u32)
                .map(|w| iso.iter().map(|&h| group.mul(w, h)).min().unwrap())
                .collect();
            let mut reps: Vec<u32> = table.clone();
            reps.sort_unstable();
            reps.dedup();
            local.push(reps.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect::<HashMap<u32, u32>>());
            canon.push(table);
        }
        let mut offset = Vec::with_capacity(chains.len());
        let mut classes = Vec::new();
        for (ci, ch) in chains.iter().enumerate() {
            offset.push(classes.len() as u32);
            let pos = nc.position(ch.first()).unwrap();
            let mut reps: Vec<(u32, u32)> = local[pos].iter().map(|(&r, &i)| (i, r)).collect();
            reps.sort_unstable();
            classes.extend(reps.into_iter().map(|(_, rep)| ParkClass { chain: ci as u32, rep }));
        }
        let mut space = ParkSpace {
            group,
            nc,
            k,
            chains,
            chain_index,
            g_chain,
            canon,
            local,
            offset,
            classes,
            g_perm: Vec::new(),
        };
        space.g_perm = (0..space.classes.len() as u32).map(|p| space.act_g_direct(p)).collect();
        space
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn nc(&self) -> &NCPoset {
        &self.nc
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `kh`, the order of the cyclic factor.
    pub fn kh(&self) -> usize {
        self.k * self.group.spec().coxeter_number()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ParkClass] {
        &self.classes
    }

    pub fn class(&self, id: u32) -> ParkClass {
        self.classes[id as usize]
    }

    pub fn chains(&self) -> &[NCChain] {
        &self.chains
    }

    pub fn chain(&self, i: u32) -> &NCChain {
        &self.chains[i as usize]
    }

    pub fn chain_id(&self, c: &NCChain) -> Option<u32> {
        self.chain_index.get(c).copied()
    }

    /// The class of an arbitrary pair `(w, chain)`.
    pub fn class_of(&self, w: u32, chain: u32) -> u32 {
        let pos = self.nc.position(self.chains[chain as usize].first()).unwrap();
        let rep = self.canon[pos][w as usize];
        self.offset[chain as usize] + self.local[pos][&rep]
    }

    /// `v.[w, X] = [vw, X]`.
    pub fn act_w(&self, v: u32, p: u32) -> u32 {
        let c = self.classes[p as usize];
        self.class_of(self.group.mul(v, c.rep), c.chain)
    }

    pub fn act_g(&self, p: u32) -> u32 {
        self.g_perm[p as usize]
    }

    pub fn act_g_pow(&self, p: u32, d: usize) -> u32 {
        (0..d % self.kh()).fold(p, |q, _| self.g_perm[q as usize])
    }

    /// `g.[w, X] = [w u_k c⁻¹, g.X]` evaluated on the given representative
    /// `w`, which need not be canonical.
    pub fn act_g_raw(&self, w: u32, chain: u32) -> u32 {
        let g = &self.group;
        let uk = self.chains[chain as usize].last();
        let w2 = g.mul(g.mul(w, uk), g.inv(g.coxeter()));
        self.class_of(w2, self.g_chain[chain as usize])
    }

    fn act_g_direct(&self, p: u32) -> u32 {
        let c = self.classes[p as usize];
        self.act_g_raw(c.rep, c.chain)
    }

    /// The chain `cX_1 ≤ .. ≤ cX_k`, i.e. conjugation of every entry by `c`.
    pub fn conj_chain_by_c(&self, chain: u32) -> u32 {
        let g = &self.group;
        let ch = NCChain(self.chains[chain as usize].0.iter().map(|&u| g.conj(g.coxeter(), u)).collect());
        self.chain_index[&ch]
    }

    pub fn g_chain(&self, chain: u32) -> u32 {
        self.g_chain[chain as usize]
    }

    /// `g^d` as a permutation of class ids.
    pub fn g_power_perm(&self, d: usize) -> Vec<u32> {
        let mut perm: Vec<u32> = (0..self.len() as u32).collect();
        for _ in 0..d % self.kh() {
            for q in perm.iter_mut() {
                *q = self.g_perm[*q as usize];
            }
        }
        perm
    }

    /// `|{p : v.g^d.p = p}|`.
    pub fn fixed_count(&self, v: u32, d: usize) -> u128 {
        self.fixed_count_with(v, &self.g_power_perm(d))
    }

    fn fixed_count_with(&self, v: u32, gd: &[u32]) -> u128 {
        (0..self.len() as u32).into_par_iter().filter(|&p| self.act_w(v, gd[p as usize]) == p).count() as u128
    }

    /// Compares `fixed_count(v, d)` with `(kh+1)^{mult_v(ω^d)}` for one `v`
    /// per conjugacy class and every `d`.
    pub fn verify_weak(&self) -> Result<Vec<CharRow>> {
        let kh = self.kh();
        let reps: Vec<u32> = self.group.conjugacy_classes().iter().map(|c| c[0]).collect();
        let mut rows = Vec::new();
        let mut gd: Vec<u32> = (0..self.len() as u32).collect();
        for d in 0..kh {
            for &v in &reps {
                let mult = self.group.eigenvalue_multiplicity(v, d, kh)?;
                let expected = power(kh + 1, mult);
                let actual = self.fixed_count_with(v, &gd);
                rows.push(CharRow { elem: v, d, mult, expected, actual, pass: expected == actual });
            }
            for q in gd.iter_mut() {
                *q = self.g_perm[*q as usize];
            }
        }
        Ok(rows)
    }

    /// The flats of a class's chain.
    pub fn flats(&self, p: u32) -> Vec<Flat> {
        chain_flats(&self.group, &self.chains[self.classes[p as usize].chain as usize])
    }

    pub fn class_json(&self, p: u32) -> serde_json::Value {
        let c = self.classes[p as usize];
        let flats: Vec<String> = self.flats(p).iter().map(|f| f.to_string()).collect();
        serde_json::json!({ "chain": flats, "rep": self.group.elem(c.rep).to_json() })
    }

    /// W-orbits of classes are the chains; grouping them by the W-orbit of
    /// `X_1` gives the multiplicities `m_X` of the induced characters.
    pub fn orbit_decomposition(&self) -> Vec<OrbitType> {
        let g = &self.group;
        let mut orbit_rep: HashMap<u32, u32> = HashMap::new();
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for ch in &self.chains {
            let f = g.fixed_flat_id(ch.first());
            let rep = *orbit_rep.entry(f).or_insert_with(|| {
                (0..g.size() as u32).map(|w| g.act_flat(w, f)).min_by_key(|&x| g.flat(x).clone()).unwrap()
            });
            *counts.entry(rep).or_default() += 1;
        }
        let mut out: Vec<OrbitType> = counts
            .into_iter()
            .map(|(f, count)| {
                let flat = g.flat(f).clone();
                let lambda = match (&flat, g.spec().family) {
                    (Flat::Partition(p), Family::A) => {
                        let mut l: Vec<usize> = p.blocks().iter().map(|b| b.len()).collect();
                        l.sort_unstable_by(|a, b| b.cmp(a));
                        Some(l)
                    }
                    _ => None,
                };
                OrbitType { flat, lambda, count }
            })
            .collect();
        out.sort_by(|a, b| a.flat.dim().cmp(&b.flat.dim()).then_with(|| a.flat.cmp(&b.flat)));
        out
    }

    fn chain_partitions(&self, p: u32) -> Result<(SignedPerm, Vec<SetPartition>)> {
        let c = self.classes[p as usize];
        let w = match self.group.elem(c.rep).as_signed() {
            Some(w) => w.clone(),
            None => return Err(Error::Invalid("dihedral classes have no partition model".into())),
        };
        let parts = self.flats(p).into_iter().map(|f| f.as_partition().unwrap().clone()).collect();
        Ok((w, parts))
    }

    /// The labeled `k`-divisible partition `∇` assigns to a class: of `[kn]`
    /// in type A, of `±[kn]` in type B.
    pub fn labeled(&self, p: u32) -> Result<LabeledPartition> {
        let (w, parts) = self.chain_partitions(p)?;
        match self.group.spec().family {
            Family::A => labeled_nabla(&w, &parts),
            Family::B => bc_nabla(&w, &parts),
            f => Err(Error::Invalid(format!("no labeled partition model in type {f}"))),
        }
    }

    /// The classical `k`-parking function of a type A class.
    pub fn to_classical(&self, p: u32) -> Result<Vec<u32>> {
        if self.group.spec().family != Family::A {
            return Err(Error::Invalid("classical parking functions exist in type A only".into()));
        }
        let (w, parts) = self.chain_partitions(p)?;
        classical_from_chain(&w, &parts)
    }
}

/// W-orbit of first flats and how many chains start there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitType {
    /// Least flat in the orbit.
    pub flat: Flat,
    /// Block sizes, in type A.
    pub lambda: Option<Vec<usize>>,
    pub count: usize,
}

/// `a_i` is the least element of the block of `∇(chain)` whose label holds `i`.
pub fn classical_from_chain(w: &SignedPerm, chain: &[SetPartition]) -> Result<Vec<u32>> {
    Ok(classical_from_labeled(&labeled_nabla(w, chain)?))
}

/// `a_i` read off a labeled partition of `[kn]`.
pub fn classical_from_labeled(lp: &LabeledPartition) -> Vec<u32> {
    let n = lp.labels.iter().map(|l| l.len()).sum();
    let mut a = vec![0u32; n];
    for (b, l) in lp.partition.blocks().iter().zip(&lp.labels) {
        for &i in l {
            a[i as usize - 1] = b[0] as u32;
        }
    }
    a
}

/// `v.(a_1, .., a_n)`: the entry at `i` moves to `v(i)`.
pub fn act_classical(v: &SignedPerm, a: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[v.apply(i as i32 + 1) as usize - 1] = x;
    }
    out
}

/// Sorted `b_i ≤ k(i-1) + 1`.
pub fn is_classical_park(a: &[u32], n: usize, k: usize) -> bool {
    if a.len() != n || a.contains(&0) {
        return false;
    }
    let mut b = a.to_vec();
    b.sort_unstable();
    b.iter().enumerate().all(|(i, &x)| x as usize <= k * i + 1)
}

/// All of `Park_n(k)`, sorted.
pub fn enumerate_classical(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn sorted(n: usize, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = cur.len();
        if i == n {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        for x in lo..=(k * i + 1) as u32 {
            cur.push(x);
            sorted(n, k, cur, out);
            cur.pop();
        }
    }
    let mut bases = Vec::new();
    sorted(n, k, &mut Vec::new(), &mut bases);
    let mut out = Vec::new();
    for mut b in bases {
        loop {
            out.push(b.clone());
            if !next_permutation(&mut b) {
                break;
            }
        }
    }
    out.sort();
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Number of cycles of `w` whose length is divisible by `m`.
pub fn cycles_divisible(w: &SignedPerm, m: usize) -> usize {
    w.plain_cycles().iter().filter(|c| c.len() % m == 0).count()
}

/// Brute-force count of `f: [n] → [kn] ∪ {0}` with `f(w(j)) = g^d f(j)`,
/// where `g` rotates `[kn]` and fixes `0`.
pub fn equivariant_function_count(n: usize, k: usize, w: &SignedPerm, d: usize) -> Result<u128> {
    let kn = k * n;
    if d % kn == 0 {
        return Err(Error::Invalid(format!("d = {d} must not be divisible by kn = {kn}")));
    }
    let gd = |x: usize| if x == 0 { 0 } else { (x - 1 + d) % kn + 1 };
    let mut f = vec![0usize; n];
    let mut count = 0u128;
    loop {
        if (0..n).all(|j| f[w.apply(j as i32 + 1) as usize - 1] == gd(f[j])) {
            count += 1;
        }
        let mut i = 0;
        while i < n && f[i] == kn {
            f[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        f[i] += 1;
    }
    Ok(count)
}

/// `(kn+1)^{r_m(w)}` with `m = kn / gcd(kn, d)`.
pub fn equivariant_function_formula(n: usize, k: usize, w: &SignedPerm, d: usize) -> u128 {
    let kn = k * n;
    let m = kn / num_integer::gcd(kn, d % kn);
    power(kn + 1, cycles_divisible(w, m))
}
