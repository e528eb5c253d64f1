//! The noncrossing partition poset `NC(W) = [1, c]_T`, its `k`-multichains,
//! the factorization form and the `Z_kh` action on chains.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::reflgroup::{Flat, Group};

/// Elements below `c` in absolute order, as group indices.
pub struct NCPoset {
    elems: Vec<u32>,
    pos: HashMap<u32, usize>,
    leq: Vec<Vec<bool>>,
}

impl NCPoset {
    pub fn build(group: &Group) -> NCPoset {
        let c = group.coxeter();
        let lc = group.reflection_length(c);
        let elems: Vec<u32> = (0..group.size() as u32)
            .filter(|&u| group.reflection_length(u) + group.reflection_length(group.mul(group.inv(u), c)) == lc)
            .collect();
        let pos = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let leq = elems
            .iter()
            .map(|&u| elems.iter().map(|&v| group.absolute_leq(u, v)).collect())
            .collect();
        NCPoset { elems, pos, leq }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, w: u32) -> bool {
        self.pos.contains_key(&w)
    }

    /// Position of `w` in `elements()`.
    pub fn position(&self, w: u32) -> Option<usize> {
        self.pos.get(&w).copied()
    }

    pub fn leq(&self, u: u32, v: u32) -> bool {
        match (self.pos.get(&u), self.pos.get(&v)) {
            (Some(&i), Some(&j)) => self.leq[i][j],
            _ => false,
        }
    }

    /// All `k`-multichains `w_1 ≤ .. ≤ w_k`, in lexicographic order of indices.
    pub fn multichains(&self, k: usize) -> Vec<NCChain> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        self.extend(k, &mut cur, &mut out);
        out
    }

    fn extend(&self, k: usize, cur: &mut Vec<usize>, out: &mut Vec<NCChain>) {
        if cur.len() == k {
            out.push(NCChain(cur.iter().map(|&i| self.elems[i]).collect()));
            return;
        }
        for j in 0..self.elems.len() {
            if cur.last().is_none_or(|&i| self.leq[i][j]) {
                cur.push(j);
                self.extend(k, cur, out);
                cur.pop();
            }
        }
    }
}

/// A multichain `w_1 ≤_T .. ≤_T w_k` in `NC(W)`, by group index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NCChain(pub Vec<u32>);

impl NCChain {
    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    pub fn last(&self) -> u32 {
        *self.0.last().unwrap()
    }
}

/// `∂: (w_1 ≤ .. ≤ w_k) ↦ (w_1, w_1⁻¹w_2, .., w_k⁻¹c)`.
pub fn partial(g: &Group, chain: &NCChain) -> Vec<u32> {
    let w = &chain.0;
    let mut f = Vec::with_capacity(w.len() + 1);
    f.push(w[0]);
    for i in 1..w.len() {
        f.push(g.mul(g.inv(w[i - 1]), w[i]));
    }
    f.push(g.mul(g.inv(*w.last().unwrap()), g.coxeter()));
    f
}

/// `∫: (w_0, .., w_k) ↦ (w_0 ≤ w_0w_1 ≤ .. ≤ w_0⋯w_{k-1})`, after checking
/// that the product is `c` and reflection lengths add up.
pub fn integrate(g: &Group, factor: &[u32]) -> Result<NCChain> {
    if factor.len() < 2 {
        return Err(Error::Invalid("a factorization needs at least two factors".into()));
    }
    let prod = factor.iter().fold(g.identity(), |acc, &x| g.mul(acc, x));
    if prod != g.coxeter() {
        return Err(Error::Invalid("factors do not multiply to c".into()));
    }
    let total: usize = factor.iter().map(|&x| g.reflection_length(x)).sum();
    if total != g.reflection_length(g.coxeter()) {
        return Err(Error::Invalid("reflection lengths are not additive".into()));
    }
    Ok(integrate_unchecked(g, factor))
}

fn integrate_unchecked(g: &Group, factor: &[u32]) -> NCChain {
    let mut acc = factor[0];
    let mut out = vec![acc];
    for &x in &factor[1..factor.len() - 1] {
        acc = g.mul(acc, x);
        out.push(acc);
    }
    NCChain(out)
}

/// `g.(w_0, w_1, .., w_k) = (v, c w_k c⁻¹, w_1, .., w_{k-1})` with
/// `v = (c w_k c⁻¹) w_0 (c w_k c⁻¹)⁻¹`.
pub fn g_act_factor(g: &Group, factor: &[u32]) -> Vec<u32> {
    let k = factor.len() - 1;
    let cwk = g.conj(g.coxeter(), factor[k]);
    let v = g.conj(cwk, factor[0]);
    let mut out = Vec::with_capacity(k + 1);
    out.push(v);
    out.push(cwk);
    out.extend_from_slice(&factor[1..k]);
    out
}

pub fn g_act_chain(g: &Group, chain: &NCChain) -> NCChain {
    integrate_unchecked(g, &g_act_factor(g, &partial(g, chain)))
}

/// `(V^{w_1} ≤ .. ≤ V^{w_k})`.
pub fn chain_flats(g: &Group, chain: &NCChain) -> Vec<Flat> {
    chain.0.iter().map(|&w| g.fixed_flat(w).clone()).collect()
}

/// Flat ids of `{V^w : w ∈ NC(W)}`.
pub fn noncrossing_flats(g: &Group, nc: &NCPoset) -> Vec<u32> {
    let mut v: Vec<u32> = nc.elements().iter().map(|&w| g.fixed_flat_id(w)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn is_noncrossing_flat(g: &Group, nc: &NCPoset, flat: &Flat) -> bool {
    nc.elements().iter().any(|&w| g.fixed_flat(w) == flat)
}

/// The noncrossing element with a given fixed flat, if any.
pub fn nc_element_of_flat(g: &Group, nc: &NCPoset, flat: u32) -> Option<u32> {
    nc.elements().iter().copied().find(|&w| g.fixed_flat_id(w) == flat)
}
