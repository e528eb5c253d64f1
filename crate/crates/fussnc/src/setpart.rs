//! Set partitions of `[n]` and of `±[n]`, drawn on a disc with boundary
//! read clockwise as `1, .., n` (or `1, .., n, -1, .., -n`).
//!
//! Blocks are stored with elements in clockwise order and blocks ordered by
//! their first element, so derived equality is equality of partitions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reflgroup::SignedPerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ground {
    /// `[n]`
    Plain(usize),
    /// `±[n]`
    Signed(usize),
}

impl Ground {
    pub fn size(&self) -> usize {
        match *self {
            Ground::Plain(n) => n,
            Ground::Signed(n) => 2 * n,
        }
    }

    /// Clockwise position of `x`, from 1.
    #[inline]
    pub fn pos(&self, x: i32) -> usize {
        match *self {
            Ground::Plain(_) => x as usize,
            Ground::Signed(n) => {
                if x > 0 {
                    x as usize
                } else {
                    n + x.unsigned_abs() as usize
                }
            }
        }
    }

    /// Element at clockwise position `p`, from 1.
    #[inline]
    pub fn at(&self, p: usize) -> i32 {
        match *self {
            Ground::Plain(_) => p as i32,
            Ground::Signed(n) => {
                if p <= n {
                    p as i32
                } else {
                    -((p - n) as i32)
                }
            }
        }
    }

    pub fn contains(&self, x: i32) -> bool {
        match *self {
            Ground::Plain(n) => x >= 1 && x as usize <= n,
            Ground::Signed(n) => x != 0 && x.unsigned_abs() as usize <= n,
        }
    }

    /// Elements in clockwise order.
    pub fn elements(&self) -> impl Iterator<Item = i32> + '_ {
        (1..=self.size()).map(move |p| self.at(p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground: Ground,
    blocks: Vec<Vec<i32>>,
}

impl SetPartition {
    pub fn from_blocks(ground: Ground, mut blocks: Vec<Vec<i32>>) -> Result<Self> {
        let mut seen = vec![false; ground.size() + 1];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &x in b.iter() {
                if !ground.contains(x) {
                    return Err(Error::Invalid(format!("{x} is not in the ground set {ground:?}")));
                }
                let p = ground.pos(x);
                if seen[p] {
                    return Err(Error::Invalid(format!("{x} appears twice")));
                }
                seen[p] = true;
            }
            b.sort_by_key(|&x| ground.pos(x));
        }
        if seen.iter().skip(1).any(|s| !s) {
            return Err(Error::Invalid("blocks do not cover the ground set".into()));
        }
        blocks.sort_by_key(|b| ground.pos(b[0]));
        Ok(SetPartition { ground, blocks })
    }

    pub fn singletons(ground: Ground) -> Self {
        SetPartition { ground, blocks: ground.elements().map(|x| vec![x]).collect() }
    }

    pub fn full(ground: Ground) -> Self {
        SetPartition { ground, blocks: vec![ground.elements().collect()] }
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn blocks(&self) -> &[Vec<i32>] {
        &self.blocks
    }

    /// Block index per clockwise position (index 0 unused).
    pub fn labels(&self) -> Vec<usize> {
        let mut lab = vec![usize::MAX; self.ground.size() + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                lab[self.ground.pos(x)] = i;
            }
        }
        lab
    }

    /// Closure giving the block index of an element.
    pub fn block_lookup(&self) -> impl Fn(i32) -> usize + '_ {
        let lab = self.labels();
        move |x| lab[self.ground.pos(x)]
    }

    pub fn block_of(&self, x: i32) -> &[i32] {
        self.blocks.iter().find(|b| b.contains(&x)).expect("element of the ground set")
    }

    /// Image under an element-wise bijection of the ground set.
    pub fn map(&self, f: impl Fn(i32) -> i32) -> SetPartition {
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&x| f(x)).collect()).collect();
        SetPartition::from_blocks(self.ground, blocks).expect("bijection of the ground set")
    }

    /// Clockwise rotation by `s` positions.
    pub fn rotate(&self, s: i64) -> SetPartition {
        let n = self.ground.size() as i64;
        self.map(|x| self.ground.at(((self.ground.pos(x) as i64 - 1 + s).rem_euclid(n) + 1) as usize))
    }

    /// `self ≤ other` in refinement order.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.ground != other.ground {
            return false;
        }
        let lab = other.labels();
        self.blocks.iter().all(|b| b.iter().all(|&x| lab[self.ground.pos(x)] == lab[self.ground.pos(b[0])]))
    }

    pub fn is_noncrossing(&self) -> bool {
        let lab = self.labels();
        let n = self.ground.size();
        // a crossing a<b<c<d with a~c, b~d, a≁b exists iff some pair of blocks
        // alternates at least four times around the circle
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                let mut runs = 0;
                let mut last = usize::MAX;
                for p in 1..=n {
                    let l = lab[p];
                    if (l == i || l == j) && l != last {
                        runs += 1;
                        last = l;
                    }
                }
                // cyclic sequence: first and last runs may merge
                let first = (1..=n).map(|p| lab[p]).find(|&l| l == i || l == j);
                if first == Some(last) {
                    runs -= 1;
                }
                if runs > 2 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        match self.ground {
            Ground::Plain(_) => false,
            Ground::Signed(_) => {
                let lab = self.labels();
                let zero = self.blocks.iter().filter(|b| b.contains(&-b[0])).count();
                zero <= 1
                    && self.blocks.iter().all(|b| {
                        let nb = lab[self.ground.pos(-b[0])];
                        b.iter().all(|&x| lab[self.ground.pos(-x)] == nb) && self.blocks[nb].len() == b.len()
                    })
            }
        }
    }

    /// Index of the zero block (the block equal to its own negative).
    pub fn zero_block(&self) -> Option<usize> {
        match self.ground {
            Ground::Plain(_) => None,
            Ground::Signed(_) => self.blocks.iter().position(|b| b.contains(&-b[0])),
        }
    }

    /// `Ω`: each block becomes a cycle read clockwise.
    pub fn omega(&self) -> Result<SignedPerm> {
        let mut cycles = Vec::new();
        for b in &self.blocks {
            cycles.push(b.clone());
        }
        let n = match self.ground {
            Ground::Plain(n) | Ground::Signed(n) => n,
        };
        let w = SignedPerm::from_cycles(n, &cycles)?;
        if self.ground.elements().any(|x| {
            let b = self.block_of(x);
            let i = b.iter().position(|&y| y == x).unwrap();
            w.apply(x) != b[(i + 1) % b.len()]
        }) {
            return Err(Error::Invalid(format!("{self} is not centrally symmetric")));
        }
        Ok(w)
    }

    /// `Π`: inverse of `Ω`, defined when every cycle increases clockwise.
    pub fn pi_of(w: &SignedPerm, ground: Ground) -> Result<SetPartition> {
        let n = ground.size();
        let mut seen = vec![false; n + 1];
        let mut blocks = Vec::new();
        for p in 1..=n {
            if seen[p] {
                continue;
            }
            let start = ground.at(p);
            let mut cyc = vec![p];
            seen[p] = true;
            let mut x = w.apply(start);
            while x != start {
                let q = ground.pos(x);
                seen[q] = true;
                cyc.push(q);
                x = w.apply(x);
            }
            // starting from the smallest position, positions must increase
            if cyc.windows(2).any(|v| v[0] > v[1]) {
                return Err(Error::Invalid(format!("{w} has a cycle that is not clockwise increasing")));
            }
            blocks.push(cyc.into_iter().map(|q| ground.at(q)).collect());
        }
        SetPartition::from_blocks(ground, blocks)
    }

    /// Kreweras complement `K(π) = Π(c Ω(π)⁻¹)` on `[n]`.
    pub fn kreweras(&self) -> Result<SetPartition> {
        let n = match self.ground {
            Ground::Plain(n) => n,
            Ground::Signed(_) => return Err(Error::Invalid("Kreweras complement is taken on [n]".into())),
        };
        if !self.is_noncrossing() {
            return Err(Error::Invalid(format!("{self} is not noncrossing")));
        }
        let c = long_cycle(n);
        SetPartition::pi_of(&c.mul(&self.omega()?.inverse()), self.ground)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&s.join("/"))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Literal syntax: `1,-4/2,3/-1,4/-2,-3`. The ground set is `±[n]` if any
    /// entry is negative, otherwise `[n]`, with `n` the largest absolute value.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for b in s.trim().trim_matches(|c| c == '{' || c == '}').split('/') {
            let block: Vec<i32> = b
                .split(',')
                .map(|t| t.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}"))))
                .collect::<Result<_>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().flatten().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0);
        if n == 0 {
            return Err(Error::Parse(format!("empty partition literal {s:?}")));
        }
        let ground = if blocks.iter().flatten().any(|&x| x < 0) { Ground::Signed(n) } else { Ground::Plain(n) };
        SetPartition::from_blocks(ground, blocks)
    }
}

/// The cycle `(1,2,..,n)`.
pub fn long_cycle(n: usize) -> SignedPerm {
    SignedPerm::from_images((1..=n as i32).map(|i| i % n as i32 + 1).collect()).unwrap()
}

/// `δ(w_1,..,w_k) = (w_1⁻¹w_2, .., w_{k-1}⁻¹w_k, w_k⁻¹c)`.
pub fn boundary_delta(ws: &[SignedPerm], c: &SignedPerm) -> Vec<SignedPerm> {
    let mut out = Vec::with_capacity(ws.len());
    for i in 0..ws.len() {
        let next = if i + 1 < ws.len() { &ws[i + 1] } else { c };
        out.push(ws[i].inverse().mul(next));
    }
    out
}

/// The partition of the sorted set `target` order-isomorphic to `p`.
pub fn order_isomorphic(p: &SetPartition, target: &[i32]) -> Result<Vec<Vec<i32>>> {
    if p.ground.size() != target.len() {
        return Err(Error::Invalid("size mismatch in order-isomorphic relabeling".into()));
    }
    let mut t = target.to_vec();
    t.sort_unstable();
    Ok(p.blocks.iter().map(|b| b.iter().map(|&x| t[p.ground.pos(x) - 1]).collect()).collect())
}

/// Partition of `[kn]` generated by `π_i` placed on `{i, i+k, .., i+(n-1)k}`.
pub fn shuffle(ps: &[SetPartition]) -> Result<SetPartition> {
    let k = ps.len();
    let n = match ps.first().map(|p| p.ground) {
        Some(Ground::Plain(n)) => n,
        _ => return Err(Error::Invalid("shuffle needs partitions of [n]".into())),
    };
    let mut blocks = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        if p.ground != Ground::Plain(n) {
            return Err(Error::Invalid("shuffle needs partitions of a common [n]".into()));
        }
        let target: Vec<i32> = (0..n).map(|j| (i + 1 + j * k) as i32).collect();
        blocks.extend(order_isomorphic(p, &target)?);
    }
    SetPartition::from_blocks(Ground::Plain(k * n), blocks)
}

fn check_multichain(chain: &[SetPartition]) -> Result<()> {
    if chain.is_empty() {
        return Err(Error::Invalid("empty chain".into()));
    }
    for p in chain {
        if !p.is_noncrossing() {
            return Err(Error::Invalid(format!("{p} is not noncrossing")));
        }
    }
    for w in chain.windows(2) {
        if !w[0].refines(&w[1]) {
            return Err(Error::Invalid(format!("{} does not refine {}", w[0], w[1])));
        }
    }
    Ok(())
}

/// `∇ = K ∘ shuffle ∘ Π ∘ δ ∘ Ω`, from `k`-multichains of noncrossing
/// partitions of `[n]` to `k`-divisible noncrossing partitions of `[kn]`.
pub fn nabla(chain: &[SetPartition]) -> Result<SetPartition> {
    check_multichain(chain)?;
    let n = match chain[0].ground {
        Ground::Plain(n) => n,
        Ground::Signed(_) => return Err(Error::Invalid("nabla takes partitions of [n]; use bc_nabla".into())),
    };
    let ws: Vec<SignedPerm> = chain.iter().map(|p| p.omega()).collect::<Result<_>>()?;
    let delta = boundary_delta(&ws, &long_cycle(n));
    let parts: Vec<SetPartition> = delta
        .iter()
        .map(|w| SetPartition::pi_of(w, Ground::Plain(n)))
        .collect::<Result<_>>()
        .map_err(|e| Error::Logic(format!("Π undefined inside ∇: {e}")))?;
    shuffle(&parts)?.kreweras().map_err(|e| Error::Logic(format!("shuffle not noncrossing inside ∇: {e}")))
}

/// A partition of `[kn]` or `±[kn]` whose blocks carry subsets of `[n]` or
/// `±[n]`; `labels[i]` belongs to `partition.blocks()[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledPartition {
    pub partition: SetPartition,
    pub labels: Vec<Vec<i32>>,
}

impl LabeledPartition {
    /// Checks `|B| = k|f(B)|`, that labels partition the label ground set
    /// and, on `±[kn]`, that `f(-B) = -f(B)`.
    pub fn validate(&self, k: usize) -> Result<()> {
        let label_ground = match self.partition.ground {
            Ground::Plain(m) => Ground::Plain(m / k),
            Ground::Signed(m) => Ground::Signed(m / k),
        };
        SetPartition::from_blocks(label_ground, self.labels.iter().filter(|l| !l.is_empty()).cloned().collect())?;
        for (b, l) in self.partition.blocks.iter().zip(&self.labels) {
            if b.len() != k * l.len() {
                return Err(Error::Invalid(format!("block {b:?} has label {l:?} of the wrong size")));
            }
        }
        if let Ground::Signed(_) = self.partition.ground {
            for (b, l) in self.partition.blocks.iter().zip(&self.labels) {
                let neg = self.label_of(-b[0]);
                let mut want: Vec<i32> = l.iter().map(|x| -x).collect();
                want.sort_by_key(|&x| label_ground.pos(x));
                if neg != want.as_slice() {
                    return Err(Error::Invalid("labels are not centrally symmetric".into()));
                }
            }
        }
        Ok(())
    }

    pub fn label_of(&self, x: i32) -> &[i32] {
        let i = self.partition.blocks.iter().position(|b| b.contains(&x)).expect("element of the ground set");
        &self.labels[i]
    }

    /// Clockwise rotation by `s` positions, labels riding along.
    pub fn rotate(&self, s: i64) -> LabeledPartition {
        let g = self.partition.ground;
        let n = g.size() as i64;
        let r = |x: i32| g.at(((g.pos(x) as i64 - 1 + s).rem_euclid(n) + 1) as usize);
        self.remap(r, |y| y)
    }

    /// Applies `v` to every label.
    pub fn relabel(&self, v: &SignedPerm) -> LabeledPartition {
        self.remap(|x| x, |y| v.apply(y))
    }

    fn remap(&self, on_blocks: impl Fn(i32) -> i32, on_labels: impl Fn(i32) -> i32) -> LabeledPartition {
        let g = self.partition.ground;
        let lg = match g {
            Ground::Plain(_) => Ground::Plain(usize::MAX / 4),
            Ground::Signed(_) => Ground::Signed(self.labels.iter().map(|l| l.len()).sum::<usize>() / 2),
        };
        let mut pairs: Vec<(Vec<i32>, Vec<i32>)> = self
            .partition
            .blocks
            .iter()
            .zip(&self.labels)
            .map(|(b, l)| {
                let mut nb: Vec<i32> = b.iter().map(|&x| on_blocks(x)).collect();
                nb.sort_by_key(|&x| g.pos(x));
                let mut nl: Vec<i32> = l.iter().map(|&y| on_labels(y)).collect();
                nl.sort_by_key(|&x| lg.pos(x));
                (nb, nl)
            })
            .collect();
        pairs.sort_by_key(|(b, _)| g.pos(b[0]));
        let (blocks, labels) = pairs.into_iter().unzip();
        LabeledPartition { partition: SetPartition { ground: g, blocks }, labels }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "partition": self.partition.to_string(),
            "labels": self.labels,
        })
    }
}

impl fmt::Display for LabeledPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .partition
            .blocks
            .iter()
            .zip(&self.labels)
            .map(|(b, l)| {
                let j = |v: &[i32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                format!("{}:{{{}}}", j(b), j(l))
            })
            .collect();
        f.write_str(&parts.join(" / "))
    }
}

/// Sorts a label set by clockwise position on `[n]` or `±[n]`.
fn sort_label(mut l: Vec<i32>, signed_n: Option<usize>) -> Vec<i32> {
    match signed_n {
        Some(n) => l.sort_by_key(|&x| Ground::Signed(n).pos(x)),
        None => l.sort_unstable(),
    }
    l
}

/// `∇` with labels: the block of `π_1` containing `i` sits in the block of
/// `∇` through `(i-1)k+1` and that block is labeled `w(B)`.
pub fn labeled_nabla(w: &SignedPerm, chain: &[SetPartition]) -> Result<LabeledPartition> {
    let pi = nabla(chain)?;
    let k = chain.len();
    let lookup = pi.labels();
    let mut labels = vec![Vec::new(); pi.blocks.len()];
    for b in &chain[0].blocks {
        let idx = lookup[(b[0] as usize - 1) * k + 1];
        labels[idx] = sort_label(b.iter().map(|&x| w.apply(x)).collect(), None);
    }
    Ok(LabeledPartition { partition: pi, labels })
}

/// `∇` on centrally symmetric partitions of `±[n]`, through `±[n] ≅ [2n]`
/// (`i ↦ i`, `-i ↦ n+i`) and back from `[2kn]` to `±[kn]`.
pub fn bc_nabla_partition(chain: &[SetPartition]) -> Result<SetPartition> {
    let n = match chain.first().map(|p| p.ground) {
        Some(Ground::Signed(n)) => n,
        _ => return Err(Error::Invalid("bc_nabla takes partitions of ±[n]".into())),
    };
    for p in chain {
        if !p.is_centrally_symmetric() {
            return Err(Error::Invalid(format!("{p} is not centrally symmetric")));
        }
    }
    let plain: Vec<SetPartition> = chain
        .iter()
        .map(|p| {
            let blocks = p.blocks.iter().map(|b| b.iter().map(|&x| p.ground.pos(x) as i32).collect()).collect();
            SetPartition::from_blocks(Ground::Plain(2 * n), blocks)
        })
        .collect::<Result<_>>()?;
    let out = nabla(&plain)?;
    let kn = out.ground.size() / 2;
    let target = Ground::Signed(kn);
    let blocks = out.blocks.iter().map(|b| b.iter().map(|&p| target.at(p as usize)).collect()).collect();
    let res = SetPartition::from_blocks(target, blocks)?;
    if !res.is_centrally_symmetric() {
        return Err(Error::Logic(format!("∇ image {res} is not centrally symmetric")));
    }
    Ok(res)
}

/// Labeled type BC `∇`: the block of `X_1` through `i` sits in the block of
/// `π` through `sign(i)((|i|-1)k+1)`, labeled `w(B)`.
pub fn bc_nabla(w: &SignedPerm, chain: &[SetPartition]) -> Result<LabeledPartition> {
    let pi = bc_nabla_partition(chain)?;
    let k = chain.len();
    let n = w.n();
    let lookup = pi.labels();
    let mut labels = vec![Vec::new(); pi.blocks.len()];
    for b in &chain[0].blocks {
        let x = b[0];
        let img = x.signum() * ((x.abs() - 1) * k as i32 + 1);
        let idx = lookup[pi.ground.pos(img)];
        labels[idx] = sort_label(b.iter().map(|&y| w.apply(y)).collect(), Some(n));
    }
    Ok(LabeledPartition { partition: pi, labels })
}

/// Openers of the nonzero blocks of a centrally symmetric noncrossing
/// partition, parallel to `p.blocks()`; `None` for the zero block.
///
/// Repeatedly removes a nonzero block occupying a cyclically consecutive
/// run of the remaining positions; the first element of that run opens it.
pub fn openers(p: &SetPartition) -> Result<Vec<Option<i32>>> {
    if !p.is_centrally_symmetric() || !p.is_noncrossing() {
        return Err(Error::Invalid(format!("{p} is not a centrally symmetric noncrossing partition")));
    }
    let g = p.ground;
    let n = g.size();
    let lab = p.labels();
    let zero = p.zero_block();
    let mut alive = vec![true; n + 1];
    let mut out = vec![None; p.blocks.len()];
    let mut remaining: usize = p.blocks.len() - usize::from(zero.is_some());
    while remaining > 0 {
        let live: Vec<usize> = (1..=n).filter(|&q| alive[q]).collect();
        let len = live.len();
        let mut progressed = false;
        for (bi, b) in p.blocks.iter().enumerate() {
            if Some(bi) == zero || out[bi].is_some() {
                continue;
            }
            // b is a run iff exactly one member has a live predecessor outside b
            let starts: Vec<usize> = (0..len)
                .filter(|&t| lab[live[t]] == bi && lab[live[(t + len - 1) % len]] != bi)
                .collect();
            if starts.len() == 1 {
                out[bi] = Some(g.at(live[starts[0]]));
                for &x in b {
                    alive[g.pos(x)] = false;
                }
                remaining -= 1;
                progressed = true;
            }
        }
        if !progressed {
            return Err(Error::Logic(format!("no removable block in {p}")));
        }
    }
    Ok(out)
}

/// All noncrossing partitions of `[n]`.
pub fn noncrossing_partitions(n: usize) -> Vec<SetPartition> {
    kdivisible_noncrossing(n, 1)
}

/// All `k`-divisible noncrossing partitions of `[kn]`.
pub fn kdivisible_noncrossing(n: usize, k: usize) -> Vec<SetPartition> {
    type Part = Vec<Vec<u32>>;
    let total = n * k;
    // memo[len]: k-divisible noncrossing partitions of {0, .., len-1}
    let mut memo: Vec<Vec<Part>> = Vec::with_capacity(total + 1);
    fn shifted(p: &Part, by: u32) -> impl Iterator<Item = Vec<u32>> + '_ {
        p.iter().map(move |b| b.iter().map(|x| x + by).collect())
    }
    fn build(len: usize, k: usize, memo: &[Vec<Part>], block: &mut Vec<u32>, pieces: &mut Part, out: &mut Vec<Part>) {
        let last = *block.last().unwrap() as usize;
        if block.len() % k == 0 && (len - last - 1) % k == 0 {
            for t in &memo[len - last - 1] {
                let mut p = pieces.clone();
                p.push(block.clone());
                p.extend(shifted(t, last as u32 + 1));
                out.push(p);
            }
        }
        for e in last + 1..len {
            let gap = e - last - 1;
            if gap % k != 0 {
                continue;
            }
            for q in &memo[gap] {
                let before = pieces.len();
                pieces.extend(shifted(q, last as u32 + 1));
                block.push(e as u32);
                build(len, k, memo, block, pieces, out);
                block.pop();
                pieces.truncate(before);
            }
        }
    }
    memo.push(vec![Vec::new()]);
    for len in 1..=total {
        let mut out = Vec::new();
        if len % k == 0 {
            build(len, k, &memo, &mut vec![0], &mut Vec::new(), &mut out);
        }
        memo.push(out);
    }
    let mut res: Vec<SetPartition> = memo[total]
        .iter()
        .map(|p| {
            let blocks = p.iter().map(|b| b.iter().map(|&x| x as i32 + 1).collect()).collect();
            SetPartition::from_blocks(Ground::Plain(total), blocks).unwrap()
        })
        .collect();
    res.sort();
    res
}

/// All centrally symmetric noncrossing partitions of `±[n]`.
pub fn bc_noncrossing_partitions(n: usize) -> Vec<SetPartition> {
    noncrossing_partitions(2 * n)
        .into_iter()
        .map(|p| {
            let g = Ground::Signed(n);
            let blocks = p.blocks.iter().map(|b| b.iter().map(|&q| g.at(q as usize)).collect()).collect();
            SetPartition::from_blocks(g, blocks).unwrap()
        })
        .filter(|p| p.is_centrally_symmetric())
        .collect()
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Number of noncrossing partitions of `[n]` with block sizes `λ`:
/// `n! / ((n - ℓ(λ) + 1)! m_1(λ)! ⋯ m_n(λ)!)`.
pub fn nc_lambda_count(lambda: &[usize]) -> Result<BigUint> {
    if lambda.is_empty() || lambda.contains(&0) {
        return Err(Error::Invalid(format!("{lambda:?} is not a partition")));
    }
    let n: usize = lambda.iter().sum();
    let len = lambda.len();
    let mut mult = vec![0usize; n + 1];
    for &p in lambda {
        mult[p] += 1;
    }
    let denom = mult.iter().fold(factorial(n - len + 1), |acc, &m| acc * factorial(m));
    Ok(factorial(n) / denom)
}

/// Number of `k`-divisible noncrossing partitions of `[kn]` invariant under
/// rotation by `kn/m` with `μ_j` free rotation orbits of blocks of size
/// `kj`: `(kn/m)(kn/m - 1)⋯(kn/m - r + 1) / (μ_1!⋯μ_n!)`, `r = Σμ_j`.
pub fn symmetric_kdiv_count(mu: &[usize], n: usize, k: usize, m: usize) -> Result<BigUint> {
    if m < 2 || (k * n) % m != 0 {
        return Err(Error::Invalid(format!("m = {m} must be at least 2 and divide kn = {}", k * n)));
    }
    let used: usize = mu.iter().enumerate().map(|(j, &c)| (j + 1) * c * m).sum();
    if used > n {
        return Ok(BigUint::from(0u32));
    }
    let q = k * n / m;
    let r: usize = mu.iter().sum();
    if r > q {
        return Ok(BigUint::from(0u32));
    }
    let num = (0..r).fold(BigUint::one(), |acc, i| acc * BigUint::from(q - i));
    let den = mu.iter().fold(BigUint::one(), |acc, &c| acc * factorial(c));
    Ok(num / den)
}
