//! Positive root posets for types A, B, C, D, filters and antichains,
//! geometric multichains of filters and the finite torus `Q/(kh+1)Q`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parkspace::power;
use crate::reflgroup::{Family, Group, GroupElem, GroupSpec};
use crate::setpart::{Ground, SetPartition};

/// Root system type; `C` shares its poset with `B` but has long roots `2e_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    A,
    B,
    C,
    D,
}

impl RootKind {
    /// `B_n` groups default to the `B` root system.
    pub fn of(spec: &GroupSpec) -> Result<RootKind> {
        match spec.family {
            Family::A => Ok(RootKind::A),
            Family::B => Ok(RootKind::B),
            Family::D => Ok(RootKind::D),
            Family::I2 => Err(Error::Invalid(format!(
                "{spec} is handled through A2 or B2; other dihedral groups are not crystallographic"
            ))),
        }
    }
}

const MAX_ROOTS: usize = 24;

/// Positive roots in simple-root coordinates, ordered componentwise.
#[derive(Clone, Debug)]
pub struct RootPoset {
    kind: RootKind,
    /// Dimension of the ambient `R^N` of the `e`-coordinates.
    ambient: usize,
    rank: usize,
    roots: Vec<Vec<i32>>,
    ecoords: Vec<Vec<i32>>,
    /// `(a, b, c)` with `root a + root b = root c`.
    sums: Vec<(usize, usize, usize)>,
    /// `up[a]`: mask of roots `≥ a`.
    up: Vec<u64>,
}

impl RootPoset {
    pub fn build(spec: &GroupSpec) -> Result<RootPoset> {
        RootPoset::build_kind(RootKind::of(spec)?, spec.param)
    }

    /// `n` is the group parameter: `A_{n-1}`, `B_n`, `C_n`, `D_n`.
    pub fn build_kind(kind: RootKind, n: usize) -> Result<RootPoset> {
        let e = |pairs: &[(usize, i32)]| {
            let mut v = vec![0; n];
            for &(i, c) in pairs {
                v[i] += c;
            }
            v
        };
        let mut ecoords = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                ecoords.push(e(&[(i, 1), (j, -1)]));
                if kind != RootKind::A {
                    ecoords.push(e(&[(i, 1), (j, 1)]));
                }
            }
            match kind {
                RootKind::B => ecoords.push(e(&[(i, 1)])),
                RootKind::C => ecoords.push(e(&[(i, 2)])),
                _ => {}
            }
        }
        let rank = if kind == RootKind::A { n - 1 } else { n };
        if ecoords.len() > MAX_ROOTS {
            return Err(Error::CapExceeded { what: "root poset".into(), needed: ecoords.len() as u128, cap: MAX_ROOTS as u64 });
        }
        let roots: Vec<Vec<i32>> = ecoords.iter().map(|x| simple_coords(kind, x)).collect();
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.sort_by_key(|&i| (roots[i].iter().sum::<i32>(), std::cmp::Reverse(roots[i].clone())));
        let roots: Vec<Vec<i32>> = order.iter().map(|&i| roots[i].clone()).collect();
        let ecoords: Vec<Vec<i32>> = order.iter().map(|&i| ecoords[i].clone()).collect();
        let mut sums = Vec::new();
        for a in 0..roots.len() {
            for b in a..roots.len() {
                let s: Vec<i32> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                if let Some(c) = roots.iter().position(|r| *r == s) {
                    sums.push((a, b, c));
                }
            }
        }
        let up = (0..roots.len())
            .map(|a| {
                (0..roots.len())
                    .filter(|&b| roots[a].iter().zip(&roots[b]).all(|(x, y)| x <= y))
                    .fold(0u64, |m, b| m | (1 << b))
            })
            .collect();
        Ok(RootPoset { kind, ambient: n, rank, roots, ecoords, sums, up })
    }

    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Roots in simple-root coordinates, sorted by height.
    pub fn roots(&self) -> &[Vec<i32>] {
        &self.roots
    }

    pub fn ecoords(&self, a: usize) -> &[i32] {
        &self.ecoords[a]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a] >> b & 1 == 1
    }

    /// Index of the root `e_i - e_j` (1-based `i < j`), type A only.
    pub fn alpha(&self, i: usize, j: usize) -> Option<usize> {
        self.ecoords.iter().position(|x| {
            x.iter().enumerate().all(|(t, &c)| c == if t + 1 == i { 1 } else if t + 1 == j { -1 } else { 0 })
        })
    }

    fn full(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn is_filter(&self, f: u64) -> bool {
        (0..self.len()).all(|a| f >> a & 1 == 0 || self.up[a] & !f == 0)
    }

    /// All filters as bit masks, smallest first.
    pub fn filters(&self) -> Vec<u64> {
        let mut out = vec![0u64];
        // grow by adding a root all of whose strict upper covers are present
        let mut frontier = vec![0u64];
        let mut seen = std::collections::HashSet::from([0u64]);
        while let Some(f) = frontier.pop() {
            for a in 0..self.len() {
                if f >> a & 1 == 0 && self.up[a] & !(f | 1 << a) == 0 {
                    let g = f | 1 << a;
                    if seen.insert(g) {
                        out.push(g);
                        frontier.push(g);
                    }
                }
            }
        }
        out.sort_by_key(|&f| (f.count_ones(), f));
        out
    }

    /// Minimal elements of a filter.
    pub fn antichain_of(&self, f: u64) -> Vec<usize> {
        (0..self.len()).filter(|&a| f >> a & 1 == 1 && (0..self.len()).all(|b| b == a || f >> b & 1 == 0 || !self.leq(b, a))).collect()
    }

    pub fn filter_of(&self, antichain: &[usize]) -> u64 {
        antichain.iter().fold(0, |m, &a| m | self.up[a])
    }

    pub fn is_antichain(&self, a: &[usize]) -> bool {
        a.iter().all(|&x| a.iter().all(|&y| x == y || !self.leq(x, y)))
    }

    /// Checks `(F_i + F_j) ∩ Φ⁺ ⊆ F_{i+j}` and `(I_i + I_j) ∩ Φ⁺ ⊆ I_{i+j}`
    /// for `i, j ≥ 1`, `i + j ≤ k`, with `I_i` the complement of `F_i`.
    pub fn is_geometric(&self, chain: &[u64]) -> bool {
        (2..=chain.len()).all(|l| self.pairs_ok(chain, l))
    }

    fn pairs_ok(&self, chain: &[u64], l: usize) -> bool {
        let full = self.full();
        let fl = chain[l - 1];
        (1..l).all(|i| {
            let (fi, fj) = (chain[i - 1], chain[l - i - 1]);
            let (ii, ij, il) = (full & !fi, full & !fj, full & !fl);
            self.sums.iter().all(|&(a, b, c)| {
                let inf = |x: u64, y: u64, z: u64| {
                    let hit = (x >> a & 1 == 1 && y >> b & 1 == 1) || (x >> b & 1 == 1 && y >> a & 1 == 1);
                    !hit || z >> c & 1 == 1
                };
                inf(fi, fj, fl) && inf(ii, ij, il)
            })
        })
    }

    pub fn is_multichain(&self, chain: &[u64]) -> bool {
        chain.iter().all(|&f| self.is_filter(f)) && chain.windows(2).all(|w| w[1] & !w[0] == 0)
    }

    /// Number of geometric multichains `F_1 ⊇ .. ⊇ F_k`.
    pub fn count_geometric(&self, k: usize) -> u128 {
        let filters = self.filters();
        filters
            .par_iter()
            .map(|&f1| {
                let mut chain = vec![f1];
                self.count_from(&filters, k, &mut chain)
            })
            .sum()
    }

    fn count_from(&self, filters: &[u64], k: usize, chain: &mut Vec<u64>) -> u128 {
        if chain.len() == k {
            return 1;
        }
        let last = *chain.last().unwrap();
        let mut total = 0;
        for &f in filters {
            if f & !last != 0 {
                continue;
            }
            chain.push(f);
            if self.pairs_ok(chain, chain.len()) {
                total += self.count_from(filters, k, chain);
            }
            chain.pop();
        }
        total
    }

    /// Nonnesting partition of `[n]` generated by `i ~ j` for `α_{ij}` in
    /// the antichain (type A).
    pub fn antichain_to_partition(&self, antichain: &[usize]) -> Result<SetPartition> {
        if self.kind != RootKind::A {
            return Err(Error::Invalid("nonnesting set partitions are a type A notion".into()));
        }
        if !self.is_antichain(antichain) {
            return Err(Error::Invalid("not an antichain".into()));
        }
        let n = self.ambient;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &a in antichain {
            let x = &self.ecoords[a];
            let i = x.iter().position(|&c| c == 1).unwrap();
            let j = x.iter().position(|&c| c == -1).unwrap();
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri] = rj;
        }
        let mut blocks: Vec<Vec<i32>> = Vec::new();
        let mut root_block = std::collections::HashMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            let idx = *root_block.entry(r).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[idx].push(x as i32 + 1);
        }
        let p = SetPartition::from_blocks(Ground::Plain(n), blocks)?;
        if !is_nonnesting(&p) {
            return Err(Error::Logic(format!("{p} has a nesting")));
        }
        Ok(p)
    }

    /// The action matrix of `w` on the root lattice, in simple-root
    /// coordinates (column `l` is `w(α_l)`).
    pub fn matrix(&self, w: &GroupElem) -> Result<Vec<Vec<i64>>> {
        let w = w.as_signed().ok_or_else(|| Error::Invalid("dihedral elements have no root lattice here".into()))?;
        let simple = simple_roots_e(self.kind, self.ambient);
        let mut m = vec![vec![0i64; self.rank]; self.rank];
        for (l, x) in simple.iter().enumerate() {
            let mut y = vec![0; self.ambient];
            for (t, &c) in x.iter().enumerate() {
                let img = w.apply(t as i32 + 1);
                y[img.unsigned_abs() as usize - 1] += c * img.signum();
            }
            for (r, c) in simple_coords(self.kind, &y).into_iter().enumerate() {
                m[r][l] = c as i64;
            }
        }
        Ok(m)
    }
}

fn simple_roots_e(kind: RootKind, n: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for i in 0..n - 1 {
        let mut v = vec![0; n];
        v[i] = 1;
        v[i + 1] = -1;
        out.push(v);
    }
    let mut v = vec![0; n];
    match kind {
        RootKind::A => return out,
        RootKind::B => v[n - 1] = 1,
        RootKind::C => v[n - 1] = 2,
        RootKind::D => {
            v[n - 2] = 1;
            v[n - 1] = 1;
        }
    }
    out.push(v);
    out
}

/// Coordinates of a root-lattice vector, given in `e`-coordinates, in the
/// basis of simple roots.
fn simple_coords(kind: RootKind, x: &[i32]) -> Vec<i32> {
    let n = x.len();
    let partial: Vec<i32> = x.iter().scan(0, |s, &v| {
        *s += v;
        Some(*s)
    }).collect();
    match kind {
        RootKind::A => partial[..n - 1].to_vec(),
        RootKind::B => partial,
        RootKind::C => {
            let mut c = partial;
            c[n - 1] /= 2;
            c
        }
        RootKind::D => {
            let total = partial[n - 1];
            let cn = total / 2;
            let mut c = partial[..n - 2].to_vec();
            c.push(cn - x[n - 1]);
            c.push(cn);
            c
        }
    }
}

/// No arcs `a < b < c < d` with `a ~ d`, `b ~ c` consecutive in their blocks.
pub fn is_nonnesting(p: &SetPartition) -> bool {
    let arcs: Vec<(i32, i32)> = p.blocks().iter().flat_map(|b| b.windows(2).map(|w| (w[0], w[1]))).collect();
    !arcs.iter().any(|&(a, d)| arcs.iter().any(|&(b, c)| a < b && c < d))
}

/// `Q/mQ` with `m = kh + 1` and the `W`-action by integer matrices.
pub struct Torus {
    poset: RootPoset,
    m: u64,
}

impl Torus {
    pub fn new(spec: &GroupSpec, k: usize) -> Result<Torus> {
        let poset = RootPoset::build(spec)?;
        Ok(Torus { poset, m: (k * spec.coxeter_number() + 1) as u64 })
    }

    /// Torus of an explicit root system, e.g. `C_n`.
    pub fn with_kind(kind: RootKind, n: usize, k: usize) -> Result<Torus> {
        let poset = RootPoset::build_kind(kind, n)?;
        let h = match kind {
            RootKind::A => n,
            RootKind::B | RootKind::C => 2 * n,
            RootKind::D => 2 * n - 2,
        };
        Ok(Torus { poset, m: (k * h + 1) as u64 })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Fixed vectors of `w` by enumerating all `m^rank` vectors.
    pub fn fixed_count(&self, w: &GroupElem, cap: u64) -> Result<u128> {
        let r = self.poset.rank();
        let total = power(self.m as usize, r);
        if total > cap as u128 {
            return Err(Error::CapExceeded { what: "torus enumeration".into(), needed: total, cap });
        }
        let a = self.poset.matrix(w)?;
        let m = self.m as i64;
        let count = (0..total as u64)
            .into_par_iter()
            .filter(|&idx| {
                let mut x = vec![0i64; r];
                let mut t = idx;
                for c in x.iter_mut() {
                    *c = (t % self.m) as i64;
                    t /= self.m;
                }
                (0..r).all(|i| (a[i].iter().zip(&x).map(|(p, q)| p * q).sum::<i64>() - x[i]).rem_euclid(m) == 0)
            })
            .count();
        Ok(count as u128)
    }

    /// Fixed vectors of `w` as `|ker(A - I) mod m| = ∏ gcd(d_i, m)` over
    /// the Smith invariants `d_i` of `A - I`.
    pub fn kernel_count(&self, w: &GroupElem) -> Result<u128> {
        let mut a = self.poset.matrix(w)?;
        for (i, row) in a.iter_mut().enumerate() {
            row[i] -= 1;
        }
        let diag = smith_diagonal(a);
        let m = self.m as i64;
        Ok(diag.iter().map(|&d| gcd(d.abs(), m) as u128).product())
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Diagonal of a Smith normal form (up to units) of a square matrix.
fn smith_diagonal(mut a: Vec<Vec<i64>>) -> Vec<i64> {
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        // bring the smallest nonzero entry of the lower block to (t, t)
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                diag.extend(std::iter::repeat_n(0, n - t));
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t] / p;
                for j in t..n {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / p;
                for i in t..n {
                    a[i][j] -= q * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            if let Some(i) = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0)) {
                for j in t..n {
                    a[t][j] += a[i][j];
                }
                continue;
            }
            diag.push(p);
            break;
        }
    }
    diag
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusRow {
    pub elem: u32,
    pub dim: usize,
    pub expected: u128,
    pub enumerated: Option<u128>,
    pub kernel: u128,
    pub pass: bool,
}

/// For one `w` per conjugacy class, compares fixed vectors of `w` on
/// `Q/(kh+1)Q` with `(kh+1)^{dim V^w}`. Enumeration is skipped above `cap`.
pub fn verify_nn_character(group: &Group, k: usize, cap: u64) -> Result<Vec<TorusRow>> {
    verify_torus(group, &Torus::new(group.spec(), k)?, cap)
}

/// As [`verify_nn_character`] with an explicit torus, e.g. of `C_n` for `B_n`.
pub fn verify_torus(group: &Group, torus: &Torus, cap: u64) -> Result<Vec<TorusRow>> {
    if torus.poset.rank() != group.spec().rank() {
        return Err(Error::Invalid(format!("torus of rank {} for {}", torus.poset.rank(), group.spec())));
    }
    let mut rows = Vec::new();
    for class in group.conjugacy_classes() {
        let w = class[0];
        let dim = group.fixed_flat(w).dim();
        let expected = power(torus.m as usize, dim);
        let enumerated = match torus.fixed_count(group.elem(w), cap) {
            Ok(c) => Some(c),
            Err(Error::CapExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        let kernel = torus.kernel_count(group.elem(w))?;
        let pass = kernel == expected && enumerated.is_none_or(|c| c == expected);
        rows.push(TorusRow { elem: w, dim, expected, enumerated, kernel, pass });
    }
    Ok(rows)
}
