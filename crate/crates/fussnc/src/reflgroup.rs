//! Concrete reflection groups: signed permutations for types A, B/C and D,
//! a symbolic rotation/reflection model for I2(m), flats as coordinate
//! equality partitions, reflection length and exact eigenvalue counts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setpart::{Ground, SetPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    I2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::I2 => "I2",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" | "C" | "BC" => Ok(Family::B),
            "D" => Ok(Family::D),
            "I2" | "I" => Ok(Family::I2),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

/// A group type. `param` is `n` for A/B/D (meaning A_{n-1}, B_n, D_n) and
/// `m` for I2(m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub param: usize,
}

impl GroupSpec {
    pub fn new(family: Family, param: usize) -> Result<Self> {
        let ok = match family {
            Family::A => param >= 2,
            Family::B => param >= 1,
            Family::D => param >= 3,
            Family::I2 => param >= 3,
        };
        if !ok {
            return Err(Error::InvalidGroup(format!("{family} with parameter {param}")));
        }
        if family != Family::I2 && param > 32 {
            return Err(Error::InvalidGroup(format!("{family}{param} is too large")));
        }
        Ok(GroupSpec { family, param })
    }

    /// Symmetric group on `n` letters (type A_{n-1}).
    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n).expect("A needs n >= 2")
    }

    pub fn b(n: usize) -> Self {
        Self::new(Family::B, n).expect("B needs n >= 1")
    }

    pub fn d(n: usize) -> Self {
        Self::new(Family::D, n).expect("D needs n >= 3")
    }

    pub fn i2(m: usize) -> Self {
        Self::new(Family::I2, m).expect("I2 needs m >= 3")
    }

    /// Dimension of the reflection representation.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::A => self.param - 1,
            Family::B | Family::D => self.param,
            Family::I2 => 2,
        }
    }

    /// Number of coordinates used by the signed permutation model.
    pub fn perm_size(&self) -> usize {
        match self.family {
            Family::I2 => 0,
            _ => self.param,
        }
    }

    pub fn coxeter_number(&self) -> usize {
        let n = self.param;
        match self.family {
            Family::A => n,
            Family::B => 2 * n,
            Family::D => 2 * n - 2,
            Family::I2 => n,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let n = self.param;
        match self.family {
            Family::A => (2..=n).collect(),
            Family::B => (1..=n).map(|i| 2 * i).collect(),
            Family::D => {
                let mut d: Vec<usize> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Family::I2 => vec![2, n],
        }
    }

    pub fn order(&self) -> u128 {
        let n = self.param as u128;
        let fact: u128 = (1..=n).product();
        match self.family {
            Family::A => fact,
            Family::B => fact << n,
            Family::D => fact << (n - 1),
            Family::I2 => 2 * n,
        }
    }

    pub fn is_signed(&self) -> bool {
        matches!(self.family, Family::B | Family::D)
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::A => format!("A{}", self.param - 1),
            Family::B => format!("B{}", self.param),
            Family::D => format!("D{}", self.param),
            Family::I2 => format!("I2({})", self.param),
        }
    }

    /// Whether a signed permutation of the right size lies in this group.
    pub fn contains_perm(&self, w: &SignedPerm) -> bool {
        if w.n() != self.param {
            return false;
        }
        match self.family {
            Family::A => w.is_positive(),
            Family::B => true,
            Family::D => w.negative_count() % 2 == 0,
            Family::I2 => false,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A permutation `w` of `±[n]` with `w(-i) = -w(i)`, stored by the images of
/// `1..=n`. Plain permutations of `[n]` are the ones with positive images.
///
/// Products compose right to left: `(u*v)(x) = u(v(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPerm {
    images: Vec<i32>,
}

/// One cycle type of a signed permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignedCycle {
    /// Underlying set is closed under negation; holds the whole cycle.
    Balanced(Vec<i32>),
    /// One of the two cycles `C`, `-C`; the stored one starts at a positive entry.
    Paired(Vec<i32>),
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { images: (1..=n as i32).collect() }
    }

    pub fn from_images(images: Vec<i32>) -> Result<Self> {
        let n = images.len() as i32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x == 0 || x.abs() > n || seen[(x.abs() - 1) as usize] {
                return Err(Error::Invalid(format!("{images:?} is not a signed permutation")));
            }
            seen[(x.abs() - 1) as usize] = true;
        }
        Ok(SignedPerm { images })
    }

    /// Builds a permutation from cycles on `±[n]`. Each cycle is closed up
    /// with its negative unless those points are already assigned.
    pub fn from_cycles(n: usize, cycles: &[Vec<i32>]) -> Result<Self> {
        let mut map: HashMap<i32, i32> = HashMap::new();
        let put = |a: i32, b: i32, map: &mut HashMap<i32, i32>| -> Result<()> {
            if a == 0 || b == 0 || a.unsigned_abs() as usize > n || b.unsigned_abs() as usize > n {
                return Err(Error::Invalid(format!("cycle entry out of range in {cycles:?}")));
            }
            match map.insert(a, b) {
                Some(old) if old != b => {
                    Err(Error::Invalid(format!("conflicting images for {a} in {cycles:?}")))
                }
                _ => Ok(()),
            }
        };
        for cyc in cycles {
            let l = cyc.len();
            for i in 0..l {
                put(cyc[i], cyc[(i + 1) % l], &mut map)?;
            }
        }
        for cyc in cycles {
            if cyc.iter().all(|x| !map.contains_key(&-x)) {
                let l = cyc.len();
                for i in 0..l {
                    put(-cyc[i], -cyc[(i + 1) % l], &mut map)?;
                }
            }
        }
        let mut images = Vec::with_capacity(n);
        for i in 1..=n as i32 {
            let wi = *map.get(&i).unwrap_or(&i);
            let wm = *map.get(&-i).unwrap_or(&-i);
            if wm != -wi {
                return Err(Error::Invalid(format!("cycles {cycles:?} do not commute with negation")));
            }
            images.push(wi);
        }
        SignedPerm::from_images(images)
    }

    /// Parses cycle notation: `(1,2,5)(3,4)`, `((1,-2))[3]`, `()`.
    /// `((a,..))` and `(a,..)` add the cycle and its negative; `[a,..,l]`
    /// is the balanced cycle `(a,..,l,-a,..,-l)`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bytes = s.as_bytes();
        let mut cycles: Vec<Vec<i32>> = Vec::new();
        let mut i = 0;
        let entries = |body: &str| -> Result<Vec<i32>> {
            if body.is_empty() {
                return Ok(vec![]);
            }
            body.split(',')
                .map(|t| t.parse::<i32>().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
                .collect()
        };
        while i < bytes.len() {
            let (open, close, skip) = if s[i..].starts_with("((") {
                ("((", "))", 2)
            } else if bytes[i] == b'(' {
                ("(", ")", 1)
            } else if bytes[i] == b'[' {
                ("[", "]", 1)
            } else {
                return Err(Error::Parse(format!("unexpected character in {s:?}")));
            };
            let rest = &s[i + skip..];
            let end = rest
                .find(close)
                .ok_or_else(|| Error::Parse(format!("unclosed {open} in {s:?}")))?;
            let body = entries(&rest[..end])?;
            if open == "[" {
                let mut cyc = body.clone();
                cyc.extend(body.iter().map(|x| -x));
                cycles.push(cyc);
            } else if !body.is_empty() {
                cycles.push(body);
            }
            i += skip + end + close.len();
        }
        SignedPerm::from_cycles(n, &cycles)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.images[(i.unsigned_abs() - 1) as usize];
        if i > 0 {
            v
        } else {
            -v
        }
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn mul(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm { images: other.images.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            let v = (i + 1) as i32;
            images[(x.unsigned_abs() - 1) as usize] = if x > 0 { v } else { -v };
        }
        SignedPerm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == (i + 1) as i32)
    }

    pub fn is_positive(&self) -> bool {
        self.images.iter().all(|&x| x > 0)
    }

    pub fn negative_count(&self) -> usize {
        self.images.iter().filter(|&&x| x < 0).count()
    }

    pub fn order(&self) -> usize {
        let mut w = self.clone();
        let mut k = 1;
        while !w.is_identity() {
            w = w.mul(self);
            k += 1;
        }
        k
    }

    /// Cycles on `[n]`, including fixed points. Only meaningful for positive
    /// permutations.
    pub fn plain_cycles(&self) -> Vec<Vec<i32>> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 1..=n as i32 {
            if seen[i as usize] {
                continue;
            }
            let mut cyc = vec![i];
            seen[i as usize] = true;
            let mut j = self.apply(i);
            while j != i {
                seen[j.unsigned_abs() as usize] = true;
                cyc.push(j);
                j = self.apply(j);
            }
            out.push(cyc);
        }
        out
    }

    /// Balanced cycles and one representative of each paired-cycle pair,
    /// fixed points included as paired 1-cycles.
    pub fn signed_cycles(&self) -> Vec<SignedCycle> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 1..=n as i32 {
            if seen[i as usize] {
                continue;
            }
            let mut cyc = vec![i];
            let mut j = self.apply(i);
            while j != i {
                cyc.push(j);
                j = self.apply(j);
            }
            for x in &cyc {
                seen[x.unsigned_abs() as usize] = true;
            }
            if cyc.contains(&-i) {
                out.push(SignedCycle::Balanced(cyc));
            } else {
                out.push(SignedCycle::Paired(cyc));
            }
        }
        out
    }

    fn fmt_cycles(&self) -> String {
        if self.is_positive() {
            let s: String = self
                .plain_cycles()
                .into_iter()
                .filter(|c| c.len() > 1)
                .map(|c| format!("({})", join(&c)))
                .collect();
            return if s.is_empty() { "()".into() } else { s };
        }
        let mut s = String::new();
        for c in self.signed_cycles() {
            match c {
                SignedCycle::Paired(c) if c.len() > 1 => s += &format!("(({}))", join(&c)),
                SignedCycle::Paired(_) => {}
                SignedCycle::Balanced(c) => s += &format!("[{}]", join(&c[..c.len() / 2])),
            }
        }
        if s.is_empty() {
            "()".into()
        } else {
            s
        }
    }
}

fn join(v: &[i32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_cycles())
    }
}

/// An element of I2(m): the rotation `ρ^j` by `2πj/m`, or the reflection
/// `σ_j` across the line at angle `πj/m`.
///
/// `ρ^a ρ^b = ρ^{a+b}`, `ρ^a σ_b = σ_{a+b}`, `σ_b ρ^a = σ_{b-a}`,
/// `σ_a σ_b = ρ^{a-b}`. The simple reflections are `s = σ_0`,
/// `t = σ_{m-1}`, so `c = st = ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dihedral {
    pub m: u32,
    pub reflection: bool,
    pub j: u32,
}

impl Dihedral {
    pub fn rot(m: u32, j: i64) -> Self {
        Dihedral { m, reflection: false, j: j.rem_euclid(m as i64) as u32 }
    }

    pub fn refl(m: u32, j: i64) -> Self {
        Dihedral { m, reflection: true, j: j.rem_euclid(m as i64) as u32 }
    }

    pub fn mul(&self, o: &Dihedral) -> Dihedral {
        let m = self.m;
        let (a, b) = (self.j as i64, o.j as i64);
        match (self.reflection, o.reflection) {
            (false, false) => Dihedral::rot(m, a + b),
            (false, true) => Dihedral::refl(m, a + b),
            (true, false) => Dihedral::refl(m, a - b),
            (true, true) => Dihedral::rot(m, a - b),
        }
    }

    pub fn inverse(&self) -> Dihedral {
        if self.reflection {
            *self
        } else {
            Dihedral::rot(self.m, -(self.j as i64))
        }
    }
}

impl fmt::Display for Dihedral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflection {
            write!(f, "s{}", self.j)
        } else {
            write!(f, "r{}", self.j)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupElem {
    Signed(SignedPerm),
    Dihedral(Dihedral),
}

impl GroupElem {
    pub fn mul(&self, o: &GroupElem) -> GroupElem {
        match (self, o) {
            (GroupElem::Signed(a), GroupElem::Signed(b)) => GroupElem::Signed(a.mul(b)),
            (GroupElem::Dihedral(a), GroupElem::Dihedral(b)) => GroupElem::Dihedral(a.mul(b)),
            _ => panic!("multiplying elements of different groups"),
        }
    }

    pub fn inverse(&self) -> GroupElem {
        match self {
            GroupElem::Signed(a) => GroupElem::Signed(a.inverse()),
            GroupElem::Dihedral(a) => GroupElem::Dihedral(a.inverse()),
        }
    }

    pub fn as_signed(&self) -> Option<&SignedPerm> {
        match self {
            GroupElem::Signed(p) => Some(p),
            GroupElem::Dihedral(_) => None,
        }
    }

    pub fn as_dihedral(&self) -> Option<&Dihedral> {
        match self {
            GroupElem::Dihedral(d) => Some(d),
            GroupElem::Signed(_) => None,
        }
    }

    /// JSON form: the image list for signed permutations, `{"rot": j}` or
    /// `{"refl": j}` for dihedral elements.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            GroupElem::Signed(p) => serde_json::json!(p.images()),
            GroupElem::Dihedral(d) if d.reflection => serde_json::json!({ "refl": d.j }),
            GroupElem::Dihedral(d) => serde_json::json!({ "rot": d.j }),
        }
    }

    pub fn parse(spec: &GroupSpec, s: &str) -> Result<GroupElem> {
        let s = s.trim();
        if spec.family == Family::I2 {
            let m = spec.param as u32;
            let (kind, num) = s.split_at(1);
            let j: i64 = num.parse().map_err(|_| Error::Parse(format!("bad dihedral element {s:?}")))?;
            return match kind {
                "r" => Ok(GroupElem::Dihedral(Dihedral::rot(m, j))),
                "s" => Ok(GroupElem::Dihedral(Dihedral::refl(m, j))),
                _ => Err(Error::Parse(format!("dihedral elements are rJ or sJ, got {s:?}"))),
            };
        }
        let w = SignedPerm::parse(spec.param, s)?;
        if !spec.contains_perm(&w) {
            return Err(Error::Invalid(format!("{s} is not in {spec}")));
        }
        Ok(GroupElem::Signed(w))
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Signed(p) => write!(f, "{p}"),
            GroupElem::Dihedral(d) => write!(f, "{d}"),
        }
    }
}

/// Flats of I2(m): the origin, the mirror `L_j` at angle `πj/m`, or the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DihedralFlat {
    Origin,
    Line(u32),
    Plane,
}

/// A flat, recorded as the partition of coordinates that agree on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flat {
    Partition(SetPartition),
    Dihedral { m: u32, flat: DihedralFlat },
}

impl Flat {
    pub fn dim(&self) -> usize {
        match self {
            Flat::Partition(p) => match p.ground() {
                Ground::Plain(_) => p.blocks().len() - 1,
                Ground::Signed(_) => {
                    let zero = p.blocks().iter().filter(|b| b.contains(&-b[0])).count();
                    (p.blocks().len() - zero) / 2
                }
            },
            Flat::Dihedral { flat, .. } => match flat {
                DihedralFlat::Origin => 0,
                DihedralFlat::Line(_) => 1,
                DihedralFlat::Plane => 2,
            },
        }
    }

    pub fn as_partition(&self) -> Option<&SetPartition> {
        match self {
            Flat::Partition(p) => Some(p),
            Flat::Dihedral { .. } => None,
        }
    }

    /// `w.X`. Partitions move blockwise; `ρ^a L_j = L_{j+2a}`,
    /// `σ_a L_j = L_{2a-j}`.
    pub fn act(&self, w: &GroupElem) -> Flat {
        match (self, w) {
            (Flat::Partition(p), GroupElem::Signed(w)) => Flat::Partition(p.map(|x| w.apply(x))),
            (Flat::Dihedral { m, flat }, GroupElem::Dihedral(d)) => {
                let flat = match flat {
                    DihedralFlat::Line(j) => {
                        let (j, a, m) = (*j as i64, d.j as i64, *m as i64);
                        let t = if d.reflection { 2 * a - j } else { j + 2 * a };
                        DihedralFlat::Line(t.rem_euclid(m) as u32)
                    }
                    other => *other,
                };
                Flat::Dihedral { m: *m, flat }
            }
            _ => panic!("flat and element from different groups"),
        }
    }

    /// Whether `w` fixes the flat pointwise.
    pub fn isotropy_contains(&self, w: &GroupElem) -> bool {
        match (self, w) {
            (Flat::Partition(p), GroupElem::Signed(w)) => {
                let lab = p.block_lookup();
                p.ground().elements().all(|i| lab(i) == lab(w.apply(i)))
            }
            (Flat::Dihedral { flat, .. }, GroupElem::Dihedral(d)) => match flat {
                DihedralFlat::Origin => true,
                DihedralFlat::Plane => !d.reflection && d.j == 0,
                DihedralFlat::Line(j) => (!d.reflection && d.j == 0) || (d.reflection && d.j == *j),
            },
            _ => false,
        }
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flat::Partition(p) => write!(f, "{p}"),
            Flat::Dihedral { flat, .. } => match flat {
                DihedralFlat::Origin => f.write_str("origin"),
                DihedralFlat::Line(j) => write!(f, "line:{j}"),
                DihedralFlat::Plane => f.write_str("plane"),
            },
        }
    }
}

/// The distinguished Coxeter element: `(1,..,n)` in type A, `[1,..,n]` in
/// type B, `[1,..,n-1][n]` in type D and `st = ρ` in I2(m).
pub fn coxeter_element(g: &GroupSpec) -> GroupElem {
    let n = g.param;
    match g.family {
        Family::A => {
            let images = (1..=n as i32).map(|i| i % n as i32 + 1).collect();
            GroupElem::Signed(SignedPerm { images })
        }
        Family::B => {
            let mut images: Vec<i32> = (2..=n as i32).collect();
            images.push(-1);
            GroupElem::Signed(SignedPerm { images })
        }
        Family::D => {
            let mut images: Vec<i32> = (2..n as i32).collect();
            images.push(-1);
            images.push(-(n as i32));
            GroupElem::Signed(SignedPerm { images })
        }
        Family::I2 => GroupElem::Dihedral(Dihedral::rot(n as u32, 1)),
    }
}

/// `V^w` as a coordinate partition.
pub fn fixed_flat(g: &GroupSpec, w: &GroupElem) -> Flat {
    match w {
        GroupElem::Signed(p) => {
            let ground = if g.family == Family::A { Ground::Plain(g.param) } else { Ground::Signed(g.param) };
            let mut blocks: Vec<Vec<i32>> = Vec::new();
            match ground {
                Ground::Plain(_) => blocks = p.plain_cycles(),
                Ground::Signed(_) => {
                    let mut zero = Vec::new();
                    for c in p.signed_cycles() {
                        match c {
                            SignedCycle::Balanced(c) => zero.extend(c),
                            SignedCycle::Paired(c) => {
                                blocks.push(c.iter().map(|x| -x).collect());
                                blocks.push(c);
                            }
                        }
                    }
                    if !zero.is_empty() {
                        blocks.push(zero);
                    }
                }
            }
            Flat::Partition(SetPartition::from_blocks(ground, blocks).expect("cycle supports partition the ground set"))
        }
        GroupElem::Dihedral(d) => {
            let flat = if d.reflection {
                DihedralFlat::Line(d.j)
            } else if d.j == 0 {
                DihedralFlat::Plane
            } else {
                DihedralFlat::Origin
            };
            Flat::Dihedral { m: d.m, flat }
        }
    }
}

pub fn reflection_length(g: &GroupSpec, w: &GroupElem) -> usize {
    g.rank() - fixed_flat(g, w).dim()
}

/// `u ≤_T v` iff `ℓ_T(v) = ℓ_T(u) + ℓ_T(u⁻¹v)`.
pub fn absolute_leq(g: &GroupSpec, u: &GroupElem, v: &GroupElem) -> bool {
    reflection_length(g, v) == reflection_length(g, u) + reflection_length(g, &u.inverse().mul(v))
}

/// Multiplicity of `e^{2πi d/order}` as an eigenvalue of `w` on `V`.
pub fn eigenvalue_multiplicity(g: &GroupSpec, w: &GroupElem, d: usize, order: usize) -> Result<usize> {
    if order == 0 || d >= order {
        return Err(Error::Invalid(format!("exponent {d} outside [0, {order})")));
    }
    let (d, order) = (d as i64, order as i64);
    // ζ^l = 1 exactly when order divides d*l
    let root_of = |l: i64| (d * l) % order == 0;
    // ζ^l = -1 exactly when 2dl/order is an odd integer
    let neg_root_of = |l: i64| (2 * d * l) % (2 * order) == order;
    Ok(match w {
        GroupElem::Signed(p) if g.family == Family::A => {
            let c = p.plain_cycles().iter().filter(|c| root_of(c.len() as i64)).count();
            if d == 0 {
                c - 1
            } else {
                c
            }
        }
        GroupElem::Signed(p) => p
            .signed_cycles()
            .iter()
            .filter(|c| match c {
                SignedCycle::Paired(c) => root_of(c.len() as i64),
                SignedCycle::Balanced(c) => neg_root_of(c.len() as i64 / 2),
            })
            .count(),
        GroupElem::Dihedral(r) => {
            let m = r.m as i64;
            if r.reflection {
                usize::from(d == 0) + usize::from(2 * d == order)
            } else {
                // ρ^j has eigenvalues e^{±2πij/m}
                let j = r.j as i64;
                [j, -j].iter().filter(|&&t| (d * m - t * order).rem_euclid(order * m) == 0).count()
            }
        }
    })
}

/// All elements in lexicographic order.
fn enumerate_elements(g: &GroupSpec) -> Vec<GroupElem> {
    let n = g.param;
    let mut out = Vec::new();
    match g.family {
        Family::I2 => {
            for j in 0..n as i64 {
                out.push(GroupElem::Dihedral(Dihedral::rot(n as u32, j)));
            }
            for j in 0..n as i64 {
                out.push(GroupElem::Dihedral(Dihedral::refl(n as u32, j)));
            }
        }
        _ => {
            let mut perm: Vec<i32> = (1..=n as i32).collect();
            loop {
                let signs: u32 = if g.family == Family::A { 1 } else { 1 << n };
                for mask in 0..signs {
                    if g.family == Family::D && mask.count_ones() % 2 == 1 {
                        continue;
                    }
                    let images = perm
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x })
                        .collect();
                    out.push(GroupElem::Signed(SignedPerm { images }));
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
    }
    out.sort();
    out
}

fn next_permutation(v: &mut [i32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn identity_of(g: &GroupSpec) -> GroupElem {
    match g.family {
        Family::I2 => GroupElem::Dihedral(Dihedral::rot(g.param as u32, 0)),
        _ => GroupElem::Signed(SignedPerm::identity(g.param)),
    }
}

const TABLE_LIMIT: usize = 5000;

/// A fully enumerated group with elements indexed in lexicographic order,
/// so smaller index means lexicographically smaller element.
pub struct Group {
    spec: GroupSpec,
    elems: Vec<GroupElem>,
    index: HashMap<GroupElem, u32>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
    identity: u32,
    coxeter: u32,
    flats: Vec<Flat>,
    flat_index: HashMap<Flat, u32>,
    fixed: Vec<u32>,
    isotropy: Vec<Vec<u32>>,
}

impl Group {
    pub fn build(spec: GroupSpec, cap: u64) -> Result<Group> {
        let order = spec.order();
        if order > cap as u128 {
            return Err(Error::CapExceeded { what: format!("group {spec}"), needed: order, cap });
        }
        let elems = enumerate_elements(&spec);
        let index: HashMap<GroupElem, u32> = elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let size = elems.len();
        let table = (size <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(size * size);
            for a in &elems {
                for b in &elems {
                    t.push(index[&a.mul(b)]);
                }
            }
            t
        });
        let inv = elems.iter().map(|e| index[&e.inverse()]).collect();
        let identity = index[&identity_of(&spec)];
        let coxeter = index[&coxeter_element(&spec)];
        let mut flats: Vec<Flat> = Vec::new();
        let mut flat_index: HashMap<Flat, u32> = HashMap::new();
        let mut fixed = Vec::with_capacity(size);
        for e in &elems {
            let f = fixed_flat(&spec, e);
            let id = *flat_index.entry(f.clone()).or_insert_with(|| {
                flats.push(f);
                (flats.len() - 1) as u32
            });
            fixed.push(id);
        }
        let isotropy = flats
            .iter()
            .map(|f| (0..size as u32).filter(|&i| f.isotropy_contains(&elems[i as usize])).collect())
            .collect();
        Ok(Group { spec, elems, index, table, inv, identity, coxeter, flats, flat_index, fixed, isotropy })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn elem(&self, i: u32) -> &GroupElem {
        &self.elems[i as usize]
    }

    pub fn elements(&self) -> &[GroupElem] {
        &self.elems
    }

    pub fn index_of(&self, e: &GroupElem) -> Option<u32> {
        self.index.get(e).copied()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elems.len() + b as usize],
            None => self.index[&self.elems[a as usize].mul(&self.elems[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn coxeter(&self) -> u32 {
        self.coxeter
    }

    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: u32, e: usize) -> u32 {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn reflection_length(&self, a: u32) -> usize {
        self.spec.rank() - self.flats[self.fixed[a as usize] as usize].dim()
    }

    pub fn absolute_leq(&self, u: u32, v: u32) -> bool {
        self.reflection_length(v) == self.reflection_length(u) + self.reflection_length(self.mul(self.inv(u), v))
    }

    /// Reflections are the elements of reflection length one.
    pub fn reflections(&self) -> Vec<u32> {
        (0..self.size() as u32).filter(|&i| self.reflection_length(i) == 1).collect()
    }

    pub fn fixed_flat_id(&self, a: u32) -> u32 {
        self.fixed[a as usize]
    }

    pub fn fixed_flat(&self, a: u32) -> &Flat {
        &self.flats[self.fixed[a as usize] as usize]
    }

    /// All flats `{V^w}`, indexed.
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: u32) -> &Flat {
        &self.flats[id as usize]
    }

    pub fn flat_id(&self, f: &Flat) -> Option<u32> {
        self.flat_index.get(f).copied()
    }

    /// `W_X` for the flat with the given id.
    pub fn isotropy(&self, flat: u32) -> &[u32] {
        &self.isotropy[flat as usize]
    }

    pub fn act_flat(&self, w: u32, flat: u32) -> u32 {
        let f = self.flats[flat as usize].act(&self.elems[w as usize]);
        self.flat_index[&f]
    }

    pub fn eigenvalue_multiplicity(&self, w: u32, d: usize, order: usize) -> Result<usize> {
        eigenvalue_multiplicity(&self.spec, &self.elems[w as usize], d, order)
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut class: Vec<u32> = (0..n as u32).map(|g| self.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y as usize] = true;
            }
            out.push(class);
        }
        out
    }
}
