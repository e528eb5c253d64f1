//! Exact polynomials, cyclotomic reduction, `Cat^k(W;q)` and cyclic sieving
//! of `NC^k(W)` under the `Z_kh` action.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncw::{g_act_chain, NCPoset};
use crate::reflgroup::{Group, GroupSpec};

/// Dense polynomial with big-integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly(Vec::new())
    }

    pub fn one() -> IntPoly {
        IntPoly(vec![BigInt::one()])
    }

    /// `c q^e`.
    pub fn monomial(c: i64, e: usize) -> IntPoly {
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::from(c);
        IntPoly::new(v)
    }

    /// `[n]_q = 1 + q + .. + q^{n-1}`.
    pub fn q_int(n: usize) -> IntPoly {
        IntPoly::new(vec![BigInt::one(); n])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial given degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        IntPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        IntPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }

    /// Quotient and remainder; the divisor's leading coefficient must be ±1.
    pub fn divrem(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let lead = d.0.last().ok_or_else(|| Error::Invalid("division by zero polynomial".into()))?;
        if lead.abs() != BigInt::one() {
            return Err(Error::Invalid("divisor must have leading coefficient ±1".into()));
        }
        let mut r = self.0.clone();
        let dn = d.0.len();
        if r.len() < dn {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dn + 1];
        for i in (0..q.len()).rev() {
            let c = &r[i + dn - 1] * lead;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        Ok((IntPoly::new(q), IntPoly::new(r)))
    }

    /// Exact quotient; errors on a nonzero remainder.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Logic("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// Folds exponents modulo `m`, i.e. reduces modulo `q^m - 1`.
    pub fn fold(&self, m: usize) -> IntPoly {
        let mut v = vec![BigInt::zero(); m.min(self.0.len()).max(1)];
        for (e, c) in self.0.iter().enumerate() {
            v[e % m] += c;
        }
        IntPoly::new(v)
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            let coef = if a.is_one() && e > 0 { String::new() } else { a.to_string() };
            let var = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            write!(f, "{sign}{coef}{var}")?;
            first = false;
        }
        Ok(())
    }
}

/// The `m`-th cyclotomic polynomial, by exact division of `q^m - 1` by
/// `Φ_d` for the proper divisors `d` of `m`.
pub fn cyclotomic(m: usize) -> IntPoly {
    let mut memo = HashMap::new();
    cyclotomic_memo(m, &mut memo)
}

fn cyclotomic_memo(m: usize, memo: &mut HashMap<usize, IntPoly>) -> IntPoly {
    assert!(m >= 1, "cyclotomic polynomials are indexed from 1");
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let mut p = IntPoly::monomial(1, m).sub(&IntPoly::one());
    for d in 1..m {
        if m % d == 0 {
            p = p.div_exact(&cyclotomic_memo(d, memo)).expect("Φ_d divides q^m - 1");
        }
    }
    memo.insert(m, p.clone());
    p
}

/// An element of `Z[ζ_m]`: a polynomial in a primitive `m`-th root of unity,
/// reduced modulo `Φ_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloInt {
    pub m: usize,
    pub coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn from_poly(p: &IntPoly, m: usize) -> CycloInt {
        let phi = cyclotomic(m);
        let (_, r) = p.fold(m).divrem(&phi).expect("cyclotomic polynomials are monic");
        let mut coeffs = r.0;
        coeffs.resize(phi.degree(), BigInt::zero());
        CycloInt { m, coeffs }
    }

    /// `Some(N)` when the element is the rational integer `N`.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }
}

/// `p(ω^d)` for `ω = e^{2πi/m}`: `ω^d` is a primitive `m/gcd(m,d)`-th root.
pub fn eval_at_root(p: &IntPoly, m: usize, d: usize) -> Result<CycloInt> {
    if m == 0 || d >= m {
        return Err(Error::Invalid(format!("need 0 <= d < m, got d = {d}, m = {m}")));
    }
    Ok(CycloInt::from_poly(p, m / m.gcd(&d)))
}

/// `Cat^k(W;q) = ∏ (1 - q^{kh+d_i}) / (1 - q^{d_i})`.
pub fn cat_poly(spec: &GroupSpec, k: usize) -> Result<IntPoly> {
    let kh = k * spec.coxeter_number();
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in spec.degrees() {
        num = num.mul(&IntPoly::one().sub(&IntPoly::monomial(1, kh + d)));
        den = den.mul(&IntPoly::one().sub(&IntPoly::monomial(1, d)));
    }
    num.div_exact(&den).map_err(|_| Error::Logic(format!("Cat^{k}({spec};q) is not a polynomial")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CspRow {
    pub d: usize,
    /// `Cat^k(W; ω^d)`, when it is a rational integer.
    pub expected: Option<i128>,
    pub actual: u128,
    pub pass: bool,
}

/// For every `d < kh`, compares the number of chains fixed by `g^d` with
/// `Cat^k(W; ω^d)`.
pub fn verify_csp(group: &Group, k: usize) -> Result<Vec<CspRow>> {
    let kh = k * group.spec().coxeter_number();
    let poly = cat_poly(group.spec(), k)?;
    let nc = NCPoset::build(group);
    let chains = nc.multichains(k);
    let index: HashMap<_, usize> = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let g: Vec<usize> = chains.iter().map(|c| index[&g_act_chain(group, c)]).collect();
    let mut cur: Vec<usize> = (0..chains.len()).collect();
    let mut rows = Vec::with_capacity(kh);
    for d in 0..kh {
        let actual = cur.iter().enumerate().filter(|&(i, &j)| i == j).count() as u128;
        let expected = eval_at_root(&poly, kh, d)?.as_integer().and_then(|n| n.to_i128());
        rows.push(CspRow { d, expected, actual, pass: expected == Some(actual as i128) });
        for x in cur.iter_mut() {
            *x = g[*x];
        }
    }
    Ok(rows)
}
