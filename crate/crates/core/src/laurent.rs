//! Multivariate Laurent polynomials with integer coefficients.
//!
//! A [`LaurentPoly`] lives in `Z[v_1^{±1}, ..., v_n^{±1}]`. Monomials are
//! exponent vectors compared lexicographically; terms are kept in a
//! `BTreeMap`, so the canonical form (no zero coefficients, sorted terms)
//! is maintained by construction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    /// Componentwise `self - other` (i.e. `self / other` multiplicatively).
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// Default variable names for a ring with `n` variables: `t` for one
/// variable, `x, y` for two, `x1, y1, x2, y2, ...` otherwise.
pub fn var_names(n: usize) -> Vec<String> {
    match n {
        0 => vec![],
        1 => vec!["t".into()],
        2 => vec!["x".into(), "y".into()],
        _ if n % 2 == 0 => (1..=n / 2)
            .flat_map(|i| [format!("x{i}"), format!("y{i}")])
            .collect(),
        _ => (1..=n).map(|i| format!("v{i}")).collect(),
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let nvars = m.nvars();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The monomial `v_i` in a ring with `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(Monomial(e), 1)
    }

    pub fn monomial(exps: &[i64]) -> Self {
        Self::term(Monomial(exps.to_vec()), 1)
    }

    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c.into());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading term under lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Constant value, if the polynomial has no non-trivial monomials.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `±monomial`, the units of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VarMismatch(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        Ok(r)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut r = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by the monomial with exponent vector `m`.
    pub fn monomial_mul(&self, m: &Monomial) -> Self {
        assert_eq!(m.nvars(), self.nvars, "monomial variable count");
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// The involution `v -> v^{-1}` on every variable.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.inv(), c.clone())).collect(),
        }
    }

    /// Value at `v_i = 1` for every variable.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitute each variable by a unit `±monomial` (possibly in a ring
    /// with a different number of variables).
    pub fn substitute_units(&self, images: &[LaurentPoly], target_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars);
        let mut r = Self::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target_nvars, c.clone());
            for (e, img) in m.0.iter().zip(images) {
                if *e != 0 {
                    t = &t * &img.unit_pow(*e);
                }
            }
            for (k, v) in t.terms {
                r.add_term(k, v);
            }
        }
        r
    }

    /// Integer power of a unit; panics if `self` is not a unit and `e < 0`.
    pub fn unit_pow(&self, e: i64) -> Self {
        if e >= 0 {
            let mut r = Self::one(self.nvars);
            for _ in 0..e {
                r = &r * self;
            }
            r
        } else {
            assert!(self.is_unit(), "negative power of a non-unit");
            let (m, c) = self.terms.iter().next().unwrap();
            let k = (-e) as u32;
            let sign = if c.is_negative() && k % 2 == 1 { -1 } else { 1 };
            Self::term(Monomial(m.0.iter().map(|x| x * e).collect()), sign)
        }
    }

    /// Per-variable minimum exponent, or all-zero for the zero polynomial.
    pub fn min_exponents(&self) -> Monomial {
        let mut mins = vec![i64::MAX; self.nvars];
        for m in self.terms.keys() {
            for (lo, e) in mins.iter_mut().zip(&m.0) {
                *lo = (*lo).min(*e);
            }
        }
        if self.terms.is_empty() {
            mins.iter_mut().for_each(|x| *x = 0);
        }
        Monomial(mins)
    }

    /// Shift so that every variable has minimum exponent 0, returning the
    /// shifted polynomial and the monomial divided out.
    pub fn to_polynomial(&self) -> (Self, Monomial) {
        let mins = self.min_exponents();
        (self.monomial_mul(&mins.inv()), mins)
    }

    /// Canonical representative of `{±m·p}` over all monomials `m`: every
    /// variable shifted to minimum exponent 0, and the coefficient of the
    /// lexicographically smallest monomial made positive.
    pub fn unit_normalize(&self) -> Self {
        let (mut p, _) = self.to_polynomial();
        if let Some((_, c)) = p.terms.iter().next() {
            if c.is_negative() {
                p = -p;
            }
        }
        p
    }

    /// Exact division. Returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let (a0, ma) = self.to_polynomial();
        let (d0, md) = d.to_polynomial();
        let q = poly_div_exact(&a0, &d0)?;
        Some(q.monomial_mul(&ma.div(&md)))
    }

    pub fn degree_in(&self, v: usize) -> Option<i64> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    /// Parse canonical text such as `2*x*y^-1 + y^2 - 3`.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        parse_poly(s, nvars, &var_names(nvars))
    }

    pub fn parse_with_names(s: &str, names: &[String]) -> Result<Self> {
        parse_poly(s, names.len(), names)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (e, name) in m.0.iter().zip(names) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&var_names(self.nvars)))
    }
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("Laurent polynomial variable mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

/// Division in the polynomial ring (all exponents nonnegative) by
/// repeatedly cancelling leading terms.
fn poly_div_exact(a: &LaurentPoly, d: &LaurentPoly) -> Option<LaurentPoly> {
    let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut r = a.clone();
    let mut q = LaurentPoly::zero(a.nvars);
    while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
        if !dm.divides(&rm) {
            return None;
        }
        let (qc, rem) = rc.div_rem(&dc);
        if !rem.is_zero() {
            return None;
        }
        let qm = rm.div(&dm);
        let t = LaurentPoly::term(qm.clone(), qc.clone());
        r = &r - &(&t * d);
        q.add_term(qm, qc);
    }
    Some(q)
}

/// Greatest common divisor in the Laurent ring, unit-normalized.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert_eq!(a.nvars, b.nvars);
    if a.is_zero() {
        return b.unit_normalize();
    }
    if b.is_zero() {
        return a.unit_normalize();
    }
    let (a0, _) = a.to_polynomial();
    let (b0, _) = b.to_polynomial();
    poly_gcd(&a0, &b0, a.nvars).unit_normalize()
}

/// Gcd of polynomials involving only variables `0..k`.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly, k: usize) -> LaurentPoly {
    let n = a.nvars;
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if k == 0 {
        let ca = a.as_constant().unwrap();
        let cb = b.as_constant().unwrap();
        return LaurentPoly::constant(n, ca.gcd(&cb));
    }
    let v = k - 1;
    let ca = content(a, v);
    let cb = content(b, v);
    let c = poly_gcd(&ca, &cb, v);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.degree_in(v) == Some(0) {
            return c;
        }
        let r = pseudo_rem(&p, &q, v);
        if r.is_zero() {
            break;
        }
        let cr = content(&r, v);
        p = q;
        q = r.div_exact(&cr).expect("content divides");
    }
    &c * &q
}

/// Coefficients of `p` viewed as a univariate polynomial in `v`.
fn coeffs_in(p: &LaurentPoly, v: usize) -> BTreeMap<i64, LaurentPoly> {
    let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (m, c) in &p.terms {
        let mut e = m.clone();
        let d = e.0[v];
        e.0[v] = 0;
        out.entry(d)
            .or_insert_with(|| LaurentPoly::zero(p.nvars))
            .add_term(e, c.clone());
    }
    out
}

fn content(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero(p.nvars);
    for c in coeffs_in(p, v).values() {
        g = poly_gcd(&g, c, v);
        if g.is_unit() {
            break;
        }
    }
    if let Some((_, lc)) = g.leading() {
        if lc.is_negative() {
            g = -g;
        }
    }
    g
}

fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let bc = coeffs_in(b, v);
    let (&db, lc) = bc.iter().next_back().unwrap();
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v) {
        if dr < db {
            break;
        }
        let lr = coeffs_in(&r, v).remove(&dr).unwrap();
        let mut shift = vec![0; a.nvars];
        shift[v] = dr - db;
        r = &(lc * &r) - &(&lr * &b.monomial_mul(&Monomial(shift)));
    }
    r
}

fn parse_poly(s: &str, nvars: usize, names: &[String]) -> Result<LaurentPoly> {
    let err = |m: &str| Error::Parse(format!("{m} in polynomial `{s}`"));
    let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(err("empty input"));
    }
    let mut p = LaurentPoly::zero(nvars);
    let mut i = 0;
    while i < src.len() {
        let mut sign = BigInt::one();
        if i > 0 || src[i] == '+' || src[i] == '-' {
            match src[i] {
                '+' => {}
                '-' => sign = -sign,
                _ => return Err(err("expected `+` or `-`")),
            }
            i += 1;
        }
        let mut coeff = BigInt::one();
        let mut mono = vec![0i64; nvars];
        loop {
            if i >= src.len() {
                return Err(err("dangling operator"));
            }
            if src[i].is_ascii_digit() {
                let st = i;
                while i < src.len() && src[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[st..i].iter().collect::<String>().parse().unwrap();
                coeff *= n;
            } else if src[i].is_alphabetic() {
                let st = i;
                while i < src.len() && src[i].is_alphanumeric() {
                    i += 1;
                }
                let name: String = src[st..i].iter().collect();
                let idx = names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| err(&format!("unknown variable `{name}`")))?;
                let mut e = 1i64;
                if i < src.len() && src[i] == '^' {
                    i += 1;
                    let st = i;
                    if i < src.len() && src[i] == '-' {
                        i += 1;
                    }
                    while i < src.len() && src[i].is_ascii_digit() {
                        i += 1;
                    }
                    e = src[st..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| err("bad exponent"))?;
                }
                mono[idx] += e;
            } else {
                return Err(err(&format!("unexpected `{}`", src[i])));
            }
            if i < src.len() && src[i] == '*' {
                i += 1;
                continue;
            }
            break;
        }
        p.add_term(Monomial(mono), sign * coeff);
    }
    Ok(p)
}
