//! Free differential calculus over the integral group ring of a free group.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{Letter, Presentation, Word};
use crate::laurent::LaurentPoly;
use crate::matrix::{LaurentMatrix, Matrix};

/// Finite integer combination of freely reduced words.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct GroupRingElement(BTreeMap<Word, BigInt>);

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        let mut m = BTreeMap::new();
        m.insert(w.free_reduce(), BigInt::one());
        GroupRingElement(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.0.iter()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.0.get(&w.free_reduce()).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, w: Word, c: BigInt) {
        let e = self.0.entry(w).or_default();
        *e += c;
        if e.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement(self.0.iter().map(|(w, c)| (w.clone(), -c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    /// Left multiplication by a word.
    pub fn left_mul(&self, w: &Word) -> Self {
        let w = w.free_reduce();
        let mut out = Self::zero();
        for (a, c) in &self.0 {
            out.add_term(w.mul(a), c.clone());
        }
        out
    }

    /// Image under a map sending generators to units of a Laurent ring.
    pub fn map_units(&self, s: &Specialization) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(s.nvars);
        for (w, c) in &self.0 {
            out = out + s.word_image(w)?.scale(c);
        }
        Ok(out)
    }

    /// Parse text such as `1 - c + 2*a*b^-1`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Self::zero();
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() || chars == ['0'] {
            return Ok(out);
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, &ch) in chars.iter().enumerate() {
            let sign_here = (ch == '+' || ch == '-') && (i == 0 || chars[i - 1] != '^');
            if sign_here {
                if !cur.is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                } else if i != 0 {
                    return Err(Error::Parse(format!("dangling sign in `{s}`")));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        }
        terms.push((neg, cur));
        for (neg, t) in terms {
            let mut parts = t.split('*').peekable();
            let mut coeff = BigInt::one();
            if let Some(first) = parts.peek() {
                if let Ok(c) = first.parse::<BigInt>() {
                    coeff = c;
                    parts.next();
                }
            }
            let rest: Vec<&str> = parts.collect();
            let word = Word::parse(&rest.join(" "))?;
            out.add_term(word.free_reduce(), if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.0.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            match (w.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", w.to_string_sep("*"))?,
                (false, false) => write!(f, "{mag}*{}", w.to_string_sep("*"))?,
            }
        }
        Ok(())
    }
}

/// Free derivative: `d(u v) = du + u dv`, `d g = 1`, `d g^-1 = -g^-1`.
pub fn fox_derivative(w: &Word, g: &str) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for (i, l) in w.letters().iter().enumerate() {
        if l.gen != g {
            continue;
        }
        if l.exp > 0 {
            out.add_term(w.prefix(i).free_reduce(), BigInt::one());
        } else {
            out.add_term(w.prefix(i + 1).free_reduce(), -BigInt::one());
        }
    }
    out
}

/// Relations by generators; a relation `r = s` contributes `dr - ds`.
pub type Jacobian = Matrix<GroupRingElement>;

pub fn jacobian(p: &Presentation) -> Jacobian {
    let rows = p
        .relations
        .iter()
        .map(|r| {
            p.generators
                .iter()
                .map(|g| fox_derivative(&r.lhs, g).sub(&fox_derivative(&r.rhs, g)))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows, p.generators.len())
}

/// Generators to units (signed monomials) of a Laurent ring.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub nvars: usize,
    pub images: BTreeMap<String, LaurentPoly>,
}

impl Specialization {
    pub fn new(nvars: usize, images: BTreeMap<String, LaurentPoly>) -> Result<Self> {
        for (g, p) in &images {
            if p.nvars() != nvars {
                return Err(Error::VarMismatch(p.nvars(), nvars));
            }
            if !p.is_unit() {
                return Err(Error::Parse(format!("image of `{g}` is not a unit")));
            }
        }
        Ok(Specialization { nvars, images })
    }

    /// Every generator to the same unit.
    pub fn uniform(gens: &[String], image: LaurentPoly) -> Self {
        let nvars = image.nvars();
        Specialization { nvars, images: gens.iter().map(|g| (g.clone(), image.clone())).collect() }
    }

    /// All generators to `t` in `Z[t, t^-1]`.
    pub fn to_t(gens: &[String]) -> Self {
        Self::uniform(gens, LaurentPoly::var(1, 0))
    }

    /// All generators to `-1` in `Z`.
    pub fn to_minus_one(gens: &[String]) -> Self {
        Self::uniform(gens, LaurentPoly::constant(0, -1))
    }

    /// All generators to `1`; specializing a Jacobian this way gives the
    /// exponent-sum matrix.
    pub fn to_one(gens: &[String]) -> Self {
        Self::uniform(gens, LaurentPoly::one(0))
    }

    pub fn word_image(&self, w: &Word) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::one(self.nvars);
        for Letter { gen, exp } in w.letters() {
            let img = self.images.get(gen).ok_or_else(|| Error::MissingImage(gen.clone()))?;
            out = out * img.unit_pow(*exp as i64);
        }
        Ok(out)
    }
}

pub fn specialize(j: &Jacobian, s: &Specialization) -> Result<LaurentMatrix> {
    let mut rows = Vec::with_capacity(j.rows());
    for i in 0..j.rows() {
        rows.push(j.row(i).iter().map(|e| e.map_units(s)).collect::<Result<Vec<_>>>()?);
    }
    Ok(LaurentMatrix::new(s.nvars, Matrix::from_rows(rows, j.cols())))
}

pub fn jacobian_to_string(j: &Jacobian) -> String {
    let cells = j.map(|e| e.to_string());
    let widths: Vec<usize> = (0..cells.cols())
        .map(|c| (0..cells.rows()).map(|r| cells[(r, c)].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in 0..cells.rows() {
        let row: Vec<String> =
            (0..cells.cols()).map(|c| format!("{:>w$}", cells[(r, c)], w = widths[c])).collect();
        out += &format!("[{}]\n", row.join("  "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::wirtinger;
    use proptest::prelude::*;

    fn gre(s: &str) -> GroupRingElement {
        GroupRingElement::parse(s).unwrap()
    }

    #[test]
    fn derivative_rules() {
        let w = |s: &str| Word::parse(s).unwrap();
        assert_eq!(fox_derivative(&w("a"), "a"), gre("1"));
        assert_eq!(fox_derivative(&w("a^-1"), "a"), gre("-a^-1"));
        assert_eq!(fox_derivative(&w("a b"), "b"), gre("a"));
        assert_eq!(fox_derivative(&w("a b"), "c"), gre("0"));
    }

    #[test]
    fn group_ring_text() {
        for s in ["1 - c", "a", "-1", "-3 + 2*a*b^-1", "0"] {
            assert_eq!(gre(s).to_string(), s);
        }
        assert!(GroupRingElement::parse("1 -").is_err());
    }

    #[test]
    fn trefoil_jacobian() {
        let p = wirtinger(&fixtures::trefoil());
        let j = jacobian(&p);
        let expected = [["1 - c", "a", "-1"], ["-1", "1 - a", "b"], ["c", "-1", "1 - b"]];
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(j[(r, c)], gre(expected[r][c]), "entry {r},{c}");
            }
        }
        let jt = specialize(&j, &Specialization::to_t(&p.generators)).unwrap();
        let printed = LaurentMatrix::parse_rows(
            &[&["1 - t", "t", "-1"], &["-1", "1 - t", "t"], &["t", "-1", "1 - t"]],
            1,
        )
        .unwrap();
        assert_eq!(jt, printed);
        let jn = specialize(&j, &Specialization::to_minus_one(&p.generators)).unwrap();
        let at_minus_one = jt.map(|e| e.substitute_units(&[LaurentPoly::constant(0, -1)], 0));
        assert_eq!(jn, at_minus_one);
    }

    #[test]
    fn degenerate_presentations() {
        let j = jacobian(&Presentation::parse("<a | >").unwrap());
        assert_eq!((j.rows(), j.cols()), (0, 1));
        let j = jacobian(&Presentation::parse("<a | a = a>").unwrap());
        assert!(j[(0, 0)].is_zero());
    }

    #[test]
    fn missing_image_is_an_error() {
        let p = Presentation::parse("<a, b | b a>").unwrap();
        let s = Specialization::to_t(&["a".to_string()]);
        assert_eq!(specialize(&jacobian(&p), &s), Err(Error::MissingImage("b".into())));
    }

    #[test]
    fn trivial_specialization_is_the_exponent_matrix() {
        for d in fixtures::all() {
            let p = wirtinger(&d);
            let j = specialize(&jacobian(&p), &Specialization::to_one(&p.generators)).unwrap();
            assert_eq!(j.to_int().unwrap(), p.exponent_matrix());
        }
    }

    fn word_strategy(max_len: usize, gens: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, prop::bool::ANY), 0..=max_len).prop_map(|v| {
            Word(
                v.into_iter()
                    .map(|(g, inv)| Letter::new(((b'a' + g as u8) as char).to_string(), if inv { -1 } else { 1 }))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn product_rule(u in word_strategy(6, 3), v in word_strategy(6, 3)) {
            let uv = u.concat(&v);
            for g in ["a", "b", "c"] {
                let lhs = fox_derivative(&uv, g);
                let rhs = fox_derivative(&u, g).add(&fox_derivative(&v, g).left_mul(&u));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn specialization_commutes_with_derivatives(w in word_strategy(8, 3)) {
            let gens: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
            let images = BTreeMap::from([
                ("a".to_string(), LaurentPoly::parse("x", 2).unwrap()),
                ("b".to_string(), LaurentPoly::parse("-y^-1", 2).unwrap()),
                ("c".to_string(), LaurentPoly::parse("x*y", 2).unwrap()),
            ]);
            let s = Specialization::new(2, images).unwrap();
            // phi(w) - 1 = sum_g phi(dw/dg) (phi(g) - 1)
            let mut sum = LaurentPoly::zero(2);
            for g in &gens {
                let d = fox_derivative(&w, g).map_units(&s).unwrap();
                sum = sum + d * (s.images[g].clone() - LaurentPoly::one(2));
            }
            prop_assert_eq!(sum, s.word_image(&w).unwrap() - LaurentPoly::one(2));
        }
    }
}
