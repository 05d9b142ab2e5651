//! Free-group words and finite presentations.

mod diagram;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::smith::{smith_normal_form, SmithNormalForm};

pub use diagram::{
    arcs, dehn, derivative_map, derivative_map_edges, edge_image, integrate_walk,
    integrate_walk_edges, quotient_presentation, surface_relators, surface_relators_edges,
    wirtinger, wirtinger_edge_relations, EdgeWord,
};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: String,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: impl Into<String>, exp: i8) -> Self {
        Letter { gen: gen.into(), exp }
    }

    pub fn inverse(&self) -> Letter {
        Letter { gen: self.gen.clone(), exp: -self.exp }
    }
}

/// A word in generators and their inverses; not reduced unless stated.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(name: impl Into<String>) -> Self {
        Word(vec![Letter::new(name, 1)])
    }

    pub fn letter(name: impl Into<String>, exp: i8) -> Self {
        Word(vec![Letter::new(name, exp)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    /// Concatenation followed by free reduction at the seam only; the
    /// result is reduced when both inputs are.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for l in &other.0 {
            push_reduced(&mut out, l.clone());
        }
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn free_reduce(&self) -> Word {
        let mut out = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            push_reduced(&mut out, l.clone());
        }
        Word(out)
    }

    /// Free reduction followed by cancelling matching first and last letters.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.free_reduce().0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i].gen == w[j - 1].gen && w[i].exp == -w[j - 1].exp {
            i += 1;
            j -= 1;
        }
        Word(w.drain(i..j).collect())
    }

    pub fn exponent_sum(&self, gen: &str) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.exp as i64).sum()
    }

    pub fn occurrences(&self, gen: &str) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    /// Replace each generator in `images` by its image word.
    pub fn substitute(&self, images: &BTreeMap<String, Word>) -> Word {
        let mut out = Vec::new();
        for l in &self.0 {
            match images.get(&l.gen) {
                Some(w) => {
                    let w = if l.exp > 0 { w.clone() } else { w.inverse() };
                    for x in w.0 {
                        push_reduced(&mut out, x);
                    }
                }
                None => push_reduced(&mut out, l.clone()),
            }
        }
        Word(out)
    }

    /// Parse `a b^-1 c`; `1` or an empty string is the identity.
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        s.split(|c: char| c.is_whitespace() || c == '*')
            .filter(|t| !t.is_empty())
            .map(parse_letter)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    /// Text with letters joined by `sep`; the identity prints as `1`.
    pub fn to_string_sep(&self, sep: &str) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| if l.exp == 1 { l.gen.clone() } else { format!("{}^{}", l.gen, l.exp) })
            .collect();
        parts.join(sep)
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if let Some(last) = out.last() {
        if last.gen == l.gen && last.exp == -l.exp {
            out.pop();
            return;
        }
    }
    out.push(l);
}

fn parse_letter(t: &str) -> Result<Letter> {
    let (name, exp) = match t.split_once('^') {
        Some((n, e)) => {
            let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{t}`")))?;
            (n, e)
        }
        None => (t, 1),
    };
    let valid = name.chars().next().is_some_and(|c| c.is_alphabetic())
        && name.chars().all(|c| c.is_alphanumeric() || c == '_');
    if !valid || (exp != 1 && exp != -1) {
        return Err(Error::Parse(format!("bad letter `{t}`")));
    }
    Ok(Letter::new(name, exp as i8))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_sep(" "))
    }
}

/// Relation `lhs = rhs`; a relator `r` is stored as `r = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Relation { lhs, rhs }
    }

    pub fn relator(r: Word) -> Self {
        Relation { lhs: r, rhs: Word::empty() }
    }

    /// `lhs rhs^-1`, freely reduced.
    pub fn as_relator(&self) -> Word {
        self.lhs.concat(&self.rhs.inverse()).free_reduce()
    }

    /// The same relation with both sides swapped.
    pub fn swapped(&self) -> Relation {
        Relation { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rhs.is_empty() {
            write!(f, "{}", self.lhs)
        } else {
            write!(f, "{} = {}", self.lhs, self.rhs)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relations: Vec<Relation>) -> Result<Self> {
        let p = Presentation { generators, relations };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        for r in &self.relations {
            for l in r.lhs.0.iter().chain(&r.rhs.0) {
                if !self.generators.contains(&l.gen) {
                    return Err(Error::UnknownGenerator(l.gen.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn relators(&self) -> Vec<Word> {
        self.relations.iter().map(Relation::as_relator).collect()
    }

    pub fn with_relators(&self, extra: Vec<Word>) -> Result<Presentation> {
        let mut relations = self.relations.clone();
        relations.extend(extra.into_iter().map(Relation::relator));
        Presentation::new(self.generators.clone(), relations)
    }

    /// Exponent sums, relators by generators.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators()
            .iter()
            .map(|r| self.generators.iter().map(|g| r.exponent_sum(g)).collect())
            .collect();
        IntMatrix::from_i64(&rows, self.generators.len())
    }

    pub fn abelianization(&self) -> SmithNormalForm {
        smith_normal_form(&self.exponent_matrix())
    }

    /// Rename generators; names not in the map are kept.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Presentation {
        let ren = |w: &Word| {
            Word(
                w.0.iter()
                    .map(|l| Letter::new(map.get(&l.gen).cloned().unwrap_or(l.gen.clone()), l.exp))
                    .collect(),
            )
        };
        Presentation {
            generators: self
                .generators
                .iter()
                .map(|g| map.get(g).cloned().unwrap_or(g.clone()))
                .collect(),
            relations: self.relations.iter().map(|r| Relation::new(ren(&r.lhs), ren(&r.rhs))).collect(),
        }
    }

    /// Heuristic simplification: reduce relators cyclically, drop empty and
    /// repeated ones, and eliminate a generator occurring exactly once in
    /// some relator, preferring the shortest relator. Relations come back
    /// as relators.
    pub fn tietze_simplify(&self) -> Presentation {
        let mut gens = self.generators.clone();
        let mut rels: Vec<Word> = self.relators();
        loop {
            let mut seen = std::collections::BTreeSet::new();
            rels = rels
                .iter()
                .map(Word::cyclic_reduce)
                .filter(|r| !r.is_empty() && seen.insert(r.clone()))
                .collect();
            let mut order: Vec<usize> = (0..rels.len()).collect();
            order.sort_by_key(|&i| (rels[i].len(), i));
            let found = order.iter().find_map(|&i| {
                let r = &rels[i];
                (0..r.len()).find(|&p| r.occurrences(&r.0[p].gen) == 1).map(|p| (i, p))
            });
            let Some((i, p)) = found else { break };
            let r = rels.remove(i);
            let letter = r.0[p].clone();
            let u = Word(r.0[..p].to_vec());
            let v = Word(r.0[p + 1..].to_vec());
            // u g^e v = 1  =>  g = (v u)^(-e)
            let vu = v.concat(&u).free_reduce();
            let image = if letter.exp > 0 { vu.inverse() } else { vu };
            let map = BTreeMap::from([(letter.gen.clone(), image)]);
            rels = rels.iter().map(|w| w.substitute(&map)).collect();
            gens.retain(|g| *g != letter.gen);
        }
        Presentation { generators: gens, relations: rels.into_iter().map(Relation::relator).collect() }
    }

    /// Parse `<a, b | a b = b a, a^2>`-style text; `a^2` is not allowed,
    /// exponents are `1` or `-1`.
    pub fn parse(s: &str) -> Result<Presentation> {
        let s = s.trim();
        let inner = s
            .strip_prefix('<')
            .and_then(|t| t.strip_suffix('>'))
            .ok_or_else(|| Error::Parse("presentation must be enclosed in < >".into()))?;
        let (gens, rels) = inner.split_once('|').unwrap_or((inner, ""));
        let generators: Vec<String> =
            gens.split(',').map(str::trim).filter(|g| !g.is_empty()).map(String::from).collect();
        let mut relations = Vec::new();
        for item in rels.split(',').map(str::trim).filter(|r| !r.is_empty()) {
            let rel = match item.split_once('=') {
                Some((l, r)) => Relation::new(Word::parse(l)?, Word::parse(r)?),
                None => Relation::relator(Word::parse(item)?),
            };
            relations.push(rel);
        }
        Presentation::new(generators, relations)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
        if rels.is_empty() {
            write!(f, "<{} | >", self.generators.join(", "))
        } else {
            write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
        }
    }
}

/// Whether two presentations agree after renaming generators, reordering
/// relations and swapping the sides of individual relations.
/// Tries every bijection, so only for small generator counts.
pub fn same_up_to_renaming(p: &Presentation, q: &Presentation) -> bool {
    if p.generators.len() != q.generators.len() || p.relations.len() != q.relations.len() {
        return false;
    }
    let n = p.generators.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let map: BTreeMap<String, String> =
            (0..n).map(|i| (p.generators[i].clone(), q.generators[perm[i]].clone())).collect();
        let r = p.rename(&map);
        let mut used = vec![false; q.relations.len()];
        let matched = r.relations.iter().all(|a| {
            let hit = (0..q.relations.len())
                .find(|&j| !used[j] && (q.relations[j] == *a || q.relations[j] == a.swapped()));
            hit.map(|j| used[j] = true).is_some()
        });
        if matched {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
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
