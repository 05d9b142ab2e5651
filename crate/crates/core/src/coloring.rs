//! Dehn colorings: one relation per crossing among the four surrounding
//! regions, over the integers and over the Laurent ring of the surface.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::diagram::{generator_name, Shading, SurfaceDiagram};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial};
use crate::matrix::{IntMatrix, LaurentMatrix, Matrix};
use crate::smith::{smith_normal_form, SmithNormalForm};

/// Crossing relations, rows by crossings and columns by faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSystem {
    pub generators: Vec<String>,
    pub int: IntMatrix,
    pub laurent: LaurentMatrix,
}

/// Checks that `sh` shades exactly one of each pair of adjacent corners at
/// every crossing, and returns the shaded slot parity per crossing.
pub(crate) fn shaded_parity(d: &SurfaceDiagram, sh: &Shading) -> Result<Vec<usize>> {
    if sh.shaded.len() != d.faces().len() {
        return Err(Error::NotShadable);
    }
    (0..d.crossings().len())
        .map(|c| {
            let s: Vec<bool> = (0..4).map(|k| sh.is_shaded(d.corner_face(c, k))).collect();
            if s[0] == s[1] || s[0] != s[2] || s[1] != s[3] {
                return Err(Error::NotShadable);
            }
            Ok(if s[0] { 0 } else { 1 })
        })
        .collect()
}

/// Sign of corner `k` at crossing `c`: the corners on the side of the over
/// strand containing corner `over` are positive, the rest negative, and the
/// row is flipped so the first shaded corner is positive.
pub(crate) fn corner_sign(d: &SurfaceDiagram, c: usize, k: usize, parity: usize) -> i64 {
    let o = d.crossing(c).over;
    let side = |k: usize| if (k + 4 - o) % 4 < 2 { 1 } else { -1 };
    side(k) * side(parity)
}

pub fn coloring_system(d: &SurfaceDiagram, sh: &Shading) -> Result<ColoringSystem> {
    let parity = shaded_parity(d, sh)?;
    let (nf, nv) = (d.faces().len(), d.nvars());
    let mut int = vec![vec![BigInt::zero(); nf]; d.crossings().len()];
    let mut laurent = LaurentMatrix::zeros(nv, d.crossings().len(), nf);
    for c in 0..d.crossings().len() {
        for k in 0..4 {
            let f = d.corner_face(c, k);
            let s = corner_sign(d, c, k, parity[c]);
            let mono = Monomial(d.corner_class(c, k).clone());
            int[c][f] += BigInt::from(s);
            laurent[(c, f)] = &laurent[(c, f)] + &LaurentPoly::term(mono, s);
        }
    }
    let generators = (0..nf).map(|i| generator_name(i, true)).collect();
    Ok(ColoringSystem { generators, int: Matrix::from_rows(int, nf), laurent })
}

/// System for the diagram's own checkerboard shading.
pub fn coloring_system_default(d: &SurfaceDiagram) -> Result<ColoringSystem> {
    coloring_system(d, &d.checkerboard_shade()?)
}

pub fn coloring_group(cs: &ColoringSystem) -> SmithNormalForm {
    smith_normal_form(&cs.int)
}

/// Unit-normalized order of the Laurent cokernel: the determinant for a
/// square system, otherwise the gcd of maximal minors (zero when there
/// are more generators than relations).
pub fn module_order(cs: &ColoringSystem) -> Result<LaurentPoly> {
    let m = &cs.laurent;
    if m.rows() == m.cols() {
        return Ok(m.determinant()?.unit_normalize());
    }
    if m.cols() > m.rows() {
        return Ok(LaurentPoly::zero(m.nvars()));
    }
    Ok(m.minors_gcd(m.cols())?.unit_normalize())
}

/// Exhaustive count of region colorings mod `p` satisfying every relation.
pub fn brute_force_colorings(cs: &ColoringSystem, p: u64) -> Result<u64> {
    let n = cs.int.cols();
    let total = (p as f64).powi(n as i32);
    if !(n <= 12 || total <= 1e7) {
        return Err(Error::SizeGuard(format!("{p}^{n} assignments")));
    }
    if p < 2 {
        return Err(Error::SizeGuard(format!("modulus {p} is not a prime")));
    }
    let pb = BigInt::from(p);
    let rows: Vec<Vec<i64>> = cs
        .int
        .to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let m = ((x % &pb) + &pb) % &pb;
                    i64::try_from(m).expect("residue fits")
                })
                .collect()
        })
        .collect();
    let p = p as i64;
    let mut colors = vec![0i64; n];
    let mut count = 0u64;
    loop {
        if rows.iter().all(|r| r.iter().zip(&colors).map(|(a, b)| a * b).sum::<i64>() % p == 0) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            colors[i] += 1;
            if colors[i] < p {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

impl ColoringSystem {
    /// Integer rows as `A + C - B - D` style text.
    pub fn int_relations(&self) -> Vec<String> {
        self.laurent_rows_with(&self.int.map(|x| LaurentPoly::constant(0, x.clone())), &[])
    }

    pub fn laurent_relations(&self, var_names: &[String]) -> Vec<String> {
        self.laurent_rows_with(self.laurent.entries(), var_names)
    }

    fn laurent_rows_with(&self, m: &Matrix<LaurentPoly>, names: &[String]) -> Vec<String> {
        (0..m.rows())
            .map(|r| {
                let mut s = String::new();
                for (g, e) in m.row(r).iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    let text = e.to_string_with(names);
                    let (neg, body) = match text.strip_prefix('-') {
                        Some(b) if e.len() == 1 => (true, b.to_string()),
                        _ => (false, if e.len() > 1 { format!("({text})") } else { text }),
                    };
                    let coef = if body == "1" { String::new() } else { format!("{body}*") };
                    if s.is_empty() {
                        s = format!("{}{coef}{}", if neg { "-" } else { "" }, self.generators[g]);
                    } else {
                        s += &format!(" {} {coef}{}", if neg { "-" } else { "+" }, self.generators[g]);
                    }
                }
                if s.is_empty() {
                    "0".into()
                } else {
                    s
                }
            })
            .collect()
    }
}
