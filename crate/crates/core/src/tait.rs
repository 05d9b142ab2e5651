//! Tait graphs of shaded diagrams and their Laplacians.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::coloring::{coloring_system, corner_sign, shaded_parity};
use crate::diagram::{Class, Shading, SurfaceDiagram};
use crate::error::{Error, Result};
use crate::laurent::{var_names, LaurentPoly, Monomial};
use crate::matrix::{IntMatrix, LaurentMatrix};
use crate::smith::{smith_normal_form, SmithNormalForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaitEdge {
    /// Crossing the edge passes through.
    pub crossing: usize,
    pub from: usize,
    pub to: usize,
    pub weight: i8,
    /// Translation from the lift of `from` to the lift of `to`.
    pub label: Class,
}

impl TaitEdge {
    pub fn reversed(&self) -> TaitEdge {
        TaitEdge {
            crossing: self.crossing,
            from: self.to,
            to: self.from,
            weight: self.weight,
            label: self.label.iter().map(|x| -x).collect(),
        }
    }
}

/// Vertex `i` is the shaded face `faces[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaitGraph {
    pub nvars: usize,
    pub faces: Vec<usize>,
    pub edges: Vec<TaitEdge>,
}

/// One vertex per shaded face and one edge per crossing, joining the faces
/// of the two shaded corners. The weight is `+1` when the shaded corners
/// are the ones counterclockwise after each over slot.
pub fn tait_graph(d: &SurfaceDiagram, sh: &Shading) -> Result<TaitGraph> {
    let parity = shaded_parity(d, sh)?;
    let faces = sh.shaded_faces();
    let vertex = |f: usize| faces.iter().position(|&g| g == f).expect("shaded face");
    let edges = (0..d.crossings().len())
        .map(|c| {
            let k = parity[c];
            let o = d.crossing(c).over;
            let (a, b) = (d.corner_class(c, k), d.corner_class(c, k + 2));
            TaitEdge {
                crossing: c,
                from: vertex(d.corner_face(c, k)),
                to: vertex(d.corner_face(c, k + 2)),
                weight: if k == (o + 1) % 2 { 1 } else { -1 },
                label: b.iter().zip(a).map(|(x, y)| x - y).collect(),
            }
        })
        .collect();
    Ok(TaitGraph { nvars: d.nvars(), faces, edges })
}

/// Tait graph of the complementary shading.
pub fn dual_tait(d: &SurfaceDiagram, sh: &Shading) -> Result<TaitGraph> {
    tait_graph(d, &sh.complement())
}

impl fmt::Display for TaitGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = var_names(self.nvars);
        for e in &self.edges {
            let h = LaurentPoly::monomial(&e.label).to_string_with(&names);
            writeln!(f, "v{} -- v{}  w={:+}  h={h}", e.from + 1, e.to + 1, e.weight)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianData {
    pub int: IntMatrix,
    pub laurent: LaurentMatrix,
}

/// `delta - A`, each edge counted at both ends and weighted by its
/// label monomial in the adjacency part.
pub fn laplacian(g: &TaitGraph) -> LaplacianData {
    let n = g.faces.len();
    let mut lm = LaurentMatrix::zeros(g.nvars, n, n);
    for e in &g.edges {
        let w = BigInt::from(e.weight);
        let h = Monomial(e.label.clone());
        let one = LaurentPoly::one(g.nvars).scale(&w);
        lm[(e.from, e.from)] = &lm[(e.from, e.from)] + &one;
        lm[(e.to, e.to)] = &lm[(e.to, e.to)] + &one;
        lm[(e.from, e.to)] = &lm[(e.from, e.to)] - &LaurentPoly::term(h.clone(), w.clone());
        lm[(e.to, e.from)] = &lm[(e.to, e.from)] - &LaurentPoly::term(h.inv(), w);
    }
    LaplacianData { int: lm.eval_ones(), laurent: lm }
}

pub fn laplacian_group(ld: &LaplacianData) -> SmithNormalForm {
    smith_normal_form(&ld.int)
}

pub fn laplacian_polynomial(ld: &LaplacianData) -> Result<LaurentPoly> {
    Ok(ld.laurent.determinant()?.unit_normalize())
}

/// Exponent substitution `v^e -> v^(m e)`.
pub fn substitute_basis_poly(p: &LaurentPoly, m: &IntMatrix) -> Result<LaurentPoly> {
    let images = basis_images(p.nvars(), m)?;
    Ok(p.substitute_units(&images, p.nvars()))
}

pub fn substitute_basis(ld: &LaplacianData, m: &IntMatrix) -> Result<LaplacianData> {
    let images = basis_images(ld.laurent.nvars(), m)?;
    let laurent = ld.laurent.map(|p| p.substitute_units(&images, ld.laurent.nvars()));
    Ok(LaplacianData { int: ld.int.clone(), laurent })
}

fn basis_images(nvars: usize, m: &IntMatrix) -> Result<Vec<LaurentPoly>> {
    if m.rows() != nvars || m.cols() != nvars {
        return Err(Error::VarMismatch(m.rows(), nvars));
    }
    if !m.determinant()?.abs().is_one() {
        return Err(Error::NotUnimodular);
    }
    Ok((0..nvars)
        .map(|j| {
            let col: Vec<i64> = (0..nvars)
                .map(|i| i64::try_from(&m[(i, j)]).expect("basis entries fit in i64"))
                .collect();
            LaurentPoly::monomial(&col)
        })
        .collect())
}

/// For every shaded face, the sum over its corners `k` of the Laurent
/// coloring relation at `k`'s crossing, scaled by `sign(k) * w * x^-c(k)`.
/// Rows by Tait vertices, columns by all faces.
pub fn vertex_elimination(d: &SurfaceDiagram, sh: &Shading) -> Result<LaurentMatrix> {
    let cs = coloring_system(d, sh)?;
    let g = tait_graph(d, sh)?;
    let parity = shaded_parity(d, sh)?;
    let nf = d.faces().len();
    let mut out = LaurentMatrix::zeros(d.nvars(), g.faces.len(), nf);
    for (v, &f) in g.faces.iter().enumerate() {
        for k in &d.faces()[f].corners {
            let (c, s) = (k.crossing, k.slot);
            let coef = corner_sign(d, c, s, parity[c]) * g.edges[c].weight as i64;
            let scale = LaurentPoly::term(Monomial(d.corner_class(c, s).clone()).inv(), coef);
            for col in 0..nf {
                out[(v, col)] = &out[(v, col)] + &(&scale * &cs.laurent[(c, col)]);
            }
        }
    }
    Ok(out)
}

/// Whether every unshaded column vanishes and the shaded columns equal
/// the Laplacian.
pub fn elimination_matches(d: &SurfaceDiagram, sh: &Shading) -> Result<bool> {
    let elim = vertex_elimination(d, sh)?;
    let l = laplacian(&tait_graph(d, sh)?).laurent;
    let faces = sh.shaded_faces();
    for v in 0..elim.rows() {
        for col in 0..elim.cols() {
            let want = match faces.iter().position(|&f| f == col) {
                Some(u) => l[(v, u)].clone(),
                None => LaurentPoly::zero(d.nvars()),
            };
            if elim[(v, col)] != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::laurent::LaurentPoly as P;
    use num_traits::Zero;

    fn shaded(d: &SurfaceDiagram) -> Shading {
        d.checkerboard_shade().unwrap()
    }

    #[test]
    fn theta_graph_matches_the_printed_incidences() {
        let d = fixtures::theta1();
        let sh = shaded(&d);
        let g = tait_graph(&d, &sh).unwrap();
        assert_eq!(g.faces.len(), 2);
        let mut seen: Vec<(i8, Class)> = g
            .edges
            .iter()
            .map(|e| if e.from == 0 { e.clone() } else { e.reversed() })
            .inspect(|e| assert_eq!((e.from, e.to), (0, 1)))
            .map(|e| (e.weight, e.label))
            .collect();
        seen.sort();
        assert_eq!(seen, vec![(-1, vec![0, 0]), (1, vec![-1, 0]), (1, vec![0, -1])]);
        let l = laplacian(&g).laurent;
        let printed = LaurentMatrix::parse_rows(&[&["1", "1 - x^-1 - y^-1"], &["1 - x - y", "1"]], 2).unwrap();
        assert_eq!(l, printed);
    }

    #[test]
    fn dual_weights_are_opposite() {
        for d in fixtures::all().into_iter().filter(|d| d.checkerboard_shade().is_ok()) {
            let sh = shaded(&d);
            let g = tait_graph(&d, &sh).unwrap();
            let h = dual_tait(&d, &sh).unwrap();
            for (a, b) in g.edges.iter().zip(&h.edges) {
                assert_eq!(a.weight * b.weight, -1);
            }
            assert_eq!(dual_tait(&d, &sh.complement()).unwrap(), g);
        }
    }

    #[test]
    fn laplacian_invariants() {
        for d in fixtures::all().into_iter().filter(|d| d.checkerboard_shade().is_ok()) {
            let sh = shaded(&d);
            for g in [tait_graph(&d, &sh).unwrap(), dual_tait(&d, &sh).unwrap()] {
                let ld = laplacian(&g);
                assert_eq!(ld.laurent.bar().transpose(), ld.laurent, "{}", d.name());
                for r in ld.int.to_rows() {
                    assert!(r.iter().sum::<BigInt>().is_zero());
                }
            }
        }
    }

    #[test]
    fn trefoil_tait_graphs() {
        let d = fixtures::trefoil();
        let sh = shaded(&d);
        let (g, h) = (tait_graph(&d, &sh).unwrap(), dual_tait(&d, &sh).unwrap());
        let (tri, par) = if g.faces.len() == 3 { (g, h) } else { (h, g) };
        assert_eq!((tri.faces.len(), par.faces.len()), (3, 2));
        let w = tri.edges[0].weight;
        assert!(tri.edges.iter().all(|e| e.weight == w && e.from != e.to));
        assert!(par.edges.iter().all(|e| e.weight == -w));
        let m = laplacian(&tri).int;
        let mut expect = IntMatrix::from_i64(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]], 3);
        if w < 0 {
            expect = expect.map(|x| -x);
        }
        assert_eq!(m, expect);
        for t in [&tri, &par] {
            assert_eq!(laplacian_group(&laplacian(t)).cokernel().to_string(), "Z + Z/3");
        }
    }

    #[test]
    fn single_loop() {
        let g = TaitGraph {
            nvars: 2,
            faces: vec![0],
            edges: vec![TaitEdge { crossing: 0, from: 0, to: 0, weight: -1, label: vec![1, 0] }],
        };
        let l = laplacian(&g);
        assert_eq!(l.laurent[(0, 0)], P::parse("-2 + x + x^-1", 2).unwrap());
        assert!(l.int[(0, 0)].is_zero());
    }

    #[test]
    fn substitution() {
        let d = fixtures::theta1();
        let ld = laplacian(&tait_graph(&d, &shaded(&d)).unwrap());
        let p = laplacian_polynomial(&ld).unwrap();
        let id = IntMatrix::identity(2);
        assert_eq!(substitute_basis_poly(&p, &id).unwrap(), p);
        let swap = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]], 2);
        let swapped = substitute_basis_poly(&p, &swap).unwrap();
        let by_hand = p.substitute_units(&[P::parse("y", 2).unwrap(), P::parse("x", 2).unwrap()], 2);
        assert_eq!(swapped, by_hand);
        let m = IntMatrix::from_i64(&[vec![2, 1], vec![1, 1]], 2);
        let minv = IntMatrix::from_i64(&[vec![1, -1], vec![-1, 2]], 2);
        let there = substitute_basis(&ld, &m).unwrap();
        assert_eq!(substitute_basis(&there, &minv).unwrap(), ld);
        let bad = IntMatrix::from_i64(&[vec![2, 0], vec![0, 1]], 2);
        assert_eq!(substitute_basis_poly(&p, &bad), Err(Error::NotUnimodular));
    }

    #[test]
    fn vertex_elimination_gives_laplacian_rows() {
        for d in fixtures::all().into_iter().filter(|d| d.checkerboard_shade().is_ok()) {
            let sh = shaded(&d);
            assert!(elimination_matches(&d, &sh).unwrap(), "{}", d.name());
            assert!(elimination_matches(&d, &sh.complement()).unwrap(), "{} dual", d.name());
        }
    }

    #[test]
    fn theta_polynomials() {
        let d = fixtures::theta1();
        let sh = shaded(&d);
        let pg = laplacian_polynomial(&laplacian(&tait_graph(&d, &sh).unwrap())).unwrap();
        let pd = laplacian_polynomial(&laplacian(&dual_tait(&d, &sh).unwrap())).unwrap();
        let p0 = crate::coloring::module_order(&coloring_system(&d, &sh).unwrap()).unwrap();
        assert_eq!(pg, pd);
        assert_eq!(pg, p0);
    }
}
