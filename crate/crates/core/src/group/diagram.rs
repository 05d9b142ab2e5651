//! Presentations read off a diagram: Wirtinger (arcs), Dehn (faces), the
//! map between them, and integration along dual walks.

use std::collections::BTreeMap;

use super::{Letter, Presentation, Relation, Word};
use crate::diagram::{generator_name, DualWalk, SurfaceDiagram};
use crate::error::{Error, Result};

/// Word whose letters are edges; each letter stands for the arc (or the
/// flanking faces) of that particular edge.
pub type EdgeWord = Vec<(usize, i8)>;

/// Arc index of every edge and the number of arcs. An arc is a maximal
/// run of edges joined through over slots; arcs are numbered by their
/// smallest edge.
pub fn arcs(d: &SurfaceDiagram) -> (Vec<usize>, usize) {
    let n = d.edges().len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for c in d.crossings() {
        let [a, b] = c.over_slots().map(|s| c.cyclic[s].edge);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut index = BTreeMap::new();
    let mut arc = vec![0; n];
    for e in 0..n {
        let r = find(&mut parent, e);
        let next = index.len();
        arc[e] = *index.entry(r).or_insert(next);
    }
    (arc, index.len())
}

fn arc_names(d: &SurfaceDiagram) -> (Vec<usize>, Vec<String>) {
    let (arc, n) = arcs(d);
    (arc, (0..n).map(|i| generator_name(i, false)).collect())
}

fn face_names(d: &SurfaceDiagram) -> Vec<String> {
    (0..d.faces().len()).map(|i| generator_name(i, true)).collect()
}

/// Per crossing, the two paths around it from the corner right of both
/// strands to the opposite corner. The left side is the path through the
/// outgoing under edge.
pub fn wirtinger_edge_relations(d: &SurfaceDiagram) -> Vec<(EdgeWord, EdgeWord)> {
    d.crossings()
        .iter()
        .map(|c| {
            let (o, u) = (c.over_out(), c.under_out());
            let rr = (0..4)
                .find(|&k| (k + 4 - o) % 4 >= 2 && (k + 4 - u) % 4 >= 2)
                .expect("some corner lies right of both strands");
            // counterclockwise: cross slots rr+1, rr+2 (right to left when outgoing)
            let ccw: EdgeWord = [rr + 1, rr + 2]
                .iter()
                .map(|&s| {
                    let dt = c.cyclic[s % 4];
                    (dt.edge, if dt.outgoing() { 1 } else { -1 })
                })
                .collect();
            // clockwise: cross slots rr, rr-1
            let cw: EdgeWord = [rr, rr + 3]
                .iter()
                .map(|&s| {
                    let dt = c.cyclic[s % 4];
                    (dt.edge, if dt.outgoing() { -1 } else { 1 })
                })
                .collect();
            let ccw_has_uout = [rr + 1, rr + 2].iter().any(|&s| s % 4 == u);
            if ccw_has_uout {
                (ccw, cw)
            } else {
                (cw, ccw)
            }
        })
        .collect()
}

fn arc_word(w: &EdgeWord, arc: &[usize], names: &[String]) -> Word {
    Word(w.iter().map(|&(e, x)| Letter::new(names[arc[e]].clone(), x)).collect())
}

/// Wirtinger presentation: arc generators, one relation per crossing.
pub fn wirtinger(d: &SurfaceDiagram) -> Presentation {
    let (arc, names) = arc_names(d);
    let relations = wirtinger_edge_relations(d)
        .iter()
        .map(|(l, r)| Relation::new(arc_word(l, &arc, &names), arc_word(r, &arc, &names)))
        .collect();
    Presentation { generators: names, relations }
}

/// Dehn presentation: face generators; at each crossing the regions on
/// either side of the two halves of the over strand give
/// `(o+3)^-1 (o) = (o+2)^-1 (o+1)` in corner slots, `o` the smaller over
/// slot. With `with_base`, face 0 is set to the identity.
pub fn dehn(d: &SurfaceDiagram, with_base: bool) -> Presentation {
    let names = face_names(d);
    let g = |ci: usize, s: usize, e: i8| Letter::new(names[d.corner_face(ci, s)].clone(), e);
    let mut relations: Vec<Relation> = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let o = c.over;
            Relation::new(
                Word(vec![g(ci, o + 3, -1), g(ci, o, 1)]),
                Word(vec![g(ci, o + 2, -1), g(ci, o + 1, 1)]),
            )
        })
        .collect();
    if with_base {
        relations.push(Relation::relator(Word::gen(names[0].clone())));
    }
    Presentation { generators: names, relations }
}

/// `R^-1 L` for the faces right and left of an edge.
pub fn edge_image(d: &SurfaceDiagram, edge: usize) -> Word {
    let names = face_names(d);
    Word(vec![
        Letter::new(names[d.right_face(edge)].clone(), -1),
        Letter::new(names[d.left_face(edge)].clone(), 1),
    ])
}

/// The derivative map on an edge word: each letter goes to the faces
/// flanking its own edge.
pub fn derivative_map_edges(d: &SurfaceDiagram, w: &EdgeWord) -> Word {
    let mut out = Word::empty();
    for &(e, x) in w {
        let img = edge_image(d, e);
        out = out.concat(&if x > 0 { img } else { img.inverse() });
    }
    out
}

/// The derivative map on Wirtinger words, using each arc's smallest edge
/// to pick the flanking faces.
pub fn derivative_map(d: &SurfaceDiagram, w: &Word) -> Result<Word> {
    let (arc, names) = arc_names(d);
    let mut rep: Vec<Option<usize>> = vec![None; names.len()];
    for (e, &a) in arc.iter().enumerate() {
        rep[a].get_or_insert(e);
    }
    let mut out = Word::empty();
    for l in &w.0 {
        let a = names
            .iter()
            .position(|n| *n == l.gen)
            .ok_or_else(|| Error::UnknownGenerator(l.gen.clone()))?;
        let img = edge_image(d, rep[a].unwrap());
        out = out.concat(&if l.exp > 0 { img } else { img.inverse() });
    }
    Ok(out)
}

/// Edges crossed by a walk; `+1` when crossing from right to left.
pub fn integrate_walk_edges(d: &SurfaceDiagram, walk: &DualWalk) -> Result<EdgeWord> {
    d.walk_class(walk)?;
    Ok(walk.steps.iter().map(|s| (s.edge, if s.right_to_left { 1 } else { -1 })).collect())
}

pub fn integrate_walk(d: &SurfaceDiagram, walk: &DualWalk) -> Result<Word> {
    let (arc, names) = arc_names(d);
    Ok(arc_word(&integrate_walk_edges(d, walk)?, &arc, &names))
}

pub fn surface_relators_edges(d: &SurfaceDiagram) -> Result<Vec<EdgeWord>> {
    d.basis_dual_walks()?.iter().map(|w| integrate_walk_edges(d, w)).collect()
}

/// Integrals of the basis dual walks, one per basis class.
pub fn surface_relators(d: &SurfaceDiagram) -> Result<Vec<Word>> {
    d.basis_dual_walks()?.iter().map(|w| integrate_walk(d, w)).collect()
}

/// Wirtinger presentation with the surface relators appended.
pub fn quotient_presentation(d: &SurfaceDiagram) -> Result<Presentation> {
    wirtinger(d).with_relators(surface_relators(d)?)
}
