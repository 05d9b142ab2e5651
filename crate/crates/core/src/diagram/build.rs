//! Builders for diagrams: planar diagram codes and medial graphs of
//! ribbon (cellularly embedded) Tait graphs.

use std::collections::{BTreeMap, BTreeSet};

use super::{Class, Crossing, Dart, Edge, SurfaceDiagram};
use crate::error::{Error, Result};

/// Build a planar diagram from PD code entries `X[a, b, c, d]`: labels
/// counterclockwise, `a -> c` the under strand. Over strand directions are
/// propagated from the requirement that every edge has one end of each kind.
pub fn from_pd(name: &str, code: &[[u64; 4]]) -> Result<SurfaceDiagram> {
    let ids: BTreeSet<u64> = code.iter().flatten().copied().collect();
    let index: BTreeMap<u64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut places: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ids.len()];
    for (c, x) in code.iter().enumerate() {
        for (s, id) in x.iter().enumerate() {
            places[index[id]].push((c, s));
        }
    }
    if places.iter().any(|p| p.len() != 2) {
        return Err(Error::Arity("every PD label must occur exactly twice".into()));
    }
    let mut end: Vec<[Option<u8>; 4]> = vec![[None; 4]; code.len()];
    for e in end.iter_mut() {
        e[0] = Some(1);
        e[2] = Some(0);
    }
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for p in &places {
                let [(c0, s0), (c1, s1)] = [p[0], p[1]];
                match (end[c0][s0], end[c1][s1]) {
                    (Some(a), None) => {
                        end[c1][s1] = Some(1 - a);
                        changed = true;
                    }
                    (None, Some(b)) => {
                        end[c0][s0] = Some(1 - b);
                        changed = true;
                    }
                    (Some(a), Some(b)) if a == b => {
                        return Err(Error::Orientation(c0 as u64, "inconsistent PD orientation".into()))
                    }
                    _ => {}
                }
            }
            for e in end.iter_mut() {
                for (a, b) in [(1, 3), (3, 1)] {
                    if let (Some(x), None) = (e[a], e[b]) {
                        e[b] = Some(1 - x);
                        changed = true;
                    }
                }
            }
        }
        match end.iter().position(|e| e[1].is_none()) {
            Some(c) => end[c][1] = Some(1),
            None => break,
        }
    }
    let crossings = code
        .iter()
        .enumerate()
        .map(|(c, x)| Crossing {
            id: c as u64,
            cyclic: std::array::from_fn(|s| Dart::new(index[&x[s]], end[c][s].unwrap())),
            over: 1,
        })
        .collect();
    let edges = ids.iter().map(|&id| Edge { id, label: Vec::new() }).collect();
    SurfaceDiagram::new(name, crossings, edges, None)
}

#[derive(Clone, Debug)]
pub struct RibbonEdge {
    pub tail: usize,
    pub head: usize,
    pub weight: i8,
    /// Translation from the tail lift to the head lift.
    pub label: Class,
}

/// Graph with a rotation system: `rotation[v]` lists half-edges
/// `(edge, half)` counterclockwise, half 0 at the tail, 1 at the head.
#[derive(Clone, Debug)]
pub struct RibbonGraph {
    pub vertices: usize,
    pub edges: Vec<RibbonEdge>,
    pub rotation: Vec<Vec<(usize, u8)>>,
}

/// Diagram whose crossings sit on the edges of a ribbon graph, with the
/// graph's vertices as faces. Crossing `e` has slots NW, SW, SE, NE with
/// the tail in corner 0 and the head in corner 2; a weight `+1` edge puts
/// the over strand through slots 1 and 3.
pub fn medial(name: &str, g: &RibbonGraph) -> Result<SurfaceDiagram> {
    let ccw_side = |half: u8| if half == 0 { 0 } else { 2 };
    let cw_side = |half: u8| if half == 0 { 1 } else { 3 };
    let offset = |e: usize, slot: usize| -> Class {
        if slot == 0 || slot == 1 {
            vec![0; g.edges[e].label.len()]
        } else {
            g.edges[e].label.clone()
        }
    };
    // medial edges as (p, q) slot pairs
    let mut strands: Vec<[(usize, usize); 2]> = Vec::new();
    for rot in &g.rotation {
        for i in 0..rot.len() {
            let (e, h) = rot[i];
            let (e2, h2) = rot[(i + 1) % rot.len()];
            strands.push([(e, ccw_side(h)), (e2, cw_side(h2))]);
        }
    }
    let mut at: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (m, pq) in strands.iter().enumerate() {
        for (i, &p) in pq.iter().enumerate() {
            if at.insert(p, (m, i)).is_some() {
                return Err(Error::Arity(format!("slot {p:?} used twice in the rotation system")));
            }
        }
    }
    if at.len() != 4 * g.edges.len() {
        return Err(Error::Arity("rotation system does not cover every half-edge".into()));
    }
    // orient by walking straight through crossings; `forward[m]` means p -> q
    let mut forward: Vec<Option<bool>> = vec![None; strands.len()];
    for start in 0..strands.len() {
        if forward[start].is_some() {
            continue;
        }
        let (mut m, mut from) = (start, 0usize);
        while forward[m].is_none() {
            forward[m] = Some(from == 0);
            let (c, s) = strands[m][1 - from];
            let (m2, i2) = at[&(c, (s + 2) % 4)];
            m = m2;
            from = i2;
        }
    }
    let mut cyclic = vec![[Dart::new(0, 0); 4]; g.edges.len()];
    let mut edges = Vec::with_capacity(strands.len());
    for (m, pq) in strands.iter().enumerate() {
        let fwd = forward[m].unwrap();
        let (a, b) = if fwd { (pq[0], pq[1]) } else { (pq[1], pq[0]) };
        cyclic[a.0][a.1] = Dart::new(m, 0);
        cyclic[b.0][b.1] = Dart::new(m, 1);
        let label = offset(a.0, a.1).iter().zip(offset(b.0, b.1)).map(|(x, y)| x - y).collect();
        edges.push(Edge { id: m as u64, label });
    }
    let crossings = cyclic
        .into_iter()
        .enumerate()
        .map(|(e, cyclic)| Crossing {
            id: e as u64,
            cyclic,
            over: if g.edges[e].weight > 0 { 1 } else { 0 },
        })
        .collect();
    SurfaceDiagram::new(name, crossings, edges, None)
}
