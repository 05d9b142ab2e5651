//! Link diagrams on closed orientable surfaces, stored as combinatorial maps.
//!
//! A crossing lists its four darts counterclockwise in slots `0..4`; corner
//! `k` of a crossing is the angle between slot `k` and slot `k + 1`. A dart
//! is an edge end; end 0 is where the edge leaves a crossing, end 1 where it
//! arrives. Faces are traced with the face on the left: leave through slot
//! `s`, arrive at slot `s'`, then leave through slot `s' - 1`. The corner a
//! face uses at a crossing is named by the slot it leaves through, so the
//! left side of an edge leaving `(c, s)` is corner `(c, s)` and the right
//! side is corner `(c, s - 1)`.

mod build;
mod json;

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

pub use build::{from_pd, medial, RibbonEdge, RibbonGraph};
pub use json::{CrossingDoc, DiagramDoc, EdgeDoc};

/// Homology class in `Z^{2g}`, ordered `x1, y1, ..., xg, yg`.
pub type Class = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub end: u8,
}

impl Dart {
    pub fn new(edge: usize, end: u8) -> Self {
        Dart { edge, end }
    }

    pub fn outgoing(&self) -> bool {
        self.end == 0
    }
}

/// `(crossing index, slot)`; doubles as a corner name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub crossing: usize,
    pub slot: usize,
}

impl Corner {
    pub fn new(crossing: usize, slot: usize) -> Self {
        Corner { crossing, slot }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: u64,
    pub cyclic: [Dart; 4],
    /// Over slots are `over` and `over + 2`; `over` is 0 or 1.
    pub over: usize,
}

impl Crossing {
    pub fn over_slots(&self) -> [usize; 2] {
        [self.over, self.over + 2]
    }

    pub fn is_over(&self, slot: usize) -> bool {
        slot % 2 == self.over
    }

    /// Slot of the outgoing over dart.
    pub fn over_out(&self) -> usize {
        if self.cyclic[self.over].outgoing() {
            self.over
        } else {
            self.over + 2
        }
    }

    /// Slot of the outgoing under dart.
    pub fn under_out(&self) -> usize {
        let u = 1 - self.over;
        if self.cyclic[u].outgoing() {
            u
        } else {
            u + 2
        }
    }

    /// Crossing sign: `-1` when the under strand leaves one slot
    /// counterclockwise of the outgoing over strand, else `+1`.
    pub fn sign(&self) -> i32 {
        if self.under_out() == (self.over_out() + 1) % 4 {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: u64,
    pub label: Class,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Boundary corners in traversal order, starting at the base corner.
    pub corners: Vec<Corner>,
}

/// Checkerboard shading: `shaded[f]` for every face.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shading {
    pub shaded: Vec<bool>,
}

impl Shading {
    pub fn is_shaded(&self, face: usize) -> bool {
        self.shaded[face]
    }

    pub fn complement(&self) -> Shading {
        Shading { shaded: self.shaded.iter().map(|s| !s).collect() }
    }

    pub fn shaded_faces(&self) -> Vec<usize> {
        (0..self.shaded.len()).filter(|&f| self.shaded[f]).collect()
    }
}

/// One step of a dual walk: crossing `edge`, from its right face to its
/// left face when `right_to_left`, otherwise the other way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WalkStep {
    pub edge: usize,
    pub right_to_left: bool,
}

/// Closed walk in the face-adjacency graph starting at face 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWalk {
    pub start: usize,
    pub steps: Vec<WalkStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceDiagram {
    name: String,
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    /// `ends[e][end]` is where that edge end sits.
    ends: Vec<[Corner; 2]>,
    genus: usize,
    faces: Vec<Face>,
    corner_face: Vec<[usize; 4]>,
    corner_class: Vec<[Class; 4]>,
}

impl SurfaceDiagram {
    /// Validate and derive faces, genus and corner classes. Crossings and
    /// edges are sorted by id; dart edge fields index into `edges` as given.
    /// Empty labels stand for the zero class.
    pub fn new(
        name: impl Into<String>,
        crossings: Vec<Crossing>,
        edges: Vec<Edge>,
        declared_genus: Option<i64>,
    ) -> Result<Self> {
        let (crossings, edges) = sort_by_ids(crossings, edges)?;
        if crossings.is_empty() {
            return Err(Error::Arity("a diagram needs at least one crossing".into()));
        }
        if edges.len() != 2 * crossings.len() {
            return Err(Error::Arity(format!(
                "{} crossings need {} edges, found {}",
                crossings.len(),
                2 * crossings.len(),
                edges.len()
            )));
        }
        let mut ends: Vec<[Option<Corner>; 2]> = vec![[None, None]; edges.len()];
        for (ci, c) in crossings.iter().enumerate() {
            if c.over > 1 {
                return Err(Error::NonAntipodalOver(c.id));
            }
            for (s, d) in c.cyclic.iter().enumerate() {
                if d.edge >= edges.len() || d.end > 1 {
                    return Err(Error::Arity(format!("bad dart at crossing {}", c.id)));
                }
                let slot = &mut ends[d.edge][d.end as usize];
                if slot.is_some() {
                    return Err(Error::Arity(format!(
                        "end {} of edge {} is used twice",
                        d.end, edges[d.edge].id
                    )));
                }
                *slot = Some(Corner::new(ci, s));
            }
        }
        let ends: Vec<[Corner; 2]> = ends
            .into_iter()
            .enumerate()
            .map(|(e, [a, b])| match (a, b) {
                (Some(a), Some(b)) => Ok([a, b]),
                _ => Err(Error::Arity(format!("edge {} has a free end", edges[e].id))),
            })
            .collect::<Result<_>>()?;
        for c in &crossings {
            for s in 0..2 {
                if c.cyclic[s].end == c.cyclic[s + 2].end {
                    let which = if c.is_over(s) { "over" } else { "under" };
                    return Err(Error::Orientation(
                        c.id,
                        format!("{which} strand does not pass through (one end in, one out)"),
                    ));
                }
            }
        }
        if !connected(crossings.len(), &ends) {
            return Err(Error::Disconnected);
        }

        let (faces, corner_face) = trace_faces(&crossings, &ends);
        let v = crossings.len() as i64;
        let twice_genus = 2 + v - faces.len() as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::Internal(format!("Euler characteristic gives genus {twice_genus}/2")));
        }
        let genus = (twice_genus / 2) as usize;
        let nv = 2 * genus;
        // labels are checked for the cocycle condition at their own length
        // first, so a stray label reports the face it breaks
        let given = edges.iter().map(|e| e.label.len()).filter(|&l| l > 0).max().unwrap_or(nv);
        let mut edges = edges;
        for e in &mut edges {
            if e.label.is_empty() {
                e.label = vec![0; given];
            } else if e.label.len() != given {
                return Err(Error::LabelLength { got: e.label.len(), expected: given });
            }
        }

        let mut corner_class: Vec<[Class; 4]> =
            vec![std::array::from_fn(|_| vec![0; given]); crossings.len()];
        for f in &faces {
            let mut cur = vec![0; given];
            for k in &f.corners {
                corner_class[k.crossing][k.slot] = cur.clone();
                let step = step_label(&crossings, &edges, *k);
                for (a, b) in cur.iter_mut().zip(&step) {
                    *a -= b;
                }
            }
            if cur.iter().any(|&x| x != 0) {
                let sum = cur.iter().map(|x| -x).collect();
                return Err(Error::Cocycle { face: f.id, sum });
            }
        }
        if given != nv {
            return Err(Error::LabelLength { got: given, expected: nv });
        }
        if let Some(g) = declared_genus {
            if g != genus as i64 {
                return Err(Error::GenusMismatch { declared: g, computed: genus.to_string() });
            }
        }
        Ok(SurfaceDiagram {
            name: name.into(),
            crossings,
            edges,
            ends,
            genus,
            faces,
            corner_face,
            corner_class,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Number of Laurent variables, `2g`.
    pub fn nvars(&self) -> usize {
        2 * self.genus
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn crossing(&self, c: usize) -> &Crossing {
        &self.crossings[c]
    }

    pub fn dart(&self, c: usize, slot: usize) -> Dart {
        self.crossings[c].cyclic[slot % 4]
    }

    /// Location of an edge end.
    pub fn end_at(&self, edge: usize, end: u8) -> Corner {
        self.ends[edge][end as usize]
    }

    /// Where a face leaving corner `k` next arrives, as the next corner.
    pub fn next_corner(&self, k: Corner) -> Corner {
        let d = self.dart(k.crossing, k.slot);
        let o = self.end_at(d.edge, 1 - d.end);
        Corner::new(o.crossing, (o.slot + 3) % 4)
    }

    pub fn corner_face(&self, c: usize, slot: usize) -> usize {
        self.corner_face[c][slot % 4]
    }

    pub fn corner_class(&self, c: usize, slot: usize) -> &Class {
        &self.corner_class[c][slot % 4]
    }

    pub fn left_face(&self, edge: usize) -> usize {
        let k = self.end_at(edge, 0);
        self.corner_face(k.crossing, k.slot)
    }

    pub fn right_face(&self, edge: usize) -> usize {
        let k = self.end_at(edge, 0);
        self.corner_face(k.crossing, k.slot + 3)
    }

    /// Edge label signed by the direction a face leaving corner `k` uses.
    pub fn step_label(&self, k: Corner) -> Class {
        step_label(&self.crossings, &self.edges, k)
    }

    /// Face sums of edge labels; all zero for a valid diagram.
    pub fn face_sums(&self) -> Vec<Class> {
        self.faces
            .iter()
            .map(|f| {
                let mut sum = vec![0; self.nvars()];
                for k in &f.corners {
                    for (a, b) in sum.iter_mut().zip(self.step_label(*k)) {
                        *a += b;
                    }
                }
                sum
            })
            .collect()
    }

    /// Group edges into link components, each listed in traversal order
    /// from its smallest edge.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for start in 0..self.edges.len() {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                comp.push(e);
                let k = self.end_at(e, 1);
                e = self.dart(k.crossing, k.slot + 2).edge;
            }
            out.push(comp);
        }
        out
    }

    /// Breadth-first 2-colouring of faces across edges, with face 0 shaded.
    pub fn checkerboard_shade(&self) -> Result<Shading> {
        let nf = self.faces.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for e in 0..self.edges.len() {
            let (l, r) = (self.left_face(e), self.right_face(e));
            if l == r {
                return Err(Error::NotShadable);
            }
            adj[l].push(r);
            adj[r].push(l);
        }
        let mut color: Vec<Option<bool>> = vec![None; nf];
        color[0] = Some(true);
        let mut queue = VecDeque::from([0]);
        while let Some(f) = queue.pop_front() {
            let cf = color[f].unwrap();
            for &g in &adj[f] {
                match color[g] {
                    None => {
                        color[g] = Some(!cf);
                        queue.push_back(g);
                    }
                    Some(cg) if cg == cf => return Err(Error::NotShadable),
                    _ => {}
                }
            }
        }
        Ok(Shading { shaded: color.into_iter().map(|c| c.unwrap_or(false)).collect() })
    }

    /// The diagram seen from the other side of the surface.
    pub fn flip(&self) -> SurfaceDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                id: c.id,
                cyclic: std::array::from_fn(|i| c.cyclic[(4 - i) % 4]),
                over: 1 - c.over,
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { id: e.id, label: e.label.iter().map(|x| -x).collect() })
            .collect();
        SurfaceDiagram::new(self.name.clone(), crossings, edges, Some(self.genus as i64))
            .expect("flip of a valid diagram is valid")
    }

    /// Replace all labels by a tree-cotree cohomology basis: tree edges get
    /// zero, the `2g` leftover edges get the unit vectors, and the cotree
    /// edges are solved leaf-first so every face sums to zero.
    pub fn auto_label(&self) -> SurfaceDiagram {
        let ne = self.edges.len();
        let nv = self.nvars();
        let mut in_tree = vec![false; ne];
        let mut reached = vec![false; self.crossings.len()];
        reached[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for s in 0..4 {
                let d = self.dart(c, s);
                let o = self.end_at(d.edge, 1 - d.end).crossing;
                if !reached[o] {
                    reached[o] = true;
                    in_tree[d.edge] = true;
                    queue.push_back(o);
                }
            }
        }
        // cotree: parent edge of each face in a BFS of the dual graph
        let nf = self.faces.len();
        let mut parent: Vec<Option<usize>> = vec![None; nf];
        let mut order = vec![0usize];
        let mut seen = vec![false; nf];
        seen[0] = true;
        let mut in_cotree = vec![false; ne];
        let mut i = 0;
        while i < order.len() {
            let f = order[i];
            i += 1;
            for e in 0..ne {
                if in_tree[e] || in_cotree[e] {
                    continue;
                }
                let (l, r) = (self.left_face(e), self.right_face(e));
                let g = if l == f { r } else if r == f { l } else { continue };
                if !seen[g] {
                    seen[g] = true;
                    in_cotree[e] = true;
                    parent[g] = Some(e);
                    order.push(g);
                }
            }
        }
        let mut labels: Vec<Option<Class>> = vec![None; ne];
        let mut k = 0;
        for e in 0..ne {
            if in_tree[e] {
                labels[e] = Some(vec![0; nv]);
            } else if !in_cotree[e] {
                let mut v = vec![0; nv];
                v[k] = 1;
                k += 1;
                labels[e] = Some(v);
            }
        }
        debug_assert_eq!(k, nv);
        for &f in order.iter().skip(1).rev() {
            let p = parent[f].unwrap();
            let mut sum = vec![0i64; nv];
            let mut sign = 0;
            for c in &self.faces[f].corners {
                let d = self.dart(c.crossing, c.slot);
                let s = if d.outgoing() { 1 } else { -1 };
                if d.edge == p {
                    sign = s;
                    continue;
                }
                let l = labels[d.edge].as_ref().expect("children are solved first");
                for (a, b) in sum.iter_mut().zip(l) {
                    *a += s * b;
                }
            }
            labels[p] = Some(sum.iter().map(|x| -sign * x).collect());
        }
        let edges = self
            .edges
            .iter()
            .zip(labels)
            .map(|(e, l)| Edge { id: e.id, label: l.unwrap() })
            .collect();
        SurfaceDiagram::new(self.name.clone(), self.crossings.clone(), edges, Some(self.genus as i64))
            .expect("tree-cotree labels satisfy the cocycle condition")
    }

    /// Class change of a dual step, measured by corner classes at the end-0
    /// crossing of the edge.
    pub fn step_class(&self, step: WalkStep) -> Class {
        let k = self.end_at(step.edge, 0);
        let left = self.corner_class(k.crossing, k.slot);
        let right = self.corner_class(k.crossing, k.slot + 3);
        let sign = if step.right_to_left { 1 } else { -1 };
        left.iter().zip(right).map(|(l, r)| sign * (l - r)).collect()
    }

    pub fn step_faces(&self, step: WalkStep) -> (usize, usize) {
        let (l, r) = (self.left_face(step.edge), self.right_face(step.edge));
        if step.right_to_left {
            (r, l)
        } else {
            (l, r)
        }
    }

    /// Check that a walk is connected and closed; return its total class.
    pub fn walk_class(&self, walk: &DualWalk) -> Result<Class> {
        let mut at = walk.start;
        let mut total = vec![0; self.nvars()];
        for st in &walk.steps {
            let (from, to) = self.step_faces(*st);
            if from != at {
                return Err(Error::NonAdjacentStep(at, to, st.edge));
            }
            at = to;
            for (a, b) in total.iter_mut().zip(self.step_class(*st)) {
                *a += b;
            }
        }
        Ok(total)
    }

    /// For each basis vector, a shortest closed dual walk from face 0 with
    /// that total class.
    pub fn basis_dual_walks(&self) -> Result<Vec<DualWalk>> {
        let nv = self.nvars();
        if nv == 0 {
            return Ok(Vec::new());
        }
        let bound: i64 =
            1 + self.edges.iter().flat_map(|e| e.label.iter()).map(|x| x.abs()).sum::<i64>();
        let mut moves: Vec<(usize, WalkStep, usize, Class)> = Vec::new();
        for e in 0..self.edges.len() {
            for rtl in [true, false] {
                let st = WalkStep { edge: e, right_to_left: rtl };
                let (a, b) = self.step_faces(st);
                moves.push((a, st, b, self.step_class(st)));
            }
        }
        let start = (0usize, vec![0i64; nv]);
        let mut prev: BTreeMap<(usize, Class), Option<((usize, Class), WalkStep)>> = BTreeMap::new();
        prev.insert(start.clone(), None);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(state) = queue.pop_front() {
            for (a, st, b, delta) in &moves {
                if *a != state.0 {
                    continue;
                }
                let cls: Class = state.1.iter().zip(delta).map(|(x, y)| x + y).collect();
                if cls.iter().any(|x| x.abs() > bound) {
                    continue;
                }
                let next = (*b, cls);
                if !prev.contains_key(&next) {
                    prev.insert(next.clone(), Some((state.clone(), *st)));
                    queue.push_back(next);
                }
            }
        }
        (0..nv)
            .map(|k| {
                let mut target = vec![0; nv];
                target[k] = 1;
                let mut state = (0usize, target);
                if !prev.contains_key(&state) {
                    return Err(Error::Internal(format!("no dual walk realizes basis vector {k}")));
                }
                let mut steps = Vec::new();
                while let Some(Some((p, st))) = prev.get(&state) {
                    steps.push(*st);
                    state = p.clone();
                }
                steps.reverse();
                Ok(DualWalk { start: 0, steps })
            })
            .collect()
    }
}

fn step_label(crossings: &[Crossing], edges: &[Edge], k: Corner) -> Class {
    let d = crossings[k.crossing].cyclic[k.slot];
    let l = &edges[d.edge].label;
    if d.outgoing() {
        l.clone()
    } else {
        l.iter().map(|x| -x).collect()
    }
}

fn sort_by_ids(
    mut crossings: Vec<Crossing>,
    edges: Vec<Edge>,
) -> Result<(Vec<Crossing>, Vec<Edge>)> {
    crossings.sort_by_key(|c| c.id);
    if crossings.windows(2).any(|w| w[0].id == w[1].id) {
        return Err(Error::Arity("duplicate crossing id".into()));
    }
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| edges[i].id);
    if order.windows(2).any(|w| edges[w[0]].id == edges[w[1]].id) {
        return Err(Error::Arity("duplicate edge id".into()));
    }
    let mut remap = vec![0; edges.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    for c in &mut crossings {
        for d in &mut c.cyclic {
            if d.edge < remap.len() {
                d.edge = remap[d.edge];
            }
        }
    }
    let edges = order.into_iter().map(|i| edges[i].clone()).collect();
    Ok((crossings, edges))
}

fn connected(n: usize, ends: &[[Corner; 2]]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for [a, b] in ends {
        let (ra, rb) = (find(&mut parent, a.crossing), find(&mut parent, b.crossing));
        parent[ra] = rb;
    }
    let r = find(&mut parent, 0);
    (0..n).all(|x| find(&mut parent, x) == r)
}

fn trace_faces(crossings: &[Crossing], ends: &[[Corner; 2]]) -> (Vec<Face>, Vec<[usize; 4]>) {
    let n = crossings.len();
    let mut corner_face = vec![[usize::MAX; 4]; n];
    let mut faces = Vec::new();
    for c in 0..n {
        for s in 0..4 {
            if corner_face[c][s] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let mut k = Corner::new(c, s);
            while corner_face[k.crossing][k.slot] == usize::MAX {
                corner_face[k.crossing][k.slot] = id;
                corners.push(k);
                let d = crossings[k.crossing].cyclic[k.slot];
                let o = ends[d.edge][1 - d.end as usize];
                k = Corner::new(o.crossing, (o.slot + 3) % 4);
            }
            faces.push(Face { id, corners });
        }
    }
    (faces, corner_face)
}

/// Name for the `i`-th generator: `a..z`, then `a1..z1`, and so on.
pub fn generator_name(i: usize, upper: bool) -> String {
    let base = if upper { b'A' } else { b'a' };
    let ch = (base + (i % 26) as u8) as char;
    if i < 26 {
        ch.to_string()
    } else {
        format!("{ch}{}", i / 26)
    }
}
