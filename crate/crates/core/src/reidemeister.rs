//! Reidemeister moves on diagrams, keeping edge labels a cocycle in the
//! same cohomology class.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{Class, Corner, Crossing, Dart, Edge, SurfaceDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MoveKind {
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] =
        [MoveKind::R1Plus, MoveKind::R1Minus, MoveKind::R2Plus, MoveKind::R2Minus, MoveKind::R3];

    pub fn parse(s: &str) -> Result<MoveKind> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "r1+" => MoveKind::R1Plus,
            "r1-" => MoveKind::R1Minus,
            "r2+" => MoveKind::R2Plus,
            "r2-" => MoveKind::R2Minus,
            "r3" => MoveKind::R3,
            _ => return Err(Error::Parse(format!("unknown move kind `{s}`"))),
        })
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::R1Plus => "R1+",
            MoveKind::R1Minus => "R1-",
            MoveKind::R2Plus => "R2+",
            MoveKind::R2Minus => "R2-",
            MoveKind::R3 => "R3",
        })
    }
}

/// Where and how to apply a move.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveSite {
    /// Curl on the edge at slot `slot` of `crossing`. `monogon_ccw` puts the
    /// loop at the corner after the new crossing's second slot, otherwise
    /// after its first; `over` is the new crossing's over parity.
    R1Plus { crossing: usize, slot: usize, monogon_ccw: bool, over: usize },
    /// Remove the curl bounding a monogon face.
    R1Minus { face: usize },
    /// Push boundary segment `over` of `face` across segment `under`, the
    /// pushed strand on top. Positions index the face's corner list.
    R2Plus { face: usize, over: usize, under: usize },
    /// Remove a bigon face whose two edges lie on one strand each.
    R2Minus { face: usize },
    /// Slide across the crossing opposite a triangle face.
    R3 { face: usize },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Plus { .. } => MoveKind::R1Plus,
            MoveSite::R1Minus { .. } => MoveKind::R1Minus,
            MoveSite::R2Plus { .. } => MoveKind::R2Plus,
            MoveSite::R2Minus { .. } => MoveKind::R2Minus,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveSite::R1Plus { crossing, slot, monogon_ccw, over } => write!(
                f,
                "R1+ at crossing {crossing} slot {slot}, loop {}, over parity {over}",
                if *monogon_ccw { "ccw" } else { "cw" }
            ),
            MoveSite::R1Minus { face } => write!(f, "R1- on face {face}"),
            MoveSite::R2Plus { face, over, under } => {
                write!(f, "R2+ in face {face}, segment {over} over segment {under}")
            }
            MoveSite::R2Minus { face } => write!(f, "R2- on face {face}"),
            MoveSite::R3 { face } => write!(f, "R3 on face {face}"),
        }
    }
}

/// Every applicable site, in a fixed order: by kind, then by position.
pub fn enumerate_sites(d: &SurfaceDiagram) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for c in 0..d.crossings().len() {
        for slot in 0..4 {
            for monogon_ccw in [false, true] {
                for over in 0..2 {
                    out.push(MoveSite::R1Plus { crossing: c, slot, monogon_ccw, over });
                }
            }
        }
    }
    for f in d.faces() {
        if f.corners.len() == 1 && r1_minus_plan(d, f.id).is_ok() {
            out.push(MoveSite::R1Minus { face: f.id });
        }
    }
    for f in d.faces() {
        let n = f.corners.len();
        for over in 0..n {
            for under in 0..n {
                let edge = |i: usize| d.dart(f.corners[i].crossing, f.corners[i].slot).edge;
                if over != under && edge(over) != edge(under) {
                    out.push(MoveSite::R2Plus { face: f.id, over, under });
                }
            }
        }
    }
    for f in d.faces() {
        if f.corners.len() == 2 {
            let s = MoveSite::R2Minus { face: f.id };
            if apply_move(d, &s).is_ok() {
                out.push(s);
            }
        }
    }
    for f in d.faces() {
        if f.corners.len() == 3 && r3_plan(d, f.id).is_ok() {
            out.push(MoveSite::R3 { face: f.id });
        }
    }
    out
}

pub fn sites_of_kind(d: &SurfaceDiagram, kind: MoveKind) -> Vec<MoveSite> {
    enumerate_sites(d).into_iter().filter(|s| s.kind() == kind).collect()
}

pub fn apply_move(d: &SurfaceDiagram, site: &MoveSite) -> Result<SurfaceDiagram> {
    let out = match *site {
        MoveSite::R1Plus { crossing, slot, monogon_ccw, over } => {
            if crossing >= d.crossings().len() || slot > 3 || over > 1 {
                return Err(inapplicable(site, "no such dart"));
            }
            r1_plus(d, crossing, slot, monogon_ccw, over)
        }
        MoveSite::R1Minus { face } => {
            let x = r1_minus_plan(d, face).map_err(|m| inapplicable(site, m))?;
            Raw::new(d).remove_crossings(d, &[x])
        }
        MoveSite::R2Plus { face, over, under } => r2_plus(d, face, over, under)
            .ok_or_else(|| inapplicable(site, "segments must be distinct edges of the face"))?,
        MoveSite::R2Minus { face } => {
            let (x, y) = r2_minus_plan(d, face).map_err(|m| inapplicable(site, m))?;
            Raw::new(d).remove_crossings(d, &[x, y])
        }
        MoveSite::R3 { face } => {
            let plan = r3_plan(d, face).map_err(|m| inapplicable(site, m))?;
            r3(d, plan)
        }
    };
    let out = out.build(d.name()).map_err(|e| match e {
        Error::InapplicableSite(_) => e,
        other => inapplicable(site, &other.to_string()),
    })?;
    if out.genus() != d.genus() {
        return Err(inapplicable(site, "the move would change the surface"));
    }
    Ok(out)
}

fn inapplicable(site: &MoveSite, why: &str) -> Error {
    Error::InapplicableSite(format!("{site}: {why}"))
}

/// Editable copy of a diagram's darts and labels.
struct Raw {
    cyc: Vec<[Dart; 4]>,
    over: Vec<usize>,
    alive_c: Vec<bool>,
    labels: Vec<Class>,
    alive_e: Vec<bool>,
}

impl Raw {
    fn new(d: &SurfaceDiagram) -> Raw {
        Raw {
            cyc: d.crossings().iter().map(|c| c.cyclic).collect(),
            over: d.crossings().iter().map(|c| c.over).collect(),
            alive_c: vec![true; d.crossings().len()],
            labels: d.edges().iter().map(|e| e.label.clone()).collect(),
            alive_e: vec![true; d.edges().len()],
        }
    }

    fn add_crossing(&mut self, over: usize) -> usize {
        self.cyc.push([Dart::new(usize::MAX, 0); 4]);
        self.over.push(over);
        self.alive_c.push(true);
        self.cyc.len() - 1
    }

    fn add_edge(&mut self, label: Class) -> usize {
        self.labels.push(label);
        self.alive_e.push(true);
        self.labels.len() - 1
    }

    fn put(&mut self, at: (usize, usize), edge: usize, end: u8) {
        self.cyc[at.0][at.1 % 4] = Dart::new(edge, end);
    }

    /// Place a strand piece running from `start` to `finish`, oriented along
    /// the traversal when `forward`.
    fn piece(&mut self, edge: usize, start: (usize, usize), finish: (usize, usize), forward: bool) {
        let (a, b) = if forward { (0, 1) } else { (1, 0) };
        self.put(start, edge, a);
        self.put(finish, edge, b);
    }

    /// Delete crossings and splice each strand through them into one edge
    /// carrying the sum of the labels along it.
    fn remove_crossings(mut self, d: &SurfaceDiagram, gone: &[usize]) -> Raw {
        let removed = |c: usize| gone.contains(&c);
        let mut touched = vec![false; d.edges().len()];
        for (e, t) in touched.iter_mut().enumerate() {
            *t = removed(d.end_at(e, 0).crossing) || removed(d.end_at(e, 1).crossing);
        }
        let mut used = vec![false; d.edges().len()];
        for c in 0..d.crossings().len() {
            if removed(c) {
                continue;
            }
            for s in 0..4 {
                let dt = d.dart(c, s);
                if dt.end != 0 || !touched[dt.edge] {
                    continue;
                }
                let mut label = d.edges()[dt.edge].label.clone();
                let mut cur = dt.edge;
                used[cur] = true;
                let mut far = d.end_at(cur, 1);
                while removed(far.crossing) {
                    let next = d.dart(far.crossing, far.slot + 2);
                    cur = next.edge;
                    used[cur] = true;
                    for (a, b) in label.iter_mut().zip(&d.edges()[cur].label) {
                        *a += b;
                    }
                    far = d.end_at(cur, 1);
                }
                let e = self.add_edge(label);
                self.put((c, s), e, 0);
                self.put((far.crossing, far.slot), e, 1);
            }
        }
        for (e, t) in touched.iter().enumerate() {
            if *t {
                self.alive_e[e] = false;
                if !used[e] {
                    // a strand closes up inside the removed crossings
                    self.alive_c.iter_mut().for_each(|a| *a = false);
                }
            }
        }
        for &c in gone {
            self.alive_c[c] = false;
        }
        self
    }

    fn build(self, name: &str) -> Result<SurfaceDiagram> {
        if !self.alive_c.iter().any(|&a| a) {
            return Err(Error::InapplicableSite("no crossings would remain".into()));
        }
        let mut edge_index = vec![usize::MAX; self.labels.len()];
        let mut edges = Vec::new();
        for (e, l) in self.labels.iter().enumerate() {
            if self.alive_e[e] {
                edge_index[e] = edges.len();
                edges.push(Edge { id: edges.len() as u64, label: l.clone() });
            }
        }
        let mut crossings = Vec::new();
        for (c, cyc) in self.cyc.iter().enumerate() {
            if !self.alive_c[c] {
                continue;
            }
            let mut cyclic = *cyc;
            for dt in &mut cyclic {
                dt.edge = *edge_index.get(dt.edge).ok_or_else(|| Error::Internal("dangling dart".into()))?;
            }
            crossings.push(Crossing { id: crossings.len() as u64, cyclic, over: self.over[c] });
        }
        SurfaceDiagram::new(name, crossings, edges, None)
    }
}

fn r1_plus(d: &SurfaceDiagram, c: usize, s: usize, monogon_ccw: bool, over: usize) -> Raw {
    let e = d.dart(c, s).edge;
    let head = d.end_at(e, 1);
    let nv = d.nvars();
    let mut raw = Raw::new(d);
    let x = raw.add_crossing(over);
    let lp = raw.add_edge(vec![0; nv]);
    let e3 = raw.add_edge(vec![0; nv]);
    // e keeps its tail and its label and now ends at the new crossing
    raw.put((x, 0), e, 1);
    raw.put((head.crossing, head.slot), e3, 1);
    raw.put((x, 2), lp, 0);
    if monogon_ccw {
        raw.put((x, 1), e3, 0);
        raw.put((x, 3), lp, 1);
    } else {
        raw.put((x, 1), lp, 1);
        raw.put((x, 3), e3, 0);
    }
    raw
}

fn r1_minus_plan(d: &SurfaceDiagram, face: usize) -> std::result::Result<usize, &'static str> {
    let f = d.faces().get(face).ok_or("no such face")?;
    if f.corners.len() != 1 {
        return Err("face is not a monogon");
    }
    let k = f.corners[0];
    let l = d.dart(k.crossing, k.slot);
    let a = d.dart(k.crossing, k.slot + 2).edge;
    let b = d.dart(k.crossing, k.slot + 3).edge;
    if a == b || a == l.edge || b == l.edge {
        return Err("removing the curl leaves no crossing on the strand");
    }
    Ok(k.crossing)
}

fn r2_minus_plan(d: &SurfaceDiagram, face: usize) -> std::result::Result<(usize, usize), &'static str> {
    let f = d.faces().get(face).ok_or("no such face")?;
    if f.corners.len() != 2 {
        return Err("face is not a bigon");
    }
    let (kx, ky) = (f.corners[0], f.corners[1]);
    if kx.crossing == ky.crossing {
        return Err("bigon corners lie on one crossing");
    }
    let (x, y) = (d.crossing(kx.crossing), d.crossing(ky.crossing));
    if x.is_over(kx.slot) != y.is_over(ky.slot + 1) {
        return Err("bigon strands alternate over and under");
    }
    Ok((kx.crossing, ky.crossing))
}

struct R3Plan {
    x: Corner,
    y: Corner,
    z: Corner,
}

fn r3_plan(d: &SurfaceDiagram, face: usize) -> std::result::Result<R3Plan, &'static str> {
    let f = d.faces().get(face).ok_or("no such face")?;
    if f.corners.len() != 3 {
        return Err("face is not a triangle");
    }
    let [x, y, z] = [f.corners[0], f.corners[1], f.corners[2]];
    if x.crossing == y.crossing || y.crossing == z.crossing || x.crossing == z.crossing {
        return Err("triangle corners must lie on distinct crossings");
    }
    let o = |k: Corner, s: usize| d.crossing(k.crossing).is_over(k.slot + s);
    let top = (o(x, 0) && o(y, 1)) || (o(x, 1) && o(z, 0)) || (o(y, 0) && o(z, 1));
    if !top {
        return Err("no strand passes over both others");
    }
    Ok(R3Plan { x, y, z })
}

fn r3(d: &SurfaceDiagram, plan: R3Plan) -> Raw {
    let R3Plan { x, y, z } = plan;
    let (cx, cy, cz) = (x.crossing, y.crossing, z.crossing);
    let (a, b, c) = (x.slot, y.slot, z.slot);
    let i0 = d.dart(cx, a).edge; // X-Y
    let i1 = d.dart(cz, c).edge; // Z-X
    let i2 = d.dart(cy, b).edge; // Y-Z
    let nv = d.nvars();

    // gauge so the three inner edges carry zero
    let mut phi: BTreeMap<usize, Class> = BTreeMap::new();
    phi.insert(cx, vec![0; nv]);
    let mut solve = |e: usize, known: usize, other: usize| {
        let h = &d.edges()[e].label;
        let p = phi[&known].clone();
        let v: Class = if d.end_at(e, 0).crossing == known {
            p.iter().zip(h).map(|(p, h)| p - h).collect()
        } else {
            p.iter().zip(h).map(|(p, h)| p + h).collect()
        };
        phi.insert(other, v);
    };
    solve(i0, cx, cy);
    solve(i1, cx, cz);
    let mut raw = Raw::new(d);
    for e in 0..d.edges().len() {
        let mut l = d.edges()[e].label.clone();
        if let Some(p) = phi.get(&d.end_at(e, 1).crossing) {
            l.iter_mut().zip(p).for_each(|(a, b)| *a += b);
        }
        if let Some(p) = phi.get(&d.end_at(e, 0).crossing) {
            l.iter_mut().zip(p).for_each(|(a, b)| *a -= b);
        }
        raw.labels[e] = l;
    }
    for e in [i0, i1, i2] {
        raw.labels[e] = vec![0; nv];
    }

    // boundary darts p0..p5 counterclockwise around the triangle
    let p = [
        d.dart(cx, a + 2),
        d.dart(cx, a + 3),
        d.dart(cy, b + 2),
        d.dart(cy, b + 3),
        d.dart(cz, c + 2),
        d.dart(cz, c + 3),
    ];
    let inbound = |i: usize| p[i].end == 1;
    let over_x = if d.crossing(cx).is_over(a) { 0 } else { 1 };
    let over_y = if d.crossing(cy).is_over(b + 1) { 0 } else { 1 };
    let over_z = if d.crossing(cz).is_over(c) { 0 } else { 1 };
    raw.over[cx] = over_x;
    raw.over[cy] = over_y;
    raw.over[cz] = over_z;
    // strand X-Y now meets Y first, X-Z meets Z first, Y-Z meets Z first
    raw.put((cx, 2), p[3].edge, p[3].end);
    raw.put((cx, 3), p[4].edge, p[4].end);
    raw.put((cy, 0), p[0].edge, p[0].end);
    raw.put((cy, 3), p[5].edge, p[5].end);
    raw.put((cz, 0), p[1].edge, p[1].end);
    raw.put((cz, 1), p[2].edge, p[2].end);
    raw.piece(i0, (cy, 2), (cx, 0), inbound(0));
    raw.piece(i1, (cz, 2), (cx, 1), inbound(1));
    raw.piece(i2, (cz, 3), (cy, 1), inbound(2));
    raw
}

fn r2_plus(d: &SurfaceDiagram, face: usize, i: usize, j: usize) -> Option<Raw> {
    let f = d.faces().get(face)?;
    let m = f.corners.len();
    if i >= m || j >= m || i == j {
        return None;
    }
    let (ka, kb) = (f.corners[i], f.corners[j]);
    let (da, db) = (d.dart(ka.crossing, ka.slot), d.dart(kb.crossing, kb.slot));
    if da.edge == db.edge {
        return None;
    }
    let nv = d.nvars();
    let fwd_a = da.end == 0;
    let fwd_b = db.end == 0;
    let qa = d.end_at(da.edge, 1 - da.end);
    let qb = d.end_at(db.edge, 1 - db.end);
    let after_b = f.corners[(j + 1) % m];
    let sub = |u: &Class, v: &Class| -> Class { u.iter().zip(v).map(|(a, b)| a - b).collect() };
    let signed = |fwd: bool, t: Class| -> Class {
        if fwd {
            t
        } else {
            t.into_iter().map(|x| -x).collect()
        }
    };
    let ha = signed(fwd_a, d.edges()[da.edge].label.clone());
    let hb = signed(fwd_b, d.edges()[db.edge].label.clone());
    // traversal values of the pieces
    let t_a1 = sub(d.corner_class(ka.crossing, ka.slot), d.corner_class(after_b.crossing, after_b.slot));
    let t_a3 = sub(&ha, &t_a1);

    let mut raw = Raw::new(d);
    let x = raw.add_crossing(1);
    let y = raw.add_crossing(1);
    raw.labels[da.edge] = signed(fwd_a, t_a1);
    raw.labels[db.edge] = signed(fwd_b, hb);
    let a2 = raw.add_edge(vec![0; nv]);
    let a3 = raw.add_edge(signed(fwd_a, t_a3));
    let b2 = raw.add_edge(vec![0; nv]);
    let b3 = raw.add_edge(vec![0; nv]);
    // X: east B2, north A2, west B3, south A1; Y: east B1, north A2, west B2, south A3
    raw.piece(da.edge, (ka.crossing, ka.slot), (x, 3), fwd_a);
    raw.piece(a2, (x, 1), (y, 1), fwd_a);
    raw.piece(a3, (y, 3), (qa.crossing, qa.slot), fwd_a);
    raw.piece(db.edge, (kb.crossing, kb.slot), (y, 0), fwd_b);
    raw.piece(b2, (y, 2), (x, 0), fwd_b);
    raw.piece(b3, (x, 2), (qb.crossing, qb.slot), fwd_b);
    Some(raw)
}

/// Orientation-preserving isomorphism invariant: the smallest breadth-first
/// encoding over all starting darts, with labels gauged to vanish on the
/// search tree.
pub fn canonical_form(d: &SurfaceDiagram) -> Vec<i64> {
    let n = d.crossings().len();
    let mut best: Option<Vec<i64>> = None;
    for c0 in 0..n {
        for s0 in 0..4 {
            let code = encode_from(d, c0, s0);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    let mut out = vec![n as i64, d.genus() as i64];
    out.extend(best.unwrap_or_default());
    out
}

fn encode_from(d: &SurfaceDiagram, c0: usize, s0: usize) -> Vec<i64> {
    let n = d.crossings().len();
    let nv = d.nvars();
    let mut index = vec![usize::MAX; n];
    let mut start = vec![0usize; n];
    let mut phi: Vec<Class> = vec![vec![0; nv]; n];
    let mut order = vec![c0];
    index[c0] = 0;
    start[c0] = s0;
    let mut pos = 0;
    while pos < order.len() {
        let c = order[pos];
        pos += 1;
        for r in 0..4 {
            let dt = d.dart(c, start[c] + r);
            let far = d.end_at(dt.edge, 1 - dt.end);
            if index[far.crossing] != usize::MAX {
                continue;
            }
            index[far.crossing] = order.len();
            start[far.crossing] = far.slot;
            let h = &d.edges()[dt.edge].label;
            phi[far.crossing] = if dt.end == 0 {
                phi[c].iter().zip(h).map(|(p, h)| p - h).collect()
            } else {
                phi[c].iter().zip(h).map(|(p, h)| p + h).collect()
            };
            order.push(far.crossing);
        }
    }
    let mut code = Vec::new();
    for &c in &order {
        code.push(d.crossing(c).is_over(start[c]) as i64);
        for r in 0..4 {
            let dt = d.dart(c, start[c] + r);
            let far = d.end_at(dt.edge, 1 - dt.end);
            code.push(index[far.crossing] as i64);
            code.push(((far.slot + 4 - start[far.crossing]) % 4) as i64);
            code.push(dt.end as i64);
            if dt.end == 0 {
                let h = &d.edges()[dt.edge].label;
                for k in 0..nv {
                    code.push(h[k] + phi[far.crossing][k] - phi[c][k]);
                }
            }
        }
    }
    code
}

pub fn isomorphic(a: &SurfaceDiagram, b: &SurfaceDiagram) -> bool {
    canonical_form(a) == canonical_form(b)
}

/// One random move: a kind chosen uniformly among those with sites, then
/// a site of that kind.
pub fn random_move(d: &SurfaceDiagram, rng: &mut ChaCha8Rng) -> Result<(MoveSite, SurfaceDiagram)> {
    let sites = enumerate_sites(d);
    let mut kinds: Vec<MoveKind> = sites.iter().map(|s| s.kind()).collect();
    kinds.dedup();
    let kind = *kinds.choose(rng).ok_or_else(|| Error::Internal("no move sites".into()))?;
    let of_kind: Vec<&MoveSite> = sites.iter().filter(|s| s.kind() == kind).collect();
    let site = of_kind[rng.gen_range(0..of_kind.len())].clone();
    let next = apply_move(d, &site)
        .map_err(|e| Error::Internal(format!("enumerated site failed to apply: {e}")))?;
    Ok((site, next))
}

#[derive(Clone, Debug)]
pub struct FuzzRun {
    pub moves: Vec<MoveSite>,
    pub result: SurfaceDiagram,
}

/// `count` sequences of 1..=`max_len` random moves, each sequence seeded
/// from `seed` and its index.
pub fn fuzz(d: &SurfaceDiagram, count: usize, max_len: usize, seed: u64) -> Result<Vec<FuzzRun>> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
            let len = rng.gen_range(1..=max_len.max(1));
            let mut cur = d.clone();
            let mut moves = Vec::with_capacity(len);
            for _ in 0..len {
                let (site, next) = random_move(&cur, &mut rng)?;
                moves.push(site);
                cur = next;
            }
            Ok(FuzzRun { moves, result: cur })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn site_census() {
        let t = fixtures::trefoil();
        let sites = enumerate_sites(&t);
        let count = |k| sites.iter().filter(|s| s.kind() == k).count();
        assert_eq!(count(MoveKind::R1Plus), 2 * 2 * 4 * t.crossings().len());
        assert_eq!(count(MoveKind::R1Minus), 0);
        // brute-force face census: triangles with a strand over both others
        let tri = t
            .faces()
            .iter()
            .filter(|f| {
                f.corners.len() == 3 && {
                    let o = |i: usize, s: usize| {
                        let k = f.corners[i];
                        t.crossing(k.crossing).is_over(k.slot + s)
                    };
                    (o(0, 0) && o(1, 1)) || (o(0, 1) && o(2, 0)) || (o(1, 0) && o(2, 1))
                }
            })
            .count();
        assert_eq!(count(MoveKind::R3), tri);
        assert_eq!(count(MoveKind::R3), 0, "the alternating trefoil has no R3 site");
        assert_eq!(sites_of_kind(&fixtures::unknot_curl(), MoveKind::R1Minus).len(), 0);
    }

    #[test]
    fn every_site_applies_and_keeps_the_surface() {
        for d in fixtures::all() {
            for s in enumerate_sites(&d) {
                let out = apply_move(&d, &s).unwrap_or_else(|e| panic!("{}: {s}: {e}", d.name()));
                assert_eq!(out.genus(), d.genus());
                let dv = out.crossings().len() as i64 - d.crossings().len() as i64;
                let df = out.faces().len() as i64 - d.faces().len() as i64;
                assert_eq!(dv, df, "{}: {s}", d.name());
                let expect = match s.kind() {
                    MoveKind::R1Plus => 1,
                    MoveKind::R1Minus => -1,
                    MoveKind::R2Plus => 2,
                    MoveKind::R2Minus => -2,
                    MoveKind::R3 => 0,
                };
                assert_eq!(dv, expect);
            }
        }
    }

    #[test]
    fn curls_undo() {
        for d in fixtures::all() {
            for s in sites_of_kind(&d, MoveKind::R1Plus) {
                let up = apply_move(&d, &s).unwrap();
                let downs = sites_of_kind(&up, MoveKind::R1Minus);
                assert!(!downs.is_empty());
                let back = downs.iter().any(|t| isomorphic(&apply_move(&up, t).unwrap(), &d));
                assert!(back, "{}: {s}", d.name());
            }
        }
    }

    #[test]
    fn fingers_undo() {
        for d in fixtures::all() {
            for s in sites_of_kind(&d, MoveKind::R2Plus) {
                let up = apply_move(&d, &s).unwrap();
                let back = sites_of_kind(&up, MoveKind::R2Minus)
                    .iter()
                    .any(|t| isomorphic(&apply_move(&up, t).unwrap(), &d));
                assert!(back, "{}: {s}", d.name());
            }
        }
    }

    #[test]
    fn triangle_moves_are_involutions() {
        let mut seen = 0;
        for d in fixtures::all() {
            for s in sites_of_kind(&d, MoveKind::R2Plus).into_iter().take(40) {
                let up = apply_move(&d, &s).unwrap();
                for t in sites_of_kind(&up, MoveKind::R3) {
                    let moved = apply_move(&up, &t).unwrap();
                    let back = sites_of_kind(&moved, MoveKind::R3)
                        .iter()
                        .any(|u| isomorphic(&apply_move(&moved, u).unwrap(), &up));
                    assert!(back, "{}: {s} then {t}", d.name());
                    seen += 1;
                }
            }
        }
        assert!(seen > 0, "no R3 site reached");
    }

    #[test]
    fn isomorphism_ignores_ids_and_gauge() {
        let d = fixtures::theta1();
        assert!(isomorphic(&d, &d.clone().with_name("other")));
        assert!(!isomorphic(&d, &fixtures::theta2()));
        let t = fixtures::trefoil();
        assert!(isomorphic(&t, &t.flip()), "seen from below the trefoil diagram is itself");
        let mirror: Vec<Crossing> =
            t.crossings().iter().map(|c| Crossing { over: 1 - c.over, ..c.clone() }).collect();
        let mirror = SurfaceDiagram::new("m", mirror, t.edges().to_vec(), None).unwrap();
        assert!(!isomorphic(&t, &mirror));
        // relabel by a coboundary at crossing 0
        let mut edges = d.edges().to_vec();
        for s in 0..4 {
            let dt = d.dart(0, s);
            let sign = if dt.end == 0 { -1 } else { 1 };
            edges[dt.edge].label[0] += sign;
        }
        let shifted = SurfaceDiagram::new("g", d.crossings().to_vec(), edges, None).unwrap();
        assert!(isomorphic(&d, &shifted));
    }

    #[test]
    fn fuzz_is_reproducible() {
        let d = fixtures::hopf();
        let a = fuzz(&d, 5, 5, 7).unwrap();
        let b = fuzz(&d, 5, 5, 7).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.moves, y.moves);
            assert_eq!(x.result, y.result);
        }
    }

    #[test]
    fn bad_sites_are_rejected() {
        let t = fixtures::trefoil();
        assert!(matches!(apply_move(&t, &MoveSite::R1Minus { face: 0 }), Err(Error::InapplicableSite(_))));
        assert!(matches!(apply_move(&t, &MoveSite::R3 { face: 99 }), Err(Error::InapplicableSite(_))));
        assert!(apply_move(&fixtures::unknot_curl(), &MoveSite::R1Minus { face: 0 }).is_err());
    }
}
