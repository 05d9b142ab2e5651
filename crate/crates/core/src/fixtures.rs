//! Shipped example diagrams and the recipes that produce them.

use crate::diagram::{from_pd, medial, Crossing, Dart, Edge, RibbonEdge, RibbonGraph, SurfaceDiagram};

pub const NAMES: [&str; 8] =
    ["trefoil", "figure8", "hopf", "theta1", "theta2", "theta3", "curl-torus", "unknot-curl"];

/// Fixture file contents by name.
pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "trefoil" => include_str!("../fixtures/trefoil.json"),
        "figure8" => include_str!("../fixtures/figure8.json"),
        "hopf" => include_str!("../fixtures/hopf.json"),
        "theta1" => include_str!("../fixtures/theta1.json"),
        "theta2" => include_str!("../fixtures/theta2.json"),
        "theta3" => include_str!("../fixtures/theta3.json"),
        "curl-torus" => include_str!("../fixtures/curl-torus.json"),
        "unknot-curl" => include_str!("../fixtures/unknot-curl.json"),
        _ => return None,
    })
}

pub fn load(name: &str) -> SurfaceDiagram {
    let text = source(name).unwrap_or_else(|| panic!("no fixture named {name}"));
    SurfaceDiagram::from_json(text).expect("shipped fixtures are valid")
}

pub fn all() -> Vec<SurfaceDiagram> {
    NAMES.iter().map(|n| load(n)).collect()
}

pub fn trefoil() -> SurfaceDiagram {
    load("trefoil")
}

pub fn figure8() -> SurfaceDiagram {
    load("figure8")
}

pub fn hopf() -> SurfaceDiagram {
    load("hopf")
}

pub fn theta1() -> SurfaceDiagram {
    load("theta1")
}

pub fn theta2() -> SurfaceDiagram {
    load("theta2")
}

pub fn theta3() -> SurfaceDiagram {
    load("theta3")
}

pub fn curl_torus() -> SurfaceDiagram {
    load("curl-torus")
}

pub fn unknot_curl() -> SurfaceDiagram {
    load("unknot-curl")
}

fn dart(e: usize, end: u8) -> Dart {
    Dart::new(e, end)
}

fn unlabeled(n: usize) -> Vec<Edge> {
    (0..n).map(|i| Edge { id: i as u64 + 1, label: vec![] }).collect()
}

/// Rebuild a fixture from its recipe.
pub fn build(name: &str) -> Option<SurfaceDiagram> {
    let d = match name {
        // arcs a, b, c meet at crossings whose relations read
        // a b = c a, b c = a b, c a = b c
        "trefoil" => {
            let x = |id, ds: [(usize, u8); 4]| Crossing {
                id,
                cyclic: ds.map(|(e, end)| dart(e - 1, end)),
                over: 0,
            };
            let crossings = vec![
                x(1, [(2, 0), (3, 0), (1, 1), (6, 1)]),
                x(2, [(4, 0), (5, 0), (3, 1), (2, 1)]),
                x(3, [(6, 0), (1, 0), (5, 1), (4, 1)]),
            ];
            SurfaceDiagram::new("trefoil", crossings, unlabeled(6), None)
        }
        "figure8" => from_pd("figure8", &[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]),
        "hopf" => from_pd("hopf", &[[4, 1, 3, 2], [2, 3, 1, 4]]),
        "theta1" => medial("theta1", &theta_graph(0)),
        "theta2" => medial("theta2", &theta_graph(1)),
        "theta3" => medial("theta3", &theta_graph(2)),
        // two loops through one crossing, one around each handle
        "curl-torus" => {
            let crossings = vec![Crossing {
                id: 0,
                cyclic: [dart(0, 0), dart(1, 0), dart(0, 1), dart(1, 1)],
                over: 0,
            }];
            let edges =
                vec![Edge { id: 1, label: vec![1, 0] }, Edge { id: 2, label: vec![0, 1] }];
            SurfaceDiagram::new("curl-torus", crossings, edges, None)
        }
        "unknot-curl" => {
            let crossings = vec![Crossing {
                id: 0,
                cyclic: [dart(0, 0), dart(0, 1), dart(1, 1), dart(1, 0)],
                over: 0,
            }];
            SurfaceDiagram::new("unknot-curl", crossings, unlabeled(2), None)
        }
        _ => return None,
    };
    Some(d.expect("fixture recipes are valid"))
}

/// Theta graph on the torus: three edges from `v1` to `v2` with labels
/// `1`, `x^-1`, `y^-1`, all of weight `+1` except edge `negative`.
fn theta_graph(negative: usize) -> RibbonGraph {
    let labels = [vec![0, 0], vec![-1, 0], vec![0, -1]];
    let edges = labels
        .iter()
        .enumerate()
        .map(|(i, l)| RibbonEdge {
            tail: 0,
            head: 1,
            weight: if i == negative { -1 } else { 1 },
            label: l.clone(),
        })
        .collect();
    RibbonGraph {
        vertices: 2,
        edges,
        rotation: vec![vec![(1, 0), (2, 0), (0, 0)], vec![(1, 1), (2, 1), (0, 1)]],
    }
}
