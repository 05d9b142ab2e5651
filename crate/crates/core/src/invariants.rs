//! The block of invariants compared across Reidemeister moves.

use serde::Serialize;

use crate::coloring::{coloring_group, coloring_system, module_order};
use crate::diagram::SurfaceDiagram;
use crate::error::Result;
use crate::group::{dehn, quotient_presentation, wirtinger};
use crate::laurent::var_names;
use crate::smith::Cokernel;
use crate::tait::{dual_tait, laplacian, laplacian_polynomial, tait_graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantBlock {
    pub genus: usize,
    pub shadable: bool,
    pub wirtinger: Cokernel,
    pub dehn: Cokernel,
    pub quotient: Cokernel,
    pub coloring: Option<Cokernel>,
    /// Unit-normalized Laplacian polynomials of both Tait graphs, sorted.
    pub laplacian_pair: Option<[String; 2]>,
    pub module_order: Option<String>,
}

pub fn invariant_block(d: &SurfaceDiagram) -> Result<InvariantBlock> {
    let names = var_names(d.nvars());
    let shading = d.checkerboard_shade().ok();
    let mut block = InvariantBlock {
        genus: d.genus(),
        shadable: shading.is_some(),
        wirtinger: wirtinger(d).abelianization().cokernel(),
        dehn: dehn(d, true).abelianization().cokernel(),
        quotient: quotient_presentation(d)?.abelianization().cokernel(),
        coloring: None,
        laplacian_pair: None,
        module_order: None,
    };
    if let Some(sh) = shading {
        let cs = coloring_system(d, &sh)?;
        block.coloring = Some(coloring_group(&cs).cokernel());
        block.module_order = Some(module_order(&cs)?.to_string_with(&names));
        let g = laplacian_polynomial(&laplacian(&tait_graph(d, &sh)?))?.to_string_with(&names);
        let h = laplacian_polynomial(&laplacian(&dual_tait(d, &sh)?))?.to_string_with(&names);
        let mut pair = [g, h];
        pair.sort();
        block.laplacian_pair = Some(pair);
    }
    Ok(block)
}

/// Names of the entries in which two blocks differ.
pub fn differences(a: &InvariantBlock, b: &InvariantBlock) -> Vec<&'static str> {
    let mut out = Vec::new();
    if a.genus != b.genus {
        out.push("genus");
    }
    if a.shadable != b.shadable {
        out.push("shadable");
    }
    if a.wirtinger != b.wirtinger {
        out.push("wirtinger abelianization");
    }
    if a.dehn != b.dehn {
        out.push("dehn abelianization");
    }
    if a.quotient != b.quotient {
        out.push("quotient abelianization");
    }
    if a.coloring != b.coloring {
        out.push("coloring group");
    }
    if a.laplacian_pair != b.laplacian_pair {
        out.push("laplacian polynomials");
    }
    if a.module_order != b.module_order {
        out.push("module order");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::reidemeister::fuzz;

    #[test]
    fn blocks_of_the_fixtures() {
        let t = invariant_block(&fixtures::trefoil()).unwrap();
        assert_eq!(t.wirtinger.to_string(), "Z");
        assert_eq!(t.coloring.unwrap().to_string(), "Z^2 + Z/3");
        let c = invariant_block(&fixtures::curl_torus()).unwrap();
        assert!(!c.shadable && c.laplacian_pair.is_none());
        let th: Vec<_> = ["theta1", "theta2", "theta3"]
            .iter()
            .map(|n| invariant_block(&fixtures::load(n)).unwrap())
            .collect();
        assert_ne!(differences(&th[0], &th[1]), Vec::<&str>::new());
        assert!(differences(&th[0], &th[0]).is_empty());
    }

    #[test]
    fn short_fuzz_keeps_the_block() {
        for d in fixtures::all() {
            let before = invariant_block(&d).unwrap();
            for run in fuzz(&d, 6, 3, 11).unwrap() {
                let after = invariant_block(&run.result).unwrap();
                assert_eq!(before, after, "{} after {:?}", d.name(), run.moves);
            }
        }
    }
}
