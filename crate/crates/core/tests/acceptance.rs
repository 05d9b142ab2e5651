//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact (zero tolerance); polynomial comparisons are after unit
//! normalization where stated.

use std::collections::BTreeMap;
use std::process::ExitCode;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tli_core::coloring::{brute_force_colorings, coloring_group, coloring_system, module_order};
use tli_core::fixtures;
use tli_core::fox::{fox_derivative, jacobian, specialize, GroupRingElement, Specialization};
use tli_core::group::{
    dehn, derivative_map_edges, quotient_presentation, same_up_to_renaming, surface_relators_edges,
    wirtinger, Letter,
};
use tli_core::invariants::invariant_block;
use tli_core::reidemeister::fuzz;
use tli_core::tait::{
    dual_tait, elimination_matches, laplacian, laplacian_group, laplacian_polynomial, tait_graph,
};
use tli_core::{LaurentMatrix, LaurentPoly, Presentation, Word};

/// Fuzz parameters for criterion 9.
const FUZZ_SEQUENCES: usize = 100;
const FUZZ_MAX_LEN: usize = 5;
const FUZZ_SEED: u64 = 20240917;
/// Fox identity sample for criterion 10.
const FOX_WORDS: usize = 500;
const FOX_MAX_LEN: usize = 12;
const FOX_GENERATORS: usize = 4;
/// Criterion 6: primes and region limit.
const PRIMES: [u64; 3] = [2, 3, 5];
const MAX_REGIONS: usize = 8;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn poly(s: &str, nvars: usize) -> LaurentPoly {
    LaurentPoly::parse(s, nvars).expect("literal polynomial")
}

fn gre(s: &str) -> GroupRingElement {
    GroupRingElement::parse(s).expect("literal group ring element")
}

fn trefoil_golden() -> Check {
    let d = fixtures::trefoil();
    let p = wirtinger(&d);
    let printed = Presentation::parse("<a, b, c | a b = c a, b c = a b, c a = b c>").map_err(err)?;
    ensure(same_up_to_renaming(&p, &printed), format!("wirtinger gave {p}"))?;
    let j = jacobian(&p);
    let jp = [["1 - c", "a", "-1"], ["-1", "1 - a", "b"], ["c", "-1", "1 - b"]];
    for (r, row) in jp.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            ensure(j[(r, c)] == gre(cell), format!("J[{r}][{c}] = {}", j[(r, c)]))?;
        }
    }
    let jt = specialize(&j, &Specialization::to_t(&p.generators)).map_err(err)?;
    let printed_t = LaurentMatrix::parse_rows(
        &[&["1 - t", "t", "-1"], &["-1", "1 - t", "t"], &["t", "-1", "1 - t"]],
        1,
    )
    .map_err(err)?;
    ensure(jt == printed_t, "specialization to t")?;
    let jn = specialize(&j, &Specialization::to_minus_one(&p.generators)).map_err(err)?;
    let at = printed_t.map(|e| e.substitute_units(&[LaurentPoly::constant(0, -1)], 0));
    ensure(jn == at, "specialization to -1")?;
    Ok("wirtinger, J, J^t and J at t=-1 exact".into())
}

fn theta_example() -> Check {
    let d = fixtures::theta1();
    let pw = wirtinger(&d);
    let printed = Presentation::parse("<a, b, c, d | a b = b a, a c = d a, b c = d b>").map_err(err)?;
    ensure(same_up_to_renaming(&pw, &printed), format!("wirtinger gave {pw}"))?;
    let dp = dehn(&d, true);
    ensure(dp.abelianization().cokernel().to_string() == "Z", "dehn abelianization")?;
    let s = dp.tietze_simplify();
    ensure(s.generators.len() == 1 && s.relations.is_empty(), format!("tietze reached {s}"))?;

    let sh = d.checkerboard_shade().map_err(err)?;
    let g = tait_graph(&d, &sh).map_err(err)?;
    ensure(g.faces.len() == 2, "two tait vertices")?;
    let mut inc: Vec<(i8, Vec<i64>)> = g
        .edges
        .iter()
        .map(|e| if e.from == 0 { e.clone() } else { e.reversed() })
        .map(|e| (e.weight, e.label))
        .collect();
    inc.sort();
    ensure(
        inc == vec![(-1, vec![0, 0]), (1, vec![-1, 0]), (1, vec![0, -1])],
        format!("tait incidences {inc:?}"),
    )?;
    let l = laplacian(&g).laurent;
    let printed_l =
        LaurentMatrix::parse_rows(&[&["1", "1 - x^-1 - y^-1"], &["1 - x - y", "1"]], 2).map_err(err)?;
    ensure(l == printed_l, format!("laplacian\n{l}"))?;

    let dg = laplacian_polynomial(&laplacian(&g)).map_err(err)?;
    let dgs = laplacian_polynomial(&laplacian(&dual_tait(&d, &sh).map_err(err)?)).map_err(err)?;
    let d0 = module_order(&coloring_system(&d, &sh).map_err(err)?).map_err(err)?;
    ensure(dg == dgs && dg == d0, format!("D_G = {dg}, D_G* = {dgs}, D_0 = {d0}"))?;

    let printed_det = printed_l.determinant().map_err(err)?.unit_normalize();
    ensure(dg == printed_det, "common value differs from the printed matrix determinant")?;
    let printed_d0 = poly("2 - x - x^-1 + y + y^-1 - x*y^-1 - x^-1*y", 2).unit_normalize();
    let neg_y = [poly("x", 2), poly("-y", 2)];
    let relation = if dg == printed_d0 {
        "equals the printed module order"
    } else if dg == printed_d0.substitute_units(&neg_y, 2).unit_normalize() {
        "equals the printed module order only after y -> -y"
    } else {
        "matches neither printed polynomial's y sign"
    };
    Ok(format!("common value {dg}: equals det of printed matrix; {relation}"))
}

fn quotient_vs_dehn() -> Check {
    for d in fixtures::all() {
        let q = quotient_presentation(&d).map_err(err)?.abelianization().cokernel();
        let with = dehn(&d, true).abelianization().cokernel();
        let without = dehn(&d, false).abelianization().cokernel();
        ensure(q == with, format!("{}: quotient {q} vs dehn {with}", d.name()))?;
        ensure(
            without.free_rank == with.free_rank + 1 && without.torsion == with.torsion,
            format!("{}: no-base {without} vs {with}", d.name()),
        )?;
    }
    Ok(format!("{} fixtures", fixtures::NAMES.len()))
}

fn kernel_lemma() -> Check {
    let mut n = 0;
    for d in fixtures::all().into_iter().filter(|d| d.genus() >= 1) {
        for r in surface_relators_edges(&d).map_err(err)? {
            let img = derivative_map_edges(&d, &r).free_reduce();
            ensure(img.is_empty(), format!("{}: image {img}", d.name()))?;
            n += 1;
        }
    }
    Ok(format!("{n} surface relators map to the empty word"))
}

/// Invariant factors from determinantal divisors: `d_k = g_k / g_(k-1)`
/// with `g_k` the gcd of all `k x k` minors, minors by cofactor expansion.
fn hand_invariant_factors(m: &[Vec<i64>]) -> Vec<i64> {
    fn det(m: &[Vec<i64>]) -> i64 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
            s.push(last);
            s
        }))
        .collect()
    }
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let (r, c) = (m.len(), m.first().map_or(0, |x| x.len()));
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=r.min(c) {
        let mut g = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i64>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn genus_zero_laplacian_groups() -> Check {
    let mut notes = Vec::new();
    for (name, torsion) in [("trefoil", "3"), ("figure8", "5"), ("hopf", "2")] {
        let d = fixtures::load(name);
        let sh = d.checkerboard_shade().map_err(err)?;
        let a = laplacian(&tait_graph(&d, &sh).map_err(err)?);
        let b = laplacian(&dual_tait(&d, &sh).map_err(err)?);
        let (ga, gb) = (laplacian_group(&a), laplacian_group(&b));
        ensure(ga.cokernel() == gb.cokernel(), format!("{name}: {} vs {}", ga.cokernel(), gb.cokernel()))?;
        for ld in [&a, &b] {
            let rows: Vec<Vec<i64>> = ld
                .int
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| i64::try_from(x).expect("small")).collect())
                .collect();
            let hand: Vec<String> =
                hand_invariant_factors(&rows).into_iter().filter(|&x| x > 1).map(|x| x.to_string()).collect();
            ensure(hand == vec![torsion.to_string()], format!("{name}: hand oracle gives {hand:?}"))?;
            ensure(laplacian_group(ld).cokernel().torsion == hand, format!("{name}: snf vs hand oracle"))?;
        }
        notes.push(format!("{name} Z + Z/{torsion}"));
    }
    Ok(notes.join(", "))
}

fn coloring_oracle() -> Check {
    let mut n = 0;
    for d in fixtures::all() {
        let Ok(sh) = d.checkerboard_shade() else { continue };
        if d.faces().len() > MAX_REGIONS {
            continue;
        }
        let cs = coloring_system(&d, &sh).map_err(err)?;
        let snf = coloring_group(&cs);
        for p in PRIMES {
            let brute = BigInt::from(brute_force_colorings(&cs, p).map_err(err)?);
            let formula = snf.count_mod_p(p);
            ensure(brute == formula, format!("{} mod {p}: {brute} vs {formula}", d.name()))?;
            n += 1;
        }
    }
    Ok(format!("{n} (fixture, prime) pairs"))
}

fn vertex_elimination() -> Check {
    let mut n = 0;
    for d in fixtures::all() {
        let Ok(sh) = d.checkerboard_shade() else { continue };
        for s in [sh.clone(), sh.complement()] {
            ensure(elimination_matches(&d, &s).map_err(err)?, format!("{}", d.name()))?;
            n += 1;
        }
    }
    Ok(format!("{n} shaded diagrams, every vertex row"))
}

fn theta_variants_distinct() -> Check {
    let polys: Vec<LaurentPoly> = ["theta1", "theta2", "theta3"]
        .iter()
        .map(|n| {
            let d = fixtures::load(n);
            let sh = d.checkerboard_shade().map_err(err)?;
            laplacian_polynomial(&laplacian(&tait_graph(&d, &sh).map_err(err)?)).map_err(err)
        })
        .collect::<Result<_, _>>()?;
    for i in 0..3 {
        for j in i + 1..3 {
            ensure(polys[i] != polys[j], format!("theta{} and theta{} agree", i + 1, j + 1))?;
        }
    }
    Ok(polys.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" | "))
}

fn reidemeister_fuzz() -> Check {
    let mut total = 0;
    for d in fixtures::all() {
        let before = invariant_block(&d).map_err(err)?;
        for (i, run) in fuzz(&d, FUZZ_SEQUENCES, FUZZ_MAX_LEN, FUZZ_SEED).map_err(err)?.iter().enumerate() {
            let after = invariant_block(&run.result).map_err(err)?;
            let moves: Vec<String> = run.moves.iter().map(|m| m.to_string()).collect();
            ensure(before == after, format!("{} sequence {i} ({}) changed the block", d.name(), moves.join("; ")))?;
            total += 1;
        }
    }
    Ok(format!("{total} sequences, seed {FUZZ_SEED}"))
}

fn fox_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED);
    let gens: Vec<String> = ["a", "b", "c", "d"][..FOX_GENERATORS].iter().map(|s| s.to_string()).collect();
    let one = GroupRingElement::one();
    for _ in 0..FOX_WORDS {
        let len = rng.gen_range(0..=FOX_MAX_LEN);
        let w = Word(
            (0..len)
                .map(|_| {
                    let g = gens[rng.gen_range(0..gens.len())].clone();
                    Letter::new(g, if rng.gen_bool(0.5) { 1 } else { -1 })
                })
                .collect(),
        );
        let mut sum = GroupRingElement::zero();
        for g in &gens {
            let gm1 = GroupRingElement::word(Word::gen(g.clone())).sub(&one);
            sum = sum.add(&fox_derivative(&w, g).mul(&gm1));
        }
        let rhs = GroupRingElement::word(w.clone()).sub(&one);
        ensure(sum == rhs, format!("identity fails on {w}"))?;
    }
    Ok(format!("{FOX_WORDS} words"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("1 trefoil golden", trefoil_golden),
        ("2 theta example end to end", theta_example),
        ("3 quotient equals dehn", quotient_vs_dehn),
        ("4 surface relators in the kernel", kernel_lemma),
        ("5 genus-zero laplacian groups", genus_zero_laplacian_groups),
        ("6 coloring oracle", coloring_oracle),
        ("7 vertex elimination", vertex_elimination),
        ("8 theta variants distinct", theta_variants_distinct),
        ("9 reidemeister fuzz", reidemeister_fuzz),
        ("10 fox identity", fox_identity),
    ];
    let mut failed = 0;
    let mut report = BTreeMap::new();
    for (name, f) in criteria {
        let t = std::time::Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} ({secs:.2}s)");
            }
        }
        report.insert(name, outcome.is_ok());
    }
    println!("acceptance: {} passed, {failed} failed", report.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
