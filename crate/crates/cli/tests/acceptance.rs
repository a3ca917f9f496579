//! Acceptance suite: every check is exact, with zero tolerance. Prints one
//! line per criterion and exits nonzero if any fails.

use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;

use dehnsom::generators::{
    catalog, circle_join, face_poset, generate_str, random_graded_poset, random_pure_complex, torus_7, Generated,
};
use dehnsom::io::parse_any;
use dehnsom::poly::binomial;
use dehnsom::poset::GradedPoset;
use dehnsom::report::{Quantity, VerificationReport};
use dehnsom::toric::{
    c_weighted_defect, defect_sequence, dual_defect_report, lower_eulerian_defect, toric_pair, verify_1sing,
    verify_generalized, verify_pascal, verify_vertex_link_relation,
};
use dehnsom::{ColorSet, SimplicialComplex};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sign(n: i64) -> BigInt {
    BigInt::from(if n.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn passed(report: &VerificationReport, what: &str) -> Result<(), String> {
    if report.pass {
        Ok(())
    } else {
        Err(format!("{what}: {} failed\n{}", report.identity, report.to_table()))
    }
}

fn int(q: &Quantity) -> BigInt {
    match q {
        Quantity::Int(n) => n.clone(),
        other => panic!("expected an integer, got {other}"),
    }
}

/// The random pure complexes behind criteria 2 and 4: dimension up to 4,
/// at most 12 vertices.
fn random_complex_corpus() -> Vec<(String, SimplicialComplex)> {
    (0..200u64)
        .map(|seed| {
            let d = 1 + (seed % 5) as usize;
            let n = (d + 1 + (seed as usize * 7) % (12 - d)).min(12);
            let density = 0.2 + 0.1 * (seed % 5) as f64;
            let c = random_pure_complex(d, n, density, seed).expect("valid parameters");
            (format!("random_pure_complex({d},{n},{density},{seed})"), c)
        })
        .collect()
}

fn random_poset_corpus(count: u64) -> Vec<(String, GradedPoset)> {
    (0..count)
        .map(|seed| {
            let rank = 1 + (seed % 6) as usize;
            let density = 0.3 + 0.1 * (seed % 5) as f64;
            let p = random_graded_poset(rank, density, seed).expect("valid parameters");
            (format!("random_graded_poset({rank},{density},{seed})"), p)
        })
        .collect()
}

/// Every catalog poset, plus the face poset (with a top) of every catalog complex.
fn catalog_posets() -> Vec<(String, GradedPoset)> {
    catalog()
        .iter()
        .map(|entry| {
            let object = generate_str(entry.spec).expect("catalog builds");
            match object {
                Generated::Poset(p) => (entry.spec.to_owned(), p),
                other => {
                    let c = other.complex().expect("complex");
                    (
                        format!("face_poset({})", entry.spec),
                        face_poset(c, true).expect("face poset"),
                    )
                }
            }
        })
        .collect()
}

fn catalog_balanced() -> Vec<(String, dehnsom::balanced::BalancedComplex)> {
    let mut specs: Vec<String> = (1..=5)
        .map(|n| format!("order_complex(boolean_lattice({n}))"))
        .collect();
    specs.extend(["torus_7", "rp2_6", "cross_polytope(3)"].map(|x| format!("order_complex(face_poset({x}))")));
    specs.extend(catalog().iter().map(|e| e.spec.to_owned()));
    specs.sort();
    specs.dedup();
    specs
        .into_iter()
        .filter_map(|spec| match generate_str(&spec).expect("builds") {
            Generated::Balanced(b) => Some((spec, b)),
            _ => None,
        })
        .collect()
}

fn torus_closed_case() -> Outcome {
    let torus = torus_7();
    let h = torus.h_vector();
    let expected: Vec<BigInt> = [1, 4, 10, -1].map(BigInt::from).to_vec();
    ensure!(h.entries == expected, "h = {:?}", h.entries);
    let report = torus.verify_pure_ds().map_err(|e| e.to_string())?;
    passed(&report, "torus_7")?;
    for j in 0..=3i64 {
        let closed = sign(j) * binomial(3, j) * BigInt::from(-2);
        let row = &report.per_index[j as usize];
        ensure!(
            int(&row.lhs) == closed && int(&row.rhs) == closed,
            "j={j}: {row:?} vs {closed}"
        );
    }
    Ok("h = (1,4,10,-1); closed form matches both sides for j = 0..3".into())
}

fn random_complex_ds() -> Outcome {
    let corpus = random_complex_corpus();
    for (name, c) in &corpus {
        passed(&c.verify_pure_ds().map_err(|e| format!("{name}: {e}"))?, name)?;
    }
    Ok(format!("{} complexes, all residuals 0", corpus.len()))
}

fn circle_join_closed_form() -> Outcome {
    let torus = torus_7();
    for n in 3..=6i64 {
        let c = circle_join(n as usize, &torus);
        let h = c.h_vector();
        ensure!(h.d() == 5, "d = {}", h.d());
        for j in 0..=5 {
            let lhs = h.get(5 - j) - h.get(j);
            let rhs = sign(j) * BigInt::from(-2) * (binomial(5, j) - BigInt::from(n) * binomial(3, j - 1));
            ensure!(lhs == rhs, "n={n} j={j}: {lhs} vs {rhs}");
        }
        passed(&c.verify_pure_ds().map_err(|e| e.to_string())?, "circle_join")?;
    }
    Ok("n = 3..6, j = 0..5".into())
}

fn short_h_identity() -> Outcome {
    let corpus = random_complex_corpus();
    for (name, c) in &corpus {
        passed(&c.verify_short_h().map_err(|e| format!("{name}: {e}"))?, name)?;
    }
    Ok(format!("{} complexes", corpus.len()))
}

fn simplicial_poset_ds() -> Outcome {
    let mut count = 0;
    for entry in catalog() {
        if let Some(c) = generate_str(entry.spec).expect("builds").complex() {
            let p = face_poset(c, true).map_err(|e| e.to_string())?;
            passed(
                &p.verify_simplicial_ds().map_err(|e| format!("{}: {e}", entry.spec))?,
                entry.spec,
            )?;
            count += 1;
        }
    }
    let doubled = generate_str("doubled_edge").expect("builds");
    let p = doubled.poset().expect("poset");
    ensure!(p.is_simplicial(), "doubled edge should be simplicial");
    let two_edges_same_vertices = p.elements_of_rank(2).count() == 2 && p.elements_of_rank(1).count() == 2;
    ensure!(two_edges_same_vertices, "doubled edge shape");
    passed(&p.verify_simplicial_ds().map_err(|e| e.to_string())?, "doubled_edge")?;
    Ok(format!("{count} face posets and the doubled edge"))
}

fn balanced_flag_ds() -> Outcome {
    let complexes = catalog_balanced();
    for (name, b) in &complexes {
        let report = b.verify_flag_ds().map_err(|e| format!("{name}: {e}"))?;
        passed(&report, name)?;
        let d = b.d();
        let flag_h = b.flag_h_vector();
        let ds = b.complex().verify_pure_ds().map_err(|e| e.to_string())?;
        for i in 0..=d {
            let summed: BigInt = ColorSet::all(d)
                .filter(|s| s.len() == i)
                .map(|s| flag_h.get(s) - flag_h.get(s.complement(d)))
                .sum();
            let row = &ds.per_index[d - i];
            ensure!(
                int(&row.lhs) == summed && int(&row.rhs) == summed,
                "{name}: rank {i} sum {summed} vs row {row:?}"
            );
        }
    }
    Ok(format!(
        "{} balanced complexes; rank sums reproduce every row",
        complexes.len()
    ))
}

fn chain_and_link_errors() -> Outcome {
    let mut chains = 0usize;
    for (name, p) in catalog_posets().into_iter().filter(|(_, p)| (1..=6).contains(&p.rho())) {
        let oc = p.order_complex().map_err(|e| e.to_string())?;
        let complex = oc.complex();
        let mu = p.mobius(p.bottom(), p.top()).map_err(|e| e.to_string())?;
        ensure!(
            complex.reduced_euler_characteristic() == mu,
            "{name}: reduced Euler characteristic vs mu"
        );
        for chain in p.chains() {
            let face = complex
                .face_of(chain.iter().map(|&x| p.label(x).clone()))
                .map_err(|e| e.to_string())?;
            let chain_error = p.chain_error(&chain).map_err(|e| e.to_string())?;
            let face_error = complex.face_error(&face).map_err(|e| e.to_string())?;
            ensure!(
                chain_error == face_error,
                "{name}: chain {chain:?}: {chain_error} vs {face_error}"
            );
            let link = complex.link(&face).map_err(|e| e.to_string())?;
            ensure!(
                p.chain_link_euler(&chain).map_err(|e| e.to_string())? == link.reduced_euler_characteristic(),
                "{name}: link Euler characteristic of {chain:?}"
            );
            chains += 1;
        }
    }
    Ok(format!("{chains} chains"))
}

fn stanley_symmetry() -> Outcome {
    let mut specs: Vec<String> = (1..=6).map(|n| format!("boolean_lattice({n})")).collect();
    specs.extend((3..=8).map(|n| format!("polygon_lattice({n})")));
    specs.extend((1..=4).map(|n| format!("face_poset(simplex_boundary({n}))")));
    specs.extend((2..=4).map(|n| format!("face_poset(cross_polytope({n}))")));
    for spec in &specs {
        let object = generate_str(spec).map_err(|e| e.to_string())?;
        let pair = toric_pair(object.poset().expect("poset")).map_err(|e| e.to_string())?;
        let h = pair.h_vector();
        let reversed: Vec<BigInt> = h.iter().rev().cloned().collect();
        ensure!(h == reversed, "{spec}: {h:?} is not palindromic");
        if let Some(n) = spec.strip_prefix("polygon_lattice(").and_then(|s| s.strip_suffix(')')) {
            let n: i64 = n.parse().expect("number");
            let expected: Vec<BigInt> = [1, n - 2, 1].map(BigInt::from).to_vec();
            ensure!(h == expected, "{spec}: {h:?}");
        }
    }
    Ok(format!("{} posets", specs.len()))
}

fn semi_eulerian_defects() -> Outcome {
    let p = face_poset(&torus_7(), true).map_err(|e| e.to_string())?;
    let seq = defect_sequence(&p).map_err(|e| e.to_string())?;
    let e = p.interval_error(p.bottom(), p.top()).map_err(|e| e.to_string())?;
    ensure!(e == BigInt::from(-2), "e = {e}");
    for k in 0..=3 {
        let expected = sign(4 - k) * binomial(3, k) * BigInt::from(-2);
        ensure!(seq.get(k) == expected, "A_{k} = {} vs {expected}", seq.get(k));
    }
    // The constant defect carries the sign (-1)^{d+1}; with (-1)^d it would
    // contradict the k = 0 case just checked.
    ensure!(seq.get(0) == sign(4) * &e, "A_0 = {}", seq.get(0));
    let corpus = random_poset_corpus(100);
    for (name, p) in &corpus {
        let seq = defect_sequence(p).map_err(|e| format!("{name}: {e}"))?;
        let e = p.interval_error(p.bottom(), p.top()).map_err(|e| e.to_string())?;
        ensure!(
            seq.get(0) == sign(seq.d + 1) * &e,
            "{name}: A_0 = {} e = {e}",
            seq.get(0)
        );
    }
    Ok("torus defects match; A_0 = (-1)^(d+1) e on 100 random posets".into())
}

fn isolated_singularities() -> Outcome {
    let p = generate_str("face_poset(suspension(torus_7))").map_err(|e| e.to_string())?;
    let p = p.poset().expect("poset");
    let class = p.classify();
    ensure!(class.min_j_sing == 1 && !class.semi_eulerian, "{class:?}");
    passed(&verify_1sing(p).map_err(|e| e.to_string())?, "1sing")?;
    passed(
        &verify_vertex_link_relation(p).map_err(|e| e.to_string())?,
        "vertex link",
    )?;
    Ok("1-Sing, not semi-Eulerian, both relations hold".into())
}

fn generalized_identity() -> Outcome {
    let mut posets = catalog_posets();
    posets.extend(random_poset_corpus(50));
    for (name, p) in &posets {
        passed(&verify_generalized(p).map_err(|e| format!("{name}: {e}"))?, name)?;
    }
    Ok(format!("{} posets", posets.len()))
}

fn three_way_agreement() -> Outcome {
    let posets = catalog_posets();
    let mut cells = 0;
    let mut checked = 0;
    for (name, p) in &posets {
        passed(&verify_pascal(p, 10).map_err(|e| format!("{name}: {e}"))?, name)?;
        let class = p.classify();
        let (d, j) = (p.d(), class.min_j_sing);
        if !class.lower_eulerian || d <= 2 * j {
            continue;
        }
        checked += 1;
        let seq = defect_sequence(p).map_err(|e| e.to_string())?;
        for k in (0..=d).filter(|&k| 2 * k > d + j) {
            let c_sum = c_weighted_defect(p, j, k).map_err(|e| e.to_string())?;
            let g_form = lower_eulerian_defect(p, k).map_err(|e| e.to_string())?;
            ensure!(
                seq.get(k) == c_sum && c_sum == g_form,
                "{name} k={k}: {} / {c_sum} / {g_form}",
                seq.get(k)
            );
            cells += 1;
        }
    }
    ensure!(checked > 0, "no lower-Eulerian poset with d > 2j");
    Ok(format!(
        "{checked} posets, {cells} indices; recurrence on {} posets",
        posets.len()
    ))
}

fn duality() -> Outcome {
    let p = generate_str("face_poset(suspension(torus_7))").map_err(|e| e.to_string())?;
    let report = dual_defect_report(p.poset().expect("poset")).map_err(|e| e.to_string())?;
    passed(&report, "dual")?;
    ensure!(
        report.asserted_rows().any(|r| r.index.starts_with("difference")),
        "no asserted duality rows"
    );
    let posets = catalog_posets();
    for (name, p) in &posets {
        ensure!(
            p.min_j_sing() == p.dual().min_j_sing(),
            "{name}: singularity degree changes under duality"
        );
    }
    Ok(format!("duality residuals 0; invariance on {} posets", posets.len()))
}

fn singularity_criteria() -> Outcome {
    let mut posets = catalog_posets();
    posets.extend(random_poset_corpus(100));
    for (name, p) in &posets {
        let c = p.j_sing_criteria().map_err(|e| format!("{name}: {e}"))?;
        ensure!(c.recursive == c.flat && c.flat == c.order_complex, "{name}: {c:?}");
        ensure!(c.flat == p.min_j_sing(), "{name}: classification disagrees");
    }
    Ok(format!("{} posets", posets.len()))
}

fn cli_end_to_end() -> Outcome {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_dehnsom");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, entry) in catalog().iter().enumerate() {
        let path = dir.path().join(format!("object{i}"));
        let status = Command::new(bin)
            .args(["generate", entry.spec, "--out"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        ensure!(status.success(), "generate {} exited {status}", entry.spec);
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let reread = parse_any(&text).map_err(|e| format!("{}: {e}", entry.spec))?;
        ensure!(reread.to_text() == text, "{}: canonical form changed", entry.spec);
        let direct = generate_str(entry.spec).map_err(|e| e.to_string())?;
        ensure!(
            direct.to_text() == text,
            "{}: file differs from library output",
            entry.spec
        );
        let status = Command::new(bin)
            .arg("classify")
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(status.status.success(), "classify {} failed", entry.spec);
    }
    let all = Command::new(bin)
        .args(["verify", "all"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        all.status.code() == Some(0),
        "verify all exited {:?}",
        all.status.code()
    );
    let elapsed = start.elapsed();
    ensure!(elapsed.as_secs() < 60, "took {elapsed:?}");
    Ok(format!(
        "{} objects round-trip; verify all exit 0 in {elapsed:.2?}",
        catalog().len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 15] = [
        ("torus closed case", torus_closed_case),
        ("random complex Dehn-Sommerville", random_complex_ds),
        ("circle joins with the torus", circle_join_closed_form),
        ("short h-vector identity", short_h_identity),
        ("simplicial poset Dehn-Sommerville", simplicial_poset_ds),
        ("balanced flag identity and rank refinement", balanced_flag_ds),
        ("chain errors equal link errors", chain_and_link_errors),
        ("toric symmetry for Eulerian posets", stanley_symmetry),
        ("semi-Eulerian toric defects", semi_eulerian_defects),
        ("isolated singularities", isolated_singularities),
        ("generalized polynomial identity", generalized_identity),
        ("lower-Eulerian three-way agreement", three_way_agreement),
        ("duality for isolated singularities", duality),
        ("singularity degree criteria agree", singularity_criteria),
        ("command line round trip", cli_end_to_end),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
