//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use connsum_core::face::Face;
use connsum_core::homology::{is_cohen_macaulay, is_gorenstein, Field};
use connsum_core::polytope::{cut, CutSpec, Inequality, RationalPolytope};
use connsum_core::random::{
    random_full_rank_matrix, random_generic_cut, random_gorenstein_strong_sum, random_pair, random_simple_polytope,
    random_subcomplex, random_valid_z, StrongSumSample,
};
use connsum_core::simplicial::{connected_sum, is_strong_connected_sum, strong_z, strong_z_by_closure, SimplicialComplex};
use connsum_core::stanley_reisner::{
    compare_annihilator, verify_connected_sum_ring, verify_fiber_product, HilbertSeries, SRPresentation,
};
use connsum_core::tor::{euler_check, koszul_tor, SubringSpec, TorTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_c0de;

// criterion 1
const TOR_D_MAX: usize = 10;
const TOR_RUNTIME_LIMIT: Duration = Duration::from_secs(10);
// criterion 2
const RANDOM_CUTS: usize = 100;
const CUT_MAX_DIM: usize = 3;
const CUT_MAX_FACETS: usize = 8;
// criterion 3
const SR_D_MAX: usize = 8;
const SR_PAIRS: usize = 200;
const SR_MAX_VERTICES: usize = 6;
// criterion 4
const ANNIHILATOR_D_MAX: usize = 4;
const ANNIHILATOR_PAIRS: usize = 200;
const ANNIHILATOR_MAX_VERTICES: usize = 6;
// criterion 5
const EXHAUSTIVE_MAX_VERTICES: usize = 5;
/// Pairs `W ⊆ K` of complexes on `m` vertices: nested down-sets of the Boolean
/// lattice containing the empty face, `M(m+1) - M(m) - 1` for Dedekind numbers `M`.
const EXHAUSTIVE_PAIR_COUNTS: [u64; 5] = [3, 14, 148, 7413, 7_820_773];
// criterion 6
const GORENSTEIN_SUMS: usize = 50;
const GORENSTEIN_ATTEMPTS: usize = 2000;
// criterion 7
const EULER_D_MAX: usize = 6;
// criterion 8
const HILBERT_DEGREE: usize = 12;
const HILBERT_PAIRS: usize = 200;
const HILBERT_MAX_VERTICES: usize = 8;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into() }
    }
}

fn tor_table(k: &SimplicialComplex, s: &SubringSpec, d_max: usize) -> TorTable {
    koszul_tor(&SRPresentation::new(k), s, s.n(), d_max).expect("valid Tor input")
}

fn describe_tor1(t: &TorTable) -> String {
    match t.first_nonzero(1) {
        None => "0".into(),
        Some(d) => format!("nonzero from degree {d} ({})", t.get(1, d)),
    }
}

fn square_cut_tor1(tables: &mut Vec<(SimplicialComplex, TorTable)>) -> Verdict {
    let start = Instant::now();
    let s = spec(&example_b());
    let named = [("W", example_w()), ("K1", example_k1()), ("K2", example_k2()), ("K", example_k())];
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, k) in named {
        let t = tor_table(&k, &s, TOR_D_MAX);
        let expect_zero = name != "K";
        let ok = t.vanishes(1) == expect_zero;
        pass &= ok;
        parts.push(format!("Tor1(Z[{name}]) {}{}", describe_tor1(&t), if ok { "" } else { " [unexpected]" }));
        tables.push((k, t));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < TOR_RUNTIME_LIMIT;
    parts.push(format!("{:.2}s", elapsed.as_secs_f64()));
    Verdict::new(pass, parts.join("; "))
}

fn square_fixture() -> (RationalPolytope, CutSpec) {
    let p = RationalPolytope::new(
        2,
        vec![
            Inequality::new(vec![1, 0], 0),
            Inequality::new(vec![0, 1], 0),
            Inequality::new(vec![-1, 0], 2),
            Inequality::new(vec![0, -1], 2),
        ],
    )
    .expect("square");
    (p, CutSpec::new(vec![-1, 1], 1).expect("primitive"))
}

fn polytope_cuts(rng: &mut ChaCha8Rng) -> Verdict {
    let (square, c) = square_fixture();
    let fixture = cut(&square, &c).map(|r| r.checks.all()).unwrap_or(false);
    let mut done = 0;
    let mut failures = 0;
    while done < RANDOM_CUTS {
        let dim = rng.gen_range(1..=CUT_MAX_DIM);
        let p = random_simple_polytope(rng, dim, CUT_MAX_FACETS);
        let Some(c) = random_generic_cut(rng, &p, 50) else { continue };
        done += 1;
        if !cut(&p, &c).map(|r| r.checks.all()).unwrap_or(false) {
            failures += 1;
        }
    }
    Verdict::new(fixture && failures == 0, format!("fixture {}; {failures}/{done} random cuts failed", ok(fixture)))
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "failed"
    }
}

fn sr_exactness(rng: &mut ChaCha8Rng) -> Verdict {
    let fixture = verify_fiber_product(&example_k1(), &example_k2(), SR_D_MAX).map(|r| r.all_exact()).unwrap_or(false)
        && verify_connected_sum_ring(&example_k1(), &example_k2(), &example_z(), SR_D_MAX)
            .map(|r| r.all_hold())
            .unwrap_or(false);
    let mut failures = 0;
    for _ in 0..SR_PAIRS {
        let m = rng.gen_range(2..=SR_MAX_VERTICES);
        let (k1, k2) = random_pair(rng, m);
        let z = random_valid_z(rng, &k1, &k2);
        let fiber = verify_fiber_product(&k1, &k2, SR_D_MAX).map(|r| r.all_exact()).unwrap_or(false);
        let sum = verify_connected_sum_ring(&k1, &k2, &z, SR_D_MAX).map(|r| r.all_hold()).unwrap_or(false);
        if !(fiber && sum) {
            failures += 1;
        }
    }
    Verdict::new(fixture && failures == 0, format!("fixture {}; {failures}/{SR_PAIRS} random pairs failed", ok(fixture)))
}

fn annihilator(rng: &mut ChaCha8Rng) -> Verdict {
    let mut failures = 0;
    for _ in 0..ANNIHILATOR_PAIRS {
        let m = rng.gen_range(1..=ANNIHILATOR_MAX_VERTICES);
        let (k, _) = random_pair(rng, m);
        let w = random_subcomplex(rng, &k);
        if !compare_annihilator(&k, &w, ANNIHILATOR_D_MAX).map(|r| r.agree()).unwrap_or(false) {
            failures += 1;
        }
    }
    Verdict::new(failures == 0, format!("{failures}/{ANNIHILATOR_PAIRS} pairs disagreed"))
}

/// Every downward-closed family among `candidates`, which must be ordered by size.
fn downsets(candidates: &[Face], mut visit: impl FnMut(&[Face])) {
    fn rec(i: usize, candidates: &[Face], chosen: &mut Vec<Face>, visit: &mut dyn FnMut(&[Face])) {
        if i == candidates.len() {
            visit(chosen);
            return;
        }
        let f = candidates[i];
        rec(i + 1, candidates, chosen, visit);
        if f.boundary_faces().all(|b| b.is_empty() || chosen.contains(&b)) {
            chosen.push(f);
            rec(i + 1, candidates, chosen, visit);
            chosen.pop();
        }
    }
    rec(0, candidates, &mut Vec::new(), &mut visit);
}

fn exhaustive_strong_z() -> Verdict {
    let mut counts = Vec::new();
    let mut failures = 0u64;
    for m in 1..=EXHAUSTIVE_MAX_VERTICES {
        let mut pairs = 0u64;
        let mut faces: Vec<Face> = (1u64..1 << m).map(Face::from_bits).collect();
        faces.sort_by_key(|f| f.len());
        downsets(&faces, |kf| {
            let k = SimplicialComplex::from_faces(m, kf.iter().copied()).expect("closed");
            downsets(kf, |wf| {
                let w = SimplicialComplex::from_faces(m, wf.iter().copied()).expect("closed");
                pairs += 1;
                if strong_z(&k, &w).ok() != strong_z_by_closure(&k, &w).ok() {
                    failures += 1;
                }
            });
        });
        counts.push(pairs);
    }
    let complete = counts == EXHAUSTIVE_PAIR_COUNTS[..EXHAUSTIVE_MAX_VERTICES];
    let total: u64 = counts.iter().sum();
    Verdict::new(
        failures == 0 && complete,
        format!("{failures}/{total} (K, W) pairs disagreed, m <= {EXHAUSTIVE_MAX_VERTICES}, enumeration complete: {complete}"),
    )
}

fn gorenstein_closure(rng: &mut ChaCha8Rng, samples: &mut Vec<StrongSumSample>) -> Verdict {
    let mut failures = 0;
    let mut attempts = 0;
    while samples.len() < GORENSTEIN_SUMS && attempts < GORENSTEIN_ATTEMPTS {
        attempts += 1;
        let s = random_gorenstein_strong_sum(rng);
        let w = s.k1.intersection(&s.k2).expect("same vertex count");
        let strong = is_strong_connected_sum(&s.k1, &s.k2, &s.z).map(|v| v.strong).unwrap_or(false);
        if !(strong
            && is_gorenstein(&s.k1, Field::Rational)
            && is_gorenstein(&s.k2, Field::Rational)
            && is_cohen_macaulay(&w, Field::Rational))
        {
            continue;
        }
        let sum = connected_sum(&s.k1, &s.k2, &s.z).expect("strong sums satisfy the hypothesis");
        if !is_gorenstein(&sum, Field::Rational) {
            failures += 1;
        }
        samples.push(s);
    }
    let enough = samples.len() >= GORENSTEIN_SUMS;
    Verdict::new(
        enough && failures == 0,
        format!("{failures}/{} sums not Gorenstein ({attempts} generated)", samples.len()),
    )
}

fn euler_cross_check(
    rng: &mut ChaCha8Rng,
    fixture_tables: &[(SimplicialComplex, TorTable)],
    samples: &[StrongSumSample],
) -> Verdict {
    let mut checked = 0;
    let mut failures = 0;
    let mut record = |k: &SimplicialComplex, t: &TorTable| {
        checked += 1;
        if !euler_check(k, t).map(|e| e.holds).unwrap_or(false) {
            failures += 1;
        }
    };
    for (k, t) in fixture_tables {
        record(k, t);
    }
    for s in samples {
        let sum = connected_sum(&s.k1, &s.k2, &s.z).expect("valid sum");
        let w = s.k1.intersection(&s.k2).expect("same vertex count");
        let m = sum.vertex_count();
        let n = ((sum.dim() + 1) as usize).clamp(1, m);
        let spec = SubringSpec::new(random_full_rank_matrix(rng, n, m, 2)).expect("full rank");
        for k in [&s.k1, &s.k2, &w, &sum] {
            record(k, &tor_table(k, &spec, EULER_D_MAX));
        }
    }
    Verdict::new(failures == 0 && checked > 0, format!("{failures}/{checked} Tor tables failed the Euler check"))
}

fn hilbert_additivity(rng: &mut ChaCha8Rng) -> Verdict {
    let mut failures = 0;
    for _ in 0..HILBERT_PAIRS {
        let m = rng.gen_range(1..=HILBERT_MAX_VERTICES);
        let (k1, k2) = random_pair(rng, m);
        let coeffs = |k: &SimplicialComplex| HilbertSeries::of_complex(k).coefficients(HILBERT_DEGREE);
        let (a, b) = (coeffs(&k1), coeffs(&k2));
        let (c, d) = (coeffs(&k1.union(&k2).expect("same m")), coeffs(&k1.intersection(&k2).expect("same m")));
        if (0..=HILBERT_DEGREE).any(|i| a[i] + b[i] != c[i] + d[i]) {
            failures += 1;
        }
    }
    Verdict::new(failures == 0, format!("{failures}/{HILBERT_PAIRS} pairs failed up to degree {HILBERT_DEGREE}"))
}

fn report(index: usize, title: &str, run: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let v = run();
    let status = if v.pass { "PASS" } else { "FAIL" };
    println!("{status} {index} {title}: {} [{:.1}s]", v.detail, start.elapsed().as_secs_f64());
    v.pass
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut fixture_tables = Vec::new();
    let mut samples = Vec::new();

    let mut results = Vec::new();
    results.push(report(1, "Tor1 pattern of the square-cut complexes over Z[u1,u2]", || square_cut_tor1(&mut fixture_tables)));
    results.push(report(2, "polytope cuts give strong connected sums", || polytope_cuts(&mut rng)));
    results.push(report(3, "Stanley-Reisner sequences exact over Z", || sr_exactness(&mut rng)));
    results.push(report(4, "annihilator generators match truncated kernel", || annihilator(&mut rng)));
    results.push(report(5, "characterizations of Z agree exhaustively", exhaustive_strong_z));
    results.push(report(6, "strong sums of Gorenstein complexes are Gorenstein", || {
        gorenstein_closure(&mut rng, &mut samples)
    }));
    results.push(report(7, "Euler characteristic of Tor matches Hilbert series", || {
        euler_cross_check(&mut rng, &fixture_tables, &samples)
    }));
    results.push(report(8, "Hilbert series additivity", || hilbert_additivity(&mut rng)));

    let passed = results.iter().filter(|&&b| b).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
