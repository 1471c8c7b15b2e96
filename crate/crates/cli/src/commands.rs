use std::fmt::Write as _;
use std::path::Path;

use connsum_core::homology::{core, is_cohen_macaulay, is_gorenstein, reduced_betti_numbers, simplicial_homology};
use connsum_core::polytope::{
    characteristic_matrix, cut, extended_matrix, is_generic_cut, CutChecks, LabeledPolytope, PointDisplay,
};
use connsum_core::random::{random_generic_cut, random_simple_polytope};
use connsum_core::simplicial::{connected_sum, is_strong_connected_sum, strong_z, strong_z_by_closure, FaceSubset};
use connsum_core::stanley_reisner::{compare_annihilator, verify_connected_sum_ring, verify_fiber_product, HilbertSeries};
use connsum_core::tor::{verify_tor_fiber_product, SubringSpec, TorReport, TorTable, DEFAULT_D_MAX};
use connsum_core::{Error, SimplicialComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::format::{complex_to_text, face_subset_to_text, matrix_rows, matrix_to_text};
use crate::parse::{parse_complex_file, parse_face, parse_face_subset, parse_matrix_file, parse_polytope_file};
use crate::{
    AnnihilatorArgs, CliError, Command, ComplexOp, ComplexOpArgs, GorensteinArgs, Options, PairArgs, Params,
    PolytopeCutArgs, Report, Status, SumCheckArgs, TorArgs, SCHEMA,
};

const SR_D_MAX: usize = 8;
const ANNIHILATOR_D_MAX: usize = 4;
const RANDOM_CUT_ATTEMPTS: usize = 50;
const RANDOM_MAX_FACETS: usize = 8;

type Outcome = Result<Body, CliError>;

#[derive(Default)]
struct Body {
    result: Value,
    text: String,
    findings: Vec<String>,
}

pub(crate) fn dispatch(command: &Command, opts: &Options) -> Result<Report, CliError> {
    let (name, body) = match command {
        Command::ComplexOp(a) => ("complex-op", complex_op(a)?),
        Command::SumCheck(a) => ("sum-check", sum_check(a, opts)?),
        Command::PolytopeCut(a) => ("polytope-cut", polytope_cut(a, opts)?),
        Command::SrVerify(a) => ("sr-verify", sr_verify(a, opts)?),
        Command::Annihilator(a) => ("annihilator", annihilator(a, opts)?),
        Command::Tor(a) => ("tor", tor(a, opts)?),
        Command::Gorenstein(a) => ("gorenstein", gorenstein(a, opts)?),
    };
    Ok(Report {
        schema: SCHEMA,
        command: name,
        status: if body.findings.is_empty() { Status::Pass } else { Status::Finding },
        findings: body.findings,
        params: Params { d_max: opts.dmax, p_max: opts.pmax, field: opts.field.to_string(), seed: opts.seed },
        result: body.result,
        text: body.text,
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable report")
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn load_pair(k1: &Path, k2: &Path) -> Result<(SimplicialComplex, SimplicialComplex), CliError> {
    let (a, b) = (parse_complex_file(k1)?, parse_complex_file(k2)?);
    if a.vertex_count() != b.vertex_count() {
        return Err(Error::VertexCountMismatch { left: a.vertex_count(), right: b.vertex_count() }.into());
    }
    Ok((a, b))
}

/// `Z` from the command line, or the strong choice `W \ closure(K1 \ W)`.
fn choose_z(k1: &SimplicialComplex, w: &SimplicialComplex, z: Option<&str>) -> Result<FaceSubset, CliError> {
    match z {
        Some(text) => Ok(parse_face_subset(text, k1.vertex_count())?),
        None => Ok(strong_z_by_closure(k1, w)?),
    }
}

fn complex_op(a: &ComplexOpArgs) -> Outcome {
    let k = parse_complex_file(&a.complex)?;
    let other = || -> Result<SimplicialComplex, CliError> {
        let path = a.other.as_ref().ok_or_else(|| usage("this operation needs --other"))?;
        let o = parse_complex_file(path)?;
        if o.vertex_count() != k.vertex_count() {
            return Err(Error::VertexCountMismatch { left: k.vertex_count(), right: o.vertex_count() }.into());
        }
        Ok(o)
    };
    let faces = || -> Result<FaceSubset, CliError> {
        let text = a.faces.as_deref().ok_or_else(|| usage("this operation needs --faces"))?;
        Ok(parse_face_subset(text, k.vertex_count())?)
    };
    let complex_body = |c: SimplicialComplex| Body { result: json!({ "complex": to_json(&c) }), text: complex_to_text(&c), ..Body::default() };
    let subset_body = |z: FaceSubset| Body { result: json!({ "faces": to_json(&z) }), text: face_subset_to_text(&z) + "\n", ..Body::default() };
    Ok(match a.op {
        ComplexOp::Union => complex_body(k.union(&other()?)?),
        ComplexOp::Intersection => complex_body(k.intersection(&other()?)?),
        ComplexOp::Closure => complex_body(faces()?.closure()),
        ComplexOp::OpenNeighborhood => subset_body(k.open_neighborhood(&faces()?)),
        ComplexOp::Star => complex_body(k.star(&faces()?)),
        ComplexOp::Deletion => complex_body(k.deletion(&faces()?)),
        ComplexOp::Link => {
            let text = a.face.as_deref().ok_or_else(|| usage("link needs --face"))?;
            complex_body(k.link(parse_face(text, k.vertex_count())?)?)
        }
        ComplexOp::StrongZ => subset_body(strong_z(&k, &other()?)?),
        ComplexOp::ConnectedSum => complex_body(connected_sum(&k, &other()?, &faces()?)?),
        ComplexOp::Homology => {
            let h = simplicial_homology(&k);
            let mut text = String::new();
            for (d, g) in h.iter() {
                let _ = writeln!(text, "H~_{d} = {g}");
            }
            Body { result: json!({ "reduced_homology": to_json(&h) }), text, ..Body::default() }
        }
    })
}

fn describe_tor_nonvanishing(name: &str, t: &TorTable, p: usize) -> Option<String> {
    let d = t.first_nonzero(p)?;
    Some(format!("Tor_{p}(Z[{name}]) nonzero from monomial degree {d}: {}", t.get(p, d)))
}

fn tor_self_check_findings(name: &str, r: &TorReport, findings: &mut Vec<String>) {
    if let Some(e) = &r.euler {
        if !e.holds {
            findings.push(format!("Euler characteristic of Tor(Z[{name}]) disagrees with the Hilbert series"));
        }
    }
    if !r.franz_puppe_consistent {
        findings.push(format!("Tor_1(Z[{name}]) vanishes but a higher Tor does not"));
    }
}

fn sum_check(a: &SumCheckArgs, opts: &Options) -> Outcome {
    let (k1, k2) = load_pair(&a.pair.k1, &a.pair.k2)?;
    let w = k1.intersection(&k2)?;
    let z = choose_z(&k1, &w, a.pair.z.as_deref())?;
    let mut body = Body::default();
    let sum = match connected_sum(&k1, &k2, &z) {
        Ok(s) => s,
        Err(Error::ConnectedSumHypothesis(face)) => {
            body.findings.push(format!("open neighborhood of Z leaves K1 ∩ K2 at {face}"));
            body.result = json!({ "w": to_json(&w), "z": to_json(&z), "hypothesis": false });
            body.text = format!("W: {}Z: {}\n", complex_to_text(&w), face_subset_to_text(&z));
            return Ok(body);
        }
        Err(e) => return Err(e.into()),
    };
    let strong = is_strong_connected_sum(&k1, &k2, &z)?;
    let d_max = opts.dmax.unwrap_or(DEFAULT_D_MAX);
    let fiber = verify_fiber_product(&k1, &k2, d_max)?;
    let ring = verify_connected_sum_ring(&k1, &k2, &z, d_max)?;
    if !fiber.all_exact() {
        body.findings.push("fiber-product sequence of Stanley-Reisner rings is not exact".into());
    }
    if !ring.all_hold() {
        body.findings.push("connected-sum ring identity fails".into());
    }
    let mut result = json!({
        "w": to_json(&w),
        "z": to_json(&z),
        "hypothesis": true,
        "sum": to_json(&sum),
        "strong": to_json(&strong),
        "fiber_product": to_json(&fiber),
        "connected_sum_ring": to_json(&ring),
    });
    let _ = write!(
        body.text,
        "W: {}Z: {}\nK1 #^Z K2: {}strong: {}\nring sequences exact up to degree {d_max}: {}\n",
        complex_to_text(&w),
        face_subset_to_text(&z),
        complex_to_text(&sum),
        strong.strong,
        fiber.all_exact() && ring.all_hold()
    );
    if let Some(path) = &a.matrix {
        let s = SubringSpec::new(parse_matrix_file(path)?)?;
        let r = verify_tor_fiber_product(&k1, &k2, &z, &s, d_max)?;
        let tables = [("W", &r.tables.w), ("K1", &r.tables.k1), ("K2", &r.tables.k2), ("K1 ∪ K2", &r.tables.union), ("K", &r.tables.sum)];
        for (name, t) in tables {
            tor_self_check_findings(name, t, &mut body.findings);
            let line = describe_tor_nonvanishing(name, &t.tor, 1).unwrap_or_else(|| format!("Tor_1(Z[{name}]) = 0 up to degree {d_max}"));
            let _ = writeln!(body.text, "{line}");
        }
        if r.sum_obstruction_found() {
            body.findings.push(describe_tor_nonvanishing("K", &r.tables.sum.tor, 1).expect("nonzero"));
        }
        if !r.hypotheses_hold() {
            for (name, held) in [("W", r.hypotheses.w), ("K1", r.hypotheses.k1), ("K2", r.hypotheses.k2)] {
                if !held {
                    let t = match name {
                        "W" => &r.tables.w,
                        "K1" => &r.tables.k1,
                        _ => &r.tables.k2,
                    };
                    body.findings.push(format!("hypothesis fails: {}", describe_tor_nonvanishing(name, &t.tor, 1).expect("nonzero")));
                }
            }
        }
        if !r.conclusions.fiber_product_exact() || !r.conclusions.ideal_sequence_exact() {
            body.findings.push("Tor_0 sequences are not exact".into());
        }
        if r.conclusions.union_criterion == Some(false) {
            body.findings.push("Tor_1 of the union does not match Tor_1 of the pieces".into());
        }
        result["tor"] = to_json(&r);
    }
    body.result = result;
    Ok(body)
}

fn check_findings(checks: &CutChecks, prefix: &str, findings: &mut Vec<String>) {
    let named = [
        ("K_Δ = K+ #^Zo K-", checks.p1_sum),
        ("K+ #^Zo K- is strong", checks.p1_strong),
        ("K- = K+ #^Z+ K_Δ", checks.p2_sum),
        ("K+ #^Z+ K_Δ is strong", checks.p2_strong),
        ("star identity", checks.star_identity),
        ("open star identity", checks.open_star_identity),
        ("Z+ identities", checks.plus_identities),
        ("complement identity", checks.complement_identity),
    ];
    for (name, held) in named {
        if !held {
            findings.push(format!("{prefix}{name} fails"));
        }
    }
}

fn polytope_cut(a: &PolytopeCutArgs, opts: &Options) -> Outcome {
    let mut body = Body::default();
    if let Some(path) = &a.input {
        let file = parse_polytope_file(path)?;
        let c = file.cut.clone().ok_or_else(|| usage(format!("{}: no `cut:` line", path.display())))?;
        let p = &file.polytope;
        let genericity = is_generic_cut(p, &c)?;
        if !genericity.is_generic() {
            return Err(Error::NonGenericCut(genericity.to_string()).into());
        }
        let r = cut(p, &c)?;
        check_findings(&r.checks, "", &mut body.findings);
        let vertices: Vec<Value> = p.vertices().iter().map(to_json).collect();
        let mut result = json!({
            "dim": p.dim(),
            "inequalities": p.inequality_count(),
            "vertices": vertices,
            "simple": p.is_simple(),
            "ghost_facets": p.ghost_facets(),
            "cut": to_json(&r),
        });
        let _ = writeln!(body.text, "vertices:");
        for v in p.vertices() {
            let _ = writeln!(body.text, "  {} active {}", PointDisplay(&v.point), v.active);
        }
        let _ = write!(
            body.text,
            "K_Δ: {}K+: {}K-: {}Zo: {}\nZ+: {}\nall checks: {}\n",
            complex_to_text(&r.k_delta),
            complex_to_text(&r.k_plus),
            complex_to_text(&r.k_minus),
            face_subset_to_text(&r.z_o),
            face_subset_to_text(&r.z_plus),
            r.checks.all()
        );
        if let Some(labels) = &file.labels {
            let l = LabeledPolytope::new(p.clone(), labels.clone())?;
            let b = characteristic_matrix(&l)?;
            let bt = extended_matrix(&l, &c)?;
            result["characteristic_matrix"] = json!(matrix_rows(&b));
            result["extended_matrix"] = json!(matrix_rows(&bt));
            let _ = write!(body.text, "B:\n{}B~:\n{}", matrix_to_text(&b), matrix_to_text(&bt));
        }
        body.result = result;
        return Ok(body);
    }

    let count = a.random.expect("clap enforces one source");
    if let Some(d) = a.dim {
        if !(1..=3).contains(&d) {
            return Err(usage("--dim must be 1, 2 or 3"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut samples = Vec::new();
    while samples.len() < count {
        let dim = a.dim.unwrap_or_else(|| rng.gen_range(1..=3));
        let p = random_simple_polytope(&mut rng, dim, RANDOM_MAX_FACETS);
        let Some(c) = random_generic_cut(&mut rng, &p, RANDOM_CUT_ATTEMPTS) else { continue };
        let r = cut(&p, &c)?;
        let index = samples.len();
        check_findings(&r.checks, &format!("sample {index}: "), &mut body.findings);
        samples.push(json!({
            "dim": dim,
            "inequalities": p.inequalities(),
            "cut": c,
            "checks": r.checks,
            "all": r.checks.all(),
        }));
    }
    let _ = writeln!(body.text, "{} random generic cuts, {} failing checks", count, body.findings.len());
    body.result = json!({ "samples": samples });
    Ok(body)
}

fn sr_verify(a: &PairArgs, opts: &Options) -> Outcome {
    let (k1, k2) = load_pair(&a.k1, &a.k2)?;
    let w = k1.intersection(&k2)?;
    let z = choose_z(&k1, &w, a.z.as_deref())?;
    let d_max = opts.dmax.unwrap_or(SR_D_MAX);
    let fiber = verify_fiber_product(&k1, &k2, d_max)?;
    let mut body = Body::default();
    if !fiber.all_exact() {
        body.findings.push("fiber-product sequence is not exact".into());
    }
    let ring = match verify_connected_sum_ring(&k1, &k2, &z, d_max) {
        Ok(r) => {
            if !r.all_hold() {
                body.findings.push("connected-sum ring identity fails".into());
            }
            to_json(&r)
        }
        Err(Error::ConnectedSumHypothesis(face)) => {
            body.findings.push(format!("open neighborhood of Z leaves K1 ∩ K2 at {face}"));
            Value::Null
        }
        Err(e) => return Err(e.into()),
    };
    let hilbert = |k: &SimplicialComplex| HilbertSeries::of_complex(k).to_string();
    let _ = write!(
        body.text,
        "Hilb(K1) = {}\nHilb(K2) = {}\nHilb(W) = {}\nZ: {}\nfiber product exact up to degree {d_max}: {}\n",
        hilbert(&k1),
        hilbert(&k2),
        hilbert(&w),
        face_subset_to_text(&z),
        fiber.all_exact()
    );
    body.result = json!({ "z": to_json(&z), "fiber_product": to_json(&fiber), "connected_sum_ring": ring });
    Ok(body)
}

fn annihilator(a: &AnnihilatorArgs, opts: &Options) -> Outcome {
    let (k, w) = load_pair(&a.complex, &a.sub)?;
    let d_max = opts.dmax.unwrap_or(ANNIHILATOR_D_MAX);
    let r = compare_annihilator(&k, &w, d_max)?;
    let mut body = Body::default();
    if !r.agree() {
        body.findings.push("annihilator generators disagree with the kernel computation".into());
    }
    let gens: Vec<String> = r.generators.iter().map(|f| f.to_string()).collect();
    let _ = writeln!(body.text, "generators: {}", gens.join(" "));
    for d in &r.degrees {
        let _ = writeln!(body.text, "degree {}: kernel rank {}, ideal rank {}", d.monomial_degree, d.kernel_rank, d.ideal_rank);
    }
    body.result = to_json(&r);
    Ok(body)
}

fn tor_text(t: &TorTable) -> String {
    let mut out = String::new();
    for p in 0..=t.p_max {
        for d in 0..=t.d_max {
            let g = t.get(p, d);
            if !g.is_zero() {
                let _ = writeln!(out, "Tor_{p} degree {d}: {g}");
            }
        }
    }
    out
}

fn tor(a: &TorArgs, opts: &Options) -> Outcome {
    let k = parse_complex_file(&a.complex)?;
    let s = SubringSpec::new(parse_matrix_file(&a.matrix)?)?;
    let d_max = opts.dmax.unwrap_or(DEFAULT_D_MAX);
    let p_max = opts.pmax.unwrap_or(s.n());
    let r = TorReport::compute(&k, &s, p_max, d_max)?;
    let mut body = Body::default();
    if let Some(f) = describe_tor_nonvanishing("K", &r.tor, 1) {
        body.findings.push(f);
    }
    tor_self_check_findings("K", &r, &mut body.findings);
    body.text = tor_text(&r.tor);
    let _ = writeln!(body.text, "l.s.o.p. check: {}\nconfidence: {}", r.lsop, to_json(&r.confidence));
    body.result = to_json(&r);
    Ok(body)
}

fn gorenstein(a: &GorensteinArgs, opts: &Options) -> Outcome {
    let field = opts.field;
    let mut body = Body::default();
    if let Some(path) = &a.complex {
        let k = parse_complex_file(path)?;
        let (cm, gor) = (is_cohen_macaulay(&k, field), is_gorenstein(&k, field));
        let betti = reduced_betti_numbers(&k, field);
        let _ = writeln!(body.text, "Cohen-Macaulay over {field}: {cm}\nGorenstein over {field}: {gor}");
        body.result = json!({
            "field": field.to_string(),
            "cohen_macaulay": cm,
            "gorenstein": gor,
            "core": to_json(&core(&k)),
            "reduced_betti": betti,
        });
        return Ok(body);
    }
    let (k1, k2) = load_pair(a.k1.as_ref().expect("group"), a.k2.as_ref().expect("requires"))?;
    let w = k1.intersection(&k2)?;
    let z = choose_z(&k1, &w, a.z.as_deref())?;
    let sum = connected_sum(&k1, &k2, &z)?;
    let strong = is_strong_connected_sum(&k1, &k2, &z)?.strong;
    let g1 = is_gorenstein(&k1, field);
    let g2 = is_gorenstein(&k2, field);
    let cm_w = is_cohen_macaulay(&w, field);
    let g_sum = is_gorenstein(&sum, field);
    let hypotheses = strong && g1 && g2 && cm_w;
    if hypotheses && !g_sum {
        body.findings.push("strong sum of Gorenstein complexes along a Cohen-Macaulay W is not Gorenstein".into());
    }
    let _ = writeln!(
        body.text,
        "strong: {strong}\nK1 Gorenstein: {g1}\nK2 Gorenstein: {g2}\nW Cohen-Macaulay: {cm_w}\nsum Gorenstein: {g_sum}"
    );
    body.result = json!({
        "field": field.to_string(),
        "z": to_json(&z),
        "sum": to_json(&sum),
        "strong": strong,
        "k1_gorenstein": g1,
        "k2_gorenstein": g2,
        "w_cohen_macaulay": cm_w,
        "hypotheses_hold": hypotheses,
        "sum_gorenstein": g_sum,
    });
    Ok(body)
}
