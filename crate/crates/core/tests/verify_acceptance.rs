//! Acceptance suite. Runs without the libtest harness and prints one
//! `PASS` or `FAIL` line per criterion, then exits non-zero if any failed.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use bmetric::acbm::{verify_structure, Analysis};
use bmetric::cli::ManifoldFile;
use bmetric::liealg::jacobi_check;
use bmetric::paperlab::family::{random_params, sample_f0_locus, sample_isotropic_locus};
use bmetric::paperlab::{
    build_f6_family, derive_constraints, published, verify_paper, FamilyParams, Mode, Status,
    VerificationReport,
};
use bmetric::scalar::{parse_expr, rat};
use bmetric::Polynomial;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn poly(text: &str) -> Polynomial {
    parse_expr(text).expect("valid expression")
}

fn symbolic_analysis() -> Analysis {
    let (l, s) = build_f6_family(&FamilyParams::symbolic()).expect("symbolic family");
    Analysis::run(l, s).expect("symbolic analysis")
}

fn point_analysis(p: &FamilyParams) -> Analysis {
    let (l, s) = build_f6_family(p).expect("constrained point");
    Analysis::run(l, s).expect("point analysis")
}

fn require(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn require_exact(report: &VerificationReport, ids: &[&str]) -> Result<(), String> {
    for id in ids {
        let item = report.item(id).ok_or_else(|| format!("{id} missing from the report"))?;
        require(
            item.status == Status::VerifiedExact,
            format!("{id} is {}", item.status.as_str()),
        )?;
    }
    Ok(())
}

fn structure_and_algebra() -> Outcome {
    let start = Instant::now();
    let (l, s) = build_f6_family(&FamilyParams::symbolic()).map_err(|e| e.to_string())?;
    let structure = verify_structure(&s);
    let jacobi = jacobi_check(&l);
    let elapsed = start.elapsed();
    require(structure.holds(), format!("structure witnesses {:?}", structure.witnesses))?;
    require(jacobi.holds(), format!("Jacobi witnesses {:?}", jacobi.witness))?;
    require(elapsed < Duration::from_secs(1), format!("took {elapsed:?}"))?;
    Ok(format!("structure relations and Jacobi identity hold symbolically in {elapsed:?}"))
}

fn constraint_derivation() -> Outcome {
    let d = derive_constraints().map_err(|e| e.to_string())?;
    let solved = d.mu2 == poly("-lambda1") && d.mu4 == poly("-lambda3");
    let theta = d.theta_xi == poly("2*lambda1 + 2*mu2");
    let theta_star = d.theta_star_xi == poly("2*lambda3 + 2*mu4");
    require(solved, format!("solved mu2 = {}, mu4 = {}", d.mu2, d.mu4))?;
    require(
        theta && theta_star,
        format!(
            "engine theta(xi) = {}, theta*(xi) = {}; expected 2*lambda1 + 2*mu2 and 2*lambda3 + 2*mu4 \
             (the expected values hold with theta and theta* exchanged: {}); solved mu2 = {}, mu4 = {}",
            d.theta_xi,
            d.theta_star_xi,
            d.theta_xi == poly("2*lambda3 + 2*mu4") && d.theta_star_xi == poly("2*lambda1 + 2*mu2"),
            d.mu2,
            d.mu4
        ),
    )?;
    Ok("theta(xi), theta*(xi) and the solved constraints match".into())
}

fn connection_table(report: &VerificationReport, a: &Analysis) -> Outcome {
    require_exact(report, &["thm-connection-table", "thm-connection-levi-civita"])?;
    let table = published::connection_table(&FamilyParams::symbolic());
    require(table.len() == 25, format!("{} printed entries", table.len()))?;
    for ((i, j), v) in &table {
        require(a.connection.nabla(*i, *j) == *v, format!("entry ({i}, {j}) differs"))?;
    }
    require(a.connection.torsion_residual(&a.algebra).is_zero(), "torsion residual")?;
    require(a.connection.metric_residual(a.structure.metric()).is_zero(), "metric residual")?;
    Ok("25 entries equal, torsion-free and metric as polynomial identities".into())
}

fn fundamental_and_classes(report: &VerificationReport, a: &Analysis) -> Outcome {
    require_exact(
        report,
        &["thm-fundamental-table", "thm-fundamental-routes", "thm-class-f6", "thm-class-f0-locus"],
    )?;
    let printed = published::fundamental_tensor(&FamilyParams::symbolic());
    require(a.fundamental.tensor() == &printed, "F differs from the printed table")?;
    require(a.fundamental == a.fundamental_brackets, "the two F routes differ")?;
    let f = &a.classification.flags;
    require(f.f6 && !f.f0, "generic parameters are not F6 \\ F0")?;

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..40 {
        let p = if k % 2 == 0 { random_params(&mut rng, 4) } else { sample_f0_locus(&mut rng, 4) };
        let on_locus = published::f0_conditions(&p).iter().all(Polynomial::is_zero);
        let b = point_analysis(&p);
        require(b.classification.flags.f6, format!("not F6 at {}", p.render()))?;
        require(
            b.classification.flags.f0 == on_locus,
            format!("F0 = {} but locus = {on_locus} at {}", b.classification.flags.f0, p.render()),
        )?;
    }
    Ok("F table and routes agree; F6 generically, F0 exactly on the four-condition locus (40 points)".into())
}

const IDENTITY_CLAIMS: [&str; 5] = [
    "thm-norms-relation-u",
    "thm-curvature-identity-u",
    "thm-curvature-cyclic-u1",
    "thm-curvature-shift-u2",
    "thm-curvature-symmetries",
];

fn identity_suite(report: &VerificationReport, elapsed_symbolic: Duration) -> Outcome {
    require_exact(report, &IDENTITY_CLAIMS)?;
    let start = Instant::now();
    let sampled = verify_paper(Mode::Sampled, 1, 50);
    let elapsed = start.elapsed();
    require_exact(&sampled, &IDENTITY_CLAIMS)?;
    for id in IDENTITY_CLAIMS {
        let item = sampled.item(id).expect("present");
        require(
            item.detail("points verified-exact") == Some("50"),
            format!("{id}: {:?} points verified", item.detail("points verified-exact")),
        )?;
    }
    let total = elapsed_symbolic + elapsed;
    require(total < Duration::from_secs(10), format!("took {total:?}"))?;
    Ok(format!("five identity claims exact symbolically and at 50 seeded points in {total:?}"))
}

fn curvature_block(report: &VerificationReport, a: &Analysis) -> Outcome {
    require_exact(report, &["thm-curvature-vertical-block"])?;
    let xi = a.structure.reeb();
    for ((i, j), v) in published::vertical_block(&FamilyParams::symbolic()) {
        require(a.curvature.riemann.get(&[xi, i, j, xi]) == &v, format!("R(xi,{i},{j},xi) differs"))?;
    }
    let b = point_analysis(&FamilyParams::from_i64([1, 0, 0, 0], 0, 0));
    let spot = b.curvature.riemann.get(&[xi, 0, 0, xi]);
    require(*spot == Polynomial::int(-1), format!("R(xi,e1,e1,xi) = {spot} at lambda1 = 1"))?;
    Ok("R(xi,e_i,e_j,xi) matches as polynomials; R(xi,e1,e1,xi) = -1 at lambda1 = 1".into())
}

fn discrepancy_items(report: &VerificationReport) -> Outcome {
    let items: [(&str, &[&str]); 5] = [
        ("tbl-curvature-full-support", &["residual engine - implied"]),
        ("tbl-ricci-scalar", &["residual rho engine - printed", "residual tau"]),
        ("tbl-associated-scalar", &["residual"]),
        ("tbl-norm-closed-form", &["residual"]),
        ("tbl-almost-einstein", &["residual tau", "residual tau*"]),
    ];
    for (id, labels) in items {
        let item = report.item(id).ok_or_else(|| format!("{id} missing"))?;
        for label in labels {
            let v = item.detail(label).ok_or_else(|| format!("{id}: no `{label}`"))?;
            require(!v.is_empty(), format!("{id}: empty `{label}`"))?;
        }
    }
    let norm = report.item("tbl-norm-closed-form").expect("present");
    require(norm.detail("engine / printed") == Some("2"), "engine / printed norm is not 2")?;
    require(norm.detail("vanishing loci coincide") == Some("yes"), "vanishing loci differ")?;
    require(report.passed(), "exit status is affected")?;
    Ok(format!(
        "all five comparison items present with residuals; {} discrepancies, exit status 0",
        report.summary.discrepancy
    ))
}

fn isotropic_equivalence(a: &Analysis) -> Outcome {
    let cond = published::isotropic_condition(&FamilyParams::symbolic());
    let ratio = a.norms.sq_nabla_phi.ratio_to(&cond);
    require(ratio.is_some(), "|nabla phi|^2 is not a rational multiple of the condition")?;

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut isotropic = 0;
    for k in 0..200 {
        let p = if k % 2 == 0 {
            random_params(&mut rng, 5)
        } else {
            sample_isotropic_locus(&mut rng, 5)
        };
        let asg = p.assignment().expect("numeric point");
        let norm = a.norms.sq_nabla_phi.evaluate(&asg).map_err(|e| e.to_string())?;
        let c = cond.evaluate(&asg).map_err(|e| e.to_string())?;
        require(
            num_traits::Zero::is_zero(&norm) == num_traits::Zero::is_zero(&c),
            format!("equivalence fails at {}", p.render()),
        )?;
        if num_traits::Zero::is_zero(&c) {
            isotropic += 1;
        }
    }

    let witness = FamilyParams::from_values([rat(1, 1), rat(2, 1), rat(1, 1), rat(-3, 1)], rat(-2, 1), rat(3, 1));
    let w = point_analysis(&witness);
    let f = &w.classification.flags;
    require(f.isotropic_f0 && !f.f0, format!("witness flags {f:?}"))?;
    Ok(format!(
        "|nabla phi|^2 = {} x condition; equivalence holds at 200 points ({isotropic} on the locus); witness is isotropic-F0 and not F0",
        ratio.map(|r| bmetric::scalar::format_rational(&r)).unwrap_or_default()
    ))
}

fn normality(report: &VerificationReport, a: &Analysis) -> Outcome {
    require_exact(report, &["thm-normality"])?;
    require(a.normality.is_normal(), "N is not zero")?;
    require(a.normality.eta_closed(), "d eta is not zero")?;
    Ok("N = 0 and d eta = 0 symbolically".into())
}

fn determinism_and_round_trip() -> Outcome {
    let first = verify_paper(Mode::Sampled, 11, 12).to_json();
    let second = verify_paper(Mode::Sampled, 11, 12).to_json();
    require(first == second, "sampled JSON differs between runs")?;
    require(
        verify_paper(Mode::Symbolic, 3, 5).to_json() == verify_paper(Mode::Symbolic, 3, 5).to_json(),
        "symbolic JSON differs between runs",
    )?;

    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut names = Vec::new();
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("acbm") {
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let parsed = ManifoldFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let canonical = parsed.to_text();
        let reparsed = ManifoldFile::parse(&canonical).map_err(|e| e.to_string())?;
        require(reparsed == parsed, format!("{} does not round-trip", path.display()))?;
        require(reparsed.to_text() == canonical, format!("{} text is unstable", path.display()))?;
        names.push(path.file_name().unwrap().to_string_lossy().into_owned());
    }
    names.sort();
    require(!names.is_empty(), "no bundled files")?;
    Ok(format!("byte-identical reports; round trip on {}", names.join(", ")))
}

fn main() {
    let start = Instant::now();
    let analysis = symbolic_analysis();
    let t = Instant::now();
    let report = verify_paper(Mode::Symbolic, 1, 50);
    let symbolic_time = t.elapsed();

    let results: Vec<(&str, Outcome)> = vec![
        ("structure and Jacobi identity", structure_and_algebra()),
        ("Lee form values and constraints", constraint_derivation()),
        ("connection table", connection_table(&report, &analysis)),
        ("fundamental tensor and classes", fundamental_and_classes(&report, &analysis)),
        ("identity suite", identity_suite(&report, symbolic_time)),
        ("vertical curvature block", curvature_block(&report, &analysis)),
        ("discrepancy report", discrepancy_items(&report)),
        ("isotropic equivalence", isotropic_equivalence(&analysis)),
        ("normality", normality(&report, &analysis)),
        ("determinism and round trip", determinism_and_round_trip()),
    ];

    let mut failed = 0;
    for (k, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(msg) => println!("criterion {:>2} {name}: PASS ({msg})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({msg})", k + 1);
            }
        }
    }
    let total = start.elapsed();
    println!(
        "acceptance: {} passed, {failed} failed in {total:?}",
        results.len() - failed
    );
    if total > Duration::from_secs(60) {
        println!("acceptance: runtime above 60 s");
        failed += 1;
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
