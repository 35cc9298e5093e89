use bmetric::acbm::{verify_structure, Analysis};
use bmetric::liealg::jacobi_check;
use bmetric::paperlab::{
    build_f6_family, build_general_family, claim_ids, published, sample_random_params,
    verify_paper, ClaimKind, FamilyParams, Mode, Status, REPORT_SCHEMA,
};
use bmetric::scalar::parse_expr;

#[test]
fn claim_suite_is_fixed() {
    let ids = claim_ids();
    assert_eq!(ids.len(), 27);
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
    assert!(ids.iter().all(|id| id.starts_with("thm-") || id.starts_with("tbl-")));
}

#[test]
fn symbolic_report_passes_with_expected_discrepancies() {
    let r = verify_paper(Mode::Symbolic, 1, 50);
    assert!(r.passed());
    assert_eq!(r.schema, REPORT_SCHEMA);
    assert_eq!(r.summary.total, 27);
    assert_eq!(r.summary.theorem_failed, 0);
    for item in &r.items {
        match item.kind {
            ClaimKind::Theorem => assert_eq!(item.status, Status::VerifiedExact, "{}", item.id),
            ClaimKind::Table => assert_ne!(item.status, Status::Failed, "{}", item.id),
        }
    }
    let discrepancies: Vec<&str> = r
        .items
        .iter()
        .filter(|i| i.status == Status::Discrepancy)
        .map(|i| i.id.as_str())
        .collect();
    assert_eq!(
        discrepancies,
        [
            "tbl-almost-einstein",
            "tbl-associated-scalar",
            "tbl-curvature-full-support",
            "tbl-lee-xi-values",
            "tbl-norm-closed-form",
            "tbl-ricci-scalar",
        ]
    );
}

#[test]
fn sampled_report_passes_and_is_deterministic() {
    let a = verify_paper(Mode::Sampled, 5, 15);
    let b = verify_paper(Mode::Sampled, 5, 15);
    assert!(a.passed());
    assert_eq!(a.to_json(), b.to_json());
    assert_ne!(a.to_json(), verify_paper(Mode::Sampled, 6, 15).to_json());
    let item = a.item("thm-curvature-symmetries").unwrap();
    assert_eq!(item.detail("points"), Some("15"));
    assert_eq!(item.detail("points verified-exact"), Some("15"));
}

#[test]
fn report_json_shape() {
    let r = verify_paper(Mode::Symbolic, 1, 50);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["schema"], REPORT_SCHEMA);
    assert_eq!(v["mode"], "symbolic");
    assert_eq!(v["items"].as_array().unwrap().len(), 27);
    assert_eq!(v["summary"]["theorem_failed"], 0);
    assert!(r.to_json().ends_with('\n'));
}

#[test]
fn random_parameters_are_deterministic_and_valid() {
    assert_eq!(sample_random_params(3, 7), sample_random_params(3, 7));
    for seed in 0..100 {
        let p = sample_random_params(seed, 6);
        p.check_constraint().unwrap();
        let (l, s) = build_f6_family(&p).unwrap();
        assert!(jacobi_check(&l).holds(), "seed {seed}");
        assert!(verify_structure(&s).holds());
    }
}

#[test]
fn general_family_is_u1_but_not_f6() {
    let (l, s) = build_general_family(&FamilyParams::symbolic_general());
    let a = Analysis::run(l, s).unwrap();
    let f = a.classification.flags;
    assert!(f.u && f.u1 && f.u2);
    assert!(!f.f6 && !f.f4 && !f.f0);
}

#[test]
fn engine_scalar_curvature_is_the_isotropic_condition() {
    let (l, s) = build_f6_family(&FamilyParams::symbolic()).unwrap();
    let a = Analysis::run(l, s).unwrap();
    let cond = published::isotropic_condition(&FamilyParams::symbolic());
    assert_eq!(a.curvature.scalar, cond);
    assert_eq!(a.norms.sq_nabla_phi, cond.scale(&bmetric::scalar::int(2)));
    assert!(a.tau_star.is_zero());
    assert_eq!(
        cond,
        parse_expr("4*(lambda3^2 - lambda1^2) - (lambda2 + mu1)^2 + (lambda4 + mu3)^2").unwrap()
    );
}
