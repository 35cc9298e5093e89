use bmetric::acbm::{associated_metric, b_metric_residual, eta_xi_residual, AcbmStructure, Analysis};
use bmetric::liealg::random::random_lie_algebra;
use bmetric::liealg::{curvature, jacobi_check, levi_civita, CurvatureSymmetries, LieAlgebra};
use bmetric::scalar::{int, rat};
use bmetric::tensor::{kulkarni_nomizu, Matrix, Metric, Tensor};
use bmetric::Polynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(n: i64, d: i64) -> Polynomial {
    Polynomial::constant(rat(n, d))
}

fn random_algebras(count: usize) -> Vec<LieAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..count).map(|_| random_lie_algebra(&mut rng, 5, 3)).collect()
}

#[test]
fn heisenberg_oracle() {
    let l = LieAlgebra::from_brackets(3, [(0, 1, 2, Polynomial::one())]).unwrap();
    let m = Metric::new(Matrix::identity(3)).unwrap();
    let conn = levi_civita(&l, &m).unwrap();
    let curv = curvature(&conn, &l, &m);
    assert_eq!(conn.nabla(0, 1), vec![c(0, 1), c(0, 1), c(1, 2)]);
    assert_eq!(curv.ricci.get(&[0, 0]), &c(-1, 2));
    assert_eq!(curv.ricci.get(&[1, 1]), &c(-1, 2));
    assert_eq!(curv.ricci.get(&[2, 2]), &c(1, 2));
    assert_eq!(curv.scalar, c(-1, 2));
    assert_eq!(curv.riemann.get(&[0, 1, 1, 0]), &c(-3, 4));
}

#[test]
fn abelian_structure_is_f0_and_flat() {
    let a = Analysis::run(LieAlgebra::abelian(5), AcbmStructure::standard(2)).unwrap();
    assert!(a.fundamental.tensor().is_zero());
    assert!(a.curvature.riemann.is_zero());
    let f = a.classification.flags;
    assert!(f.f0 && f.u && f.u1 && f.u2 && f.f4 && f.f5 && f.f6 && f.isotropic_f0);
    assert!(a.classification.witnesses.is_empty());
}

#[test]
fn random_algebras_satisfy_jacobi() {
    for l in random_algebras(50) {
        assert!(jacobi_check(&l).holds());
        assert!(l.is_antisymmetric());
    }
}

#[test]
fn curvature_symmetries_on_random_algebras() {
    let s = AcbmStructure::standard(2);
    for l in random_algebras(50) {
        let conn = levi_civita(&l, s.metric()).unwrap();
        assert!(conn.torsion_residual(&l).is_zero());
        assert!(conn.metric_residual(s.metric()).is_zero());
        let curv = curvature(&conn, &l, s.metric());
        let sym = CurvatureSymmetries::of(&curv.riemann);
        for (name, t) in sym.named() {
            assert!(t.is_zero(), "{name} fails");
        }
    }
}

#[test]
fn fundamental_tensor_identities_on_random_algebras() {
    let s = AcbmStructure::standard(2);
    for l in random_algebras(50) {
        let a = Analysis::run(l, s.clone()).unwrap();
        assert_eq!(a.fundamental, a.fundamental_brackets, "routes differ");
        assert!(a.fundamental.symmetry_residual().is_zero());
        assert!(a.fundamental.phi_expansion_residual(&a.structure).is_zero());
        assert!(eta_xi_residual(&a.fundamental, &a.h, &a.structure).is_zero());
        assert_eq!(a.norms.sq_nabla_eta, a.norms.sq_nabla_xi);
        if a.classification.flags.u {
            assert!(a.norms.u_relation_residual().is_zero());
        }
    }
}

#[test]
fn associated_metric_is_a_b_metric() {
    let s = AcbmStructure::standard(3);
    let g_assoc = s.g_assoc().clone();
    let residual = b_metric_residual(&s, &g_assoc);
    assert!(residual.rows().iter().flatten().all(num_traits::Zero::is_zero));
    assert_eq!(associated_metric(&s), Tensor::from_matrix(&g_assoc));
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Tensor {
    let mut t = Tensor::zeros(n, 2);
    for i in 0..n {
        for j in i..n {
            let v = c(rng.gen_range(-5..=5), rng.gen_range(1..=4));
            t.set(&[i, j], v.clone());
            t.set(&[j, i], v);
        }
    }
    t
}

#[test]
fn kulkarni_nomizu_has_curvature_symmetries() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let h1 = random_symmetric(&mut rng, 4);
        let h2 = random_symmetric(&mut rng, 4);
        let kn = kulkarni_nomizu(&h1, &h2).unwrap();
        assert!(CurvatureSymmetries::of(&kn).all_zero());
        assert_eq!(kn, kulkarni_nomizu(&h2, &h1).unwrap());
    }
    let g = Tensor::from_matrix(&Matrix::identity(3));
    let gg = kulkarni_nomizu(&g, &g).unwrap();
    assert_eq!(gg.get(&[0, 1, 0, 1]), &Polynomial::constant(int(2)));
    assert_eq!(gg.get(&[0, 1, 1, 0]), &Polynomial::constant(int(-2)));
}
