use num_traits::Zero;

use super::structure::AcbmStructure;
use crate::error::{Error, Result};
use crate::liealg::{cyclic_sum_first_three, CurvatureData};
use crate::scalar::{Polynomial, Rational, Scalar};
use crate::tensor::{apply_phi, contract, kulkarni_nomizu, Tensor};

/// `ρ*(y,z) = g^{ij} R(e_i, y, z, φe_j)` and `τ* = g^{ij} ρ*_{ij}`.
pub fn rho_star_tau_star(curv: &CurvatureData, s: &AcbmStructure) -> (Tensor, Scalar) {
    let twisted = apply_phi(&curv.riemann, &[3], s.phi()).expect("rank 4");
    let rho_star = contract(&twisted, 0, 3, s.metric()).expect("rank 4");
    let tau_star = contract(&rho_star, 0, 1, s.metric())
        .expect("rank 2")
        .value()
        .clone();
    (rho_star, tau_star)
}

/// `R(x,y,φ²z,φ²w) + R(x,y,φz,φw)`.
fn phi_shifted(r: &Tensor, s: &AcbmStructure) -> Tensor {
    let phi = s.phi();
    let twice = apply_phi(r, &[2, 2, 3, 3], phi).expect("rank 4");
    let once = apply_phi(r, &[2, 3], phi).expect("rank 4");
    twice.add(&once)
}

/// `2R(x,y,φ²z,φ²w) + 2R(x,y,φz,φw) − (h⊙h)(x,y,z,w) − (h⊙h)(x,y,φz,φw)`,
/// identically zero on the class `U`.
pub fn theorem_r_identity_residual(curv: &CurvatureData, h: &Tensor, s: &AcbmStructure) -> Tensor {
    let lhs = phi_shifted(&curv.riemann, s).scale(&crate::scalar::int(2));
    let hh = kulkarni_nomizu(h, h).expect("rank 2");
    let hh_phi = apply_phi(&hh, &[2, 3], s.phi()).expect("rank 4");
    lhs.sub(&hh).sub(&hh_phi)
}

/// Residuals of the two curvature corollaries:
///
/// - cyclic sum over `(x,y,z)` of `R(x,y,φ²z,φ²w) + R(x,y,φz,φw)` (zero on `U₁`);
/// - `R(φx,φy,φ²z,φ²w) + R(φx,φy,φz,φw) − R(x,y,φ²z,φ²w) − R(x,y,φz,φw)` (zero on `U₂`).
pub fn corollary_residuals(curv: &CurvatureData, s: &AcbmStructure) -> (Tensor, Tensor) {
    let q = phi_shifted(&curv.riemann, s);
    let cyclic = cyclic_sum_first_three(&q);
    let shifted = apply_phi(&q, &[0, 1], s.phi()).expect("rank 4").sub(&q);
    (cyclic, shifted)
}

/// Writes `ρ = ν g + ν̃ g̃` when possible.
///
/// Returns `Ok(None)` when `ρ` is not in the span of `g` and `g̃`, and
/// [`Error::DegenerateSpan`] when `g` and `g̃` are proportional.
pub fn almost_einstein_decompose(rho: &Tensor, s: &AcbmStructure) -> Result<Option<(Scalar, Scalar)>> {
    let n = s.dim();
    let g = s.metric().g();
    let gt = s.g_assoc();
    let idx: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    // a 2x2 minor of the component matrix [g_ij | g̃_ij] with nonzero determinant
    let mut pivot = None;
    'outer: for (a, &(i1, j1)) in idx.iter().enumerate() {
        for &(i2, j2) in &idx[a + 1..] {
            let det: Rational = g.get(i1, j1) * gt.get(i2, j2) - gt.get(i1, j1) * g.get(i2, j2);
            if !det.is_zero() {
                pivot = Some(((i1, j1), (i2, j2), det));
                break 'outer;
            }
        }
    }
    let ((i1, j1), (i2, j2), det) = pivot.ok_or(Error::DegenerateSpan)?;
    let inv = Rational::from_integer(1.into()) / det;
    let r1 = rho.get(&[i1, j1]);
    let r2 = rho.get(&[i2, j2]);
    let nu = (&r1.scale(gt.get(i2, j2)) - &r2.scale(gt.get(i1, j1))).scale(&inv);
    let nu_t = (&r2.scale(g.get(i1, j1)) - &r1.scale(g.get(i2, j2))).scale(&inv);
    for i in 0..n {
        for j in 0..n {
            let fit: Polynomial = &nu.scale(g.get(i, j)) + &nu_t.scale(gt.get(i, j));
            if fit != *rho.get(&[i, j]) {
                return Ok(None);
            }
        }
    }
    Ok(Some((nu, nu_t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acbm::associated_metric;
    use crate::scalar::int;
    use crate::tensor::{Matrix, Metric};

    #[test]
    fn decomposition_examples() {
        let s = AcbmStructure::standard(2);
        let zero = Tensor::zeros(5, 2);
        assert_eq!(
            almost_einstein_decompose(&zero, &s).unwrap(),
            Some((Polynomial::zero(), Polynomial::zero()))
        );
        let rho = s
            .metric()
            .tensor()
            .scale(&int(2))
            .sub(&associated_metric(&s).scale(&int(3)));
        assert_eq!(
            almost_einstein_decompose(&rho, &s).unwrap(),
            Some((Polynomial::int(2), Polynomial::int(-3)))
        );
        let mut off = zero.clone();
        off.set(&[4, 4], Polynomial::var("t"));
        assert_eq!(almost_einstein_decompose(&off, &s).unwrap(), None);
    }

    #[test]
    fn symbolic_decomposition() {
        let s = AcbmStructure::standard(1);
        let a = Polynomial::var("a");
        let b = Polynomial::var("b");
        let rho = s
            .metric()
            .tensor()
            .scale_by(&a)
            .add(&associated_metric(&s).scale_by(&b));
        assert_eq!(almost_einstein_decompose(&rho, &s).unwrap(), Some((a, b)));
    }

    #[test]
    fn degenerate_span_is_reported() {
        // with phi = 0 and eta = 0 the associated form vanishes identically
        let s = AcbmStructure::standard(1);
        let broken = AcbmStructure::new(
            s.frame().clone(),
            Matrix::zeros(3),
            vec![int(0), int(0), int(0)],
            Metric::new(Matrix::identity(3)).unwrap(),
        )
        .unwrap();
        assert_eq!(
            almost_einstein_decompose(&Tensor::zeros(3, 2), &broken),
            Err(Error::DegenerateSpan)
        );
    }
}
