//! Closed forms as printed for the five-dimensional family, evaluated at a
//! parameter set. Nothing here is computed from the geometry.

use std::collections::BTreeMap;

use super::family::{FamilyParams, LAMBDA, MU};
use crate::scalar::{parse_expr, Polynomial, Scalar};
use crate::tensor::Tensor;

/// Parses `text` over `lambda1..4, mu1..4` and substitutes the parameters.
pub fn form(p: &FamilyParams, text: &str) -> Scalar {
    let poly = parse_expr(text).expect("closed forms are well formed");
    let mut subs = BTreeMap::new();
    for (name, v) in LAMBDA.iter().zip(&p.lambda) {
        subs.insert(name.to_string(), v.clone());
    }
    for (name, v) in MU.iter().zip(&p.mu) {
        subs.insert(name.to_string(), v.clone());
    }
    poly.substitute(&subs)
}

/// Printed values of `θ(ξ)` and `θ*(ξ)` on the eight-parameter family.
pub fn lee_xi_values(p: &FamilyParams) -> (Scalar, Scalar) {
    (form(p, "2*(lambda1 + mu2)"), form(p, "2*(lambda3 + mu4)"))
}

/// `4(λ3² − λ1²) − (λ2 + μ1)² + (λ4 + μ3)²`.
pub fn isotropic_condition(p: &FamilyParams) -> Scalar {
    form(
        p,
        "4*(lambda3^2 - lambda1^2) - (lambda2 + mu1)^2 + (lambda4 + mu3)^2",
    )
}

/// The printed closed form of `‖∇φ‖²` (equal to the isotropic condition).
pub fn sq_nabla_phi(p: &FamilyParams) -> Scalar {
    isotropic_condition(p)
}

/// The printed chain `τ = 2‖∇φ‖² = −4‖∇η‖² = −4‖∇ξ‖²`, returned as
/// `(τ, ‖∇η‖², ‖∇ξ‖²)`.
pub fn tau_chain(p: &FamilyParams) -> (Scalar, Scalar, Scalar) {
    let tau = form(
        p,
        "8*(lambda3^2 - lambda1^2) - 2*(lambda2 + mu1)^2 + 2*(lambda4 + mu3)^2",
    );
    let quarter = crate::scalar::rat(-1, 4);
    let eta = tau.scale(&quarter);
    (tau, eta.clone(), eta)
}

pub fn tau_star(p: &FamilyParams) -> Scalar {
    form(p, "8*lambda1*lambda3 + 2*(lambda2 + mu1)*(lambda4 + mu3)")
}

/// Scalar curvature from the last printed curvature line, `τ = 2ρ55`.
pub fn tau(p: &FamilyParams) -> Scalar {
    form(
        p,
        "-8*(lambda1^2 - lambda3^2) - 2*(lambda2 + mu1)^2 + 2*(lambda4 + mu3)^2",
    )
}

/// Levi-Civita table `∇_{e_i} e_j` for all 25 ordered pairs (0-based,
/// index 4 is `ξ`). Entries printed without a vector factor in the mixed
/// horizontal lines are read as multiples of `ξ`.
pub fn connection_table(p: &FamilyParams) -> BTreeMap<(usize, usize), Vec<Scalar>> {
    let z = Polynomial::zero();
    let l1 = form(p, "lambda1");
    let l3 = form(p, "lambda3");
    let a = form(p, "(lambda2 + mu1)/2");
    let b = form(p, "(lambda4 + mu3)/2");
    let c = form(p, "(lambda2 - mu1)/2");
    let d = form(p, "(lambda4 - mu3)/2");
    let xi = |s: Scalar| vec![z.clone(), z.clone(), z.clone(), z.clone(), s];
    let mut t = BTreeMap::new();
    t.insert((0, 0), xi(-&l1));
    t.insert((1, 1), xi(l1.clone()));
    t.insert((2, 2), xi(l1.clone()));
    t.insert((3, 3), xi(-&l1));
    t.insert((4, 4), xi(z.clone()));
    t.insert((0, 1), xi(-&a));
    t.insert((1, 0), xi(-&a));
    t.insert((2, 3), xi(a.clone()));
    t.insert((3, 2), xi(a.clone()));
    t.insert((0, 2), xi(l3.clone()));
    t.insert((2, 0), xi(l3.clone()));
    t.insert((1, 3), xi(-&l3));
    t.insert((3, 1), xi(-&l3));
    for ij in [(0, 3), (1, 2), (2, 1), (3, 0)] {
        t.insert(ij, xi(b.clone()));
    }
    t.insert((0, 4), vec![l1.clone(), a.clone(), l3.clone(), b.clone(), z.clone()]);
    t.insert((1, 4), vec![a.clone(), -&l1, b.clone(), -&l3, z.clone()]);
    t.insert((2, 4), vec![-&l3, -&b, l1.clone(), a.clone(), z.clone()]);
    t.insert((3, 4), vec![-&b, l3.clone(), a.clone(), -&l1, z.clone()]);
    t.insert((4, 0), vec![z.clone(), -&c, z.clone(), -&d, z.clone()]);
    t.insert((4, 1), vec![c.clone(), z.clone(), d.clone(), z.clone(), z.clone()]);
    t.insert((4, 2), vec![z.clone(), d.clone(), z.clone(), -&c, z.clone()]);
    t.insert((4, 3), vec![-&d, z.clone(), c.clone(), z.clone(), z.clone()]);
    t
}

/// The printed values `F(e_i, e_j, ξ)` for `i, j ≤ 4` (0-based, `i ≤ j`).
pub fn f_xi_table(p: &FamilyParams) -> BTreeMap<(usize, usize), Scalar> {
    let l1 = form(p, "lambda1");
    let l3 = form(p, "lambda3");
    let a = form(p, "(lambda2 + mu1)/2");
    let b = form(p, "(lambda4 + mu3)/2");
    BTreeMap::from([
        ((0, 0), l3.clone()),
        ((1, 1), -&l3),
        ((2, 2), -&l3),
        ((3, 3), l3.clone()),
        ((0, 2), l1.clone()),
        ((1, 3), -&l1),
        ((0, 3), a.clone()),
        ((1, 2), a),
        ((0, 1), b.clone()),
        ((2, 3), -&b),
    ])
}

/// The full `F` implied by the printed table: `F(e_i,e_j,ξ)` as listed,
/// symmetric in `i, j`, `F(e_i, ξ, e_j) = F(e_i, e_j, ξ)`, and zero elsewhere.
pub fn fundamental_tensor(p: &FamilyParams) -> Tensor {
    let table = f_xi_table(p);
    let value = |i: usize, j: usize| {
        table
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(Polynomial::zero)
    };
    Tensor::from_fn(5, 3, |ix| match (ix[0], ix[1], ix[2]) {
        (i, j, 4) if i < 4 && j < 4 => value(i, j),
        (i, 4, j) if i < 4 && j < 4 => value(i, j),
        _ => Polynomial::zero(),
    })
}

/// The printed components `R(ξ, e_i, e_j, ξ)` for `i ≤ j ≤ 4` (0-based).
pub fn vertical_block(p: &FamilyParams) -> BTreeMap<(usize, usize), Scalar> {
    let r11 = form(
        p,
        "-lambda1^2 + lambda3^2 - 3/4*(lambda2^2 - lambda4^2) + 1/4*(mu1^2 - mu3^2) \
         - 1/2*(lambda2*mu1 - lambda4*mu3)",
    );
    let r22 = form(
        p,
        "-lambda1^2 + lambda3^2 + 1/4*(lambda2^2 - lambda4^2) - 3/4*(mu1^2 - mu3^2) \
         - 1/2*(lambda2*mu1 - lambda4*mu3)",
    );
    let r12 = form(p, "lambda1*(lambda2 - mu1) - lambda3*(lambda4 - mu3)");
    let r14 = form(p, "-lambda1*(lambda4 - mu3) - lambda3*(lambda2 - mu1)");
    let r13 = form(
        p,
        "2*lambda1*lambda3 + 3/2*lambda2*lambda4 - 1/2*mu1*mu3 + 1/2*(lambda2*mu3 + lambda4*mu1)",
    );
    let r24 = form(
        p,
        "2*lambda1*lambda3 - 1/2*lambda2*lambda4 + 3/2*mu1*mu3 + 1/2*(lambda2*mu3 + lambda4*mu1)",
    );
    BTreeMap::from([
        ((0, 0), r11.clone()),
        ((2, 2), -&r11),
        ((1, 1), r22.clone()),
        ((3, 3), -&r22),
        ((0, 1), r12.clone()),
        ((2, 3), -&r12),
        ((0, 3), r14.clone()),
        ((1, 2), r14),
        ((0, 2), r13),
        ((1, 3), r24),
    ])
}

/// The curvature tensor implied by the printed block and the symmetries
/// `R_ijkl = R_klij = −R_jikl = −R_ijlk`; components not reached are zero.
pub fn curvature_closure(p: &FamilyParams) -> Tensor {
    let block = vertical_block(p);
    let xi = 4;
    let b = |i: usize, j: usize| {
        block
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(Polynomial::zero)
    };
    Tensor::from_fn(5, 4, |ix| {
        let [a, c, d, e] = [ix[0], ix[1], ix[2], ix[3]];
        // R(ξ,i,j,ξ) with the four sign patterns obtained by the two skews
        let sign_pos = |x: usize, y: usize| x == xi && y != xi;
        if sign_pos(a, c) && d != xi && e == xi {
            b(c, d)
        } else if sign_pos(a, c) && d == xi && e != xi {
            -b(c, e)
        } else if c == xi && a != xi && d != xi && e == xi {
            -b(a, d)
        } else if c == xi && a != xi && d == xi && e != xi {
            b(a, e)
        } else {
            Polynomial::zero()
        }
    })
}

/// The printed Ricci tensor: `ρ_ij` equal to the block for `i, j ≤ 4` and
/// `ρ55 = τ/2`; every other component zero.
pub fn ricci(p: &FamilyParams) -> Tensor {
    let block = vertical_block(p);
    let rho55 = tau(p).scale(&crate::scalar::rat(1, 2));
    Tensor::from_fn(5, 2, |ix| match (ix[0], ix[1]) {
        (4, 4) => rho55.clone(),
        (i, j) if i < 4 && j < 4 => block
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(Polynomial::zero),
        _ => Polynomial::zero(),
    })
}

/// Under `μ1 = λ2, μ3 = λ4` on the quadric: printed `(τ, τ*, ν, ν̃)` with
/// `τ = 8ν` and `τ* = −4ν̃`.
pub fn almost_einstein_values(p: &FamilyParams) -> (Scalar, Scalar, Scalar, Scalar) {
    let tau = form(p, "-8*(lambda1^2 + lambda2^2 - lambda3^2 - lambda4^2)");
    let tau_star = form(p, "8*(lambda1*lambda3 + lambda2*lambda4)");
    let nu = tau.scale(&crate::scalar::rat(1, 8));
    let nu_tilde = tau_star.scale(&crate::scalar::rat(-1, 4));
    (tau, tau_star, nu, nu_tilde)
}

/// `3(λ1² + λ2² − λ3² − λ4²) − 2(λ1λ3 + λ2λ4)`.
pub fn almost_einstein_quadric(p: &FamilyParams) -> Scalar {
    form(
        p,
        "3*(lambda1^2 + lambda2^2 - lambda3^2 - lambda4^2) - 2*(lambda1*lambda3 + lambda2*lambda4)",
    )
}

/// `λ1² + λ2² − λ3² − λ4²`.
pub fn scalar_flat_condition(p: &FamilyParams) -> Scalar {
    form(p, "lambda1^2 + lambda2^2 - lambda3^2 - lambda4^2")
}

/// The `F0` conditions `λ1, λ2 + μ1, λ3, λ4 + μ3`.
pub fn f0_conditions(p: &FamilyParams) -> [Scalar; 4] {
    [
        form(p, "lambda1"),
        form(p, "lambda2 + mu1"),
        form(p, "lambda3"),
        form(p, "lambda4 + mu3"),
    ]
}
