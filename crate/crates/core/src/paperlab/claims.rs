//! The fixed claim suite. Each check receives one subject (the symbolic
//! family or a numeric point of it) and returns a status with details.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::family::{
    build_general_family, derive_constraints, random_params, sample_almost_einstein_locus,
    sample_f0_locus, sample_isotropic_locus, sample_scalar_flat_einstein_locus,
    scalar_flat_einstein_branch, FamilyParams, F6_PARAMETERS,
};
use super::published;
use super::report::{ClaimKind, Detail, Status};
use crate::acbm::{
    almost_einstein_decompose, eta_of_nabla_xi, eta_xi_residual, verify_structure, Analysis,
    AcbmStructure,
};
use crate::error::Result;
use crate::liealg::{jacobi_check, random::small_rational, CurvatureSymmetries, LieAlgebra};
use crate::scalar::{format_rational, int, Polynomial, Rational, Scalar};
use crate::tensor::{rank_of_rows, Tensor};

pub(crate) struct Subject {
    pub params: FamilyParams,
    pub f6: Analysis,
    pub general: Analysis,
}

impl Subject {
    pub fn new(algebra: LieAlgebra, structure: AcbmStructure, params: FamilyParams, general: &FamilyParams) -> Result<Self> {
        let f6 = Analysis::run_unchecked(algebra, structure)?;
        let (lg, sg) = build_general_family(general);
        let general = Analysis::run_unchecked(lg, sg)?;
        Ok(Subject { params, f6, general })
    }

    /// The same subject with every parameter replaced by a value.
    pub fn at_point(&self, params: FamilyParams, general: &FamilyParams) -> Result<Self> {
        let assignment = params.assignment().expect("numeric point");
        let algebra = self.f6.algebra.substitute_values(&assignment);
        Subject::new(algebra, self.f6.structure.clone(), params, general)
    }

    pub fn is_symbolic(&self) -> bool {
        !self.params.is_numeric()
    }
}

pub(crate) struct Env {
    pub seed: u64,
    pub samples: usize,
}

pub(crate) struct Outcome {
    pub status: Status,
    pub details: Vec<Detail>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Scope {
    /// Evaluated on every subject: the symbolic family, or each sample point.
    Pointwise,
    /// Evaluated once on the symbolic family; may sample internally.
    Global,
}

pub(crate) struct ClaimDef {
    pub id: &'static str,
    pub kind: ClaimKind,
    pub anchor: &'static str,
    pub scope: Scope,
    pub check: fn(&Subject, &Env) -> Outcome,
}

use ClaimKind::{Table, Theorem};
use Scope::{Global, Pointwise};

pub(crate) const CLAIMS: &[ClaimDef] = &[
    ClaimDef {
        id: "thm-structure-relations",
        kind: Theorem,
        anchor: "the frame, phi, xi, eta and g of the family form an almost contact B-metric structure",
        scope: Pointwise,
        check: structure_relations,
    },
    ClaimDef {
        id: "thm-jacobi-identity",
        kind: Theorem,
        anchor: "the brackets of the family satisfy the Jacobi identity",
        scope: Pointwise,
        check: jacobi_identity,
    },
    ClaimDef {
        id: "thm-lee-constraint-solution",
        kind: Theorem,
        anchor: "theta(xi) = theta*(xi) = 0 on the eight-parameter family forces mu2 = -lambda1, mu4 = -lambda3",
        scope: Global,
        check: lee_constraint_solution,
    },
    ClaimDef {
        id: "tbl-lee-xi-values",
        kind: Table,
        anchor: "printed values theta(xi) = 2(lambda1 + mu2), theta*(xi) = 2(lambda3 + mu4)",
        scope: Global,
        check: lee_xi_values,
    },
    ClaimDef {
        id: "thm-connection-table",
        kind: Theorem,
        anchor: "printed Levi-Civita components of the family",
        scope: Pointwise,
        check: connection_table,
    },
    ClaimDef {
        id: "thm-connection-levi-civita",
        kind: Theorem,
        anchor: "the Koszul connection is torsion-free and metric",
        scope: Pointwise,
        check: connection_levi_civita,
    },
    ClaimDef {
        id: "thm-fundamental-table",
        kind: Theorem,
        anchor: "printed nonzero components F(e_i, e_j, xi) of the fundamental tensor",
        scope: Pointwise,
        check: fundamental_table,
    },
    ClaimDef {
        id: "thm-fundamental-routes",
        kind: Theorem,
        anchor: "F from the connection equals F from the bracket formula",
        scope: Pointwise,
        check: fundamental_routes,
    },
    ClaimDef {
        id: "thm-fundamental-symmetries",
        kind: Theorem,
        anchor: "F(x,y,z) = F(x,z,y) = -F(x,phi y,phi z) + eta(y)F(x,xi,z) + eta(z)F(x,y,xi)",
        scope: Pointwise,
        check: fundamental_symmetries,
    },
    ClaimDef {
        id: "thm-eta-xi-relations",
        kind: Theorem,
        anchor: "F(x,phi y,xi) = (nabla_x eta)y and |nabla eta|^2 = |nabla xi|^2",
        scope: Pointwise,
        check: eta_xi_relations,
    },
    ClaimDef {
        id: "thm-class-f6",
        kind: Theorem,
        anchor: "the family belongs to the class F6",
        scope: Pointwise,
        check: class_f6,
    },
    ClaimDef {
        id: "thm-class-f0-locus",
        kind: Theorem,
        anchor: "the family is F0 exactly when lambda1 = lambda2 + mu1 = lambda3 = lambda4 + mu3 = 0",
        scope: Pointwise,
        check: class_f0_locus,
    },
    ClaimDef {
        id: "thm-normality",
        kind: Theorem,
        anchor: "the Nijenhuis tensor and d eta vanish on the family",
        scope: Pointwise,
        check: normality,
    },
    ClaimDef {
        id: "thm-norms-relation-u",
        kind: Theorem,
        anchor: "|nabla phi|^2 + 2|nabla eta|^2 = 0 on the class U",
        scope: Pointwise,
        check: norms_relation_u,
    },
    ClaimDef {
        id: "thm-curvature-symmetries",
        kind: Theorem,
        anchor: "curvature skew symmetries, pair symmetry and first Bianchi identity",
        scope: Pointwise,
        check: curvature_symmetries,
    },
    ClaimDef {
        id: "thm-curvature-identity-u",
        kind: Theorem,
        anchor: "2R(x,y,phi^2 z,phi^2 w) + 2R(x,y,phi z,phi w) = (h o h)(x,y,z,w) + (h o h)(x,y,phi z,phi w) on U",
        scope: Pointwise,
        check: curvature_identity_u,
    },
    ClaimDef {
        id: "thm-curvature-cyclic-u1",
        kind: Theorem,
        anchor: "cyclic sum of R(x,y,phi^2 z,phi^2 w) + R(x,y,phi z,phi w) vanishes on U1",
        scope: Pointwise,
        check: curvature_cyclic_u1,
    },
    ClaimDef {
        id: "thm-curvature-shift-u2",
        kind: Theorem,
        anchor: "R(x,y,phi^2 z,phi^2 w) + R(x,y,phi z,phi w) is invariant under (x,y) -> (phi x,phi y) on U2",
        scope: Pointwise,
        check: curvature_shift_u2,
    },
    ClaimDef {
        id: "thm-curvature-vertical-block",
        kind: Theorem,
        anchor: "printed components R(xi, e_i, e_j, xi)",
        scope: Pointwise,
        check: curvature_vertical_block,
    },
    ClaimDef {
        id: "thm-isotropic-equivalence",
        kind: Theorem,
        anchor: "isotropic-F0, scalar flat and 4(lambda3^2 - lambda1^2) - (lambda2 + mu1)^2 + (lambda4 + mu3)^2 = 0 are equivalent",
        scope: Global,
        check: isotropic_equivalence,
    },
    ClaimDef {
        id: "thm-sampled-cross-check",
        kind: Theorem,
        anchor: "numeric recomputation at rational points agrees with the symbolic results",
        scope: Global,
        check: sampled_cross_check,
    },
    ClaimDef {
        id: "tbl-curvature-full-support",
        kind: Table,
        anchor: "the printed components and the curvature symmetries give every nonzero component of R",
        scope: Pointwise,
        check: curvature_full_support,
    },
    ClaimDef {
        id: "tbl-ricci-scalar",
        kind: Table,
        anchor: "printed Ricci components and tau = 2 rho55",
        scope: Pointwise,
        check: ricci_scalar,
    },
    ClaimDef {
        id: "tbl-associated-scalar",
        kind: Table,
        anchor: "printed tau* = 8 lambda1 lambda3 + 2(lambda2 + mu1)(lambda4 + mu3)",
        scope: Pointwise,
        check: associated_scalar,
    },
    ClaimDef {
        id: "tbl-norm-closed-form",
        kind: Table,
        anchor: "printed |nabla phi|^2 = 4(lambda3^2 - lambda1^2) - (lambda2 + mu1)^2 + (lambda4 + mu3)^2 and tau = 2|nabla phi|^2",
        scope: Global,
        check: norm_closed_form,
    },
    ClaimDef {
        id: "tbl-almost-einstein",
        kind: Table,
        anchor: "almost Einstein for mu1 = lambda2, mu3 = lambda4 on the quadric, with rho = tau/8 (g + 3 g~)",
        scope: Global,
        check: almost_einstein,
    },
    ClaimDef {
        id: "tbl-scalar-flat-almost-einstein",
        kind: Table,
        anchor: "scalar flat almost Einstein isotropic-F0 when also lambda1^2 + lambda2^2 - lambda3^2 - lambda4^2 = 0",
        scope: Global,
        check: scalar_flat_almost_einstein,
    },
];

fn hard(ok: bool) -> Status {
    if ok {
        Status::VerifiedExact
    } else {
        Status::Failed
    }
}

fn soft(ok: bool) -> Status {
    if ok {
        Status::VerifiedExact
    } else {
        Status::Discrepancy
    }
}

fn d(label: &str, value: impl ToString) -> Detail {
    Detail::new(label, value)
}

fn label(i: usize) -> String {
    if i == 4 {
        "xi".to_string()
    } else {
        format!("e{}", i + 1)
    }
}

fn args(ix: &[usize]) -> String {
    ix.iter().map(|&i| label(i)).collect::<Vec<_>>().join(",")
}

/// `0`, or the number of nonzero components and the first few.
pub(crate) fn render_residual(t: &Tensor) -> String {
    let nz = t.nonzero();
    if nz.is_empty() {
        return "0".to_string();
    }
    let shown: Vec<String> = nz
        .iter()
        .take(3)
        .map(|(ix, v)| format!("({}) = {}", args(ix), v))
        .collect();
    format!("{} nonzero components; {}", nz.len(), shown.join("; "))
}

fn render_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("({}) {}", c, label(i)))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ratio_text(r: Option<Rational>) -> String {
    match r {
        Some(r) => format_rational(&r),
        None => "not a constant multiple".to_string(),
    }
}

/// Sample points for sampled mode and the internal sampled checks: generic
/// points interleaved with points on the special loci. Each point also
/// carries an eight-parameter version with random `mu2`, `mu4`.
pub(crate) fn sample_points(seed: u64, count: usize) -> Vec<(FamilyParams, FamilyParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let p = match k % 5 {
                0 => random_params(&mut rng, 5),
                1 => sample_f0_locus(&mut rng, 5),
                2 => sample_isotropic_locus(&mut rng, 5),
                3 => sample_almost_einstein_locus(&mut rng, 3),
                _ => sample_scalar_flat_einstein_locus(&mut rng, 5),
            };
            let mut g = p.clone();
            g.mu[1] = Polynomial::constant(small_rational(&mut rng, 5));
            g.mu[3] = Polynomial::constant(small_rational(&mut rng, 5));
            g.constrained = false;
            (p, g)
        })
        .collect()
}

fn structure_relations(s: &Subject, _: &Env) -> Outcome {
    let check = verify_structure(&s.f6.structure);
    let (pos, neg) = s.f6.structure.metric().signature();
    let n = s.f6.structure.frame().n();
    let sig_ok = pos.min(neg) == n && pos + neg == 2 * n + 1;
    let mut details = vec![
        d("relations checked", "phi xi = 0; phi^2 = -Id + eta (x) xi; eta o phi = 0; eta(xi) = 1; g(phi x, phi y) = -g(x, y) + eta(x) eta(y)"),
        d("metric signature (positive, negative)", format!("({pos}, {neg})")),
    ];
    for w in check.witnesses.iter().take(3) {
        details.push(d(
            "violated",
            format!("{} at ({}): residual {}", w.relation, args(&w.indices), format_rational(&w.residual)),
        ));
    }
    Outcome {
        status: hard(check.holds() && sig_ok),
        details,
    }
}

fn jacobi_identity(s: &Subject, _: &Env) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (name, l) in [("six-parameter family", &s.f6.algebra), ("eight-parameter family", &s.general.algebra)] {
        let c = jacobi_check(l);
        match &c.witness {
            None => details.push(d(name, "all 10 basis triples satisfy Jacobi")),
            Some(w) => {
                ok = false;
                let (i, j, k) = w.triple;
                details.push(d(
                    name,
                    format!("Jacobi fails on ({}): residual {}", args(&[i, j, k]), render_vector(&w.residual)),
                ));
            }
        }
    }
    Outcome { status: hard(ok), details }
}

/// `θ(ξ) = −g^{ij} g([e_i,ξ], φe_j)` and `θ*(ξ) = g^{ij} g([e_i,ξ], e_j)`.
fn lee_xi_from_brackets(a: &Analysis) -> (Scalar, Scalar) {
    let s = &a.structure;
    let m = s.metric();
    let xi = s.reeb();
    let n = s.dim();
    let unit = |j: usize| -> Vec<Scalar> {
        (0..n).map(|k| if k == j { Polynomial::one() } else { Polynomial::zero() }).collect()
    };
    let mut theta = Polynomial::zero();
    let mut theta_star = Polynomial::zero();
    for i in 0..n {
        let bi = a.algebra.bracket_basis(i, xi);
        for j in 0..n {
            let gij = m.g_inv().get(i, j);
            if gij.is_zero() {
                continue;
            }
            theta -= &m.pair(&bi, &s.phi_of(&unit(j))).scale(gij);
            theta_star += m.pair(&bi, &unit(j)).scale(gij);
        }
    }
    (theta, theta_star)
}

fn lee_constraint_solution(s: &Subject, _: &Env) -> Outcome {
    let derived = match derive_constraints() {
        Ok(d) => d,
        Err(e) => {
            return Outcome {
                status: Status::Failed,
                details: vec![d("error", e)],
            }
        }
    };
    let expected = FamilyParams::symbolic();
    let solved = derived.mu2 == expected.mu[1] && derived.mu4 == expected.mu[3];
    let (bt, bts) = lee_xi_from_brackets(&s.general);
    let routes = bt == derived.theta_xi && bts == derived.theta_star_xi;
    let lee = &s.f6.lee;
    let vanish = lee.theta.is_zero() && lee.theta_star.is_zero();
    Outcome {
        status: hard(solved && routes && vanish),
        details: vec![
            d("engine theta(xi)", &derived.theta_xi),
            d("engine theta*(xi)", &derived.theta_star_xi),
            d("solved mu2", &derived.mu2),
            d("solved mu4", &derived.mu4),
            d("bracket formula theta(xi)", &bt),
            d("bracket formula theta*(xi)", &bts),
            d("theta on the constrained family", render_residual(&lee.theta)),
            d("theta* on the constrained family", render_residual(&lee.theta_star)),
        ],
    }
}

fn lee_xi_values(_: &Subject, _: &Env) -> Outcome {
    let derived = match derive_constraints() {
        Ok(d) => d,
        Err(e) => {
            return Outcome {
                status: Status::Failed,
                details: vec![d("error", e)],
            }
        }
    };
    let (pt, pts) = published::lee_xi_values(&FamilyParams::symbolic_general());
    let r1 = &derived.theta_xi - &pt;
    let r2 = &derived.theta_star_xi - &pts;
    let swapped = derived.theta_xi == pts && derived.theta_star_xi == pt;
    Outcome {
        status: soft(r1.is_zero() && r2.is_zero()),
        details: vec![
            d("engine theta(xi)", &derived.theta_xi),
            d("printed theta(xi)", &pt),
            d("residual theta(xi)", &r1),
            d("engine theta*(xi)", &derived.theta_star_xi),
            d("printed theta*(xi)", &pts),
            d("residual theta*(xi)", &r2),
            d("printed values match with theta and theta* exchanged", yes(swapped)),
        ],
    }
}

fn connection_table(s: &Subject, _: &Env) -> Outcome {
    let table = published::connection_table(&s.params);
    let mut mismatches = Vec::new();
    for ((i, j), printed) in &table {
        let engine = s.f6.connection.nabla(*i, *j);
        if &engine != printed {
            mismatches.push(format!(
                "nabla_{} {}: engine {}, printed {}",
                label(*i),
                label(*j),
                render_vector(&engine),
                render_vector(printed)
            ));
        }
    }
    let mut details = vec![
        d("entries compared", table.len()),
        d("reading", "entries printed as bare scalars are multiples of xi"),
        d("mismatched entries", mismatches.len()),
    ];
    details.extend(mismatches.into_iter().take(4).map(|m| d("mismatch", m)));
    Outcome {
        status: hard(details[2].value == "0"),
        details,
    }
}

fn connection_levi_civita(s: &Subject, _: &Env) -> Outcome {
    let t = s.f6.connection.torsion_residual(&s.f6.algebra);
    let m = s.f6.connection.metric_residual(s.f6.structure.metric());
    Outcome {
        status: hard(t.is_zero() && m.is_zero()),
        details: vec![
            d("torsion residual", render_residual(&t)),
            d("metric compatibility residual", render_residual(&m)),
        ],
    }
}

fn fundamental_table(s: &Subject, _: &Env) -> Outcome {
    let printed = published::fundamental_tensor(&s.params);
    let diff = s.f6.fundamental.tensor().sub(&printed);
    Outcome {
        status: hard(diff.is_zero()),
        details: vec![
            d("components compared", 125),
            d("reading", "F(e_i,e_j,xi) as printed, symmetric in i, j, F(e_i,xi,e_j) = F(e_i,e_j,xi), all others zero"),
            d("engine nonzero components", s.f6.fundamental.tensor().nonzero().len()),
            d("residual engine - printed", render_residual(&diff)),
        ],
    }
}

fn fundamental_routes(s: &Subject, _: &Env) -> Outcome {
    let a = &s.f6;
    let diff = a.fundamental.tensor().sub(a.fundamental_brackets.tensor());
    // 2F(e_i,e_j,xi) = -g([e_i,xi], phi e_j) - g([e_j,xi], phi e_i)
    let st = &a.structure;
    let n = st.dim();
    let xi = st.reeb();
    let unit = |j: usize| -> Vec<Scalar> {
        (0..n).map(|k| if k == j { Polynomial::one() } else { Polynomial::zero() }).collect()
    };
    let m = st.metric();
    let vertical = Tensor::from_fn(n, 2, |ix| {
        let (i, j) = (ix[0], ix[1]);
        let lhs = a.fundamental.get(i, j, xi).scale(&int(2));
        let r1 = m.pair(&a.algebra.bracket_basis(i, xi), &st.phi_of(&unit(j)));
        let r2 = m.pair(&a.algebra.bracket_basis(j, xi), &st.phi_of(&unit(i)));
        &(&lhs + &r1) + &r2
    });
    Outcome {
        status: hard(diff.is_zero() && vertical.is_zero()),
        details: vec![
            d("connection route - bracket route", render_residual(&diff)),
            d(
                "2F(x,y,xi) + g([x,xi],phi y) + g([y,xi],phi x)",
                render_residual(&vertical),
            ),
        ],
    }
}

fn fundamental_symmetries(s: &Subject, _: &Env) -> Outcome {
    let f = &s.f6.fundamental;
    let sym = f.symmetry_residual();
    let exp = f.phi_expansion_residual(&s.f6.structure);
    Outcome {
        status: hard(sym.is_zero() && exp.is_zero()),
        details: vec![
            d("F(x,y,z) - F(x,z,y)", render_residual(&sym)),
            d("phi expansion residual", render_residual(&exp)),
        ],
    }
}

fn eta_xi_relations(s: &Subject, _: &Env) -> Outcome {
    let a = &s.f6;
    let r = eta_xi_residual(&a.fundamental, &a.h, &a.structure);
    let e = eta_of_nabla_xi(&a.connection, &a.structure);
    let norm = &a.norms.sq_nabla_eta - &a.norms.sq_nabla_xi;
    let e_ok = e.iter().all(Polynomial::is_zero);
    Outcome {
        status: hard(r.is_zero() && e_ok && norm.is_zero()),
        details: vec![
            d("F(x,phi y,xi) - (nabla_x eta)y", render_residual(&r)),
            d("eta(nabla_x xi)", render_vector(&e)),
            d("|nabla eta|^2 - |nabla xi|^2", &norm),
        ],
    }
}

fn render_flags(s: &Subject) -> String {
    let f = s.f6.classification.flags;
    format!(
        "F0={} U={} U1={} U2={} F4={} F5={} F6={} isotropic-F0={} normal={} d-eta-zero={}",
        f.f0, f.u, f.u1, f.u2, f.f4, f.f5, f.f6, f.isotropic_f0, f.normal_n_zero, f.eta_closed
    )
}

fn class_f6(s: &Subject, _: &Env) -> Outcome {
    let f = s.f6.classification.flags;
    let generic_ok = !s.is_symbolic() || !f.f0;
    let mut details = vec![d("flags", render_flags(s))];
    for w in s.f6.classification.witnesses.iter().take(4) {
        details.push(d(
            "unsatisfied condition",
            format!("{} at ({}): {}", w.condition, args(&w.indices), w.residual),
        ));
    }
    Outcome {
        status: hard(f.u && f.u1 && f.u2 && f.f6 && generic_ok),
        details,
    }
}

/// Coefficient vector of a homogeneous linear polynomial in the six free
/// parameters; `None` otherwise.
fn linear_coefficients(p: &Scalar) -> Option<Vec<Rational>> {
    let mut row = vec![Rational::zero(); F6_PARAMETERS.len()];
    for (m, c) in p.terms() {
        if m.degree() != 1 {
            return None;
        }
        let (v, _) = &m.factors()[0];
        let k = F6_PARAMETERS.iter().position(|n| *n == v.name())?;
        row[k] = c.clone();
    }
    Some(row)
}

fn class_f0_locus(s: &Subject, _: &Env) -> Outcome {
    let conds = published::f0_conditions(&s.params);
    let f0 = s.f6.classification.flags.f0;
    if !s.is_symbolic() {
        let locus = conds.iter().all(Polynomial::is_zero);
        return Outcome {
            status: hard(f0 == locus),
            details: vec![
                d("engine F = 0", f0),
                d("conditions hold", locus),
            ],
        };
    }
    let comps: Vec<Scalar> = s
        .f6
        .fundamental
        .tensor()
        .nonzero()
        .into_iter()
        .map(|(_, v)| v.clone())
        .collect();
    let rows_f: Option<Vec<_>> = comps.iter().map(linear_coefficients).collect();
    let rows_c: Option<Vec<_>> = conds.iter().map(linear_coefficients).collect();
    let (Some(rf), Some(rc)) = (rows_f, rows_c) else {
        return Outcome {
            status: Status::Failed,
            details: vec![d("components", "not all linear in the parameters")],
        };
    };
    let rank_f = rank_of_rows(rf.clone());
    let rank_c = rank_of_rows(rc.clone());
    let rank_all = rank_of_rows(rf.into_iter().chain(rc).collect());
    let ok = !f0 && rank_f == rank_c && rank_c == rank_all && rank_c == 4;
    Outcome {
        status: hard(ok),
        details: vec![
            d("engine F = 0 for generic parameters", f0),
            d("rank of the span of the components of F", rank_f),
            d("rank of the span of the four conditions", rank_c),
            d("rank of the joint span", rank_all),
        ],
    }
}

fn normality(s: &Subject, _: &Env) -> Outcome {
    let n = &s.f6.normality;
    Outcome {
        status: hard(n.is_normal() && n.eta_closed()),
        details: vec![
            d("N", render_residual(&n.nijenhuis)),
            d("d eta", render_residual(&n.d_eta)),
        ],
    }
}

fn norms_relation_u(s: &Subject, _: &Env) -> Outcome {
    let n = &s.f6.norms;
    let r = n.u_relation_residual();
    Outcome {
        status: hard(s.f6.classification.flags.u && r.is_zero()),
        details: vec![
            d("in U", s.f6.classification.flags.u),
            d("|nabla phi|^2", &n.sq_nabla_phi),
            d("|nabla eta|^2", &n.sq_nabla_eta),
            d("|nabla phi|^2 + 2|nabla eta|^2", &r),
        ],
    }
}

fn curvature_symmetries(s: &Subject, _: &Env) -> Outcome {
    let sym = CurvatureSymmetries::of(&s.f6.curvature.riemann);
    Outcome {
        status: hard(sym.all_zero()),
        details: sym
            .named()
            .iter()
            .map(|(name, t)| d(name, render_residual(t)))
            .collect(),
    }
}

fn curvature_identity_u(s: &Subject, _: &Env) -> Outcome {
    let r = s.f6.theorem_r_residual();
    let u = s.f6.classification.flags.u;
    Outcome {
        status: hard(u && r.is_zero()),
        details: vec![d("in U", u), d("residual", render_residual(&r))],
    }
}

fn curvature_cyclic_u1(s: &Subject, _: &Env) -> Outcome {
    let (c, _) = s.f6.corollary_residuals();
    let u1 = s.f6.classification.flags.u1;
    Outcome {
        status: hard(u1 && c.is_zero()),
        details: vec![d("in U1", u1), d("residual", render_residual(&c))],
    }
}

fn curvature_shift_u2(s: &Subject, _: &Env) -> Outcome {
    let (_, c) = s.f6.corollary_residuals();
    let u2 = s.f6.classification.flags.u2;
    Outcome {
        status: hard(u2 && c.is_zero()),
        details: vec![d("in U2", u2), d("residual", render_residual(&c))],
    }
}

fn block_value(block: &BTreeMap<(usize, usize), Scalar>, i: usize, j: usize) -> Scalar {
    block
        .get(&(i.min(j), i.max(j)))
        .cloned()
        .unwrap_or_else(Polynomial::zero)
}

fn curvature_vertical_block(s: &Subject, _: &Env) -> Outcome {
    let block = published::vertical_block(&s.params);
    let r = &s.f6.curvature.riemann;
    let xi = 4;
    let mut mismatches = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let printed = block_value(&block, i, j);
            let engine = r.get(&[xi, i, j, xi]);
            if *engine != printed {
                mismatches.push(format!(
                    "R({}): engine {}, printed {}, residual {}",
                    args(&[xi, i, j, xi]),
                    engine,
                    printed,
                    engine - &printed
                ));
            }
        }
    }
    let mut details = vec![
        d("components compared", 16),
        d("mismatched components", mismatches.len()),
    ];
    let ok = mismatches.is_empty();
    details.extend(mismatches.into_iter().take(4).map(|m| d("mismatch", m)));
    Outcome {
        status: hard(ok),
        details,
    }
}

fn point_analysis(base: &Subject, p: &FamilyParams) -> Result<Analysis> {
    let a = p.assignment().expect("numeric point");
    Analysis::run_unchecked(base.f6.algebra.substitute_values(&a), base.f6.structure.clone())
}

fn isotropic_equivalence(s: &Subject, env: &Env) -> Outcome {
    let cond = published::isotropic_condition(&s.params);
    let phi_ratio = s.f6.norms.sq_nabla_phi.ratio_to(&cond);
    let tau_ratio = s.f6.curvature.scalar.ratio_to(&cond);
    let nonzero = |r: &Option<Rational>| r.as_ref().is_some_and(|r| !r.is_zero());
    let mut ok = nonzero(&phi_ratio) && nonzero(&tau_ratio);
    let mut details = vec![
        d("|nabla phi|^2 / condition polynomial", ratio_text(phi_ratio)),
        d("tau / condition polynomial", ratio_text(tau_ratio)),
    ];

    for p in [
        FamilyParams::from_i64([1, 0, 1, 0], 0, 0),
        FamilyParams::from_i64([1, 2, 1, -1], -2, 1),
    ] {
        let text = match point_analysis(s, &p) {
            Ok(a) => {
                let f = a.classification.flags;
                let good = f.isotropic_f0 && !f.f0 && a.curvature.scalar.is_zero();
                ok &= good;
                format!(
                    "isotropic-F0={} F0={} tau={}",
                    f.isotropic_f0, f.f0, a.curvature.scalar
                )
            }
            Err(e) => {
                ok = false;
                e.to_string()
            }
        };
        details.push(d(&format!("witness {}", p.render()), text));
    }

    let mut on_locus = 0;
    let mut violations = Vec::new();
    for (p, _) in sample_points(env.seed, env.samples) {
        let c = published::isotropic_condition(&p).is_zero();
        match point_analysis(s, &p) {
            Ok(a) => {
                on_locus += usize::from(c);
                let iso = a.norms.sq_nabla_phi.is_zero();
                let flat = a.curvature.scalar.is_zero();
                if iso != c || flat != c || a.classification.flags.isotropic_f0 != c {
                    violations.push(p.render());
                }
            }
            Err(e) => violations.push(format!("{}: {}", p.render(), e)),
        }
    }
    ok &= violations.is_empty();
    details.push(d("sampled points", env.samples));
    details.push(d("sampled points on the locus", on_locus));
    details.push(d("sampled equivalence violations", violations.len()));
    details.extend(violations.into_iter().take(3).map(|v| d("violation", v)));
    Outcome {
        status: hard(ok),
        details,
    }
}

fn sampled_cross_check(s: &Subject, env: &Env) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(env.seed ^ 0x5eed);
    let mut mismatches = Vec::new();
    let mut identity_failures = Vec::new();
    for _ in 0..env.samples {
        let p = random_params(&mut rng, 5);
        let asg = p.assignment().expect("numeric");
        let num = match point_analysis(s, &p) {
            Ok(a) => a,
            Err(e) => {
                mismatches.push(format!("{}: {}", p.render(), e));
                continue;
            }
        };
        let sym = &s.f6;
        let checks: [(&str, bool); 8] = [
            ("connection", sym.connection.substitute_values(&asg) == num.connection),
            ("F", sym.fundamental.tensor().substitute_values(&asg) == *num.fundamental.tensor()),
            ("R", sym.curvature.riemann.substitute_values(&asg) == num.curvature.riemann),
            ("rho", sym.curvature.ricci.substitute_values(&asg) == num.curvature.ricci),
            ("tau", sym.curvature.scalar.substitute_values(&asg) == num.curvature.scalar),
            ("tau*", sym.tau_star.substitute_values(&asg) == num.tau_star),
            ("|nabla phi|^2", sym.norms.sq_nabla_phi.substitute_values(&asg) == num.norms.sq_nabla_phi),
            ("|nabla eta|^2", sym.norms.sq_nabla_eta.substitute_values(&asg) == num.norms.sq_nabla_eta),
        ];
        for (name, good) in checks {
            if !good {
                mismatches.push(format!("{name} at {}", p.render()));
            }
        }
        let (c1, c2) = num.corollary_residuals();
        let identities = num.theorem_r_residual().is_zero()
            && c1.is_zero()
            && c2.is_zero()
            && CurvatureSymmetries::of(&num.curvature.riemann).all_zero()
            && num.norms.u_relation_residual().is_zero()
            && num.classification.flags.f6;
        if !identities {
            identity_failures.push(p.render());
        }
    }
    let ok = mismatches.is_empty() && identity_failures.is_empty();
    let mut details = vec![
        d("points", env.samples),
        d("symbolic/numeric mismatches", mismatches.len()),
        d("points where an identity fails numerically", identity_failures.len()),
    ];
    details.extend(mismatches.into_iter().take(3).map(|m| d("mismatch", m)));
    details.extend(identity_failures.into_iter().take(3).map(|m| d("identity failure", m)));
    Outcome {
        status: hard(ok),
        details,
    }
}

fn curvature_full_support(s: &Subject, _: &Env) -> Outcome {
    let implied = published::curvature_closure(&s.params);
    let r = &s.f6.curvature.riemann;
    let diff = r.sub(&implied);
    let extra: Vec<(Vec<usize>, Scalar)> = r
        .nonzero()
        .into_iter()
        .filter(|(ix, _)| implied.get(ix).is_zero())
        .map(|(ix, v)| (ix, v.clone()))
        .collect();
    let horizontal = extra.iter().filter(|(ix, _)| ix.iter().all(|&i| i != 4)).count();
    let mut details = vec![
        d("engine nonzero components", r.nonzero().len()),
        d("components implied by the printed block", implied.nonzero().len()),
        d("extra nonzero components", extra.len()),
        d("extra components with all arguments horizontal", horizontal),
    ];
    for (ix, v) in extra.iter().take(4) {
        details.push(d("extra", format!("R({}) = {}", args(ix), v)));
    }
    details.push(d("residual engine - implied", render_residual(&diff)));
    Outcome {
        status: soft(diff.is_zero()),
        details,
    }
}

fn ricci_scalar(s: &Subject, _: &Env) -> Outcome {
    let printed = published::ricci(&s.params);
    let rho = &s.f6.curvature.ricci;
    let diff = rho.sub(&printed);
    let tau_p = published::tau(&s.params);
    let tau_e = &s.f6.curvature.scalar;
    let tau_r = tau_e - &tau_p;
    let mut details = vec![
        d("engine rho(e1,e1)", rho.get(&[0, 0])),
        d("printed rho(e1,e1)", printed.get(&[0, 0])),
        d("engine rho(xi,xi)", rho.get(&[4, 4])),
        d("printed rho(xi,xi)", printed.get(&[4, 4])),
        d("residual rho engine - printed", render_residual(&diff)),
        d("engine tau", tau_e),
        d("printed tau", &tau_p),
        d("residual tau", &tau_r),
    ];
    if s.is_symbolic() {
        details.push(d("engine tau / printed tau", ratio_text(tau_e.ratio_to(&tau_p))));
    }
    Outcome {
        status: soft(diff.is_zero() && tau_r.is_zero()),
        details,
    }
}

fn associated_scalar(s: &Subject, _: &Env) -> Outcome {
    let printed = published::tau_star(&s.params);
    let engine = &s.f6.tau_star;
    let r = engine - &printed;
    Outcome {
        status: soft(r.is_zero()),
        details: vec![
            d("engine tau*", engine),
            d("printed tau*", &printed),
            d("residual", &r),
            d("engine rho*", render_residual(&s.f6.rho_star)),
        ],
    }
}

fn norm_closed_form(s: &Subject, _: &Env) -> Outcome {
    let printed = published::sq_nabla_phi(&s.params);
    let n = &s.f6.norms;
    let engine = &n.sq_nabla_phi;
    let ratio = engine.ratio_to(&printed);
    let tau = &s.f6.curvature.scalar;
    let (tau_p, eta_p, xi_p) = published::tau_chain(&s.params);
    let status = match &ratio {
        Some(r) if *r == int(1) => Status::VerifiedExact,
        Some(r) if !r.is_zero() => Status::Discrepancy,
        _ => Status::Failed,
    };
    let status = if status == Status::VerifiedExact
        && !(tau == &tau_p && n.sq_nabla_eta == eta_p && n.sq_nabla_xi == xi_p)
    {
        Status::Discrepancy
    } else {
        status
    };
    Outcome {
        status,
        details: vec![
            d("engine |nabla phi|^2", engine),
            d("printed |nabla phi|^2", &printed),
            d("residual", engine - &printed),
            d("engine / printed", ratio_text(ratio.clone())),
            d("vanishing loci coincide", yes(ratio.is_some_and(|r| !r.is_zero()))),
            d("engine tau / engine |nabla phi|^2", ratio_text(tau.ratio_to(engine))),
            d("engine |nabla eta|^2 / engine tau", ratio_text(n.sq_nabla_eta.ratio_to(tau))),
            d("printed chain tau", &tau_p),
            d("residual engine tau - printed chain tau", tau - &tau_p),
        ],
    }
}

fn almost_einstein(s: &Subject, env: &Env) -> Outcome {
    let subs = BTreeMap::from([
        ("mu1".to_string(), Polynomial::var("lambda2")),
        ("mu3".to_string(), Polynomial::var("lambda4")),
    ]);
    let mut details = Vec::new();
    let mut ok = true;
    match s.f6.substitute(&subs) {
        Ok(a) => {
            details.push(d(
                "engine rho for mu1 = lambda2, mu3 = lambda4",
                render_residual(&a.curvature.ricci),
            ));
            details.push(d("engine tau there", &a.curvature.scalar));
            details.push(d("engine tau* there", &a.tau_star));
            let p = s.params.substitute(&subs);
            let printed_tau = published::tau(&p);
            let printed_tau_star = published::tau_star(&p);
            details.push(d("printed tau there", &printed_tau));
            details.push(d("residual tau", &a.curvature.scalar - &printed_tau));
            details.push(d("printed tau* there", &printed_tau_star));
            details.push(d("residual tau*", &a.tau_star - &printed_tau_star));
        }
        Err(e) => {
            ok = false;
            details.push(d("error", e));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(env.seed ^ 0xa1e);
    let points = 12;
    let mut decomposed = 0;
    let mut matching = 0;
    let mut first_mismatch = None;
    for _ in 0..points {
        let p = sample_almost_einstein_locus(&mut rng, 3);
        let (tau_p, tau_star_p, nu_p, nu_t_p) = published::almost_einstein_values(&p);
        let a = match point_analysis(s, &p) {
            Ok(a) => a,
            Err(e) => {
                first_mismatch.get_or_insert(format!("{}: {}", p.render(), e));
                continue;
            }
        };
        let dec = almost_einstein_decompose(&a.curvature.ricci, &a.structure);
        let text = match &dec {
            Ok(Some((nu, nt))) => {
                decomposed += 1;
                if *nu == nu_p && *nt == nu_t_p {
                    matching += 1;
                }
                format!("(nu, nu~) = ({nu}, {nt})")
            }
            Ok(None) => "rho is not in the span of g and g~".to_string(),
            Err(e) => e.to_string(),
        };
        let matched = matches!(&dec, Ok(Some((nu, nt))) if *nu == nu_p && *nt == nu_t_p);
        if !matched && first_mismatch.is_none() {
            first_mismatch = Some(format!(
                "{}: engine {}, tau {}, tau* {}; printed (nu, nu~) = ({}, {}), tau {}, tau* {}",
                p.render(),
                text,
                a.curvature.scalar,
                a.tau_star,
                nu_p,
                nu_t_p,
                tau_p,
                tau_star_p
            ));
        }
    }
    ok &= matching == points;
    details.push(d("locus points", points));
    details.push(d("points where engine rho decomposes", decomposed));
    details.push(d("points matching the printed (nu, nu~)", matching));
    if let Some(m) = first_mismatch {
        details.push(d("first mismatch", m));
    }
    Outcome {
        status: soft(ok),
        details,
    }
}

fn scalar_flat_almost_einstein(s: &Subject, _: &Env) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (sign, name) in [(1, "branch (a, b, -b, a)"), (-1, "branch (a, b, b, -a)")] {
        let subs = scalar_flat_einstein_branch(sign);
        match s.f6.substitute(&subs) {
            Ok(a) => {
                let f = a.classification.flags;
                let dec = almost_einstein_decompose(&a.curvature.ricci, &a.structure);
                let dec_text = match &dec {
                    Ok(Some((nu, nt))) => format!("(nu, nu~) = ({nu}, {nt})"),
                    Ok(None) => "not in the span of g and g~".to_string(),
                    Err(e) => e.to_string(),
                };
                let zero = matches!(&dec, Ok(Some((nu, nt))) if nu.is_zero() && nt.is_zero());
                ok &= f.isotropic_f0 && a.curvature.scalar.is_zero() && zero;
                details.push(d(
                    name,
                    format!(
                        "isotropic-F0={} tau={} (printed 0) {}",
                        f.isotropic_f0, a.curvature.scalar, dec_text
                    ),
                ));
            }
            Err(e) => {
                ok = false;
                details.push(d(name, e));
            }
        }
    }
    Outcome {
        status: soft(ok),
        details,
    }
}
