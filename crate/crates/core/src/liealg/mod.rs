//! Left-invariant geometry on a Lie group: structure constants, the Jacobi
//! check, the Levi-Civita connection of a constant metric and its curvature.
//!
//! For left-invariant fields every covariant derivative has constant
//! components, so `∇_{e_i} e_j = Γ^k_{ij} e_k` is the whole connection and
//! `R(e_i,e_j)e_k = ∇_i∇_j e_k − ∇_j∇_i e_k − ∇_{[e_i,e_j]} e_k`.

pub mod random;

use crate::error::{Error, Result};
use crate::scalar::{Assignment, Polynomial, Scalar};
use crate::tensor::{contract, mat_vec, Matrix, Metric, Tensor};

/// Structure constants `[e_i, e_j] = C^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    // c[(k * dim + i) * dim + j] = C^k_{ij}
    c: Vec<Scalar>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            c: vec![Polynomial::zero(); dim * dim * dim],
        }
    }

    /// Builds from entries `(i, j, k, coeff)` meaning `[e_i, e_j] ∋ coeff·e_k`
    /// (0-based). Repeated entries add up; the `(j, i)` entries are filled
    /// in by antisymmetry.
    pub fn from_brackets<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let mut l = LieAlgebra::abelian(dim);
        for (i, j, k, coeff) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Validation(format!(
                    "bracket index out of range in [e{}, e{}] -> e{}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if i == j {
                if coeff.is_zero() {
                    continue;
                }
                return Err(Error::Validation(format!(
                    "[e{0}, e{0}] must vanish",
                    i + 1
                )));
            }
            let a = l.idx(k, i, j);
            let b = l.idx(k, j, i);
            l.c[a] += &coeff;
            l.c[b] -= &coeff;
        }
        Ok(l)
    }

    fn idx(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.dim + i) * self.dim + j
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `C^k_{ij}`.
    pub fn constant(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.c[self.idx(k, i, j)]
    }

    /// Components of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.constant(k, i, j).clone()).collect()
    }

    /// Bracket of two constant-coefficient vectors.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Polynomial::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(k, i, j);
                    if !c.is_zero() {
                        *o += &(c * &uv);
                    }
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|k| {
            (0..n).all(|i| {
                (0..n).all(|j| (self.constant(k, i, j) + self.constant(k, j, i)).is_zero())
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Polynomial::is_zero)
    }

    /// Nonzero brackets `(i, j, k, C^k_{ij})` with `i < j`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let c = self.constant(k, i, j);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> LieAlgebra {
        LieAlgebra {
            dim: self.dim,
            c: self.c.iter().map(f).collect(),
        }
    }

    pub fn substitute_values(&self, assignment: &Assignment) -> LieAlgebra {
        self.map_scalars(|c| c.substitute_values(assignment))
    }

    /// Structure constants in the basis `f_a = Σ_i P_{ia} e_i`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim;
        let p_inv = p.inverse()?;
        let col = |a: usize| -> Vec<Scalar> {
            (0..n).map(|i| Polynomial::constant(p.get(i, a).clone())).collect()
        };
        let mut out = LieAlgebra::abelian(n);
        for a in 0..n {
            for b in 0..n {
                let br = self.bracket(&col(a), &col(b));
                let coords = mat_vec(&p_inv, &br);
                for (k, v) in coords.into_iter().enumerate() {
                    let ix = out.idx(k, a, b);
                    out.c[ix] = v;
                }
            }
        }
        Ok(out)
    }

    /// Reorders the basis so that new basis vector `k` is old vector `perm[k]`.
    pub fn permute_basis(&self, perm: &[usize]) -> LieAlgebra {
        let n = self.dim;
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut out = LieAlgebra::abelian(n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let ix = out.idx(inv[k], inv[i], inv[j]);
                    out.c[ix] = self.constant(k, i, j).clone();
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiWitness {
    /// 0-based `(i, j, k)` with `i < j < k`.
    pub triple: (usize, usize, usize),
    /// Components of `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiCheck {
    pub witness: Option<JacobiWitness>,
}

impl JacobiCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.witness {
            None => Ok(()),
            Some(w) => Err(Error::Jacobi {
                triple: w.triple,
                residual: format_vector(&w.residual),
            }),
        }
    }
}

/// Checks the Jacobi identity on every basis triple; reports the first
/// failing triple in lexicographic order.
pub fn jacobi_check(l: &LieAlgebra) -> JacobiCheck {
    let n = l.dim();
    let unit = |i: usize| -> Vec<Scalar> {
        (0..n)
            .map(|k| if k == i { Polynomial::one() } else { Polynomial::zero() })
            .collect()
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = l.bracket(&l.bracket_basis(i, j), &unit(k));
                let b = l.bracket(&l.bracket_basis(j, k), &unit(i));
                let c = l.bracket(&l.bracket_basis(k, i), &unit(j));
                let residual: Vec<Scalar> = (0..n).map(|m| &(&a[m] + &b[m]) + &c[m]).collect();
                if residual.iter().any(|r| !r.is_zero()) {
                    return JacobiCheck {
                        witness: Some(JacobiWitness {
                            triple: (i, j, k),
                            residual,
                        }),
                    };
                }
            }
        }
    }
    JacobiCheck { witness: None }
}

/// Renders component vectors as `[a, b, ...]`.
pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Christoffel symbols of a left-invariant connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    dim: usize,
    // gamma[(i * dim + j) * dim + k] = Γ^k_{ij}
    gamma: Vec<Scalar>,
}

impl Connection {
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Γ^k_{ij}`.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.gamma[self.idx(i, j, k)]
    }

    /// Components of `∇_{e_i} e_j`.
    pub fn nabla(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.gamma(i, j, k).clone()).collect()
    }

    /// `∇_{e_i} v` for a constant-coefficient vector `v`.
    pub fn nabla_vector(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Polynomial::zero(); self.dim];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                let g = self.gamma(i, j, k);
                if !g.is_zero() {
                    *o += &(g * vj);
                }
            }
        }
        out
    }

    /// `∇_u v` for constant-coefficient vectors.
    pub fn nabla_along(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Polynomial::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.nabla_vector(i, v)) {
                *o += &(&x * ui);
            }
        }
        out
    }

    /// `(i, j, k) ↦ Γ^k_{ij} − Γ^k_{ji} − C^k_{ij}`; zero iff torsion-free.
    pub fn torsion_residual(&self, l: &LieAlgebra) -> Tensor {
        Tensor::from_fn(self.dim, 3, |ix| {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            &(self.gamma(i, j, k) - self.gamma(j, i, k)) - l.constant(k, i, j)
        })
    }

    /// `(i, j, k) ↦ g(∇_i e_j, e_k) + g(e_j, ∇_i e_k)`; zero iff `∇g = 0`.
    pub fn metric_residual(&self, m: &Metric) -> Tensor {
        let lowered: Vec<Vec<Scalar>> = (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| m.lower(&self.nabla(i, j)))
            .collect();
        Tensor::from_fn(self.dim, 3, |ix| {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            &lowered[i * self.dim + j][k] + &lowered[i * self.dim + k][j]
        })
    }

    pub fn substitute_values(&self, assignment: &Assignment) -> Connection {
        Connection {
            dim: self.dim,
            gamma: self.gamma.iter().map(|g| g.substitute_values(assignment)).collect(),
        }
    }
}

/// Levi-Civita connection of a constant metric from the left-invariant
/// Koszul formula
/// `2g(∇_{e_i}e_j, e_k) = g([e_i,e_j],e_k) + g([e_k,e_i],e_j) + g([e_k,e_j],e_i)`.
///
/// Torsion-freeness and metric compatibility are re-checked on the result.
pub fn levi_civita(l: &LieAlgebra, m: &Metric) -> Result<Connection> {
    let n = l.dim();
    if m.dim() != n {
        return Err(Error::Shape(format!(
            "metric has dimension {}, algebra {}",
            m.dim(),
            n
        )));
    }
    // lowered[i][j][k] = g([e_i, e_j], e_k)
    let lowered: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|i| (0..n).map(|j| m.lower(&l.bracket_basis(i, j))).collect())
        .collect();
    let half = crate::scalar::rat(1, 2);
    let mut gamma = vec![Polynomial::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let cov: Vec<Scalar> = (0..n)
                .map(|k| (&(&lowered[i][j][k] + &lowered[k][i][j]) + &lowered[k][j][i]).scale(&half))
                .collect();
            for (k, v) in m.raise(&cov).into_iter().enumerate() {
                gamma[(i * n + j) * n + k] = v;
            }
        }
    }
    let conn = Connection { dim: n, gamma };
    if !conn.torsion_residual(l).is_zero() {
        return Err(Error::Validation("Koszul connection is not torsion-free".into()));
    }
    if !conn.metric_residual(m).is_zero() {
        return Err(Error::Validation("Koszul connection is not metric".into()));
    }
    Ok(conn)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureData {
    /// `R(x,y,z,w) = g(R(x,y)z, w)`.
    pub riemann: Tensor,
    /// `ρ(y,z) = g^{ij} R(e_i, y, z, e_j)`.
    pub ricci: Tensor,
    /// `τ = g^{ij} ρ_{ij}`.
    pub scalar: Scalar,
}

/// Curvature with `R = [∇,∇] − ∇_{[ , ]}`, Ricci contraction on the first
/// and last slots.
pub fn curvature(conn: &Connection, l: &LieAlgebra, m: &Metric) -> CurvatureData {
    let n = conn.dim();
    let mut vec_r = vec![Polynomial::zero(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let base = ((i * n + j) * n + k) * n;
                for l_ in 0..n {
                    let a = conn.gamma(j, k, l_);
                    let b = conn.gamma(i, k, l_);
                    let c = l.constant(l_, i, j);
                    for mm in 0..n {
                        let mut term = Polynomial::zero();
                        if !a.is_zero() {
                            let g = conn.gamma(i, l_, mm);
                            if !g.is_zero() {
                                term += &(a * g);
                            }
                        }
                        if !b.is_zero() {
                            let g = conn.gamma(j, l_, mm);
                            if !g.is_zero() {
                                term -= &(b * g);
                            }
                        }
                        if !c.is_zero() {
                            let g = conn.gamma(l_, k, mm);
                            if !g.is_zero() {
                                term -= &(c * g);
                            }
                        }
                        if !term.is_zero() {
                            vec_r[base + mm] += term;
                        }
                    }
                }
            }
        }
    }
    let riemann = Tensor::from_fn(n, 4, |ix| {
        let base = ((ix[0] * n + ix[1]) * n + ix[2]) * n;
        m.lower(&vec_r[base..base + n])[ix[3]].clone()
    });
    let ricci = contract(&riemann, 0, 3, m).expect("rank-4 contraction");
    let scalar = contract(&ricci, 0, 1, m).expect("rank-2 contraction").value().clone();
    CurvatureData {
        riemann,
        ricci,
        scalar,
    }
}

/// Residual tensors of the algebraic curvature symmetries; all vanish for
/// the curvature of a Levi-Civita connection.
#[derive(Clone, Debug)]
pub struct CurvatureSymmetries {
    /// `R(x,y,z,w) + R(y,x,z,w)`
    pub skew_first: Tensor,
    /// `R(x,y,z,w) + R(x,y,w,z)`
    pub skew_last: Tensor,
    /// `R(x,y,z,w) − R(z,w,x,y)`
    pub pair: Tensor,
    /// cyclic sum over `(x, y, z)`
    pub bianchi: Tensor,
}

impl CurvatureSymmetries {
    pub fn of(r: &Tensor) -> Self {
        CurvatureSymmetries {
            skew_first: r.add(&r.permute(&[1, 0, 2, 3])),
            skew_last: r.add(&r.permute(&[0, 1, 3, 2])),
            pair: r.sub(&r.permute(&[2, 3, 0, 1])),
            bianchi: cyclic_sum_first_three(r),
        }
    }

    pub fn all_zero(&self) -> bool {
        self.skew_first.is_zero()
            && self.skew_last.is_zero()
            && self.pair.is_zero()
            && self.bianchi.is_zero()
    }

    pub fn named(&self) -> [(&'static str, &Tensor); 4] {
        [
            ("skew-first-pair", &self.skew_first),
            ("skew-last-pair", &self.skew_last),
            ("pair-symmetry", &self.pair),
            ("first-bianchi", &self.bianchi),
        ]
    }
}

/// `T(x,y,z,w) + T(y,z,x,w) + T(z,x,y,w)`.
pub fn cyclic_sum_first_three(t: &Tensor) -> Tensor {
    // result slot order (x,y,z,w): input slot k takes result slot perm[k]
    t.add(&t.permute(&[1, 2, 0, 3])).add(&t.permute(&[2, 0, 1, 3]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn paper_metric() -> Metric {
        Metric::new(Matrix::diagonal(&[int(1), int(1), int(-1), int(-1), int(1)])).unwrap()
    }

    #[test]
    fn abelian_is_flat() {
        let l = LieAlgebra::abelian(5);
        assert!(jacobi_check(&l).holds());
        let conn = levi_civita(&l, &paper_metric()).unwrap();
        assert!(conn.gamma.iter().all(Polynomial::is_zero));
        let curv = curvature(&conn, &l, &paper_metric());
        assert!(curv.riemann.is_zero());
        assert!(curv.ricci.is_zero());
        assert!(curv.scalar.is_zero());
    }

    #[test]
    fn jacobi_failure_witness() {
        // [e1,e2]=e1, [e1,e3]=e2
        let l = LieAlgebra::from_brackets(
            3,
            [(0, 1, 0, Polynomial::one()), (0, 2, 1, Polynomial::one())],
        )
        .unwrap();
        let w = jacobi_check(&l).witness.unwrap();
        assert_eq!(w.triple, (0, 1, 2));
        assert_eq!(
            w.residual,
            vec![Polynomial::zero(), Polynomial::one(), Polynomial::zero()]
        );
        assert!(matches!(
            jacobi_check(&l).into_result(),
            Err(Error::Jacobi { triple: (0, 1, 2), .. })
        ));
    }

    #[test]
    fn brackets_are_antisymmetrised() {
        let l = LieAlgebra::from_brackets(3, [(0, 1, 2, Polynomial::int(3))]).unwrap();
        assert_eq!(l.constant(2, 1, 0), &Polynomial::int(-3));
        assert!(l.is_antisymmetric());
        assert!(LieAlgebra::from_brackets(3, [(1, 1, 0, Polynomial::one())]).is_err());
        assert!(LieAlgebra::from_brackets(3, [(0, 3, 0, Polynomial::one())]).is_err());
    }

    #[test]
    fn so3_has_positive_curvature() {
        // [e1,e2]=e3 and cyclic with the Euclidean metric: constant curvature 1/4
        let one = Polynomial::one;
        let l = LieAlgebra::from_brackets(
            3,
            [(0, 1, 2, one()), (1, 2, 0, one()), (2, 0, 1, one())],
        )
        .unwrap();
        assert!(jacobi_check(&l).holds());
        let m = Metric::new(Matrix::identity(3)).unwrap();
        let conn = levi_civita(&l, &m).unwrap();
        let curv = curvature(&conn, &l, &m);
        // sectional curvature K(e1,e2) = R(e1,e2,e2,e1) = 1/4
        assert_eq!(curv.riemann.get(&[0, 1, 1, 0]), &Polynomial::constant(crate::scalar::rat(1, 4)));
        assert_eq!(curv.scalar, Polynomial::constant(crate::scalar::rat(3, 2)));
        assert!(CurvatureSymmetries::of(&curv.riemann).all_zero());
    }

    #[test]
    fn change_basis_preserves_jacobi() {
        let one = Polynomial::one;
        let l = LieAlgebra::from_brackets(
            3,
            [(0, 1, 2, one()), (1, 2, 0, one()), (2, 0, 1, one())],
        )
        .unwrap();
        let p = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]).unwrap();
        let l2 = l.change_basis(&p).unwrap();
        assert!(l2.is_antisymmetric());
        assert!(jacobi_check(&l2).holds());
        assert_ne!(l2, l);
    }

    #[test]
    fn permute_basis_moves_brackets() {
        let l = LieAlgebra::from_brackets(3, [(0, 1, 2, Polynomial::one())]).unwrap();
        let p = l.permute_basis(&[2, 0, 1]);
        // old e3 -> new e1, old e1 -> new e2, old e2 -> new e3
        assert_eq!(p.constant(0, 1, 2), &Polynomial::one());
    }
}
