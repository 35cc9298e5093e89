//! Seeded random rational Lie algebras for property tests and cross-checks.
//!
//! A few templates with Jacobi built in (a derivation acting on an abelian
//! ideal, a Heisenberg-type nilpotent algebra, `sl(2)` plus an abelian
//! factor) are drawn with small rational parameters and then moved to a
//! random rational basis, which preserves the Jacobi identity.

use rand::Rng;

use super::LieAlgebra;
use crate::scalar::{rat, Polynomial, Rational};
use crate::tensor::Matrix;

pub fn small_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound);
    rat(num, den)
}

fn c<R: Rng>(rng: &mut R, bound: i64) -> Polynomial {
    Polynomial::constant(small_rational(rng, bound))
}

/// Invertible matrix with small integer entries.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    loop {
        let entries: Vec<Rational> = (0..n * n)
            .map(|_| rat(rng.gen_range(-bound..=bound), 1))
            .collect();
        let m = Matrix::from_fn(n, |i, j| entries[i * n + j].clone());
        if m.inverse().is_ok() {
            return m;
        }
    }
}

/// A random Lie algebra of dimension `dim >= 3`.
pub fn random_lie_algebra<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> LieAlgebra {
    assert!(dim >= 3);
    let base = match rng.gen_range(0..3) {
        0 => {
            // last vector acts on the abelian ideal spanned by the rest
            let last = dim - 1;
            let mut entries = Vec::new();
            for i in 0..last {
                for k in 0..last {
                    entries.push((i, last, k, c(rng, bound)));
                }
            }
            LieAlgebra::from_brackets(dim, entries).expect("valid brackets")
        }
        1 => {
            // [e1, e2] = a e3 (+ an abelian remainder), plus a derivation part
            // on the centre when there is room
            let mut entries = vec![(0, 1, 2, c(rng, bound))];
            if dim >= 5 {
                entries.push((3, 4, 2, c(rng, bound)));
            }
            LieAlgebra::from_brackets(dim, entries).expect("valid brackets")
        }
        _ => {
            // sl(2): [h,x]=2x, [h,y]=-2y, [x,y]=h, scaled by a rational
            let s = small_rational(rng, bound);
            let s = if s == rat(0, 1) { rat(1, 1) } else { s };
            let k = |v: i64| Polynomial::constant(rat(v, 1) * &s);
            let entries = vec![(0, 1, 1, k(2)), (0, 2, 2, k(-2)), (1, 2, 0, k(1))];
            LieAlgebra::from_brackets(dim, entries).expect("valid brackets")
        }
    };
    let p = random_invertible(rng, dim, 2);
    base.change_basis(&p).expect("invertible basis change")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::jacobi_check;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_algebras_satisfy_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in [3, 5, 7] {
            for _ in 0..10 {
                let l = random_lie_algebra(&mut rng, dim, 3);
                assert!(l.is_antisymmetric());
                assert!(jacobi_check(&l).holds());
            }
        }
    }
}
