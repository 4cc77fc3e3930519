//! Second Poisson cohomology of `{x,y} = psi` on the plane.

use crate::error::{Error, Result};
use crate::groebner::{self, MonomialOrder};
use crate::poly::{Grading, Poly, WeightSystem};

/// Dimensions of the two summands of H^2 for `{x,y} = psi`: the degree
/// `w(psi) - w1 - w2` part of `Q[x,y]` and the Milnor algebra of `psi`.
///
/// For weight-homogeneous `psi` the Euler formula puts `psi` in its Jacobian
/// ideal, so `psi` is square-free exactly when the two partials have no
/// common factor, i.e. when the Milnor algebra is finite-dimensional.
pub fn h2_dim_plane(psi: &Poly, w: &WeightSystem) -> Result<(usize, usize)> {
    if psi.arity() != 2 || w.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: if psi.arity() != 2 { psi.arity() } else { w.arity() },
        });
    }
    let degree = match psi.grading(w)? {
        Grading::Homogeneous(d) => d,
        Grading::Zero => return Err(Error::NotSquareFree),
        Grading::Inhomogeneous => return Err(Error::NotHomogeneous),
    };
    let order = MonomialOrder::new(w.clone());
    let gb = groebner::groebner_basis(&psi.gradient(), &order)?;
    let second = match groebner::standard_monomials(&gb, &order, 2) {
        Ok(ms) => ms.len(),
        Err(Error::InfiniteDimension) => return Err(Error::NotSquareFree),
        Err(e) => return Err(e),
    };
    let n = degree - w.weight_sum();
    Ok((w.monomials_of_degree(n).len(), second))
}
