//! Translation-invariant precurrents and their boundaries.
//!
//! An invariant `k`-precurrent is a constant horizontal `k`-vector `λ ∈ ∧^k H`.
//! Its boundary is the bracket part of the Chevalley–Eilenberg differential
//!
//! ```text
//! ∂(x1 ∧ … ∧ xk) = Σ_{i<j} (−1)^{i+j} [xi, xj] ∧ x1 ∧ … x̂i … x̂j … ∧ xk
//! ```
//!
//! (the derivative terms integrate to zero for invariant fields), and it is a
//! current exactly when this boundary vanishes.

use num_traits::Zero;

use crate::algebra::StratifiedLieAlgebra;
use crate::error::{CurrentsError, ExteriorError};
use crate::exterior::{contract, mc_differential, merge_sign, MultiCovector, MultiVector};
use crate::rational::Rational;

/// A constant horizontal `k`-vector field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPrecurrent {
    coefficients: MultiVector,
}

impl InvariantPrecurrent {
    pub fn new(
        alg: &StratifiedLieAlgebra,
        coefficients: MultiVector,
    ) -> Result<Self, CurrentsError> {
        if coefficients.dim() != alg.total_dim() {
            return Err(ExteriorError::DimensionMismatch {
                left: alg.total_dim(),
                right: coefficients.dim(),
            }
            .into());
        }
        if let Some(&bad) = coefficients
            .support_indices()
            .iter()
            .find(|&&i| !alg.is_horizontal(i))
        {
            return Err(CurrentsError::NotHorizontal(bad));
        }
        Ok(Self { coefficients })
    }

    pub fn degree(&self) -> usize {
        self.coefficients.degree()
    }

    pub fn coefficients(&self) -> &MultiVector {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> MultiVector {
        self.coefficients
    }
}

/// Boundary of an invariant precurrent: every blade is one `V2` index times `k−2` horizontal ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryVector(MultiVector);

impl BoundaryVector {
    pub fn as_multivector(&self) -> &MultiVector {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Bracket part of the Chevalley–Eilenberg boundary on all of `∧^k g`.
pub fn ce_boundary(
    alg: &StratifiedLieAlgebra,
    lambda: &MultiVector,
) -> Result<MultiVector, ExteriorError> {
    if lambda.dim() != alg.total_dim() {
        return Err(ExteriorError::DimensionMismatch {
            left: alg.total_dim(),
            right: lambda.dim(),
        });
    }
    let k = lambda.degree();
    let mut out = MultiVector::zero(lambda.dim(), k.saturating_sub(1));
    if k <= 1 {
        return Ok(out);
    }
    for (blade, coeff) in lambda.terms() {
        for i in 0..k {
            for j in (i + 1)..k {
                let br = alg.bracket_basis(blade[i], blade[j]);
                if br.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = blade
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != i && p != j)
                    .map(|(_, &x)| x)
                    .collect();
                let base = if (i + j) % 2 == 0 {
                    coeff.clone()
                } else {
                    -coeff.clone()
                };
                for (l, c) in br.iter() {
                    if let Some((odd, sorted)) = merge_sign(&[l], &rest) {
                        let term = &base * c;
                        out.add_term(sorted, if odd { -term } else { term });
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn invariant_boundary(
    alg: &StratifiedLieAlgebra,
    t: &InvariantPrecurrent,
) -> Result<BoundaryVector, CurrentsError> {
    let b = ce_boundary(alg, t.coefficients())?;
    for (blade, _) in b.terms() {
        let second = blade.iter().filter(|&&i| alg.layer_of(i) == 2).count();
        let horizontal = blade.iter().filter(|&&i| alg.is_horizontal(i)).count();
        if second != 1 || horizontal + 1 != blade.len() {
            return Err(CurrentsError::BoundarySupport(blade.clone()));
        }
    }
    Ok(BoundaryVector(b))
}

/// An invariant precurrent is a current iff its boundary vanishes.
pub fn is_current(
    alg: &StratifiedLieAlgebra,
    t: &InvariantPrecurrent,
) -> Result<bool, CurrentsError> {
    Ok(invariant_boundary(alg, t)?.is_zero())
}

/// Duals of the basis of `V2 ⊕ … ⊕ Vm`, in basis order.
pub fn vertical_basis(alg: &StratifiedLieAlgebra) -> Vec<MultiCovector> {
    (alg.horizontal_dim()..alg.total_dim())
        .map(|i| MultiCovector::from_indices(alg.total_dim(), &[i]))
        .collect()
}

/// A 1-covector is vertical when it vanishes on `H`.
pub fn check_vertical(
    alg: &StratifiedLieAlgebra,
    theta: &MultiCovector,
) -> Result<(), CurrentsError> {
    if theta.degree() != 1 {
        return Err(ExteriorError::WrongDegree {
            expected: 1,
            found: theta.degree(),
        }
        .into());
    }
    if theta.dim() != alg.total_dim() {
        return Err(ExteriorError::DimensionMismatch {
            left: alg.total_dim(),
            right: theta.dim(),
        }
        .into());
    }
    match theta
        .terms()
        .map(|(b, _)| b[0])
        .find(|&i| alg.is_horizontal(i))
    {
        Some(i) => Err(CurrentsError::NotVertical(i)),
        None => Ok(()),
    }
}

/// `T ⌞ dθ` for a vertical invariant 1-form `θ`.
pub fn restrict_by_dtheta(
    alg: &StratifiedLieAlgebra,
    t: &InvariantPrecurrent,
    theta: &MultiCovector,
) -> Result<MultiVector, CurrentsError> {
    check_vertical(alg, theta)?;
    if t.degree() < 2 {
        return Err(CurrentsError::DegreeTooSmall(t.degree()));
    }
    let dtheta = mc_differential(alg, theta)?;
    Ok(contract(t.coefficients(), &dtheta)?)
}

/// The factor `r^{k−Q}` with `Δ_{r#} T = r^{k−Q} T`.
pub fn pushforward_scale(
    alg: &StratifiedLieAlgebra,
    t: &InvariantPrecurrent,
    r: &Rational,
) -> Result<Rational, CurrentsError> {
    if *r <= Rational::zero() {
        return Err(CurrentsError::NonPositiveScale);
    }
    let exponent = t.degree() as i64 - alg.homogeneous_dimension() as i64;
    Ok(r.pow(exponent as i32))
}
