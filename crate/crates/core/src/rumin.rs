//! Spaces of invariant cycles and the ideal generated by vertical forms.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::algebra::StratifiedLieAlgebra;
use crate::currents::{ce_boundary, vertical_basis};
use crate::exterior::{
    basis_tuples, mc_differential, tuples_over, Blade, Kind, Multi, MultiCovector, MultiVector,
};
use crate::linalg::{self, Echelon};
use crate::rational::Rational;

/// A linear subspace of `∧^k g` or `∧^k g*`, stored in reduced echelon form
/// with respect to a fixed, lexicographically ordered list of coordinate blades.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<K: Kind> {
    dim: usize,
    degree: usize,
    coordinates: Vec<Blade>,
    echelon: Echelon,
    basis: Vec<Multi<K>>,
}

impl<K: Kind> Subspace<K> {
    fn from_rows(
        dim: usize,
        degree: usize,
        coordinates: Vec<Blade>,
        rows: &[Vec<Rational>],
    ) -> Self {
        let echelon = linalg::echelon(rows, coordinates.len());
        Self::from_echelon(dim, degree, coordinates, echelon)
    }

    fn from_echelon(dim: usize, degree: usize, coordinates: Vec<Blade>, echelon: Echelon) -> Self {
        let basis = echelon
            .rows
            .iter()
            .map(|r| Multi::from_coordinates(dim, degree, &coordinates, r))
            .collect();
        Self {
            dim,
            degree,
            coordinates,
            echelon,
            basis,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> &'static str {
        if K::COVARIANT {
            "covector"
        } else {
            "vector"
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.coordinates.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Multi<K>] {
        &self.basis
    }

    pub fn coordinates(&self) -> &[Blade] {
        &self.coordinates
    }

    pub fn echelon_rows(&self) -> &[Vec<Rational>] {
        &self.echelon.rows
    }

    /// Coordinates of `x`, or `None` when it has terms outside the ambient blades.
    pub fn coordinates_of(&self, x: &Multi<K>) -> Option<Vec<Rational>> {
        if x.degree() != self.degree || x.dim() != self.dim {
            return None;
        }
        let coords = x.coordinates(&self.coordinates);
        let inside = coords.iter().filter(|c| !c.is_zero()).count();
        (inside == x.len()).then_some(coords)
    }

    pub fn contains(&self, x: &Multi<K>) -> bool {
        self.coordinates_of(x)
            .is_some_and(|c| self.echelon.contains(&c))
    }
}

fn boundary_matrix(alg: &StratifiedLieAlgebra, domain: &[Blade]) -> Vec<Vec<Rational>> {
    let images: Vec<MultiVector> = domain
        .iter()
        .map(|t| {
            ce_boundary(alg, &MultiVector::from_indices(alg.total_dim(), t))
                .expect("basis blades match the algebra")
        })
        .collect();
    let codomain: BTreeSet<Blade> = images
        .iter()
        .flat_map(|m| m.terms().map(|(b, _)| b.clone()))
        .collect();
    codomain
        .iter()
        .map(|b| images.iter().map(|m| m.coefficient(b)).collect())
        .collect()
}

fn horizontal_tuples(alg: &StratifiedLieAlgebra, k: usize) -> Vec<Blade> {
    let h: Vec<usize> = alg.horizontal_indices().collect();
    tuples_over(k, &h)
}

/// Rank of `∂ : ∧^k H → V2 ∧ ∧^{k−2} H`.
pub fn boundary_rank(alg: &StratifiedLieAlgebra, k: usize) -> usize {
    let domain = horizontal_tuples(alg, k);
    linalg::rank(&boundary_matrix(alg, &domain), domain.len())
}

/// Kernel of the invariant boundary on `∧^k H`: the invariant `k`-currents.
pub fn invariant_cycle_space(
    alg: &StratifiedLieAlgebra,
    k: usize,
) -> Subspace<crate::exterior::Up> {
    let domain = horizontal_tuples(alg, k);
    let kernel = linalg::kernel(&boundary_matrix(alg, &domain), domain.len());
    Subspace::from_echelon(alg.total_dim(), k, domain, kernel)
}

pub fn no_invariant_currents(alg: &StratifiedLieAlgebra, k: usize) -> bool {
    invariant_cycle_space(alg, k).is_zero()
}

/// `span{θ ∧ α, dθ ∧ β}` over invariant vertical `θ` and basis covectors `α`, `β`.
pub fn vertical_ideal(alg: &StratifiedLieAlgebra, k: usize) -> Subspace<crate::exterior::Down> {
    let n = alg.total_dim();
    let coordinates = basis_tuples(k, n);
    let mut rows = Vec::new();
    if k >= 1 {
        for theta in vertical_basis(alg) {
            for alpha in basis_tuples(k - 1, n) {
                let g = theta
                    .wedge(&MultiCovector::from_indices(n, &alpha))
                    .expect("same dimension");
                if !g.is_zero() {
                    rows.push(g.coordinates(&coordinates));
                }
            }
            if k >= 2 {
                let dtheta = mc_differential(alg, &theta).expect("degree-1 input");
                if dtheta.is_zero() {
                    continue;
                }
                for beta in basis_tuples(k - 2, n) {
                    let g = dtheta
                        .wedge(&MultiCovector::from_indices(n, &beta))
                        .expect("same dimension");
                    if !g.is_zero() {
                        rows.push(g.coordinates(&coordinates));
                    }
                }
            }
        }
    }
    Subspace::from_rows(n, k, coordinates, &rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coverage {
    pub covers: bool,
    pub codimension: usize,
    pub ideal_dimension: usize,
    pub ambient_dimension: usize,
}

/// Whether the vertical ideal fills all of `∧^k g*`.
pub fn vertical_ideal_covers(alg: &StratifiedLieAlgebra, k: usize) -> Coverage {
    let ideal = vertical_ideal(alg, k);
    let ambient = ideal.ambient_dimension();
    Coverage {
        covers: ideal.dimension() == ambient,
        codimension: ambient - ideal.dimension(),
        ideal_dimension: ideal.dimension(),
        ambient_dimension: ambient,
    }
}
