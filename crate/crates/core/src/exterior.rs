//! Exterior algebra over `g` and `g*`.
//!
//! Elements are sparse maps from strictly increasing index tuples to exact
//! rationals. `Multi<Up>` lives in `∧^k g`, `Multi<Down>` in `∧^k g*`; the
//! given basis and its dual are declared orthonormal for the pairing.
//!
//! Interior product follows `⟨b, λ ⌞ α⟩ = ⟨α ∧ b, λ⟩` with the covector
//! wedged on the left.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;

use num_traits::{One, Zero};

use crate::algebra::{StratifiedLieAlgebra, Vector};
use crate::error::ExteriorError;
use crate::rational::Rational;

pub trait Kind: Copy + Clone + Debug + Default + PartialEq + Eq + Hash + Send + Sync {
    const COVARIANT: bool;
}

/// Marker for multivectors.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Up;
/// Marker for multicovectors.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Down;

impl Kind for Up {
    const COVARIANT: bool = false;
}
impl Kind for Down {
    const COVARIANT: bool = true;
}

pub type Blade = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multi<K: Kind> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Blade, Rational>,
    kind: PhantomData<K>,
}

pub type MultiVector = Multi<Up>;
pub type MultiCovector = Multi<Down>;

/// Sign of the permutation sorting the concatenation `a ++ b`, or `None` if they share an index.
/// Both inputs must be strictly increasing.
pub(crate) fn merge_sign(a: &[usize], b: &[usize]) -> Option<(bool, Blade)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut odd = false;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return None,
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] jumps over the remaining a's
                if (a.len() - i) % 2 == 1 {
                    odd = !odd;
                }
                out.push(b[j]);
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((odd, out))
}

/// Sorts `indices` as a wedge product `e_{i1} ∧ … ∧ e_{ik}`; `None` on repeats.
fn sort_blade(indices: &[usize]) -> Option<(bool, Blade)> {
    let mut v = indices.to_vec();
    let mut odd = false;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((odd, v))
}

fn signed(c: Rational, odd: bool) -> Rational {
    if odd {
        -c
    } else {
        c
    }
}

impl<K: Kind> Multi<K> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            terms: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    /// Degree-0 element `c`.
    pub fn scalar(dim: usize, c: Rational) -> Self {
        let mut out = Self::zero(dim, 0);
        out.add_term(Vec::new(), c);
        out
    }

    /// The product `e_{i1} ∧ … ∧ e_{ik}` in the given (not necessarily sorted) order.
    pub fn from_indices(dim: usize, indices: &[usize]) -> Self {
        assert!(
            indices.iter().all(|&i| i < dim),
            "index out of range for dim {dim}"
        );
        let mut out = Self::zero(dim, indices.len());
        if let Some((odd, blade)) = sort_blade(indices) {
            out.add_term(blade, signed(Rational::one(), odd));
        }
        out
    }

    /// Builds from `(indices, coefficient)` pairs; index lists may be unsorted.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Result<Self, ExteriorError> {
        let mut out = Self::zero(dim, degree);
        for (indices, c) in terms {
            if indices.len() != degree {
                return Err(ExteriorError::WrongDegree {
                    expected: degree,
                    found: indices.len(),
                });
            }
            if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
                return Err(ExteriorError::DimensionMismatch {
                    left: dim,
                    right: bad + 1,
                });
            }
            if let Some((odd, blade)) = sort_blade(&indices) {
                out.add_term(blade, signed(c, odd));
            }
        }
        Ok(out)
    }

    /// Degree-1 element with the coordinates of `v`.
    pub fn from_vector(v: &Vector) -> Self {
        let mut out = Self::zero(v.dim(), 1);
        for (i, c) in v.iter() {
            out.add_term(vec![i], c.clone());
        }
        out
    }

    pub(crate) fn add_term(&mut self, blade: Blade, c: Rational) {
        debug_assert_eq!(blade.len(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: &[usize]) -> Rational {
        self.terms
            .get(blade)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Degree-0 value (zero for higher degrees).
    pub fn scalar_part(&self) -> Rational {
        self.coefficient(&[])
    }

    pub fn scaled(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        if r.is_zero() {
            return out;
        }
        for (b, c) in &self.terms {
            out.terms.insert(b.clone(), c * r);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Rational::one())
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(ExteriorError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    /// Panicking sum, for callers that have already matched shapes.
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("multivector shapes must match")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((odd, blade)) = merge_sign(a, b) {
                    out.add_term(blade, signed(x * y, odd));
                }
            }
        }
        Ok(out)
    }

    /// Coordinates on the given list of blades. Terms outside the list are dropped.
    pub fn coordinates(&self, blades: &[Blade]) -> Vec<Rational> {
        blades.iter().map(|b| self.coefficient(b)).collect()
    }

    /// Inverse of [`Multi::coordinates`].
    pub fn from_coordinates(
        dim: usize,
        degree: usize,
        blades: &[Blade],
        coords: &[Rational],
    ) -> Self {
        let mut out = Self::zero(dim, degree);
        for (b, c) in blades.iter().zip(coords) {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    /// Every index used by some term.
    pub fn support_indices(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.terms.keys().flatten().copied().collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// `v1 ∧ … ∧ vk`; the empty product is the scalar 1.
pub fn wedge_vectors(dim: usize, vs: &[Vector]) -> Result<MultiVector, ExteriorError> {
    vs.iter()
        .try_fold(MultiVector::scalar(dim, Rational::one()), |acc, v| {
            acc.wedge(&MultiVector::from_vector(v))
        })
}

pub fn wedge<K: Kind>(a: &Multi<K>, b: &Multi<K>) -> Result<Multi<K>, ExteriorError> {
    a.wedge(b)
}

/// Dual-basis pairing `⟨α, λ⟩`.
pub fn pair(alpha: &MultiCovector, lambda: &MultiVector) -> Result<Rational, ExteriorError> {
    if alpha.dim != lambda.dim {
        return Err(ExteriorError::DimensionMismatch {
            left: alpha.dim,
            right: lambda.dim,
        });
    }
    if alpha.degree != lambda.degree {
        return Err(ExteriorError::DegreeMismatch {
            left: alpha.degree,
            right: lambda.degree,
        });
    }
    let (small, large) = if alpha.len() <= lambda.len() {
        (&alpha.terms, &lambda.terms)
    } else {
        (&lambda.terms, &alpha.terms)
    };
    Ok(small
        .iter()
        .filter_map(|(b, x)| large.get(b).map(|y| x * y))
        .sum())
}

/// Interior product `λ ⌞ α`, the unique `(k−j)`-vector with
/// `⟨b, λ ⌞ α⟩ = ⟨α ∧ b, λ⟩` for every `(k−j)`-covector `b`.
pub fn contract(lambda: &MultiVector, alpha: &MultiCovector) -> Result<MultiVector, ExteriorError> {
    if alpha.dim != lambda.dim {
        return Err(ExteriorError::DimensionMismatch {
            left: lambda.dim,
            right: alpha.dim,
        });
    }
    if alpha.degree > lambda.degree {
        return Err(ExteriorError::ContractionDegree {
            vector: lambda.degree,
            covector: alpha.degree,
        });
    }
    let mut out = MultiVector::zero(lambda.dim, lambda.degree - alpha.degree);
    for (a, x) in &alpha.terms {
        for (t, y) in &lambda.terms {
            if !a.iter().all(|i| t.binary_search(i).is_ok()) {
                continue;
            }
            let rest: Blade = t
                .iter()
                .copied()
                .filter(|i| a.binary_search(i).is_err())
                .collect();
            let (odd, _) = merge_sign(a, &rest).expect("disjoint by construction");
            out.add_term(rest, signed(x * y, odd));
        }
    }
    Ok(out)
}

/// Exterior derivative of a left-invariant 1-form: `dθ(x, y) = −θ([x, y])`.
pub fn mc_differential(
    alg: &StratifiedLieAlgebra,
    theta: &MultiCovector,
) -> Result<MultiCovector, ExteriorError> {
    if theta.degree != 1 {
        return Err(ExteriorError::WrongDegree {
            expected: 1,
            found: theta.degree,
        });
    }
    if theta.dim != alg.total_dim() {
        return Err(ExteriorError::DimensionMismatch {
            left: alg.total_dim(),
            right: theta.dim,
        });
    }
    let mut out = MultiCovector::zero(theta.dim, 2);
    for ((i, j), br) in alg.structure_constants() {
        let value: Rational = br.iter().map(|(l, c)| c * theta.coefficient(&[l])).sum();
        out.add_term(vec![i, j], -value);
    }
    Ok(out)
}

/// Strictly increasing `k`-tuples from `0..n` in lexicographic order.
pub fn basis_tuples(k: usize, n: usize) -> Vec<Blade> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that still has room
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `k`-tuples drawn from the given sorted index set.
pub fn tuples_over(k: usize, indices: &[usize]) -> Vec<Blade> {
    basis_tuples(k, indices.len())
        .into_iter()
        .map(|t| t.into_iter().map(|i| indices[i]).collect())
        .collect()
}

/// `δ_r` extended to `∧^k g`: a blade picks up `r^{Σ layer}`.
pub fn dilate<K: Kind>(
    alg: &StratifiedLieAlgebra,
    r: &Rational,
    x: &Multi<K>,
) -> Result<Multi<K>, ExteriorError> {
    if x.dim != alg.total_dim() {
        return Err(ExteriorError::DimensionMismatch {
            left: alg.total_dim(),
            right: x.dim,
        });
    }
    let mut out = Multi::zero(x.dim, x.degree);
    for (b, c) in &x.terms {
        let weight: usize = b.iter().map(|&i| alg.layer_of(i)).sum();
        out.add_term(b.clone(), c * r.pow(weight as i32));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{int, ratio};

    fn v(dim: usize, idx: &[usize]) -> MultiVector {
        MultiVector::from_indices(dim, idx)
    }

    fn cv(dim: usize, idx: &[usize]) -> MultiCovector {
        MultiCovector::from_indices(dim, idx)
    }

    #[test]
    fn wedge_of_basis_vectors() {
        let x = v(3, &[0]);
        let y = v(3, &[1]);
        let xy = x.wedge(&y).unwrap();
        assert_eq!(xy.coefficient(&[0, 1]), int(1));
        assert_eq!(xy.len(), 1);
        assert!(x.wedge(&x).unwrap().is_zero());
    }

    #[test]
    fn wedge_square_of_symplectic_pair() {
        let w = v(4, &[0, 1]).sub(&v(4, &[2, 3]));
        let sq = w.wedge(&w).unwrap();
        assert_eq!(sq, v(4, &[0, 1, 2, 3]).scaled(&int(-2)));
    }

    #[test]
    fn unsorted_indices_pick_up_sign() {
        assert_eq!(v(3, &[2, 0]), v(3, &[0, 2]).neg());
        assert_eq!(v(4, &[3, 1, 2]), v(4, &[1, 2, 3]));
        assert!(v(3, &[1, 1]).is_zero());
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert!(matches!(
            v(3, &[0]).wedge(&v(4, &[1])),
            Err(ExteriorError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pairing_examples() {
        // ℍ¹: X, Y, Z = 0, 1, 2
        assert_eq!(pair(&cv(3, &[0, 1]), &v(3, &[0, 1])).unwrap(), int(1));
        assert_eq!(pair(&cv(3, &[0, 1]), &v(3, &[0, 2])).unwrap(), int(0));
        let theta_dx = cv(3, &[2]).wedge(&cv(3, &[0])).unwrap();
        assert_eq!(pair(&theta_dx, &v(3, &[0, 2])).unwrap(), int(-1));
        assert!(matches!(
            pair(&cv(3, &[0]), &v(3, &[0, 1])),
            Err(ExteriorError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contract(&v(3, &[0, 1]), &cv(3, &[0])).unwrap(), v(3, &[1]));
        assert_eq!(
            contract(&v(3, &[0, 1]), &cv(3, &[1])).unwrap(),
            v(3, &[0]).neg()
        );
        let lam = v(3, &[0, 1]).scaled(&ratio(3, 2)).add(&v(3, &[1, 2]));
        let c = MultiCovector::scalar(3, int(-4));
        assert_eq!(contract(&lam, &c).unwrap(), lam.scaled(&int(-4)));
        assert_eq!(
            contract(&v(3, &[0, 1, 2]), &cv(3, &[0, 1])).unwrap(),
            v(3, &[2])
        );
        assert!(matches!(
            contract(&v(3, &[0]), &cv(3, &[0, 1])),
            Err(ExteriorError::ContractionDegree { .. })
        ));
    }

    #[test]
    fn maurer_cartan_examples() {
        let h = catalog::heisenberg(1).unwrap();
        let dz = mc_differential(&h, &cv(3, &[2])).unwrap();
        assert_eq!(dz, cv(3, &[0, 1]).neg());
        assert!(mc_differential(&h, &cv(3, &[0])).unwrap().is_zero());
        let a = catalog::abelian(4).unwrap();
        let theta =
            MultiCovector::from_terms(4, 1, [(vec![0], int(2)), (vec![3], int(5))]).unwrap();
        assert!(mc_differential(&a, &theta).unwrap().is_zero());
        assert!(matches!(
            mc_differential(&h, &cv(3, &[0, 1])),
            Err(ExteriorError::WrongDegree { .. })
        ));
    }

    #[test]
    fn basis_tuple_enumeration() {
        assert_eq!(basis_tuples(2, 3), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(basis_tuples(0, 4), vec![Vec::<usize>::new()]);
        assert_eq!(basis_tuples(3, 3), vec![vec![0, 1, 2]]);
        assert!(basis_tuples(4, 3).is_empty());
        assert_eq!(basis_tuples(3, 6).len(), 20);
    }

    #[test]
    fn contact_form_is_a_volume_form() {
        for n in 1..=2 {
            let h = catalog::heisenberg(n).unwrap();
            let dim = h.total_dim();
            let theta = cv(dim, &[dim - 1]);
            let dtheta = mc_differential(&h, &theta).unwrap();
            let mut vol = theta.clone();
            for _ in 0..n {
                vol = vol.wedge(&dtheta).unwrap();
            }
            assert_eq!(vol.degree(), dim);
            assert!(!vol.is_zero(), "θ ∧ (dθ)^{n} vanished");
        }
    }
}
