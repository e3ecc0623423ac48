//! Stratified nilpotent Lie algebras given by exact structure constants.
//!
//! The basis is ordered layer by layer, so layer membership of a basis index
//! is a range check. Brackets are stored only for `i < j`; the other half of
//! the table is recovered by antisymmetry.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::linalg;
use crate::rational::{format_rational, Rational};

/// A sparse element of the Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    dim: usize,
    coeffs: BTreeMap<usize, Rational>,
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            index < dim,
            "basis index {index} out of range for dim {dim}"
        );
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, Rational::one());
        Self { dim, coeffs }
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut v = Self::zero(dim);
        for (index, c) in terms {
            if index >= dim {
                return Err(AlgebraError::IndexOutOfRange { index, dim });
            }
            v.add_term(index, c);
        }
        Ok(v)
    }

    pub(crate) fn add_term(&mut self, index: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(index) {
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

    pub fn get(&self, index: usize) -> Rational {
        self.coeffs
            .get(&index)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for (i, c) in self.iter() {
            out.add_term(i, c * r);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "vector dimension mismatch");
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-Rational::one()))
    }

    /// Dense coordinates.
    pub fn to_dense(&self) -> Vec<Rational> {
        (0..self.dim).map(|i| self.get(i)).collect()
    }
}

/// A Lie algebra `g = V1 ⊕ … ⊕ Vm` with exact rational structure constants.
///
/// Loading does not check the Lie or grading axioms; see [`StratifiedLieAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedLieAlgebra {
    name: String,
    layer_dims: Vec<usize>,
    basis_labels: Vec<String>,
    structure_constants: BTreeMap<(usize, usize), Vector>,
    layer_of: Vec<usize>,
    offsets: Vec<usize>,
}

/// One raw bracket table entry: `[e_lhs, e_rhs] = Σ coeff · e_index`.
pub type BracketEntry = (usize, usize, Vec<(usize, Rational)>);

impl StratifiedLieAlgebra {
    pub fn from_parts(
        name: impl Into<String>,
        layer_dims: Vec<usize>,
        basis_labels: Vec<String>,
        brackets: impl IntoIterator<Item = BracketEntry>,
    ) -> Result<Self, AlgebraError> {
        if layer_dims.is_empty() {
            return Err(AlgebraError::NoLayers);
        }
        if let Some(pos) = layer_dims.iter().position(|&d| d == 0) {
            return Err(AlgebraError::EmptyLayer { layer: pos + 1 });
        }
        let total: usize = layer_dims.iter().sum();
        if basis_labels.len() != total {
            return Err(AlgebraError::DimensionMismatch {
                expected: total,
                found: basis_labels.len(),
            });
        }
        for (i, l) in basis_labels.iter().enumerate() {
            if basis_labels[..i].contains(l) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }

        let mut offsets = Vec::with_capacity(layer_dims.len() + 1);
        let mut layer_of = Vec::with_capacity(total);
        let mut acc = 0;
        for (j, &d) in layer_dims.iter().enumerate() {
            offsets.push(acc);
            layer_of.extend(std::iter::repeat_n(j + 1, d));
            acc += d;
        }
        offsets.push(acc);

        let mut structure_constants: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (lhs, rhs, value) in brackets {
            for index in [lhs, rhs] {
                if index >= total {
                    return Err(AlgebraError::IndexOutOfRange { index, dim: total });
                }
            }
            let mut v = Vector::from_terms(total, value)?;
            if lhs == rhs {
                if v.is_zero() {
                    continue;
                }
                return Err(AlgebraError::SelfBracket(basis_labels[lhs].clone()));
            }
            let key = if lhs < rhs {
                (lhs, rhs)
            } else {
                v = v.scaled(&-Rational::one());
                (rhs, lhs)
            };
            match structure_constants.get(&key) {
                Some(existing) if *existing != v => {
                    return Err(AlgebraError::ConflictingBracket {
                        lhs: basis_labels[lhs].clone(),
                        rhs: basis_labels[rhs].clone(),
                    });
                }
                Some(_) => {}
                None => {
                    structure_constants.insert(key, v);
                }
            }
        }
        structure_constants.retain(|_, v| !v.is_zero());

        Ok(Self {
            name: name.into(),
            layer_dims,
            basis_labels,
            structure_constants,
            layer_of,
            offsets,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn layer_dims(&self) -> &[usize] {
        &self.layer_dims
    }

    pub fn total_dim(&self) -> usize {
        self.basis_labels.len()
    }

    /// `n = dim V1`.
    pub fn horizontal_dim(&self) -> usize {
        self.layer_dims[0]
    }

    /// Number of layers `m`.
    pub fn step(&self) -> usize {
        self.layer_dims.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.basis_labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    /// 1-based layer of a basis index.
    pub fn layer_of(&self, index: usize) -> usize {
        self.layer_of[index]
    }

    /// Basis indices of layer `j` (1-based). Empty for `j` outside `1..=m`.
    pub fn layer_range(&self, j: usize) -> Range<usize> {
        if j == 0 || j > self.step() {
            let end = self.total_dim();
            return end..end;
        }
        self.offsets[j - 1]..self.offsets[j]
    }

    pub fn horizontal_indices(&self) -> Range<usize> {
        self.layer_range(1)
    }

    pub fn is_horizontal(&self, index: usize) -> bool {
        index < self.horizontal_dim()
    }

    /// Stored one-sided table, `i < j`, zero brackets omitted.
    pub fn structure_constants(&self) -> impl Iterator<Item = ((usize, usize), &Vector)> {
        self.structure_constants.iter().map(|(&k, v)| (k, v))
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Vector::zero(self.total_dim()),
            Less => self
                .structure_constants
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| Vector::zero(self.total_dim())),
            Greater => self.bracket_basis(j, i).scaled(&-Rational::one()),
        }
    }

    fn check_dim(&self, v: &Vector) -> Result<(), AlgebraError> {
        if v.dim() != self.total_dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.total_dim(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut out = Vector::zero(self.total_dim());
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if i == j {
                    continue;
                }
                let ab = a * b;
                for (l, c) in self.bracket_basis(i, j).iter() {
                    out.add_term(l, &ab * c);
                }
            }
        }
        Ok(out)
    }

    /// `Q = Σ j · dim Vj`.
    pub fn homogeneous_dimension(&self) -> usize {
        self.layer_dims
            .iter()
            .enumerate()
            .map(|(j, d)| (j + 1) * d)
            .sum()
    }

    /// `δ_r`: scales the `Vj` component by `r^j`.
    pub fn dilation(&self, r: &Rational, x: &Vector) -> Result<Vector, AlgebraError> {
        if r.is_zero() {
            return Err(AlgebraError::ZeroDilation);
        }
        self.check_dim(x)?;
        let mut out = Vector::zero(self.total_dim());
        for (i, c) in x.iter() {
            out.add_term(i, c * r.pow(self.layer_of(i) as i32));
        }
        Ok(out)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let dim = self.total_dim();
        let m = self.step();

        for i in 0..dim {
            for j in (i + 1)..dim {
                let b = self.bracket_basis(i, j);
                if b.is_zero() {
                    continue;
                }
                let target = self.layer_of(i) + self.layer_of(j);
                let range = self.layer_range(target);
                let offending: Vec<usize> = b.support().filter(|l| !range.contains(l)).collect();
                if !offending.is_empty() {
                    violations.push(Violation::Grading {
                        pair: (i, j),
                        expected_layer: (target <= m).then_some(target),
                        offending,
                    });
                }
            }
        }

        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let residual = self
                        .jacobiator(i, j, k)
                        .expect("basis vectors share the algebra dimension");
                    if !residual.is_zero() {
                        violations.push(Violation::Jacobi {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }

        for j in 1..m {
            let next = self.layer_range(j + 1);
            let rows: Vec<Vec<Rational>> = self
                .horizontal_indices()
                .flat_map(|a| self.layer_range(j).map(move |b| (a, b)))
                .map(|(a, b)| {
                    let br = self.bracket_basis(a, b);
                    next.clone().map(|l| br.get(l)).collect()
                })
                .collect();
            let rank = linalg::rank(&rows, next.len());
            if rank < next.len() {
                violations.push(Violation::BracketGeneration {
                    layer: j,
                    rank,
                    expected: next.len(),
                });
            }
        }

        for t in self.layer_range(m) {
            for i in 0..dim {
                if i != t && !self.bracket_basis(i, t).is_zero() {
                    violations.push(Violation::TopLayerCentrality { pair: (i, t) });
                }
            }
        }

        ValidationReport { violations }
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> Result<Vector, AlgebraError> {
        let e = |n| Vector::basis(self.total_dim(), n);
        let a = self.bracket(&e(i), &self.bracket_basis(j, k))?;
        let b = self.bracket(&e(j), &self.bracket_basis(k, i))?;
        let c = self.bracket(&e(k), &self.bracket_basis(i, j))?;
        Ok(a.add(&b).add(&c))
    }

    /// Text form of a vector using this algebra's labels, e.g. `2*X1 - 1/2*Z`.
    pub fn format_vector(&self, v: &Vector) -> String {
        crate::syntax::format_terms(
            v.iter()
                .map(|(i, c)| (vec![self.label(i).to_string()], c.clone())),
        )
    }
}

/// A failed axiom together with the basis indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `[e_i, e_j]` has a component outside `V_{layer(i)+layer(j)}`.
    Grading {
        pair: (usize, usize),
        expected_layer: Option<usize>,
        offending: Vec<usize>,
    },
    Jacobi {
        triple: (usize, usize, usize),
        residual: Vector,
    },
    /// `[V1, Vj]` fails to span `V_{j+1}`.
    BracketGeneration {
        layer: usize,
        rank: usize,
        expected: usize,
    },
    TopLayerCentrality {
        pair: (usize, usize),
    },
}

impl Violation {
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::Grading { .. } => "grading",
            Violation::Jacobi { .. } => "jacobi",
            Violation::BracketGeneration { .. } => "bracket-generation",
            Violation::TopLayerCentrality { .. } => "top-layer-centrality",
        }
    }

    /// Labels of the offending basis tuple (empty for layer-level violations).
    pub fn witness_labels(&self, alg: &StratifiedLieAlgebra) -> Vec<String> {
        let l = |i: usize| alg.label(i).to_string();
        match self {
            Violation::Grading { pair, .. } | Violation::TopLayerCentrality { pair } => {
                vec![l(pair.0), l(pair.1)]
            }
            Violation::Jacobi { triple, .. } => vec![l(triple.0), l(triple.1), l(triple.2)],
            Violation::BracketGeneration { .. } => Vec::new(),
        }
    }

    pub fn describe(&self, alg: &StratifiedLieAlgebra) -> String {
        let l = |i: usize| alg.label(i);
        match self {
            Violation::Grading {
                pair: (i, j),
                expected_layer,
                offending,
            } => {
                let names: Vec<&str> = offending.iter().map(|&o| l(o)).collect();
                match expected_layer {
                    Some(t) => format!(
                        "[{}, {}] has components {:?} outside V{}",
                        l(*i),
                        l(*j),
                        names,
                        t
                    ),
                    None => format!(
                        "[{}, {}] must vanish (layer sum exceeds step) but has components {:?}",
                        l(*i),
                        l(*j),
                        names
                    ),
                }
            }
            Violation::Jacobi {
                triple: (i, j, k),
                residual,
            } => format!(
                "Jacobi identity fails on ({}, {}, {}): residual {}",
                l(*i),
                l(*j),
                l(*k),
                alg.format_vector(residual)
            ),
            Violation::BracketGeneration {
                layer,
                rank,
                expected,
            } => format!(
                "[V1, V{}] spans a {}-dimensional subspace of V{} (dimension {})",
                layer,
                rank,
                layer + 1,
                expected
            ),
            Violation::TopLayerCentrality { pair: (i, t) } => {
                format!(
                    "top-layer element {} does not commute with {}",
                    l(*t),
                    l(*i)
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(i, c)| format!("{}·e{}", format_rational(c), i))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::{int, ratio};

    fn e(alg: &StratifiedLieAlgebra, label: &str) -> Vector {
        Vector::basis(alg.total_dim(), alg.index_of(label).unwrap())
    }

    #[test]
    fn heisenberg_bracket() {
        let h = catalog::heisenberg(1).unwrap();
        assert_eq!(h.bracket(&e(&h, "X1"), &e(&h, "Y1")).unwrap(), e(&h, "Z"));
        assert_eq!(
            h.bracket(&e(&h, "Y1"), &e(&h, "X1")).unwrap(),
            e(&h, "Z").scaled(&int(-1))
        );
    }

    #[test]
    fn self_bracket_vanishes() {
        let g = catalog::counterexample_9d();
        let x = Vector::from_terms(9, [(0, int(2)), (3, ratio(-1, 3)), (6, int(5))]).unwrap();
        assert!(g.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn counterexample_u1_u4() {
        let g = catalog::counterexample_9d();
        assert_eq!(g.bracket(&e(&g, "u1"), &e(&g, "u4")).unwrap(), e(&g, "v3"));
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let h = catalog::heisenberg(1).unwrap();
        let err = h.bracket(&Vector::basis(4, 0), &e(&h, "X1")).unwrap_err();
        assert!(matches!(err, AlgebraError::DimensionMismatch { .. }));
    }

    #[test]
    fn homogeneous_dimensions() {
        assert_eq!(catalog::heisenberg(1).unwrap().homogeneous_dimension(), 4);
        assert_eq!(catalog::heisenberg(3).unwrap().homogeneous_dimension(), 8);
        assert_eq!(catalog::abelian(5).unwrap().homogeneous_dimension(), 5);
        assert_eq!(catalog::counterexample_9d().homogeneous_dimension(), 14);
    }

    #[test]
    fn dilation_scales_by_layer() {
        let h = catalog::heisenberg(1).unwrap();
        let z = e(&h, "Z");
        assert_eq!(h.dilation(&int(2), &z).unwrap(), z.scaled(&int(4)));
        let x = Vector::from_terms(3, [(0, int(3)), (1, ratio(1, 2)), (2, int(-1))]).unwrap();
        assert_eq!(h.dilation(&int(1), &x).unwrap(), x);
        let u = e(&h, "Y1");
        let r = ratio(-2, 7);
        assert_eq!(h.dilation(&r, &u).unwrap(), u.scaled(&r));
        assert!(matches!(
            h.dilation(&int(0), &u),
            Err(AlgebraError::ZeroDilation)
        ));
    }

    #[test]
    fn out_of_range_bracket_index() {
        let labels: Vec<String> = (1..=5).map(|i| format!("e{i}")).collect();
        let err = StratifiedLieAlgebra::from_parts(
            "bad",
            vec![3, 2],
            labels,
            vec![(0, 1, vec![(7, int(1))])],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::IndexOutOfRange { index: 7, dim: 5 }
        ));
    }

    #[test]
    fn antisymmetric_duplicates_are_normalized() {
        let labels: Vec<String> = ["X", "Y", "Z"].map(String::from).to_vec();
        let ok = StratifiedLieAlgebra::from_parts(
            "h",
            vec![2, 1],
            labels.clone(),
            vec![(0, 1, vec![(2, int(1))]), (1, 0, vec![(2, int(-1))])],
        );
        assert!(ok.is_ok());
        let bad = StratifiedLieAlgebra::from_parts(
            "h",
            vec![2, 1],
            labels,
            vec![(0, 1, vec![(2, int(1))]), (1, 0, vec![(2, int(1))])],
        );
        assert!(matches!(bad, Err(AlgebraError::ConflictingBracket { .. })));
    }

    #[test]
    fn grading_violation_names_the_pair() {
        let labels: Vec<String> = ["X", "Y", "Z"].map(String::from).to_vec();
        // [X, Y] = X lands in V1
        let alg = StratifiedLieAlgebra::from_parts(
            "broken",
            vec![2, 1],
            labels,
            vec![(0, 1, vec![(0, int(1))])],
        )
        .unwrap();
        let report = alg.validate();
        let grading: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.axiom() == "grading")
            .collect();
        assert_eq!(grading.len(), 1);
        assert_eq!(grading[0].witness_labels(&alg), vec!["X", "Y"]);
        // Z is no longer generated
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom() == "bracket-generation"));
    }

    #[test]
    fn jacobi_violation_detected() {
        // [a,b] = c, [c,d] = a: the triple (a, b, d) has Jacobiator -a.
        let labels: Vec<String> = ["a", "b", "c", "d"].map(String::from).to_vec();
        let alg = StratifiedLieAlgebra::from_parts(
            "nonlie",
            vec![4],
            labels,
            vec![(0, 1, vec![(2, int(1))]), (2, 3, vec![(0, int(1))])],
        )
        .unwrap();
        let report = alg.validate();
        assert!(report.violations.iter().any(|v| v.axiom() == "jacobi"));
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom() == "top-layer-centrality"));
    }

    #[test]
    fn catalog_algebras_validate() {
        for alg in catalog::standard_entries() {
            let report = alg.validate();
            assert!(report.is_valid(), "{}: {:?}", alg.name(), report);
        }
    }
}
