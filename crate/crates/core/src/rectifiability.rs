//! Simple invariant cycles and horizontal abelian subalgebras.
//!
//! A Carnot group carries nontrivial `k`-rectifiable sets iff its Lie algebra
//! has a `k`-dimensional horizontal abelian subalgebra, iff there is a nonzero
//! decomposable invariant `k`-cycle `u1 ∧ … ∧ uk`. Deciding this is a system of
//! quadratic equations in general, so [`find_simple_cycle`] runs a cascade of
//! certificate-producing strategies and answers [`Status::Unknown`] when none
//! of them settles the question.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{StratifiedLieAlgebra, Vector};
use crate::currents::ce_boundary;
use crate::error::{ExteriorError, RectError};
use crate::exterior::{contract, tuples_over, wedge_vectors, MultiCovector, MultiVector};
use crate::linalg;
use crate::rational::{height, Rational};
use crate::rumin::{boundary_rank, invariant_cycle_space};
use crate::syntax::format_multi;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Yes => "YES",
            Status::No => "NO",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Pairwise commuting, linearly independent horizontal vectors.
    Factors(Vec<Vector>),
    /// A nonzero horizontal cycle.
    Cycle(MultiVector),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Horizontal basis elements with pairwise vanishing brackets.
    BasisSubset { indices: Vec<usize> },
    /// `∂` is injective on `∧^k H`.
    ZeroKernel {
        rank: usize,
        domain_dimension: usize,
    },
    /// The cycle space is spanned by a 2-vector whose wedge square is nonzero.
    WedgeSquare {
        generator: MultiVector,
        square: MultiVector,
    },
    /// The cycle space is spanned by a `k`-vector whose support space has
    /// dimension above `k`, so it is not decomposable.
    SupportRank {
        generator: MultiVector,
        support_dimension: usize,
    },
    /// A decomposable kernel element, factored.
    Decomposable { cycle: MultiVector },
    SearchExhausted {
        height_bound: u32,
        candidates: usize,
        kernel_dimension: usize,
        budget_hit: bool,
    },
    DegreeExceedsRank {
        degree: usize,
        horizontal_dim: usize,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::BasisSubset { .. } => "basis-subset",
            Certificate::ZeroKernel { .. } => "zero-kernel",
            Certificate::WedgeSquare { .. } => "wedge-square",
            Certificate::SupportRank { .. } => "support-rank",
            Certificate::Decomposable { .. } => "decomposable",
            Certificate::SearchExhausted { .. } => "search-exhausted",
            Certificate::DegreeExceedsRank { .. } => "degree-exceeds-rank",
        }
    }

    pub fn describe(&self, alg: &StratifiedLieAlgebra) -> String {
        match self {
            Certificate::BasisSubset { indices } => {
                let names: Vec<&str> = indices.iter().map(|&i| alg.label(i)).collect();
                format!("basis vectors {} pairwise commute", names.join(", "))
            }
            Certificate::ZeroKernel {
                rank,
                domain_dimension,
            } => format!("boundary map has rank {rank} = dim ∧^k H = {domain_dimension}"),
            Certificate::WedgeSquare { generator, square } => format!(
                "Plücker wedge-square nonzero: ({})^2 = {}",
                format_multi(alg, generator),
                format_multi(alg, square)
            ),
            Certificate::SupportRank {
                generator,
                support_dimension,
            } => format!(
                "cycle space spanned by {} whose support space has dimension {}",
                format_multi(alg, generator),
                support_dimension
            ),
            Certificate::Decomposable { cycle } => {
                format!("decomposable cycle {}", format_multi(alg, cycle))
            }
            Certificate::SearchExhausted {
                height_bound,
                candidates,
                kernel_dimension,
                budget_hit,
            } => format!(
                "{} candidates over a {}-dimensional cycle space checked up to height {}{}",
                candidates,
                kernel_dimension,
                height_bound,
                if *budget_hit {
                    " (candidate budget reached)"
                } else {
                    ""
                }
            ),
            Certificate::DegreeExceedsRank {
                degree,
                horizontal_dim,
            } => format!("degree {degree} exceeds horizontal rank {horizontal_dim}"),
        }
    }
}

/// A three-valued answer. YES/NO answers carry the witness or criterion that
/// settles them; UNKNOWN names the strategy that ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub reason: String,
    pub certificate: Option<Certificate>,
}

/// Checks that `factors` are horizontal, independent and pairwise commuting.
pub fn verify_factors(alg: &StratifiedLieAlgebra, factors: &[Vector]) -> Result<(), RectError> {
    for (i, u) in factors.iter().enumerate() {
        if u.dim() != alg.total_dim() {
            return Err(ExteriorError::DimensionMismatch {
                left: alg.total_dim(),
                right: u.dim(),
            }
            .into());
        }
        if let Some(bad) = u.support().find(|&j| !alg.is_horizontal(j)) {
            return Err(RectError::InvalidWitness(format!(
                "factor {i} has a component along non-horizontal {}",
                alg.label(bad)
            )));
        }
    }
    for i in 0..factors.len() {
        for j in (i + 1)..factors.len() {
            let b = alg
                .bracket(&factors[i], &factors[j])
                .expect("dimensions checked above");
            if !b.is_zero() {
                return Err(RectError::InvalidWitness(format!(
                    "factors {i} and {j} do not commute"
                )));
            }
        }
    }
    let w = wedge_vectors(alg.total_dim(), factors)?;
    if w.is_zero() {
        return Err(RectError::InvalidWitness(
            "factors are linearly dependent".into(),
        ));
    }
    if !ce_boundary(alg, &w)?.is_zero() {
        return Err(RectError::InvalidWitness(
            "wedge of factors is not a cycle".into(),
        ));
    }
    Ok(())
}

impl Verdict {
    /// YES with a simple-cycle witness, verified exactly.
    pub fn with_factors(
        status: Status,
        alg: &StratifiedLieAlgebra,
        factors: Vec<Vector>,
        reason: impl Into<String>,
        certificate: Option<Certificate>,
    ) -> Result<Self, RectError> {
        verify_factors(alg, &factors)?;
        Ok(Self {
            status,
            witness: Some(Witness::Factors(factors)),
            reason: reason.into(),
            certificate,
        })
    }

    /// Verdict carrying a nonzero horizontal cycle, verified exactly.
    pub fn with_cycle(
        status: Status,
        alg: &StratifiedLieAlgebra,
        cycle: MultiVector,
        reason: impl Into<String>,
        certificate: Option<Certificate>,
    ) -> Result<Self, RectError> {
        if cycle.is_zero() {
            return Err(RectError::InvalidWitness("cycle is zero".into()));
        }
        if cycle
            .support_indices()
            .iter()
            .any(|&i| !alg.is_horizontal(i))
        {
            return Err(RectError::InvalidWitness("cycle is not horizontal".into()));
        }
        if !ce_boundary(alg, &cycle)?.is_zero() {
            return Err(RectError::InvalidWitness("boundary does not vanish".into()));
        }
        Ok(Self {
            status,
            witness: Some(Witness::Cycle(cycle)),
            reason: reason.into(),
            certificate,
        })
    }

    pub fn no(reason: impl Into<String>, certificate: Option<Certificate>) -> Self {
        Self {
            status: Status::No,
            witness: None,
            reason: reason.into(),
            certificate,
        }
    }

    pub fn yes(reason: impl Into<String>, certificate: Option<Certificate>) -> Self {
        Self {
            status: Status::Yes,
            witness: None,
            reason: reason.into(),
            certificate,
        }
    }

    pub fn unknown(reason: impl Into<String>, certificate: Option<Certificate>) -> Self {
        Self {
            status: Status::Unknown,
            witness: None,
            reason: reason.into(),
            certificate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest `max(|p|, q)` allowed for search coefficients.
    pub height_bound: u32,
    /// Stop (with UNKNOWN) after this many candidates.
    pub max_candidates: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            height_bound: 5,
            max_candidates: 250_000,
        }
    }
}

/// `ω ∧ ω = 0`, which for 2-vectors is equivalent to `ω = u ∧ v`.
pub fn plucker_decomposable(omega: &MultiVector) -> Result<bool, ExteriorError> {
    if omega.degree() != 2 {
        return Err(ExteriorError::WrongDegree {
            expected: 2,
            found: omega.degree(),
        });
    }
    Ok(omega.wedge(omega)?.is_zero())
}

/// Span of `{ω ⌞ α : α a basis (k−1)-covector}`: the smallest subspace `W`
/// with `ω ∈ ∧^k W`. `ω ≠ 0` is decomposable iff `dim W = k`.
pub fn support_space(omega: &MultiVector) -> linalg::Echelon {
    let dim = omega.dim();
    let k = omega.degree();
    if omega.is_zero() || k == 0 {
        return linalg::echelon(&[], dim);
    }
    let support = omega.support_indices();
    let rows: Vec<Vec<Rational>> = tuples_over(k - 1, &support)
        .iter()
        .map(|a| {
            let c = contract(omega, &MultiCovector::from_indices(dim, a)).expect("degrees fit");
            (0..dim).map(|i| c.coefficient(&[i])).collect()
        })
        .collect();
    linalg::echelon(&rows, dim)
}

/// Explicit factors `u1, …, uk` with `u1 ∧ … ∧ uk` a nonzero multiple of `ω`,
/// or `None` if `ω` is zero or not decomposable.
pub fn factor_decomposable(omega: &MultiVector) -> Option<Vec<Vector>> {
    let w = support_space(omega);
    if omega.is_zero() || w.rank() != omega.degree() {
        return None;
    }
    let factors: Vec<Vector> = w
        .rows
        .iter()
        .map(|r| {
            Vector::from_terms(omega.dim(), r.iter().cloned().enumerate())
                .expect("row length matches dimension")
        })
        .collect();
    // ∧ of a basis of W is a nonzero multiple of ω exactly when ω ∈ ∧^k W is decomposable
    let product = wedge_vectors(omega.dim(), &factors).ok()?;
    let (blade, c) = omega.terms().next()?;
    let ratio = product.coefficient(blade) / c;
    (!ratio.is_zero() && product == omega.scaled(&ratio)).then_some(factors)
}

fn check_degree(alg: &StratifiedLieAlgebra, k: usize) -> Result<(), RectError> {
    let n = alg.horizontal_dim();
    if k == 0 || k > n {
        return Err(RectError::DegreeOutOfRange { degree: k, max: n });
    }
    Ok(())
}

pub fn find_simple_cycle(alg: &StratifiedLieAlgebra, k: usize) -> Result<Verdict, RectError> {
    find_simple_cycle_with(alg, k, &SearchOptions::default())
}

/// Runs, in order: basis-subset scan, kernel triviality, the Plücker test for a
/// one-dimensional 2-cycle space, and a bounded-height search over cycle-space
/// combinations.
pub fn find_simple_cycle_with(
    alg: &StratifiedLieAlgebra,
    k: usize,
    opts: &SearchOptions,
) -> Result<Verdict, RectError> {
    check_degree(alg, k)?;
    let dim = alg.total_dim();
    let horizontal: Vec<usize> = alg.horizontal_indices().collect();

    // (1) commuting basis subsets
    let subset = tuples_over(k, &horizontal).into_iter().find(|t| {
        t.iter().enumerate().all(|(a, &i)| {
            t[a + 1..]
                .iter()
                .all(|&j| alg.bracket_basis(i, j).is_zero())
        })
    });
    if let Some(t) = subset {
        let factors = t.iter().map(|&i| Vector::basis(dim, i)).collect();
        return Verdict::with_factors(
            Status::Yes,
            alg,
            factors,
            "basis-subset scan found pairwise commuting horizontal basis vectors",
            Some(Certificate::BasisSubset { indices: t }),
        );
    }

    // (2) no cycles at all
    let cycles = invariant_cycle_space(alg, k);
    if cycles.is_zero() {
        return Ok(Verdict::no(
            "kernel is zero: no invariant k-cycles exist",
            Some(Certificate::ZeroKernel {
                rank: boundary_rank(alg, k),
                domain_dimension: cycles.ambient_dimension(),
            }),
        ));
    }

    // (3) one-dimensional 2-cycle space: Plücker decides
    if k == 2 && cycles.dimension() == 1 {
        let generator = cycles.basis()[0].clone();
        let square = generator.wedge(&generator)?;
        if square.is_zero() {
            return decomposable_yes(alg, generator, "cycle-space generator is decomposable");
        }
        return Ok(Verdict::no(
            "kernel generator not decomposable (Plücker wedge-square nonzero)",
            Some(Certificate::WedgeSquare { generator, square }),
        ));
    }

    // (4) bounded search
    search(alg, k, cycles.basis(), opts)
}

fn decomposable_yes(
    alg: &StratifiedLieAlgebra,
    cycle: MultiVector,
    reason: &str,
) -> Result<Verdict, RectError> {
    let factors = factor_decomposable(&cycle)
        .ok_or_else(|| RectError::InvalidWitness("decomposable cycle failed to factor".into()))?;
    Verdict::with_factors(
        Status::Yes,
        alg,
        factors,
        reason,
        Some(Certificate::Decomposable { cycle }),
    )
}

fn is_decomposable(omega: &MultiVector) -> bool {
    if omega.is_zero() {
        return false;
    }
    if omega.degree() == 2 {
        return plucker_decomposable(omega).expect("degree 2");
    }
    support_space(omega).rank() == omega.degree()
}

/// Rationals of height at most `h`, ordered by height, then by value.
fn search_values(h: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for q in 1..=h as i64 {
        for p in -(h as i64)..=(h as i64) {
            if p != 0 && p.gcd(&q) == 1 {
                out.push(Rational::new(BigInt::from(p), BigInt::from(q)));
            }
        }
    }
    out.sort_by(|a, b| height(a).cmp(&height(b)).then(a.cmp(b)));
    out.dedup();
    out
}

/// Coefficient tuples of exact height `h`, first nonzero entry `1`, in
/// lexicographic order of the value list; at most `limit` of them.
fn candidates_at_height(
    dims: usize,
    h: u32,
    values: &[Rational],
    limit: usize,
) -> Vec<Vec<Rational>> {
    let h_big = BigInt::from(h);
    let allowed: Vec<usize> = (0..values.len())
        .filter(|&i| height(&values[i]) <= h_big)
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; dims];
    'outer: loop {
        let c: Vec<&Rational> = idx.iter().map(|&i| &values[allowed[i]]).collect();
        let first = c.iter().find(|x| !x.is_zero());
        let max_h = c.iter().map(|x| height(x)).max().unwrap_or_default();
        if first.is_some_and(|x| x.is_one()) && max_h == h_big {
            out.push(c.into_iter().cloned().collect());
            if out.len() >= limit {
                break;
            }
        }
        for pos in (0..dims).rev() {
            idx[pos] += 1;
            if idx[pos] < allowed.len() {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }
    out
}

fn search(
    alg: &StratifiedLieAlgebra,
    k: usize,
    basis: &[MultiVector],
    opts: &SearchOptions,
) -> Result<Verdict, RectError> {
    let d = basis.len();
    let combine = |c: &[Rational]| {
        c.iter()
            .zip(basis)
            .filter(|(x, _)| !x.is_zero())
            .fold(MultiVector::zero(alg.total_dim(), k), |acc, (x, b)| {
                acc.add(&b.scaled(x))
            })
    };

    // A one-dimensional cycle space is searched completely by its generator.
    if d == 1 {
        let generator = basis[0].clone();
        if is_decomposable(&generator) {
            return decomposable_yes(alg, generator, "cycle-space generator is decomposable");
        }
        let support_dimension = support_space(&generator).rank();
        return Ok(Verdict::no(
            "kernel generator not decomposable (support space exceeds degree)",
            Some(Certificate::SupportRank {
                generator,
                support_dimension,
            }),
        ));
    }

    let values = search_values(opts.height_bound);
    let mut checked = 0usize;
    let mut budget_hit = false;
    for h in 1..=opts.height_bound {
        let remaining = opts.max_candidates - checked;
        if remaining == 0 {
            budget_hit = true;
            break;
        }
        let batch = candidates_at_height(d, h, &values, remaining);
        checked += batch.len();
        let hit = batch
            .par_iter()
            .map(|c| combine(c))
            .find_first(is_decomposable);
        if let Some(cycle) = hit {
            return decomposable_yes(
                alg,
                cycle,
                "bounded-height search found a decomposable cycle",
            );
        }
        if checked >= opts.max_candidates {
            budget_hit = true;
            break;
        }
    }
    Ok(Verdict::unknown(
        format!(
            "search exhausted at height bound {} without a decomposable cycle",
            opts.height_bound
        ),
        Some(Certificate::SearchExhausted {
            height_bound: opts.height_bound,
            candidates: checked,
            kernel_dimension: d,
            budget_hit,
        }),
    ))
}

pub fn is_purely_unrectifiable(alg: &StratifiedLieAlgebra, k: usize) -> Result<Verdict, RectError> {
    is_purely_unrectifiable_with(alg, k, &SearchOptions::default())
}

/// Negation of [`find_simple_cycle`]: YES means no horizontal abelian
/// subalgebra of rank `k` exists.
pub fn is_purely_unrectifiable_with(
    alg: &StratifiedLieAlgebra,
    k: usize,
    opts: &SearchOptions,
) -> Result<Verdict, RectError> {
    let n = alg.horizontal_dim();
    if k == 0 {
        return Err(RectError::DegreeOutOfRange { degree: 0, max: n });
    }
    if k > n {
        return Ok(Verdict::yes(
            "degree exceeds horizontal rank",
            Some(Certificate::DegreeExceedsRank {
                degree: k,
                horizontal_dim: n,
            }),
        ));
    }
    let v = find_simple_cycle_with(alg, k, opts)?;
    Ok(match v.status {
        Status::Yes => Verdict {
            status: Status::No,
            reason: format!("rectifiable sets exist: {}", v.reason),
            ..v
        },
        Status::No => Verdict {
            status: Status::Yes,
            ..v
        },
        Status::Unknown => v,
    })
}

pub fn nonsimple_cycle_exists(alg: &StratifiedLieAlgebra, k: usize) -> Result<Verdict, RectError> {
    nonsimple_cycle_exists_with(alg, k, &SearchOptions::default())
}

/// YES when invariant `k`-cycles exist but none of them is simple.
pub fn nonsimple_cycle_exists_with(
    alg: &StratifiedLieAlgebra,
    k: usize,
    opts: &SearchOptions,
) -> Result<Verdict, RectError> {
    check_degree(alg, k)?;
    let cycles = invariant_cycle_space(alg, k);
    if cycles.is_zero() {
        return Ok(Verdict::no(
            "kernel is zero: no invariant k-cycles exist",
            Some(Certificate::ZeroKernel {
                rank: boundary_rank(alg, k),
                domain_dimension: cycles.ambient_dimension(),
            }),
        ));
    }
    let simple = find_simple_cycle_with(alg, k, opts)?;
    match simple.status {
        Status::Yes => Ok(Verdict {
            status: Status::No,
            reason: format!("simple cycles exist: {}", simple.reason),
            ..simple
        }),
        Status::No => Verdict::with_cycle(
            Status::Yes,
            alg,
            cycles.basis()[0].clone(),
            format!(
                "invariant cycles exist but none is simple: {}",
                simple.reason
            ),
            simple.certificate,
        ),
        Status::Unknown => Ok(simple),
    }
}
