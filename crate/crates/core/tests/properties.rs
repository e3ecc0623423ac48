//! Algebraic invariants on random exact inputs.

mod common;

use carnot_core::catalog;
use carnot_core::currents::{
    ce_boundary, invariant_boundary, restrict_by_dtheta, vertical_basis, InvariantPrecurrent,
};
use carnot_core::exterior::{
    basis_tuples, contract, dilate, mc_differential, pair, tuples_over, Kind, Multi, MultiCovector,
    MultiVector,
};
use carnot_core::rational::{ratio, Rational};
use carnot_core::rectifiability::{
    find_simple_cycle, plucker_decomposable, Certificate, Status, Witness,
};
use carnot_core::rumin::{invariant_cycle_space, vertical_ideal};
use carnot_core::{StratifiedLieAlgebra, Vector};
use common::naive_rank;
use num_traits::Zero;
use proptest::prelude::*;

fn algebras() -> Vec<StratifiedLieAlgebra> {
    catalog::standard_entries()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec((0..dim, rational()), 0..5)
        .prop_map(move |terms| Vector::from_terms(dim, terms).unwrap())
}

fn multi<K: Kind>(
    blades: Vec<Vec<usize>>,
    dim: usize,
    degree: usize,
) -> impl Strategy<Value = Multi<K>> {
    let n = blades.len();
    prop::collection::vec((0..n, rational()), 0..5).prop_map(move |terms| {
        Multi::from_terms(
            dim,
            degree,
            terms.into_iter().map(|(i, c)| (blades[i].clone(), c)),
        )
        .unwrap()
    })
}

/// (algebra index, degree, random multivector over all of g)
fn any_multivector() -> impl Strategy<Value = (usize, MultiVector)> {
    (0..algebras().len()).prop_flat_map(|a| {
        let dim = algebras()[a].total_dim();
        (0..=dim.min(6)).prop_flat_map(move |k| {
            multi::<carnot_core::exterior::Up>(basis_tuples(k, dim), dim, k)
                .prop_map(move |m| (a, m))
        })
    })
}

/// (algebra index, random horizontal k-vector with k >= 2)
fn horizontal_multivector() -> impl Strategy<Value = (usize, MultiVector)> {
    (0..algebras().len())
        .prop_filter("needs dim H >= 2", |&a| algebras()[a].horizontal_dim() >= 2)
        .prop_flat_map(|a| {
            let alg = algebras()[a].clone();
            let h: Vec<usize> = alg.horizontal_indices().collect();
            let dim = alg.total_dim();
            (2..=h.len()).prop_flat_map(move |k| {
                multi::<carnot_core::exterior::Up>(tuples_over(k, &h), dim, k)
                    .prop_map(move |m| (a, m))
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        a in 0..9usize,
        seed in prop::collection::vec((0..9usize, rational()), 0..12),
        r in rational(),
    ) {
        let alg = &algebras()[a];
        let dim = alg.total_dim();
        let pick = |s: &[(usize, Rational)]| Vector::from_terms(dim, s.iter().map(|(i, c)| (i % dim, c.clone()))).unwrap();
        let third = seed.len() / 3;
        let x = pick(&seed[..third]);
        let y = pick(&seed[third..2 * third]);
        let z = pick(&seed[2 * third..]);
        let xy = alg.bracket(&x, &y).unwrap();
        prop_assert_eq!(&xy, &alg.bracket(&y, &x).unwrap().scaled(&ratio(-1, 1)));
        prop_assert!(alg.bracket(&x, &x).unwrap().is_zero());
        let lhs = alg.bracket(&x.scaled(&r).add(&z), &y).unwrap();
        let rhs = xy.scaled(&r).add(&alg.bracket(&z, &y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dilation_is_an_automorphism(a in 0..9usize, xs in prop::collection::vec((0..9usize, rational()), 0..8), r in nonzero_rational(), s in nonzero_rational()) {
        let alg = &algebras()[a];
        let dim = alg.total_dim();
        let half = xs.len() / 2;
        let x = Vector::from_terms(dim, xs[..half].iter().map(|(i, c)| (i % dim, c.clone()))).unwrap();
        let y = Vector::from_terms(dim, xs[half..].iter().map(|(i, c)| (i % dim, c.clone()))).unwrap();
        let lhs = alg.bracket(&alg.dilation(&r, &x).unwrap(), &alg.dilation(&r, &y).unwrap()).unwrap();
        let rhs = alg.dilation(&r, &alg.bracket(&x, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let composed = alg.dilation(&r, &alg.dilation(&s, &x).unwrap()).unwrap();
        prop_assert_eq!(composed, alg.dilation(&(&r * &s), &x).unwrap());
    }

    #[test]
    fn wedge_is_graded_commutative(p in 0..4usize, q in 0..4usize, seed in any::<u64>()) {
        let dim = 6;
        let runner_a = basis_tuples(p, dim);
        let runner_b = basis_tuples(q, dim);
        let a = MultiVector::from_terms(dim, p, runner_a.iter().enumerate().filter(|(i, _)| (seed >> (i % 60)) & 1 == 1).map(|(i, t)| (t.clone(), ratio(i as i64 % 5 - 2, 1)))).unwrap();
        let b = MultiVector::from_terms(dim, q, runner_b.iter().enumerate().filter(|(i, _)| (seed >> ((i * 7) % 60)) & 1 == 0).map(|(i, t)| (t.clone(), ratio(1, i as i64 % 3 + 1)))).unwrap();
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        if (p * q) % 2 == 0 {
            prop_assert_eq!(ab, ba);
        } else {
            prop_assert_eq!(ab, ba.neg());
        }
    }

    #[test]
    fn wedge_is_associative(x in multi::<carnot_core::exterior::Up>(basis_tuples(1, 5), 5, 1), y in multi::<carnot_core::exterior::Up>(basis_tuples(2, 5), 5, 2), z in multi::<carnot_core::exterior::Up>(basis_tuples(1, 5), 5, 1)) {
        prop_assert_eq!(x.wedge(&y).unwrap().wedge(&z).unwrap(), x.wedge(&y.wedge(&z).unwrap()).unwrap());
    }

    #[test]
    fn simple_bivectors_square_to_zero(u in vector(6), v in vector(6)) {
        let w = MultiVector::from_vector(&u).wedge(&MultiVector::from_vector(&v)).unwrap();
        prop_assert!(w.wedge(&w).unwrap().is_zero());
        prop_assert!(plucker_decomposable(&w).unwrap());
    }

    #[test]
    fn contraction_duality(
        j in 0..=4usize,
        lam in multi::<carnot_core::exterior::Up>(basis_tuples(4, 6), 6, 4),
        seed in prop::collection::vec((0..20usize, rational()), 0..4),
    ) {
        let blades = basis_tuples(j, 6);
        let alpha = MultiCovector::from_terms(6, j, seed.into_iter().map(|(i, c)| (blades[i % blades.len()].clone(), c))).unwrap();
        let c = contract(&lam, &alpha).unwrap();
        for b in basis_tuples(4 - j, 6) {
            let b = MultiCovector::from_indices(6, &b);
            prop_assert_eq!(pair(&b, &c).unwrap(), pair(&alpha.wedge(&b).unwrap(), &lam).unwrap());
        }
    }

    #[test]
    fn maurer_cartan_is_linear(a in 0..9usize, xs in prop::collection::vec((0..9usize, rational()), 0..8), r in rational()) {
        let alg = &algebras()[a];
        let dim = alg.total_dim();
        let half = xs.len() / 2;
        let t1 = MultiCovector::from_terms(dim, 1, xs[..half].iter().map(|(i, c)| (vec![i % dim], c.clone()))).unwrap();
        let t2 = MultiCovector::from_terms(dim, 1, xs[half..].iter().map(|(i, c)| (vec![i % dim], c.clone()))).unwrap();
        let lhs = mc_differential(alg, &t1.scaled(&r).add(&t2)).unwrap();
        let rhs = mc_differential(alg, &t1).unwrap().scaled(&r).add(&mc_differential(alg, &t2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn boundary_squares_to_zero((a, lam) in any_multivector()) {
        let alg = &algebras()[a];
        let b = ce_boundary(alg, &lam).unwrap();
        prop_assert!(ce_boundary(alg, &b).unwrap().is_zero());
    }

    #[test]
    fn boundary_commutes_with_dilation((a, lam) in any_multivector(), r in nonzero_rational()) {
        let r = if r < Rational::zero() { -r } else { r };
        let alg = &algebras()[a];
        let lhs = ce_boundary(alg, &dilate(alg, &r, &lam).unwrap()).unwrap();
        let rhs = dilate(alg, &r, &ce_boundary(alg, &lam).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn horizontal_dilation_is_scalar((a, lam) in horizontal_multivector(), r in nonzero_rational()) {
        let alg = &algebras()[a];
        let k = lam.degree() as i32;
        prop_assert_eq!(dilate(alg, &r, &lam).unwrap(), lam.scaled(&r.pow(k)));
    }

    #[test]
    fn boundary_vanishes_iff_vertical_restrictions_vanish((a, lam) in horizontal_multivector()) {
        let alg = &algebras()[a];
        let t = InvariantPrecurrent::new(alg, lam).unwrap();
        let b = invariant_boundary(alg, &t).unwrap();
        let restrictions: Vec<MultiVector> = vertical_basis(alg)
            .iter()
            .map(|theta| restrict_by_dtheta(alg, &t, theta).unwrap())
            .collect();
        prop_assert_eq!(b.is_zero(), restrictions.iter().all(MultiVector::is_zero));

        // ⟨θ ∧ b, ∂T⟩ = ⟨b, T ⌞ dθ⟩ on every basis test covector
        let dim = alg.total_dim();
        for (theta, r) in vertical_basis(alg).iter().zip(&restrictions) {
            for test in basis_tuples(t.degree() - 2, dim) {
                let test = MultiCovector::from_indices(dim, &test);
                let lhs = pair(&theta.wedge(&test).unwrap(), b.as_multivector()).unwrap();
                prop_assert_eq!(lhs, pair(&test, r).unwrap());
            }
        }
    }

    #[test]
    fn boundary_support_is_one_second_layer_index((a, lam) in horizontal_multivector()) {
        let alg = &algebras()[a];
        let b = invariant_boundary(alg, &InvariantPrecurrent::new(alg, lam).unwrap()).unwrap();
        for (blade, _) in b.as_multivector().terms() {
            prop_assert_eq!(blade.iter().filter(|&&i| alg.layer_of(i) == 2).count(), 1);
            prop_assert_eq!(blade.iter().filter(|&&i| alg.is_horizontal(i)).count(), blade.len() - 1);
        }
    }

    #[test]
    fn vertical_ideal_absorbs_wedges(a in 0..9usize, k in 1..4usize, seed in prop::collection::vec((0..40usize, rational()), 0..4), which in 0..8usize) {
        let alg = &algebras()[a];
        let vb = vertical_basis(alg);
        prop_assume!(!vb.is_empty());
        let dim = alg.total_dim();
        let blades = basis_tuples(k - 1, dim);
        let alpha = MultiCovector::from_terms(dim, k - 1, seed.into_iter().map(|(i, c)| (blades[i % blades.len()].clone(), c))).unwrap();
        let theta = &vb[which % vb.len()];
        let ideal = vertical_ideal(alg, k);
        prop_assert!(ideal.contains(&theta.wedge(&alpha).unwrap()));
        if k >= 2 && alpha.degree() >= 1 {
            let beta_blades = basis_tuples(k - 2, dim);
            let beta = MultiCovector::from_indices(dim, &beta_blades[which % beta_blades.len()]);
            let d = mc_differential(alg, theta).unwrap();
            prop_assert!(ideal.contains(&d.wedge(&beta).unwrap()));
        }
    }

    #[test]
    fn plucker_agrees_with_skew_rank_oracle(u in vector(6), v in vector(6), x in vector(6), y in vector(6)) {
        let wedge2 = |a: &Vector, b: &Vector| MultiVector::from_vector(a).wedge(&MultiVector::from_vector(b)).unwrap();
        for w in [wedge2(&u, &v), wedge2(&u, &v).add(&wedge2(&x, &y))] {
            // ω decomposable ⟺ its skew coefficient matrix has rank ≤ 2
            let mut m = vec![vec![Rational::zero(); 6]; 6];
            for (blade, c) in w.terms() {
                m[blade[0]][blade[1]] = c.clone();
                m[blade[1]][blade[0]] = -c.clone();
            }
            prop_assert_eq!(plucker_decomposable(&w).unwrap(), naive_rank(m) <= 2);
        }
        // jointly independent factors are never decomposable
        let four = [&u, &v, &x, &y].map(MultiVector::from_vector);
        let vol = four[0].wedge(&four[1]).unwrap().wedge(&four[2]).unwrap().wedge(&four[3]).unwrap();
        if !vol.is_zero() {
            prop_assert!(!plucker_decomposable(&wedge2(&u, &v).add(&wedge2(&x, &y))).unwrap());
        }
    }

    #[test]
    fn random_step2_verdicts_are_sound(
        table in prop::collection::vec((-2i64..=2, -2i64..=2), 6),
    ) {
        // u1..u4 with [ui, uj] = a·v1 + b·v2 per pair; keep V2 spanned.
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let entries: Vec<_> = pairs.iter().zip(&table).map(|(&(i, j), &(a, b))| {
            (i, j, vec![(4usize, ratio(a, 1)), (5usize, ratio(b, 1))])
        }).collect();
        let labels = ["u1", "u2", "u3", "u4", "v1", "v2"].map(String::from).to_vec();
        let alg = StratifiedLieAlgebra::from_parts("random", vec![4, 2], labels, entries).unwrap();
        prop_assume!(alg.validate().is_valid());
        for k in 1..=4 {
            let v = find_simple_cycle(&alg, k).unwrap();
            match (&v.status, &v.witness, &v.certificate) {
                (Status::Yes, Some(Witness::Factors(f)), _) => {
                    prop_assert_eq!(f.len(), k);
                    for i in 0..k {
                        for j in i + 1..k {
                            prop_assert!(alg.bracket(&f[i], &f[j]).unwrap().is_zero());
                        }
                    }
                }
                (Status::No, _, Some(Certificate::ZeroKernel { rank, domain_dimension })) => {
                    prop_assert_eq!(rank, domain_dimension);
                    prop_assert!(invariant_cycle_space(&alg, k).is_zero());
                }
                (Status::No, _, Some(Certificate::WedgeSquare { generator, square })) => {
                    prop_assert!(!square.is_zero());
                    prop_assert_eq!(&generator.wedge(generator).unwrap(), square);
                }
                (Status::No, _, Some(Certificate::SupportRank { support_dimension, .. })) => {
                    prop_assert!(*support_dimension > k);
                }
                (Status::Unknown, _, _) => {}
                other => prop_assert!(false, "unexpected verdict shape {:?}", other),
            }
        }
    }
}

#[test]
fn heisenberg_currents_vanish_exactly_above_rank() {
    for n in 1..=3 {
        let alg = catalog::heisenberg(n).unwrap();
        for k in 2..=2 * n {
            let empty = invariant_cycle_space(&alg, k).is_zero();
            assert_eq!(empty, k > n, "H{n}, k={k}");
        }
    }
}

#[test]
fn heisenberg_vertical_ideal_covers_above_rank() {
    use carnot_core::rumin::vertical_ideal_covers;
    for n in 1..=3 {
        let alg = catalog::heisenberg(n).unwrap();
        for k in 1..=alg.total_dim() {
            let cov = vertical_ideal_covers(&alg, k);
            assert_eq!(cov.covers, k > n, "H{n}, k={k}");
        }
    }
}
