//! Named algebras used throughout the tests and the CLI.

use crate::algebra::{BracketEntry, StratifiedLieAlgebra};
use crate::error::AlgebraError;
use crate::rational::int;

fn one(target: usize) -> Vec<(usize, crate::rational::Rational)> {
    vec![(target, int(1))]
}

/// Heisenberg algebra `X1..Xn, Y1..Yn, Z` with `[Xi, Yi] = Z`.
pub fn heisenberg(n: usize) -> Result<StratifiedLieAlgebra, AlgebraError> {
    if n < 1 {
        return Err(AlgebraError::CatalogParameter(
            "heisenberg needs n >= 1".into(),
        ));
    }
    let mut labels: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    labels.extend((1..=n).map(|i| format!("Y{i}")));
    labels.push("Z".into());
    let z = 2 * n;
    let brackets = (0..n).map(|i| (i, n + i, one(z)));
    StratifiedLieAlgebra::from_parts(format!("heisenberg_{n}"), vec![2 * n, 1], labels, brackets)
}

/// `R^n` with zero bracket.
pub fn abelian(n: usize) -> Result<StratifiedLieAlgebra, AlgebraError> {
    if n < 1 {
        return Err(AlgebraError::CatalogParameter(
            "abelian needs n >= 1".into(),
        ));
    }
    let labels = (1..=n).map(|i| format!("e{i}")).collect();
    StratifiedLieAlgebra::from_parts(format!("abelian_{n}"), vec![n], labels, Vec::new())
}

/// Step-2 algebra on `u1..u4 ⊕ v1..v5` that is purely 2-unrectifiable yet
/// carries the invariant 2-cycle `u1^u2 - u3^u4`.
pub fn counterexample_9d() -> StratifiedLieAlgebra {
    let mut labels: Vec<String> = (1..=4).map(|i| format!("u{i}")).collect();
    labels.extend((1..=5).map(|i| format!("v{i}")));
    let v = |i: usize| 3 + i;
    let brackets: Vec<BracketEntry> = vec![
        (0, 1, one(v(1))),
        (2, 3, one(v(1))),
        (0, 2, one(v(2))),
        (0, 3, one(v(3))),
        (1, 2, one(v(4))),
        (1, 3, one(v(5))),
    ];
    StratifiedLieAlgebra::from_parts("counterexample_9d", vec![4, 5], labels, brackets)
        .expect("static table is well formed")
}

/// Engel algebra: `[X1, X2] = X3`, `[X1, X3] = X4`, layers `[2, 1, 1]`.
pub fn engel() -> StratifiedLieAlgebra {
    let labels = (1..=4).map(|i| format!("X{i}")).collect();
    StratifiedLieAlgebra::from_parts(
        "engel",
        vec![2, 1, 1],
        labels,
        vec![(0, 1, one(2)), (0, 2, one(3))],
    )
    .expect("static table is well formed")
}

/// Free step-2 algebra on `n` generators: `[ui, uj] = vi_j` for `i < j`.
pub fn free_step2(n: usize) -> Result<StratifiedLieAlgebra, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::CatalogParameter(
            "free_step2 needs n >= 2".into(),
        ));
    }
    let mut labels: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            brackets.push((i, j, one(labels.len())));
            labels.push(format!("v{}_{}", i + 1, j + 1));
        }
    }
    let m = n * (n - 1) / 2;
    StratifiedLieAlgebra::from_parts(format!("free_step2_{n}"), vec![n, m], labels, brackets)
}

/// Resolves `heisenberg:2`, `heisenberg_2`, `abelian:3`, `free_step2:3`, `engel`,
/// `counterexample_9d`. A missing parameter defaults to the smallest valid one.
pub fn by_name(spec: &str) -> Result<StratifiedLieAlgebra, AlgebraError> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => match spec.rsplit_once('_') {
            Some((n, p)) if p.chars().all(|c| c.is_ascii_digit()) => (n, Some(p)),
            _ => (spec, None),
        },
    };
    let param = |default: usize| -> Result<usize, AlgebraError> {
        match param {
            None => Ok(default),
            Some(p) => p
                .parse()
                .map_err(|_| AlgebraError::CatalogParameter(format!("bad parameter `{p}`"))),
        }
    };
    match name {
        "heisenberg" => heisenberg(param(1)?),
        "abelian" => abelian(param(1)?),
        "free_step2" => free_step2(param(2)?),
        "engel" => Ok(engel()),
        "counterexample_9d" | "counterexample" => Ok(counterexample_9d()),
        other => Err(AlgebraError::CatalogParameter(format!(
            "unknown catalog algebra `{other}`"
        ))),
    }
}

pub const NAMES: &[&str] = &[
    "heisenberg",
    "abelian",
    "counterexample_9d",
    "engel",
    "free_step2",
];

/// The fixed set of instances exercised by the property suites.
pub fn standard_entries() -> Vec<StratifiedLieAlgebra> {
    vec![
        heisenberg(1).unwrap(),
        heisenberg(2).unwrap(),
        heisenberg(3).unwrap(),
        abelian(3).unwrap(),
        abelian(4).unwrap(),
        counterexample_9d(),
        engel(),
        free_step2(3).unwrap(),
        free_step2(4).unwrap(),
    ]
}
