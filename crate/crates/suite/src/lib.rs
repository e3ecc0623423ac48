//! Support code for the acceptance run. The oracles share no code with
//! `carnot-core`'s exterior algebra; [`Tally`] turns a batch of checks into
//! one pass/fail line.

use std::time::{Duration, Instant};

use carnot_core::exterior::{Kind, Multi};
use carnot_core::rational::ratio;
use carnot_core::Rational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

/// `det[⟨e*_{cov[i]}, e_{vec[j]}⟩]` by the Leibniz formula. Indices may be
/// unsorted or repeated; that is the point of using a determinant.
pub fn det_pairing(cov: &[usize], vec: &[usize]) -> i64 {
    assert_eq!(cov.len(), vec.len());
    let n = cov.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0;
    loop {
        if (0..n).all(|i| cov[i] == vec[perm[i]]) {
            total += permutation_sign(&perm);
        }
        if !next_permutation(&mut perm) {
            return total;
        }
    }
}

fn permutation_sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `⟨a ∧ b, λ⟩` expanded term by term: the wedge is never formed, each
/// pair of blades is concatenated and paired through [`det_pairing`].
pub fn wedge_pair_oracle<A: Kind, V: Kind>(
    a: &Multi<A>,
    b: &Multi<A>,
    lambda: &Multi<V>,
) -> Rational {
    let mut total = Rational::from_integer(0.into());
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            let cov: Vec<usize> = ba.iter().chain(bb.iter()).copied().collect();
            for (bl, cl) in lambda.terms() {
                if bl.len() != cov.len() {
                    continue;
                }
                let d = det_pairing(&cov, bl);
                if d != 0 {
                    total += ca * cb * cl * Rational::from_integer(d.into());
                }
            }
        }
    }
    total
}

/// All increasing `k`-subsets of `pool`, in lexicographic order.
pub fn subsets(k: usize, pool: &[usize]) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &first) in pool.iter().enumerate() {
        for mut rest in subsets(k - 1, &pool[i + 1..]) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn random_rational(rng: &mut Rng8) -> Rational {
    let p = rng.gen_range(-9i64..=9);
    let q = rng.gen_range(1i64..=6);
    ratio(p, q)
}

pub fn random_nonzero_rational(rng: &mut Rng8) -> Rational {
    loop {
        let r = random_rational(rng);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

/// A combination of up to `max_terms` blades drawn from `blades`.
pub fn random_sparse<K: Kind>(
    rng: &mut Rng8,
    dim: usize,
    degree: usize,
    blades: &[Vec<usize>],
    max_terms: usize,
) -> Multi<K> {
    let count = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(Vec<usize>, Rational)> = (0..count)
        .filter_map(|_| {
            blades
                .choose(rng)
                .map(|b| (b.clone(), random_rational(rng)))
        })
        .collect();
    Multi::from_terms(dim, degree, terms).expect("blades have the stated degree")
}

/// Random combination of the given elements.
pub fn random_combination<K: Kind>(
    rng: &mut Rng8,
    dim: usize,
    degree: usize,
    basis: &[Multi<K>],
) -> Multi<K> {
    basis.iter().fold(Multi::zero(dim, degree), |acc, b| {
        acc.add(&b.scaled(&random_rational(rng)))
    })
}

/// Counts checks and keeps the first few failure messages.
#[derive(Debug)]
pub struct Tally {
    pub label: String,
    pub checks: usize,
    pub failures: usize,
    pub examples: Vec<String>,
    pub notes: Vec<String>,
    started: Instant,
    pub elapsed: Duration,
    pub time_limit: Option<Duration>,
}

impl Tally {
    pub fn new(label: &str, time_limit: Option<Duration>) -> Self {
        Self {
            label: label.into(),
            checks: 0,
            failures: 0,
            examples: Vec::new(),
            notes: Vec::new(),
            started: Instant::now(),
            elapsed: Duration::ZERO,
            time_limit,
        }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < 3 {
                self.examples.push(what());
            }
        }
    }

    pub fn finish(mut self) -> Self {
        self.elapsed = self.started.elapsed();
        self
    }

    pub fn within_time(&self) -> bool {
        self.time_limit.is_none_or(|l| self.elapsed <= l)
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0 && self.within_time()
    }

    pub fn line(&self) -> String {
        let limit = match self.time_limit {
            Some(l) => format!(" (limit {:.0?})", l),
            None => String::new(),
        };
        format!(
            "{} {}: {} checks, {} failures, {:.2?}{}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.label,
            self.checks,
            self.failures,
            self.elapsed,
            limit
        )
    }
}
