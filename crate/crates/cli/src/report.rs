use serde::Serialize;
use serde_json::{Map, Value};

use carnot_core::rational::format_rational;
use carnot_core::rectifiability::{Certificate, Verdict, Witness};
use carnot_core::syntax::format_multi;
use carnot_core::{Rational, StratifiedLieAlgebra};

/// The structured answer of one command. Objects inside `inputs` and
/// `result` are `serde_json` maps, which keep keys sorted, so the JSON form
/// is byte-stable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub algebra_name: String,
    pub inputs: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<Value>>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

/// Builds a JSON object from `(key, value)` pairs.
pub fn object<const N: usize>(pairs: [(&str, Value); N]) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn certificate(alg: &StratifiedLieAlgebra, c: &Certificate) -> Value {
    let mut out = match c {
        Certificate::BasisSubset { indices } => object([(
            "basis",
            indices.iter().map(|&i| Value::from(alg.label(i))).collect(),
        )]),
        Certificate::ZeroKernel {
            rank,
            domain_dimension,
        } => object([
            ("rank", (*rank).into()),
            ("domain_dimension", (*domain_dimension).into()),
        ]),
        Certificate::WedgeSquare { generator, square } => object([
            ("generator", format_multi(alg, generator).into()),
            ("square", format_multi(alg, square).into()),
        ]),
        Certificate::SupportRank {
            generator,
            support_dimension,
        } => object([
            ("generator", format_multi(alg, generator).into()),
            ("support_dimension", (*support_dimension).into()),
        ]),
        Certificate::Decomposable { cycle } => object([("cycle", format_multi(alg, cycle).into())]),
        Certificate::SearchExhausted {
            height_bound,
            candidates,
            kernel_dimension,
            budget_hit,
        } => object([
            ("height_bound", (*height_bound).into()),
            ("candidates", (*candidates).into()),
            ("kernel_dimension", (*kernel_dimension).into()),
            ("budget_hit", (*budget_hit).into()),
        ]),
        Certificate::DegreeExceedsRank {
            degree,
            horizontal_dim,
        } => object([
            ("degree", (*degree).into()),
            ("horizontal_dim", (*horizontal_dim).into()),
        ]),
    };
    let map = out.as_object_mut().expect("built as an object");
    map.insert("kind".into(), c.kind().into());
    map.insert("description".into(), c.describe(alg).into());
    out
}

pub fn witness(alg: &StratifiedLieAlgebra, w: &Witness) -> Value {
    match w {
        Witness::Factors(fs) => object([(
            "factors",
            fs.iter()
                .map(|f| Value::from(alg.format_vector(f)))
                .collect(),
        )]),
        Witness::Cycle(c) => object([("cycle", format_multi(alg, c).into())]),
    }
}

pub fn verdict(alg: &StratifiedLieAlgebra, v: &Verdict) -> Value {
    object([
        ("status", v.status.to_string().into()),
        ("reason", v.reason.clone().into()),
        (
            "witness",
            v.witness.as_ref().map_or(Value::Null, |w| witness(alg, w)),
        ),
    ])
}

/// Human-readable lines for a verdict.
pub fn verdict_text(alg: &StratifiedLieAlgebra, v: &Verdict) -> Vec<String> {
    let mut lines = vec![
        format!("status: {}", v.status),
        format!("reason: {}", v.reason),
    ];
    match &v.witness {
        Some(Witness::Factors(fs)) => {
            let fs: Vec<String> = fs
                .iter()
                .map(|f| format!("({})", alg.format_vector(f)))
                .collect();
            lines.push(format!("witness: {}", fs.join(" ^ ")));
        }
        Some(Witness::Cycle(c)) => lines.push(format!("witness: {}", format_multi(alg, c))),
        None => {}
    }
    if let Some(c) = &v.certificate {
        lines.push(format!("certificate: {}", c.describe(alg)));
    }
    lines
}
