use std::io::Read;
use std::path::Path;

use serde_json::Value;

use carnot_core::catalog;
use carnot_core::currents::{
    ce_boundary, check_vertical, is_current, restrict_by_dtheta, vertical_basis,
};
use carnot_core::document::load_algebra_json;
use carnot_core::exterior::{mc_differential, Kind, Multi};
use carnot_core::rectifiability::{
    find_simple_cycle_with, is_purely_unrectifiable_with, nonsimple_cycle_exists_with,
    SearchOptions, Status, Verdict,
};
use carnot_core::rumin::{
    boundary_rank, invariant_cycle_space, vertical_ideal, vertical_ideal_covers,
};
use carnot_core::syntax::{format_multi, parse_multi};
use carnot_core::{
    AlgebraSpecDocument, CurrentsError, InvariantPrecurrent, MultiCovector, MultiVector,
    StratifiedLieAlgebra,
};

use crate::args::{Command, Degree, Format, KVector, Search, Source};
use crate::report::{self, object, Report};
use crate::{Failure, Outcome, EXIT_NO, EXIT_UNKNOWN, EXIT_YES};

/// A computed answer before rendering.
struct Answer {
    code: i32,
    report: Report,
    text: Vec<String>,
}

impl Answer {
    fn render(self, format: Format) -> Outcome {
        let stdout = match format {
            Format::Json => self.report.to_json(),
            Format::Text => {
                let mut s = self.text.join("\n");
                s.push('\n');
                s
            }
        };
        Outcome {
            code: self.code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// A loaded algebra plus the argument it came from.
struct Loaded {
    alg: StratifiedLieAlgebra,
    source: String,
}

impl Loaded {
    fn report(&self, command: &str, inputs: Vec<(&str, Value)>, result: Value) -> Report {
        let mut map = serde_json::Map::new();
        map.insert("algebra".into(), self.source.clone().into());
        for (k, v) in inputs {
            map.insert(k.into(), v);
        }
        Report {
            command: command.into(),
            algebra_name: self.alg.name().into(),
            inputs: Value::Object(map),
            result,
            certificates: None,
        }
    }

    /// Refuses algebras whose axioms fail: nothing downstream is meaningful for them.
    fn require_valid(&self) -> Result<(), Failure> {
        let report = self.alg.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Failure::Data(format!(
                "algebra `{}` is not a valid stratified Lie algebra ({}); see `carnot validate`",
                self.alg.name(),
                v.describe(&self.alg)
            ))),
        }
    }

    fn header(&self) -> String {
        format!("algebra: {}", self.alg.name())
    }
}

pub(crate) fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Outcome, Failure> {
    if let Command::Catalog {
        name,
        param,
        emit_spec,
        format,
    } = command
    {
        return catalog_command(name, param, emit_spec, format);
    }
    let source = source_of(&command);
    let loaded = load(source, stdin)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(source.threads.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start worker threads: {e}")))?;
    let format = source.format;
    let answer = pool.install(|| execute(&command, &loaded))?;
    Ok(answer.render(format))
}

fn source_of(command: &Command) -> &Source {
    match command {
        Command::Validate { source }
        | Command::Info { source }
        | Command::VerticalBasis { source }
        | Command::Boundary { source, .. }
        | Command::IsCurrent { source, .. }
        | Command::RestrictDtheta { source, .. }
        | Command::Cycles { source, .. }
        | Command::Rumin { source, .. }
        | Command::SimpleCycle { source, .. }
        | Command::NonsimpleCycle { source, .. }
        | Command::Rectifiable { source, .. } => source,
        Command::Catalog { .. } => unreachable!("catalog has no algebra source"),
    }
}

fn execute(command: &Command, l: &Loaded) -> Result<Answer, Failure> {
    match command {
        Command::Validate { .. } => Ok(validate(l)),
        Command::Info { .. } => Ok(info(l, "info")),
        Command::VerticalBasis { .. } => Ok(vertical(l)),
        Command::Boundary { kvector, .. } => boundary(l, kvector),
        Command::IsCurrent { kvector, .. } => current(l, kvector),
        Command::RestrictDtheta { kvector, theta, .. } => restrict(l, kvector, theta.as_deref()),
        Command::Cycles { degree, .. } => cycles(l, degree),
        Command::Rumin { degree, .. } => rumin(l, degree),
        Command::SimpleCycle { degree, search, .. } => {
            verdict_command(l, "simple-cycle", degree, search, find_simple_cycle_with)
        }
        Command::NonsimpleCycle { degree, search, .. } => verdict_command(
            l,
            "nonsimple-cycle",
            degree,
            search,
            nonsimple_cycle_exists_with,
        ),
        Command::Rectifiable { degree, search, .. } => verdict_command(
            l,
            "rectifiable",
            degree,
            search,
            is_purely_unrectifiable_with,
        ),
        Command::Catalog { .. } => unreachable!("handled before loading"),
    }
}

fn load(source: &Source, stdin: &mut dyn Read) -> Result<Loaded, Failure> {
    let spec = match (&source.algebra, &source.source) {
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(
                "give the algebra either with --algebra or positionally, not both".into(),
            ))
        }
        (Some(s), None) | (None, Some(s)) => s.clone(),
        (None, None) => {
            return Err(Failure::Usage(
                "no algebra given (use --algebra <catalog-name|path|->)".into(),
            ))
        }
    };
    let alg = if spec == "-" {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::Data(format!("cannot read standard input: {e}")))?;
        load_algebra_json(&text).map_err(|e| Failure::Data(format!("<stdin>: {e}")))?
    } else if Path::new(&spec).is_file() {
        let text =
            std::fs::read_to_string(&spec).map_err(|e| Failure::Data(format!("{spec}: {e}")))?;
        load_algebra_json(&text).map_err(|e| Failure::Data(format!("{spec}: {e}")))?
    } else {
        catalog::by_name(&spec).map_err(|e| {
            Failure::Data(format!(
                "`{spec}` is neither a readable file nor a catalog algebra: {e}"
            ))
        })?
    };
    Ok(Loaded { alg, source: spec })
}

/// Names basis indices by label where the core error only knows the index.
fn currents_failure(alg: &StratifiedLieAlgebra, e: CurrentsError) -> Failure {
    Failure::Data(match e {
        CurrentsError::NotHorizontal(i) => {
            format!(
                "--kvector is not horizontal: it has a component along {}",
                alg.label(i)
            )
        }
        CurrentsError::NotVertical(i) => {
            format!(
                "--theta is not vertical: it pairs nontrivially with {}",
                alg.label(i)
            )
        }
        other => other.to_string(),
    })
}

/// Parse errors are echoed with a caret under the offending byte.
fn parse<K: Kind>(
    l: &Loaded,
    flag: &str,
    expr: &str,
    degree: Option<usize>,
) -> Result<Multi<K>, Failure> {
    parse_multi::<K>(&l.alg, expr, degree).map_err(|e| {
        let pad = expr
            .char_indices()
            .take_while(|(i, _)| *i < e.position)
            .count();
        Failure::Data(format!(
            "invalid {flag} {e}\n  {expr}\n  {}^",
            " ".repeat(pad)
        ))
    })
}

fn precurrent(l: &Loaded, kv: &KVector) -> Result<InvariantPrecurrent, Failure> {
    let mv: MultiVector = parse(l, "--kvector", &kv.kvector, kv.degree)?;
    InvariantPrecurrent::new(&l.alg, mv).map_err(|e| currents_failure(&l.alg, e))
}

fn kvector_inputs(kv: &KVector) -> Vec<(&'static str, Value)> {
    let mut v = vec![("kvector", kv.kvector.clone().into())];
    if let Some(d) = kv.degree {
        v.push(("degree", d.into()));
    }
    v
}

fn validate(l: &Loaded) -> Answer {
    let alg = &l.alg;
    let report = alg.validate();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            object([
                ("axiom", v.axiom().into()),
                ("basis", v.witness_labels(alg).into()),
                ("description", v.describe(alg).into()),
            ])
        })
        .collect();
    let mut text = vec![l.header()];
    if report.is_valid() {
        text.push("valid: yes".into());
    } else {
        text.push(format!("valid: no ({} violations)", violations.len()));
        text.extend(
            report
                .violations
                .iter()
                .map(|v| format!("  {}: {}", v.axiom(), v.describe(alg))),
        );
    }
    Answer {
        code: if report.is_valid() { EXIT_YES } else { EXIT_NO },
        report: l.report(
            "validate",
            vec![],
            object([
                ("valid", report.is_valid().into()),
                ("violations", violations.into()),
            ]),
        ),
        text,
    }
}

fn summary(alg: &StratifiedLieAlgebra) -> (Value, Vec<String>) {
    let layers: Vec<Vec<String>> = (1..=alg.step())
        .map(|j| {
            alg.layer_range(j)
                .map(|i| alg.label(i).to_string())
                .collect()
        })
        .collect();
    let brackets: Vec<String> = alg
        .structure_constants()
        .filter(|(_, v)| !v.is_zero())
        .map(|((i, j), v)| {
            format!(
                "[{}, {}] = {}",
                alg.label(i),
                alg.label(j),
                alg.format_vector(v)
            )
        })
        .collect();
    let vertical: Vec<String> = vertical_basis(alg)
        .iter()
        .map(|t| format_multi(alg, t))
        .collect();
    let valid = alg.validate().is_valid();
    let result = object([
        ("layers", layers.clone().into()),
        ("layer_dims", alg.layer_dims().to_vec().into()),
        ("total_dim", alg.total_dim().into()),
        ("horizontal_dim", alg.horizontal_dim().into()),
        ("step", alg.step().into()),
        ("homogeneous_dimension", alg.homogeneous_dimension().into()),
        ("brackets", brackets.clone().into()),
        ("vertical_basis", vertical.clone().into()),
        ("valid", valid.into()),
    ]);
    let mut text = vec![format!("algebra: {}", alg.name())];
    for (j, layer) in layers.iter().enumerate() {
        text.push(format!("V{}: {}", j + 1, layer.join(" ")));
    }
    text.push(format!(
        "dimension {}, step {}, homogeneous dimension {}",
        alg.total_dim(),
        alg.step(),
        alg.homogeneous_dimension()
    ));
    text.push("brackets:".into());
    text.extend(brackets.iter().map(|b| format!("  {b}")));
    text.push(format!("vertical basis: {}", vertical.join(", ")));
    text.push(format!("valid: {}", if valid { "yes" } else { "no" }));
    (result, text)
}

fn info(l: &Loaded, command: &str) -> Answer {
    let (result, text) = summary(&l.alg);
    Answer {
        code: EXIT_YES,
        report: l.report(command, vec![], result),
        text,
    }
}

fn vertical(l: &Loaded) -> Answer {
    let basis: Vec<String> = vertical_basis(&l.alg)
        .iter()
        .map(|t| format_multi(&l.alg, t))
        .collect();
    let mut text = vec![l.header()];
    text.extend(basis.iter().cloned());
    Answer {
        code: EXIT_YES,
        report: l.report("vertical-basis", vec![], object([("basis", basis.into())])),
        text,
    }
}

fn boundary(l: &Loaded, kv: &KVector) -> Result<Answer, Failure> {
    l.require_valid()?;
    let alg = &l.alg;
    let mv: MultiVector = parse(l, "--kvector", &kv.kvector, kv.degree)?;
    let b = ce_boundary(alg, &mv).map_err(|e| Failure::Data(e.to_string()))?;
    let shown = format_multi(alg, &mv);
    let db = format_multi(alg, &b);
    Ok(Answer {
        code: EXIT_YES,
        report: l.report(
            "boundary",
            kvector_inputs(kv),
            object([
                ("kvector", shown.clone().into()),
                ("degree", mv.degree().into()),
                ("boundary", db.clone().into()),
                ("zero", b.is_zero().into()),
            ]),
        ),
        text: vec![l.header(), format!("∂({shown}) = {db}")],
    })
}

fn current(l: &Loaded, kv: &KVector) -> Result<Answer, Failure> {
    l.require_valid()?;
    let alg = &l.alg;
    let t = precurrent(l, kv)?;
    let b = ce_boundary(alg, t.coefficients()).map_err(|e| Failure::Data(e.to_string()))?;
    let yes = is_current(alg, &t).map_err(|e| Failure::Data(e.to_string()))?;
    let shown = format_multi(alg, t.coefficients());
    let db = format_multi(alg, &b);
    Ok(Answer {
        code: if yes { EXIT_YES } else { EXIT_NO },
        report: l.report(
            "is-current",
            kvector_inputs(kv),
            object([
                ("kvector", shown.clone().into()),
                ("degree", t.degree().into()),
                ("current", yes.into()),
                ("boundary", db.clone().into()),
            ]),
        ),
        text: vec![
            l.header(),
            format!("∂({shown}) = {db}"),
            format!("current: {}", if yes { "yes" } else { "no" }),
        ],
    })
}

fn restrict(l: &Loaded, kv: &KVector, theta: Option<&str>) -> Result<Answer, Failure> {
    l.require_valid()?;
    let alg = &l.alg;
    let t = precurrent(l, kv)?;
    let thetas: Vec<MultiCovector> = match theta {
        Some(expr) => {
            let th: MultiCovector = parse(l, "--theta", expr, Some(1))?;
            check_vertical(alg, &th).map_err(|e| currents_failure(alg, e))?;
            vec![th]
        }
        None => vertical_basis(alg),
    };
    let shown = format_multi(alg, t.coefficients());
    let mut rows = Vec::new();
    let mut text = vec![l.header()];
    let mut all_zero = true;
    for th in &thetas {
        let r = restrict_by_dtheta(alg, &t, th).map_err(|e| Failure::Data(e.to_string()))?;
        let d = mc_differential(alg, th).map_err(|e| Failure::Data(e.to_string()))?;
        all_zero &= r.is_zero();
        let (ts, ds, rs) = (
            format_multi(alg, th),
            format_multi(alg, &d),
            format_multi(alg, &r),
        );
        text.push(format!("θ = {ts}: dθ = {ds}, T⌞dθ = {rs}"));
        rows.push(object([
            ("theta", ts.into()),
            ("dtheta", ds.into()),
            ("restriction", rs.into()),
        ]));
    }
    text.push(format!("all zero: {}", if all_zero { "yes" } else { "no" }));
    let mut inputs = kvector_inputs(kv);
    if let Some(expr) = theta {
        inputs.push(("theta", expr.into()));
    }
    Ok(Answer {
        code: if all_zero { EXIT_YES } else { EXIT_NO },
        report: l.report(
            "restrict-dtheta",
            inputs,
            object([
                ("kvector", shown.into()),
                ("degree", t.degree().into()),
                ("restrictions", rows.into()),
                ("all_zero", all_zero.into()),
            ]),
        ),
        text,
    })
}

fn cycles(l: &Loaded, d: &Degree) -> Result<Answer, Failure> {
    l.require_valid()?;
    let alg = &l.alg;
    let k = d.degree;
    let space = invariant_cycle_space(alg, k);
    let basis: Vec<String> = space.basis().iter().map(|b| format_multi(alg, b)).collect();
    let mut text = vec![
        l.header(),
        format!(
            "invariant {k}-cycles: dimension {} of {} (boundary rank {})",
            space.dimension(),
            space.ambient_dimension(),
            boundary_rank(alg, k)
        ),
    ];
    text.extend(basis.iter().map(|b| format!("  {b}")));
    Ok(Answer {
        code: EXIT_YES,
        report: l.report(
            "cycles",
            vec![("degree", k.into())],
            object([
                ("degree", k.into()),
                ("dimension", space.dimension().into()),
                ("ambient_dimension", space.ambient_dimension().into()),
                ("boundary_rank", boundary_rank(alg, k).into()),
                ("basis", basis.into()),
            ]),
        ),
        text,
    })
}

fn rumin(l: &Loaded, d: &Degree) -> Result<Answer, Failure> {
    l.require_valid()?;
    let alg = &l.alg;
    let k = d.degree;
    let ideal = vertical_ideal(alg, k);
    let cov = vertical_ideal_covers(alg, k);
    let basis: Vec<String> = ideal.basis().iter().map(|b| format_multi(alg, b)).collect();
    let mut text = vec![
        l.header(),
        format!(
            "vertical ideal in degree {k}: dimension {} of {} (codimension {})",
            cov.ideal_dimension, cov.ambient_dimension, cov.codimension
        ),
        format!("covers: {}", if cov.covers { "yes" } else { "no" }),
    ];
    text.extend(basis.iter().map(|b| format!("  {b}")));
    Ok(Answer {
        code: EXIT_YES,
        report: l.report(
            "rumin",
            vec![("degree", k.into())],
            object([
                ("degree", k.into()),
                ("covers", cov.covers.into()),
                ("ideal_dimension", cov.ideal_dimension.into()),
                ("ambient_dimension", cov.ambient_dimension.into()),
                ("codimension", cov.codimension.into()),
                ("basis", basis.into()),
            ]),
        ),
        text,
    })
}

type Decider =
    fn(&StratifiedLieAlgebra, usize, &SearchOptions) -> Result<Verdict, carnot_core::RectError>;

fn verdict_command(
    l: &Loaded,
    command: &str,
    d: &Degree,
    search: &Search,
    decide: Decider,
) -> Result<Answer, Failure> {
    l.require_valid()?;
    let alg = &l.alg;
    let opts = SearchOptions {
        height_bound: search.height_bound,
        ..SearchOptions::default()
    };
    let v = decide(alg, d.degree, &opts).map_err(|e| Failure::Data(e.to_string()))?;
    let mut report = l.report(
        command,
        vec![
            ("degree", d.degree.into()),
            ("height_bound", search.height_bound.into()),
        ],
        report::verdict(alg, &v),
    );
    report.certificates = v
        .certificate
        .as_ref()
        .map(|c| vec![report::certificate(alg, c)]);
    let mut text = vec![l.header()];
    text.extend(report::verdict_text(alg, &v));
    Ok(Answer {
        code: match v.status {
            Status::Yes => EXIT_YES,
            Status::No => EXIT_NO,
            Status::Unknown => EXIT_UNKNOWN,
        },
        report,
        text,
    })
}

fn catalog_command(
    name: Option<String>,
    param: Option<usize>,
    emit_spec: bool,
    format: Format,
) -> Result<Outcome, Failure> {
    let Some(name) = name else {
        if emit_spec {
            return Err(Failure::Usage("--emit-spec needs a catalog name".into()));
        }
        let names: Vec<Value> = catalog::NAMES.iter().map(|&n| n.into()).collect();
        let report = Report {
            command: "catalog".into(),
            algebra_name: String::new(),
            inputs: object([]),
            result: object([("names", names.into())]),
            certificates: None,
        };
        let mut text = catalog::NAMES.join("\n");
        text.push('\n');
        return Ok(Outcome {
            code: EXIT_YES,
            stdout: match format {
                Format::Json => report.to_json(),
                Format::Text => text,
            },
            stderr: String::new(),
        });
    };
    let spec = match param {
        Some(p) => format!("{name}:{p}"),
        None => name,
    };
    let alg = catalog::by_name(&spec).map_err(|e| Failure::Data(e.to_string()))?;
    if emit_spec {
        let mut doc = AlgebraSpecDocument::from_algebra(&alg).to_json();
        doc.push('\n');
        return Ok(Outcome {
            code: EXIT_YES,
            stdout: doc,
            stderr: String::new(),
        });
    }
    let loaded = Loaded { alg, source: spec };
    Ok(info(&loaded, "catalog").render(format))
}
