use std::fs;
use std::path::Path;

use dashu_int::IBig;
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};
use symquandle::homology::{
    cycle_c, cycle_gamma, homology, is_pm_monic, is_symmetric_cocycle, phi, phi_double_prime,
    phi_prime, pi_forget, small_support_null_scan, triple_point_bound, values_bounded, Chain,
    ChainFile, Cochain, Flavor, ResourceGuard, RhoRange, ScanMode, SymmetricComplex,
    TriplePointRecord, XSetAction, DEFAULT_SEED,
};
use symquandle::knot::{coloring_count, enumerate_colorings, GaussCode};
use symquandle::quandle::{enumerate_good_involutions, QuandleFile};
use symquandle::{
    build_tilde_r, FiniteQuandle, GoodInvolution, SignedDihedralGroup, SignedPermutation,
};

use crate::output::{csv_field, CliError, CommandResult};
use crate::{
    BoundArgs, ChainArgs, ChainName, Cli, CocycleArgs, CocycleName, ColorArgs, Command, Family,
    GroupArgs, HomologyArgs, QuandleArgs, ScanArgs, ScanModeArg,
};

type Outcome = Result<CommandResult, CliError>;

pub fn run(cli: &Cli) -> Outcome {
    let limits = Limits {
        max_elements: cli.max_elements,
        max_matrix_cells: cli.max_matrix_cells,
    };
    match &cli.command {
        Command::Group(a) => group(a, &limits),
        Command::Quandle(a) => quandle(a, &limits),
        Command::Homology(a) => homology_cmd(a, &limits),
        Command::Cocycle(a) => cocycle(a),
        Command::Scan(a) => scan(a, &limits),
        Command::Color(a) => color(a, &limits),
        Command::Bound(a) => bound(a),
        Command::Chain(a) => chain(a),
    }
}

struct Limits {
    max_elements: usize,
    max_matrix_cells: usize,
}

impl Limits {
    fn guard(&self) -> ResourceGuard {
        ResourceGuard {
            max_matrix_cells: self.max_matrix_cells,
            ..ResourceGuard::default()
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{} is not valid: {e}", path.display())))
}

fn big(v: &IBig) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn group_size_check(n: usize, limits: &Limits) -> Result<(), CliError> {
    let m = 2 * n + 1;
    if m >= 64 || ((m as u128) << m) > limits.max_elements as u128 {
        return Err(symquandle::Error::ResourceGuard(format!(
            "G_{m} has {m}·2^{m} elements, above --max-elements {}",
            limits.max_elements
        ))
        .into());
    }
    Ok(())
}

/// `tilde:N`, `dihedral:M`, `trivial:K` or `file:PATH`, with the
/// involution that comes with it.
fn load_quandle(
    spec: &str,
    limits: &Limits,
) -> Result<(FiniteQuandle, Option<GoodInvolution>), CliError> {
    let (kind, arg) = spec.split_once(':').ok_or_else(|| {
        CliError::Usage(format!(
            "quandle spec {spec:?} should look like tilde:1 or file:PATH"
        ))
    })?;
    let number = || {
        arg.parse::<usize>()
            .map_err(|_| CliError::Usage(format!("quandle spec {spec:?} needs a number after ':'")))
    };
    match kind {
        "tilde" => {
            let n = number()?;
            if n == 0 {
                return Err(symquandle::Error::InvalidInput("n must be at least 1".into()).into());
            }
            group_size_check(n, limits)?;
            let t = build_tilde_r(n)?;
            Ok((t.quandle, Some(t.rho)))
        }
        "dihedral" | "trivial" => {
            let m = number()?;
            if m > limits.max_elements {
                return Err(symquandle::Error::ResourceGuard(format!(
                    "order {m} is above --max-elements"
                ))
                .into());
            }
            let q = if kind == "dihedral" {
                FiniteQuandle::dihedral(m)?
            } else {
                FiniteQuandle::trivial(m)
            };
            // both families are involutory, so the identity is a good involution
            Ok((q, Some(GoodInvolution::identity(m))))
        }
        "file" => {
            let file: QuandleFile = read_json(Path::new(arg))?;
            Ok(FiniteQuandle::from_file(&file)?)
        }
        _ => Err(CliError::Usage(format!("unknown quandle family {kind:?}"))),
    }
}

fn complex_for(
    spec: &str,
    checkerboard: bool,
    limits: &Limits,
) -> Result<SymmetricComplex, CliError> {
    let (q, rho) = load_quandle(spec, limits)?;
    let action = checkerboard.then(|| XSetAction::checkerboard(&q));
    Ok(SymmetricComplex::new(q, rho, action)?)
}

fn group(a: &GroupArgs, limits: &Limits) -> Outcome {
    if a.n == 0 {
        return Err(symquandle::Error::InvalidInput("n must be at least 1".into()).into());
    }
    group_size_check(a.n, limits)?;
    let g = SignedDihedralGroup::build_bounded(a.n, Some(limits.max_elements))?;
    let mut out = Map::new();
    let mut summary = Vec::new();
    out.insert("n".into(), json!(a.n));
    let nothing = !(a.order || a.centralizer || a.cosets || a.normal_form.is_some());
    if a.order || nothing {
        out.insert("order".into(), json!(g.group().order()));
        summary.push(format!("|G_{}| = {}", g.degree(), g.group().order()));
    }
    if a.centralizer || a.cosets {
        let c = g.group().centralizer(g.a())?;
        if a.centralizer {
            let elements: Vec<String> = c
                .elements()
                .iter()
                .map(SignedPermutation::format_notation)
                .collect();
            summary.push(format!(
                "C(a) has order {}: {}",
                c.order(),
                elements.join(" ")
            ));
            out.insert(
                "centralizer".into(),
                json!({"order": c.order(), "elements": elements}),
            );
        }
        if a.cosets {
            let cosets = g.group().right_cosets(&c)?;
            let reps: Vec<String> = cosets
                .iter()
                .map(|k| k.representative.format_notation())
                .collect();
            summary.push(format!("{} right cosets of C(a)", cosets.len()));
            out.insert(
                "cosets".into(),
                json!({"count": cosets.len(), "representatives": reps}),
            );
        }
    }
    if let Some(text) = &a.normal_form {
        let x = SignedPermutation::parse_notation(text)?;
        let nf = g.normal_form(&x)?;
        let prefix = match nf.prefix {
            symquandle::Prefix::Identity => "",
            symquandle::Prefix::A => "a·",
        };
        let shown = format!(
            "{prefix}b^{}·{}",
            nf.exponent,
            nf.diagonal.format_notation()
        );
        summary.push(format!("{} = {shown}", x.format_notation()));
        out.insert(
            "normal_form".into(),
            json!({"prefix": nf.prefix, "exponent": nf.exponent, "diagonal": nf.diagonal.format_notation(), "text": shown}),
        );
    }
    Ok(CommandResult::new(Value::Object(out), summary.join("\n")))
}

fn cycles(rho: &GoodInvolution) -> String {
    let mut out = String::new();
    for x in 0..rho.len() {
        let y = rho.apply(x);
        if x < y {
            out.push_str(&format!("({x} {y})"));
        }
    }
    if out.is_empty() {
        "identity".into()
    } else {
        out
    }
}

fn quandle(a: &QuandleArgs, limits: &Limits) -> Outcome {
    let (q, rho) = match (&a.file, a.family) {
        (Some(path), _) => load_quandle(&format!("file:{}", path.display()), limits)?,
        (None, Some(family)) => {
            let n =
                a.n.ok_or_else(|| CliError::Usage("--family needs --n".into()))?;
            let kind = match family {
                Family::Dihedral => "dihedral",
                Family::Tilde => "tilde",
                Family::Trivial => "trivial",
            };
            load_quandle(&format!("{kind}:{n}"), limits)?
        }
        (None, None) => return Err(CliError::Usage("give --family with --n, or --file".into())),
    };
    let mut out = Map::new();
    let mut summary = Vec::new();
    out.insert("size".into(), json!(q.size()));
    let nothing = !(a.table || a.verify || a.connected || a.involutory || a.good_involutions);
    let mut csv = None;
    if a.table || nothing {
        out.insert("labels".into(), json!(q.labels()));
        out.insert("table".into(), json!(q.table()));
        if let Some(rho) = &rho {
            out.insert("rho".into(), json!(rho.as_slice()));
        }
        summary.push(q.to_csv());
        csv = Some(q.to_csv());
    }
    if a.verify {
        let report = q.verify_axioms();
        summary.push(format!(
            "axioms: {}",
            if report.is_ok() { "pass" } else { "fail" }
        ));
        out.insert(
            "axioms".into(),
            json!({
                "ok": report.is_ok(),
                "idempotency": report.idempotency,
                "right_invertibility": report.right_invertibility,
                "self_distributivity": report.self_distributivity,
            }),
        );
    }
    if a.connected {
        summary.push(format!("connected: {}", q.is_connected()));
        out.insert("connected".into(), json!(q.is_connected()));
    }
    if a.involutory {
        summary.push(format!("involutory: {}", q.is_involutory()));
        out.insert("involutory".into(), json!(q.is_involutory()));
    }
    if a.good_involutions {
        let all: Vec<String> = enumerate_good_involutions(&q, limits.max_elements)?
            .iter()
            .map(cycles)
            .collect();
        summary.push(format!("good involutions: {}", all.join(", ")));
        out.insert("good_involutions".into(), json!(all));
    }
    let result = CommandResult::new(Value::Object(out), summary.join("\n"));
    Ok(match csv {
        Some(c) if nothing || a.table => result.with_csv(c),
        _ => result,
    })
}

fn read_chain(path: &Path, complex: Option<&SymmetricComplex>) -> Result<Chain, CliError> {
    let file: ChainFile = read_json(path)?;
    let labels = complex
        .and_then(|c| c.action())
        .map(|a| a.labels().to_vec());
    let default_labels = ["α".to_string(), "β".to_string()];
    let has_y = file.terms.iter().any(|t| t.y.is_some());
    let labels: Option<&[String]> = match (&labels, has_y) {
        (Some(l), _) => Some(l),
        (None, true) => Some(&default_labels),
        (None, false) => None,
    };
    Ok(Chain::from_file(&file, labels)?)
}

fn homology_cmd(a: &HomologyArgs, limits: &Limits) -> Outcome {
    let flavor: Flavor = a
        .flavor
        .parse()
        .map_err(|e: symquandle::Error| CliError::Usage(e.to_string()))?;
    let mut complex = complex_for(&a.quandle, a.checkerboard, limits)?;
    if a.restricted_rho {
        complex = complex.with_rho_range(RhoRange::Restricted);
    }
    let result = homology(&complex, flavor, a.degree, &limits.guard())?;
    let mut payload = serde_json::to_value(&result.group).expect("plain data");
    let mut summary = format!("H_{}^{flavor} = {}", a.degree, result.group);
    if let Some(path) = &a.class {
        let z = read_chain(path, Some(&complex))?;
        let class = result.class_of(&z)?;
        let free: Vec<Value> = class.free.iter().map(big).collect();
        let torsion: Vec<Value> = class
            .torsion
            .iter()
            .map(|(r, d)| json!([big(r), big(d)]))
            .collect();
        summary.push_str(&format!("\nclass: free {free:?}, torsion {torsion:?}"));
        payload["class"] = json!({"free": free, "torsion": torsion, "zero": class.is_zero()});
    }
    Ok(CommandResult::new(payload, summary))
}

fn named_cocycle(name: CocycleName) -> (&'static str, Cochain) {
    match name {
        CocycleName::Phi => ("phi", phi()),
        CocycleName::PhiPrime => ("phi_prime", phi_prime()),
        CocycleName::PhiPp => ("phi_pp", phi_double_prime()),
    }
}

fn cocycle(a: &CocycleArgs) -> Outcome {
    let (name, theta) = named_cocycle(a.name);
    let t = build_tilde_r(1)?;
    let mut out = Map::new();
    let mut summary = vec![format!("{name} on R̃_3")];
    out.insert("name".into(), json!(name));
    let nothing = !(a.check || a.monic || a.eval.is_some());
    if let Some(path) = &a.eval {
        let z = read_chain(path, None)?;
        let forgot = z.with_y();
        let z = if forgot { pi_forget(&z) } else { z };
        let value = theta.evaluate(&z)?;
        summary.push(format!("value: {value}"));
        out.insert("value".into(), json!(value));
        if forgot {
            out.insert("forgot_region_colors".into(), json!(true));
        }
    }
    if a.check || nothing {
        let complex = SymmetricComplex::new(t.quandle.clone(), Some(t.rho.clone()), None)?;
        let ok = is_symmetric_cocycle(&complex, &theta, Flavor::QRho)?;
        summary.push(format!("Qrho cocycle: {ok}"));
        out.insert("cocycle".into(), json!(ok));
    }
    if a.monic || nothing {
        let monic = is_pm_monic(&theta, &t.quandle, &t.rho)?;
        let bounded = values_bounded(&theta);
        summary.push(format!("±monic: {monic}, values in {{0,±1}}: {bounded}"));
        out.insert("monic".into(), json!(monic));
        out.insert("bounded".into(), json!(bounded));
    }
    Ok(CommandResult::new(Value::Object(out), summary.join("\n")))
}

fn scan(a: &ScanArgs, limits: &Limits) -> Outcome {
    let complex = complex_for(&a.quandle, a.checkerboard, limits)?;
    let mode = match a.mode {
        ScanModeArg::Exhaustive => ScanMode::Exhaustive {
            max_support: a.max_support,
        },
        ScanModeArg::Random => ScanMode::Random {
            seed: a.seed.unwrap_or(DEFAULT_SEED),
            trials: a.trials,
            min_size: a.min_support,
            max_size: a.max_support,
        },
    };
    let report = small_support_null_scan(&complex, a.degree, &mode, &limits.guard())?;
    let summary = format!(
        "{} scan, degree {}, quotient rank {}: {} supports, {} kernel vectors, {} counterexamples",
        report.mode,
        report.degree,
        report.quotient_rank,
        report.supports_checked,
        report.kernel_vectors_checked,
        report.counterexample_count
    );
    Ok(CommandResult::new(
        serde_json::to_value(&report).expect("plain data"),
        summary,
    ))
}

fn color(a: &ColorArgs, limits: &Limits) -> Outcome {
    let (q, _) = load_quandle(&a.quandle, limits)?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    let mut csv = String::from("code,quandle,total,nontrivial\n");
    for text in &a.gauss {
        let code = GaussCode::parse(text)?;
        let count = coloring_count(&q, &a.quandle, &code)?;
        csv.push_str(&format!(
            "{},{},{},{}\n",
            csv_field(&count.code),
            csv_field(&count.quandle),
            count.total,
            count.nontrivial
        ));
        summary.push(if a.nontrivial {
            format!("{}", count.nontrivial)
        } else {
            format!(
                "{} over {}: {} colorings, {} nontrivial",
                count.code, count.quandle, count.total, count.nontrivial
            )
        });
        let mut row = serde_json::to_value(&count).expect("plain data");
        if a.list {
            let all: Vec<Vec<usize>> = enumerate_colorings(&q, &code)?
                .into_iter()
                .map(|c| c.0)
                .collect();
            row["colorings"] = json!(all);
        }
        rows.push(row);
    }
    let payload = if rows.len() == 1 {
        rows.pop().expect("one row")
    } else {
        json!({ "results": rows })
    };
    Ok(CommandResult::new(payload, summary.join("\n")).with_csv(csv))
}

fn bound(a: &BoundArgs) -> Outcome {
    let records: Vec<TriplePointRecord> = read_json(&a.records)?;
    let (name, theta) = named_cocycle(a.cocycle);
    let t = build_tilde_r(1)?;
    let action = records
        .iter()
        .any(|r| r.y.is_some())
        .then(|| XSetAction::checkerboard(&t.quandle));
    let complex = SymmetricComplex::new(t.quandle, Some(t.rho), action)?;
    let b = triple_point_bound(&complex, &records, &theta)?;
    Ok(CommandResult::new(
        json!({"bound": b, "cocycle": name, "triple_points": records.len()}),
        format!("t(F) ≥ {b}"),
    ))
}

fn chain(a: &ChainArgs) -> Outcome {
    let base = match a.name {
        ChainName::C => cycle_c(),
        ChainName::Gamma => cycle_gamma(),
    };
    let mut z = base.scaled(a.times);
    if a.forget_y {
        z = pi_forget(&z);
    }
    let labels = ["α".to_string(), "β".to_string()];
    let labels = z.with_y().then_some(&labels[..]);
    if a.records {
        let mut records = Vec::new();
        for (cell, k) in z.terms() {
            for _ in 0..k.unsigned_abs() {
                records.push(TriplePointRecord {
                    sign: k.signum(),
                    y: cell.y.map(|y| labels.expect("labels with y")[y].clone()),
                    x: [cell.x[0], cell.x[1], cell.x[2]],
                });
            }
        }
        let summary = format!("{} triple points", records.len());
        return Ok(CommandResult::new(
            serde_json::to_value(&records).expect("plain data"),
            summary,
        ));
    }
    let file = z.to_file(labels);
    Ok(CommandResult::new(
        serde_json::to_value(&file).expect("plain data"),
        z.to_string(),
    ))
}
