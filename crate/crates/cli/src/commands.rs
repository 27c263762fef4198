use crate::cli::{Cli, Command, TransformArgs};
use crate::render::{Body, Tsv};
use gvbps_core::anomaly::{
    genus_series_n1, known_from, solve_anomaly, table_from_json, triple_product_check,
    verify_anomaly, ZFunction, ZTableJson,
};
use gvbps_core::goettsche::{
    bps_rational_elliptic, goettsche_series, refined_goettsche_res, BettiVector,
};
use gvbps_core::gvtransform::{
    gv_from_gw, gw_from_gv, roundtrip_check, BpsTable, GwTable, TableJson, TableMeta,
};
use gvbps_core::modular::eisenstein;
use gvbps_core::rational::{from_wire, to_wire};
use gvbps_core::{Error, LaurentPoly, QSeries};
use serde::de::DeserializeOwned;
use serde_json::json;
use std::fmt;
use std::path::{Path, PathBuf};

pub struct Outcome {
    pub body: Body,
    /// False when a verification produced a mismatch report.
    pub verified: bool,
}

impl Outcome {
    fn ok(body: Body) -> Self {
        Self {
            body,
            verified: true,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Json(PathBuf, serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                Error::NonIntegralBps { .. }
                | Error::MismatchAgainstProduct { .. }
                | Error::CrossCheck(_)
                | Error::InconsistentBoundary(_),
            ) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Json(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.to_owned(), e))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Eisenstein { weight, q_order } => {
            let s = eisenstein(*weight, *q_order)?;
            Ok(Outcome::ok(Body {
                json: serde_json::to_value(s.to_json()).expect("serializable"),
                tsv: s.to_tsv(),
            }))
        }
        Command::Goettsche {
            betti,
            gmax,
            refined,
        } => goettsche(betti.as_deref(), *gmax, *refined),
        Command::BpsRationalElliptic { gmax } => rational_elliptic(*gmax),
        Command::GvFromGw(args) => {
            let gw = GwTable::from_json(&read_json(&args.input)?)?;
            let (l, d) = orders(args, &gw.meta)?;
            Ok(Outcome::ok(table_body(&gv_from_gw(&gw, l, d)?.to_json())))
        }
        Command::GwFromGv(args) => {
            let bps = BpsTable::from_json(&read_json(&args.input)?)?;
            let (l, d) = orders(args, &bps.meta)?;
            Ok(Outcome::ok(table_body(&gw_from_gv(&bps, l, d)?.to_json())))
        }
        Command::RoundtripCheck(args) => roundtrip(args),
        Command::AnomalyVerify { table } => anomaly_verify(table),
        Command::AnomalySolve {
            n,
            g,
            table,
            boundary,
        } => anomaly_solve(*n, *g, table, boundary),
        Command::GenusSeries { gmax, q_order } => Ok(Outcome::ok(genus_series(*gmax, *q_order))),
        Command::TripleProductCheck {
            lambda_order,
            q_order,
        } => {
            let r = triple_product_check(*lambda_order, *q_order)?;
            let mut tsv = Tsv::new(&["lambda_order", "q_order", "pass", "first_difference"]);
            let diff = r
                .first_difference
                .map_or_else(|| "-".to_string(), |(l, q)| format!("lambda^{l} q^{q}"));
            tsv.row(&[
                lambda_order.to_string(),
                q_order.to_string(),
                r.passed().to_string(),
                diff,
            ]);
            Ok(Outcome {
                verified: r.passed(),
                body: Body {
                    json: r.to_json(),
                    tsv: tsv.finish(),
                },
            })
        }
    }
}

/// Explicit flags are taken as given; omitted ones are the documented
/// defaults clipped to the input window.
fn orders(args: &TransformArgs, meta: &TableMeta) -> Result<(i64, u64)> {
    let lambda = args
        .lambda_order
        .unwrap_or_else(|| 12.min(2 * meta.max_genus as i64 - 2));
    let degree = args.degree.unwrap_or_else(|| 6.min(meta.max_degree));
    Ok((lambda, degree))
}

fn table_body(json: &TableJson) -> Body {
    let mut tsv = Tsv::new(&["genus", "class", "value"]);
    for e in &json.entries {
        let class: Vec<String> = e.class.iter().map(u64::to_string).collect();
        tsv.row(&[e.genus.to_string(), class.join(","), e.value.clone()]);
    }
    Body {
        json: serde_json::to_value(json).expect("serializable"),
        tsv: tsv.finish(),
    }
}

fn laurent_series_body<const N: usize>(series: &QSeries<LaurentPoly<N>>, refined: bool) -> Body {
    let exp_cols: &[&str] = if N == 1 {
        &["exp"]
    } else {
        &["exp_l", "exp_r"]
    };
    let mut header = vec!["power"];
    header.extend_from_slice(exp_cols);
    header.push("coefficient");
    let mut tsv = Tsv::new(&header);
    for (g, p) in series.coeffs().iter().enumerate() {
        for (e, c) in p.terms() {
            let mut row = vec![g.to_string()];
            row.extend(e.iter().map(i64::to_string));
            row.push(to_wire(c));
            tsv.row(&row);
        }
    }
    let coeffs: Vec<_> = series.coeffs().iter().map(LaurentPoly::to_json).collect();
    Body {
        json: json!({"var": "q", "order": series.order(), "refined": refined, "coeffs": coeffs}),
        tsv: tsv.finish(),
    }
}

fn goettsche(betti: Option<&str>, gmax: usize, refined: bool) -> Result<Outcome> {
    let b = betti.map(str::parse::<BettiVector>).transpose()?;
    if refined {
        if b.is_some_and(|b| b != BettiVector::rational_elliptic()) {
            return Err(Error::InvalidInput(
                "--refined is only available for the rational elliptic surface, b = 1,0,10,0,1"
                    .into(),
            )
            .into());
        }
        return Ok(Outcome::ok(laurent_series_body(
            &refined_goettsche_res(gmax),
            true,
        )));
    }
    let b = b.expect("clap requires --betti without --refined");
    Ok(Outcome::ok(laurent_series_body(
        &goettsche_series(&b, gmax),
        false,
    )))
}

fn rational_elliptic(gmax: usize) -> Result<Outcome> {
    let table = bps_rational_elliptic(gmax)?;
    let mut tsv = Tsv::new(&["g", "h", "n"]);
    let mut entries = Vec::new();
    for ((g, h), n) in &table {
        tsv.row(&[g.to_string(), h.to_string(), n.to_string()]);
        entries.push(json!({"g": g, "h": h, "n": n.to_string()}));
    }
    Ok(Outcome::ok(Body {
        json: json!({
            "gmax": gmax,
            "convention": "n_h read off u^{-1} sum_h n_h u^h with u = (2 sin(lambda/2))^2",
            "entries": entries,
        }),
        tsv: tsv.finish(),
    }))
}

fn roundtrip(args: &TransformArgs) -> Result<Outcome> {
    let bps = BpsTable::from_json(&read_json(&args.input)?)?;
    let (l, d) = orders(args, &bps.meta)?;
    let report = roundtrip_check(&bps, l, d)?;
    let mut tsv = Tsv::new(&["genus", "class", "expected", "got"]);
    let mut diffs = Vec::new();
    for diff in &report.diffs {
        let class: Vec<String> = diff.class.0.iter().map(u64::to_string).collect();
        tsv.row(&[
            diff.genus.to_string(),
            class.join(","),
            diff.expected.to_string(),
            diff.got.to_string(),
        ]);
        diffs.push(json!({
            "genus": diff.genus,
            "class": diff.class.0,
            "expected": diff.expected.to_string(),
            "got": diff.got.to_string(),
        }));
    }
    Ok(Outcome {
        verified: report.passed(),
        body: Body {
            json: json!({
                "lambda_order": l,
                "degree_order": d,
                "pass": report.passed(),
                "diffs": diffs,
            }),
            tsv: tsv.finish(),
        },
    })
}

fn load_z_table(path: &Path) -> Result<Vec<ZFunction>> {
    let json: ZTableJson = read_json(path)?;
    Ok(table_from_json(&json)?)
}

fn anomaly_verify(path: &Path) -> Result<Outcome> {
    let table = load_z_table(path)?;
    let report = verify_anomaly(&table);
    let mut tsv = Tsv::new(&["n", "g", "literal", "normalized", "entry_scale"]);
    for (i, e) in report.literal.iter().enumerate() {
        let normalized = report
            .normalized
            .get(i)
            .map_or("-".to_string(), |r| status(r.passed()).to_string());
        let scale = report
            .entry_scales
            .iter()
            .find(|((n, g), _)| (*n, *g) == (e.n, e.g))
            .and_then(|(_, s)| s.as_ref())
            .map_or("-".to_string(), to_wire);
        tsv.row(&[
            e.n.to_string(),
            e.g.to_string(),
            status(e.passed()).to_string(),
            normalized,
            scale,
        ]);
    }
    Ok(Outcome {
        verified: report.all_pass(),
        body: Body {
            json: report.to_json(),
            tsv: tsv.finish(),
        },
    })
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn anomaly_solve(n: usize, g: usize, path: &Path, boundary: &[String]) -> Result<Outcome> {
    let table = load_z_table(path)?;
    let boundary = boundary
        .iter()
        .map(|s| from_wire(s.trim()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let poly = solve_anomaly(n, g, &known_from(&table), &boundary)?;
    let mut tsv = Tsv::new(&["e2", "e4", "e6", "coeff"]);
    for (&(a, b, c), coeff) in poly.terms() {
        tsv.row(&[a.to_string(), b.to_string(), c.to_string(), to_wire(coeff)]);
    }
    Ok(Outcome::ok(Body {
        json: serde_json::to_value(poly.to_json()).expect("serializable"),
        tsv: tsv.finish(),
    }))
}

fn genus_series(gmax: usize, q_order: usize) -> Body {
    let series = genus_series_n1(gmax, q_order);
    let mut tsv = Tsv::new(&["g", "power", "coefficient"]);
    let mut out = Vec::new();
    for (g, s) in series.iter().enumerate() {
        let coeffs: Vec<String> = s.coeffs().iter().map(to_wire).collect();
        for (i, c) in coeffs.iter().enumerate() {
            tsv.row(&[g.to_string(), i.to_string(), c.clone()]);
        }
        out.push(json!({"g": g, "coeffs": coeffs}));
    }
    Body {
        json: json!({"q_order": q_order, "series": out}),
        tsv: tsv.finish(),
    }
}
