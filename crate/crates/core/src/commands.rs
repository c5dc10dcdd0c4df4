//! Command implementations behind the `contact-curvature` binary. Each
//! returns its output and exit status so they can be driven in tests.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::value::RawValue;

use crate::bochner::bochner_pair_at;
use crate::catalog::{self, Expectations};
use crate::contact::{self, ContactPairManifold};
use crate::error::{Error, Result};
use crate::manifold_file;
use crate::report::num;
use crate::tensor::TensorValue;
use crate::verify::{self, Suite};

/// Components at or below this magnitude are not printed.
pub const DISPLAY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::Unsupported(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    Riemann,
    Ricci,
    StarRicci,
    Weyl,
    BochnerJ,
    BochnerT,
}

impl FromStr for TensorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "riemann" => TensorKind::Riemann,
            "ricci" => TensorKind::Ricci,
            "star-ricci" => TensorKind::StarRicci,
            "weyl" => TensorKind::Weyl,
            "bochner-j" => TensorKind::BochnerJ,
            "bochner-t" => TensorKind::BochnerT,
            _ => return Err(Error::Unsupported(format!("unknown tensor `{s}`"))),
        })
    }
}

/// Process exit code for a command outcome.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::StructureInvalid(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

/// A manifold from the catalog or from a definition file.
pub struct Target {
    pub manifold: ContactPairManifold,
    pub expectations: Option<Expectations>,
}

pub fn resolve(target: &str) -> Result<Target> {
    let path = Path::new(target);
    if target.ends_with(".manifold") || target.ends_with(".toml") || target.contains('/') || path.is_file() {
        return Ok(Target {
            manifold: manifold_file::load(path)?,
            expectations: None,
        });
    }
    let (manifold, expectations) = catalog::resolve(target)?;
    Ok(Target {
        manifold,
        expectations: Some(expectations),
    })
}

pub fn list(format: Format, filter: Option<&str>) -> Outcome {
    let entries: Vec<_> = catalog::entries()
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.label.contains(f) || e.address.contains(f)))
        .collect();
    let output = match format {
        Format::Json => serde_json::to_string_pretty(&entries).expect("entries serialize") + "\n",
        Format::Text => {
            let mut s = String::new();
            for e in &entries {
                let x = &e.expectations;
                let tau = x.scalar.map(|t| format!("τ={t}")).unwrap_or_else(|| "τ varies".into());
                let _ = writeln!(
                    s,
                    "{:<24} {:<20} d={} type=({},{}) {tau} τ−τ*={} {} {}",
                    e.label,
                    e.address,
                    e.dim,
                    x.pair_type.0,
                    x.pair_type.1,
                    x.scalar_gap,
                    if x.bochner_flat {
                        "bochner-flat"
                    } else {
                        "not-bochner-flat"
                    },
                    if x.conformally_flat {
                        "conformally-flat"
                    } else {
                        "not-conformally-flat"
                    },
                );
            }
            s
        }
    };
    Outcome { output, code: EXIT_OK }
}

fn finish(mut rep: crate::report::Report, tolerance: Option<f64>, format: Format) -> Outcome {
    if let Some(t) = tolerance {
        rep.loosen(t);
    }
    let code = if rep.all_passed() { EXIT_OK } else { EXIT_FAILED };
    let output = match format {
        Format::Json => rep.to_json() + "\n",
        Format::Text => rep.to_text(),
    };
    Outcome { output, code }
}

/// Definition checks, then (if they pass) the curvature identities.
pub fn check(target: &str, tolerance: Option<f64>, points: Option<usize>, format: Format) -> Result<Outcome> {
    let t = resolve(target)?;
    let cp = &t.manifold;
    let mut rep = contact::validate(cp, points)?;
    if rep.all_passed() {
        for p in cp.points(points) {
            rep.extend(contact::lemma_records(&cp.at(&p)?)?);
        }
    }
    Ok(finish(rep, tolerance, format))
}

pub fn verify(
    target: &str,
    suite: Suite,
    tolerance: Option<f64>,
    points: Option<usize>,
    format: Format,
) -> Result<Outcome> {
    let t = resolve(target)?;
    let rep = verify::run(&t.manifold, t.expectations.as_ref(), suite, points)?;
    Ok(finish(rep, tolerance, format))
}

pub fn export(target: &str, path: &Path) -> Result<Outcome> {
    let t = resolve(target)?;
    manifold_file::save(&t.manifold, path)?;
    Ok(Outcome {
        output: format!("wrote {} to {}\n", t.manifold.id(), path.display()),
        code: EXIT_OK,
    })
}

fn parse_point(cp: &ContactPairManifold, at: &str) -> Result<Vec<f64>> {
    if at == "default" {
        return cp
            .chart()
            .sample_points()
            .first()
            .cloned()
            .ok_or_else(|| Error::Definition("manifold has no sample points".into()));
    }
    let p = at
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Unsupported(format!("point `{at}` is not a comma-separated list of numbers")))?;
    if p.len() != cp.dim() {
        return Err(Error::Unsupported(format!(
            "point has {} coordinates, chart has {}",
            p.len(),
            cp.dim()
        )));
    }
    Ok(p)
}

#[derive(Serialize)]
struct Component {
    index: Vec<usize>,
    labels: Vec<String>,
    value: Box<RawValue>,
}

#[derive(Serialize)]
struct TensorDoc<'a> {
    manifold: &'a str,
    what: &'a str,
    point: Vec<Box<RawValue>>,
    variance: &'a [crate::tensor::Variance],
    coords: &'a [String],
    scalar: Box<RawValue>,
    star_scalar: Box<RawValue>,
    max_abs: Box<RawValue>,
    components: Vec<Component>,
}

pub fn tensor(target: &str, what: TensorKind, at: &str, format: Format) -> Result<Outcome> {
    let t = resolve(target)?;
    let cp = &t.manifold;
    let p = parse_point(cp, at)?;
    let pt = cp.at(&p)?;
    let (name, value): (&str, TensorValue) = match what {
        TensorKind::Riemann => ("riemann", pt.geometry.riemann.clone()),
        TensorKind::Ricci => ("ricci", pt.geometry.ricci.clone()),
        TensorKind::StarRicci => ("star-ricci", pt.star_ricci()?),
        TensorKind::Weyl => {
            if cp.dim() < 4 {
                return Err(Error::RegimeMismatch(format!(
                    "weyl needs d ≥ 4, chart has d = {}",
                    cp.dim()
                )));
            }
            ("weyl", pt.geometry.weyl()?)
        }
        TensorKind::BochnerJ => ("bochner-j", bochner_pair_at(&pt)?.0),
        TensorKind::BochnerT => ("bochner-t", bochner_pair_at(&pt)?.1),
    };
    let tau = pt.geometry.scalar;
    let tau_star = pt.star_scalar()?;
    let coords = cp.chart().coords();
    let nonzero = value.nonzero(DISPLAY_FLOOR);
    let output = match format {
        Format::Json => {
            let doc = TensorDoc {
                manifold: cp.id(),
                what: name,
                point: p.iter().copied().map(num).collect(),
                variance: value.variance(),
                coords,
                scalar: num(tau),
                star_scalar: num(tau_star),
                max_abs: num(value.max_abs()),
                components: nonzero
                    .iter()
                    .map(|(idx, v)| Component {
                        index: idx.clone(),
                        labels: idx.iter().map(|&i| coords[i].clone()).collect(),
                        value: num(*v),
                    })
                    .collect(),
            };
            serde_json::to_string_pretty(&doc).expect("tensor serializes") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{name} of {} at {:?}", cp.id(), p);
            for (idx, v) in &nonzero {
                let labels: Vec<&str> = idx.iter().map(|&i| coords[i].as_str()).collect();
                let _ = writeln!(s, "  [{}] = {v:.12e}", labels.join(","));
            }
            let _ = writeln!(s, "components above {DISPLAY_FLOOR:e}: {}", nonzero.len());
            let _ = writeln!(s, "max |component| = {:.6e}", value.max_abs());
            let _ = writeln!(s, "τ = {tau:.12}");
            let _ = writeln!(s, "τ* = {tau_star:.12}");
            s
        }
    };
    Ok(Outcome { output, code: EXIT_OK })
}
