//! Reading and writing manifold definitions (TOML).
//!
//! ```toml
//! name = "hopf:1"
//! dim = 4
//! coords = ["eta", "xi1", "xi2", "t"]
//! type = [1, 0]
//! metric = [["1", "0", "0", "0"], ["cos(eta)^2", "0", "0"], ["sin(eta)^2", "0"], ["1"]]
//! alpha1 = ["0", "cos(eta)^2", "sin(eta)^2", "0"]
//! alpha2 = ["0", "0", "0", "1"]
//! Z1 = ["0", "1", "1", "0"]
//! Z2 = ["0", "0", "0", "1"]
//! sample_points = [[0.5, 0.1, 0.2, 0.0]]
//!
//! [params]
//! ```
//!
//! `metric` lists the upper triangle row by row.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::contact::ContactPairManifold;
use crate::error::{Error, Result};
use crate::riemann::{Chart, MetricField, OneFormExpr, VectorFieldExpr};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub coords: Vec<String>,
    #[serde(rename = "type")]
    pub pair_type: [usize; 2],
    pub metric: Vec<Vec<String>>,
    pub alpha1: Vec<String>,
    pub alpha2: Vec<String>,
    #[serde(rename = "Z1")]
    pub z1: Vec<String>,
    #[serde(rename = "Z2")]
    pub z2: Vec<String>,
    pub sample_points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub singular_loci: Vec<String>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl ManifoldFile {
    pub fn from_toml(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| Error::Definition(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifold file serializes")
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_toml())?;
        Ok(())
    }

    /// Parses and checks the definition. `fallback_id` names the manifold
    /// when the file has no `name`.
    pub fn build(&self, fallback_id: &str) -> Result<ContactPairManifold> {
        let d = self.dim;
        if self.coords.len() != d {
            return Err(Error::Definition(format!(
                "dim = {d} but {} coordinates",
                self.coords.len()
            )));
        }
        let mut chart = Chart::new(self.coords.iter().cloned())?;
        for (k, v) in &self.params {
            chart = chart.with_param(k.clone(), *v);
        }
        let chart = chart
            .with_sample_points(self.sample_points.clone())?
            .with_singular_loci(self.singular_loci.clone());
        if self.metric.len() != d {
            return Err(Error::Definition(format!(
                "metric has {} rows, expected {d}",
                self.metric.len()
            )));
        }
        let mut upper = Vec::with_capacity(d * (d + 1) / 2);
        for (i, row) in self.metric.iter().enumerate() {
            if row.len() != d - i {
                return Err(Error::Definition(format!(
                    "metric row {i} has {} entries, upper triangle needs {}",
                    row.len(),
                    d - i
                )));
            }
            for s in row {
                upper.push(chart.parse(s)?);
            }
        }
        let metric = MetricField::new(&chart, upper)?;
        let field = |v: &[String]| v.iter().map(|s| chart.parse(s)).collect::<Result<Vec<_>>>();
        let a1 = OneFormExpr(field(&self.alpha1)?);
        let a2 = OneFormExpr(field(&self.alpha2)?);
        let z1 = VectorFieldExpr(field(&self.z1)?);
        let z2 = VectorFieldExpr(field(&self.z2)?);
        let id = self.name.clone().unwrap_or_else(|| fallback_id.to_string());
        let [m, n] = self.pair_type;
        ContactPairManifold::new(id, chart.clone(), metric, a1, a2, z1, z2, (m, n))
    }

    pub fn from_manifold(cp: &ContactPairManifold) -> Self {
        let chart = cp.chart();
        let d = chart.dim();
        let show = |v: &[crate::expr::Expr]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>();
        let metric = (0..d)
            .map(|i| (i..d).map(|j| cp.metric().entry(i, j).to_string()).collect())
            .collect();
        let (m, n) = cp.pair_type();
        ManifoldFile {
            name: Some(cp.id().to_string()),
            dim: d,
            coords: chart.coords().to_vec(),
            pair_type: [m, n],
            metric,
            alpha1: show(&cp.alpha(0).0),
            alpha2: show(&cp.alpha(1).0),
            z1: show(&cp.reeb(0).0),
            z2: show(&cp.reeb(1).0),
            sample_points: chart.sample_points().to_vec(),
            singular_loci: chart.singular_loci().to_vec(),
            params: chart.params().clone(),
        }
    }
}

pub fn load(path: &Path) -> Result<ContactPairManifold> {
    ManifoldFile::read(path)?.build(&path.display().to_string())
}

pub fn save(cp: &ContactPairManifold, path: &Path) -> Result<()> {
    ManifoldFile::from_manifold(cp).write(path)
}
