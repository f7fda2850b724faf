//! File formats: HOP-JSON matrices and states, CSV tables, and JSON
//! summaries of analysis results.
//!
//! HOP-JSON stores a complex matrix as `{"dim": d, "re": [[…]], "im": [[…]]}`
//! (row-major) and a state as `{"dim": d, "re": […], "im": […]}`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{DistanceMatrix, Embedding, MIGraph};
use crate::locality::{LocalityProfile, OperatorExpansion};
use crate::mereology::MereologyReport;
use crate::quantum::{HermitianOperator, StateVector};
use crate::scalar::{CMatrix, CVector, C};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix<f64>) -> Self {
        let rows = |f: fn(&C<f64>) -> f64| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect();
        Self {
            dim: m.nrows(),
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix<f64>> {
        let d = self.dim;
        if d == 0 {
            return Err(Error::Format("matrix dimension must be positive".into()));
        }
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == d && rows.iter().all(|r| r.len() == d);
        if !shape_ok(&self.re) || !shape_ok(&self.im) {
            return Err(Error::Format(format!("\"re\" and \"im\" must both be {d}×{d}")));
        }
        Ok(CMatrix::from_fn(d, d, |i, j| C::new(self.re[i][j], self.im[i][j])))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl StateJson {
    pub fn from_vector(v: &CVector<f64>) -> Self {
        Self {
            dim: v.len(),
            re: v.iter().map(|z| z.re).collect(),
            im: v.iter().map(|z| z.im).collect(),
        }
    }

    pub fn to_vector(&self) -> Result<CVector<f64>> {
        if self.dim == 0 || self.re.len() != self.dim || self.im.len() != self.dim {
            return Err(Error::Format(format!("\"re\" and \"im\" must both have length {}", self.dim)));
        }
        Ok(CVector::from_fn(self.dim, |i, _| C::new(self.re[i], self.im[i])))
    }
}

pub fn parse_matrix(text: &str) -> Result<CMatrix<f64>> {
    serde_json::from_str::<MatrixJson>(text)?.to_matrix()
}

/// Parses a HOP-JSON Hamiltonian, rejecting non-Hermitian input.
pub fn parse_hamiltonian(text: &str) -> Result<HermitianOperator<f64>> {
    HermitianOperator::new(parse_matrix(text)?)
}

/// Parses a HOP-JSON state, rejecting non-normalized input.
pub fn parse_state(text: &str) -> Result<StateVector<f64>> {
    StateVector::new(serde_json::from_str::<StateJson>(text)?.to_vector()?)
}

pub fn matrix_to_json(m: &CMatrix<f64>) -> String {
    to_pretty(&MatrixJson::from_matrix(m))
}

pub fn state_to_json(psi: &StateVector<f64>) -> String {
    to_pretty(&StateJson::from_vector(psi.amplitudes()))
}

pub fn to_pretty<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

fn csv_string(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV of ASCII fields"))
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

/// `order,weight` rows.
pub fn profile_csv(p: &LocalityProfile<f64>) -> Result<String> {
    csv_string(
        &["order".into(), "weight".into()],
        p.weight_by_order.iter().enumerate().map(|(k, &w)| vec![k.to_string(), num(w)]),
    )
}

/// One row per coefficient with `|c| > threshold`: the multi-index as
/// space-separated labels, then the coefficient.
pub fn expansion_csv(e: &OperatorExpansion<f64>, threshold: f64) -> Result<String> {
    csv_string(
        &["multi_index".into(), "coefficient".into()],
        e.iter().filter(|(_, c)| c.abs() > threshold).map(|(idx, c)| {
            let labels: Vec<String> = idx.iter().map(usize::to_string).collect();
            vec![labels.join(" "), num(c)]
        }),
    )
}

/// Square matrix with a `region` column followed by one column per region.
pub fn square_csv(m: &DMatrix<f64>) -> Result<String> {
    let n = m.nrows();
    let header = std::iter::once("region".to_string()).chain((0..n).map(|j| j.to_string())).collect::<Vec<_>>();
    csv_string(&header, (0..n).map(|i| std::iter::once(i.to_string()).chain((0..n).map(|j| num(m[(i, j)]))).collect()))
}

pub fn mi_graph_csv(g: &MIGraph<f64>) -> Result<String> {
    square_csv(g.values())
}

pub fn distance_csv(d: &DistanceMatrix<f64>) -> Result<String> {
    square_csv(d.values())
}

/// `region,x,y,…` rows; columns beyond the third axis are named `x3`, `x4`, ….
pub fn embedding_csv(e: &Embedding<f64>) -> Result<String> {
    let axes = ["x", "y", "z"];
    let header = std::iter::once("region".to_string())
        .chain((0..e.dimension()).map(|k| axes.get(k).map_or_else(|| format!("x{k}"), |s| s.to_string())))
        .collect::<Vec<_>>();
    csv_string(
        &header,
        (0..e.n_points()).map(|i| std::iter::once(i.to_string()).chain((0..e.dimension()).map(|k| num(e.coordinates[(i, k)]))).collect()),
    )
}

pub fn embedding_json(e: &Embedding<f64>) -> Value {
    json!({
        "n_points": e.n_points(),
        "dimension": e.dimension(),
        "estimated_dimension": e.estimated_dimension,
        "gram_eigenvalues": e.gram_eigenvalues,
        "negative_eigenvalues": e.negative_eigenvalues().collect::<Vec<_>>(),
        "stress": e.stress,
    })
}

pub fn mereology_json(r: &MereologyReport<f64>) -> Value {
    json!({
        "split": {
            "d_s": r.split.d_s(),
            "d_e": r.split.d_e(),
            "frame": MatrixJson::from_matrix(r.split.frame()),
        },
        "pointer": {
            "vectors": MatrixJson::from_matrix(r.pointer.vectors()),
            "defect": r.pointer.defect(),
            "cost": r.pointer.cost(),
        },
        "entanglement_rate": r.entanglement_rate,
        "delocalization_rate": r.delocalization_rate,
        "objective": r.objective,
        "interaction_dominance": r.interaction_dominance,
        "search_trace": r.search_trace,
    })
}
