//! Convergence sweeps and tables built from the other modules.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::fmt_f64;
use crate::polygon::Polygon;
use crate::smooth::{
    inscribe_equilateral, rescale_unit, smooth_thickness_detail, w1inf_distance, ArcLengthCurve,
    CurvePreset, ProxyDetail,
};
use crate::thickness::{delta_n, Binding};

pub const DEFAULT_PROXY_SAMPLES: usize = 8192;

/// `2n tan(π/n)`, the inverse thickness of the regular `n`-gon of length 1.
pub fn regular_inverse_thickness(n: usize) -> f64 {
    2.0 * n as f64 * (PI / n as f64).tan()
}

/// One row of a convergence sweep. Numeric fields are NaN when the row
/// failed; `failure` then says why.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaRow {
    pub n: usize,
    /// Length of the inscribed polygon before rescaling.
    pub length_unscaled: f64,
    pub inv_delta_n: f64,
    pub min_rad: f64,
    pub max_curv: f64,
    pub dcsd: f64,
    pub scsd: f64,
    pub binding: Option<Binding>,
    pub position_sup: f64,
    pub derivative_sup: f64,
    pub proxy_inv: f64,
    pub failure: Option<String>,
}

impl GammaRow {
    fn failed(n: usize, proxy_inv: f64, reason: String) -> GammaRow {
        GammaRow {
            n,
            length_unscaled: f64::NAN,
            inv_delta_n: f64::NAN,
            min_rad: f64::NAN,
            max_curv: f64::NAN,
            dcsd: f64::NAN,
            scsd: f64::NAN,
            binding: None,
            position_sup: f64::NAN,
            derivative_sup: f64::NAN,
            proxy_inv,
            failure: Some(reason),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaSeries {
    pub curve: String,
    pub m_proxy: usize,
    pub proxy: ProxyDetail,
    pub rows: Vec<GammaRow>,
}

impl GammaSeries {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "n,length_unscaled,inv_delta_n,min_rad,max_curv,dcsd,scsd,binding,\
             position_sup,derivative_sup,proxy_inv,failure\n",
        );
        for r in &self.rows {
            let binding = match r.binding {
                Some(Binding::Curvature) => "curvature",
                Some(Binding::Distance) => "distance",
                None => "",
            };
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                r.n,
                fmt_f64(r.length_unscaled),
                fmt_f64(r.inv_delta_n),
                fmt_f64(r.min_rad),
                fmt_f64(r.max_curv),
                fmt_f64(r.dcsd),
                fmt_f64(r.scsd),
                binding,
                fmt_f64(r.position_sup),
                fmt_f64(r.derivative_sup),
                fmt_f64(r.proxy_inv),
                r.failure.as_deref().unwrap_or("").replace(',', ";"),
            )
            .unwrap();
        }
        s
    }
}

/// Inscribes, rescales and measures one equilateral polygon per `n`, with
/// the smooth proxy at `m_proxy` samples as reference. Rows are independent
/// and come back sorted by `n`; an infeasible `n` yields a failed row.
pub fn gamma_series(curve: &CurvePreset, ns: &[usize], m_proxy: usize) -> Result<GammaSeries> {
    let g = curve.curve(m_proxy.max(4096))?;
    let mut series = gamma_series_on(&g, ns, m_proxy)?;
    series.curve = curve.to_string();
    Ok(series)
}

/// [`gamma_series`] on an already reparametrized curve.
pub fn gamma_series_on(g: &ArcLengthCurve, ns: &[usize], m_proxy: usize) -> Result<GammaSeries> {
    let proxy = smooth_thickness_detail(g, m_proxy)?;
    let proxy_inv = 1.0 / proxy.delta;
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let rows = crate::par::map_indexed(ns.len(), |k| {
        let n = ns[k];
        match inscribe_equilateral(g, n) {
            Ok(ins) => {
                let p = rescale_unit(&ins.polygon);
                let r = delta_n(&p);
                let w = w1inf_distance(&p, g, 10 * n);
                GammaRow {
                    n,
                    length_unscaled: ins.length,
                    inv_delta_n: r.inv_delta_n,
                    min_rad: r.min_rad,
                    max_curv: r.max_curv,
                    dcsd: r.dcsd,
                    scsd: r.scsd,
                    binding: Some(r.binding),
                    position_sup: w.position,
                    derivative_sup: w.derivative,
                    proxy_inv,
                    failure: (!r.simple).then(|| "inscribed polygon is not simple".into()),
                }
            }
            Err(e) => GammaRow::failed(n, proxy_inv, e.to_string()),
        }
    });
    Ok(GammaSeries {
        curve: "custom".into(),
        m_proxy,
        proxy,
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NgonRow {
    pub n: usize,
    pub measured: f64,
    pub formula: f64,
    pub difference: f64,
}

/// Inverse thickness of the regular `n`-gons measured by the full pipeline
/// next to `2n tan(π/n)`.
pub fn ngon_table(n_min: usize, n_max: usize) -> Result<Vec<NgonRow>> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::Precondition(format!(
            "need 3 ≤ n_min ≤ n_max, got {n_min}..{n_max}"
        )));
    }
    let ns: Vec<usize> = (n_min..=n_max).collect();
    crate::par::map_indexed(ns.len(), |k| {
        let n = ns[k];
        let measured = delta_n(&Polygon::regular(n)?).inv_delta_n;
        let formula = regular_inverse_thickness(n);
        Ok(NgonRow {
            n,
            measured,
            formula,
            difference: (measured - formula).abs(),
        })
    })
    .into_iter()
    .collect()
}

pub fn ngon_csv(rows: &[NgonRow]) -> String {
    let mut s = String::from("n,measured,formula,difference\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{}",
            r.n,
            fmt_f64(r.measured),
            fmt_f64(r.formula),
            fmt_f64(r.difference)
        )
        .unwrap();
    }
    s
}
