use std::fmt::Write as _;

use clap::ValueEnum;
use curvlab_core::algebra::JacobiResidual;
use curvlab_core::curvature::{chern_curvature, constant_h_detect, levi_civita_koszul, predicates, HVerdict};
use curvlab_core::families::ConstraintResidual;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::instance::{InstanceFile, Loaded};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connection {
    Chern,
    Lc,
    Both,
}

impl Connection {
    fn chern(self) -> bool {
        matches!(self, Connection::Chern | Connection::Both)
    }

    fn lc(self) -> bool {
        matches!(self, Connection::Lc | Connection::Both)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    /// SHA-256 of the embedded instance's JSON text.
    pub digest: String,
    pub format: String,
    pub n: usize,
    pub tol: f64,
    pub jacobi: JacobiResidual,
    pub constraints: Option<ConstraintResidual>,
    pub unimodular: bool,
    /// `tr ad_x` over the orthonormal real basis.
    pub ad_traces: Vec<f64>,
    pub kahler: bool,
    pub chern_flat: bool,
    pub lc_flat: bool,
    pub torsion_norm: f64,
    pub chern_norm: f64,
    pub lc_norm: f64,
    pub chern: Option<HVerdict>,
    pub lc: Option<HVerdict>,
    pub instance: InstanceFile,
}

impl ClassificationReport {
    pub fn build(file: &InstanceFile, loaded: &Loaded, tol: f64, connection: Connection) -> Self {
        let alg = &loaded.alg;
        let pred = predicates(alg);
        let (unimodular, _) = alg.is_unimodular();
        let chern = connection.chern().then(|| constant_h_detect(&chern_curvature(alg), tol));
        let lc = connection.lc().then(|| constant_h_detect(&levi_civita_koszul(alg).complex_blocks().curv4(), tol));
        ClassificationReport {
            digest: file.digest(),
            format: file.format().to_owned(),
            n: alg.n(),
            tol,
            jacobi: alg.jacobi_residual(),
            constraints: loaded.constraints,
            unimodular,
            ad_traces: alg.ad_traces(),
            kahler: pred.is_kahler,
            chern_flat: pred.is_chern_flat,
            lc_flat: pred.is_lc_flat,
            torsion_norm: pred.torsion_norm,
            chern_norm: pred.chern_norm,
            lc_norm: pred.lc_norm,
            chern,
            lc,
            instance: file.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let max_trace = self.ad_traces.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        let _ = writeln!(s, "instance    {} ({}, n = {})", self.digest, self.format, self.n);
        let _ = writeln!(s, "tolerance   {:e}", self.tol);
        let _ = writeln!(
            s,
            "jacobi      r1 = {:.3e}, r2 = {:.3e}, r3 = {:.3e}",
            self.jacobi.r1, self.jacobi.r2, self.jacobi.r3
        );
        if let Some(c) = &self.constraints {
            let _ = writeln!(s, "constraints first = {:.3e}, second = {:.3e}", c.first, c.second);
        }
        let _ = writeln!(s, "unimodular  {} (max |tr ad| = {:.6})", self.unimodular, max_trace);
        let _ = writeln!(s, "kahler      {} (max |T| = {:.6})", self.kahler, self.torsion_norm);
        let _ = writeln!(s, "chern_flat  {} (max |R| = {:.6})", self.chern_flat, self.chern_norm);
        let _ = writeln!(s, "lc_flat     {} (max |R^r| = {:.6})", self.lc_flat, self.lc_norm);
        if let Some(v) = &self.chern {
            let _ = writeln!(s, "chern H     {}", verdict_text(v));
        }
        if let Some(v) = &self.lc {
            let _ = writeln!(s, "lc H        {}", verdict_text(v));
        }
        s
    }
}

pub fn verdict_text(v: &HVerdict) -> String {
    match v {
        HVerdict::Constant { c } => format!("constant({})", round(*c)),
        HVerdict::NotConstant { component: (i, j, k, l), deviation, c_estimate, witness } => {
            let mut s = format!(
                "not constant: R̂ component ({}, {}, {}, {}) deviates by {:.3e} from c = {}",
                i + 1,
                j + 1,
                k + 1,
                l + 1,
                deviation,
                round(*c_estimate)
            );
            if let Some(w) = witness {
                let _ = write!(
                    s,
                    "; H = {} at {}, H = {} at {}",
                    round(w.h_x),
                    vec_text(&w.x),
                    round(w.h_y),
                    vec_text(&w.y)
                );
            }
            s
        }
    }
}

/// Six significant decimals, with `-0` shown as `0`.
pub(crate) fn round(x: f64) -> String {
    let r = (x * 1e6).round() / 1e6;
    format!("{}", if r == 0.0 { 0.0 } else { r })
}

fn vec_text(v: &[Complex64]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|z| if z.im == 0.0 { round(z.re) } else { format!("{}{:+}i", round(z.re), (z.im * 1e6).round() / 1e6) })
        .collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use curvlab_core::families::hyperbolic_example_params;
    use curvlab_core::Instance;

    fn example(n: usize) -> (InstanceFile, Loaded) {
        let f = InstanceFile::from_instance(&Instance::AlmostAbelian(hyperbolic_example_params(n).unwrap()));
        let loaded = f.load(1e-9).unwrap();
        (f, loaded)
    }

    #[test]
    fn example_report() {
        let (f, loaded) = example(2);
        let r = ClassificationReport::build(&f, &loaded, 1e-9, Connection::Both);
        assert!(!r.kahler && !r.unimodular);
        let c = r.lc.as_ref().and_then(HVerdict::constant_value).unwrap();
        assert!((c + 2.0).abs() < 1e-12);
        let text = r.to_text();
        assert!(text.contains("lc H        constant(-2)"), "{text}");
        assert!(text.contains("chern H     not constant"), "{text}");
    }

    #[test]
    fn connection_selects_verdicts() {
        let (f, loaded) = example(2);
        let r = ClassificationReport::build(&f, &loaded, 1e-9, Connection::Chern);
        assert!(r.chern.is_some() && r.lc.is_none());
    }

    #[test]
    fn json_round_trip() {
        let (f, loaded) = example(3);
        let r = ClassificationReport::build(&f, &loaded, 1e-9, Connection::Both);
        let back: ClassificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn rounding_hides_negative_zero() {
        assert_eq!(round(-1e-12), "0");
        assert_eq!(round(-2.0000000001), "-2");
    }
}
