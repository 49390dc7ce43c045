//! JSON descriptions of coin fields, shared by the CLI and by anything
//! that wants to persist a walk setup.
//!
//! A config is an object with a `family` discriminator and family-specific
//! parameters, e.g.
//!
//! ```json
//! {"family": "two_phase", "sigma_plus": 0.0, "sigma_minus": 3.14159, "defect": true}
//! ```
//!
//! Unknown fields are rejected so that typos fail loudly instead of
//! silently running a default. All angles are radians.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coin::{
    reconstruct, split_step_profile, two_phase, CoinField, CoinMatrix, CoinParams,
};
use crate::error::{validation, Result};
use crate::mat2::C64;

/// 2×2 complex matrix as nested [re, im] pairs, row-major.
pub type MatrixSpec = [[[f64; 2]; 2]; 2];

fn matrix_from_spec(ms: &MatrixSpec) -> Result<CoinMatrix> {
    let e = |r: usize, c: usize| C64::new(ms[r][c][0], ms[r][c][1]);
    CoinMatrix::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
}

fn spec_from_matrix(m: &CoinMatrix) -> MatrixSpec {
    let e = |r: usize, c: usize| {
        let v = m.entry(r, c);
        [v.re, v.im]
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoPhaseConfig {
    pub sigma_plus: f64,
    pub sigma_minus: f64,
    #[serde(default)]
    pub defect: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitStepConfig {
    pub theta_minus: f64,
    pub theta_plus: f64,
    #[serde(default = "default_scale")]
    pub scale: f64,
}

fn default_scale() -> f64 {
    1.0
}

/// Constant coin, given either as parametrization values [a, α, β, δ] or
/// as an explicit matrix (exactly one of the two).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixSpec>,
}

/// Explicit per-site coins (keys are decimal site indices) with tail coins
/// outside the table and declared short-range constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableConfig {
    pub entries: BTreeMap<String, MatrixSpec>,
    pub left: MatrixSpec,
    pub right: MatrixSpec,
    #[serde(default = "default_scale")]
    pub kappa: f64,
    #[serde(default = "default_scale")]
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoinConfig {
    TwoPhase(TwoPhaseConfig),
    SplitStep(SplitStepConfig),
    Constant(ConstantConfig),
    Table(TableConfig),
}

impl CoinConfig {
    pub fn family(&self) -> &'static str {
        match self {
            CoinConfig::TwoPhase(_) => "two_phase",
            CoinConfig::SplitStep(_) => "split_step",
            CoinConfig::Constant(_) => "constant",
            CoinConfig::Table(_) => "table",
        }
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| validation("coin config must be a JSON object"))?;
        let family = obj
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| validation("coin config needs a string \"family\" field"))?
            .to_owned();
        let mut rest = obj.clone();
        rest.remove("family");
        let rest = Value::Object(rest);
        let parse_err =
            |fam: &str, e: serde_json::Error| validation(format!("{fam} config: {e}"));
        match family.as_str() {
            "two_phase" => Ok(CoinConfig::TwoPhase(
                serde_json::from_value(rest).map_err(|e| parse_err("two_phase", e))?,
            )),
            "split_step" => Ok(CoinConfig::SplitStep(
                serde_json::from_value(rest).map_err(|e| parse_err("split_step", e))?,
            )),
            "constant" => Ok(CoinConfig::Constant(
                serde_json::from_value(rest).map_err(|e| parse_err("constant", e))?,
            )),
            "table" => Ok(CoinConfig::Table(
                serde_json::from_value(rest).map_err(|e| parse_err("table", e))?,
            )),
            other => Err(validation(format!(
                "unknown coin family {other:?} (expected two_phase, split_step, constant, or table)"
            ))),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(s).map_err(|e| validation(format!("invalid JSON: {e}")))?;
        Self::from_value(&v)
    }

    pub fn to_value(&self) -> Value {
        let inner = match self {
            CoinConfig::TwoPhase(c) => serde_json::to_value(c),
            CoinConfig::SplitStep(c) => serde_json::to_value(c),
            CoinConfig::Constant(c) => serde_json::to_value(c),
            CoinConfig::Table(c) => serde_json::to_value(c),
        }
        .expect("config serialization");
        let mut obj = inner.as_object().cloned().unwrap_or_default();
        obj.insert("family".into(), Value::String(self.family().into()));
        Value::Object(obj)
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }

    /// Instantiates the coin field this config describes.
    pub fn build(&self) -> Result<CoinField> {
        match self {
            CoinConfig::TwoPhase(c) => Ok(two_phase(c.sigma_plus, c.sigma_minus, c.defect)),
            CoinConfig::SplitStep(c) => split_step_profile(c.theta_minus, c.theta_plus, c.scale),
            CoinConfig::Constant(c) => {
                let coin = match (&c.params, &c.matrix) {
                    (Some(p), None) => {
                        let params = CoinParams::from_a(p[0], p[1], p[2], p[3])?;
                        reconstruct(&params)?
                    }
                    (None, Some(m)) => matrix_from_spec(m)?,
                    _ => {
                        return Err(validation(
                            "constant config needs exactly one of \"params\" or \"matrix\"",
                        ))
                    }
                };
                Ok(CoinField::constant(coin))
            }
            CoinConfig::Table(c) => {
                let mut entries = Vec::with_capacity(c.entries.len());
                for (key, ms) in &c.entries {
                    let x: i64 = key.parse().map_err(|_| {
                        validation(format!("table key {key:?} is not a site index"))
                    })?;
                    entries.push((x, matrix_from_spec(ms)?));
                }
                CoinField::table(
                    entries,
                    matrix_from_spec(&c.left)?,
                    matrix_from_spec(&c.right)?,
                    c.kappa,
                    c.eps,
                )
            }
        }
    }
}

/// Config describing a constant coin by its explicit matrix.
pub fn constant_config(coin: &CoinMatrix) -> CoinConfig {
    CoinConfig::Constant(ConstantConfig {
        params: None,
        matrix: Some(spec_from_matrix(coin)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn two_phase_round_trip() {
        let cfg = CoinConfig::from_json(
            r#"{"family":"two_phase","sigma_plus":0.0,"sigma_minus":3.141592653589793,"defect":true}"#,
        )
        .unwrap();
        let CoinConfig::TwoPhase(ref c) = cfg else {
            panic!("wrong family")
        };
        assert_eq!(c.sigma_minus, PI);
        assert!(c.defect);
        let again = CoinConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn defect_defaults_to_false() {
        let cfg =
            CoinConfig::from_json(r#"{"family":"two_phase","sigma_plus":0.1,"sigma_minus":0.2}"#)
                .unwrap();
        let CoinConfig::TwoPhase(ref c) = cfg else {
            panic!("wrong family")
        };
        assert!(!c.defect);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = r#"{"family":"two_phase","sigma_plus":0.1,"sigma_minus":0.2,"sigma":9}"#;
        assert!(CoinConfig::from_json(bad).is_err());
        let bad_family = r#"{"family":"three_phase","sigma_plus":0.1}"#;
        assert!(CoinConfig::from_json(bad_family).is_err());
        let no_family = r#"{"sigma_plus":0.1,"sigma_minus":0.2}"#;
        assert!(CoinConfig::from_json(no_family).is_err());
    }

    #[test]
    fn split_step_builds_tanh_profile() {
        let cfg = CoinConfig::from_json(
            r#"{"family":"split_step","theta_minus":0.3,"theta_plus":1.1,"scale":2.5}"#,
        )
        .unwrap();
        let f = cfg.build().unwrap();
        // Far tails approach the rotation coins.
        let lim = crate::coin::rotation(1.1);
        assert!(f.coin_at(10_000).op_norm_diff(&lim) < 1e-9);
        let again = CoinConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn constant_needs_exactly_one_source() {
        let both = r#"{"family":"constant","params":[0.5,0,0,0],"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#;
        assert!(CoinConfig::from_json(both).unwrap().build().is_err());
        let neither = r#"{"family":"constant"}"#;
        assert!(CoinConfig::from_json(neither).unwrap().build().is_err());

        let params = r#"{"family":"constant","params":[0.7071067811865476,0,0,3.141592653589793]}"#;
        let f = CoinConfig::from_json(params).unwrap().build().unwrap();
        assert!(f.coin_at(0).op_norm_diff(&CoinMatrix::hadamard()) < 1e-12);

        let matrix = r#"{"family":"constant","matrix":[[[0.7071067811865476,0],[0.7071067811865476,0]],[[0.7071067811865476,0],[-0.7071067811865476,0]]]}"#;
        let f = CoinConfig::from_json(matrix).unwrap().build().unwrap();
        assert!(f.coin_at(3).op_norm_diff(&CoinMatrix::hadamard()) == 0.0);
    }

    #[test]
    fn table_round_trip_and_build() {
        let id = spec_from_matrix(&CoinMatrix::identity());
        let had = spec_from_matrix(&CoinMatrix::hadamard());
        let mut entries = BTreeMap::new();
        entries.insert("0".to_string(), id);
        entries.insert("-3".to_string(), id);
        let cfg = CoinConfig::Table(TableConfig {
            entries,
            left: had,
            right: had,
            kappa: 1.0,
            eps: 1.0,
        });
        let again = CoinConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
        let f = cfg.build().unwrap();
        assert!(f.coin_at(0).op_norm_diff(&CoinMatrix::identity()) == 0.0);
        assert!(f.coin_at(-3).op_norm_diff(&CoinMatrix::identity()) == 0.0);
        assert!(f.coin_at(5).op_norm_diff(&CoinMatrix::hadamard()) == 0.0);

        let bad_key = r#"{"family":"table","entries":{"x0":[[[1,0],[0,0]],[[0,0],[1,0]]]},"left":[[[1,0],[0,0]],[[0,0],[1,0]]],"right":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#;
        assert!(CoinConfig::from_json(bad_key).unwrap().build().is_err());
    }

    #[test]
    fn serialization_is_deterministic() {
        let cfg = CoinConfig::from_json(
            r#"{"family":"two_phase","sigma_minus":0.2,"sigma_plus":0.1,"defect":false}"#,
        )
        .unwrap();
        assert_eq!(cfg.to_json(), cfg.to_json());
        // Key order is canonical regardless of input order.
        let cfg2 = CoinConfig::from_json(
            r#"{"defect":false,"sigma_plus":0.1,"family":"two_phase","sigma_minus":0.2}"#,
        )
        .unwrap();
        assert_eq!(cfg.to_json(), cfg2.to_json());
    }
}
