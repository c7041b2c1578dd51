//! Command implementations, run configuration and report files.

mod commands;
mod lemma;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational as Gq, UniPoly};
use crate::curve::{fixtures, parse_curve, ParametricCurve};
use crate::pipeline::Budgets;

pub use commands::{
    cmd_analyze, cmd_check_ledger, cmd_double_points, cmd_jet, cmd_jet_file, cmd_lemma_test, cmd_pipeline, cmd_verify,
    JetInput, Outcome,
};
pub use lemma::{run_lemma_test, FailureRecord, LemmaExperimentReport, LemmaId};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

/// Everything needed to reproduce a report; embedded in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    pub budgets: Budgets,
    pub precision: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default)]
    pub options: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            seed: 0,
            budgets: Budgets::default(),
            precision: "1e-12".into(),
            output: None,
            options: BTreeMap::new(),
        }
    }

    pub fn with_option(mut self, key: &str, value: impl Into<String>) -> Self {
        self.options.insert(key.into(), value.into());
        self
    }

    pub fn precision_value(&self) -> Result<BigRational, String> {
        parse_precision(&self.precision)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report<T> {
    pub config: RunConfig,
    pub exit_code: i32,
    pub result: T,
}

/// Parses `1e-12`, `1/1000` or `0.001` into a positive rational.
pub fn parse_precision(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    let bad = || format!("invalid precision {t:?}");
    let value = if let Some((m, e)) = t.split_once(['e', 'E']) {
        let exp: i32 = e.parse().map_err(|_| bad())?;
        let ten = BigRational::from_integer(BigInt::from(10));
        let scale = (0..exp.unsigned_abs()).fold(BigRational::one(), |acc, _| acc * &ten);
        let m = parse_precision(m)?;
        if exp < 0 {
            m / scale
        } else {
            m * scale
        }
    } else if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        BigRational::new(n, d)
    } else if let Some((w, f)) = t.split_once('.') {
        let digits = format!("{w}{f}");
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        BigRational::new(n, BigInt::from(10).pow(f.len() as u32))
    } else {
        BigRational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?)
    };
    if value <= BigRational::zero() {
        return Err(bad());
    }
    Ok(value)
}

/// A curve given as a fixture name, `seeded-quintic:SEED`, or a JSON file path.
pub fn resolve_curve(spec: &str) -> Result<ParametricCurve, String> {
    if let Some(c) = fixtures::by_name(spec) {
        return Ok(c);
    }
    if let Some(seed) = spec.strip_prefix("seeded-quintic:") {
        let seed: u64 = seed.parse().map_err(|_| format!("invalid seed in {spec:?}"))?;
        return Ok(seeded_quintic(seed));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))?;
    parse_curve(&text).map_err(|e| format!("{spec}: {e}"))
}

/// `t ↦ (t, p(t), q(t))` with seeded integer coefficients in `−3..=3`,
/// `deg p = 4` and `deg q = 5`; an embedding since the first coordinate is `t`.
pub fn seeded_quintic(seed: u64) -> ParametricCurve {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut poly = |deg: usize| {
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
        while c[deg] == 0 {
            c[deg] = rng.gen_range(-3..=3);
        }
        UniPoly::new(c.into_iter().map(Gq::from_int).collect())
    };
    let p = poly(4);
    let q = poly(5);
    ParametricCurve::new(vec![vec![UniPoly::var(), p, q]]).expect("nonconstant")
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_forms() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_precision("1e-3").unwrap(), r(1, 1000));
        assert_eq!(parse_precision("1/1000").unwrap(), r(1, 1000));
        assert_eq!(parse_precision("0.001").unwrap(), r(1, 1000));
        assert_eq!(parse_precision("2.5e-1").unwrap(), r(1, 4));
        assert!(parse_precision("0").is_err());
        assert!(parse_precision("abc").is_err());
    }

    #[test]
    fn seeded_quintic_is_deterministic() {
        let a = seeded_quintic(3);
        assert_eq!(a, seeded_quintic(3));
        assert_eq!(a.component(0)[1].deg0(), 4);
        assert_eq!(a.component(0)[2].deg0(), 5);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        write_atomic(&p, "a").unwrap();
        write_atomic(&p, "b").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b");
    }
}
