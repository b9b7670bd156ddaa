//! JSON file formats. Rationals are always `"num/den"` strings in lowest
//! terms; struct fields serialize in declaration order so reports are
//! byte-reproducible.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use padic_cf::certify::{Certificate, ConditionSource, GrowthBounds, SubCheck, Verdict};
use padic_cf::cf::ExpansionRecord;
use padic_cf::combinatorics::{CProfile, Detection, EventualPeriod, Kind, Witness};
use padic_cf::floor::{Builtin, FloorFunction, FloorKind, FloorReport};
use padic_cf::padic::{Prime, Valuation};
use padic_cf::quadratic::{QuadraticCertificate, QuadraticStatus};
use padic_cf::rational::{format_rational, parse_rational, Rational};
use padic_cf::words::{
    Dfao, Generator, QuadraticIrrational, Rounding, SeedMode, Staircase, Sturmian, Symbol, WordSpec,
};

use crate::error::CliError;

pub fn rat(q: &Rational) -> String {
    format_rational(q)
}

pub fn rats(qs: &[Rational]) -> Vec<String> {
    qs.iter().map(rat).collect()
}

pub fn parse_rat(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::usage(format!("bad rational {text:?}: {e}")))
}

/// Comma-separated rationals; the empty string is the empty list.
pub fn parse_rat_list(text: &str) -> Result<Vec<Rational>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rat).collect()
}

pub fn prime(p: u64) -> Result<Prime, CliError> {
    Prime::new(p).map_err(|e| CliError::usage(format!("p = {p}: {e}")))
}

fn builtin(name: &str) -> Result<Builtin, CliError> {
    match name {
        "ruban" => Ok(Builtin::Ruban),
        "browkin" => Ok(Builtin::Browkin),
        other => Err(CliError::usage(format!("unknown floor {other:?} (expected ruban or browkin)"))),
    }
}

pub fn kind(name: &str) -> Result<Kind, CliError> {
    match name {
        "spade" => Ok(Kind::Spade),
        "club" => Ok(Kind::Club),
        other => Err(CliError::usage(format!("unknown condition {other:?} (expected spade or club)"))),
    }
}

/// `v_p` as an integer, or the string `"infinity"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ValuationJson {
    Finite(i64),
    Infinite(&'static str),
}

impl From<Valuation> for ValuationJson {
    fn from(v: Valuation) -> Self {
        match v {
            Valuation::Finite(k) => ValuationJson::Finite(k),
            Valuation::Infinity => ValuationJson::Infinite("infinity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemapEntry {
    pub class: String,
    pub rep: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorSpecJson {
    pub kind: String,
    pub p: u64,
    #[serde(default)]
    pub remap: Vec<RemapEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<String>,
}

impl FloorSpecJson {
    pub fn from_floor(s: &FloorFunction) -> Self {
        let p = s.prime().get();
        match s.kind() {
            FloorKind::Builtin(b) => FloorSpecJson { kind: b.name().into(), p, remap: Vec::new(), default: None },
            FloorKind::Custom { remap, default } => FloorSpecJson {
                kind: "custom".into(),
                p,
                remap: remap.iter().map(|(c, r)| RemapEntry { class: rat(c), rep: rat(r) }).collect(),
                default: Some(default.name().into()),
            },
        }
    }

    fn parts(&self) -> Result<(Prime, BTreeMap<Rational, Rational>, Builtin), CliError> {
        let p = prime(self.p)?;
        let default = builtin(self.default.as_deref().unwrap_or("ruban"))?;
        let mut remap = BTreeMap::new();
        for e in &self.remap {
            if remap.insert(parse_rat(&e.class)?, parse_rat(&e.rep)?).is_some() {
                return Err(CliError::usage(format!("class {} listed twice", e.class)));
            }
        }
        Ok((p, remap, default))
    }

    pub fn to_floor(&self) -> Result<FloorFunction, CliError> {
        match self.kind.as_str() {
            "custom" => {
                let (p, remap, default) = self.parts()?;
                FloorFunction::custom(p, remap, default).map_err(|e| CliError::usage(e.to_string()))
            }
            name => {
                if !self.remap.is_empty() {
                    return Err(CliError::usage("remap is only allowed for custom floors"));
                }
                Ok(FloorFunction::builtin(prime(self.p)?, builtin(name)?))
            }
        }
    }

    /// As [`Self::to_floor`] but without checking the remap table, so that
    /// `floor-validate` can report the violations.
    pub fn to_floor_unchecked(&self) -> Result<FloorFunction, CliError> {
        match self.kind.as_str() {
            "custom" => {
                let (p, remap, default) = self.parts()?;
                Ok(FloorFunction::custom_unchecked(p, remap, default))
            }
            _ => self.to_floor(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaoJson {
    pub base: u32,
    /// State names, for readability only; transitions index this list.
    pub states: Vec<String>,
    pub initial: usize,
    pub transitions: Vec<Vec<usize>>,
    /// One single-character output symbol per state.
    pub outputs: Vec<String>,
}

impl DfaoJson {
    pub fn from_dfao(m: &Dfao) -> Self {
        DfaoJson {
            base: m.base(),
            states: (0..m.transitions().len()).map(|i| format!("q{i}")).collect(),
            initial: m.initial(),
            transitions: m.transitions().to_vec(),
            outputs: m.outputs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_dfao(&self) -> Result<Dfao, CliError> {
        if self.states.len() != self.transitions.len() {
            return Err(CliError::usage("DFAO needs one transition row per state"));
        }
        let outputs = self.outputs.iter().map(|s| symbol(s)).collect::<Result<Vec<_>, _>>()?;
        Dfao::new(self.base, self.initial, self.transitions.clone(), outputs)
            .map_err(|e| CliError::usage(e.to_string()))
    }
}

fn symbol(s: &str) -> Result<Symbol, CliError> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(CliError::usage(format!("symbol {s:?} must be a single character"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordSpecJson {
    pub generator: String,
    #[serde(default)]
    pub alphabet_map: BTreeMap<String, String>,
    #[serde(default)]
    pub params: Value,
}

fn param<'a>(params: &'a Value, key: &str) -> Option<&'a Value> {
    params.as_object().and_then(|m| m.get(key))
}

fn param_str<'a>(params: &'a Value, key: &str) -> Result<Option<&'a str>, CliError> {
    match param(params, key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(_) => Err(CliError::usage(format!("params.{key} must be a string"))),
    }
}

fn param_int(params: &Value, key: &str) -> Result<BigInt, CliError> {
    match param(params, key) {
        Some(Value::Number(n)) if n.is_i64() => Ok(BigInt::from(n.as_i64().expect("checked"))),
        Some(Value::String(s)) => s.parse().map_err(|_| CliError::usage(format!("params.{key} must be an integer"))),
        _ => Err(CliError::usage(format!("params.{key} must be an integer"))),
    }
}

impl WordSpecJson {
    /// A builtin generator with no parameters, optionally mapped.
    pub fn builtin(name: &str, alphabet_map: BTreeMap<String, String>) -> Self {
        WordSpecJson { generator: name.into(), alphabet_map, params: Value::Null }
    }

    pub fn from_spec(spec: &WordSpec) -> Self {
        let g = spec.generator();
        let word = |w: &[Symbol]| Value::String(w.iter().collect());
        let params = match g {
            Generator::ThueMorse | Generator::RudinShapiro | Generator::Paperfolding | Generator::Fibonacci => {
                Value::Null
            }
            Generator::Sturmian(s) => {
                let (a, b, c, d) = s.slope().parts();
                serde_json::json!({
                    "slope": { "a": a.to_string(), "b": b.to_string(), "c": c.to_string(), "d": d.to_string() },
                    "intercept": rat(s.intercept()),
                    "rounding": match s.rounding() { Rounding::Floor => "floor", Rounding::Ceil => "ceil" },
                })
            }
            Generator::Dfao { machine, offset } => {
                serde_json::json!({ "machine": DfaoJson::from_dfao(machine), "offset": offset })
            }
            Generator::Periodic { preperiod, period } => {
                serde_json::json!({ "preperiod": word(preperiod), "period": word(period) })
            }
            Generator::PalindromicClosure { seeds, mode } => serde_json::json!({
                "seeds": seeds.iter().map(|s| word(s)).collect::<Vec<_>>(),
                "mode": match mode { SeedMode::Cycle => "cycle", SeedMode::RepeatLast => "repeat_last" },
            }),
            Generator::BlockStaircase(v) => serde_json::json!({
                "variant": match v { Staircase::ZeroOne => "zero_one", Staircase::MirroredBlocks => "mirrored_blocks" },
            }),
            Generator::Explicit(w) => serde_json::json!({ "word": word(w) }),
        };
        WordSpecJson {
            generator: g.name().into(),
            alphabet_map: spec.alphabet().iter().map(|(k, v)| (k.to_string(), rat(v))).collect(),
            params,
        }
    }

    pub fn to_spec(&self) -> Result<WordSpec, CliError> {
        let ps = &self.params;
        let chars = |key: &str| -> Result<Vec<Symbol>, CliError> {
            Ok(param_str(ps, key)?
                .ok_or_else(|| CliError::usage(format!("params.{key} is required")))?
                .chars()
                .collect())
        };
        let generator = match self.generator.as_str() {
            "thue_morse" => Generator::ThueMorse,
            "rudin_shapiro" => Generator::RudinShapiro,
            "paperfolding" => Generator::Paperfolding,
            "fibonacci" => Generator::Fibonacci,
            "sturmian" => match param(ps, "slope") {
                None => Generator::Sturmian(Sturmian::golden()),
                Some(slope) => {
                    let slope = QuadraticIrrational::new(
                        param_int(slope, "a")?,
                        param_int(slope, "b")?,
                        param_int(slope, "c")?,
                        param_int(slope, "d")?,
                    )
                    .map_err(|e| CliError::usage(e.to_string()))?;
                    let intercept =
                        param_str(ps, "intercept")?.map_or(Ok(Rational::from_integer(0.into())), parse_rat)?;
                    let rounding = match param_str(ps, "rounding")?.unwrap_or("floor") {
                        "floor" => Rounding::Floor,
                        "ceil" => Rounding::Ceil,
                        other => return Err(CliError::usage(format!("unknown rounding {other:?}"))),
                    };
                    Generator::Sturmian(
                        Sturmian::new(slope, intercept, rounding).map_err(|e| CliError::usage(e.to_string()))?,
                    )
                }
            },
            "dfao" => {
                let machine: DfaoJson = serde_json::from_value(
                    param(ps, "machine").cloned().ok_or_else(|| CliError::usage("params.machine is required"))?,
                )
                .map_err(|e| CliError::usage(format!("params.machine: {e}")))?;
                let offset = match param(ps, "offset") {
                    None => 0,
                    Some(v) => {
                        v.as_u64().ok_or_else(|| CliError::usage("params.offset must be a nonnegative integer"))?
                    }
                };
                Generator::Dfao { machine: machine.to_dfao()?, offset }
            }
            "periodic" => Generator::Periodic {
                preperiod: param_str(ps, "preperiod")?.unwrap_or("").chars().collect(),
                period: chars("period")?,
            },
            "palindromic_closure" => {
                let seeds = param(ps, "seeds")
                    .and_then(Value::as_array)
                    .ok_or_else(|| CliError::usage("params.seeds must be a list of strings"))?
                    .iter()
                    .map(|v| {
                        v.as_str().map(|s| s.chars().collect()).ok_or_else(|| CliError::usage("seeds must be strings"))
                    })
                    .collect::<Result<Vec<Vec<Symbol>>, _>>()?;
                let mode = match param_str(ps, "mode")?.unwrap_or("cycle") {
                    "cycle" => SeedMode::Cycle,
                    "repeat_last" => SeedMode::RepeatLast,
                    other => return Err(CliError::usage(format!("unknown seed mode {other:?}"))),
                };
                Generator::PalindromicClosure { seeds, mode }
            }
            "block_staircase" => match param_str(ps, "variant")?.unwrap_or("zero_one") {
                "zero_one" => Generator::BlockStaircase(Staircase::ZeroOne),
                "mirrored_blocks" => Generator::BlockStaircase(Staircase::MirroredBlocks),
                other => return Err(CliError::usage(format!("unknown staircase variant {other:?}"))),
            },
            "explicit" => Generator::Explicit(chars("word")?),
            other => return Err(CliError::usage(format!("unknown generator {other:?}"))),
        };
        let mut alphabet = BTreeMap::new();
        for (k, v) in &self.alphabet_map {
            alphabet.insert(symbol(k)?, parse_rat(v)?);
        }
        WordSpec::new(generator, alphabet).map_err(|e| CliError::usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionJson {
    pub p: u64,
    pub floor: FloorSpecJson,
    pub alpha: String,
    pub a: Vec<String>,
    pub terminated: bool,
    pub truncated: bool,
}

impl ExpansionJson {
    pub fn from_record(rec: &ExpansionRecord) -> Self {
        ExpansionJson {
            p: rec.prime().get(),
            floor: FloorSpecJson::from_floor(&rec.floor),
            alpha: rat(&rec.alpha),
            a: rats(&rec.partial_quotients),
            terminated: rec.terminated,
            truncated: rec.truncated,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadraticJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub preperiod: Vec<String>,
    pub period: Vec<String>,
    pub degenerate: bool,
}

impl QuadraticJson {
    pub fn from_cert(q: &QuadraticCertificate) -> Self {
        QuadraticJson {
            a: rat(&q.a),
            b: rat(&q.b),
            c: rat(&q.c),
            preperiod: rats(&q.preperiod),
            period: rats(&q.period),
            degenerate: q.status == QuadraticStatus::Degenerate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub kind: &'static str,
    pub w: usize,
    pub u: usize,
    pub v: usize,
    pub prefix_length_used: usize,
    pub ratio: String,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            kind: w.kind.name(),
            w: w.w,
            u: w.u,
            v: w.v,
            prefix_length_used: w.prefix_length_used,
            ratio: rat(&w.ratio()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CProfileJson {
    pub kind: &'static str,
    pub prefix_length: usize,
    /// Best witness for every `u` that has one.
    pub entries: Vec<WitnessJson>,
}

impl From<&CProfile> for CProfileJson {
    fn from(p: &CProfile) -> Self {
        CProfileJson {
            kind: p.kind.name(),
            prefix_length: p.prefix_length,
            entries: p.entries().map(|w| WitnessJson::from(&w)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DetectionJson {
    pub kind: &'static str,
    pub c_max: String,
    pub prefix_length: usize,
    pub min_witnesses: usize,
    pub enough_witnesses: bool,
    pub largest_u: Option<usize>,
    pub tail_constant: Option<String>,
    pub family: Vec<WitnessJson>,
    pub profile: CProfileJson,
}

impl From<&Detection> for DetectionJson {
    fn from(d: &Detection) -> Self {
        DetectionJson {
            kind: d.kind.name(),
            c_max: rat(&d.c_max),
            prefix_length: d.prefix_length,
            min_witnesses: d.min_witnesses,
            enough_witnesses: d.enough_witnesses(),
            largest_u: d.largest_u(),
            tail_constant: d.tail_constant().as_ref().map(rat),
            family: d.family.iter().map(WitnessJson::from).collect(),
            profile: CProfileJson::from(&d.profile),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationJson {
    pub check: &'static str,
    pub input: String,
    pub output: String,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FloorReportJson {
    pub floor: FloorSpecJson,
    pub passed: bool,
    pub samples_checked: usize,
    pub perturbations_per_sample: usize,
    pub violations: Vec<ViolationJson>,
}

impl FloorReportJson {
    pub fn new(s: &FloorFunction, r: &FloorReport) -> Self {
        FloorReportJson {
            floor: FloorSpecJson::from_floor(s),
            passed: r.passed(),
            samples_checked: r.samples_checked,
            perturbations_per_sample: r.perturbations_per_sample,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationJson {
                    check: v.check.name(),
                    input: rat(&v.input),
                    output: rat(&v.output),
                    witness: v.witness.as_ref().map(rat),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionJson {
    pub kind: &'static str,
    pub c: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DetectorJson {
    pub kind: &'static str,
    pub derived_c: Option<String>,
    pub largest_u: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthJson {
    pub n_max: usize,
    pub observed_c_inf: String,
    pub letter_bound: String,
    pub alphabet_c_inf: String,
    pub c_p_exponent: String,
    pub letter_p_exponent: i64,
    pub verified: bool,
}

impl From<&GrowthBounds> for GrowthJson {
    fn from(g: &GrowthBounds) -> Self {
        GrowthJson {
            n_max: g.n_max,
            observed_c_inf: rat(&g.observed_c_inf),
            letter_bound: rat(&g.letter_bound),
            alphabet_c_inf: rat(&g.alphabet_c_inf),
            c_p_exponent: rat(&g.c_p_exponent),
            letter_p_exponent: g.letter_p_exponent,
            verified: g.verified,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodJson {
    pub preperiod: usize,
    pub period: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckJson {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl From<&SubCheck> for CheckJson {
    fn from(c: &SubCheck) -> Self {
        CheckJson { name: c.name, passed: c.passed, detail: c.detail.clone() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub status: &'static str,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputsJson {
    pub p: u64,
    pub floor: FloorSpecJson,
    pub word: WordSpecJson,
    pub prefix_length: usize,
    pub hint: Option<ConditionJson>,
}

/// Versioned certificate layout.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub version: u32,
    pub scope: &'static str,
    pub inputs: InputsJson,
    pub detectors: Vec<DetectorJson>,
    pub condition: ConditionJson,
    pub condition_source: &'static str,
    pub witnesses: Vec<WitnessJson>,
    pub growth: GrowthJson,
    pub required_k: u64,
    pub min_letter_exponent: i64,
    pub spot_check_terms: usize,
    pub periodic: Option<PeriodJson>,
    pub checks: Vec<CheckJson>,
    pub verdict: VerdictJson,
    pub disclaimer: &'static str,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        let cond = |kind: Kind, r: &Rational| ConditionJson { kind: kind.name(), c: rat(r) };
        CertificateJson {
            version: c.version,
            scope: c.scope,
            inputs: InputsJson {
                p: c.p.get(),
                floor: FloorSpecJson::from_floor(&c.floor),
                word: WordSpecJson::from_spec(&c.word),
                prefix_length: c.prefix_length,
                hint: c.hint.as_ref().map(|h| cond(h.kind, &h.c)),
            },
            detectors: c
                .detectors
                .iter()
                .map(|d| DetectorJson {
                    kind: d.kind.name(),
                    derived_c: d.derived_c.as_ref().map(rat),
                    largest_u: d.largest_u,
                })
                .collect(),
            condition: cond(c.condition.kind, &c.condition.c),
            condition_source: match c.condition_source {
                ConditionSource::Hint => "hint",
                ConditionSource::Detector => "detector",
            },
            witnesses: c.witnesses.iter().map(WitnessJson::from).collect(),
            growth: GrowthJson::from(&c.growth),
            required_k: c.required_k,
            min_letter_exponent: c.min_letter_exponent,
            spot_check_terms: c.spot_check_terms,
            periodic: c
                .periodic
                .as_ref()
                .map(|EventualPeriod { preperiod, period }| PeriodJson { preperiod: *preperiod, period: *period }),
            checks: c.checks.iter().map(CheckJson::from).collect(),
            verdict: match &c.verdict {
                Verdict::HypothesesEvidenced => VerdictJson { status: "hypotheses-evidenced", reasons: Vec::new() },
                Verdict::Failed(r) => VerdictJson { status: "failed", reasons: r.clone() },
            },
            disclaimer: c.disclaimer,
        }
    }
}
