use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use padic_cf::certify::{certify_with, CertifyRequest, ConditionHint};
use padic_cf::cf::{eval_cf, expand, verify_identities, IdentityReport};
use padic_cf::combinatorics::{complexity, Detection};
use padic_cf::floor::{validate_floor, FloorFunction};
use padic_cf::padic::vp;
use padic_cf::quadratic::{periodic_to_quadratic, root_ladder};
use padic_cf::rational::Rational;
use padic_cf::words::WordSpec;

use crate::error::CliError;
use crate::formats::{
    kind, parse_rat, parse_rat_list, prime, rat, rats, CertificateJson, DetectionJson, ExpansionJson, FloorReportJson,
    FloorSpecJson, QuadraticJson, ValuationJson, WordSpecJson,
};
use crate::parallel;
use crate::{Cli, Command, FloorArgs, Format, WordArgs};

/// Runs the command and writes the report to `--output` or stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let out = execute(cli)?;
    match &cli.output {
        Some(path) => std::fs::write(path, out).map_err(|e| CliError::usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn floor(args: &FloorArgs, checked: bool) -> Result<FloorFunction, CliError> {
    let spec = match args.floor.as_str() {
        "ruban" | "browkin" => {
            let p = args.p.ok_or_else(|| CliError::usage("--p is required with a builtin floor"))?;
            FloorSpecJson { kind: args.floor.clone(), p, remap: Vec::new(), default: None }
        }
        path => read_json::<FloorSpecJson>(Path::new(path))?,
    };
    if let Some(p) = args.p {
        if p != spec.p {
            return Err(CliError::usage(format!("--p {p} differs from the floor file's p = {}", spec.p)));
        }
    }
    if checked {
        spec.to_floor()
    } else {
        spec.to_floor_unchecked()
    }
}

fn word_spec(args: &WordArgs) -> Result<WordSpec, CliError> {
    let json = match (&args.generator, &args.word) {
        (Some(name), None) => {
            let mut map = BTreeMap::new();
            if let Some(text) = &args.alphabet {
                for pair in text.split(',') {
                    let (k, v) = pair
                        .split_once('=')
                        .ok_or_else(|| CliError::usage(format!("alphabet entry {pair:?} is not sym=value")))?;
                    map.insert(k.trim().to_string(), v.trim().to_string());
                }
            }
            WordSpecJson::builtin(name, map)
        }
        (None, Some(path)) => {
            if args.alphabet.is_some() {
                return Err(CliError::usage("--alphabet only applies to --gen; put the map in the word file"));
            }
            read_json(path)?
        }
        _ => return Err(CliError::usage("give exactly one of --gen or --word")),
    };
    json.to_spec()
}

fn positive(name: &str, n: usize) -> Result<usize, CliError> {
    if n == 0 {
        return Err(CliError::usage(format!("--{name} must be positive")));
    }
    Ok(n)
}

fn budgeted(length: usize, budget: Option<usize>) -> Result<usize, CliError> {
    let len = positive("length", length)?;
    Ok(match budget {
        Some(b) => len.min(positive("budget", b)?),
        None => len,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct IdentityJson {
    identity: &'static str,
    checked: usize,
    first_failure: Option<usize>,
}

fn identity_json(r: &IdentityReport) -> String {
    let rows: Vec<IdentityJson> = r
        .checks
        .iter()
        .map(|c| IdentityJson { identity: c.kind.name(), checked: c.checked, first_failure: c.first_failure })
        .collect();
    json(&rows)
}

/// Renders the command's report without writing it anywhere.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let text = |default: Format| cli.format.unwrap_or(default) == Format::Text;
    match &cli.command {
        Command::Expand { floor: fa, alpha, max_terms } => {
            let s = floor(fa, true)?;
            let alpha = parse_rat(alpha)?;
            let rec =
                expand(&alpha, &s, positive("max-terms", *max_terms)?).map_err(|e| CliError::usage(e.to_string()))?;
            let report = verify_identities(&rec);
            if !report.all_passed() {
                let failed: Vec<&str> = report.failures().map(|c| c.kind.name()).collect();
                return Err(CliError::Invariant {
                    message: format!("identity check failed: {}", failed.join(", ")),
                    report: identity_json(&report),
                });
            }
            let out = ExpansionJson::from_record(&rec);
            if text(Format::Json) {
                return Ok(format!(
                    "p = {}, floor = {}, alpha = {}\na = [{}]\n{}\n",
                    out.p,
                    s.name(),
                    out.alpha,
                    out.a.join(", "),
                    if rec.terminated { "terminated" } else { "truncated" },
                ));
            }
            Ok(json(&out))
        }
        Command::Eval { word, p, alpha } => {
            let w = parse_rat_list(word)?;
            let value = eval_cf(&w).map_err(|e| CliError::usage(e.to_string()))?;
            let error_valuation = match (p, alpha) {
                (Some(p), Some(a)) => Some(ValuationJson::from(vp(&(parse_rat(a)? - &value), prime(*p)?))),
                _ => None,
            };
            #[derive(Serialize)]
            struct EvalJson {
                word: Vec<String>,
                value: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                error_valuation: Option<ValuationJson>,
            }
            let out = EvalJson { word: rats(&w), value: rat(&value), error_valuation };
            if text(Format::Json) {
                let mut s = format!("{}\n", out.value);
                if let Some(v) = &out.error_valuation {
                    writeln!(s, "v_p(alpha - value) = {}", serde_json::to_string(v).expect("serializes")).unwrap();
                }
                return Ok(s);
            }
            Ok(json(&out))
        }
        Command::Word { source, length } => {
            let spec = word_spec(source)?;
            let syms = spec.symbols(positive("length", *length)?).map_err(|e| CliError::usage(e.to_string()))?;
            let symbols: String = syms.iter().collect();
            if text(Format::Text) {
                return Ok(format!("{symbols}\n"));
            }
            let values = if spec.alphabet().is_empty() {
                None
            } else {
                Some(rats(&spec.prefix(syms.len(), None).map_err(|e| CliError::usage(e.to_string()))?))
            };
            #[derive(Serialize)]
            struct WordJson {
                spec: WordSpecJson,
                length: usize,
                symbols: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                values: Option<Vec<String>>,
            }
            Ok(json(&WordJson { spec: WordSpecJson::from_spec(&spec), length: syms.len(), symbols, values }))
        }
        Command::Complexity { source, length, max_n } => {
            let spec = word_spec(source)?;
            let syms = spec.symbols(positive("length", *length)?).map_err(|e| CliError::usage(e.to_string()))?;
            let mut rows = Vec::new();
            for n in 1..=positive("max-n", *max_n)?.min(syms.len()) {
                rows.push((n, complexity(&syms, n).map_err(|e| CliError::usage(e.to_string()))?));
            }
            if text(Format::Json) {
                return Ok(rows.iter().map(|(n, c)| format!("p({n}) = {c}\n")).collect());
            }
            #[derive(Serialize)]
            struct Row {
                n: usize,
                count: usize,
            }
            #[derive(Serialize)]
            struct ComplexityJson {
                generator: &'static str,
                prefix_length: usize,
                complexity: Vec<Row>,
            }
            Ok(json(&ComplexityJson {
                generator: spec.generator().name(),
                prefix_length: syms.len(),
                complexity: rows.into_iter().map(|(n, count)| Row { n, count }).collect(),
            }))
        }
        Command::Detect { source, length, kind: k, c_max, min_witnesses, budget } => {
            let spec = word_spec(source)?;
            let len = budgeted(*length, *budget)?;
            let syms = spec.symbols(len).map_err(|e| CliError::usage(e.to_string()))?;
            let k = kind(k)?;
            let c_max = parse_rat(c_max)?;
            if c_max < Rational::from_integer(0.into()) {
                return Err(CliError::usage("--c-max must be nonnegative"));
            }
            let prof = parallel::profile(k, &syms, parallel::thread_count());
            let det = Detection::from_profile(prof, c_max, *min_witnesses);
            let out = DetectionJson::from(&det);
            if text(Format::Json) {
                let mut s = format!(
                    "{} witnesses on {} letters with max(w, v) <= {} u: {}\n",
                    out.kind,
                    out.prefix_length,
                    out.c_max,
                    out.family.len()
                );
                for w in &out.family {
                    writeln!(s, "w = {}, u = {}, v = {}, ratio {}", w.w, w.u, w.v, w.ratio).unwrap();
                }
                return Ok(s);
            }
            Ok(json(&out))
        }
        Command::Quadratic { p, preperiod, period, ladder } => {
            let p = prime(*p)?;
            let pre = parse_rat_list(preperiod)?;
            let per = parse_rat_list(period)?;
            let cert = periodic_to_quadratic(&pre, &per, p).map_err(|e| CliError::usage(e.to_string()))?;
            let ladder: Vec<usize> = ladder
                .split(',')
                .map(|n| n.trim().parse().map_err(|_| CliError::usage(format!("bad ladder entry {n:?}"))))
                .collect::<Result<_, _>>()?;
            let vals = root_ladder(&cert, &ladder, p).map_err(|e| CliError::usage(e.to_string()))?;
            #[derive(Serialize)]
            struct Rung {
                n: usize,
                valuation: ValuationJson,
            }
            #[derive(Serialize)]
            struct QuadraticReport {
                #[serde(flatten)]
                certificate: QuadraticJson,
                root_valuations: Vec<Rung>,
            }
            let out = QuadraticReport {
                certificate: QuadraticJson::from_cert(&cert),
                root_valuations: ladder.iter().zip(vals).map(|(&n, v)| Rung { n, valuation: v.into() }).collect(),
            };
            if text(Format::Json) {
                let c = &out.certificate;
                let mut s = format!("P(X) = ({}) X^2 - ({}) X + ({})\n", c.a, c.b, c.c);
                for r in &out.root_valuations {
                    writeln!(s, "v_p(P(x_{})) = {}", r.n, serde_json::to_string(&r.valuation).expect("serializes"))
                        .unwrap();
                }
                return Ok(s);
            }
            Ok(json(&out))
        }
        Command::FloorValidate { floor: fa, samples, perturbations, seed } => {
            let s = floor(fa, false)?;
            let p = s.prime().get() as i64;
            let mut rng = SmallRng::seed_from_u64(*seed);
            let sample: Vec<Rational> = (0..*samples)
                .map(|_| {
                    let k = rng.gen_range(0..=3u32);
                    let n: i64 = rng.gen_range(-100_000..=100_000);
                    let mut d: i64 = rng.gen_range(1..=1000);
                    while d % p == 0 {
                        d += 1;
                    }
                    Rational::new(n.into(), (d * p.pow(k)).into())
                })
                .collect();
            let report = validate_floor(&s, &sample, *perturbations, &mut rng);
            let out = FloorReportJson::new(&s, &report);
            let rendered = if text(Format::Json) {
                let mut t = format!(
                    "{} on {} samples: {}\n",
                    s.name(),
                    out.samples_checked,
                    if out.passed { "valid" } else { "INVALID" }
                );
                for v in &out.violations {
                    writeln!(t, "{}: s({}) = {}", v.check, v.input, v.output).unwrap();
                }
                t
            } else {
                json(&out)
            };
            if !report.passed() {
                // Still show the report: the violations are the useful part.
                return Err(CliError::usage(format!("floor function fails its axioms\n{rendered}")));
            }
            Ok(rendered)
        }
        Command::Certify { floor: fa, source, length, kind: k, c, budget } => {
            let s = floor(fa, true)?;
            let spec = word_spec(source)?;
            let hint = match k {
                Some(k) => Some(ConditionHint {
                    kind: kind(k)?,
                    c: c.as_deref().map_or(Ok(Rational::from_integer(0.into())), parse_rat)?,
                }),
                None => None,
            };
            let req = CertifyRequest { floor: s, word: spec, prefix_length: budgeted(*length, *budget)?, hint };
            let threads = parallel::thread_count();
            let cert = certify_with(&req, |kind, prefix| parallel::profile(kind, prefix, threads))
                .map_err(|e| CliError::usage(e.to_string()))?;
            let out = CertificateJson::from(&cert);
            if text(Format::Json) {
                let mut t = format!(
                    "{} condition, c = {} ({}); required k = {}; min -v_p(a_n) = {}\n",
                    out.condition.kind, out.condition.c, out.condition_source, out.required_k, out.min_letter_exponent
                );
                for ch in &out.checks {
                    writeln!(t, "[{}] {}: {}", if ch.passed { "ok" } else { "FAIL" }, ch.name, ch.detail).unwrap();
                }
                if let Some(per) = &out.periodic {
                    writeln!(
                        t,
                        "prefix looks eventually periodic (preperiod {}, period {})",
                        per.preperiod, per.period
                    )
                    .unwrap();
                }
                writeln!(t, "verdict: {} ({})", out.verdict.status, out.scope).unwrap();
                writeln!(t, "{}", out.disclaimer).unwrap();
                return Ok(t);
            }
            Ok(json(&out))
        }
    }
}
