//! Flat `key = value` experiment configs.
//!
//! Values are numbers, booleans, bare words, quoted strings, lists in brackets,
//! `linspace(a, b, n)` and the T rules `linear(c)`, `log(c)`, `const(c)`. Every key
//! may appear once and unknown keys are rejected. The grammar is in
//! `docs/config-grammar.md`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("duplicate key `{0}`")]
    DuplicateKey(String),
    #[error("missing key `{0}`")]
    Missing(String),
    #[error("key `{key}`: {msg}")]
    Invalid { key: String, msg: String },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Num(f64),
    Bool(bool),
    Word(String),
    Str(String),
    List(Vec<Value>),
    Call(String, Vec<f64>),
}

fn parse_scalar(tok: &str) -> Option<Value> {
    let tok = tok.trim();
    if tok.is_empty() {
        return None;
    }
    if let Some(inner) = tok.strip_prefix('"') {
        return inner.strip_suffix('"').filter(|s| !s.contains('"')).map(|s| Value::Str(s.to_string()));
    }
    match tok {
        "true" => return Some(Value::Bool(true)),
        "false" => return Some(Value::Bool(false)),
        _ => {}
    }
    if let Ok(x) = tok.parse::<f64>() {
        return x.is_finite().then_some(Value::Num(x));
    }
    let word = tok.chars().all(|c| c.is_ascii_alphanumeric() || "_-./".contains(c));
    word.then(|| Value::Word(tok.to_string()))
}

fn parse_value(text: &str) -> Result<Value, String> {
    let text = text.trim();
    if let Some(inner) = text.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or("unterminated list")?;
        if inner.trim().is_empty() {
            return Ok(Value::List(Vec::new()));
        }
        let items = inner
            .split(',')
            .map(|t| parse_scalar(t).ok_or_else(|| format!("bad list item `{}`", t.trim())))
            .collect::<Result<_, _>>()?;
        return Ok(Value::List(items));
    }
    if let Some(open) = text.find('(') {
        let name = &text[..open];
        if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphabetic()) {
            let inner = text[open + 1..].strip_suffix(')').ok_or("unterminated call")?;
            let args = inner
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad argument `{}`", t.trim())))
                .collect::<Result<_, _>>()?;
            return Ok(Value::Call(name.to_string(), args));
        }
    }
    parse_scalar(text).ok_or_else(|| format!("bad value `{text}`"))
}

/// Parses config text into an ordered key map.
pub fn parse_entries(text: &str) -> Result<BTreeMap<String, Value>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = match raw.find('#') {
            Some(k) if !raw[..k].contains('"') || raw[..k].matches('"').count() % 2 == 0 => &raw[..k],
            _ => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ConfigError::Syntax { line, msg: "expected `key = value`".into() })?;
        let key = key.trim();
        let valid_key = key.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid_key {
            return Err(ConfigError::Syntax { line, msg: format!("bad key `{key}`") });
        }
        let value = parse_value(value).map_err(|msg| ConfigError::Syntax { line, msg })?;
        if out.insert(key.to_string(), value).is_some() {
            return Err(ConfigError::DuplicateKey(key.to_string()));
        }
    }
    Ok(out)
}

/// How the number of time steps follows from `L`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TRule {
    /// `T = c`
    Const(f64),
    /// `T = round(c ln L)`
    Log(f64),
    /// `T = round(c L)`
    Linear(f64),
}

impl TRule {
    pub fn steps(&self, l: usize) -> usize {
        let t = match *self {
            TRule::Const(c) => c,
            TRule::Log(c) => c * (l as f64).ln(),
            TRule::Linear(c) => c * l as f64,
        };
        (t.round() as usize).max(1)
    }
}

impl fmt::Display for TRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TRule::Const(c) => write!(f, "const({c})"),
            TRule::Log(c) => write!(f, "log({c})"),
            TRule::Linear(c) => write!(f, "linear({c})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Run,
    DecodeSweep,
    Percolation,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Run => "run",
            Command::DecodeSweep => "decode-sweep",
            Command::Percolation => "percolation",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelName {
    /// Classical bit-flip histories of the repetition code.
    Classical,
    /// Clifford repetition-code trajectories from the all-zero state.
    Repetition,
    /// Classical bit-flip histories of the toric code.
    Toric,
    Baseline,
    Perturbed,
    Ladder,
}

impl ModelName {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "classical" => ModelName::Classical,
            "repetition" => ModelName::Repetition,
            "toric" => ModelName::Toric,
            "baseline" => ModelName::Baseline,
            "perturbed" => ModelName::Perturbed,
            "ladder" => ModelName::Ladder,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelName::Classical => "classical",
            ModelName::Repetition => "repetition",
            ModelName::Toric => "toric",
            ModelName::Baseline => "baseline",
            ModelName::Perturbed => "perturbed",
            ModelName::Ladder => "ladder",
        }
    }

    /// Rate keys the model reads, the default sweep first.
    pub fn rate_keys(self) -> &'static [&'static str] {
        match self {
            ModelName::Classical | ModelName::Repetition => &["p_err", "p_zz"],
            ModelName::Toric => &["p_err", "p_plaq"],
            ModelName::Baseline => &["p_zz", "q"],
            ModelName::Perturbed => &["p_zz", "q", "p_u"],
            ModelName::Ladder => &["p_zz", "q", "p_bath"],
        }
    }

    fn outputs(self, command: Command) -> &'static [&'static str] {
        match (command, self) {
            (Command::DecodeSweep, ModelName::Classical) => &["path-sum", "mwpm", "located"],
            (Command::DecodeSweep, ModelName::Repetition) => &["path-sum", "mwpm", "located"],
            (Command::DecodeSweep, ModelName::Toric) => &["mwpm", "membrane"],
            (Command::Run, ModelName::Baseline | ModelName::Perturbed | ModelName::Ladder) => {
                &["chi_sg", "chi_pm", "mi_ab", "mi_half", "s_half"]
            }
            (Command::Percolation, ModelName::Baseline | ModelName::Repetition) => {
                &["spans_time", "spans_space", "largest_fraction"]
            }
            _ => &[],
        }
    }
}

/// Fully resolved experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub model: ModelName,
    /// 1 for a ring of `L` sites, 2 for an `L x L` torus.
    pub dim: usize,
    pub sizes: Vec<usize>,
    pub t_rule: TRule,
    /// Rate values per key; exactly the model's rate keys.
    pub rates: BTreeMap<String, Vec<f64>>,
    /// Rate key reported in the `p` column.
    pub sweep: String,
    /// Rate keys tied to one minus the swept rate.
    pub complement: Vec<String>,
    pub faulty: bool,
    /// Decoders or observables, one CSV row each per grid point.
    pub outputs: Vec<String>,
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    pub workers: usize,
    pub out: Option<String>,
}

const COMMON_KEYS: [&str; 9] = ["model", "dim", "L", "T", "trials", "seed", "workers", "out", "faulty"];

struct Entries(BTreeMap<String, Value>);

impl Entries {
    fn invalid(key: &str, msg: impl Into<String>) -> ConfigError {
        ConfigError::Invalid { key: key.into(), msg: msg.into() }
    }

    fn numbers(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        let Some(v) = self.0.get(key) else { return Ok(None) };
        let xs = match v {
            Value::Num(x) => vec![*x],
            Value::List(items) => items
                .iter()
                .map(|i| match i {
                    Value::Num(x) => Ok(*x),
                    _ => Err(Self::invalid(key, "expected numbers")),
                })
                .collect::<Result<_, _>>()?,
            Value::Call(f, a) if f == "linspace" => {
                if a.len() != 3 || a[2] < 1.0 || a[2].fract() != 0.0 {
                    return Err(Self::invalid(key, "linspace(a, b, n) needs an integer n >= 1"));
                }
                let n = a[2] as usize;
                (0..n).map(|k| if n == 1 { a[0] } else { a[0] + (a[1] - a[0]) * k as f64 / (n - 1) as f64 }).collect()
            }
            _ => return Err(Self::invalid(key, "expected a number or a list")),
        };
        if xs.is_empty() {
            return Err(Self::invalid(key, "empty list"));
        }
        Ok(Some(xs))
    }

    fn integer(&self, key: &str) -> Result<Option<u64>, ConfigError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(Value::Num(x)) if *x >= 0.0 && x.fract() == 0.0 && *x <= u64::MAX as f64 => Ok(Some(*x as u64)),
            Some(_) => Err(Self::invalid(key, "expected a non-negative integer")),
        }
    }

    fn word(&self, key: &str) -> Result<Option<String>, ConfigError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(Value::Word(w) | Value::Str(w)) => Ok(Some(w.clone())),
            Some(_) => Err(Self::invalid(key, "expected a word")),
        }
    }

    fn words(&self, key: &str) -> Result<Option<Vec<String>>, ConfigError> {
        match self.0.get(key) {
            None => Ok(None),
            Some(Value::Word(w) | Value::Str(w)) => Ok(Some(vec![w.clone()])),
            Some(Value::List(items)) => items
                .iter()
                .map(|i| match i {
                    Value::Word(w) | Value::Str(w) => Ok(w.clone()),
                    _ => Err(Self::invalid(key, "expected words")),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(_) => Err(Self::invalid(key, "expected a word or a list of words")),
        }
    }
}

impl ExperimentConfig {
    /// Parses and validates a config for `command`.
    pub fn from_text(command: Command, text: &str) -> Result<Self, ConfigError> {
        let e = Entries(parse_entries(text)?);
        let model_name = e.word("model")?.ok_or(ConfigError::Missing("model".into()))?;
        let model = ModelName::parse(&model_name).ok_or_else(|| Entries::invalid("model", format!("unknown model `{model_name}`")))?;
        let output_key = if command == Command::DecodeSweep { "decoder" } else { "observable" };
        let allowed: Vec<&str> =
            COMMON_KEYS.iter().copied().chain(model.rate_keys().iter().copied()).chain([output_key, "sweep"]).collect();
        if let Some(k) = e.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(ConfigError::UnknownKey(k.clone()));
        }
        let valid_outputs = model.outputs(command);
        if valid_outputs.is_empty() {
            return Err(Entries::invalid("model", format!("`{}` does not support `{}`", model.name(), command.name())));
        }
        let dim = e.integer("dim")?.unwrap_or(1) as usize;
        if !(1..=2).contains(&dim) {
            return Err(Entries::invalid("dim", "must be 1 or 2"));
        }
        if dim == 2 && matches!(model, ModelName::Baseline | ModelName::Perturbed | ModelName::Ladder) {
            return Err(Entries::invalid("dim", "this model lives on a ring"));
        }
        let sizes: Vec<usize> = e
            .numbers("L")?
            .ok_or(ConfigError::Missing("L".into()))?
            .into_iter()
            .map(|x| if x >= 2.0 && x.fract() == 0.0 { Ok(x as usize) } else { Err(Entries::invalid("L", "sizes are integers >= 2")) })
            .collect::<Result<_, _>>()?;
        let t_rule = match e.0.get("T") {
            None => return Err(ConfigError::Missing("T".into())),
            Some(Value::Num(c)) => TRule::Const(*c),
            Some(Value::Call(f, a)) if a.len() == 1 && a[0] > 0.0 => match f.as_str() {
                "const" => TRule::Const(a[0]),
                "log" => TRule::Log(a[0]),
                "linear" => TRule::Linear(a[0]),
                _ => return Err(Entries::invalid("T", format!("unknown rule `{f}`"))),
            },
            Some(_) => return Err(Entries::invalid("T", "expected const(c), log(c), linear(c) or a number")),
        };
        let mut rates = BTreeMap::new();
        let mut complement = Vec::new();
        for &k in model.rate_keys() {
            if matches!(e.0.get(k), Some(Value::Word(w)) if w == "complement") {
                complement.push(k.to_string());
                continue;
            }
            let xs = e.numbers(k)?.ok_or_else(|| ConfigError::Missing(k.into()))?;
            if xs.iter().any(|x| !(0.0..=1.0).contains(x)) {
                return Err(Entries::invalid(k, "rates lie in [0, 1]"));
            }
            if xs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Entries::invalid(k, "grid must be strictly increasing"));
            }
            rates.insert(k.to_string(), xs);
        }
        let multi: Vec<&String> = rates.iter().filter(|(_, v)| v.len() > 1).map(|(k, _)| k).collect();
        if multi.len() > 1 {
            return Err(Entries::invalid(multi[1], "only one rate may be swept"));
        }
        let sweep = match (e.word("sweep")?, multi.first()) {
            (Some(s), Some(m)) if s != **m => return Err(Entries::invalid("sweep", format!("`{m}` is the swept rate"))),
            (Some(s), _) if !rates.contains_key(&s) => return Err(Entries::invalid("sweep", format!("`{s}` is not a rate of this model"))),
            (Some(s), _) => s,
            (None, Some(m)) => (*m).clone(),
            (None, None) => model.rate_keys().iter().find(|k| rates.contains_key(**k)).ok_or_else(|| Entries::invalid("sweep", "no rate to sweep"))?.to_string(),
        };
        if complement.len() > 1 {
            return Err(Entries::invalid(&complement[1], "only one rate may be a complement"));
        }
        let outputs = e.words(output_key)?.ok_or_else(|| ConfigError::Missing(output_key.into()))?;
        if outputs.is_empty() {
            return Err(Entries::invalid(output_key, "empty list"));
        }
        if let Some(o) = outputs.iter().find(|o| !valid_outputs.contains(&o.as_str())) {
            return Err(Entries::invalid(output_key, format!("`{o}` not available; choose from {valid_outputs:?}")));
        }
        if dim == 2 && model == ModelName::Repetition && outputs.iter().any(|o| o == "mwpm") {
            return Err(Entries::invalid(output_key, "mwpm on Clifford trajectories needs dim = 1"));
        }
        let faulty = match e.0.get("faulty") {
            None => false,
            Some(Value::Bool(b)) => *b,
            Some(_) => return Err(Entries::invalid("faulty", "expected true or false")),
        };
        if faulty && !matches!(model, ModelName::Classical | ModelName::Toric) {
            return Err(Entries::invalid("faulty", "faulty records are available for classical histories only"));
        }
        if model == ModelName::Ladder && sizes.iter().any(|l| l % 2 == 1) {
            return Err(Entries::invalid("L", "the ladder needs even sizes"));
        }
        let trials = e.integer("trials")?.ok_or(ConfigError::Missing("trials".into()))?;
        if trials == 0 {
            return Err(Entries::invalid("trials", "must be at least 1"));
        }
        Ok(ExperimentConfig {
            command,
            model,
            dim,
            sizes,
            t_rule,
            rates,
            sweep,
            complement,
            faulty,
            outputs,
            trials,
            seed: e.integer("seed")?.unwrap_or(0),
            workers: e.integer("workers")?.unwrap_or(0) as usize,
            out: e.word("out")?,
        })
    }

    /// Canonical config text; parsing it gives back the same config.
    pub fn to_text(&self) -> String {
        let list = |xs: &[f64]| {
            if xs.len() == 1 {
                format!("{}", xs[0])
            } else {
                format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
            }
        };
        let output_key = if self.command == Command::DecodeSweep { "decoder" } else { "observable" };
        let mut s = format!("model = {}\ndim = {}\n", self.model.name(), self.dim);
        s += &format!("L = [{}]\n", self.sizes.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", "));
        s += &format!("T = {}\n", self.t_rule);
        for (k, v) in &self.rates {
            s += &format!("{k} = {}\n", list(v));
        }
        for k in &self.complement {
            s += &format!("{k} = complement\n");
        }
        s += &format!("sweep = {}\n", self.sweep);
        if self.faulty {
            s += "faulty = true\n";
        }
        s += &format!("{output_key} = [{}]\n", self.outputs.join(", "));
        s += &format!("trials = {}\nseed = {}\nworkers = {}\n", self.trials, self.seed, self.workers);
        if let Some(o) = &self.out {
            s += &format!("out = \"{o}\"\n");
        }
        s
    }

    /// Grid points in row order: sizes outermost, then the swept rate.
    pub fn grid(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &l in &self.sizes {
            for &x in &self.rates[&self.sweep] {
                let rates = self
                    .rates
                    .iter()
                    .map(|(k, v)| (k.clone(), if *k == self.sweep { x } else { v[0] }))
                    .chain(self.complement.iter().map(|k| (k.clone(), 1.0 - x)))
                    .collect();
                out.push(GridPoint { index: out.len() as u64, l, steps: self.t_rule.steps(l), p: x, rates });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub index: u64,
    pub l: usize,
    pub steps: usize,
    /// Value of the swept rate.
    pub p: f64,
    pub rates: BTreeMap<String, f64>,
}

impl GridPoint {
    pub fn rate(&self, key: &str) -> f64 {
        self.rates[key]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SWEEP: &str = "# path-sum sweep\nmodel = classical\nL = [8, 16]\nT = linear(1)\np_zz = 0.6\np_err = linspace(0, 0.1, 3)\ndecoder = [path-sum, mwpm]\ntrials = 10\nseed = 3\n";

    #[test]
    fn parses_and_roundtrips() {
        let c = ExperimentConfig::from_text(Command::DecodeSweep, SWEEP).unwrap();
        assert_eq!(c.sweep, "p_err");
        assert_eq!(c.rates["p_err"], vec![0.0, 0.05, 0.1]);
        assert_eq!(c.grid().len(), 6);
        assert_eq!(c.grid()[4].steps, 16);
        let again = ExperimentConfig::from_text(Command::DecodeSweep, &c.to_text()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn strictness() {
        let bad = |t: &str| ExperimentConfig::from_text(Command::DecodeSweep, t).unwrap_err();
        assert_eq!(bad(&format!("{SWEEP}colour = red\n")), ConfigError::UnknownKey("colour".into()));
        assert_eq!(bad(&format!("{SWEEP}trials = 4\n")), ConfigError::DuplicateKey("trials".into()));
        assert!(matches!(bad(&SWEEP.replace("p_zz = 0.6", "p_zz = [0.5, 0.6]")), ConfigError::Invalid { .. }));
        assert!(matches!(bad(&SWEEP.replace("trials = 10", "trials = 0")), ConfigError::Invalid { .. }));
        assert!(matches!(bad(&SWEEP.replace("L = [8, 16]", "L = []")), ConfigError::Invalid { .. }));
        assert!(matches!(bad(&SWEEP.replace("T = linear(1)", "T = cubic(1)")), ConfigError::Invalid { .. }));
        assert!(matches!(bad("model = classical\nL = 8 8\n"), ConfigError::Syntax { line: 2, .. }));
        assert!(matches!(
            ExperimentConfig::from_text(Command::Run, SWEEP).unwrap_err(),
            ConfigError::UnknownKey(_) | ConfigError::Invalid { .. }
        ));
    }

    #[test]
    fn complement_rates() {
        let c = ExperimentConfig::from_text(Command::DecodeSweep, &SWEEP.replace("p_zz = 0.6", "p_zz = complement")).unwrap();
        assert_eq!(c.complement, vec!["p_zz".to_string()]);
        assert_eq!(c.grid()[1].rate("p_zz"), 0.95);
        assert_eq!(ExperimentConfig::from_text(Command::DecodeSweep, &c.to_text()).unwrap(), c);
    }

    #[test]
    fn t_rules() {
        assert_eq!(TRule::Linear(4.0).steps(8), 32);
        assert_eq!(TRule::Log(4.0).steps(512), 25);
        assert_eq!(TRule::Const(3.0).steps(100), 3);
    }
}
