//! Experiment configuration from flags and `key=value` files.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Parser;
use thetakit::finmod::catalog;
use thetakit::guard;
use thetakit::heisenberg::HeisenbergGroup;
use thetakit::localfield::{LangTateModel, TameLocalModel};

use crate::error::{ConfigError, Origin};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Experiment {
    CohomologySurvey,
    HeisenbergVerify,
    ObstructionTable,
    SymbolTable,
    Prop28Search,
    LangTateIndex,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::CohomologySurvey,
        Experiment::HeisenbergVerify,
        Experiment::ObstructionTable,
        Experiment::SymbolTable,
        Experiment::Prop28Search,
        Experiment::LangTateIndex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::CohomologySurvey => "cohomology-survey",
            Experiment::HeisenbergVerify => "heisenberg-verify",
            Experiment::ObstructionTable => "obstruction-table",
            Experiment::SymbolTable => "symbol-table",
            Experiment::Prop28Search => "prop28-search",
            Experiment::LangTateIndex => "lang-tate-index",
        }
    }

    /// Parameter keys with their kind and default (`None` = required).
    fn keys(self) -> &'static [(&'static str, Kind, Option<&'static str>)] {
        match self {
            Experiment::CohomologySurvey => &[
                ("groups", Kind::NameList, Some("all")),
                ("max-group", Kind::Int, Some("12")),
                ("max-module", Kind::Int, Some("16")),
            ],
            Experiment::HeisenbergVerify => {
                &[("n", Kind::Int, None), ("g", Kind::Int, None), ("automorphisms", Kind::Bool, Some("true"))]
            }
            Experiment::ObstructionTable => &[("instances", Kind::NameList, Some("all"))],
            Experiment::SymbolTable => &[("p", Kind::Int, None), ("n", Kind::Int, None)],
            Experiment::Prop28Search => &[
                ("p", Kind::Int, None),
                ("n", Kind::Int, None),
                ("g", Kind::Int, Some("1")),
                ("subgroup", Kind::Subgroup, Some("zero")),
            ],
            Experiment::LangTateIndex => &[("n", Kind::Int, None), ("g", Kind::Int, None)],
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        Experiment::ALL.into_iter().find(|e| e.name() == s).ok_or(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Int,
    Bool,
    NameList,
    Subgroup,
}

impl Kind {
    fn expected(self) -> &'static str {
        match self {
            Kind::Int => "a non-negative integer",
            Kind::Bool => "true or false",
            Kind::NameList => "`all` or a comma-separated list of names",
            Kind::Subgroup => "`zero` or `all`",
        }
    }

    fn accepts(self, value: &str) -> bool {
        match self {
            Kind::Int => value.parse::<u64>().is_ok(),
            Kind::Bool => matches!(value, "true" | "false"),
            Kind::NameList => true,
            Kind::Subgroup => matches!(value, "zero" | "all"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(()),
        }
    }
}

/// Command-line flags. Every parameter flag may also be given as a
/// `key=value` line in the file passed to `--config`; flags win.
#[derive(Debug, Default, Parser)]
#[command(name = "thetakit", version, about = "Run a thetakit experiment and report its verdicts")]
pub struct Cli {
    /// Plain-text config file: one key=value per line, `#` comments
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// cohomology-survey, heisenberg-verify, obstruction-table, symbol-table, prop28-search, lang-tate-index
    #[arg(long)]
    pub experiment: Option<String>,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    /// Catalog group names for cohomology-survey
    #[arg(long)]
    pub groups: Option<String>,
    #[arg(long)]
    pub max_group: Option<String>,
    #[arg(long)]
    pub max_module: Option<String>,
    /// Catalog instance names for obstruction-table
    #[arg(long)]
    pub instances: Option<String>,
    /// Search subgroup for prop28-search: zero or all
    #[arg(long)]
    pub subgroup: Option<String>,
    /// Whether heisenberg-verify enumerates the centrally trivial automorphisms
    #[arg(long)]
    pub automorphisms: Option<String>,
    /// text, json or csv
    #[arg(long)]
    pub format: Option<String>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave the timestamp out of the report
    #[arg(long)]
    pub no_timestamp: bool,
}

impl Cli {
    fn flag_values(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let pairs: [(&'static str, &Option<String>); 11] = [
            ("experiment", &self.experiment),
            ("p", &self.p),
            ("n", &self.n),
            ("g", &self.g),
            ("groups", &self.groups),
            ("max-group", &self.max_group),
            ("max-module", &self.max_module),
            ("instances", &self.instances),
            ("subgroup", &self.subgroup),
            ("automorphisms", &self.automorphisms),
            ("format", &self.format),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                out.push((k, v.clone()));
            }
        }
        if let Some(path) = &self.out {
            out.push(("out", path.display().to_string()));
        }
        if self.no_timestamp {
            out.push(("no-timestamp", "true".into()));
        }
        out
    }
}

/// A validated experiment configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    /// Experiment parameters with defaults filled in.
    pub parameters: BTreeMap<String, String>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub timestamp: bool,
}

impl ExperimentConfig {
    pub fn int(&self, key: &str) -> u64 {
        self.parameters[key].parse().expect("validated integer")
    }

    pub fn flag(&self, key: &str) -> bool {
        self.parameters[key] == "true"
    }

    pub fn get(&self, key: &str) -> &str {
        &self.parameters[key]
    }

    /// `None` for `all`, otherwise the listed names (possibly none).
    pub fn names(&self, key: &str) -> Option<Vec<String>> {
        let v = self.get(key);
        if v == "all" {
            return None;
        }
        Some(v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect())
    }
}

/// Parses `key=value` lines, skipping blanks and `#` comments.
pub fn parse_config_text(text: &str, file: &Path) -> Result<Vec<(String, String, Origin)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let origin = Origin::Line { file: file.to_path_buf(), line: i + 1 };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError::Malformed { origin, text: raw.to_string() });
        };
        let key = k.trim();
        if key.is_empty() {
            return Err(ConfigError::Malformed { origin, text: raw.to_string() });
        }
        out.push((key.to_string(), v.trim().to_string(), origin));
    }
    Ok(out)
}

/// Builds a config from parsed flags, reading `--config` if given.
pub fn parse_config(cli: &Cli) -> Result<ExperimentConfig, ConfigError> {
    let mut entries = Vec::new();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.clone(), source })?;
        entries = parse_config_text(&text, path)?;
    }
    for (k, v) in cli.flag_values() {
        entries.push((k.to_string(), v, Origin::Flag(k.to_string())));
    }
    build(entries)
}

/// Builds a config from `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<ExperimentConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| ConfigError::Usage(e.to_string()))?;
    parse_config(&cli)
}

const COMMON_KEYS: [&str; 4] = ["experiment", "format", "out", "no-timestamp"];

/// Later entries override earlier ones, so flags (appended last) win.
fn build(entries: Vec<(String, String, Origin)>) -> Result<ExperimentConfig, ConfigError> {
    let mut latest: BTreeMap<String, (String, Origin)> = BTreeMap::new();
    for (k, v, o) in entries {
        latest.insert(k, (v, o));
    }
    let (name, origin) = latest.remove("experiment").ok_or(ConfigError::MissingExperiment)?;
    let experiment =
        name.parse::<Experiment>().map_err(|_| ConfigError::UnknownExperiment { name: name.clone(), origin })?;
    let keys = experiment.keys();
    let mut parameters = BTreeMap::new();
    let mut format = Format::default();
    let mut out = None;
    let mut timestamp = true;
    for (key, (value, origin)) in &latest {
        let type_error = |expected: &str| ConfigError::Type {
            key: key.clone(),
            value: value.clone(),
            expected: expected.to_string(),
            origin: origin.clone(),
        };
        match key.as_str() {
            "format" => format = value.parse().map_err(|_| type_error("text, json or csv"))?,
            "out" => out = Some(PathBuf::from(value)),
            "no-timestamp" => {
                timestamp = match value.as_str() {
                    "true" => false,
                    "false" => true,
                    _ => return Err(type_error(Kind::Bool.expected())),
                }
            }
            _ => {
                let Some(&(_, kind, _)) = keys.iter().find(|(k, _, _)| k == key) else {
                    debug_assert!(!COMMON_KEYS.contains(&key.as_str()));
                    return Err(ConfigError::UnknownKey {
                        key: key.clone(),
                        experiment: experiment.to_string(),
                        origin: origin.clone(),
                    });
                };
                if !kind.accepts(value) {
                    return Err(type_error(kind.expected()));
                }
                parameters.insert(key.clone(), value.clone());
            }
        }
    }
    for &(key, _, default) in keys {
        if !parameters.contains_key(key) {
            let Some(d) = default else {
                return Err(ConfigError::MissingKey { key: key.to_string(), experiment: experiment.to_string() });
            };
            parameters.insert(key.to_string(), d.to_string());
        }
    }
    let config = ExperimentConfig { experiment, parameters, format, out, timestamp };
    validate(&config, &latest)?;
    Ok(config)
}

/// Range and size checks against the library's models and guards.
fn validate(config: &ExperimentConfig, origins: &BTreeMap<String, (String, Origin)>) -> Result<(), ConfigError> {
    let out_of_range = |key: &str, expected: &str| {
        let (value, origin) =
            origins.get(key).cloned().unwrap_or_else(|| (config.get(key).to_string(), Origin::Flag(key.into())));
        ConfigError::Type { key: key.to_string(), value, expected: expected.to_string(), origin }
    };
    let small = |key: &str, lo: u64, hi: u64| -> Result<u64, ConfigError> {
        let v = config.int(key);
        if v < lo || v > hi {
            return Err(out_of_range(key, &format!("an integer in {lo}..={hi}")));
        }
        Ok(v)
    };
    match config.experiment {
        Experiment::CohomologySurvey => {
            if let Some(names) = config.names("groups") {
                for name in names {
                    if catalog::group_by_name(&name).is_none() {
                        return Err(out_of_range("groups", "catalog group names (C1..C8, V4, S3, D4, A4)"));
                    }
                }
            }
            small("max-group", 1, 24)?;
            small("max-module", 1, 256)?;
        }
        Experiment::HeisenbergVerify => {
            let n = small("n", 2, 1 << 16)? as u32;
            let g = small("g", 1, 4)? as usize;
            guard::check("heisenberg_order", guard::pow_count(n as usize, 2 * g + 1))?;
            HeisenbergGroup::standard(n, g)?;
        }
        Experiment::ObstructionTable => {
            if let Some(names) = config.names("instances") {
                let known: Vec<String> =
                    thetakit::obstruction::catalog::instances()?.into_iter().map(|i| i.name).collect();
                if names.iter().any(|n| !known.contains(n)) {
                    return Err(out_of_range("instances", &format!("instance names among {}", known.join(", "))));
                }
            }
        }
        Experiment::SymbolTable => {
            let p = small("p", 3, thetakit::localfield::MAX_PRIME as u64)? as u32;
            let n = small("n", 2, p as u64 - 1)? as u32;
            TameLocalModel::new(p, n)?;
            guard::check("symbol_table", guard::pow_count(n as usize, 4))?;
        }
        Experiment::Prop28Search => {
            let p = small("p", 3, thetakit::localfield::MAX_PRIME as u64)? as u32;
            let n = small("n", 2, p as u64 - 1)? as u32;
            let g = small("g", 1, 4)? as usize;
            TameLocalModel::new(p, n)?;
            let space = guard::pow_count(n as usize, 4 * g);
            let h = if config.get("subgroup") == "all" { space } else { 1 };
            guard::check("prop28_search", space.saturating_mul(h))?;
        }
        Experiment::LangTateIndex => {
            let n = small("n", 2, 1 << 16)? as u32;
            let g = small("g", 1, 4)? as usize;
            LangTateModel::new(n, g)?;
            guard::check("lang_tate_index", guard::pow_count(n as usize, 2 * g))?;
        }
    }
    Ok(())
}
