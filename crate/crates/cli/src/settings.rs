//! Flag/config-file/default resolution. Flags win over the file, the file
//! over built-in defaults.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Hurst exponent in (0, 1)
    #[arg(long = "H", global = true, value_name = "FLOAT")]
    pub h: Option<f64>,
    /// Horizon or comma-separated increasing grid
    #[arg(long = "T", global = true, value_name = "LIST", value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    /// Lemma parameter β (A2, A3, A5)
    #[arg(long, global = true, value_name = "FLOAT", allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// A2, A3, A4, A5, L1, L2 or L2_34
    #[arg(long, global = true, value_name = "ID")]
    pub lemma: Option<String>,
    #[arg(long, global = true, value_name = "INT")]
    pub paths: Option<usize>,
    /// Time steps per path, a power of two
    #[arg(long, global = true, value_name = "INT")]
    pub steps: Option<usize>,
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,
    /// Relative quadrature tolerance
    #[arg(long, global = true, value_name = "FLOAT")]
    pub tol: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Omit the generation timestamp
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Flat key=value file supplying defaults for any of the above
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub h: Option<f64>,
    pub t: Option<Vec<f64>>,
    pub beta: Option<f64>,
    pub lemma: Option<String>,
    pub paths: usize,
    pub steps: usize,
    pub seed: u64,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub timestamp: bool,
}

fn read_config(path: &Path) -> Result<HashMap<String, String>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let mut map = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("{}:{}: expected key=value", path.display(), i + 1);
        };
        map.insert(k.trim().trim_start_matches("--").to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| anyhow::anyhow!("config key {key}: cannot parse {v:?}"))
}

fn parse_grid(v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|s| parse::<f64>("T", s.trim())).collect()
}

impl Settings {
    pub fn resolve(flags: &Flags) -> Result<Self> {
        let file = match &flags.config {
            Some(p) => read_config(p)?,
            None => HashMap::new(),
        };
        if let Some(k) = file.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            bail!("unknown config key {k:?}");
        }
        let get = |k: &str| file.get(k).map(String::as_str);
        let format = match (flags.format, get("format")) {
            (Some(f), _) => Some(f),
            (None, Some(v)) => Some(Format::from_str(v, true).map_err(|e| anyhow::anyhow!("config key format: {e}"))?),
            (None, None) => None,
        };
        let no_ts_file = get("no-timestamp").map(|v| parse::<bool>("no-timestamp", v)).transpose()?.unwrap_or(false);
        Ok(Settings {
            h: flags.h.map(Ok).or_else(|| get("H").map(|v| parse("H", v))).transpose()?,
            t: flags.t.clone().map(Ok).or_else(|| get("T").map(parse_grid)).transpose()?,
            beta: flags.beta.map(Ok).or_else(|| get("beta").map(|v| parse("beta", v))).transpose()?,
            lemma: flags.lemma.clone().or_else(|| get("lemma").map(str::to_string)),
            paths: flags.paths.map(Ok).or_else(|| get("paths").map(|v| parse("paths", v))).transpose()?.unwrap_or(2000),
            steps: flags.steps.map(Ok).or_else(|| get("steps").map(|v| parse("steps", v))).transpose()?.unwrap_or(4096),
            seed: flags
                .seed
                .map(Ok)
                .or_else(|| get("seed").map(|v| parse("seed", v)))
                .transpose()?
                .unwrap_or(20_240_601),
            tol: flags.tol.map(Ok).or_else(|| get("tol").map(|v| parse("tol", v))).transpose()?,
            out: flags.out.clone().or_else(|| get("out").map(PathBuf::from)),
            format,
            timestamp: !(flags.no_timestamp || no_ts_file),
        })
    }
}

const KNOWN_KEYS: [&str; 11] =
    ["H", "T", "beta", "lemma", "paths", "steps", "seed", "tol", "out", "format", "no-timestamp"];
