use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use specmoment::{PlanOptions, SpectralModel, TestFunction};

use crate::{CliError, Common, Format};

/// A descriptor given either as `name:key=val,...` or as an object with a
/// `name` field and numeric parameters.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Descriptor {
    Text(String),
    Fields {
        name: String,
        #[serde(flatten)]
        params: BTreeMap<String, f64>,
    },
}

impl Descriptor {
    fn render(&self) -> String {
        match self {
            Descriptor::Text(s) => s.clone(),
            Descriptor::Fields { name, params } => {
                let kv: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                if kv.is_empty() {
                    name.clone()
                } else {
                    format!("{name}:{}", kv.join(","))
                }
            }
        }
    }
}

/// Contents of a `--config` file. Command-line flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub model: Option<Descriptor>,
    pub function: Option<Descriptor>,
    pub tau: Option<f64>,
    pub rho1: Option<f64>,
    pub rho2: Option<f64>,
    pub n_nodes: Option<usize>,
    pub laguerre_order: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Everything a subcommand needs after merging flags and config.
pub struct Resolved {
    pub model: SpectralModel,
    pub function: Option<TestFunction>,
    pub opts: PlanOptions,
    pub format: Format,
}

fn function_descriptor(common: &Common, file: &FileConfig) -> Option<String> {
    let base = match (&common.function, &file.function) {
        (Some(s), _) => s.clone(),
        (None, Some(d)) => d.render(),
        (None, None) => return None,
    };
    let mut extra = Vec::new();
    if let Some(b) = common.band {
        extra.push(format!("band={b}"));
    }
    if let Some(t) = common.time {
        extra.push(format!("t={t}"));
    }
    if let Some(k) = common.k {
        extra.push(format!("k={k}"));
    }
    if extra.is_empty() {
        return Some(base);
    }
    let sep = if base.contains(':') { "," } else { ":" };
    Some(format!("{base}{sep}{}", extra.join(",")))
}

pub fn resolve(common: &Common) -> Result<Resolved, CliError> {
    let file = match &common.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let model_text = match (&common.model, &file.model) {
        (Some(s), _) => s.clone(),
        (None, Some(d)) => d.render(),
        (None, None) => return Err(CliError::Usage("--model is required".into())),
    };
    let model: SpectralModel = model_text.parse()?;
    let function = function_descriptor(common, &file)
        .map(|s| s.parse::<TestFunction>())
        .transpose()?;
    let mut opts = PlanOptions::default();
    opts.tau = common.tau.or(file.tau);
    opts.rho1 = common.rho1.or(file.rho1);
    opts.rho2 = common.rho2.or(file.rho2);
    opts.n_nodes = common.n_nodes.or(file.n_nodes);
    opts.laguerre_order = common.laguerre_order.or(file.laguerre_order);
    if let Some(tol) = common.tol.or(file.tol) {
        if !(tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
        opts.tol = tol;
    }
    let format = common.format.or(file.format).unwrap_or(Format::Plain);
    Ok(Resolved {
        model,
        function,
        opts,
        format,
    })
}

impl Resolved {
    pub fn require_function(&self) -> Result<&TestFunction, CliError> {
        self.function
            .as_ref()
            .ok_or_else(|| CliError::Usage("--function is required for this command".into()))
    }
}
