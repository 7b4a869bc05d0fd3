//! `key = value` configuration file. Paths are resolved relative to the
//! config file's directory; `GEOQA_CONFIG` overrides the default path
//! when `--config` is not given.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use geoqa::formulation::{Pipeline, SuperlativeLexicon};
use geoqa::kb::{schema, KnowledgeBase, PrefixMap};
use geoqa::nlp::MorphLexicon;

#[derive(Debug, Clone)]
pub struct Config {
    pub schema_path: PathBuf,
    pub instance_paths: Vec<PathBuf>,
    pub lexicon_path: PathBuf,
    pub superlatives_path: PathBuf,
    pub gold_conll_path: Option<PathBuf>,
    pub prefixes: PrefixMap,
    pub seed: u64,
}

pub fn resolve_config_path(flag: Option<&Path>) -> PathBuf {
    match flag {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os("GEOQA_CONFIG")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("geoqa.conf")),
    }
}

pub fn load_config(path: &Path) -> Result<Config> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config `{}`", path.display()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let resolve = |p: &str| -> PathBuf {
        let p = Path::new(p.trim());
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            base.join(p)
        }
    };

    let mut schema_path = None;
    let mut instance_paths = Vec::new();
    let mut lexicon_path = None;
    let mut superlatives_path = None;
    let mut gold_conll_path = None;
    let mut prefixes = PrefixMap::standard();
    let mut seed = 7u64;

    for (idx, raw) in text.lines().enumerate() {
        // `#` only starts a comment at the head of a line — prefix IRIs
        // end in one
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .with_context(|| format!("config line {}: expected `key = value`", idx + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "schema" => schema_path = Some(resolve(value)),
            "instances" => {
                instance_paths.extend(value.split(',').map(resolve));
            }
            "lexicon" => lexicon_path = Some(resolve(value)),
            "superlatives" => superlatives_path = Some(resolve(value)),
            "gold_conll" => gold_conll_path = Some(resolve(value)),
            "seed" => {
                seed = value
                    .parse()
                    .with_context(|| format!("config line {}: bad seed", idx + 1))?
            }
            k if k.starts_with("prefix.") => {
                prefixes.insert(&k["prefix.".len()..], value);
            }
            other => bail!("config line {}: unknown key `{other}`", idx + 1),
        }
    }

    let config = Config {
        schema_path: schema_path.context("config is missing `schema`")?,
        instance_paths,
        lexicon_path: lexicon_path.context("config is missing `lexicon`")?,
        superlatives_path: superlatives_path.context("config is missing `superlatives`")?,
        gold_conll_path,
        prefixes,
        seed,
    };
    if config.instance_paths.is_empty() {
        bail!("config is missing `instances`");
    }
    for p in std::iter::once(&config.schema_path)
        .chain(&config.instance_paths)
        .chain([&config.lexicon_path, &config.superlatives_path])
        .chain(config.gold_conll_path.as_ref())
    {
        if !p.exists() {
            bail!("configured path does not exist: {}", p.display());
        }
    }
    Ok(config)
}

pub struct Loaded {
    pub pipeline: Pipeline,
    pub closure_added: usize,
    pub triples_before: usize,
}

pub fn load_pipeline(config: &Config) -> Result<Loaded> {
    let schema_text = std::fs::read_to_string(&config.schema_path)?;
    let schema = schema::parse_schema(&schema_text)
        .with_context(|| format!("schema `{}`", config.schema_path.display()))?;
    let mut kb = KnowledgeBase::new(schema, config.prefixes.clone());
    for path in &config.instance_paths {
        let text = std::fs::read_to_string(path)?;
        kb.load_instances(&text)
            .with_context(|| format!("instances `{}`", path.display()))?;
    }
    let triples_before = kb.len();
    let stats = kb.apply_closure();

    let lexicon = MorphLexicon::parse(&std::fs::read_to_string(&config.lexicon_path)?)
        .map_err(anyhow::Error::msg)?;
    let superlatives =
        SuperlativeLexicon::parse(&std::fs::read_to_string(&config.superlatives_path)?)
            .map_err(anyhow::Error::msg)?;

    let mut pipeline = Pipeline::new(kb, lexicon, superlatives);
    if let Some(path) = &config.gold_conll_path {
        let text = std::fs::read_to_string(path)?;
        pipeline
            .load_gold_parses(&text)
            .with_context(|| format!("gold parses `{}`", path.display()))?;
    }
    Ok(Loaded {
        pipeline,
        closure_added: stats.total(),
        triples_before,
    })
}
