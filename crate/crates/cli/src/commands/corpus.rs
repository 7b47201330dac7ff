use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;
use smtwb::cleaning::{self, CleaningConfig, ScriptClass};
use smtwb::corpus::{Dictionary, ParallelCorpus};
use smtwb::tagged::{self, ParseOptions, TextEncoding};

use crate::config::PipelineConfig;
use crate::error::{invalid, CliResult, Invalid};
use crate::io::{self, Output};

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Source-side text, one segment per line
    #[arg(long)]
    pub src: PathBuf,
    /// Target-side text, line-parallel with --src
    #[arg(long)]
    pub tgt: PathBuf,
    /// Reference dictionary (first field of each line) for the coverage report
    #[arg(long)]
    pub dict: Option<PathBuf>,
    #[arg(long, default_value = "src")]
    pub src_lang: String,
    #[arg(long, default_value = "tgt")]
    pub tgt_lang: String,
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long)]
    pub max_ratio: Option<f64>,
    #[arg(long)]
    pub min_block: Option<usize>,
    /// Allowed scripts, comma separated (e.g. latin,greek)
    #[arg(long, value_delimiter = ',')]
    pub scripts: Option<Vec<ScriptClass>>,
    #[arg(long)]
    pub foreign_run: Option<usize>,
    /// Lowercase tokens for duplication and dictionary matching
    #[arg(long)]
    pub lowercase: bool,
    /// Write the structured report to this file
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CleanArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long)]
    pub out_src: PathBuf,
    #[arg(long)]
    pub out_tgt: PathBuf,
    /// Keep symbol-noise tokens
    #[arg(long)]
    pub keep_noise: bool,
    /// Keep pairs containing foreign-script runs
    #[arg(long)]
    pub keep_foreign: bool,
}

fn settings(args: &CorpusArgs, cfg: &PipelineConfig) -> CliResult<CleaningConfig> {
    let mut c = cfg.clean.clone();
    if let Some(v) = args.max_len {
        c.max_len = v;
    }
    if let Some(v) = args.max_ratio {
        c.max_ratio = v;
    }
    if let Some(v) = args.min_block {
        c.min_block = v;
    }
    if let Some(v) = &args.scripts {
        c.scripts = v.iter().copied().collect();
    }
    if let Some(v) = args.foreign_run {
        c.foreign_run = v;
    }
    if args.lowercase {
        c.scheme.lowercase = true;
    }
    c.validate().invalid("cleaning settings")?;
    Ok(c)
}

fn load(args: &CorpusArgs, settings: &CleaningConfig) -> CliResult<(ParallelCorpus, Option<Dictionary>)> {
    let src = io::lines(&args.src)?;
    let tgt = io::lines(&args.tgt)?;
    let corpus = ParallelCorpus::from_lines(&src, &tgt, &args.src_lang, &args.tgt_lang)
        .invalid(format!("pairing {} with {}", args.src.display(), args.tgt.display()))?;
    let dict = match &args.dict {
        Some(p) => Some(Dictionary::from_lines(&io::lines(p)?, &settings.scheme)),
        None => None,
    };
    Ok((corpus, dict))
}

pub fn diagnose(args: &CorpusArgs, cfg: &PipelineConfig, out: Output) -> CliResult {
    let settings = settings(args, cfg)?;
    let (corpus, dict) = load(args, &settings)?;
    let report = cleaning::diagnose(&corpus, dict.as_ref(), &settings).invalid("diagnosis")?;
    if let Some(p) = &args.report {
        io::write_json(p, &report)?;
    }
    out.emit(&report.render(), &report)
}

pub fn clean(args: &CleanArgs, cfg: &PipelineConfig, out: Output) -> CliResult {
    let mut settings = settings(&args.corpus, cfg)?;
    if args.keep_noise {
        settings.remove_noise = false;
    }
    if args.keep_foreign {
        settings.drop_foreign = false;
    }
    let (corpus, dict) = load(&args.corpus, &settings)?;
    let (cleaned, report) = cleaning::clean(&corpus, dict.as_ref(), &settings).invalid("cleaning")?;
    io::write(&args.out_src, &cleaned.source_lines())?;
    io::write(&args.out_tgt, &cleaned.target_lines())?;
    if let Some(p) = &args.corpus.report {
        io::write_json(p, &report)?;
    }
    let text = format!("{}kept {} of {} pairs\n", report.render(), cleaned.len(), corpus.len());
    out.emit(&text, &report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtractMode {
    /// base forms
    Base,
    /// SVO-reordered surface forms
    Svo,
    /// SVO-reordered base forms
    Both,
    /// all three
    All,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Tagged XML (orth/lex/base/ctag)
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub mode: ExtractMode,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// File name stem for the outputs
    #[arg(long, default_value = "corpus")]
    pub prefix: String,
    /// Input encoding, overriding the XML declaration (utf-8, windows-1250)
    #[arg(long)]
    pub encoding: Option<String>,
    /// Line-boundary marker token
    #[arg(long)]
    pub marker: Option<String>,
    /// The input has no line-boundary markers
    #[arg(long, conflicts_with = "marker")]
    pub no_marker: bool,
}

#[derive(Serialize)]
struct ExtractSummary<'a> {
    sentences: usize,
    files: Vec<String>,
    svo_fallbacks: &'a [(usize, Vec<tagged::SvoFlag>)],
}

pub fn extract(args: &ExtractArgs, cfg: &PipelineConfig, out: Output) -> CliResult {
    io::require_file(&args.input)?;
    let encoding = match args.encoding.as_ref().or(cfg.extract.encoding.as_ref()) {
        Some(e) => Some(e.parse::<TextEncoding>().map_err(invalid)?),
        None => None,
    };
    let marker = if args.no_marker {
        None
    } else {
        Some(
            args.marker
                .clone()
                .or_else(|| cfg.extract.marker.clone())
                .unwrap_or_else(|| tagged::DEFAULT_MARKER.to_owned()),
        )
    };
    let bytes = std::fs::read(&args.input).invalid(format!("reading {}", args.input.display()))?;
    let sentences = tagged::parse_tagged_xml(&bytes, &ParseOptions { encoding, marker })
        .invalid(format!("parsing {}", args.input.display()))?;
    let derived = tagged::build_derived_corpora(&sentences);
    std::fs::create_dir_all(&args.out_dir).map_err(anyhow::Error::new)?;
    let mut files = Vec::new();
    let mut put = |suffix: &str, lines: &[String]| -> CliResult {
        let path: PathBuf = Path::new(&args.out_dir).join(format!("{}.{suffix}", args.prefix));
        io::write(&path, lines)?;
        files.push(path.display().to_string());
        Ok(())
    };
    put("surface", &derived.surface)?;
    if matches!(args.mode, ExtractMode::Base | ExtractMode::All) {
        put("base", &derived.base)?;
    }
    if matches!(args.mode, ExtractMode::Svo | ExtractMode::All) {
        put("svo", &derived.svo)?;
    }
    if matches!(args.mode, ExtractMode::Both | ExtractMode::All) {
        put("base-svo", &derived.base_svo)?;
    }
    let summary = ExtractSummary { sentences: sentences.len(), files, svo_fallbacks: &derived.svo_fallbacks };
    let mut text = format!("sentences: {}\n", summary.sentences);
    text.push_str(&format!(
        "SVO left in original order: {} (no subject, verb or object, or several verb groups)\n",
        summary.svo_fallbacks.len()
    ));
    for f in &summary.files {
        text.push_str(&format!("wrote {f}\n"));
    }
    out.emit(&text, &summary)
}
