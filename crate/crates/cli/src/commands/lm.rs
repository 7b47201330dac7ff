use std::io::{BufReader, BufWriter};
use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde::Serialize;
use smtwb::lm::{self, NGramModel, PerplexityResult};

use crate::config::{PipelineConfig, SmoothingName};
use crate::error::{invalid, CliResult, Invalid};
use crate::io::{self, Output};

#[derive(Debug, Subcommand)]
pub enum LmCommand {
    /// Estimate a back-off model from tokenized text and write it as ARPA
    Train(TrainArgs),
    /// Perplexity of a model on tokenized text
    Perplexity(PerplexityArgs),
    /// Linear interpolation of models with fixed weights
    Interpolate(InterpolateArgs),
    /// EM-tune interpolation weights on a development text
    Tune(TuneArgs),
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub text: PathBuf,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum)]
    pub smoothing: Option<SmoothingName>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PerplexityArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub text: PathBuf,
    /// Also report unsmoothed maximum-likelihood perplexity from counts of
    /// this training text (same order as the model)
    #[arg(long)]
    pub ml_train: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InterpolateArgs {
    /// ARPA models, in weight order
    #[arg(long = "model", required = true, num_args = 1..)]
    pub models: Vec<PathBuf>,
    /// Comma-separated weights summing to 1
    #[arg(long, value_delimiter = ',', required = true)]
    pub weights: Vec<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TuneArgs {
    #[arg(long = "model", required = true, num_args = 1..)]
    pub models: Vec<PathBuf>,
    #[arg(long)]
    pub dev: PathBuf,
    /// Write the interpolated model with the tuned weights
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cmd: &LmCommand, cfg: &PipelineConfig, out: Output) -> CliResult {
    match cmd {
        LmCommand::Train(a) => train(a, cfg, out),
        LmCommand::Perplexity(a) => perplexity(a, out),
        LmCommand::Interpolate(a) => interpolate(a, out),
        LmCommand::Tune(a) => tune(a, out),
    }
}

fn load_model(path: &PathBuf) -> CliResult<NGramModel> {
    io::require_file(path)?;
    let f = std::fs::File::open(path).map_err(anyhow::Error::new)?;
    lm::read_arpa(BufReader::new(f)).invalid(format!("reading model {}", path.display()))
}

fn save_model(path: &PathBuf, model: &NGramModel) -> CliResult {
    let f = std::fs::File::create(path)
        .map_err(|e| anyhow::Error::new(e).context(format!("creating {}", path.display())))?;
    lm::write_arpa(model, BufWriter::new(f)).map_err(|e| anyhow::Error::new(e).into())
}

#[derive(Serialize)]
struct ModelSummary {
    path: String,
    order: usize,
    smoothing: String,
    ngrams: Vec<usize>,
    notes: Vec<String>,
}

impl ModelSummary {
    fn of(path: &PathBuf, m: &NGramModel) -> Self {
        ModelSummary {
            path: path.display().to_string(),
            order: m.order(),
            smoothing: m.smoothing().to_string(),
            ngrams: (1..=m.order()).map(|n| m.ngram_count(n)).collect(),
            notes: m.notes().to_vec(),
        }
    }

    fn render(&self) -> String {
        let mut s = format!("{} ({}, order {})\n", self.path, self.smoothing, self.order);
        for (n, c) in self.ngrams.iter().enumerate() {
            s.push_str(&format!("  {}-grams: {c}\n", n + 1));
        }
        for note in &self.notes {
            s.push_str(&format!("  note: {note}\n"));
        }
        s
    }
}

fn train(args: &TrainArgs, cfg: &PipelineConfig, out: Output) -> CliResult {
    let order = args.order.unwrap_or(cfg.lm.order);
    let smoothing = args.smoothing.unwrap_or(cfg.lm.smoothing);
    let corpus = lm::split_sentences(&io::lines(&args.text)?);
    let counts = lm::count_ngrams(&corpus, order).invalid("counting n-grams")?;
    let model = match smoothing {
        SmoothingName::Kn => lm::estimate_kneser_ney(&counts),
        SmoothingName::Wb => lm::estimate_witten_bell(&counts),
    }
    .invalid(format!("estimating from {}", args.text.display()))?;
    save_model(&args.out, &model)?;
    let summary = ModelSummary::of(&args.out, &model);
    out.emit(&summary.render(), &summary)
}

#[derive(Serialize)]
struct PerplexityReport {
    model: String,
    text: String,
    smoothed: PerplexityResult,
    maximum_likelihood: Option<PerplexityResult>,
}

fn perplexity(args: &PerplexityArgs, out: Output) -> CliResult {
    let model = load_model(&args.model)?;
    let corpus = lm::split_sentences(&io::lines(&args.text)?);
    let smoothed = lm::perplexity(&model, &corpus);
    let maximum_likelihood = match &args.ml_train {
        Some(p) => {
            let train = lm::split_sentences(&io::lines(p)?);
            let counts = lm::count_ngrams(&train, model.order()).invalid("counting n-grams")?;
            Some(lm::perplexity_ml(&counts, &corpus))
        }
        None => None,
    };
    let mut text = smoothed.render();
    if let Some(ml) = &maximum_likelihood {
        text.push_str(&format!(
            "maximum likelihood: PPL {:.4} over {} tokens ({} zero-probability events skipped)\n",
            ml.perplexity, ml.token_count, ml.skipped
        ));
    }
    let report = PerplexityReport {
        model: args.model.display().to_string(),
        text: args.text.display().to_string(),
        smoothed,
        maximum_likelihood,
    };
    out.emit(&text, &report)
}

fn interpolate(args: &InterpolateArgs, out: Output) -> CliResult {
    if args.models.len() != args.weights.len() {
        return Err(invalid(format!("{} models but {} weights", args.models.len(), args.weights.len())));
    }
    let models = args.models.iter().map(load_model).collect::<CliResult<Vec<_>>>()?;
    let mixed = lm::interpolate(&models, &args.weights).invalid("interpolating")?;
    save_model(&args.out, &mixed)?;
    let summary = ModelSummary::of(&args.out, &mixed);
    out.emit(&summary.render(), &summary)
}

fn tune(args: &TuneArgs, out: Output) -> CliResult {
    let models = args.models.iter().map(load_model).collect::<CliResult<Vec<_>>>()?;
    let dev = lm::split_sentences(&io::lines(&args.dev)?);
    let result = lm::tune_weights(&models, &dev).invalid("tuning")?;
    if let Some(p) = &args.out {
        save_model(p, &lm::interpolate(&models, &normalized(&result.weights)).invalid("interpolating")?)?;
    }
    let mut text = String::new();
    for (m, w) in args.models.iter().zip(&result.weights) {
        text.push_str(&format!("{w:.6}\t{}\n", m.display()));
    }
    text.push_str(&format!(
        "{} EM iterations, dev log10 likelihood per token {:.6}\n",
        result.iterations,
        result.log_likelihoods.last().copied().unwrap_or(0.0)
    ));
    out.emit(&text, &result)
}

/// Removes floating-point drift so the weights pass the simplex check.
fn normalized(w: &[f64]) -> Vec<f64> {
    let s: f64 = w.iter().sum();
    w.iter().map(|x| x / s).collect()
}
