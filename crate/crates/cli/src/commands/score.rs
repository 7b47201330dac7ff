use std::path::PathBuf;

use clap::Args;
use smtwb::metrics::{self, StemmerKind};

use crate::config::PipelineConfig;
use crate::error::{CliResult, Invalid};
use crate::io::{self, Output};

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// System output, one sentence per line
    #[arg(long)]
    pub hyp: PathBuf,
    /// Reference translation; repeat for multiple references
    #[arg(long = "ref", required = true, num_args = 1..)]
    pub refs: Vec<PathBuf>,
    #[arg(long)]
    pub case_sensitive: bool,
    /// Highest BLEU n-gram order
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Standard METEOR fragmentation penalty `0.5 (C/M)^3`
    #[arg(long)]
    pub meteor_cubic: bool,
    /// Exhaustive TER search for pairs up to this many tokens
    #[arg(long)]
    pub ter_exhaustive_max_len: Option<usize>,
    #[arg(long, value_enum)]
    pub stemmer: Option<StemmerArg>,
    /// Row label in the table
    #[arg(long, default_value = "system")]
    pub label: String,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum StemmerArg {
    None,
    English,
}

pub fn score(args: &ScoreArgs, cfg: &PipelineConfig, out: Output) -> CliResult {
    let mut c = cfg.score.clone();
    c.case_sensitive |= args.case_sensitive;
    c.meteor_cubic |= args.meteor_cubic;
    if let Some(n) = args.max_n {
        c.max_n = n;
    }
    if let Some(n) = args.ter_exhaustive_max_len {
        c.ter_exhaustive_max_len = n;
    }
    if let Some(s) = args.stemmer {
        c.stemmer = match s {
            StemmerArg::None => StemmerKind::None,
            StemmerArg::English => StemmerKind::English,
        };
    }
    let hyp = io::lines(&args.hyp)?;
    let refs = args.refs.iter().map(|p| io::lines(p)).collect::<CliResult<Vec<_>>>()?;
    let report = metrics::score_all(&hyp, &refs, &c).invalid("scoring")?;
    if let Some(p) = &args.report {
        io::write_json(p, &report)?;
    }
    out.emit(&report.render(&args.label), &report)
}
