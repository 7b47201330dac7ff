use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use smtwb::alignment::{self, AlignmentMatrix, Heuristic, MsdDirection, OrientationCounts};

use crate::config::PipelineConfig;
use crate::error::{invalid, CliResult, Invalid};
use crate::io::{self, Output};

#[derive(Debug, Args)]
pub struct LengthArgs {
    /// Source text, for sentence lengths (otherwise implied by the links)
    #[arg(long, requires = "tgt")]
    pub src: Option<PathBuf>,
    /// Target text, for sentence lengths
    #[arg(long, requires = "src")]
    pub tgt: Option<PathBuf>,
}

impl LengthArgs {
    fn lengths(&self) -> CliResult<Option<Vec<(usize, usize)>>> {
        match (&self.src, &self.tgt) {
            (Some(s), Some(t)) => {
                let s = io::lines(s)?;
                let t = io::lines(t)?;
                if s.len() != t.len() {
                    return Err(invalid(format!("source has {} lines, target {}", s.len(), t.len())));
                }
                Ok(Some(
                    s.iter()
                        .zip(&t)
                        .map(|(a, b)| (a.split_whitespace().count(), b.split_whitespace().count()))
                        .collect(),
                ))
            }
            _ => Ok(None),
        }
    }
}

#[derive(Debug, Args)]
pub struct SymmetrizeArgs {
    /// Source-to-target alignment, `i-j` pairs per line
    #[arg(long)]
    pub fwd: PathBuf,
    /// Target-to-source alignment, `j-i` pairs per line
    #[arg(long)]
    pub rev: PathBuf,
    #[arg(long)]
    pub heuristic: Option<Heuristic>,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub lengths: LengthArgs,
}

#[derive(Serialize)]
struct SymmetrizeSummary {
    heuristic: Heuristic,
    sentences: usize,
    links: usize,
}

pub fn symmetrize(args: &SymmetrizeArgs, cfg: &PipelineConfig, out: Output) -> CliResult {
    let heuristic = args.heuristic.unwrap_or(cfg.symmetrize.heuristic);
    let fwd = io::lines(&args.fwd)?;
    let rev = io::lines(&args.rev)?;
    if fwd.len() != rev.len() {
        return Err(invalid(format!("{} forward lines but {} reverse lines", fwd.len(), rev.len())));
    }
    let lengths = args.lengths.lengths()?;
    if let Some(l) = &lengths {
        if l.len() != fwd.len() {
            return Err(invalid(format!("{} alignment lines but {} sentence pairs", fwd.len(), l.len())));
        }
    }
    let rows: Vec<(usize, &String, &String)> = fwd.iter().zip(&rev).enumerate().map(|(k, (a, b))| (k, a, b)).collect();
    let results = smtwb::exec::try_map(&rows, |&(k, f, r)| -> Result<AlignmentMatrix, anyhow::Error> {
        let (s, t) = match &lengths {
            Some(l) => l[k],
            None => {
                let a = alignment::implied_dimensions(f)?;
                let b = alignment::implied_dimensions(r)?;
                (a.0.max(b.1), a.1.max(b.0))
            }
        };
        let context = || format!("line {}", k + 1);
        let a = AlignmentMatrix::parse(f, s, t).map_err(|e| anyhow::Error::new(e).context(context()))?;
        let b = AlignmentMatrix::parse(r, t, s).map_err(|e| anyhow::Error::new(e).context(context()))?;
        Ok(alignment::symmetrize(&a, &b, heuristic)?)
    })
    .invalid("symmetrizing")?;
    let lines: Vec<String> = results.iter().map(|m| m.to_string()).collect();
    io::write(&args.out, &lines)?;
    let summary = SymmetrizeSummary { heuristic, sentences: lines.len(), links: results.iter().map(|m| m.len()).sum() };
    let text = format!(
        "{}: {} sentence pairs, {} links -> {}\n",
        heuristic,
        summary.sentences,
        summary.links,
        args.out.display()
    );
    out.emit(&text, &summary)
}

#[derive(Debug, Args)]
pub struct MsdArgs {
    /// Symmetrized alignment, `i-j` pairs per line
    #[arg(long)]
    pub alignment: PathBuf,
    /// Also classify against the following unit
    #[arg(long)]
    pub bidirectional: bool,
    #[command(flatten)]
    pub lengths: LengthArgs,
}

pub fn msd(args: &MsdArgs, out: Output) -> CliResult {
    let lines = io::lines(&args.alignment)?;
    let lengths = args.lengths.lengths()?;
    let direction = if args.bidirectional { MsdDirection::Bidirectional } else { MsdDirection::Forward };
    let rows: Vec<(usize, &String)> = lines.iter().enumerate().collect();
    let per = smtwb::exec::try_map(&rows, |&(k, line)| -> Result<OrientationCounts, anyhow::Error> {
        let (s, t) = match &lengths {
            Some(l) => *l.get(k).ok_or_else(|| anyhow::anyhow!("no sentence pair for line {}", k + 1))?,
            None => alignment::implied_dimensions(line)?,
        };
        let m = AlignmentMatrix::parse(line, s, t).map_err(|e| anyhow::Error::new(e).context(format!("line {}", k + 1)))?;
        Ok(alignment::extract_msd(&m, direction))
    })
    .invalid(format!("reading {}", args.alignment.display()))?;
    let mut total = OrientationCounts::new(direction);
    for c in &per {
        total.add(c);
    }
    let records = total.records();
    let mut text = String::from("orientation  relative-to  count  probability\n");
    for r in &records {
        text.push_str(&format!("{:<12} {:<12} {:>6}  {:.4}\n", r.orientation.to_string(), r.relative_to, r.count, r.probability));
    }
    out.emit(&text, &records)
}
