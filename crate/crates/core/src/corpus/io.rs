use std::fs;
use std::io::Write;
use std::path::Path;

use super::CorpusError;

/// Reads a UTF-8, one-sentence-per-line file. A trailing newline does not
/// produce an extra empty line; `\r\n` endings are accepted.
pub fn read_lines(path: &Path) -> Result<Vec<String>, CorpusError> {
    let bytes = fs::read(path).map_err(|source| CorpusError::Io {
        path: path.to_owned(),
        source,
    })?;
    split_lines(&bytes).map_err(|line| CorpusError::InvalidUtf8 {
        path: path.to_owned(),
        line,
    })
}

pub(crate) fn split_lines(bytes: &[u8]) -> Result<Vec<String>, usize> {
    if bytes.is_empty() {
        return Ok(Vec::new());
    }
    let body = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    body.split(|&b| b == b'\n')
        .enumerate()
        .map(|(i, raw)| {
            let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
            String::from_utf8(raw.to_vec()).map_err(|_| i + 1)
        })
        .collect()
}

/// Writes lines LF-terminated.
pub fn write_lines<S: AsRef<str>>(path: &Path, lines: &[S]) -> Result<(), CorpusError> {
    let io_err = |source| CorpusError::Io {
        path: path.to_owned(),
        source,
    };
    let mut f = std::io::BufWriter::new(fs::File::create(path).map_err(io_err)?);
    for l in lines {
        f.write_all(l.as_ref().as_bytes()).map_err(io_err)?;
        f.write_all(b"\n").map_err(io_err)?;
    }
    f.flush().map_err(io_err)
}
