use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::Path;
use std::sync::Mutex;

use seqgrade_core::GradedAttempt;

/// Append-only NDJSON file of graded attempts. One writer, one line per
/// attempt.
#[derive(Debug)]
pub struct AttemptLog {
    file: Mutex<File>,
}

impl AttemptLog {
    pub fn open(path: &Path) -> io::Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(AttemptLog {
            file: Mutex::new(file),
        })
    }

    pub fn append(&self, attempt: &GradedAttempt) -> io::Result<()> {
        let mut line = serde_json::to_vec(attempt)?;
        line.push(b'\n');
        let mut file = self.file.lock().unwrap_or_else(|e| e.into_inner());
        file.write_all(&line)?;
        file.flush()
    }
}
