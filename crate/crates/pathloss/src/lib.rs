//! File formats, reports and the `pathloss` command line on top of
//! [`pathloss_core`].

use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub mod cli;
pub mod format;
pub mod report;

pub use format::FormatError;
pub use report::{ReportBundle, ReportOptions};

#[derive(Debug, Error)]
pub enum ToolError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] pathloss_core::Error),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl ToolError {
    /// 1 usage, 2 data validation or file access, 3 degenerate computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            ToolError::Usage(_) => 1,
            ToolError::Core(e) | ToolError::Format(FormatError::Invalid(e))
                if e.is_degenerate() =>
            {
                3
            }
            ToolError::Format(_) | ToolError::Core(_) | ToolError::Write { .. } => 2,
        }
    }
}
