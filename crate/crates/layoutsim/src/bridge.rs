//! Renderer bridge: turns raw HTML into a snapshot by running an external
//! command.
//!
//! The HTML is written to a temporary `.html` file whose path is appended
//! as the last argument of `command` (run through `sh -c`). The command
//! must print a snapshot document on stdout and exit 0.

use std::io::Write;
use std::time::Duration;

use layoutsim_core::PageSnapshot;
use tokio::process::Command;

use crate::json::{parse_snapshot, SnapshotError};

#[derive(Debug, Clone)]
pub struct BridgeConfig {
    pub command: String,
    pub timeout: Duration,
}

#[derive(Debug, thiserror::Error)]
pub enum BridgeError {
    #[error("failed to stage HTML: {0}")]
    Io(#[from] std::io::Error),
    #[error("renderer timed out after {0:?}")]
    Timeout(Duration),
    #[error("renderer exited with {status}: {stderr}")]
    Failed { status: std::process::ExitStatus, stderr: String },
    #[error("renderer output is not a valid snapshot: {0}")]
    Snapshot(#[from] SnapshotError),
}

pub async fn render(html: &str, config: &BridgeConfig) -> Result<PageSnapshot, BridgeError> {
    let mut file = tempfile::Builder::new().prefix("layoutsim-").suffix(".html").tempfile()?;
    file.write_all(html.as_bytes())?;
    file.flush()?;
    let path = file.path().to_path_buf();

    let child = Command::new("sh")
        .arg("-c")
        .arg(format!("{} \"$1\"", config.command))
        .arg("layoutsim-bridge")
        .arg(&path)
        .kill_on_drop(true)
        .output();
    let output = tokio::time::timeout(config.timeout, child)
        .await
        .map_err(|_| BridgeError::Timeout(config.timeout))??;
    if !output.status.success() {
        return Err(BridgeError::Failed {
            status: output.status,
            stderr: String::from_utf8_lossy(&output.stderr).trim().to_string(),
        });
    }
    Ok(parse_snapshot(&output.stdout)?)
}
