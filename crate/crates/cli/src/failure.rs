use std::path::PathBuf;

use thiserror::Error;

/// Anything that ends a run with a nonzero status.
#[derive(Debug, Error)]
pub enum Failure {
    #[error("{message}")]
    Config { kind: &'static str, message: String },
    #[error(transparent)]
    Engine(#[from] mapspace_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl Failure {
    pub fn config(kind: &'static str, message: impl Into<String>) -> Failure {
        Failure::Config {
            kind,
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Failure {
        Failure::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        use mapspace_core::Error as E;
        match self {
            Failure::ChecksFailed(_) => 1,
            Failure::Config { .. } => 2,
            Failure::Engine(E::InfiniteBasis(_) | E::CutoffTooTight { .. }) => 3,
            Failure::Engine(_) => 2,
            Failure::Io { .. } => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Config { kind, .. } => kind,
            Failure::Engine(e) => e.kind(),
            Failure::Io { .. } => "Io",
            Failure::ChecksFailed(_) => "CheckFailed",
        }
    }

    /// `mapspace: error exit=<code> kind=<Kind>: <message>` on one line.
    pub fn diagnostic(&self) -> String {
        let message = self.to_string().replace(['\n', '\r'], " ");
        format!(
            "mapspace: error exit={} kind={}: {}",
            self.exit_code(),
            self.kind(),
            message
        )
    }
}
