use fusionlim::Error;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Construction failures on user data are input errors unless a budget
    /// was hit.
    pub fn from_core_input(e: Error) -> Self {
        if is_budget(&e) {
            CliError::Core(e)
        } else {
            CliError::Input(e.to_string())
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if is_budget(e) => 3,
            CliError::Core(Error::DisconnectedRepGraph { .. } | Error::InvariantViolated(_)) => 1,
            _ => 2,
        }
    }
}

fn is_budget(e: &Error) -> bool {
    matches!(
        e,
        Error::ChainBudgetExceeded { .. }
            | Error::ResolutionBudgetExceeded { .. }
            | Error::MorphismBudgetExceeded { .. }
            | Error::BarBoundExceeded { .. }
            | Error::OrderBoundExceeded { .. }
    )
}
