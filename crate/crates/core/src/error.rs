use std::fmt;

use thiserror::Error;

use crate::reader::Position;

pub type Result<T> = std::result::Result<T, Error>;

/// Classification of evaluation failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalErrorKind {
    UnboundSymbol,
    NotAFunction,
    ArityMismatch,
    UnknownKeywordArgument,
    OddKeywordArguments,
    Overflow,
    TypeError,
    EcaseNoMatch,
    LazyThroughStrict,
    NoLazyVersion,
    RecursionLimit,
    MalformedForm,
    BadLambdaList,
}

impl EvalErrorKind {
    pub fn name(self) -> &'static str {
        match self {
            EvalErrorKind::UnboundSymbol => "unbound-symbol",
            EvalErrorKind::NotAFunction => "not-a-function",
            EvalErrorKind::ArityMismatch => "arity-mismatch",
            EvalErrorKind::UnknownKeywordArgument => "unknown-keyword-argument",
            EvalErrorKind::OddKeywordArguments => "odd-keyword-arguments",
            EvalErrorKind::Overflow => "overflow",
            EvalErrorKind::TypeError => "type-error",
            EvalErrorKind::EcaseNoMatch => "ecase-no-match",
            EvalErrorKind::LazyThroughStrict => "lazy-through-strict",
            EvalErrorKind::NoLazyVersion => "no-lazy-version",
            EvalErrorKind::RecursionLimit => "recursion-limit",
            EvalErrorKind::MalformedForm => "malformed-form",
            EvalErrorKind::BadLambdaList => "bad-lambda-list",
        }
    }
}

impl fmt::Display for EvalErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every failure the reader or the evaluator can report.
///
/// Positions on evaluation errors are filled in while the error unwinds, so
/// they point at the innermost form that was being evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("read error: {message}")]
    Read { message: String, position: Position },
    #[error("{kind}: {message}")]
    Eval {
        kind: EvalErrorKind,
        message: String,
        position: Option<Position>,
    },
    #[error("divergence: evaluation never produces a value")]
    Divergence { position: Option<Position> },
    #[error("step limit of {limit} exceeded")]
    StepLimitExceeded { limit: u64, position: Option<Position> },
}

impl Error {
    pub fn eval(kind: EvalErrorKind, message: impl Into<String>) -> Self {
        Error::Eval {
            kind,
            message: message.into(),
            position: None,
        }
    }

    pub fn read(message: impl Into<String>, position: Position) -> Self {
        Error::Read {
            message: message.into(),
            position,
        }
    }

    /// Short name for the error class, used in diagnostics.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Error::Read { .. } => "read-error",
            Error::Eval { kind, .. } => kind.name(),
            Error::Divergence { .. } => "divergence",
            Error::StepLimitExceeded { .. } => "step-limit-exceeded",
        }
    }

    pub fn eval_kind(&self) -> Option<EvalErrorKind> {
        match self {
            Error::Eval { kind, .. } => Some(*kind),
            _ => None,
        }
    }

    pub fn is_divergence(&self) -> bool {
        matches!(self, Error::Divergence { .. })
    }

    pub fn is_step_limit(&self) -> bool {
        matches!(self, Error::StepLimitExceeded { .. })
    }

    pub fn position(&self) -> Option<Position> {
        match self {
            Error::Read { position, .. } => Some(*position),
            Error::Eval { position, .. }
            | Error::Divergence { position }
            | Error::StepLimitExceeded { position, .. } => *position,
        }
    }

    /// Attaches `pos` unless a more precise position is already recorded.
    pub(crate) fn located(mut self, pos: Position) -> Self {
        match &mut self {
            Error::Read { .. } => {}
            Error::Eval { position, .. }
            | Error::Divergence { position }
            | Error::StepLimitExceeded { position, .. } => {
                position.get_or_insert(pos);
            }
        }
        self
    }
}
