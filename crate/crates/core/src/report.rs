//! Three-valued outcomes shared by every checker in the crate.

use serde::Serialize;

/// Outcome of a single verification condition. `Refuted` carries a printable
/// witness, `Unknown` names the bound or subproblem that gave out. A bounded
/// search never converts exhaustion into a refutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Verified,
    Refuted { witness: String },
    Unknown { reason: String },
}

impl Status {
    pub fn refuted(witness: impl Into<String>) -> Self {
        Status::Refuted {
            witness: witness.into(),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Status::Unknown {
            reason: reason.into(),
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Status::Verified)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Status::Refuted { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Status::Unknown { .. })
    }

    /// Process exit code convention: verified 0, refuted 1, unknown 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Refuted { .. } => 1,
            Status::Unknown { .. } => 2,
        }
    }

    /// Combines condition outcomes: any refutation refutes, else any unknown
    /// stays unknown, else verified.
    pub fn combine_all<'a>(statuses: impl IntoIterator<Item = &'a Status>) -> Status {
        let mut out = Status::Verified;
        for s in statuses {
            match (s, &out) {
                (Status::Refuted { .. }, _) => return s.clone(),
                (Status::Unknown { .. }, Status::Verified) => out = s.clone(),
                _ => {}
            }
        }
        out
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Verified => write!(f, "verified"),
            Status::Refuted { witness } => write!(f, "refuted (witness: {witness})"),
            Status::Unknown { reason } => write!(f, "unknown ({reason})"),
        }
    }
}
