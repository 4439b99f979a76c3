//! Non-fatal events raised while solving. Indices are zero-based.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum AuditEvent {
    /// Intermediates clamped into [0, 1] during a stage.
    Clamps { stage: String, roundoff: usize, excursions: usize },
    /// A similarity cell with `nis + pis = 0`, mapped to 0.5.
    DegenerateSimilarity { expert: usize, row: usize, col: usize },
    /// All experts had zero similarity on this alternative; weights set to 1/k.
    UniformExpertWeights { row: usize },
    /// Score-maximal and score-minimal cells tie; the column was left as is.
    DegenerateColumn { col: usize },
    /// All realized distances were zero; attribute weights set to 1/n.
    UniformAttributeWeights,
}

impl fmt::Display for AuditEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditEvent::Clamps { stage, roundoff, excursions } => {
                write!(f, "{stage}: {roundoff} roundoff clamp(s), {excursions} clamp(s) beyond tolerance")
            }
            AuditEvent::DegenerateSimilarity { expert, row, col } => write!(
                f,
                "expert {}, row {}, col {}: nis + pis = 0, similarity set to 0.5",
                expert + 1,
                row + 1,
                col + 1
            ),
            AuditEvent::UniformExpertWeights { row } => {
                write!(f, "row {}: all similarities zero, uniform expert weights", row + 1)
            }
            AuditEvent::DegenerateColumn { col } => {
                write!(f, "col {}: max and min tie by score, column not standardized", col + 1)
            }
            AuditEvent::UniformAttributeWeights => {
                write!(f, "all realized distances zero, uniform attribute weights")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AuditLog(Vec<AuditEvent>);

impl AuditLog {
    pub fn push(&mut self, e: AuditEvent) {
        self.0.push(e);
    }

    pub fn events(&self) -> &[AuditEvent] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
