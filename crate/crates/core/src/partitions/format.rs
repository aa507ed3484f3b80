//! Partition files.
//!
//! ```toml
//! p = 61169
//! blocks = [[1, 307, 7031, 11109, 42721], [589, 2007, 5007, 20001, 33565]]
//! ```
//!
//! Inline form: `1+307+7031+11109+42721; 589+2007+5007+20001+33565`.

use serde::{Deserialize, Serialize};

use super::PartitionSolution;
use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct PartitionFile {
    p: Option<u64>,
    blocks: Vec<Vec<u64>>,
}

fn parse_inline(text: &str) -> Result<PartitionSolution> {
    let blocks = text
        .split(';')
        .map(|block| {
            block
                .split('+')
                .map(|part| {
                    let digits: String = part
                        .chars()
                        .filter(|c| !c.is_whitespace() && *c != '_')
                        .collect();
                    digits.parse::<u64>().map_err(|e| Error::Parse {
                        what: "partition",
                        message: format!("{part:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PartitionSolution { blocks })
}

/// Accepts either the TOML file layout or the inline form. Returns the
/// declared `p`, if any, alongside the solution.
pub fn parse_partition(text: &str) -> Result<(Option<u64>, PartitionSolution)> {
    let trimmed = text.trim();
    if trimmed.contains('=') {
        let file: PartitionFile = toml::from_str(trimmed).map_err(|e| Error::Parse {
            what: "partition file",
            message: e.to_string(),
        })?;
        let declared = file.p;
        let sol = PartitionSolution {
            blocks: file.blocks,
        };
        if let Some(p) = declared {
            for (i, b) in sol.blocks.iter().enumerate() {
                let sum: u64 = b.iter().sum();
                // weighted blocks are checked against the system later
                if sum > p.saturating_mul(b.len() as u64) {
                    return Err(Error::PartitionMismatch(format!(
                        "block {} cannot sum to {p}",
                        i + 1
                    )));
                }
            }
        }
        Ok((declared, sol))
    } else {
        Ok((None, parse_inline(trimmed)?))
    }
}

pub fn partition_to_toml(p: u64, sol: &PartitionSolution) -> String {
    let blocks: Vec<String> = sol
        .blocks
        .iter()
        .map(|b| {
            format!(
                "[{}]",
                b.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
            )
        })
        .collect();
    format!("p = {p}\nblocks = [\n  {},\n]\n", blocks.join(",\n  "))
}
