use std::collections::BTreeMap;

use super::{GateOp, Netlist};
use crate::error::{Error, Result};

/// Transistors per gate op.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCostTable {
    costs: BTreeMap<GateOp, u64>,
}

impl Default for CellCostTable {
    /// Static complementary CMOS costs; HA is XOR2 + AND2, FA a 28T mirror adder.
    fn default() -> Self {
        use GateOp::*;
        let costs = [
            (Inv, 2),
            (Nand2, 4),
            (Nor2, 4),
            (And2, 6),
            (Or2, 6),
            (Xor2, 12),
            (Xnor2, 12),
            (Ha, 18),
            (Fa, 28),
            (Tie1, 0),
            (Tie0, 0),
        ];
        CellCostTable {
            costs: costs.into_iter().collect(),
        }
    }
}

impl CellCostTable {
    pub fn empty() -> Self {
        CellCostTable {
            costs: BTreeMap::new(),
        }
    }

    pub fn get(&self, op: GateOp) -> Option<u64> {
        self.costs.get(&op).copied()
    }

    pub fn set(&mut self, op: GateOp, transistors: u64) {
        self.costs.insert(op, transistors);
    }

    /// Parses `OP=count` lines; `#` starts a comment. Entries override the
    /// defaults when `base` is the default table.
    pub fn parse(text: &str, base: CellCostTable) -> Result<Self> {
        let mut table = base;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |reason: String| Error::Parse {
                line: idx + 1,
                reason,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected OP=count, got `{line}`")))?;
            let op: GateOp = key
                .parse()
                .map_err(|_| parse_err(format!("unknown gate op `{}`", key.trim())))?;
            let count = value
                .trim()
                .parse::<u64>()
                .map_err(|e| parse_err(format!("bad transistor count `{}`: {e}", value.trim())))?;
            table.set(op, count);
        }
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        self.costs
            .iter()
            .map(|(op, c)| format!("{op}={c}\n"))
            .collect()
    }
}

/// Sum of per-gate transistor costs.
pub fn transistor_count(nl: &Netlist, costs: &CellCostTable) -> Result<u64> {
    nl.gates().iter().try_fold(0u64, |acc, g| {
        costs
            .get(g.op)
            .map(|c| acc + c)
            .ok_or_else(|| Error::MissingCellCost(g.op.to_string()))
    })
}
