use super::{GateOp, Netlist};
use crate::arith::{AddResult, Word};
use crate::error::{Error, Result};

/// Evaluates the netlist gate by gate for one operand pair.
pub fn simulate_netlist(nl: &Netlist, a: Word, b: Word) -> Result<AddResult> {
    let n = nl.width();
    for w in [a.width(), b.width()] {
        if w != n {
            return Err(Error::WidthMismatch {
                expected: n,
                actual: w,
            });
        }
    }
    let mut nets = vec![false; nl.net_count() as usize];
    for i in 0..n {
        nets[i as usize] = a.bit(i);
        nets[(n + i) as usize] = b.bit(i);
    }
    for g in nl.gates() {
        let x = |j: usize| nets[g.inputs[j].0 as usize];
        let (o0, o1) = match g.op {
            GateOp::Inv => (!x(0), false),
            GateOp::And2 => (x(0) & x(1), false),
            GateOp::Or2 => (x(0) | x(1), false),
            GateOp::Nand2 => (!(x(0) & x(1)), false),
            GateOp::Nor2 => (!(x(0) | x(1)), false),
            GateOp::Xor2 => (x(0) ^ x(1), false),
            GateOp::Xnor2 => (!(x(0) ^ x(1)), false),
            GateOp::Ha => (x(0) ^ x(1), x(0) & x(1)),
            GateOp::Fa => {
                let (p, q, r) = (x(0), x(1), x(2));
                (p ^ q ^ r, (p & q) | (r & (p ^ q)))
            }
            GateOp::Tie1 => (true, false),
            GateOp::Tie0 => (false, false),
        };
        nets[g.outputs[0].0 as usize] = o0;
        if let Some(out) = g.outputs.get(1) {
            nets[out.0 as usize] = o1;
        }
    }
    let value = nl
        .outputs()
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, net)| {
            acc | (nets[net.0 as usize] as u128) << i
        });
    Ok(AddResult::new(value, n))
}
