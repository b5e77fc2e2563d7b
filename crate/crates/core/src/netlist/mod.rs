//! Gate-level netlists of the adder designs.
//!
//! Netlists are built straight from each design's schematic (constant ties,
//! OR row, half-adders, MSM carry chain) and never consult the functional
//! models, so [`simulate_netlist`] serves as an independent oracle for
//! [`crate::models::approx_add`].

mod cost;
mod sim;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::config::{validate_config, AdderConfig, AdderKind};
use crate::error::{Error, Result};

pub use cost::{transistor_count, CellCostTable};
pub use sim::simulate_netlist;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateOp {
    Inv,
    And2,
    Or2,
    Nand2,
    Nor2,
    Xor2,
    Xnor2,
    /// Half adder: outputs (sum, carry).
    Ha,
    /// Full adder: outputs (sum, carry).
    Fa,
    Tie1,
    Tie0,
}

impl GateOp {
    pub const ALL: [GateOp; 11] = [
        GateOp::Inv,
        GateOp::And2,
        GateOp::Or2,
        GateOp::Nand2,
        GateOp::Nor2,
        GateOp::Xor2,
        GateOp::Xnor2,
        GateOp::Ha,
        GateOp::Fa,
        GateOp::Tie1,
        GateOp::Tie0,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            GateOp::Inv => "INV",
            GateOp::And2 => "AND2",
            GateOp::Or2 => "OR2",
            GateOp::Nand2 => "NAND2",
            GateOp::Nor2 => "NOR2",
            GateOp::Xor2 => "XOR2",
            GateOp::Xnor2 => "XNOR2",
            GateOp::Ha => "HA",
            GateOp::Fa => "FA",
            GateOp::Tie1 => "TIE1",
            GateOp::Tie0 => "TIE0",
        }
    }

    /// (inputs, outputs)
    pub const fn arity(self) -> (usize, usize) {
        match self {
            GateOp::Inv => (1, 1),
            GateOp::Ha => (2, 2),
            GateOp::Fa => (3, 2),
            GateOp::Tie1 | GateOp::Tie0 => (0, 1),
            _ => (2, 1),
        }
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GateOp::ALL
            .into_iter()
            .find(|op| op.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::config("gate", format!("unknown gate op `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NetId(pub u32);

impl fmt::Display for NetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub op: GateOp,
    pub inputs: Vec<NetId>,
    pub outputs: Vec<NetId>,
}

/// A combinational netlist in topological order.
///
/// Nets `0..n` carry operand A (LSB first), nets `n..2n` operand B. The
/// `n + 1` primary outputs are the sum bits, LSB first, then the carry-out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Netlist {
    width: u32,
    net_count: u32,
    gates: Vec<Gate>,
    outputs: Vec<NetId>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MsmStyle {
    #[default]
    Ripple,
    /// Carry lookahead in 4-bit blocks, blocks rippled.
    Lookahead,
}

impl FromStr for MsmStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ripple" | "rca" => Ok(MsmStyle::Ripple),
            "lookahead" | "cla" => Ok(MsmStyle::Lookahead),
            _ => Err(Error::config("msm", format!("unknown MSM style `{s}`"))),
        }
    }
}

impl Netlist {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[NetId] {
        &self.outputs
    }

    pub fn net_count(&self) -> u32 {
        self.net_count
    }

    pub fn input_a(&self, i: u32) -> NetId {
        NetId(i)
    }

    pub fn input_b(&self, i: u32) -> NetId {
        NetId(self.width + i)
    }

    pub fn count(&self, op: GateOp) -> usize {
        self.gates.iter().filter(|g| g.op == op).count()
    }

    /// Checks arity, topological order, single drivers and output coverage.
    pub fn check(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::config("netlist", reason));
        let mut driven = vec![false; self.net_count as usize];
        for d in driven.iter_mut().take(2 * self.width as usize) {
            *d = true;
        }
        for (i, g) in self.gates.iter().enumerate() {
            if (g.inputs.len(), g.outputs.len()) != g.op.arity() {
                return bad(format!("gate {i} ({}) has wrong arity", g.op));
            }
            for net in &g.inputs {
                if !driven.get(net.0 as usize).copied().unwrap_or(false) {
                    return bad(format!("gate {i} reads undriven net {net}"));
                }
            }
            for net in &g.outputs {
                match driven.get_mut(net.0 as usize) {
                    Some(d) if !*d => *d = true,
                    _ => return bad(format!("net {net} has more than one driver")),
                }
            }
        }
        if self.outputs.len() != self.width as usize + 1 {
            return bad("wrong number of primary outputs".into());
        }
        for net in &self.outputs {
            if !driven.get(net.0 as usize).copied().unwrap_or(false) {
                return bad(format!("primary output {net} is undriven"));
            }
        }
        Ok(())
    }

    /// One line per gate: `<id> <OP> <in...> -> <out...>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let n = self.width;
        let _ = writeln!(out, "# inputs a: n0..n{} b: n{}..n{}", n - 1, n, 2 * n - 1);
        let outs: Vec<String> = self.outputs.iter().map(NetId::to_string).collect();
        let _ = writeln!(out, "# outputs: {}", outs.join(" "));
        for (i, g) in self.gates.iter().enumerate() {
            let _ = write!(out, "g{i} {}", g.op);
            for net in &g.inputs {
                let _ = write!(out, " {net}");
            }
            out.push_str(" ->");
            for net in &g.outputs {
                let _ = write!(out, " {net}");
            }
            out.push('\n');
        }
        out
    }
}

struct Builder {
    width: u32,
    next: u32,
    gates: Vec<Gate>,
}

impl Builder {
    fn new(width: u32) -> Self {
        Builder {
            width,
            next: 2 * width,
            gates: Vec::new(),
        }
    }

    fn a(&self, i: u32) -> NetId {
        NetId(i)
    }

    fn b(&self, i: u32) -> NetId {
        NetId(self.width + i)
    }

    fn gate(&mut self, op: GateOp, inputs: &[NetId]) -> Vec<NetId> {
        let outputs: Vec<NetId> = (0..op.arity().1)
            .map(|_| {
                self.next += 1;
                NetId(self.next - 1)
            })
            .collect();
        self.gates.push(Gate {
            op,
            inputs: inputs.to_vec(),
            outputs: outputs.clone(),
        });
        outputs
    }

    fn one(&mut self, op: GateOp, inputs: &[NetId]) -> NetId {
        self.gate(op, inputs)[0]
    }

    fn pair(&mut self, op: GateOp, inputs: &[NetId]) -> (NetId, NetId) {
        let o = self.gate(op, inputs);
        (o[0], o[1])
    }

    fn ripple(&mut self, from: u32, mut carry: NetId, sums: &mut Vec<NetId>) -> NetId {
        for i in from..self.width {
            let (s, c) = self.pair(GateOp::Fa, &[self.a(i), self.b(i), carry]);
            sums.push(s);
            carry = c;
        }
        carry
    }

    fn lookahead(&mut self, from: u32, mut carry: NetId, sums: &mut Vec<NetId>) -> NetId {
        let mut start = from;
        while start < self.width {
            let end = (start + 4).min(self.width);
            let (mut p, mut g) = (Vec::new(), Vec::new());
            for i in start..end {
                let (pi, gi) = self.pair(GateOp::Ha, &[self.a(i), self.b(i)]);
                p.push(pi);
                g.push(gi);
            }
            // c_{j+1} = g_j | p_j g_{j-1} | ... | p_j..p_0 c_in, each product term
            // built from 2-input ANDs and the terms joined with 2-input ORs.
            let mut carries = vec![carry];
            for j in 0..p.len() {
                let mut acc = g[j];
                for t in (0..=j).rev() {
                    let source = if t == 0 { carry } else { g[t - 1] };
                    let mut term = source;
                    for &pk in &p[t..=j] {
                        term = self.one(GateOp::And2, &[term, pk]);
                    }
                    acc = self.one(GateOp::Or2, &[acc, term]);
                }
                carries.push(acc);
            }
            for (j, &pj) in p.iter().enumerate() {
                sums.push(self.one(GateOp::Xor2, &[pj, carries[j]]));
            }
            carry = carries[p.len()];
            start = end;
        }
        carry
    }
}

/// Builds the gate-level netlist for `cfg`, with the MSM realized in `msm_style`.
pub fn build_netlist(cfg: &AdderConfig, msm_style: MsmStyle) -> Result<Netlist> {
    use GateOp::*;
    let cfg = validate_config(*cfg)?;
    let (n, m, k) = (cfg.n, cfg.m, cfg.k);
    let mut bld = Builder::new(n);
    let mut sums: Vec<NetId> = Vec::with_capacity(n as usize);
    let kind = if cfg.is_exact() {
        AdderKind::Exact
    } else {
        cfg.kind
    };

    let cin = match kind {
        AdderKind::Exact => bld.one(Tie0, &[]),
        AdderKind::Loa | AdderKind::Loawa | AdderKind::Oloca => {
            for i in 0..m {
                let s = if kind == AdderKind::Oloca && i < k {
                    bld.one(Tie1, &[])
                } else {
                    bld.one(Or2, &[bld.a(i), bld.b(i)])
                };
                sums.push(s);
            }
            if kind == AdderKind::Loawa {
                bld.one(Tie0, &[])
            } else {
                bld.one(And2, &[bld.a(m - 1), bld.b(m - 1)])
            }
        }
        AdderKind::Passthrough => {
            sums.extend((0..m).map(|i| bld.a(i)));
            bld.one(Tie0, &[])
        }
        AdderKind::Eta => {
            // Scan from the top: once a (1,1) pair is seen, every lower bit is 1.
            let mut lsm = vec![NetId(0); m as usize];
            let mut seen: Option<NetId> = None;
            for i in (0..m).rev() {
                let g = bld.one(And2, &[bld.a(i), bld.b(i)]);
                let flag = match seen {
                    None => g,
                    Some(prev) => bld.one(Or2, &[prev, g]),
                };
                let x = bld.one(Xor2, &[bld.a(i), bld.b(i)]);
                lsm[i as usize] = bld.one(Or2, &[x, flag]);
                seen = Some(flag);
            }
            sums.extend(lsm);
            bld.one(Tie0, &[])
        }
        AdderKind::Haloc | AdderKind::Herloa | AdderKind::Mherloa => {
            let hybrid = kind != AdderKind::Haloc;
            let (x_top, c_top) = bld.pair(Ha, &[bld.a(m - 1), bld.b(m - 1)]);
            let (x_next, c_next) = bld.pair(Ha, &[bld.a(m - 2), bld.b(m - 2)]);
            for i in 0..m - 2 {
                let s = if i < k {
                    bld.one(Tie1, &[])
                } else {
                    let or = bld.one(Or2, &[bld.a(i), bld.b(i)]);
                    if hybrid && i == m - 3 {
                        bld.one(Or2, &[or, x_top])
                    } else {
                        or
                    }
                };
                sums.push(s);
            }
            let s_next = if hybrid {
                let reduce = bld.one(And2, &[c_next, x_top]);
                bld.one(Or2, &[x_next, reduce])
            } else {
                x_next
            };
            sums.push(s_next);
            sums.push(bld.one(Or2, &[x_top, c_next]));
            c_top
        }
    };

    let carry_out = match msm_style {
        MsmStyle::Ripple => bld.ripple(m, cin, &mut sums),
        MsmStyle::Lookahead => bld.lookahead(m, cin, &mut sums),
    };
    sums.push(carry_out);

    let netlist = Netlist {
        width: n,
        net_count: bld.next,
        gates: bld.gates,
        outputs: sums,
    };
    debug_assert!(netlist.check().is_ok());
    Ok(netlist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Word;
    use crate::models::approx_add;
    use AdderKind::*;

    fn cfg(kind: AdderKind, n: u32, m: u32, k: u32) -> AdderConfig {
        AdderConfig::new(kind, n, m, k).unwrap()
    }

    #[test]
    fn haloc_structure_by_construction() {
        let nl = build_netlist(&cfg(Haloc, 8, 4, 2), MsmStyle::Ripple).unwrap();
        assert_eq!(nl.count(GateOp::Tie1), 2);
        assert_eq!(nl.count(GateOp::Ha), 2);
        // no OR row (m - 2 - k = 0); the single OR2 combines S_{m-1}
        assert_eq!(nl.count(GateOp::Or2), 1);
        assert_eq!(nl.count(GateOp::Fa), 4);
        assert_eq!(nl.gates().len(), 9);
        nl.check().unwrap();
    }

    #[test]
    fn exact_is_a_plain_ripple_chain() {
        let nl = build_netlist(&cfg(Exact, 4, 0, 0), MsmStyle::Ripple).unwrap();
        assert_eq!(nl.count(GateOp::Fa), 4);
        assert_eq!(nl.count(GateOp::Tie0), 1);
        assert_eq!(nl.gates().len(), 5);
    }

    #[test]
    fn loawa_structure() {
        let nl = build_netlist(&cfg(Loawa, 8, 4, 0), MsmStyle::Ripple).unwrap();
        assert_eq!(nl.count(GateOp::Or2), 4);
        assert_eq!(nl.count(GateOp::Tie0), 1);
        assert_eq!(nl.count(GateOp::Fa), 4);
        assert_eq!(nl.gates().len(), 9);
    }

    #[test]
    fn every_built_netlist_is_well_formed() {
        for kind in AdderKind::ALL {
            for (n, m, k) in [
                (8, 4, 0),
                (8, 4, 2),
                (16, 8, 4),
                (32, 10, 5),
                (5, 5, 0),
                (3, 2, 0),
            ] {
                let Ok(c) = AdderConfig::new(kind, n, m, k) else {
                    continue;
                };
                for style in [MsmStyle::Ripple, MsmStyle::Lookahead] {
                    let nl = build_netlist(&c, style).unwrap();
                    nl.check().unwrap();
                    assert_eq!(nl.outputs().len(), n as usize + 1);
                }
            }
        }
    }

    #[test]
    fn check_catches_broken_netlists() {
        let mut nl = build_netlist(&cfg(Loa, 4, 2, 0), MsmStyle::Ripple).unwrap();
        let mut dup = nl.clone();
        let out = dup.gates[0].outputs[0];
        dup.gates[1].outputs[0] = out;
        assert!(dup.check().is_err());
        let last = nl.gates.len() - 1;
        nl.gates.swap(0, last);
        assert!(nl.check().is_err());
    }

    #[test]
    fn lookahead_matches_function_exhaustively() {
        for kind in AdderKind::ALL {
            let m = if kind == Exact { 0 } else { 3 };
            let k = if kind == Oloca { 1 } else { 0 };
            let c = cfg(kind, 9, m, k);
            let nl = build_netlist(&c, MsmStyle::Lookahead).unwrap();
            for a in 0..512u64 {
                for b in (0..512u64).step_by(3) {
                    let (wa, wb) = (Word::new(a, 9).unwrap(), Word::new(b, 9).unwrap());
                    assert_eq!(
                        simulate_netlist(&nl, wa, wb).unwrap(),
                        approx_add(&c, wa, wb).unwrap(),
                        "{c}"
                    );
                }
            }
        }
    }

    #[test]
    fn text_export_lists_gates_in_order() {
        let nl = build_netlist(&cfg(Loawa, 4, 2, 0), MsmStyle::Ripple).unwrap();
        let text = nl.to_text();
        let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(lines.len(), nl.gates().len());
        assert_eq!(lines[0], "g0 OR2 n0 n4 -> n8");
        assert!(lines[3].starts_with("g3 FA n2 n6 n10 -> "));
    }
}
