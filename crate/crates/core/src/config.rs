//! Adder kinds and their (N, m, k) partition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::MAX_WIDTH;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdderKind {
    Exact,
    /// Lower-part OR adder.
    Loa,
    /// LOA with the carry-speculation AND removed.
    Loawa,
    /// Lower sum bits copied from operand A.
    Passthrough,
    /// Error-tolerant adder.
    Eta,
    /// Optimized lower-part constant-OR adder.
    Oloca,
    /// Hybrid error reduction LOA.
    Herloa,
    /// HERLOA with a constant-ones lower section.
    Mherloa,
    /// Half-adder lower-part-OR with constant (HALOC-AxA).
    Haloc,
}

impl AdderKind {
    pub const ALL: [AdderKind; 9] = [
        AdderKind::Exact,
        AdderKind::Loa,
        AdderKind::Loawa,
        AdderKind::Passthrough,
        AdderKind::Eta,
        AdderKind::Oloca,
        AdderKind::Herloa,
        AdderKind::Mherloa,
        AdderKind::Haloc,
    ];

    /// The six approximate designs of the comparison table, in table order.
    pub const COMPARED: [AdderKind; 6] = [
        AdderKind::Loa,
        AdderKind::Loawa,
        AdderKind::Oloca,
        AdderKind::Herloa,
        AdderKind::Mherloa,
        AdderKind::Haloc,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            AdderKind::Exact => "exact",
            AdderKind::Loa => "loa",
            AdderKind::Loawa => "loawa",
            AdderKind::Passthrough => "passthrough",
            AdderKind::Eta => "eta",
            AdderKind::Oloca => "oloca",
            AdderKind::Herloa => "herloa",
            AdderKind::Mherloa => "mherloa",
            AdderKind::Haloc => "haloc",
        }
    }

    /// Kinds whose top two LSM bit pairs feed half-adders.
    pub const fn has_half_adders(self) -> bool {
        matches!(
            self,
            AdderKind::Herloa | AdderKind::Mherloa | AdderKind::Haloc
        )
    }

    /// Kinds without a constant-ones section.
    pub const fn forbids_constant(self) -> bool {
        matches!(
            self,
            AdderKind::Loa | AdderKind::Loawa | AdderKind::Passthrough | AdderKind::Eta
        )
    }
}

impl fmt::Display for AdderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AdderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_'))
            .flat_map(char::to_lowercase)
            .collect();
        let kind = match norm.as_str() {
            "exact" | "accurate" | "cla" | "rca" => AdderKind::Exact,
            "loa" => AdderKind::Loa,
            "loawa" | "laowa" => AdderKind::Loawa,
            "passthrough" | "pass" => AdderKind::Passthrough,
            "eta" => AdderKind::Eta,
            "oloca" => AdderKind::Oloca,
            "herloa" => AdderKind::Herloa,
            "mherloa" => AdderKind::Mherloa,
            "haloc" | "halocaxa" | "proposed" => AdderKind::Haloc,
            _ => return Err(Error::config("kind", format!("unknown adder kind `{s}`"))),
        };
        Ok(kind)
    }
}

/// An adder variant and its partition: total width `n`, approximate LSM
/// width `m`, constant-ones width `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdderConfig {
    pub kind: AdderKind,
    pub n: u32,
    pub m: u32,
    pub k: u32,
}

impl AdderConfig {
    /// Builds and validates.
    pub fn new(kind: AdderKind, n: u32, m: u32, k: u32) -> Result<Self> {
        validate_config(AdderConfig { kind, n, m, k })
    }

    pub fn exact(n: u32) -> Result<Self> {
        Self::new(AdderKind::Exact, n, 0, 0)
    }

    /// The reference configuration: n = 32, m = 10, and k = 5 for the
    /// kinds with a constant section.
    pub fn reference(kind: AdderKind) -> Self {
        let (m, k) = match kind {
            AdderKind::Exact => (0, 0),
            AdderKind::Oloca | AdderKind::Mherloa | AdderKind::Haloc => (10, 5),
            _ => (10, 0),
        };
        AdderConfig { kind, n: 32, m, k }
    }

    /// True when the configuration computes the exact sum.
    pub fn is_exact(&self) -> bool {
        self.kind == AdderKind::Exact || self.m == 0
    }
}

impl fmt::Display for AdderConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={},m={},k={})", self.kind, self.n, self.m, self.k)
    }
}

pub fn validate_config(cfg: AdderConfig) -> Result<AdderConfig> {
    let AdderConfig { kind, n, m, k } = cfg;
    if n == 0 || n > MAX_WIDTH {
        return Err(Error::config("n", format!("{n} not in 1..=64")));
    }
    if m > n {
        return Err(Error::config("m", format!("{m} exceeds n = {n}")));
    }
    if k > m {
        return Err(Error::config("k", format!("{k} exceeds m = {m}")));
    }
    if kind == AdderKind::Exact && (m != 0 || k != 0) {
        return Err(Error::config("m", "exact adder requires m = 0 and k = 0"));
    }
    if kind.forbids_constant() && k != 0 {
        return Err(Error::config(
            "k",
            format!("{kind} has no constant section; k must be 0"),
        ));
    }
    if kind.has_half_adders() && m != 0 {
        if m < 2 {
            return Err(Error::config(
                "m",
                format!("{kind} needs m >= 2 for its two half-adders (got {m})"),
            ));
        }
        if k > m - 2 {
            return Err(Error::config(
                "k",
                format!("{kind} requires k <= m - 2 = {} (got {k})", m - 2),
            ));
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_configuration_is_valid() {
        assert!(AdderConfig::new(AdderKind::Haloc, 32, 10, 5).is_ok());
        for kind in AdderKind::ALL {
            assert!(
                validate_config(AdderConfig::reference(kind)).is_ok(),
                "{kind}"
            );
        }
    }

    #[test]
    fn boundaries_report_the_offending_field() {
        let field = |r: Result<AdderConfig>| match r {
            Err(Error::Config { field, .. }) => field,
            other => panic!("expected config error, got {other:?}"),
        };
        assert_eq!(field(AdderConfig::new(AdderKind::Haloc, 8, 1, 0)), "m");
        assert_eq!(field(AdderConfig::new(AdderKind::Loa, 8, 4, 2)), "k");
        assert_eq!(field(AdderConfig::new(AdderKind::Haloc, 8, 4, 3)), "k");
        assert_eq!(field(AdderConfig::new(AdderKind::Exact, 8, 1, 0)), "m");
        assert_eq!(field(AdderConfig::new(AdderKind::Oloca, 8, 9, 0)), "m");
        assert_eq!(field(AdderConfig::new(AdderKind::Oloca, 8, 4, 5)), "k");
        assert_eq!(field(AdderConfig::new(AdderKind::Loa, 0, 0, 0)), "n");
        assert_eq!(field(AdderConfig::new(AdderKind::Loa, 65, 0, 0)), "n");
    }

    #[test]
    fn degenerate_partitions_are_valid() {
        for kind in AdderKind::ALL {
            assert!(AdderConfig::new(kind, 8, 0, 0).is_ok());
            assert!(AdderConfig::new(kind, 8, 0, 0).unwrap().is_exact());
        }
        assert!(AdderConfig::new(AdderKind::Haloc, 2, 2, 0).is_ok());
        assert!(AdderConfig::new(AdderKind::Oloca, 8, 4, 4).is_ok());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in AdderKind::ALL {
            assert_eq!(kind.name().parse::<AdderKind>().unwrap(), kind);
        }
        assert_eq!("M-HERLOA".parse::<AdderKind>().unwrap(), AdderKind::Mherloa);
        assert_eq!("HALOC-AxA".parse::<AdderKind>().unwrap(), AdderKind::Haloc);
        assert!("csa".parse::<AdderKind>().is_err());
    }
}
