//! Bounded checkers for additive and multiplicative largeness properties,
//! their divisibility-based relatives, and an exact atlas of the divisor
//! poset on small universes.

pub mod additive;
pub mod atlas;
pub mod divisor;
pub mod multiplicative;
pub mod report;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use additive::{a_pcws_check, a_thick_check, ip_search, ip_star_check, j_check, longest_shifted_run};
pub use atlas::{poset_atlas, AtlasReport};
pub use divisor::{crt_thickness_demo, max_check, maxstar_check, nmax_refute, nmaxstar_check, CrtRun};
pub use multiplicative::m_pcws_check;
pub use report::{diagram_report, Audit, AuditStatus, LargenessReport, PropertyEntry};

/// The checked properties, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "A-thick")]
    AThick,
    #[serde(rename = "M-thick")]
    MThick,
    #[serde(rename = "A-pcws")]
    APcws,
    #[serde(rename = "M-pcws")]
    MPcws,
    #[serde(rename = "A-IP")]
    AIp,
    #[serde(rename = "M-IP")]
    MIp,
    #[serde(rename = "A-IP*")]
    AIpStar,
    #[serde(rename = "A-J")]
    AJ,
    #[serde(rename = "M-J")]
    MJ,
    #[serde(rename = "MAX")]
    Max,
    #[serde(rename = "NMAX")]
    Nmax,
    #[serde(rename = "MAX*")]
    MaxStar,
    #[serde(rename = "NMAX*")]
    NmaxStar,
}

impl Property {
    pub const ALL: [Property; 13] = [
        Property::AThick,
        Property::MThick,
        Property::APcws,
        Property::MPcws,
        Property::AIp,
        Property::MIp,
        Property::AIpStar,
        Property::AJ,
        Property::MJ,
        Property::Max,
        Property::Nmax,
        Property::MaxStar,
        Property::NmaxStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::AThick => "A-thick",
            Property::MThick => "M-thick",
            Property::APcws => "A-pcws",
            Property::MPcws => "M-pcws",
            Property::AIp => "A-IP",
            Property::MIp => "M-IP",
            Property::AIpStar => "A-IP*",
            Property::AJ => "A-J",
            Property::MJ => "M-J",
            Property::Max => "MAX",
            Property::Nmax => "NMAX",
            Property::MaxStar => "MAX*",
            Property::NmaxStar => "NMAX*",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    /// Case-insensitive; `*` may also be written `-star` or `star`.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace("-star", "*").replace("star", "*").replace('_', "-");
        Property::ALL
            .into_iter()
            .find(|p| p.name().to_ascii_lowercase() == key)
            .ok_or_else(|| {
                let names: Vec<&str> = Property::ALL.iter().map(|p| p.name()).collect();
                Error::Input(format!("unknown property '{s}'; expected one of {}", names.join(", ")))
            })
    }
}

/// Properties that are reported but not checked: they depend on minimal
/// idempotents in the Stone–Čech compactification and have no finite form.
pub const OUT_OF_SCOPE: [&str; 4] = ["A-central", "A-central*", "M-central", "M-central*"];

/// Bounds for every checker. All values are positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyParams {
    pub horizon: u64,
    /// Run length for thickness and piecewise syndeticity.
    pub run_length: u64,
    /// Largest shift (additive) or quotient divisor (multiplicative).
    pub t_max: u64,
    /// Number of generators sought for IP sets.
    pub ip_len: usize,
    pub j_a_max: u64,
    pub j_h_max: usize,
    /// Function tables for J sets; `None` uses the default pair of tables.
    pub j_funcs: Option<Vec<Vec<u64>>>,
    /// Divisors `n <= max_n` checked for MAX.
    pub max_n: u64,
    /// Dilations `a <= maxstar_a_max` checked for MAX*.
    pub maxstar_a_max: u64,
    /// Antichain size for NMAX and NMAX*.
    pub strength: usize,
}

impl PropertyParams {
    pub fn new(horizon: u64) -> Self {
        PropertyParams {
            horizon,
            run_length: 10,
            t_max: 3,
            ip_len: 3,
            j_a_max: 1000,
            j_h_max: 4,
            j_funcs: None,
            max_n: 20,
            maxstar_a_max: 20,
            strength: 4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let checks = [
            ("horizon", self.horizon),
            ("run length", self.run_length),
            ("ip length", self.ip_len as u64),
            ("J anchor bound", self.j_a_max),
            ("J index bound", self.j_h_max as u64),
            ("MAX divisor bound", self.max_n),
            ("MAX* dilation bound", self.maxstar_a_max),
            ("antichain strength", self.strength as u64),
        ];
        for (what, v) in checks {
            if v == 0 {
                return Err(Error::ParameterRange(format!("{what} must be positive")));
            }
        }
        Ok(())
    }
}

/// Known members in `[1, h]` as a bitmap indexed by value.
pub(crate) fn member_bitmap(elements: &[u64], h: u64) -> Vec<bool> {
    let mut bits = vec![false; h as usize + 1];
    for &x in elements {
        if x <= h {
            bits[x as usize] = true;
        }
    }
    bits
}
