use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Signature;

/// Every logic the engines know about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LogicId {
    Bi,
    Nbi,
    NbIciw,
    NbIci,
    NbIcl,
    Mbc,
    MbCciw,
    MbCci,
    MbCcl,
    /// bI with `#` collapsed to the Sheffer stroke (bI + Ex).
    CplSheffer,
    /// nbI with `#` collapsed to the Sheffer stroke.
    NbiSheffer,
}

impl LogicId {
    pub const ALL: [LogicId; 11] = [
        LogicId::Bi,
        LogicId::Nbi,
        LogicId::NbIciw,
        LogicId::NbIci,
        LogicId::NbIcl,
        LogicId::Mbc,
        LogicId::MbCciw,
        LogicId::MbCci,
        LogicId::MbCcl,
        LogicId::CplSheffer,
        LogicId::NbiSheffer,
    ];

    /// Logics decided by both truth tables and tableaux.
    pub const WITH_TABLEAUX: [LogicId; 5] = [
        LogicId::Bi,
        LogicId::Nbi,
        LogicId::NbIciw,
        LogicId::NbIci,
        LogicId::NbIcl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LogicId::Bi => "bI",
            LogicId::Nbi => "nbI",
            LogicId::NbIciw => "nbIciw",
            LogicId::NbIci => "nbIci",
            LogicId::NbIcl => "nbIcl",
            LogicId::Mbc => "mbC",
            LogicId::MbCciw => "mbCciw",
            LogicId::MbCci => "mbCci",
            LogicId::MbCcl => "mbCcl",
            LogicId::CplSheffer => "cpl-sheffer",
            LogicId::NbiSheffer => "nbI-sheffer",
        }
    }

    pub fn signature(self) -> Signature {
        match self {
            LogicId::Bi | LogicId::CplSheffer => Signature::Bi,
            LogicId::Nbi | LogicId::NbIciw | LogicId::NbIci | LogicId::NbIcl | LogicId::NbiSheffer => {
                Signature::Nbi
            }
            LogicId::Mbc | LogicId::MbCciw | LogicId::MbCci | LogicId::MbCcl => Signature::Lfi,
        }
    }

    pub fn has_tableaux(self) -> bool {
        LogicId::WITH_TABLEAUX.contains(&self)
    }

    pub fn is_mbc_family(self) -> bool {
        self.signature() == Signature::Lfi
    }

    /// The incompatibility logic an mbC-family logic translates into.
    pub fn translation_target(self) -> Option<LogicId> {
        Some(match self {
            LogicId::Mbc => LogicId::Nbi,
            LogicId::MbCciw => LogicId::NbIciw,
            LogicId::MbCci => LogicId::NbIci,
            LogicId::MbCcl => LogicId::NbIcl,
            _ => return None,
        })
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown logic `{0}`")]
pub struct UnknownLogic(pub String);

impl FromStr for LogicId {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        LogicId::ALL
            .iter()
            .copied()
            .find(|l| l.name().to_ascii_lowercase() == key)
            .ok_or_else(|| UnknownLogic(s.to_string()))
    }
}
