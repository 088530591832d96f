use std::fmt;
use std::str::FromStr;

use crate::error::{ensure, Error, Result};

/// First 256 bits of the fractional binary expansion of π, most significant first.
const PI_FRACTION: [u8; 32] = [
    0x24, 0x3F, 0x6A, 0x88, 0x85, 0xA3, 0x08, 0xD3, 0x13, 0x19, 0x8A, 0x2E, 0x03, 0x70, 0x73, 0x44,
    0xA4, 0x09, 0x38, 0x22, 0x29, 0x9F, 0x31, 0xD0, 0x08, 0x2E, 0xFA, 0x98, 0xEC, 0x4E, 0x6C, 0x89,
];

/// First 256 bits of the fractional binary expansion of e, most significant first.
const E_FRACTION: [u8; 32] = [
    0xB7, 0xE1, 0x51, 0x62, 0x8A, 0xED, 0x2A, 0x6A, 0xBF, 0x71, 0x58, 0x80, 0x9C, 0xF4, 0xF3, 0xC7,
    0x62, 0xE7, 0x16, 0x0F, 0x38, 0xB4, 0xDA, 0x56, 0xA7, 0x84, 0xD9, 0x04, 0x51, 0x90, 0xCF, 0xEF,
];

/// Number of stored bits per constant.
pub const IRRATIONAL_TABLE_BITS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IrrationalConstant {
    Pi,
    E,
}

impl fmt::Display for IrrationalConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pi => "pi",
            Self::E => "e",
        })
    }
}

impl FromStr for IrrationalConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(Self::Pi),
            "e" => Ok(Self::E),
            other => Err(Error::Parse(format!("unknown constant '{other}'"))),
        }
    }
}

/// Leading `count` bits of the fractional binary expansion; bit 0 is the
/// first digit after the binary point.
pub fn irrational_bits(constant: IrrationalConstant, count: usize) -> Result<Vec<bool>> {
    ensure!(count > 0, "bit count must be positive");
    ensure!(
        count <= IRRATIONAL_TABLE_BITS,
        "only {IRRATIONAL_TABLE_BITS} bits of {constant} are tabulated, asked for {count}"
    );
    let table = match constant {
        IrrationalConstant::Pi => &PI_FRACTION,
        IrrationalConstant::E => &E_FRACTION,
    };
    Ok((0..count).map(|i| (table[i / 8] >> (7 - i % 8)) & 1 == 1).collect())
}
