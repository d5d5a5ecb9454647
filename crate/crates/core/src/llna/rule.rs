use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::Error;

/// Number of density levels: a density `rho` falls in level `x` when
/// `x / 9 <= rho < (x + 1) / 9`, with `rho = 1` assigned to level 8.
pub const LEVELS: usize = 9;

const LEVEL_MASK: u16 = (1 << LEVELS) - 1;

/// Size of the Life-Like rule space, `2^18`.
pub const RULE_SPACE: u32 = 1 << (2 * LEVELS);

/// A Life-Like `B/S` rule as two 9-bit level sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    born: u16,
    survive: u16,
}

impl Rule {
    pub fn new(born: u16, survive: u16) -> Self {
        Self {
            born: born & LEVEL_MASK,
            survive: survive & LEVEL_MASK,
        }
    }

    pub fn from_levels(born: &[u8], survive: &[u8]) -> Self {
        let mask = |levels: &[u8]| levels.iter().fold(0u16, |m, &l| m | (1 << l));
        Self::new(mask(born), mask(survive))
    }

    /// Rule number `code` in `0..2^18`: low nine bits are the birth set.
    pub fn from_code(code: u32) -> Self {
        Self::new((code & 0x1ff) as u16, ((code >> LEVELS) & 0x1ff) as u16)
    }

    pub fn code(&self) -> u32 {
        u32::from(self.born) | (u32::from(self.survive) << LEVELS)
    }

    pub fn born_mask(&self) -> u16 {
        self.born
    }

    pub fn survive_mask(&self) -> u16 {
        self.survive
    }

    pub fn born(&self, level: usize) -> bool {
        self.born >> level & 1 == 1
    }

    pub fn survives(&self, level: usize) -> bool {
        self.survive >> level & 1 == 1
    }

    /// Uniform draw from the whole rule space.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_code(rng.gen_range(0..RULE_SPACE))
    }

    /// Canonical `B<digits>-S<digits>` name.
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("B")?;
        for l in (0..LEVELS).filter(|&l| self.born(l)) {
            write!(f, "{l}")?;
        }
        f.write_str("-S")?;
        for l in (0..LEVELS).filter(|&l| self.survives(l)) {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Rule {
    type Err = Error;

    /// Accepts `B<digits>/S<digits>` and `B<digits>-S<digits>`; either digit
    /// group may be empty.
    fn from_str(text: &str) -> Result<Self, Error> {
        let fail = |reason: &str| Error::Rule {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let rest = text
            .strip_prefix('B')
            .ok_or_else(|| fail("must start with `B`"))?;
        let (born, survive) = rest
            .split_once(['/', '-'])
            .ok_or_else(|| fail("expected `/` or `-` between the B and S parts"))?;
        let survive = survive
            .strip_prefix('S')
            .ok_or_else(|| fail("second part must start with `S`"))?;
        let digits = |group: &str| -> Result<u16, Error> {
            let mut mask = 0u16;
            for c in group.chars() {
                let level = c
                    .to_digit(10)
                    .ok_or_else(|| fail(&format!("`{c}` is not a digit")))?;
                if level as usize >= LEVELS {
                    return Err(fail(&format!("level {level} is out of range 0..8")));
                }
                if mask >> level & 1 == 1 {
                    return Err(fail(&format!("level {level} repeated")));
                }
                mask |= 1 << level;
            }
            Ok(mask)
        };
        Ok(Self::new(digits(born)?, digits(survive)?))
    }
}
