use std::fmt;
use std::str::FromStr;

/// Which side an operation works on.
///
/// The meaning per operation:
///
/// | operation        | `Left`                     | `Right`                    |
/// |------------------|----------------------------|----------------------------|
/// | division         | `a = q*b + r`              | `a = b*q + r`              |
/// | gcd              | `aR + bR = dR`             | `Ra + Rb = Rd`             |
/// | lcm              | `Rm = Ra ∩ Rb`             | `mR = aR ∩ bR`             |
/// | fraction         | `b^-1 * a`                 | `a * b^-1`                 |
/// | regularization   | `a + q*b`                  | `a + b*q`                  |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("unknown side `{other}`, expected left or right")),
        }
    }
}
