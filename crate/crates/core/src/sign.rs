use core::fmt;
use core::ops::{Mul, Neg};

/// A sign in `{+1, -1}`.
///
/// Used both for the sign of a vertex inside an oriented edge and for the
/// sign carried by a walk step or a whole walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Positive => 1,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    /// Product of a sequence of signs; the empty product is `+1`.
    pub fn product<I: IntoIterator<Item = Sign>>(signs: I) -> Sign {
        signs.into_iter().fold(Sign::Positive, |acc, s| acc * s)
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Negative
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Negative => f.write_str("-1"),
            Sign::Positive => f.write_str("+1"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_table() {
        assert_eq!(Sign::Negative * Sign::Negative, Sign::Positive);
        assert_eq!(Sign::Negative * Sign::Positive, Sign::Negative);
        assert_eq!(-Sign::Positive, Sign::Negative);
        assert_eq!(Sign::product([]), Sign::Positive);
        assert_eq!(
            Sign::product([Sign::Negative, Sign::Negative, Sign::Negative]),
            Sign::Negative
        );
    }
}
