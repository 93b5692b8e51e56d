use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of K₁(ℤ) ≅ ℤ/2. `ONE` is the class of the unit −1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignK1(u8);

impl SignK1 {
    pub const ZERO: SignK1 = SignK1(0);
    pub const ONE: SignK1 = SignK1(1);

    pub fn new(bit: u8) -> Self {
        SignK1(bit & 1)
    }

    /// Reduction of an integer mod 2.
    pub fn from_int(v: i64) -> Self {
        SignK1((v.rem_euclid(2)) as u8)
    }

    pub fn from_bool(b: bool) -> Self {
        SignK1(b as u8)
    }

    pub fn bit(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The lift ℤ/2 → ℤ/4, a ↦ 2a.
    pub fn lift_mod4(self) -> i64 {
        2 * self.0 as i64
    }
}

impl Add for SignK1 {
    type Output = SignK1;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: SignK1) -> SignK1 {
        SignK1(self.0 ^ rhs.0)
    }
}

impl AddAssign for SignK1 {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: SignK1) {
        self.0 ^= rhs.0;
    }
}

// In ℤ/2 subtraction and negation coincide with addition and the identity.
impl Sub for SignK1 {
    type Output = SignK1;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: SignK1) -> SignK1 {
        SignK1(self.0 ^ rhs.0)
    }
}

impl Neg for SignK1 {
    type Output = SignK1;
    fn neg(self) -> SignK1 {
        self
    }
}

impl std::iter::Sum for SignK1 {
    fn sum<I: Iterator<Item = SignK1>>(iter: I) -> SignK1 {
        iter.fold(SignK1::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for SignK1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
