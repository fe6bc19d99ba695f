use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

/// Number of fixed-point units per unit of energy.
pub const UNITS_PER_ENERGY: i64 = 1_000_000_000;

/// Fixed-point energy amount (payoffs, memory costs, cumulative scores).
///
/// Stored as an integer count of nano-units so score bookkeeping is exact and
/// associative: the sum of two round deltas always equals the payoff cell sum
/// minus both memory charges, bit for bit, regardless of evaluation order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Energy(i64);

impl Energy {
    pub const ZERO: Energy = Energy(0);

    pub const fn from_units(units: i64) -> Self {
        Energy(units)
    }

    /// Rounds a real amount to the nearest representable unit.
    pub fn from_f64(value: f64) -> Self {
        Energy((value * UNITS_PER_ENERGY as f64).round() as i64)
    }

    pub const fn units(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / UNITS_PER_ENERGY as f64
    }

    pub fn checked_mul(self, factor: i64) -> Option<Self> {
        self.0.checked_mul(factor).map(Energy)
    }
}

impl Add for Energy {
    type Output = Energy;
    fn add(self, rhs: Energy) -> Energy {
        Energy(self.0 + rhs.0)
    }
}

impl Sub for Energy {
    type Output = Energy;
    fn sub(self, rhs: Energy) -> Energy {
        Energy(self.0 - rhs.0)
    }
}

impl Neg for Energy {
    type Output = Energy;
    fn neg(self) -> Energy {
        Energy(-self.0)
    }
}

impl AddAssign for Energy {
    fn add_assign(&mut self, rhs: Energy) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Energy {
    fn sub_assign(&mut self, rhs: Energy) {
        self.0 -= rhs.0;
    }
}

impl Sum for Energy {
    fn sum<I: Iterator<Item = Energy>>(iter: I) -> Energy {
        iter.fold(Energy::ZERO, Add::add)
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}
