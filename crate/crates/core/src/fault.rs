//! Deliberate perturbations used to confirm that checks can fail.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Fault {
    /// `nu(h)` replaced by `nu(h) + h` inside the checked identities.
    Nu,
    /// The Casimir term of `Delta(J(x))` enters with the opposite sign.
    OmegaSign,
    /// `hbar/2` in `Delta(J(x))` replaced by `hbar`.
    CocycleScale,
    /// The `hbar^3/4` term dropped from the expected `(Delta - box)(A)`.
    Step2Drop,
    /// The correction term receives a non-equivariant shift.
    EquivariantShift,
}

impl Fault {
    pub const ALL: [Fault; 5] =
        [Fault::Nu, Fault::OmegaSign, Fault::CocycleScale, Fault::Step2Drop, Fault::EquivariantShift];

    pub fn name(self) -> &'static str {
        match self {
            Fault::Nu => "nu",
            Fault::OmegaSign => "omega-sign",
            Fault::CocycleScale => "cocycle-scale",
            Fault::Step2Drop => "step2-drop",
            Fault::EquivariantShift => "equivariant-shift",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFault(s.to_string()))
    }
}
