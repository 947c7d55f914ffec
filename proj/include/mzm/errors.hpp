// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Exception types shared across the library.  Each one corresponds to a
// contract that higher-level code may want to catch and report separately.

#pragma once

#include <stdexcept>
#include <string>

namespace mzm {

// Base class so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parity measurement whose outcome is fixed by the current stabilizer
// group was requested with the opposite sign.
struct ForcedOutcomeMismatch : Error {
    using Error::Error;
};

// A tracked operator (or generator) anticommutes with an encoding
// constraint, i.e. the state has left the logical subspace.
struct NotInLogicalSubspace : Error {
    using Error::Error;
};

// A propagated frame drifted away from unitarity beyond tolerance.
struct UnitarityLoss : Error {
    using Error::Error;
};

// Bogoliubov (X, Y) input failed the canonicity identities.
struct CanonicityViolation : Error {
    using Error::Error;
};

// A BdG matrix failed the particle-hole symmetry check.
struct PhsViolation : Error {
    using Error::Error;
};

// A requested basis state involves quasiparticle modes outside the
// near-zero-energy cluster of the network's spectrum.
struct BasisOutsideZeroSector : Error {
    using Error::Error;
};

// Malformed configuration file or schedule (CLI-facing).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace mzm
