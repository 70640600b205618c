// Copyright (C) 2026, isograph contributors
// This software may be modified and distributed under the terms
// of the BSD 3-Clause license.
// See the LICENSE file for details.

#ifndef ISOGRAPH_COMMON_HPP
#define ISOGRAPH_COMMON_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace isograph {

using Vec3 = Eigen::Vector3d;

/// Integer triple addressing a cell or a lattice vertex.
using Index3 = std::array<std::int64_t, 3>;

/// Malformed user input: bad files, out-of-range values, inconsistent dimensions.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The data admits no interface (for example a zero target volume).
class NoInterfaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultIsoTolerance = 1e-12;

inline constexpr const char* kVersion = "1.0.0";

} // namespace isograph

#endif
