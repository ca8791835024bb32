// errors.hpp — Exception taxonomy shared by all rpolab modules.

#pragma once

#include <stdexcept>
#include <string>

namespace rpolab {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// symplectic-core
struct NotPositiveDefinite : Error { using Error::Error; };

// group actions
struct NonSymplecticGenerator : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };

// relative equilibria
struct NotRelEq : Error { using Error::Error; };

// reduction
struct EmptyLevelSet : Error { using Error::Error; };
struct NewtonStall : Error { using Error::Error; };
struct UnsupportedGroupKind : Error { using Error::Error; };

// dynamics
struct InnerNewtonDiverged : Error { using Error::Error; };
struct NewtonDiverged : Error { using Error::Error; };
struct ConvergedToEquilibrium : Error { using Error::Error; };
struct RankAmbiguous : Error { using Error::Error; };

} // namespace rpolab
