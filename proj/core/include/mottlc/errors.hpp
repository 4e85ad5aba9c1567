// errors.hpp — exception types and non-fatal diagnostics shared by all modules

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mottlc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error { using Error::Error; };
struct InvalidFilling : Error { using Error::Error; };

// Evaluation exactly at a branch point of the reservoir response.
struct SingularPoint : Error { using Error::Error; };

struct DegenerateSteadyState : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };

// No sign change of Im G in the search window: no instability there.
struct NoRoot : Error { using Error::Error; };
// Re G(omega_c) >= 0: the zero does not correspond to a physical transition.
struct WrongSign : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct FitFailure : Error { using Error::Error; };
struct StepFailure : Error { using Error::Error; };

enum class WarningKind {
    Truncation,     // population or grid reaches the Fock cutoff
    PositivityLoss, // density matrix eigenvalue below -1e-6
    WeakCoupling,   // perturbation theory used outside r*kappa << U
};

struct Warning {
    WarningKind kind;
    std::string message;
};

using Warnings = std::vector<Warning>;

inline bool has_warning(const Warnings& ws, WarningKind kind)
{
    for (const auto& w : ws) {
        if (w.kind == kind) return true;
    }
    return false;
}

} // namespace mottlc
