#ifndef LANDEN_ERROR_HPP
#define LANDEN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace landen
{

enum class errc {
    non_finite,
    no_convergence,
    degenerate_curve,
    inconsistent_invariants,
    pole_proximity,
    off_curve,
    out_of_range,
    log_singularity,
};

inline const char *to_string(errc code)
{
    switch (code) {
        case errc::non_finite:
            return "NonFinite";
        case errc::no_convergence:
            return "NoConvergence";
        case errc::degenerate_curve:
            return "DegenerateCurve";
        case errc::inconsistent_invariants:
            return "InconsistentInvariants";
        case errc::pole_proximity:
            return "PoleProximity";
        case errc::off_curve:
            return "OffCurve";
        case errc::out_of_range:
            return "OutOfRange";
        case errc::log_singularity:
            return "LogSingularity";
    }
    return "Unknown";
}

/// Exception thrown by every fallible operation of the library.
class error : public std::runtime_error
{
public:
    error(errc code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept
    {
        return code_;
    }

private:
    errc code_;
};

} // namespace landen

#endif
