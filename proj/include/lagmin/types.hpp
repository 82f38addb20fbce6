#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace lagmin {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using RVec = std::vector<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

struct SingularPoint : Error {
    using Error::Error;
};

struct OriginCrossing : Error {
    using Error::Error;
};

struct DegenerateFrame : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct UnwrapAmbiguity : Error {
    using Error::Error;
};

struct RecipeError : Error {
    int line = 0, column = 0;
    RecipeError(const std::string& msg, int l, int c)
        : Error(msg + " (line " + std::to_string(l) + ", column " +
                std::to_string(c) + ")"),
          line(l),
          column(c) {}
};

struct IntegrationError : Error {
    double last_valid_time;
    IntegrationError(const std::string& msg, double t)
        : Error(msg), last_valid_time(t) {}
};

struct NeedsMoreIntegration : Error {
    double suggested_length;
    NeedsMoreIntegration(const std::string& msg, double len)
        : Error(msg), suggested_length(len) {}
};

// Principal value in (-pi, pi].
inline double principal_angle(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

}  // namespace lagmin
