#pragma once

#include <stdexcept>
#include <string>

namespace bilinear {

// A moment-recursion denominator 1 - beta^n mu_n would be taken with
// |beta^n mu_n| >= 1 - 1e-12: non-stationary or numerically singular input.
class pole_error : public std::runtime_error {
  public:
    explicit pole_error(const std::string& what) : std::runtime_error(what) {}
};

// Transformed series has (numerically) zero variance, or the process variance
// itself degenerated; correlations are undefined.
class degenerate_error : public std::runtime_error {
  public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// A certified sign-change bracket could not be resolved because the function
// is below noise level at both ends (flat region; refine the grid).
class unresolved_bracket_error : public std::runtime_error {
  public:
    explicit unresolved_bracket_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bilinear
