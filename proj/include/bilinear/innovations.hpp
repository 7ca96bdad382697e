#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "bilinear/rng.hpp"

namespace bilinear {

enum class Family {
    uniform_positive,   // uniform on ]0, alpha[
    exponential,        // mean alpha, on ]0, +inf[
    pareto,             // density nu alpha^nu / x^(nu+1) on ]alpha, +inf[
    uniform_symmetric,  // uniform on ]-sqrt(3), sqrt(3)[, unit variance
    standard_normal,    // N(0, 1)
    scaled_student_t,   // sqrt((nu-2)/nu) * Y, Y ~ t(nu), unit variance
};

// A catalog innovation law. Parameters are validated at construction: every
// law must possess mu_8 = E(eps^8), which the fourth-order analytics need,
// so Pareto and Student shapes require nu > 8 and scales must be positive.
class InnovationSpec {
  public:
    static InnovationSpec uniform_positive(double alpha);
    static InnovationSpec exponential(double alpha);
    static InnovationSpec pareto(double nu, double alpha = 1.0);
    static InnovationSpec uniform_symmetric();
    static InnovationSpec standard_normal();
    static InnovationSpec scaled_student_t(double nu);

    Family family() const { return family_; }
    double alpha() const { return alpha_; }
    double nu() const { return nu_; }

    bool symmetric() const;     // odd moments vanish
    bool nonnegative() const;   // support in [0, +inf)
    bool scale_family() const;  // analytics reduce to r = alpha * beta
    std::string name() const;   // stable CLI name

  private:
    InnovationSpec(Family family, double alpha, double nu)
        : family_(family), alpha_(alpha), nu_(nu) {}

    Family family_;
    double alpha_;  // scale; 1 for the fixed unit-variance laws
    double nu_;     // shape; 0 when not applicable
};

// Stable CLI/config names: "uniform0a", "exp", "pareto<nu>" (e.g. pareto12),
// "unif-sym", "normal", "t<nu>" (e.g. t30). `alpha` applies to scale families.
InnovationSpec parse_family(std::string_view name, double alpha = 1.0);

// Raw moments mu[i] = E(eps^i), i = 0..8 (mu[0] = 1).
struct MomentVector {
    std::array<double, 9> mu{};
    double operator[](std::size_t i) const { return mu[i]; }
};

MomentVector raw_moments(const InnovationSpec& spec);

// Whether E(|ln|eps||) < +inf. True for the whole catalog; kept explicit so
// user-defined families would have to declare it.
bool log_moment_exists(const InnovationSpec& spec);

// E(ln|eps|), closed form per family.
double log_abs_moment(const InnovationSpec& spec);

// Excess kurtosis of the law itself (fourth central moment / variance^2 - 3).
double excess_kurtosis(const MomentVector& mu);

// One variate. Realizations per family (see RngStream for the primitives):
//   uniform_positive  alpha * u                        (inversion)
//   exponential       -alpha * ln(u)                   (inversion)
//   pareto            alpha * u^(-1/nu)                (inversion)
//   uniform_symmetric sqrt(3) * (2u - 1)               (inversion)
//   standard_normal   Box-Muller
//   scaled_student_t  z * sqrt((nu-2)/V), V = 2*gamma(nu/2)  (normal/chi-square ratio)
double sample(const InnovationSpec& spec, RngStream& rng);

}  // namespace bilinear
