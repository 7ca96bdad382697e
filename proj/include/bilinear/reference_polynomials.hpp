#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bilinear/innovations.hpp"

namespace bilinear::reference {

enum class PolyFamily { uniform, exponential, pareto12, pareto9 };
enum class FormulaRole { rho1, rho1_sq, kurtosis };

// One published rational function, kept in its factored form:
//   value(r) = prod(num_factors)(r) / prod(den_factors)(r) + shift
// Factor coefficients are exact integers in ascending powers of r, transcribed
// verbatim (squared denominators appear as a repeated base factor). shift is
// -3 for the kurtosis formulas and 0 otherwise.
struct RationalFormula {
    PolyFamily family;
    FormulaRole role;
    std::vector<std::vector<std::int64_t>> num_factors;
    std::vector<std::vector<std::int64_t>> den_factors;
    int shift = 0;
};

const RationalFormula& formula(PolyFamily family, FormulaRole role);

// Right edge of the stationarity interval in r = alpha * beta.
double r_max(PolyFamily family);

std::string family_name(PolyFamily family);
PolyFamily poly_family(const InnovationSpec& spec);  // throws for other laws

// Horner evaluation in extended precision. r must lie strictly inside
// (0, r_max); throws pole_error if the denominator magnitude is below 1e-300.
double eval_formula(const RationalFormula& f, double r);

// Exact-rational audit path: evaluates the same formula in arbitrary-precision
// rational arithmetic and rounds once to double.
double eval_formula_exact(const RationalFormula& f, double r);

// Published rho1 minus published rho1_sq.
double delta_poly(PolyFamily family, double r);
double kurtosis_poly(PolyFamily family, double r);

// Expanded integer coefficients (numerator, denominator) of every formula,
// for external audit: [{family, role, numerator, denominator, shift, r_max}].
std::string formulas_to_json();

}  // namespace bilinear::reference
