#include "bilinear/reference_polynomials.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>

#include "bilinear/errors.hpp"
#include "json.hpp"

namespace bilinear::reference {

namespace {

using Coeffs = std::vector<std::int64_t>;

// ---- uniform on ]0, alpha[, 0 < r < 5^(1/4) ----
const Coeffs kRho1UniNum = {-180, 120, -51, -4, 1};
const Coeffs kRho1UniDen = {-180, 180, -177, 12, 7};
const Coeffs kNu = {-604800, -480600, -155700, -257400, -2490, 48525, -6270, 6810,
                    10620,   11384,   4012,    -586,    94,    -53,   6};
const Coeffs kDu = {50400, 12600, 35700, 40200, 13490, 14015, 8360,
                    -5210, -5999, -2407, -720,  114,   177,   -8};
const Coeffs kNuStar = {907200,  -1814400, 4284000, -4510800, 3254460, -2030520, 1973540,
                        -617175, -185700,  371005,  -236308,  78747,   -11496,   511};

// ---- exponential with mean alpha, 0 < r < 24^(-1/4) ----
const Coeffs kRho1ExpNum = {2, -3, 7, -6, 2};
const Coeffs kRho1ExpDen = {1, -2, 19, -20, 6};
const Coeffs kNe = {-5,    -80,    65,    -112,  -1184, -5774,  10848, 12720,
                    -9408, -17880, -16272, 52992, 9216,  -46656, 17280};
const Coeffs kDe = {-5,    2,     -21,    -602,  -9060,  11126, 13252,
                    -26448, 16368, 13896, -12192, 13824, -12672, 4032};
const Coeffs kNeStar = {3,      -12,   52,    -134,  11815, -36752, 44802,
                        1062,   -42648, 17028, 12240, 5616,  -17280, 6048};

// ---- Pareto nu = 12, 0 < r < (2/3)^(1/4) ----
const Coeffs kRho1P12Num = {6050, -10230, 13035, -7524, 1296};
const Coeffs kRho1P12Den = {36300, -79200, 219255, -171160, 29472};
const Coeffs kNp12 = {-7043652000,  -5638479000,  -1900483200,  -6228372150, -3064649280,
                      2622844140,   24533447400,  19854650865,  11360213480, -16340416020,
                      -30235824828, 23037530976,  7650162960,   -11215587456, 2802615552};
const Coeffs kDp12 = {-58697100,  14229600,   -142425360, -468153840, -218936564,
                      536116224,  616017864,  374454192,  130906149,  -805701976,
                      -15605040,  401099652,  -245871648, 48736320};
const Coeffs kNp12Star = {599933276250,     -2617890660000,   4970166270300,  -5546727078200,
                          59041720498845,   -161234870633760, 126074334149694, 2238307939140,
                          25296348317400,   -57875913071352,  -89078826937116, 180941306693040,
                          -102607682886720, 19713391884288};

// ---- Pareto nu = 9, 0 < r < (5/9)^(1/4) ----
const Coeffs kRho1P9Num = {15680, -27720, 39564, -27864, 6561};
const Coeffs kRho1P9Den = {47040, -105840, 343119, -315504, 73791};
const Coeffs kNp9 = {-67737600,   -83339200,   19038600,   -88401600,  -148138920,
                     -511287075,  1466330040,  1499354145, -1537629480, -1966005837,
                     -602608896,  3869347563,  -61620912,  -2818841796, 1179090432};
const Coeffs kDp9 = {-627200,   235200,    -1650600,  -8601600,  -13809280,
                     31729095,  27010080,  -23002305, -21773448, -24182469,
                     58517640,  9248823,   -50143536, 19665504};
const Coeffs kNp9Star = {62449049600,      -281020723200,   532657440000,    -582241598400,
                         25718506014670,   -92872063045440, 100396353649230, -6337711636725,
                         -8536591340550,   -41782534519365, -62336742758694, 195729014255481,
                         -145385404543008, 35664808109193};
const Coeffs kDp9StarBase = {15680, -35280, 114373, -105168, 24597};

std::vector<RationalFormula> build_formulas() {
    std::vector<RationalFormula> fs;
    auto add = [&](PolyFamily fam, FormulaRole role, std::vector<Coeffs> num,
                   std::vector<Coeffs> den, int shift) {
        fs.push_back({fam, role, std::move(num), std::move(den), shift});
    };

    // rho_X(1) = r N / D
    add(PolyFamily::uniform, FormulaRole::rho1, {{0, 1}, kRho1UniNum}, {kRho1UniDen}, 0);
    // rho_{X^2}(1) = -(r/12) Nu / Du
    add(PolyFamily::uniform, FormulaRole::rho1_sq, {{0, -1}, kNu}, {{12}, kDu}, 0);
    // K_u = -3(-3+r^2) / (7(-4+r^3)(-5+r^4)) * Nu*/Du* - 3,  Du* = rho1 denominator squared
    add(PolyFamily::uniform, FormulaRole::kurtosis, {{9, 0, -3}, kNuStar},
        {{7}, {-4, 0, 0, 1}, {-5, 0, 0, 0, 1}, kRho1UniDen, kRho1UniDen}, -3);

    add(PolyFamily::exponential, FormulaRole::rho1, {{0, 2}, kRho1ExpNum}, {kRho1ExpDen}, 0);
    add(PolyFamily::exponential, FormulaRole::rho1_sq, {{0, 2}, kNe}, {kDe}, 0);
    add(PolyFamily::exponential, FormulaRole::kurtosis, {{3, 0, -6}, kNeStar},
        {{-1, 0, 0, 6}, {-1, 0, 0, 0, 24}, kRho1ExpDen, kRho1ExpDen}, -3);

    add(PolyFamily::pareto12, FormulaRole::rho1, {{0, 44}, kRho1P12Num}, {{3}, kRho1P12Den}, 0);
    add(PolyFamily::pareto12, FormulaRole::rho1_sq, {{0, 1}, kNp12}, {{55}, kDp12}, 0);
    add(PolyFamily::pareto12, FormulaRole::kurtosis, {{10, 0, -12}, kNp12Star},
        {{49}, {-3, 0, 0, 4}, {-2, 0, 0, 0, 3}, kRho1P12Den, kRho1P12Den}, -3);

    add(PolyFamily::pareto9, FormulaRole::rho1, {{0, 8}, kRho1P9Num}, {kRho1P9Den}, 0);
    add(PolyFamily::pareto9, FormulaRole::rho1_sq, {{0, 1}, kNp9}, {{48}, kDp9}, 0);
    add(PolyFamily::pareto9, FormulaRole::kurtosis, {{7, 0, -9}, kNp9Star},
        {{9}, {-2, 0, 0, 3}, {-5, 0, 0, 0, 9}, kDp9StarBase, kDp9StarBase}, -3);
    return fs;
}

const std::vector<RationalFormula>& formulas() {
    static const std::vector<RationalFormula> fs = build_formulas();
    return fs;
}

long double horner(const Coeffs& c, long double r) {
    long double acc = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + static_cast<long double>(*it);
    return acc;
}

void check_domain(const RationalFormula& f, double r) {
    const double hi = r_max(f.family);
    if (!(r > 0.0) || !(r < hi)) {
        throw std::domain_error("r = " + std::to_string(r) + " outside the stationarity interval (0, " +
                                std::to_string(hi) + ") of " + family_name(f.family));
    }
}

using BigRational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

BigRational horner_exact(const Coeffs& c, const BigRational& r) {
    BigRational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + *it;
    return acc;
}

// expanded product of all factors, in exact integer arithmetic
std::vector<boost::multiprecision::cpp_int> expand(const std::vector<Coeffs>& factors) {
    std::vector<boost::multiprecision::cpp_int> acc = {1};
    for (const auto& f : factors) {
        std::vector<boost::multiprecision::cpp_int> next(acc.size() + f.size() - 1, 0);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            for (std::size_t j = 0; j < f.size(); ++j) next[i + j] += acc[i] * f[j];
        }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

const RationalFormula& formula(PolyFamily family, FormulaRole role) {
    for (const auto& f : formulas()) {
        if (f.family == family && f.role == role) return f;
    }
    throw std::logic_error("missing formula");
}

double r_max(PolyFamily family) {
    switch (family) {
        case PolyFamily::uniform: return std::pow(5.0, 0.25);
        case PolyFamily::exponential: return std::pow(24.0, -0.25);
        case PolyFamily::pareto12: return std::pow(2.0 / 3.0, 0.25);
        case PolyFamily::pareto9: return std::pow(5.0 / 9.0, 0.25);
    }
    throw std::logic_error("unreachable family");
}

std::string family_name(PolyFamily family) {
    switch (family) {
        case PolyFamily::uniform: return "uniform0a";
        case PolyFamily::exponential: return "exp";
        case PolyFamily::pareto12: return "pareto12";
        case PolyFamily::pareto9: return "pareto9";
    }
    throw std::logic_error("unreachable family");
}

PolyFamily poly_family(const InnovationSpec& spec) {
    switch (spec.family()) {
        case Family::uniform_positive: return PolyFamily::uniform;
        case Family::exponential: return PolyFamily::exponential;
        case Family::pareto:
            if (spec.nu() == 12.0) return PolyFamily::pareto12;
            if (spec.nu() == 9.0) return PolyFamily::pareto9;
            throw std::domain_error("published formulas cover pareto nu = 12 and nu = 9 only");
        default:
            throw std::domain_error("published formulas cover the non-negative families only");
    }
}

double eval_formula(const RationalFormula& f, double r) {
    check_domain(f, r);
    const long double rr = r;
    long double num = 1.0L;
    for (const auto& factor : f.num_factors) num *= horner(factor, rr);
    long double den = 1.0L;
    for (const auto& factor : f.den_factors) den *= horner(factor, rr);
    if (std::fabs(static_cast<double>(den)) < 1e-300) {
        throw pole_error("denominator magnitude below 1e-300 at r = " + std::to_string(r));
    }
    return static_cast<double>(num / den + static_cast<long double>(f.shift));
}

double eval_formula_exact(const RationalFormula& f, double r) {
    check_domain(f, r);
    const BigRational rr(r);  // doubles convert exactly
    BigRational num = 1;
    for (const auto& factor : f.num_factors) num *= horner_exact(factor, rr);
    BigRational den = 1;
    for (const auto& factor : f.den_factors) den *= horner_exact(factor, rr);
    if (den == 0) throw pole_error("exact denominator vanishes at r = " + std::to_string(r));
    const BigRational value = num / den + f.shift;
    return static_cast<double>(static_cast<BigFloat>(value));
}

double delta_poly(PolyFamily family, double r) {
    return eval_formula(formula(family, FormulaRole::rho1), r) -
           eval_formula(formula(family, FormulaRole::rho1_sq), r);
}

double kurtosis_poly(PolyFamily family, double r) {
    return eval_formula(formula(family, FormulaRole::kurtosis), r);
}

std::string formulas_to_json() {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : formulas()) {
        nlohmann::json entry;
        entry["family"] = family_name(f.family);
        switch (f.role) {
            case FormulaRole::rho1: entry["role"] = "rho1"; break;
            case FormulaRole::rho1_sq: entry["role"] = "rho1_sq"; break;
            case FormulaRole::kurtosis: entry["role"] = "kurtosis"; break;
        }
        auto dump = [](const std::vector<boost::multiprecision::cpp_int>& cs) {
            std::vector<std::string> strs;
            strs.reserve(cs.size());
            for (const auto& c : cs) strs.push_back(c.str());
            return strs;
        };
        entry["numerator"] = dump(expand(f.num_factors));
        entry["denominator"] = dump(expand(f.den_factors));
        entry["shift"] = f.shift;
        entry["r_max"] = r_max(f.family);
        out.push_back(entry);
    }
    return out.dump(2);
}

}  // namespace bilinear::reference
