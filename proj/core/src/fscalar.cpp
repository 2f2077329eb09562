#include "metriclab/fscalar.hpp"

#include <cmath>
#include <sstream>

namespace metriclab {

namespace {

bool is_constant(const std::vector<double>& coeffs) {
    for (size_t k = 1; k < coeffs.size(); ++k)
        if (coeffs[k] != 0.0) return false;
    return true;
}

double eval_poly(const std::vector<double>& coeffs, double s, int deriv) {
    // d-th derivative of sum c_k s^k: sum_{k>=d} c_k k!/(k-d)! s^{k-d}
    double acc = 0.0;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= deriv; --k) {
        double fac = 1.0;
        for (int j = 0; j < deriv; ++j) fac *= (k - j);
        acc = acc * s + coeffs[k] * fac;
    }
    return acc;
}

}  // namespace

FScalarFunction::FScalarFunction(Kind kind, std::vector<double> coeffs)
    : kind_(kind), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty() || is_constant(coeffs_))
        throw chart_error("F must be a non-constant function of the scalar curvature");
}

FScalarFunction FScalarFunction::linear() { return {Kind::Linear, {0.0, 1.0}}; }

FScalarFunction FScalarFunction::power(int beta) {
    if (beta < 1) throw chart_error("power F requires a positive integer exponent");
    std::vector<double> c(beta + 1, 0.0);
    c[beta] = 1.0;
    return {Kind::Power, std::move(c)};
}

FScalarFunction FScalarFunction::polynomial(std::vector<double> coeffs) {
    return {Kind::Polynomial, std::move(coeffs)};
}

FScalarFunction FScalarFunction::affine_power(double scale, int beta, double offset) {
    if (beta < 1) throw chart_error("affine-power F requires a positive integer exponent");
    if (scale == 0.0) throw chart_error("affine-power F requires a nonzero scale");
    std::vector<double> c(beta + 1, 0.0);
    c[0] = offset;
    c[beta] = scale;
    return {Kind::AffinePower, std::move(c)};
}

double FScalarFunction::f(double s) const { return eval_poly(coeffs_, s, 0); }
double FScalarFunction::d1(double s) const { return eval_poly(coeffs_, s, 1); }
double FScalarFunction::d2(double s) const { return eval_poly(coeffs_, s, 2); }
double FScalarFunction::d3(double s) const { return eval_poly(coeffs_, s, 3); }

std::string FScalarFunction::describe() const {
    std::ostringstream os;
    bool first = true;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
        if (coeffs_[k] == 0.0) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0 || coeffs_[k] != 1.0) os << coeffs_[k];
        if (k >= 1) os << (k == 1 ? "s" : "s^" + std::to_string(k));
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace metriclab
