#pragma once

#include <string>
#include <vector>

#include "metriclab/errors.hpp"

namespace metriclab {

/// The scalar function F applied to the scalar curvature, with exact
/// analytic derivatives up to third order. The catalogue is polynomial
/// (integer powers only), so F is defined for sign-changing arguments and
/// no derivative is ever taken numerically in s.
class FScalarFunction {
public:
    enum class Kind { Linear, Power, Polynomial, AffinePower };

    static FScalarFunction linear();                      // F(s) = s
    static FScalarFunction power(int beta);               // F(s) = s^beta, beta >= 1
    static FScalarFunction polynomial(std::vector<double> coeffs);  // sum c_k s^k
    static FScalarFunction affine_power(double scale, int beta, double offset);
    // F(s) = scale * s^beta + offset

    double f(double s) const;
    double d1(double s) const;
    double d2(double s) const;
    double d3(double s) const;

    Kind kind() const { return kind_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    std::string describe() const;

private:
    FScalarFunction(Kind kind, std::vector<double> coeffs);

    Kind kind_ = Kind::Linear;
    std::vector<double> coeffs_;  // canonical polynomial representation
};

}  // namespace metriclab
