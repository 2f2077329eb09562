#pragma once

#include <functional>
#include <vector>

#include "metriclab/family.hpp"

namespace metriclab {

/// Step-size study attached to a finite-difference estimate: the raw
/// central-difference estimates per step, residuals against a reference,
/// and the least-squares order fitted to them.
struct ConvergenceRecord {
    std::vector<double> steps;      // decreasing
    std::vector<double> residuals;  // same length as steps
    double fitted_order = 0.0;
    double threshold = 0.0;
    bool pass = false;
    bool monotone = true;  // non-monotone residual decay is flagged, not fatal
};

/// Least-squares slope of log(residual) vs log(step). Entries at or below
/// `floor` are dropped (roundoff-dominated).
double fit_order(const std::vector<double>& steps, const std::vector<double>& residuals,
                 double floor = 1e-14);

struct FdScalarResult {
    double value = 0.0;                 // Richardson-extrapolated
    std::vector<double> steps;          // dt ladder, decreasing
    std::vector<double> estimates;      // plain central estimate per step
};

/// Central finite difference in t of a scalar-valued evaluation, with one
/// Richardson level over a halving ladder (default 3 steps from dt).
/// order 1: (f(t+d) - f(t-d)) / 2d;  order 2: (f(d) - 2 f(0) + f(-d)) / d^2.
FdScalarResult fd_scalar_derivative(const std::function<double(double)>& eval,
                                    double dt, int order, int ladder = 3);

/// Componentwise version for field-valued evaluations. All components
/// share the ladder; FieldT is any FieldStorage-derived type.
template <class FieldT>
struct FdFieldResult {
    FieldT value;  // Richardson-extrapolated componentwise
    std::vector<double> steps;
    std::vector<FieldT> estimates;
};

FdFieldResult<ScalarField> fd_field_derivative(
    const std::function<ScalarField(double)>& eval, double dt, int order, int ladder = 3);
FdFieldResult<SymTensor2Field> fd_field_derivative(
    const std::function<SymTensor2Field(double)>& eval, double dt, int order, int ladder = 3);
FdFieldResult<Tensor3Field> fd_field_derivative(
    const std::function<Tensor3Field(double)>& eval, double dt, int order, int ladder = 3);

/// Residuals of the raw estimates against an analytic reference
/// (max-norm over a region for fields), fitted order, threshold check.
ConvergenceRecord compare_against(const FdScalarResult& fd, double analytic,
                                  double rel_scale, double threshold, double order_min);

template <class FieldT>
ConvergenceRecord compare_against(const FdFieldResult<FieldT>& fd, const FieldT& analytic,
                                  const Region& region, double rel_scale, double threshold,
                                  double order_min);

/// Default step ladder start (halved twice by the drivers).
constexpr double kDefaultDt = 1e-2;

}  // namespace metriclab
