#pragma once

#include <cstdint>

#include "metriclab/oracle.hpp"
#include "metriclab/report.hpp"
#include "metriclab/warped.hpp"

namespace metriclab {

/// How to build the base metric at any resolution; refinement studies
/// rebuild it on coarser and finer charts.
struct MetricRecipe {
    enum class Kind { Flat, ConformalPerturbed, ConformalSin, Warped };

    Kind kind = Kind::Flat;
    double amplitude = 0.1;   // conformal kinds
    int max_wavenumber = 2;   // ConformalPerturbed band limit
    uint64_t seed = 1;        // ConformalPerturbed profile seed
    WarpedParams warped;      // Warped kind

    MetricField build(const ChartSpec& chart) const;
    std::string describe() const;
};

/// Verification suites. Each runs one family of formula checks and
/// emits one report entry per (formula, direction).
enum class Suite {
    VolumeScalarVariation,      // volume-element and scalar-curvature variation
    InnerProductVariation,      // pairing variation for static tensors
    HessianLaplacianVariation,  // Hessian and Laplacian variation
    ConnectionVariation,
    RicciVariation,
    FirstVariation,             // d/dt of the functional vs -<E_F, h>
    SecondVariation,            // volume-normalized d2/dt2 vs <T0 + T1, h>
    VolumeConstraint,           // volume-preserving family constraint integral
    EinsteinDivergence,         // refinement study of |delta E_F|_inf
    TraceIdentity,
    FormEquivalence,            // compact vs expanded einstein tensor
    CovectorProductRule,        // delta(f alpha) = -<df, alpha> + f delta alpha
    DivergencePairing,          // (delta T)(Z) = delta(T(.,Z)) + 1/2 <T, L_Z g>
    ContractedBianchi,          // delta Ric + 1/2 dS -> 0 under refinement
    MetricIdentities,           // ring_r(g) = Ric, lichnerowicz(g) ~ 0, delta g = 0
};

const char* suite_name(Suite s);
/// Parses the kebab-case suite name; throws config_error on unknown names.
Suite suite_from_name(const std::string& name);
std::vector<Suite> all_suites();

struct SuiteOptions {
    int directions = 3;
    uint64_t direction_seed = 42;
    int max_wavenumber = 2;
    int modes = 3;
    double direction_amplitude = 1.0;
    double dt = kDefaultDt;
    int ladder = 3;
    double tolerance_scale = 1.0;
    std::vector<int> refinement = {16, 32, 64};  // per-axis N for refinement suites
    double order_min_t = 1.9;   // fitted t-order threshold for FD comparisons
    double order_min_x = 3.0;   // fitted refinement-order threshold
    double richardson_rel_tol = 1e-6;
    double second_variation_rel_tol = 1e-4;
    double trace_identity_rel_tol = 1e-10;
};

/// Runs one suite against the recipe on the given chart and appends its
/// entries to the report. Direction fields are drawn deterministically
/// from options.direction_seed.
void run_formula_suite(Suite suite, const MetricRecipe& recipe, const ChartSpec& chart,
                       const FScalarFunction& F, const SuiteOptions& options,
                       VerificationReport& report);

}  // namespace metriclab
