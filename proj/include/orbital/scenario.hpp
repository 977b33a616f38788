#pragma once

#include "orbital/dimension.hpp"
#include "orbital/point_cloud.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace orbital {

struct Ingredient {
    double value = 0.0;
    /// "analytic: ..." or "estimated: ..." with the method used.
    std::string provenance;
};

struct VerificationReport {
    std::string name;
    /// Least-squares box-counting slope of the orbital cloud.
    double measured = 0.0;
    /// max of the three ingredients.
    double predicted = 0.0;
    Ingredient dim_seed;
    Ingredient dim_limit_set;
    Ingredient exponent;
    double tolerance = 0.0;
    bool pass = false;
    /// The max formula is expected to fail here (unbounded seed).
    bool expected_violation = false;
    /// "pass", "fail" or "expected-violation".
    std::string status;
    BoxCountReport orbital;
    /// Additional measurements, in a fixed order.
    std::vector<std::pair<std::string, double>> metrics;
    /// Effective parameters after overrides.
    std::vector<std::pair<std::string, double>> parameters;
    /// Wall time; not part of any written report.
    double runtime_seconds = 0.0;

    double metric(const std::string& key) const;
};

std::vector<std::string> scenario_names();

/// Parameter names and defaults of a scenario. Throws Error(UnknownScenario).
std::vector<std::pair<std::string, double>> scenario_parameters(const std::string& name);

/// Throws Error(UnknownScenario) for names outside the catalog and
/// Error(InvalidArgument) for override keys the scenario does not have.
VerificationReport run_scenario(const std::string& name, const std::map<std::string, double>& overrides = {});

struct DirichletResult {
    long m = 0;
    long n = 1;
    double error = 0.0;
};

/// Minimizes |alpha^m beta^n - y| over |m| <= m_bound, taking for each m the
/// n >= 1 closest to the optimum in log space.
DirichletResult dirichlet_approximate(double alpha, double beta, double y, long m_bound);

/// The `count` best per-m candidates of dirichlet_approximate, by error.
std::vector<DirichletResult> dirichlet_best(double alpha, double beta, double y, long m_bound, std::size_t count);

/// Fraction of the side-delta grid cells meeting [lo, hi] that hold a point
/// (first coordinate only).
double density_fraction(const PointCloud& cloud, double lo, double hi, double delta);

} // namespace orbital
