#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when an operation's preconditions are violated (bad parameters,
/// mismatched backends, unsupported (backend,k) pairs).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative solver fails to converge; carries the residual.
struct convergence_error : std::runtime_error {
    double residual;
    convergence_error(const std::string& what, double res)
        : std::runtime_error(what), residual(res) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw precondition_error(msg);
}

inline bool close_rel(double a, double b, double tol) {
    double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) <= tol * scale;
}

/// Closed interval [lo, hi] on the log-radius axis.
struct Interval {
    double lo;
    double hi;
    double length() const { return hi - lo; }
};

/// Sorted, disjoint closed intervals; the radial representation of compacta.
std::vector<Interval> normalize_intervals(std::vector<Interval> xs);

double intervals_sup(const std::vector<Interval>& xs);
bool intervals_contain(const std::vector<Interval>& xs, double t);

/// Nodes/weights of the 7-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    static constexpr int npts = 7;
    double x[7];
    double w[7];
    static const GaussRule& get();
};

/// Integrate f over [a, b] with one 7-point Gauss panel.
double gauss_panel(const std::function<double(double)>& f, double a, double b);

/// Integrate f over [a, b] split into m equal Gauss panels.
double gauss_composite(const std::function<double(double)>& f, double a, double b, int m);

/// Geometrically spaced samples in (a, b], a > 0.
std::vector<double> logspace(double a, double b, int n);
std::vector<double> linspace(double a, double b, int n);

/// Least-squares slope and intercept of y against x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Thread cap for sweeps: min(hardware, HCL_THREADS if set).
int thread_budget();

/// Run fn(i) for i in [0, n) on up to thread_budget() threads.
/// fn must be thread-safe over disjoint i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hcl
