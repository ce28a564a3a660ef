#include "hcl/common.hpp"

#include <cstdlib>
#include <mutex>
#include <thread>

namespace hcl {

std::vector<Interval> normalize_intervals(std::vector<Interval> xs) {
    std::erase_if(xs, [](const Interval& iv) { return !(iv.hi >= iv.lo); });
    std::sort(xs.begin(), xs.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const auto& iv : xs) {
        if (!out.empty() && iv.lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, iv.hi);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

double intervals_sup(const std::vector<Interval>& xs) {
    require(!xs.empty(), "empty compact set");
    return xs.back().hi;
}

bool intervals_contain(const std::vector<Interval>& xs, double t) {
    for (const auto& iv : xs)
        if (t >= iv.lo && t <= iv.hi) return true;
    return false;
}

const GaussRule& GaussRule::get() {
    static const GaussRule rule = [] {
        GaussRule r;
        const double x[7] = {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
                             0.0,
                             0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
        const double w[7] = {0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
                             0.4179591836734694,
                             0.3818300505051189, 0.2797053914892766, 0.1294849661688697};
        for (int i = 0; i < 7; ++i) { r.x[i] = x[i]; r.w[i] = w[i]; }
        return r;
    }();
    return rule;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
    const auto& g = GaussRule::get();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < GaussRule::npts; ++i) s += g.w[i] * f(mid + half * g.x[i]);
    return s * half;
}

double gauss_composite(const std::function<double(double)>& f, double a, double b, int m) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) {
        double x0 = a + (b - a) * j / m;
        double x1 = a + (b - a) * (j + 1) / m;
        s += gauss_panel(f, x0, x1);
    }
    return s;
}

std::vector<double> logspace(double a, double b, int n) {
    require(a > 0 && b > a && n >= 2, "logspace needs 0 < a < b, n >= 2");
    std::vector<double> out(n);
    double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i) out[i] = std::exp(la + (lb - la) * i / (n - 1));
    out.back() = b;
    return out;
}

std::vector<double> linspace(double a, double b, int n) {
    require(n >= 2, "linspace needs n >= 2");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
    out.back() = b;
    return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size() && x.size() >= 2, "fit_line needs >= 2 points");
    double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    require(std::fabs(denom) > 1e-300, "degenerate fit (zero variation)");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i)
        f.max_residual = std::max(f.max_residual,
                                  std::fabs(y[i] - (f.intercept + f.slope * x[i])));
    return f;
}

int thread_budget() {
    int hw = int(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("HCL_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int nt = thread_budget();
    if (n == 0) return;
    if (nt <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    nt = int(std::min<std::size_t>(std::size_t(nt), n));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::exception_ptr first_error = nullptr;
    std::mutex err_mutex;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = std::size_t(t); i < n; i += std::size_t(nt)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hcl
