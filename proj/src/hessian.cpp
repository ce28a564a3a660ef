#include "hcl/hessian.hpp"

#include <cmath>
#include <numbers>

#include "hcl/toric.hpp"

namespace hcl {

namespace {

constexpr double kPi = std::numbers::pi;

double powk(double x, int k) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= x;
    return p;
}

HessianMeasure radial_hessian(const PshFunction& u, const Domain& dom, int k) {
    const auto& p = u.radial;
    const int n = dom.n;
    const double a = 2.0 * double(n - k);
    HessianMeasure m;
    m.kind = DomainKind::RadialBall;
    m.n = n;
    m.k = k;
    m.t = p.t;
    std::size_t N = p.size();
    m.d_plus.resize(N);
    m.d_minus.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        m.d_plus[i] = std::max(p.d_plus[i], 0.0);
        m.d_minus[i] = std::max(p.d_minus[i], 0.0);
    }
    m.H_left.resize(N);
    m.H_right.resize(N);
    m.core = powk(m.d_minus[0], k) * std::exp(a * p.t[0]);
    double acc = m.core;
    for (std::size_t i = 0; i < N; ++i) {
        double hl = powk(m.d_minus[i], k) * std::exp(a * p.t[i]);
        double hr = powk(m.d_plus[i], k) * std::exp(a * p.t[i]);
        double jump = hr - hl;
        if (i == N - 1) jump = 0.0;  // no mass on the outer boundary sphere
        if (jump < 0) {
            m.worst_negative_weight = std::min(m.worst_negative_weight, jump);
            jump = 0.0;
        }
        m.H_left[i] = acc;
        acc += jump;
        m.H_right[i] = acc;
        if (i + 1 < N) {
            double cell = powk(m.d_minus[i + 1], k) * std::exp(a * p.t[i + 1]) -
                          powk(m.d_plus[i], k) * std::exp(a * p.t[i]);
            if (cell < 0) {
                m.worst_negative_weight = std::min(m.worst_negative_weight, cell);
                cell = 0.0;
            }
            acc += cell;
        }
    }
    m.total_mass = m.H_right.back();
    return m;
}

HessianMeasure grid_hessian(const PshFunction& u, const Domain& dom) {
    const auto& msh = dom.mesh;
    HessianMeasure m;
    m.kind = DomainKind::PlanarGrid;
    m.n = 1;
    m.k = 1;
    m.weights.assign(u.nodes.size(), 0.0);
    const double c = msh.h * msh.h / (2.0 * kPi);
    double total = 0.0;
    for (int j = 1; j + 1 < msh.nx; ++j)
        for (int i = 1; i + 1 < msh.nx; ++i) {
            int id = msh.idx(i, j);
            if (!msh.interior[id]) continue;
            double lap = (u.nodes[msh.idx(i + 1, j)] + u.nodes[msh.idx(i - 1, j)] +
                          u.nodes[msh.idx(i, j + 1)] + u.nodes[msh.idx(i, j - 1)] -
                          4.0 * u.nodes[id]) / (msh.h * msh.h);
            double w = c * lap;
            m.worst_negative_weight = std::min(m.worst_negative_weight, w);
            m.weights[id] = w;
            total += w;
        }
    m.total_mass = total;
    return m;
}

}  // namespace

double HessianMeasure::H(double tt, bool from_right) const {
    require(kind == DomainKind::RadialBall, "H(t) is a radial-backend notion");
    if (tt < t.front()) return 0.0;
    if (tt >= t.back()) return total_mass;
    auto it = std::upper_bound(t.begin(), t.end(), tt);
    std::size_t i = std::size_t(it - t.begin()) - 1;
    if (std::fabs(tt - t[i]) < 1e-15) return from_right ? H_right[i] : H_left[i];
    // inside cell i: raw model d(s)^k exp(a s), anchored at the cell's left end
    double a = 2.0 * double(n - k);
    double w = (tt - t[i]) / (t[i + 1] - t[i]);
    double d = d_plus[i] * (1 - w) + d_minus[i + 1] * w;
    double raw_t = powk(d, k) * std::exp(a * tt);
    double raw_l = powk(d_plus[i], k) * std::exp(a * t[i]);
    return H_right[i] + std::max(0.0, raw_t - raw_l);
}

HessianMeasure hessian_measure(const PshFunction& u, const Domain& dom, int k) {
    require(u.kind == dom.kind, "function/domain backend mismatch");
    require(k >= 1 && k <= dom.n, "need 1 <= k <= n");
    auto diag = validate_psh(u, dom, k);
    if (!diag.pass)
        throw precondition_error("hessian_measure: input is not k-psh within tolerance "
                                 "(worst defect " + std::to_string(std::max({
                                     diag.worst_negativity, diag.worst_monotone,
                                     diag.worst_convexity, diag.boundary_value})) + ")");
    switch (dom.kind) {
        case DomainKind::RadialBall:
            return radial_hessian(u, dom, k);
        case DomainKind::PlanarGrid:
            require(k == 1 && dom.n == 1, "planar backend is n = k = 1");
            return grid_hessian(u, dom);
        case DomainKind::ToricPolydisc:
            require(k == dom.n, "toric backend supports k = n only");
            return toric_hessian(u, dom);
    }
    throw precondition_error("unknown backend");
}

double mass_on(const HessianMeasure& m, const CompactSubset& K, const Domain& dom) {
    if (K.empty) return 0.0;
    switch (m.kind) {
        case DomainKind::RadialBall: {
            require(K.kind == DomainKind::RadialBall, "set/measure backend mismatch");
            double s = 0.0;
            for (const auto& iv : K.radial) {
                double hi = m.H(std::min(iv.hi, m.t.back()), true);
                double lo = std::isinf(iv.lo) ? 0.0 : m.H(iv.lo, false);
                s += std::max(0.0, hi - lo);
            }
            return s;
        }
        case DomainKind::PlanarGrid: {
            require(K.kind == DomainKind::PlanarGrid, "set/measure backend mismatch");
            double s = 0.0;
            for (std::size_t i = 0; i < K.mask.size(); ++i)
                if (K.mask[i]) s += m.weights[i];
            return s;
        }
        case DomainKind::ToricPolydisc:
            return toric_mass_on(m, K, dom);
    }
    throw precondition_error("unknown backend");
}

double energy_on(const HessianMeasure& m, const PshFunction& u, const Domain& dom,
                 const CompactSubset* K) {
    switch (m.kind) {
        case DomainKind::RadialBall: {
            const auto& p = u.radial;
            auto inside = [&](double tt) {
                if (!K) return true;
                if (K->empty) return false;
                for (const auto& iv : K->radial)
                    if ((std::isinf(iv.lo) || tt >= iv.lo - 1e-15) && tt <= iv.hi + 1e-15)
                        return true;
                return false;
            };
            double a = 2.0 * double(m.n - m.k);
            double s = 0.0;
            if (inside(p.t.front())) s += m.core * (-p.v.front());
            std::size_t N = p.size();
            for (std::size_t i = 0; i < N; ++i) {
                double jump = m.H_right[i] - m.H_left[i];
                if (jump > 0 && inside(p.t[i])) s += jump * (-p.v[i]);
                if (i + 1 < N) {
                    double cellmass = m.H_left[i + 1] - m.H_right[i];
                    if (cellmass <= 0) continue;
                    double t0 = p.t[i], t1 = p.t[i + 1];
                    double d0 = m.d_plus[i], d1 = m.d_minus[i + 1];
                    double dp = (d1 - d0) / (t1 - t0);
                    auto integrand = [&](double tt) {
                        if (!inside(tt)) return 0.0;
                        double w = (tt - t0) / (t1 - t0);
                        double d = d0 * (1 - w) + d1 * w;
                        double hp = (m.k * powk(d, m.k - 1) * dp + a * powk(d, m.k)) *
                                    std::exp(a * tt);
                        return (-p.eval(tt)) * hp;
                    };
                    s += gauss_panel(integrand, t0, t1);
                }
            }
            return s;
        }
        case DomainKind::PlanarGrid: {
            double s = 0.0;
            for (std::size_t i = 0; i < m.weights.size(); ++i) {
                if (K && !(i < K->mask.size() && K->mask[i])) continue;
                s += (-u.nodes[i]) * m.weights[i];
            }
            return s;
        }
        case DomainKind::ToricPolydisc:
            return toric_energy_on(m, u, dom, K);
    }
    throw precondition_error("unknown backend");
}

EnergyNorm energy_and_norm(const PshFunction& u, const Domain& dom, int k) {
    auto m = hessian_measure(u, dom, k);
    EnergyNorm en;
    en.energy = energy_on(m, u, dom);
    if (en.energy < 0 && en.energy > -1e-14) en.energy = 0.0;
    en.norm = std::pow(en.energy, 1.0 / double(k + 1));
    return en;
}

double total_mass_ma(const PshFunction& u, const Domain& dom) {
    return hessian_measure(u, dom, dom.n).total_mass;
}

double laplacian_mass(const PshFunction& u, const Domain& dom) {
    return hessian_measure(u, dom, 1).total_mass;
}

ComparisonReport comparison_check(const PshFunction& u, const PshFunction& v,
                                  const Domain& dom, int k, double tol) {
    require(u.kind == v.kind && u.kind == dom.kind, "backend mismatch");
    // precondition u <= v pointwise, reported rather than clipped
    double worst = -kInf;
    switch (dom.kind) {
        case DomainKind::RadialBall: {
            std::vector<double> probe = u.radial.t;
            probe.insert(probe.end(), v.radial.t.begin(), v.radial.t.end());
            std::sort(probe.begin(), probe.end());
            for (double tt : probe) worst = std::max(worst, u.radial.eval(tt) - v.radial.eval(tt));
            break;
        }
        case DomainKind::PlanarGrid:
            for (std::size_t i = 0; i < u.nodes.size(); ++i)
                worst = std::max(worst, u.nodes[i] - v.nodes[i]);
            break;
        case DomainKind::ToricPolydisc:
            for (std::size_t i = 0; i < u.toric.v.size(); ++i)
                worst = std::max(worst, u.toric.v[i] - v.toric.v[i]);
            break;
    }
    require(worst <= 1e-12 * (1.0 + u.sup_abs()),
            "comparison_check: u <= v violated (worst gap " + std::to_string(worst) + ")");

    ComparisonReport rep;
    auto mu = hessian_measure(u, dom, k);
    auto mv = hessian_measure(v, dom, k);
    rep.mass_u = mu.total_mass;
    rep.mass_v = mv.total_mass;
    rep.energy_u = energy_on(mu, u, dom);
    rep.energy_v = energy_on(mv, v, dom);
    double scale = std::max({1.0, rep.mass_u, rep.energy_u});
    rep.margin = std::min(rep.mass_u - rep.mass_v, rep.energy_u - rep.energy_v);
    rep.pass = rep.mass_u >= rep.mass_v - tol * scale &&
               rep.energy_u >= rep.energy_v - tol * scale;
    return rep;
}

}  // namespace hcl
