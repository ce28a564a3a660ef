#include "hcl/domain.hpp"

#include <cmath>
#include <queue>

namespace hcl {

std::string to_string(DomainKind k) {
    switch (k) {
        case DomainKind::RadialBall: return "radial";
        case DomainKind::ToricPolydisc: return "toric";
        case DomainKind::PlanarGrid: return "grid";
    }
    return "?";
}

std::vector<double> Domain::t_grid() const {
    std::vector<double> t(npts);
    for (int i = 0; i < npts; ++i) t[i] = t_min + (0.0 - t_min) * i / (npts - 1);
    t.back() = 0.0;
    return t;
}

namespace {

// Mask connectivity: the interior must be one component and the exterior
// (within the box) must reach the box frame.
void check_mask(const PlanarMesh& m) {
    int nx = m.nx;
    std::size_t total = std::size_t(nx) * nx;
    require(m.interior.size() == total, "mask size mismatch");
    long ninterior = 0;
    int seed = -1;
    for (int j = 0; j < nx; ++j)
        for (int i = 0; i < nx; ++i)
            if (m.interior[m.idx(i, j)]) {
                ++ninterior;
                if (seed < 0) seed = m.idx(i, j);
                require(i > 0 && j > 0 && i < nx - 1 && j < nx - 1,
                        "mask touches the bounding box frame");
            }
    require(ninterior > 0, "empty interior mask");

    // flood fill interior
    std::vector<uint8_t> seen(total, 0);
    std::queue<int> q;
    q.push(seed);
    seen[seed] = 1;
    long reached = 1;
    const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
    while (!q.empty()) {
        int cur = q.front();
        q.pop();
        int i = cur % nx, j = cur / nx;
        for (int d = 0; d < 4; ++d) {
            int ii = i + dx[d], jj = j + dy[d];
            if (ii < 0 || jj < 0 || ii >= nx || jj >= nx) continue;
            int id = m.idx(ii, jj);
            if (m.interior[id] && !seen[id]) {
                seen[id] = 1;
                ++reached;
                q.push(id);
            }
        }
    }
    require(reached == ninterior, "interior mask is disconnected");

    // flood fill exterior from the frame; every exterior node must be reached
    std::fill(seen.begin(), seen.end(), 0);
    for (int i = 0; i < nx; ++i) {
        for (int id : {m.idx(i, 0), m.idx(i, nx - 1), m.idx(0, i), m.idx(nx - 1, i)}) {
            if (!m.interior[id] && !seen[id]) {
                seen[id] = 1;
                q.push(id);
            }
        }
    }
    while (!q.empty()) {
        int cur = q.front();
        q.pop();
        int i = cur % nx, j = cur / nx;
        for (int d = 0; d < 4; ++d) {
            int ii = i + dx[d], jj = j + dy[d];
            if (ii < 0 || jj < 0 || ii >= nx || jj >= nx) continue;
            int id = m.idx(ii, jj);
            if (!m.interior[id] && !seen[id]) {
                seen[id] = 1;
                q.push(id);
            }
        }
    }
    for (std::size_t id = 0; id < total; ++id)
        require(m.interior[id] || seen[id],
                "mask complement has a component that does not reach the box");
}

}  // namespace

Domain build_domain(const DomainSpec& spec) {
    Domain dom;
    dom.kind = spec.kind;
    dom.n = spec.n;
    require(spec.n >= 1, "complex dimension must be >= 1");
    switch (spec.kind) {
        case DomainKind::RadialBall: {
            require(spec.t_min < 0, "t_min must be negative");
            require(spec.npts >= 16, "radial grid needs N >= 16");
            dom.t_min = spec.t_min;
            dom.npts = spec.npts;
            break;
        }
        case DomainKind::ToricPolydisc: {
            require(spec.t_min < 0, "t_min must be negative");
            require(spec.npts >= 16, "toric grid needs N >= 16 per axis");
            require(spec.n <= 2, "toric backend supports n <= 2");
            dom.t_min = spec.t_min;
            dom.npts = spec.npts;
            break;
        }
        case DomainKind::PlanarGrid: {
            require(spec.n == 1, "planar grid is n = 1 only");
            require(spec.h > 0 && spec.box_half > 0, "grid spacing must be positive");
            require(spec.mask_radius > 0 && spec.mask_radius < spec.box_half + 1e-12,
                    "mask radius must fit inside the box");
            PlanarMesh m;
            m.h = spec.h;
            m.x0 = -spec.box_half;
            m.nx = int(std::lround(2.0 * spec.box_half / spec.h)) + 1;
            require(m.nx >= 16, "grid needs at least 16 nodes per axis");
            m.interior.assign(std::size_t(m.nx) * m.nx, 0);
            double r2 = spec.mask_radius * spec.mask_radius;
            for (int j = 0; j < m.nx; ++j)
                for (int i = 0; i < m.nx; ++i) {
                    double x = m.x(i), y = m.y(j);
                    if (x * x + y * y < r2 - 1e-12) m.interior[m.idx(i, j)] = 1;
                }
            check_mask(m);
            dom.mesh = m;
            dom.t_min = std::log(spec.h);  // unused; keeps dt() harmless
            dom.npts = m.nx;
            break;
        }
    }
    return dom;
}

CompactSubset CompactSubset::empty_set(DomainKind k) {
    CompactSubset s;
    s.kind = k;
    s.empty = true;
    return s;
}

CompactSubset radial_ball(double t_outer) {
    require(t_outer < 0, "ball must be strictly inside the unit ball (t < 0)");
    CompactSubset s;
    s.kind = DomainKind::RadialBall;
    s.radial = {{-kInf, t_outer}};
    return s;
}

CompactSubset radial_annulus(double t_inner, double t_outer) {
    require(t_inner <= t_outer && t_outer < 0, "bad annulus");
    CompactSubset s;
    s.kind = DomainKind::RadialBall;
    s.radial = {{t_inner, t_outer}};
    return s;
}

CompactSubset radial_union(const std::vector<Interval>& ivs) {
    CompactSubset s;
    s.kind = DomainKind::RadialBall;
    s.radial = normalize_intervals(ivs);
    s.empty = s.radial.empty();
    if (!s.empty) require(s.radial.back().hi < 0, "compactum must avoid the boundary");
    return s;
}

CompactSubset toric_lower_set(const std::vector<std::array<double, 2>>& corners) {
    CompactSubset s;
    s.kind = DomainKind::ToricPolydisc;
    s.empty = corners.empty();
    // keep only maximal corners
    for (const auto& c : corners) {
        require(c[0] < 0 && c[1] < 0, "corner must be strictly inside");
        bool dominated = false;
        for (const auto& d : corners)
            if ((d[0] > c[0] && d[1] >= c[1]) || (d[0] >= c[0] && d[1] > c[1])) {
                dominated = true;
                break;
            }
        if (!dominated) s.corners.push_back(c);
    }
    std::sort(s.corners.begin(), s.corners.end());
    s.corners.erase(std::unique(s.corners.begin(), s.corners.end()), s.corners.end());
    return s;
}

CompactSubset toric_polydisc_set(double t_corner, int n) {
    require(t_corner < 0, "polydisc corner must be strictly inside");
    CompactSubset s;
    s.kind = DomainKind::ToricPolydisc;
    if (n == 1) {
        s.corner1d = t_corner;
    } else {
        s.corners = {{t_corner, t_corner}};
    }
    return s;
}

CompactSubset planar_disc(const Domain& dom, double cx, double cy, double radius) {
    require(dom.kind == DomainKind::PlanarGrid, "planar_disc needs a grid domain");
    const auto& m = dom.mesh;
    CompactSubset s;
    s.kind = DomainKind::PlanarGrid;
    s.mask.assign(m.interior.size(), 0);
    long cnt = 0;
    for (int j = 0; j < m.nx; ++j)
        for (int i = 0; i < m.nx; ++i)
            if (m.interior[m.idx(i, j)]) {
                double dx = m.x(i) - cx, dy = m.y(j) - cy;
                if (dx * dx + dy * dy <= radius * radius) {
                    s.mask[m.idx(i, j)] = 1;
                    ++cnt;
                }
            }
    s.empty = (cnt == 0);
    return s;
}

CompactSubset planar_rect(const Domain& dom, double x0, double y0, double x1, double y1) {
    require(dom.kind == DomainKind::PlanarGrid, "planar_rect needs a grid domain");
    const auto& m = dom.mesh;
    CompactSubset s;
    s.kind = DomainKind::PlanarGrid;
    s.mask.assign(m.interior.size(), 0);
    long cnt = 0;
    for (int j = 0; j < m.nx; ++j)
        for (int i = 0; i < m.nx; ++i)
            if (m.interior[m.idx(i, j)]) {
                double x = m.x(i), y = m.y(j);
                if (x >= x0 && x <= x1 && y >= y0 && y <= y1) {
                    s.mask[m.idx(i, j)] = 1;
                    ++cnt;
                }
            }
    s.empty = (cnt == 0);
    return s;
}

CompactSubset polynomial_hull_radial(const CompactSubset& K) {
    require(K.kind == DomainKind::RadialBall, "hull is defined on the radial backend");
    require(!K.empty, "hull of the empty set");
    CompactSubset s;
    s.kind = DomainKind::RadialBall;
    s.radial = {{-kInf, intervals_sup(K.radial)}};
    return s;
}

double boundary_margin_cells(const CompactSubset& K, const Domain& dom) {
    if (K.empty) return kInf;
    switch (K.kind) {
        case DomainKind::RadialBall:
            return -intervals_sup(K.radial) / dom.dt();
        case DomainKind::ToricPolydisc: {
            double worst = kInf;
            if (dom.n == 1) {
                worst = -K.corner1d;
            } else {
                for (const auto& c : K.corners) worst = std::min(worst, -std::max(c[0], c[1]));
            }
            return worst / dom.dt();
        }
        case DomainKind::PlanarGrid: {
            const auto& m = dom.mesh;
            // cells from any K node to the nearest non-interior node (Chebyshev)
            int best = m.nx;
            for (int j = 0; j < m.nx; ++j)
                for (int i = 0; i < m.nx; ++i) {
                    if (!K.mask[m.idx(i, j)]) continue;
                    for (int rad = 1; rad < best; ++rad) {
                        bool hit = false;
                        for (int dj = -rad; dj <= rad && !hit; ++dj)
                            for (int di = -rad; di <= rad && !hit; ++di) {
                                if (std::max(std::abs(di), std::abs(dj)) != rad) continue;
                                if (!m.is_interior(i + di, j + dj)) hit = true;
                            }
                        if (hit) {
                            best = rad;
                            break;
                        }
                    }
                }
            return double(best);
        }
    }
    return 0.0;
}

void require_margin(const CompactSubset& K, const Domain& dom) {
    if (K.empty) return;
    require(boundary_margin_cells(K, dom) >= 2.0,
            "compactum must keep a margin of >= 2 grid cells from the boundary");
}

double RadialProfile::eval(double tt) const {
    if (tt <= t.front()) return v.front() + d_minus.front() * (tt - t.front());
    if (tt >= t.back()) return v.back();
    auto it = std::upper_bound(t.begin(), t.end(), tt);
    std::size_t i = std::size_t(it - t.begin()) - 1;
    double a = t[i], b = t[i + 1];
    double w = (tt - a) / (b - a);
    return v[i] * (1 - w) + v[i + 1] * w;
}

double RadialProfile::deriv(double tt) const {
    if (tt <= t.front()) return d_minus.front();
    if (tt >= t.back()) return d_plus.back();
    auto it = std::upper_bound(t.begin(), t.end(), tt);
    std::size_t i = std::size_t(it - t.begin()) - 1;
    double a = t[i], b = t[i + 1];
    double w = (tt - a) / (b - a);
    return d_plus[i] * (1 - w) + d_minus[i + 1] * w;
}

double PshFunction::sup_abs() const {
    double s = 0.0;
    switch (kind) {
        case DomainKind::RadialBall:
            for (double x : radial.v) s = std::max(s, std::fabs(x));
            break;
        case DomainKind::ToricPolydisc:
            for (double x : toric.v) s = std::max(s, std::fabs(x));
            break;
        case DomainKind::PlanarGrid:
            for (double x : nodes) s = std::max(s, std::fabs(x));
            break;
    }
    return s;
}

PshFunction radial_from_profile(const Domain& dom,
                                const std::function<double(double)>& chi,
                                const std::function<double(double)>& dchi,
                                const std::vector<double>& breakpoints) {
    require(dom.kind == DomainKind::RadialBall, "radial profile needs a radial domain");
    std::vector<double> t = dom.t_grid();
    for (double b : breakpoints)
        if (b > dom.t_min && b < 0) t.push_back(b);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end(),
                        [](double a, double b) { return std::fabs(a - b) < 1e-14; }),
            t.end());

    PshFunction u;
    u.kind = DomainKind::RadialBall;
    u.n = dom.n;
    auto& p = u.radial;
    p.t = t;
    std::size_t N = t.size();
    p.v.resize(N);
    p.d_minus.resize(N);
    p.d_plus.resize(N);
    const double eps = 1e-9 * dom.dt();
    for (std::size_t i = 0; i < N; ++i) {
        p.v[i] = chi(t[i]);
        bool is_break = false;
        for (double b : breakpoints)
            if (std::fabs(t[i] - b) < 1e-13) is_break = true;
        if (is_break) {
            p.d_minus[i] = dchi(t[i] - eps);
            p.d_plus[i] = dchi(t[i] + eps);
        } else {
            double d = dchi(t[i]);
            p.d_minus[i] = d;
            p.d_plus[i] = d;
        }
    }
    return u;
}

PshFunction radial_piecewise_linear(const Domain& dom,
                                    const std::vector<double>& knots_t,
                                    const std::vector<double>& knots_v) {
    require(knots_t.size() == knots_v.size() && knots_t.size() >= 2,
            "piecewise profile needs >= 2 knots");
    require(std::fabs(knots_t.back()) < 1e-14 && std::fabs(knots_v.back()) < 1e-14,
            "profile must end at (0, 0)");
    auto chi = [&](double tt) {
        if (tt <= knots_t.front()) {
            return knots_v.front();
        }
        auto it = std::upper_bound(knots_t.begin(), knots_t.end(), tt);
        std::size_t i = std::min(std::size_t(it - knots_t.begin()),
                                 knots_t.size() - 1);
        double a = knots_t[i - 1], b = knots_t[i];
        double w = (tt - a) / (b - a);
        return knots_v[i - 1] * (1 - w) + knots_v[i] * w;
    };
    auto dchi = [&](double tt) {
        if (tt < knots_t.front()) return 0.0;
        for (std::size_t i = 0; i + 1 < knots_t.size(); ++i)
            if (tt < knots_t[i + 1])
                return (knots_v[i + 1] - knots_v[i]) / (knots_t[i + 1] - knots_t[i]);
        return (knots_v.back() - knots_v[knots_v.size() - 2]) /
               (knots_t.back() - knots_t[knots_t.size() - 2]);
    };
    std::vector<double> bps(knots_t.begin(), knots_t.end());
    return radial_from_profile(dom, chi, dchi, bps);
}

PshFunction radial_cone(const Domain& dom, double t_outer) {
    require(t_outer < 0, "cone apex must be strictly inside");
    return radial_piecewise_linear(dom, {t_outer, 0.0}, {-1.0, 0.0});
}

PshFunction scale(const PshFunction& u, double c) {
    require(c > 0, "scale factor must be positive");
    PshFunction out = u;
    switch (u.kind) {
        case DomainKind::RadialBall:
            for (auto& x : out.radial.v) x *= c;
            for (auto& x : out.radial.d_minus) x *= c;
            for (auto& x : out.radial.d_plus) x *= c;
            break;
        case DomainKind::ToricPolydisc:
            for (auto& x : out.toric.v) x *= c;
            break;
        case DomainKind::PlanarGrid:
            for (auto& x : out.nodes) x *= c;
            break;
    }
    return out;
}

PshFunction radial_sup(const Domain& dom, const std::vector<PshFunction>& us) {
    require(!us.empty(), "sup of an empty family");
    for (const auto& u : us)
        require(u.kind == DomainKind::RadialBall, "radial_sup needs radial members");
    // merged node set plus pairwise crossings
    std::vector<double> t;
    for (const auto& u : us) t.insert(t.end(), u.radial.t.begin(), u.radial.t.end());
    for (std::size_t a = 0; a < us.size(); ++a)
        for (std::size_t b = a + 1; b < us.size(); ++b) {
            const auto& pa = us[a].radial;
            const auto& pb = us[b].radial;
            std::vector<double> merged = pa.t;
            merged.insert(merged.end(), pb.t.begin(), pb.t.end());
            std::sort(merged.begin(), merged.end());
            for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
                double x0 = merged[i], x1 = merged[i + 1];
                if (x1 - x0 < 1e-14) continue;
                double f0 = pa.eval(x0) - pb.eval(x0);
                double f1 = pa.eval(x1) - pb.eval(x1);
                if ((f0 < 0 && f1 > 0) || (f0 > 0 && f1 < 0)) {
                    double w = f0 / (f0 - f1);
                    t.push_back(x0 + w * (x1 - x0));
                }
            }
        }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end(),
                        [](double a, double b) { return std::fabs(a - b) < 1e-13; }),
            t.end());
    while (!t.empty() && t.back() > 0) t.pop_back();
    if (t.empty() || std::fabs(t.back()) > 1e-14) t.push_back(0.0);

    PshFunction out;
    out.kind = DomainKind::RadialBall;
    out.n = dom.n;
    auto& p = out.radial;
    p.t = t;
    std::size_t N = t.size();
    p.v.resize(N);
    p.d_minus.resize(N);
    p.d_plus.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        double best = -kInf;
        for (const auto& u : us) best = std::max(best, u.radial.eval(t[i]));
        p.v[i] = best;
        // one-sided derivatives from the active branches
        double dm = -kInf, dp = -kInf;
        for (const auto& u : us) {
            if (u.radial.eval(t[i]) > best - 1e-12 * (1 + std::fabs(best))) {
                dm = std::max(dm, u.radial.deriv(t[i] - 1e-12));
                dp = std::max(dp, u.radial.deriv(t[i] + 1e-12));
            }
        }
        // at a sup kink the left slope is the smaller one, the right the larger
        double lo = std::min(dm, dp), hi = std::max(dm, dp);
        p.d_minus[i] = lo;
        p.d_plus[i] = hi;
    }
    // recompute interior one-sided slopes from values; the active-branch
    // heuristic can misattribute slopes at triple crossings
    for (std::size_t i = 0; i < N; ++i) {
        if (i > 0) p.d_minus[i] = (p.v[i] - p.v[i - 1]) / (p.t[i] - p.t[i - 1]);
        if (i + 1 < N) p.d_plus[i] = (p.v[i + 1] - p.v[i]) / (p.t[i + 1] - p.t[i]);
    }
    return out;
}

PshFunction planar_from_radial(const Domain& dom, const PshFunction& u_radial) {
    require(dom.kind == DomainKind::PlanarGrid, "target must be a planar grid");
    require(u_radial.kind == DomainKind::RadialBall, "source must be radial");
    const auto& m = dom.mesh;
    PshFunction u;
    u.kind = DomainKind::PlanarGrid;
    u.n = 1;
    u.nodes.assign(m.interior.size(), 0.0);
    for (int j = 0; j < m.nx; ++j)
        for (int i = 0; i < m.nx; ++i)
            if (m.interior[m.idx(i, j)]) {
                double r = std::hypot(m.x(i), m.y(j));
                double t = (r <= 0) ? -kInf : std::log(r);
                u.nodes[m.idx(i, j)] = (r <= 1e-300) ? u_radial.radial.v.front()
                                                     : u_radial.radial.eval(t);
            }
    return u;
}

PshFunction planar_from_function(const Domain& dom,
                                 const std::function<double(double, double)>& f) {
    require(dom.kind == DomainKind::PlanarGrid, "target must be a planar grid");
    const auto& m = dom.mesh;
    PshFunction u;
    u.kind = DomainKind::PlanarGrid;
    u.n = 1;
    u.nodes.assign(m.interior.size(), 0.0);
    for (int j = 0; j < m.nx; ++j)
        for (int i = 0; i < m.nx; ++i)
            if (m.interior[m.idx(i, j)]) u.nodes[m.idx(i, j)] = f(m.x(i), m.y(j));
    return u;
}

namespace {

PshDiagnostics validate_radial(const PshFunction& u, const Domain& dom, int k, double tol) {
    PshDiagnostics d;
    d.tolerance = tol;
    const auto& p = u.radial;
    require(p.size() >= 2, "radial profile too short");
    double range = std::max(1e-300, u.sup_abs());
    for (double x : p.v)
        require(std::isfinite(x), "NaN in profile values");
    d.boundary_value = std::fabs(p.v.back());
    for (std::size_t i = 0; i < p.size(); ++i) {
        d.worst_negativity = std::max(d.worst_negativity, p.v[i]);
        d.worst_monotone = std::max({d.worst_monotone, -p.d_minus[i], -p.d_plus[i]});
    }
    // nonnegativity of dH_j across cells and nodes, all j <= k
    for (int j = 1; j <= k; ++j) {
        double a = 2.0 * (u.n - j);
        for (std::size_t i = 0; i < p.size(); ++i) {
            double jump = (std::pow(std::max(p.d_plus[i], 0.0), j) -
                           std::pow(std::max(p.d_minus[i], 0.0), j)) *
                          std::exp(a * p.t[i]);
            d.worst_convexity = std::max(d.worst_convexity, -jump);
            if (i + 1 < p.size()) {
                double h0 = std::pow(std::max(p.d_plus[i], 0.0), j) * std::exp(a * p.t[i]);
                double h1 = std::pow(std::max(p.d_minus[i + 1], 0.0), j) *
                            std::exp(a * p.t[i + 1]);
                d.worst_convexity = std::max(d.worst_convexity, h0 - h1);
            }
        }
    }
    double rel = tol * range;
    d.pass = d.worst_negativity <= rel && d.worst_monotone <= rel &&
             d.worst_convexity <= rel * 10 && d.boundary_value <= rel;
    (void)dom;
    return d;
}

PshDiagnostics validate_toric(const PshFunction& u, const Domain& dom, double tol) {
    PshDiagnostics d;
    d.tolerance = tol;
    const auto& p = u.toric;
    double range = std::max(1e-300, u.sup_abs());
    int N = int(p.axis.size());
    require(N >= 2, "toric profile too short");
    for (double x : p.v) require(std::isfinite(x), "NaN in profile values");
    if (p.n == 1) {
        for (int i = 0; i < N; ++i) d.worst_negativity = std::max(d.worst_negativity, p.v[i]);
        d.boundary_value = std::fabs(p.v[N - 1]);
        for (int i = 0; i + 1 < N; ++i) {
            double s = (p.v[i + 1] - p.v[i]) / (p.axis[i + 1] - p.axis[i]);
            d.worst_monotone = std::max(d.worst_monotone, -s);
        }
        for (int i = 1; i + 1 < N; ++i) {
            double s0 = (p.v[i] - p.v[i - 1]) / (p.axis[i] - p.axis[i - 1]);
            double s1 = (p.v[i + 1] - p.v[i]) / (p.axis[i + 1] - p.axis[i]);
            d.worst_convexity = std::max(d.worst_convexity, s0 - s1);
        }
    } else {
        double h = p.axis[1] - p.axis[0];
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                double x = p.at(i, j);
                d.worst_negativity = std::max(d.worst_negativity, x);
                if (i == N - 1 || j == N - 1)
                    d.boundary_value = std::max(d.boundary_value, std::fabs(x));
                if (i + 1 < N)
                    d.worst_monotone = std::max(d.worst_monotone, (p.at(i, j) - p.at(i + 1, j)) / h);
                if (j + 1 < N)
                    d.worst_monotone = std::max(d.worst_monotone, (p.at(i, j) - p.at(i, j + 1)) / h);
                // convexity: second differences along axes and both diagonals
                if (i > 0 && i + 1 < N)
                    d.worst_convexity = std::max(d.worst_convexity,
                        (2 * p.at(i, j) - p.at(i - 1, j) - p.at(i + 1, j)) / (h * h));
                if (j > 0 && j + 1 < N)
                    d.worst_convexity = std::max(d.worst_convexity,
                        (2 * p.at(i, j) - p.at(i, j - 1) - p.at(i, j + 1)) / (h * h));
                if (i > 0 && i + 1 < N && j > 0 && j + 1 < N) {
                    d.worst_convexity = std::max(d.worst_convexity,
                        (2 * p.at(i, j) - p.at(i - 1, j - 1) - p.at(i + 1, j + 1)) / (2 * h * h));
                    d.worst_convexity = std::max(d.worst_convexity,
                        (2 * p.at(i, j) - p.at(i - 1, j + 1) - p.at(i + 1, j - 1)) / (2 * h * h));
                }
            }
    }
    double rel = tol * range;
    d.pass = d.worst_negativity <= rel && d.worst_monotone <= rel / dom.dt() &&
             d.worst_convexity <= rel / dom.dt() && d.boundary_value <= rel;
    return d;
}

PshDiagnostics validate_planar(const PshFunction& u, const Domain& dom, double tol) {
    PshDiagnostics d;
    const auto& m = dom.mesh;
    require(u.nodes.size() == m.interior.size(), "node count mismatch");
    double h = m.h;
    d.tolerance = tol;
    for (double x : u.nodes) require(std::isfinite(x), "NaN in nodal values");
    for (int j = 0; j < m.nx; ++j)
        for (int i = 0; i < m.nx; ++i) {
            int id = m.idx(i, j);
            if (!m.interior[id]) {
                d.boundary_value = std::max(d.boundary_value, std::fabs(u.nodes[id]));
                continue;
            }
            d.worst_negativity = std::max(d.worst_negativity, u.nodes[id]);
            double lap = (u.nodes[m.idx(i + 1, j)] + u.nodes[m.idx(i - 1, j)] +
                          u.nodes[m.idx(i, j + 1)] + u.nodes[m.idx(i, j - 1)] -
                          4.0 * u.nodes[id]) / (h * h);
            d.worst_convexity = std::max(d.worst_convexity, -lap * h * h);
        }
    d.pass = d.worst_negativity <= tol && d.boundary_value <= tol &&
             d.worst_convexity <= tol;
    return d;
}

}  // namespace

PshDiagnostics validate_psh(const PshFunction& u, const Domain& dom, int k,
                            std::optional<double> tol) {
    require(u.kind == dom.kind, "function/domain backend mismatch");
    require(k >= 1 && k <= dom.n, "need 1 <= k <= n");
    switch (dom.kind) {
        case DomainKind::RadialBall:
            return validate_radial(u, dom, k, tol.value_or(1e-8));
        case DomainKind::ToricPolydisc:
            require(k == dom.n, "toric backend supports k = n only");
            return validate_toric(u, dom, tol.value_or(1e-8));
        case DomainKind::PlanarGrid: {
            double h = dom.mesh.h;
            return validate_planar(u, dom, tol.value_or(10.0 * h * h));
        }
    }
    throw precondition_error("unknown backend");
}

CompactSubset level_set(const PshFunction& u, const Domain& dom, double t) {
    require(t > 0, "level parameter must be positive");
    require(u.kind == dom.kind, "function/domain backend mismatch");
    switch (dom.kind) {
        case DomainKind::RadialBall: {
            const auto& p = u.radial;
            // chi nondecreasing: K_t = (-inf, tau], tau = sup{ s : chi(s) <= -t }
            if (p.v.front() > -t) return CompactSubset::empty_set(dom.kind);
            double tau = p.t.front();
            for (std::size_t i = 0; i + 1 < p.size(); ++i) {
                double a = p.v[i], b = p.v[i + 1];
                if (b <= -t) {
                    tau = p.t[i + 1];
                } else if (a <= -t && b > -t) {
                    double w = (-t - a) / (b - a);
                    tau = p.t[i] + w * (p.t[i + 1] - p.t[i]);
                    break;
                }
            }
            if (tau >= 0) return CompactSubset::empty_set(dom.kind);
            CompactSubset s;
            s.kind = dom.kind;
            s.radial = {{-kInf, tau}};
            return s;
        }
        case DomainKind::ToricPolydisc: {
            const auto& p = u.toric;
            int N = int(p.axis.size());
            if (p.n == 1) {
                double tau = p.axis.front() - 1;
                if (p.v[0] > -t) return CompactSubset::empty_set(dom.kind);
                for (int i = 0; i + 1 < N; ++i) {
                    if (p.v[i + 1] <= -t) {
                        tau = p.axis[i + 1];
                    } else if (p.v[i] <= -t) {
                        double w = (-t - p.v[i]) / (p.v[i + 1] - p.v[i]);
                        tau = p.axis[i] + w * (p.axis[i + 1] - p.axis[i]);
                        break;
                    }
                }
                if (tau >= 0 || tau < p.axis.front()) return CompactSubset::empty_set(dom.kind);
                return toric_polydisc_set(tau, 1);
            }
            // lower set of a monotone profile: staircase of grid corners
            std::vector<std::array<double, 2>> corners;
            for (int j = 0; j < N; ++j) {
                int imax = -1;
                for (int i = 0; i < N; ++i)
                    if (p.at(i, j) <= -t) imax = i;
                if (imax >= 0 && p.axis[imax] < 0 && p.axis[j] < 0)
                    corners.push_back({p.axis[imax], p.axis[j]});
            }
            if (corners.empty()) return CompactSubset::empty_set(dom.kind);
            return toric_lower_set(corners);
        }
        case DomainKind::PlanarGrid: {
            const auto& m = dom.mesh;
            CompactSubset s;
            s.kind = dom.kind;
            s.mask.assign(m.interior.size(), 0);
            long cnt = 0;
            for (std::size_t id = 0; id < m.interior.size(); ++id)
                if (m.interior[id] && u.nodes[id] <= -t) {
                    s.mask[id] = 1;
                    ++cnt;
                }
            s.empty = (cnt == 0);
            return s;
        }
    }
    throw precondition_error("unknown backend");
}

}  // namespace hcl
