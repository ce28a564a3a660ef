#include "hcl/measure.hpp"

#include <cmath>
#include <numbers>

namespace hcl {

namespace {
constexpr double kPi = std::numbers::pi;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}
}  // namespace

std::string to_string(MeasureKind k) {
    switch (k) {
        case MeasureKind::Lebesgue: return "lebesgue";
        case MeasureKind::RadialDensity: return "radial-density";
        case MeasureKind::Toric: return "toric";
        case MeasureKind::GridWeights: return "grid-weights";
        case MeasureKind::CurveWeights: return "curve-weights";
        case MeasureKind::Atoms: return "atoms";
    }
    return "?";
}

double CurveSegment::length() const { return std::hypot(x1 - x0, y1 - y0); }

BorelMeasure lebesgue_measure(const Domain& dom) {
    BorelMeasure mu;
    mu.kind = MeasureKind::Lebesgue;
    mu.n = dom.n;
    mu.label = "lebesgue";
    int n = dom.n;
    if (dom.kind == DomainKind::ToricPolydisc) {
        mu.total_mass = std::pow(kPi, n);
        for (int j = 0; j < n; ++j) {
            AxisDistribution ax;
            ax.M = [](double t) { return kPi * std::exp(2.0 * t); };
            ax.dM = [](double t) { return 2.0 * kPi * std::exp(2.0 * t); };
            mu.axes.push_back(ax);
        }
    } else {
        // ball volume pi^n r^{2n} / n!
        double c = std::pow(kPi, n) / factorial(n);
        mu.M = [c, n](double t) { return c * std::exp(2.0 * n * t); };
        mu.dM = [c, n](double t) { return 2.0 * n * c * std::exp(2.0 * n * t); };
        mu.total_mass = c;
    }
    return mu;
}

BorelMeasure radial_measure(const std::function<double(double)>& M,
                            const std::function<double(double)>& dM,
                            double total, const std::string& label) {
    BorelMeasure mu;
    mu.kind = MeasureKind::RadialDensity;
    mu.n = 1;
    mu.M = M;
    mu.dM = dM;
    mu.total_mass = total;
    mu.label = label;
    require(total >= 0 && std::isfinite(total), "measure must be finite and nonnegative");
    return mu;
}

BorelMeasure atom_measure(double x, double y, double mass) {
    require(mass >= 0, "atom mass must be nonnegative");
    BorelMeasure mu;
    mu.kind = MeasureKind::Atoms;
    mu.atoms = {{x, y, mass}};
    mu.total_mass = mass;
    mu.charges_pluripolar = true;
    mu.label = "atom";
    return mu;
}

BorelMeasure poincare_measure(double alpha, int d, int n) {
    require(alpha > 0, "poincare measure needs alpha > 0");
    require(d >= 1 && d <= n, "need 1 <= d <= n");
    auto Max = [alpha](double t) { return (2.0 * kPi / alpha) * std::pow(1.0 - t, -alpha); };
    auto dMax = [alpha](double t) { return 2.0 * kPi * std::pow(1.0 - t, -1.0 - alpha); };
    BorelMeasure mu;
    mu.n = n;
    mu.label = "poincare";
    if (n == 1 && d == 1) {
        mu.kind = MeasureKind::RadialDensity;
        mu.M = Max;
        mu.dM = dMax;
        mu.total_mass = 2.0 * kPi / alpha;
        return mu;
    }
    mu.kind = MeasureKind::Toric;
    for (int j = 0; j < n; ++j) {
        AxisDistribution ax;
        if (j < d) {
            ax.M = Max;
            ax.dM = dMax;
        } else {
            ax.M = [](double t) { return kPi * std::exp(2.0 * t); };
            ax.dM = [](double t) { return 2.0 * kPi * std::exp(2.0 * t); };
        }
        mu.axes.push_back(ax);
    }
    mu.total_mass = std::pow(2.0 * kPi / alpha, d) * std::pow(kPi, n - d);
    return mu;
}

BorelMeasure curve_measure(const std::vector<CurveSegment>& segs) {
    BorelMeasure mu;
    mu.kind = MeasureKind::CurveWeights;
    mu.segments = segs;
    double total = 0.0;
    for (const auto& s : segs) {
        require(s.density >= 0, "curve density must be nonnegative");
        total += s.density * s.length();
    }
    mu.total_mass = total;
    mu.label = "curve";
    return mu;
}

BorelMeasure circle_measure(double cx, double cy, double r, double density, int nseg) {
    require(r > 0 && nseg >= 8, "circle needs r > 0 and >= 8 segments");
    std::vector<CurveSegment> segs;
    segs.reserve(nseg);
    for (int i = 0; i < nseg; ++i) {
        double a0 = 2.0 * kPi * i / nseg, a1 = 2.0 * kPi * (i + 1) / nseg;
        segs.push_back({cx + r * std::cos(a0), cy + r * std::sin(a0),
                        cx + r * std::cos(a1), cy + r * std::sin(a1), density});
    }
    return curve_measure(segs);
}

BorelMeasure grid_measure(const Domain& dom, const std::vector<double>& weights) {
    require(dom.kind == DomainKind::PlanarGrid, "grid measure needs a planar domain");
    require(weights.size() == dom.mesh.interior.size(), "weight count mismatch");
    BorelMeasure mu;
    mu.kind = MeasureKind::GridWeights;
    mu.weights = weights;
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        require(weights[i] >= -1e-15, "negative grid weight");
        if (dom.mesh.interior[i]) total += weights[i];
    }
    mu.total_mass = total;
    mu.label = "grid";
    return mu;
}

BorelMeasure grid_lebesgue(const Domain& dom) {
    require(dom.kind == DomainKind::PlanarGrid, "grid lebesgue needs a planar domain");
    std::vector<double> w(dom.mesh.interior.size(), 0.0);
    double cell = dom.mesh.h * dom.mesh.h;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (dom.mesh.interior[i]) w[i] = cell;
    auto mu = grid_measure(dom, w);
    mu.label = "lebesgue-grid";
    return mu;
}

BorelMeasure splat_to_grid(const BorelMeasure& mu, const Domain& dom) {
    require(dom.kind == DomainKind::PlanarGrid, "splat target must be a planar grid");
    const auto& m = dom.mesh;
    std::vector<double> w(m.interior.size(), 0.0);
    auto deposit = [&](double x, double y, double mass) {
        double fi = (x - m.x0) / m.h, fj = (y - m.x0) / m.h;
        int i = int(std::floor(fi)), j = int(std::floor(fj));
        double ax = fi - i, ay = fj - j;
        const double coef[4] = {(1 - ax) * (1 - ay), ax * (1 - ay), (1 - ax) * ay, ax * ay};
        const int di[4] = {0, 1, 0, 1}, dj[4] = {0, 0, 1, 1};
        for (int c = 0; c < 4; ++c) {
            int ii = i + di[c], jj = j + dj[c];
            if (m.is_interior(ii, jj)) w[m.idx(ii, jj)] += coef[c] * mass;
        }
    };
    switch (mu.kind) {
        case MeasureKind::Lebesgue:
            return grid_lebesgue(dom);
        case MeasureKind::GridWeights:
            return mu;
        case MeasureKind::Atoms:
            for (const auto& a : mu.atoms) deposit(a.x, a.y, a.mass);
            break;
        case MeasureKind::CurveWeights:
            for (const auto& s : mu.segments) {
                double len = s.length();
                int nsub = std::max(1, int(std::ceil(len / (m.h / 4.0))));
                for (int q = 0; q < nsub; ++q) {
                    double w0 = (q + 0.5) / nsub;
                    deposit(s.x0 + w0 * (s.x1 - s.x0), s.y0 + w0 * (s.y1 - s.y0),
                            s.density * len / nsub);
                }
            }
            break;
        case MeasureKind::RadialDensity:
            for (int j = 0; j < m.nx; ++j)
                for (int i = 0; i < m.nx; ++i)
                    if (m.interior[m.idx(i, j)]) {
                        double rho = std::hypot(m.x(i), m.y(j));
                        if (rho < m.h * 0.25) continue;
                        double t = std::log(rho);
                        w[m.idx(i, j)] += m.h * m.h * mu.dM(t) / (2.0 * kPi * rho * rho);
                    }
            if (mu.origin_atom > 0) deposit(0.0, 0.0, mu.origin_atom);
            break;
        case MeasureKind::Toric:
            throw precondition_error("toric measures have no planar grid representation");
    }
    auto out = grid_measure(dom, w);
    out.label = mu.label + "-splat";
    return out;
}

namespace {

double radial_set_mass(const BorelMeasure& mu, const CompactSubset& E) {
    double s = 0.0;
    for (const auto& iv : E.radial) {
        double hi = std::min(iv.hi, 0.0);
        double mhi = mu.M(hi);
        double mlo = std::isinf(iv.lo) ? 0.0 : mu.M(iv.lo);
        s += std::max(0.0, mhi - mlo);
        if (std::isinf(iv.lo)) s += mu.origin_atom;
    }
    return s;
}

double toric_staircase_mass(const BorelMeasure& mu, const CompactSubset& E) {
    // corners sorted by t1 ascending; maximal antichain means t2 descending
    require(mu.axes.size() == 2, "toric staircase needs a 2-axis product measure");
    auto corners = E.corners;
    std::sort(corners.begin(), corners.end());
    double s = 0.0, prev = -kInf;
    for (const auto& c : corners) {
        double m1 = mu.axes[0].M(c[0]) - (std::isinf(prev) ? 0.0 : mu.axes[0].M(prev));
        s += std::max(0.0, m1) * mu.axes[1].M(c[1]);
        prev = c[0];
    }
    return s;
}

}  // namespace

double measure_of(const BorelMeasure& mu, const CompactSubset& E, const Domain& dom) {
    if (E.empty) return 0.0;
    switch (mu.kind) {
        case MeasureKind::Lebesgue:
        case MeasureKind::RadialDensity: {
            if (E.kind == DomainKind::RadialBall) return radial_set_mass(mu, E);
            if (E.kind == DomainKind::ToricPolydisc && dom.n == 1) {
                CompactSubset ball = radial_ball(E.corner1d);
                return radial_set_mass(mu, ball);
            }
            if (E.kind == DomainKind::PlanarGrid && mu.kind == MeasureKind::Lebesgue) {
                double cell = dom.mesh.h * dom.mesh.h;
                long cnt = 0;
                for (std::size_t i = 0; i < E.mask.size(); ++i) cnt += E.mask[i] ? 1 : 0;
                return cell * double(cnt);
            }
            if (E.kind == DomainKind::PlanarGrid) {
                // radial density evaluated over the mask via node cells
                double s = 0.0;
                const auto& m = dom.mesh;
                for (int j = 0; j < m.nx; ++j)
                    for (int i = 0; i < m.nx; ++i)
                        if (E.mask[m.idx(i, j)]) {
                            double rho = std::hypot(m.x(i), m.y(j));
                            if (rho < m.h * 0.25) {
                                s += mu.origin_atom;
                                continue;
                            }
                            s += m.h * m.h * mu.dM(std::log(rho)) / (2.0 * kPi * rho * rho);
                        }
                return s;
            }
            break;
        }
        case MeasureKind::Toric: {
            if (E.kind == DomainKind::ToricPolydisc) {
                if (mu.n == 1) {
                    double hi = std::min(E.corner1d, 0.0);
                    return mu.axes.empty() ? mu.M(hi) : mu.axes[0].M(hi);
                }
                return toric_staircase_mass(mu, E);
            }
            break;
        }
        case MeasureKind::GridWeights: {
            if (E.kind == DomainKind::PlanarGrid) {
                double s = 0.0;
                for (std::size_t i = 0; i < E.mask.size(); ++i)
                    if (E.mask[i]) s += mu.weights[i];
                return s;
            }
            break;
        }
        case MeasureKind::CurveWeights: {
            if (E.kind == DomainKind::PlanarGrid) {
                const auto& m = dom.mesh;
                double s = 0.0;
                double step = m.h / 10.0;  // clipping tolerance
                for (const auto& seg : mu.segments) {
                    double len = seg.length();
                    int nsub = std::max(1, int(std::ceil(len / step)));
                    for (int q = 0; q < nsub; ++q) {
                        double w0 = (q + 0.5) / nsub;
                        double x = seg.x0 + w0 * (seg.x1 - seg.x0);
                        double y = seg.y0 + w0 * (seg.y1 - seg.y0);
                        int i = int(std::lround((x - m.x0) / m.h));
                        int j = int(std::lround((y - m.x0) / m.h));
                        if (i >= 0 && j >= 0 && i < m.nx && j < m.nx && E.mask[m.idx(i, j)])
                            s += seg.density * len / nsub;
                    }
                }
                return s;
            }
            if (E.kind == DomainKind::RadialBall) {
                // circle-vs-annulus logic: keep sub-chords whose radius lies in E
                double s = 0.0;
                for (const auto& seg : mu.segments) {
                    double len = seg.length();
                    int nsub = 64;
                    for (int q = 0; q < nsub; ++q) {
                        double w0 = (q + 0.5) / nsub;
                        double x = seg.x0 + w0 * (seg.x1 - seg.x0);
                        double y = seg.y0 + w0 * (seg.y1 - seg.y0);
                        double rho = std::hypot(x, y);
                        if (rho > 0 && intervals_contain(E.radial, std::log(rho)))
                            s += seg.density * len / nsub;
                    }
                }
                return s;
            }
            break;
        }
        case MeasureKind::Atoms: {
            double s = 0.0;
            for (const auto& a : mu.atoms) {
                double rho = std::hypot(a.x, a.y);
                bool inside = false;
                if (E.kind == DomainKind::RadialBall) {
                    double t = rho > 0 ? std::log(rho) : -kInf;
                    for (const auto& iv : E.radial)
                        if ((std::isinf(iv.lo) && t <= iv.hi) ||
                            (t >= iv.lo && t <= iv.hi))
                            inside = true;
                } else if (E.kind == DomainKind::PlanarGrid) {
                    const auto& m = dom.mesh;
                    int i = int(std::lround((a.x - m.x0) / m.h));
                    int j = int(std::lround((a.y - m.x0) / m.h));
                    inside = i >= 0 && j >= 0 && i < m.nx && j < m.nx && E.mask[m.idx(i, j)];
                } else if (E.kind == DomainKind::ToricPolydisc && mu.n == 1) {
                    inside = (rho > 0 ? std::log(rho) : -kInf) <= E.corner1d;
                }
                if (inside) s += a.mass;
            }
            return s;
        }
    }
    throw precondition_error("measure_of: unrepresentable (measure, set) pair: " +
                             to_string(mu.kind) + " vs " + to_string(E.kind));
}

namespace {

// plateau bump: 1 on [-eps, eps], cosine taper to 0 at |s| = 2 eps
double bump(double s, double eps) {
    double a = std::fabs(s);
    if (a <= eps) return 1.0;
    if (a >= 2.0 * eps) return 0.0;
    return 0.5 * (1.0 + std::cos(kPi * (a - eps) / eps));
}

MollifyResult mollify_radial(const BorelMeasure& mu, double eps, const Domain& dom) {
    (void)dom;
    // work with the density in the radius variable rho on [0, 1]
    const int N = 4001;
    std::vector<double> rho(N), g(N, 0.0);
    for (int i = 0; i < N; ++i) rho[i] = double(i) / (N - 1);
    for (int i = 1; i < N; ++i) {
        double r = rho[i];
        // dmu/drho = dM/dt * dt/drho = dM(log r) / r
        g[i] = mu.dM(std::log(r)) / r;
    }
    double atom = mu.origin_atom;
    for (const auto& a : mu.atoms) atom += a.mass;  // radial atoms sit at 0

    double wnorm = 0.0;
    const int kpts = 401;
    double dw = 4.0 * eps / (kpts - 1);
    for (int q = 0; q < kpts; ++q) wnorm += bump(-2.0 * eps + q * dw, eps) * dw;

    double cutoff = 1.0 - eps;
    std::vector<double> graw(N, 0.0);
    for (int i = 0; i < N; ++i) {
        if (rho[i] > cutoff) break;
        double acc = 0.0;
        for (int q = 0; q < kpts; ++q) {
            double tau = -2.0 * eps + q * dw;
            double src = rho[i] - tau;
            double gv;
            if (src < 0) src = -src;  // even reflection at the origin
            if (src >= 1.0) {
                gv = 0.0;
            } else {
                double fidx = src * (N - 1);
                int i0 = int(fidx);
                double fr = fidx - i0;
                gv = g[i0] * (1 - fr) + (i0 + 1 < N ? g[i0 + 1] : g[i0]) * fr;
            }
            acc += bump(tau, eps) * gv * dw;
        }
        // atom at the origin smears into 2 * mass * w(rho) after reflection
        acc += 2.0 * atom * bump(rho[i], eps);
        graw[i] = acc;
    }

    auto make = [&](double scale, const std::string& tag) {
        auto dens = std::make_shared<std::vector<double>>(N);
        auto cums = std::make_shared<std::vector<double>>(N, 0.0);
        for (int i = 0; i < N; ++i) (*dens)[i] = graw[i] * scale;
        for (int i = 1; i < N; ++i)
            (*cums)[i] = (*cums)[i - 1] +
                         0.5 * ((*dens)[i - 1] + (*dens)[i]) / (N - 1);
        double total = cums->back();
        auto Mfun = [cums, N](double t) {
            double r = std::exp(std::min(t, 0.0));
            double fidx = r * (N - 1);
            int i0 = std::min(int(fidx), N - 2);
            double fr = fidx - i0;
            return (*cums)[i0] * (1 - fr) + (*cums)[i0 + 1] * fr;
        };
        auto dMfun = [dens, N](double t) {
            double r = std::exp(std::min(t, 0.0));
            double fidx = r * (N - 1);
            int i0 = std::min(int(fidx), N - 2);
            double fr = fidx - i0;
            double gr = (*dens)[i0] * (1 - fr) + (*dens)[i0 + 1] * fr;
            return gr * r;  // dM/dt = g(rho) * rho
        };
        auto out = radial_measure(Mfun, dMfun, total, tag);
        return out;
    };

    MollifyResult res;
    res.raw = make(1.0, mu.label + "-mollified-raw");
    res.renormalized = make(1.0 / wnorm, mu.label + "-mollified");
    res.mass_kept = mu.total_mass > 0 ? res.renormalized.total_mass / mu.total_mass : 1.0;
    return res;
}

MollifyResult mollify_grid(const BorelMeasure& mu0, double eps, const Domain& dom) {
    const auto& m = dom.mesh;
    BorelMeasure mu = splat_to_grid(mu0, dom);
    int reach = int(std::ceil(2.0 * eps / m.h));
    // erosion: nodes whose eps-disc stays inside the interior mask
    std::vector<uint8_t> core(m.interior.size(), 0);
    int er = int(std::ceil(eps / m.h));
    for (int j = 0; j < m.nx; ++j)
        for (int i = 0; i < m.nx; ++i) {
            if (!m.interior[m.idx(i, j)]) continue;
            bool ok = true;
            for (int dj = -er; dj <= er && ok; ++dj)
                for (int di = -er; di <= er && ok; ++di)
                    if (double(di) * di + double(dj) * dj <= double(er) * er &&
                        !m.is_interior(i + di, j + dj))
                        ok = false;
            core[m.idx(i, j)] = ok ? 1 : 0;
        }

    double wnorm = 0.0;
    for (int dj = -reach; dj <= reach; ++dj)
        for (int di = -reach; di <= reach; ++di)
            wnorm += bump(m.h * std::hypot(double(di), double(dj)), eps) * m.h * m.h;

    std::vector<double> wraw(m.interior.size(), 0.0);
    for (int j = 0; j < m.nx; ++j)
        for (int i = 0; i < m.nx; ++i) {
            int id = m.idx(i, j);
            if (mu.weights[id] <= 0) continue;
            for (int dj = -reach; dj <= reach; ++dj)
                for (int di = -reach; di <= reach; ++di) {
                    int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= m.nx || jj >= m.nx) continue;
                    int od = m.idx(ii, jj);
                    if (!core[od]) continue;
                    double k = bump(m.h * std::hypot(double(di), double(dj)), eps);
                    if (k > 0) wraw[od] += mu.weights[id] * k * m.h * m.h;
                }
        }

    MollifyResult res;
    std::vector<double> wr = wraw, wn = wraw;
    for (auto& x : wn) x /= wnorm;
    res.raw = grid_measure(dom, wr);
    res.raw.label = mu0.label + "-mollified-raw";
    res.renormalized = grid_measure(dom, wn);
    res.renormalized.label = mu0.label + "-mollified";
    res.mass_kept = mu.total_mass > 0 ? res.renormalized.total_mass / mu.total_mass : 1.0;
    return res;
}

}  // namespace

MollifyResult mollify(const BorelMeasure& mu, double eps, const Domain& dom) {
    require(eps > 0 && eps < 0.5, "mollification scale must lie in (0, 0.5)");
    switch (dom.kind) {
        case DomainKind::PlanarGrid:
            return mollify_grid(mu, eps, dom);
        case DomainKind::RadialBall:
            require(mu.kind == MeasureKind::Lebesgue ||
                        mu.kind == MeasureKind::RadialDensity ||
                        mu.kind == MeasureKind::Atoms,
                    "radial mollification needs a radial or atomic measure");
            return mollify_radial(mu, eps, dom);
        default:
            throw precondition_error("mollify: unsupported backend");
    }
}

double tv_distance(const BorelMeasure& a, const BorelMeasure& b, const Domain& dom) {
    if (dom.kind == DomainKind::PlanarGrid) {
        BorelMeasure ga = splat_to_grid(a, dom), gb = splat_to_grid(b, dom);
        double s = 0.0;
        for (std::size_t i = 0; i < ga.weights.size(); ++i)
            s += std::fabs(ga.weights[i] - gb.weights[i]);
        return s;
    }
    // radial comparison over a fine t-grid plus origin atoms
    auto dens = [](const BorelMeasure& mu, double t) {
        return (mu.kind == MeasureKind::Atoms) ? 0.0 : mu.dM(t);
    };
    auto atom = [](const BorelMeasure& mu) {
        double s = mu.origin_atom;
        for (const auto& at : mu.atoms) s += at.mass;
        return s;
    };
    const int N = 20001;
    double s = std::fabs(atom(a) - atom(b));
    double tmin = dom.t_min;
    double prev = 0.0;
    for (int i = 0; i < N; ++i) {
        double t = tmin + (0.0 - tmin) * i / (N - 1);
        double d = std::fabs(dens(a, t) - dens(b, t));
        if (i > 0) s += 0.5 * (prev + d) * (-tmin) / (N - 1);
        prev = d;
    }
    // mass below the grid
    auto Mlow = [&](const BorelMeasure& mu) {
        return (mu.kind == MeasureKind::Atoms) ? 0.0 : mu.M(tmin);
    };
    s += std::fabs(Mlow(a) - Mlow(b));
    return s;
}

}  // namespace hcl
