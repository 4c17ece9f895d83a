#include "procure/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace procure::numerics {

void SolverConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("solver tolerances must be positive");
    if (max_iter < 1) throw DomainError("max_iter must be >= 1");
}

double find_root_bracketed(const std::function<double(double)>& f, Bracket bracket,
                           const SolverConfig& cfg) {
    cfg.validate();
    double a = bracket.lo, b = bracket.hi;
    if (!(a < b)) throw DomainError("bracket must satisfy lo < hi");
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NoSignChange("f(" + std::to_string(a) + ") and f(" + std::to_string(b) +
                           ") have the same sign");

    bool force_bisect = false;
    for (int it = 0; it < cfg.max_iter; ++it) {
        const double width = b - a;
        if (width <= cfg.abs_tol) return a + 0.5 * width;

        double x;
        const double denom = fb - fa;
        if (!force_bisect && denom != 0.0) {
            x = (a * fb - b * fa) / denom;
            // keep the secant step clear of the endpoints or fall back
            const double margin = 0.01 * width;
            if (!(x > a + margin && x < b - margin)) x = a + 0.5 * width;
        } else {
            x = a + 0.5 * width;
        }

        const double fx = f(x);
        if (std::abs(fx) <= cfg.abs_tol) return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        // a secant step that failed to halve the bracket forces a bisection,
        // so the width at least halves every other iteration
        force_bisect = (b - a) > 0.5 * width;
    }
    throw NoConvergence("find_root_bracketed: no convergence in " +
                        std::to_string(cfg.max_iter) + " iterations");
}

namespace {

double simpson(double a, double fa, double fm, double fb, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& g, double a, double fa, double m,
             double fm, double b, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = simpson(a, fa, flm, fm, m);
    const double right = simpson(m, fm, frm, fb, b);
    const double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    if (depth <= 0)
        throw NoConvergence("integrate_adaptive: subdivision depth exhausted");
    return adapt(g, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           adapt(g, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                          double tol, int max_depth) {
    if (a == b) return 0.0;
    if (!(a < b)) throw DomainError("integrate_adaptive needs a <= b");
    if (!(tol > 0.0)) throw DomainError("integrate_adaptive needs tol > 0");
    const double m = 0.5 * (a + b);
    const double fa = g(a), fm = g(m), fb = g(b);
    return adapt(g, a, fa, m, fm, b, fb, simpson(a, fa, fm, fb, b), tol, max_depth);
}

double integrate_tail(const std::function<double(double)>& g, double lower, double alpha,
                      const SolverConfig& cfg) {
    cfg.validate();
    if (alpha <= 1.0)
        throw Divergent("integrate_tail: decay exponent alpha = " + std::to_string(alpha) +
                        " gives a divergent integral (need alpha > 1)");
    if (!(lower > 0.0)) throw DomainError("integrate_tail needs lower > 0");

    // u = 1/t turns the tail into an integral over (0, 1/lower]; the
    // transformed integrand behaves like u^{alpha-2} near 0, so per-segment
    // sums decay geometrically with ratio 2^{1-alpha}
    const auto h = [&g](double u) { return g(1.0 / u) / (u * u); };
    const double ratio = std::exp2(1.0 - alpha);
    const int max_segments = 4000;

    double total = 0.0;
    double hi = 1.0 / lower;
    for (int k = 0; k < max_segments; ++k) {
        const double lo = 0.5 * hi;
        const double seg_tol =
            std::max(0.01 * cfg.abs_tol, 0.05 * cfg.rel_tol * std::abs(total));
        const double seg = integrate_adaptive(h, lo, hi, seg_tol);
        total += seg;
        hi = lo;
        const double tail_bound = std::abs(seg) * ratio / (1.0 - ratio);
        if (k >= 3 && tail_bound <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)))
            return total;
    }
    throw NoConvergence("integrate_tail: segment sum did not meet tolerance");
}

namespace {

struct GridBest {
    double value = std::numeric_limits<double>::infinity();
    std::vector<long long> comp;
    long long scanned = 0;

    // total order: smaller value wins, ties go to the lexicographically
    // smaller composition, so parallel merges reproduce the serial scan
    bool beats(const GridBest& o) const {
        if (value != o.value) return value < o.value;
        if (o.comp.empty()) return !comp.empty();
        return std::lexicographical_compare(comp.begin(), comp.end(), o.comp.begin(),
                                            o.comp.end());
    }
};

// enumerate compositions of `remaining` into slots [level, n) lexicographically
void scan_tail(const std::function<double(std::span<const double>)>& obj, int n,
               long long M, int level, long long remaining, std::vector<long long>& comp,
               std::vector<double>& x, GridBest& best) {
    if (level == n - 1) {
        comp[level] = remaining;
        for (int i = 0; i < n; ++i) x[i] = static_cast<double>(comp[i]) / static_cast<double>(M);
        const double v = obj(x);
        ++best.scanned;
        if (v < best.value) {
            best.value = v;
            best.comp = comp;
        }
        return;
    }
    for (long long k = 0; k <= remaining; ++k) {
        comp[level] = k;
        scan_tail(obj, n, M, level + 1, remaining - k, comp, x, best);
    }
}

long long grid_order(int n, double resolution) {
    if (n < 2) throw DomainError("simplex grid needs n >= 2");
    if (!(resolution > 0.0) || resolution > 0.5)
        throw DomainError("resolution must lie in (0, 0.5]");
    const long long M = std::llround(1.0 / resolution);
    if (M < 2) throw DomainError("resolution too coarse");
    return M;
}

SimplexGridResult finish(const GridBest& best, long long M) {
    SimplexGridResult r;
    r.value = best.value;
    r.points_scanned = best.scanned;
    r.point.resize(best.comp.size());
    for (std::size_t i = 0; i < best.comp.size(); ++i)
        r.point[i] = static_cast<double>(best.comp[i]) / static_cast<double>(M);
    return r;
}

} // namespace

SimplexGridResult minimize_on_simplex_grid_serial(
    const std::function<double(std::span<const double>)>& obj, int n, double resolution) {
    const long long M = grid_order(n, resolution);
    GridBest best;
    std::vector<long long> comp(n);
    std::vector<double> x(n);
    scan_tail(obj, n, M, 0, M, comp, x, best);
    return finish(best, M);
}

SimplexGridResult minimize_on_simplex_grid(
    const std::function<double(std::span<const double>)>& obj, int n, double resolution) {
    const long long M = grid_order(n, resolution);
    GridBest best;
#ifdef _OPENMP
#pragma omp parallel
    {
        GridBest local;
        std::vector<long long> comp(n);
        std::vector<double> x(n);
#pragma omp for schedule(dynamic, 4) nowait
        for (long long k0 = 0; k0 <= M; ++k0) {
            comp[0] = k0;
            scan_tail(obj, n, M, 1, M - k0, comp, x, local);
        }
#pragma omp critical(procure_simplex_merge)
        {
            best.scanned += local.scanned;
            if (local.beats(best)) {
                best.value = local.value;
                best.comp = std::move(local.comp);
            }
        }
    }
#else
    std::vector<long long> comp(n);
    std::vector<double> x(n);
    scan_tail(obj, n, M, 0, M, comp, x, best);
#endif
    return finish(best, M);
}

} // namespace procure::numerics
