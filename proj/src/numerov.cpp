#include "numerov.hpp"

#include "radialbc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace radialbc::numerov {

Table tabulate(RadialEquation const& eq, Grid const& grid)
{
    Table t;
    t.grid     = &grid;
    t.h        = grid.step();
    auto const n = grid.size();
    bool const logx = grid.kind() == GridKind::LogSpaced;
    t.w.resize(n);
    t.F.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double r = grid[i];
        t.w[i]   = eq.w(r);
        t.F[i]   = logx ? r * r * t.w[i] + 0.25 : t.w[i];
    }

    // outermost classical turning point
    std::size_t turning = n;
    for (std::size_t i = n; i-- > 0;) {
        if (t.w[i] < 0) {
            turning = i;
            break;
        }
    }

    // practical infinity: accumulated decay exponent beyond the turning point
    t.end = n - 1;
    double S = 0;
    for (std::size_t i = (turning == n ? 0 : turning) + 1; i < n; ++i) {
        double a = std::sqrt(std::max(t.w[i - 1], 0.0));
        double b = std::sqrt(std::max(t.w[i], 0.0));
        S += 0.5 * (a + b) * (grid[i] - grid[i - 1]);
        if (S > tail_exponent) {
            t.end = i;
            break;
        }
    }
    if (t.end < 8) {
        t.end = std::min<std::size_t>(8, n - 1);
    }

    if (turning == n || turning + 3 > t.end) {
        t.match = t.end / 2;
    } else {
        t.match = turning;
    }
    t.match = std::clamp<std::size_t>(t.match, 2, t.end - 2);

    for (std::size_t i = 0; i <= t.end; ++i) {
        if (1 - t.h * t.h * t.F[i] / 12 <= 0.05) {
            throw DomainError("grid too coarse for Numerov marching at r = " + std::to_string(grid[i]) +
                              " (h^2 F / 12 = " + std::to_string(t.h * t.h * t.F[i] / 12) + ")");
        }
    }
    return t;
}

double to_u(Table const& t, std::size_t i, double y)
{
    return t.grid->kind() == GridKind::LogSpaced ? y * std::sqrt((*t.grid)[i]) : y;
}

double from_u(Table const& t, std::size_t i, double u)
{
    return t.grid->kind() == GridKind::LogSpaced ? u / std::sqrt((*t.grid)[i]) : u;
}

namespace {

void rescale(std::vector<double>& y, std::size_t lo, std::size_t hi, double& log_scale)
{
    for (std::size_t k = lo; k <= hi; ++k) {
        y[k] /= overflow;
    }
    log_scale += std::log(overflow);
}

} // namespace

March outward(Table const& t, double y0, double y1, std::size_t stop)
{
    March m;
    m.y.assign(t.F.size(), 0.0);
    m.y[0]          = y0;
    m.y[1]          = y1;
    double const c  = t.h * t.h / 12;
    for (std::size_t i = 1; i < stop; ++i) {
        double num = 2 * (1 + 5 * c * t.F[i]) * m.y[i] - (1 - c * t.F[i - 1]) * m.y[i - 1];
        m.y[i + 1] = num / (1 - c * t.F[i + 1]);
        if (std::abs(m.y[i + 1]) > overflow) {
            rescale(m.y, 0, i + 1, m.log_scale);
        }
    }
    return m;
}

March inward(Table const& t, std::size_t stop)
{
    auto const& g = *t.grid;
    std::size_t const e = t.end;
    if (!(t.w[e] > 0) || !(t.w[e - 1] > 0)) {
        throw AsymptoticsError("no decaying tail at r = " + std::to_string(g[e]) + " (w = " + std::to_string(t.w[e]) +
                               "); energy at or above the asymptotic threshold or grid too short");
    }
    // WKB: u ~ w^{-1/4} exp(-int sqrt(w) dr)
    double ue  = 1.0;
    double ue1 = std::pow(t.w[e] / t.w[e - 1], 0.25) *
                 std::exp(0.5 * (std::sqrt(t.w[e]) + std::sqrt(t.w[e - 1])) * (g[e] - g[e - 1]));

    March m;
    m.y.assign(t.F.size(), 0.0);
    m.y[e]         = from_u(t, e, ue);
    m.y[e - 1]     = from_u(t, e - 1, ue1);
    double const c = t.h * t.h / 12;
    for (std::size_t i = e - 1; i > stop; --i) {
        double num = 2 * (1 + 5 * c * t.F[i]) * m.y[i] - (1 - c * t.F[i + 1]) * m.y[i + 1];
        m.y[i - 1] = num / (1 - c * t.F[i - 1]);
        if (std::abs(m.y[i - 1]) > overflow) {
            rescale(m.y, i - 1, e, m.log_scale);
        }
    }
    return m;
}

int sign_changes(std::vector<double> const& y, std::size_t first, std::size_t last)
{
    int count = 0;
    int prev  = 0;
    for (std::size_t i = first; i <= last; ++i) {
        int s = (y[i] > 0) - (y[i] < 0);
        if (s == 0) {
            continue;
        }
        if (prev != 0 && s != prev) {
            ++count;
        }
        prev = s;
    }
    return count;
}

} // namespace radialbc::numerov
