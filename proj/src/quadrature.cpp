#include "radialbc/quadrature.hpp"

#include "radialbc/errors.hpp"

#include <cmath>
#include <numbers>

namespace radialbc::quadrature {

Rule gauss_legendre(std::size_t n)
{
    if (n == 0) {
        throw DomainError("Gauss-Legendre rule needs at least one node");
    }
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0        = p1;
                p1        = pk;
            }
            double pn = n == 1 ? x : p1;
            double pm = n == 1 ? 1 : p0;
            dp        = static_cast<double>(n) * (x * pn - pm) / (x * x - 1);
            double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        double w                = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i]           = -x;
        rule.nodes[n - 1 - i]   = x;
        rule.weights[i]         = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0;
    }
    return rule;
}

double composite(Integrand const& f, double a, double b, std::size_t panels, Rule const& rule)
{
    double const h = (b - a) / static_cast<double>(panels);
    double sum     = 0;
    for (std::size_t p = 0; p < panels; ++p) {
        double lo  = a + h * static_cast<double>(p);
        double mid = lo + 0.5 * h;
        double s   = 0;
        for (std::size_t k = 0; k < rule.order(); ++k) {
            s += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
        }
        sum += 0.5 * h * s;
    }
    return sum;
}

namespace {

double panel(Integrand const& f, double a, double b, Rule const& rule)
{
    double mid = 0.5 * (a + b), half = 0.5 * (b - a), s = 0;
    for (std::size_t k = 0; k < rule.order(); ++k) {
        s += rule.weights[k] * f(mid + half * rule.nodes[k]);
    }
    return half * s;
}

void adaptive_step(Integrand const& f, double a, double b, double whole, double tol, int depth, Rule const& rule,
                   AdaptiveResult& out)
{
    double m     = 0.5 * (a + b);
    double left  = panel(f, a, m, rule);
    double right = panel(f, m, b, rule);
    out.evaluations += 2 * rule.order();
    double diff = left + right - whole;
    if (std::abs(diff) <= tol || depth <= 0 || m <= a || m >= b) {
        out.value += left + right;
        out.error_estimate += std::abs(diff);
        return;
    }
    adaptive_step(f, a, m, left, 0.5 * tol, depth - 1, rule, out);
    adaptive_step(f, m, b, right, 0.5 * tol, depth - 1, rule, out);
}

} // namespace

AdaptiveResult adaptive(Integrand const& f, double a, double b, double abs_tol, double rel_tol, int max_depth)
{
    static Rule const rule = gauss_legendre(7);
    AdaptiveResult out;
    if (a == b) {
        return out;
    }
    // coarse pass sets the scale for the relative tolerance
    double coarse = composite(f, a, b, 16, rule);
    out.evaluations += 16 * rule.order();
    double tol = std::max(abs_tol, rel_tol * std::abs(coarse));
    double const h = (b - a) / 16.0;
    for (int p = 0; p < 16; ++p) {
        double lo = a + h * p, hi = (p == 15) ? b : lo + h;
        adaptive_step(f, lo, hi, panel(f, lo, hi, rule), tol / 16.0, max_depth, rule, out);
        out.evaluations += rule.order();
    }
    return out;
}

DoublingResult doubling(Integrand const& f, double a, double b, std::size_t initial_panels, double abs_tol,
                        double rel_tol, int max_levels)
{
    static Rule const rule = gauss_legendre(3);
    DoublingResult out;
    std::size_t panels = std::max<std::size_t>(1, initial_panels);
    double previous    = 0;
    for (int level = 0; level < max_levels; ++level, panels *= 2) {
        double v      = composite(f, a, b, panels, rule);
        out.points    = panels * rule.order();
        out.value     = v;
        out.sequence.emplace_back(static_cast<double>(out.points), v);
        if (level > 0 && std::abs(v - previous) <= abs_tol + rel_tol * std::abs(v)) {
            out.converged = true;
            // keep one level past convergence so the order estimate has data
            if (out.sequence.size() >= 4) {
                break;
            }
        }
        previous = v;
    }

    auto const& s = out.sequence;
    for (std::size_t k = 2; k < s.size(); ++k) {
        double d1 = s[k - 1].second - s[k - 2].second;
        double d2 = s[k].second - s[k - 1].second;
        double noise = 1e-12 * std::max(1.0, std::abs(s[k].second));
        if (std::abs(d2) > noise && std::abs(d1) > noise) {
            out.observed_order = std::log2(std::abs(d1 / d2));
        }
    }
    return out;
}

} // namespace radialbc::quadrature
