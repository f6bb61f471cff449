#include "radialbc/potential.hpp"

#include "radialbc/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace radialbc {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

/// Endpoint slope of the three-point PCHIP formula.
double pchip_end_slope(double h0, double h1, double d0, double d1)
{
    double s = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0) {
        return 0;
    }
    if (d0 * d1 < 0 && std::abs(s) > std::abs(3 * d0)) {
        return 3 * d0;
    }
    return s;
}

} // namespace

Tabulated::Tabulated(std::vector<double> r, std::vector<double> v)
    : r_(std::move(r))
    , v_(std::move(v))
{
    if (r_.size() != v_.size()) {
        throw DomainError("tabulated potential: r and V sample counts differ");
    }
    if (r_.size() < 2) {
        throw DomainError("tabulated potential: need at least two samples");
    }
    if (!(r_.front() > 0)) {
        throw DomainError("tabulated potential: first radius must be positive");
    }
    for (std::size_t i = 1; i < r_.size(); ++i) {
        if (!(r_[i] > r_[i - 1])) {
            throw DomainError("tabulated potential: radii must be strictly increasing");
        }
    }

    auto const n = r_.size();
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = r_[i + 1] - r_[i];
        d[i] = (v_[i + 1] - v_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    if (n == 2) {
        slope_[0] = slope_[1] = d[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0) {
            slope_[i] = 0;
        } else {
            double w1 = 2 * h[i] + h[i - 1];
            double w2 = h[i] + 2 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    slope_[0]     = pchip_end_slope(h[0], h[1], d[0], d[1]);
    slope_[n - 1] = pchip_end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

double Tabulated::operator()(double r) const
{
    if (r < r_.front() || r > r_.back()) {
        throw RangeError("tabulated potential evaluated outside [" + std::to_string(r_.front()) + ", " +
                         std::to_string(r_.back()) + "] at r = " + std::to_string(r));
    }
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t i = (it == r_.end()) ? r_.size() - 2 : static_cast<std::size_t>(it - r_.begin()) - 1;
    double h  = r_[i + 1] - r_[i];
    double t  = (r - r_[i]) / h;
    double t2 = t * t;
    double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * v_[i] + (t3 - 2 * t2 + t) * h * slope_[i] + (-2 * t3 + 3 * t2) * v_[i + 1] +
           (t3 - t2) * h * slope_[i + 1];
}

std::string Potential::kind() const
{
    return std::visit(overloaded{[](Coulomb const&) { return std::string("coulomb"); },
                                 [](HarmonicOscillator const&) { return std::string("harmonic"); },
                                 [](InverseSquare const&) { return std::string("inverse-square"); },
                                 [](FreeParticle const&) { return std::string("free"); },
                                 [](Tabulated const&) { return std::string("tabulated"); },
                                 [](Sum const&) { return std::string("sum"); }},
                      v_);
}

double evaluate_potential(Potential const& pot, double r, double mass)
{
    if (!(r > 0)) {
        throw DomainError("potential evaluated at r <= 0");
    }
    return std::visit(overloaded{[&](Coulomb const& c) { return -c.alpha / r; },
                                 [&](HarmonicOscillator const& h) { return 0.5 * mass * h.omega * h.omega * r * r; },
                                 [&](InverseSquare const& s) { return -s.g / (2 * mass * r * r); },
                                 [&](FreeParticle const&) { return 0.0; },
                                 [&](Tabulated const& t) { return t(r); },
                                 [&](Sum const& s) {
                                     double v = 0;
                                     for (auto const& p : s.parts) {
                                         v += evaluate_potential(p, r, mass);
                                     }
                                     return v;
                                 }},
                      pot.variant());
}

NearOrigin& NearOrigin::operator+=(NearOrigin const& o)
{
    g += o.g;
    v_m1 += o.v_m1;
    v0 += o.v0;
    v1 += o.v1;
    v2 += o.v2;
    return *this;
}

namespace {

/// Cubic through the four smallest samples of f(r) = r^2 V(r), returned as
/// monomial coefficients {A, B, C, D}: f ~ A + B r + C r^2 + D r^3.
std::array<double, 4> fit_origin_cubic(Tabulated const& t)
{
    auto const& r = t.r();
    auto const& v = t.v();
    if (r.size() < 4 || r[3] >= 10 * r[0]) {
        throw DomainError("tabulated potential: origin analysis needs four samples below 10 r_1");
    }
    std::array<double, 4> x{}, f{};
    for (int i = 0; i < 4; ++i) {
        x[i] = r[i];
        f[i] = r[i] * r[i] * v[i];
    }

    // |f| growing like r^-p with p > 1/2 toward the origin is super-singular
    bool any_zero = std::any_of(f.begin(), f.end(), [](double y) { return y == 0.0; });
    if (!any_zero) {
        double slope = (std::log(std::abs(f[3])) - std::log(std::abs(f[0]))) / (std::log(x[3]) - std::log(x[0]));
        bool growing = std::abs(f[0]) > std::abs(f[1]) && std::abs(f[1]) > std::abs(f[2]) &&
                       std::abs(f[2]) > std::abs(f[3]);
        if (growing && slope < -0.5) {
            throw UnsupportedSingularity("r^2 V(r) diverges toward the origin (local power " + std::to_string(slope) +
                                         ")");
        }
    }

    // Newton divided differences, then expand to monomials
    std::array<double, 4> dd = f;
    for (int k = 1; k < 4; ++k) {
        for (int i = 3; i >= k; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - k]);
        }
    }
    // Horner on the Newton form, coefficients held low-order first
    std::array<double, 4> poly{dd[3], 0, 0, 0};
    int deg = 0;
    for (int k = 2; k >= 0; --k) {
        std::array<double, 4> next{};
        for (int j = 0; j <= deg; ++j) {
            next[j + 1] += poly[j];
            next[j] -= x[k] * poly[j];
        }
        next[0] += dd[k];
        poly = next;
        ++deg;
    }
    return poly;
}

} // namespace

NearOrigin near_origin(Potential const& pot, double mass)
{
    return std::visit(overloaded{[&](Coulomb const& c) { return NearOrigin{0, -c.alpha, 0, 0, 0}; },
                                 [&](HarmonicOscillator const& h) {
                                     return NearOrigin{0, 0, 0, 0, 0.5 * mass * h.omega * h.omega};
                                 },
                                 [&](InverseSquare const& s) { return NearOrigin{s.g, 0, 0, 0, 0}; },
                                 [&](FreeParticle const&) { return NearOrigin{}; },
                                 [&](Tabulated const& t) {
                                     auto c = fit_origin_cubic(t);
                                     double g = -2 * mass * c[0];
                                     if (std::abs(g) < regular_limit_tolerance) {
                                         g = 0;
                                     }
                                     return NearOrigin{g, c[1], c[2], c[3], 0};
                                 },
                                 [&](Sum const& s) {
                                     NearOrigin n;
                                     for (auto const& p : s.parts) {
                                         n += near_origin(p, mass);
                                     }
                                     return n;
                                 }},
                      pot.variant());
}

OriginLimit origin_limit(Potential const& pot, double mass)
{
    if (!(mass > 0)) {
        throw DomainError("mass must be positive");
    }
    double g = near_origin(pot, mass).g;
    bool regular = std::abs(g) < regular_limit_tolerance;
    return {regular ? 0.0 : g, regular};
}

double asymptotic_value(Potential const& pot, double mass)
{
    return std::visit(overloaded{[](Coulomb const&) { return 0.0; },
                                 [](HarmonicOscillator const& h) {
                                     return h.omega == 0 ? 0.0 : std::numeric_limits<double>::infinity();
                                 },
                                 [](InverseSquare const&) { return 0.0; },
                                 [](FreeParticle const&) { return 0.0; },
                                 [](Tabulated const& t) { return t.v().back(); },
                                 [&](Sum const& s) {
                                     double v = 0;
                                     for (auto const& p : s.parts) {
                                         v += asymptotic_value(p, mass);
                                     }
                                     return v;
                                 }},
                      pot.variant());
}

std::optional<double> length_scale(Potential const& pot, double mass)
{
    return std::visit(
        overloaded{[&](Coulomb const& c) -> std::optional<double> {
                       if (c.alpha == 0) {
                           return std::nullopt;
                       }
                       return 1.0 / (mass * std::abs(c.alpha));
                   },
                   [&](HarmonicOscillator const& h) -> std::optional<double> {
                       if (h.omega == 0) {
                           return std::nullopt;
                       }
                       return 1.0 / std::sqrt(mass * std::abs(h.omega));
                   },
                   [](InverseSquare const&) -> std::optional<double> { return std::nullopt; },
                   [](FreeParticle const&) -> std::optional<double> { return std::nullopt; },
                   [](Tabulated const& t) -> std::optional<double> { return t.r().back() / 30.0; },
                   [&](Sum const& s) -> std::optional<double> {
                       std::optional<double> out;
                       for (auto const& p : s.parts) {
                           if (auto l = length_scale(p, mass)) {
                               out = out ? std::max(*out, *l) : *l;
                           }
                       }
                       return out;
                   }},
        pot.variant());
}

} // namespace radialbc
