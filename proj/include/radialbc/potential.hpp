#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace radialbc {

/// V(r) = -alpha/r
struct Coulomb
{
    double alpha{1};
};

/// V(r) = m omega^2 r^2 / 2
struct HarmonicOscillator
{
    double omega{1};
};

/// V(r) = -g / (2 m r^2). `g` is the dimensionless strength entering the
/// indicial equation directly; g < 0 is a repulsive 1/r^2 wall.
struct InverseSquare
{
    double g{0};
};

struct FreeParticle
{
};

/// Sampled potential, interpolated with a monotone piecewise cubic (PCHIP).
class Tabulated
{
  public:
    Tabulated(std::vector<double> r, std::vector<double> v);

    std::vector<double> const& r() const { return r_; }
    std::vector<double> const& v() const { return v_; }

    double operator()(double r) const;

  private:
    std::vector<double> r_;
    std::vector<double> v_;
    std::vector<double> slope_;
};

class Potential;

struct Sum
{
    std::vector<Potential> parts;
};

/// Tagged description of a central potential.
class Potential
{
  public:
    using variant_type = std::variant<Coulomb, HarmonicOscillator, InverseSquare, FreeParticle, Tabulated, Sum>;

    Potential()
        : v_(FreeParticle{})
    {
    }

    template <typename T>
        requires std::is_constructible_v<variant_type, T>
    Potential(T v)
        : v_(std::move(v))
    {
    }

    variant_type const& variant() const { return v_; }

    /// Short identifier: "coulomb", "harmonic", "inverse-square", "free", "tabulated", "sum".
    std::string kind() const;

  private:
    variant_type v_;
};

/// V(r) for r > 0. Throws DomainError for r <= 0 and RangeError outside a table.
double evaluate_potential(Potential const& pot, double r, double mass);

/// Leading terms of the small-r expansion
///   V(r) ~ -g/(2 m r^2) + v_m1/r + v0 + v1 r + v2 r^2.
struct NearOrigin
{
    double g{0};
    double v_m1{0};
    double v0{0};
    double v1{0};
    double v2{0};

    NearOrigin& operator+=(NearOrigin const& o);
};

NearOrigin near_origin(Potential const& pot, double mass);

struct OriginLimit
{
    double g_eff{0};
    bool regular{true};
};

/// g_eff = -lim_{r->0} 2 m r^2 V(r). Tables are extrapolated from their four
/// smallest samples; a diverging |r^2 V| raises UnsupportedSingularity.
OriginLimit origin_limit(Potential const& pot, double mass);

/// |g_eff| below this counts as a regular origin.
inline constexpr double regular_limit_tolerance = 1e-10;

/// V(r -> infinity); +inf for confining potentials.
double asymptotic_value(Potential const& pot, double mass);

/// Natural length of the potential (1/(m alpha) for Coulomb, 1/sqrt(m omega)
/// for the oscillator). Empty for scale-free potentials.
std::optional<double> length_scale(Potential const& pot, double mass);

} // namespace radialbc
