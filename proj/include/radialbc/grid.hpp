#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace radialbc {

enum class GridKind
{
    Uniform,
    LogSpaced
};

std::string to_string(GridKind k);
GridKind grid_kind_from_string(std::string const& s);

/// Radial grid on [r_min, r_max]. r_min is where the origin series hands
/// over to the numerical solution, not a wall.
///
/// Uniform grids are equidistant in r; LogSpaced grids are equidistant in
/// x = ln r. `step()` is the spacing in whichever variable is uniform.
class Grid
{
  public:
    static constexpr std::size_t min_points = 16;

    Grid(GridKind kind, double r_min, double r_max, std::size_t n_points);

    GridKind kind() const { return kind_; }
    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    std::size_t size() const { return r_.size(); }
    double step() const { return step_; }

    double operator[](std::size_t i) const { return r_[i]; }
    std::vector<double> const& points() const { return r_; }

    /// The uniform coordinate (r or ln r) of point i.
    double x(std::size_t i) const;

    /// dr/dx at point i.
    double jacobian(std::size_t i) const { return kind_ == GridKind::Uniform ? 1.0 : r_[i]; }

    /// Same kind and point count with both ends multiplied by `s`.
    Grid scaled(double s) const;

  private:
    GridKind kind_;
    double r_min_;
    double r_max_;
    double step_;
    std::vector<double> r_;
};

} // namespace radialbc
