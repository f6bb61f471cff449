#include "radialbc/grid.hpp"

#include "radialbc/errors.hpp"

#include <cmath>

namespace radialbc {

std::string to_string(GridKind k)
{
    return k == GridKind::Uniform ? "uniform" : "log";
}

GridKind grid_kind_from_string(std::string const& s)
{
    if (s == "uniform") {
        return GridKind::Uniform;
    }
    if (s == "log" || s == "logspaced" || s == "log-spaced") {
        return GridKind::LogSpaced;
    }
    throw DomainError("unknown grid kind '" + s + "'");
}

Grid::Grid(GridKind kind, double r_min, double r_max, std::size_t n_points)
    : kind_(kind)
    , r_min_(r_min)
    , r_max_(r_max)
{
    if (!(r_min > 0) || !(r_max > r_min)) {
        throw DomainError("grid requires 0 < r_min < r_max");
    }
    if (n_points < min_points) {
        throw DomainError("grid requires at least " + std::to_string(min_points) + " points");
    }
    r_.resize(n_points);
    if (kind == GridKind::Uniform) {
        step_ = (r_max - r_min) / static_cast<double>(n_points - 1);
        for (std::size_t i = 0; i < n_points; ++i) {
            r_[i] = r_min + step_ * static_cast<double>(i);
        }
    } else {
        double x0 = std::log(r_min);
        step_     = (std::log(r_max) - x0) / static_cast<double>(n_points - 1);
        for (std::size_t i = 0; i < n_points; ++i) {
            r_[i] = std::exp(x0 + step_ * static_cast<double>(i));
        }
    }
    r_.front() = r_min;
    r_.back()  = r_max;
}

double Grid::x(std::size_t i) const
{
    return kind_ == GridKind::Uniform ? r_[i] : std::log(r_min_) + step_ * static_cast<double>(i);
}

Grid Grid::scaled(double s) const
{
    return Grid(kind_, r_min_ * s, r_max_ * s, r_.size());
}

} // namespace radialbc
