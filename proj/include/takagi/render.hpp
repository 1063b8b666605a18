#pragma once

// SVG figure of the graph of T with highlighted hump rectangles
// K(x0) = I(x0) x J(x0).

#include "humps.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace takagi {

struct PlotSpec {
    std::size_t resolution_bits = 10; // 2^bits samples per unit
    std::vector<Rational> highlights;
    std::string output_path;
    int width = 900;
    int height = 600;
};

inline constexpr std::size_t max_plot_resolution_bits = 20;

namespace detail {

inline std::string fixed(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace detail

// Viewport [0,1] x [0,2/3], y axis pointing up.
inline std::string render_svg(const PlotSpec& spec)
{
    if (spec.resolution_bits > max_plot_resolution_bits) {
        throw budget_exceeded("plot resolution 2^" + std::to_string(spec.resolution_bits) + " exceeds 2^"
                              + std::to_string(max_plot_resolution_bits));
    }
    std::vector<Hump> humps;
    for (const auto& x0 : spec.highlights) {
        humps.push_back(hump_at(x0));
    }

    const double w = spec.width;
    const double h = spec.height;
    auto sx = [&](const Rational& x) { return detail::fixed(x.get_d() * w); };
    auto sy = [&](const Rational& y) { return detail::fixed(h - y.get_d() * 1.5 * h); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
       << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
       << "\" fill=\"white\"/>\n";
    for (const auto& hp : humps) {
        const Interval& ix = hp.interval_x;
        const Interval& jy = hp.proj_j;
        os << "<rect class=\"hump\" x=\"" << sx(ix.lo) << "\" y=\"" << sy(jy.hi) << "\" width=\""
           << detail::fixed(ix.width().get_d() * w) << "\" height=\"" << detail::fixed(jy.width().get_d() * 1.5 * h)
           << "\" fill=\"none\" stroke=\"#c0392b\" data-x0=\"" << to_fraction(hp.x0()) << "\" data-order=\"" << hp.order
           << "\" data-generation=\"" << hp.generation << "\" data-x-lo=\"" << to_fraction(ix.lo) << "\" data-x-hi=\""
           << to_fraction(ix.hi) << "\" data-y-lo=\"" << to_fraction(jy.lo) << "\" data-y-hi=\"" << to_fraction(jy.hi)
           << "\"/>\n";
    }

    const std::size_t bits = spec.resolution_bits;
    const std::size_t n = std::size_t{1} << bits;
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.5\" points=\"";
    for (std::size_t k = 0; k <= n; ++k) {
        const Rational x = detail::scale2(Rational(static_cast<unsigned long>(k)), -static_cast<long>(bits));
        if (k > 0) {
            os << ' ';
        }
        os << sx(x) << ',' << sy(eval_dyadic(x));
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

} // namespace takagi
