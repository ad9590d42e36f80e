#ifndef HOPFDDE_SVG_HPP
#define HOPFDDE_SVG_HPP

#include <string>
#include <vector>

namespace hopfdde {

/**
 * Renders one or more (x, y) series as an 800x500 SVG line plot with
 * axis ticks at round numbers.  Exactly one polyline is emitted per
 * series; output is a deterministic function of the inputs.
 */
std::string line_plot_svg(const std::vector<double>& x,
                          const std::vector<std::vector<double>>& series,
                          const std::vector<std::string>& labels,
                          const std::string& title,
                          const std::string& x_label,
                          const std::string& y_label);

}  // namespace hopfdde

#endif  // HOPFDDE_SVG_HPP
