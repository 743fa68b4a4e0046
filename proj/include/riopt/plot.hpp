#pragma once

#include "riopt/trace.hpp"

#include <string>
#include <vector>

namespace riopt {

/// Renders gradient norm (log scale) against iteration for one or more traces
/// as a self-contained SVG string: one path and one legend entry per trace.
/// Byte-deterministic given the inputs.
std::string render_gradnorm_svg(const std::vector<const IterTrace*>& traces,
                                const std::vector<std::string>& labels,
                                const std::string& title = "");

/// Writes the rendered SVG to a file.
void emit_plot(const std::vector<const IterTrace*>& traces,
               const std::vector<std::string>& labels, const std::string& path,
               const std::string& title = "");

}  // namespace riopt
