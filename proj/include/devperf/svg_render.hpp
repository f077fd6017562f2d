#pragma once

#include <string>

#include "devperf/edp.hpp"

namespace devperf {

// Stacked-bar SVG: global reference bar, one bar per bin, legend keyed by
// outcome code. Pass the zoom to render the misses-only variant, where bar
// height is that bin's share of errors. Output bytes are deterministic.
std::string render_edp_svg(const EDPResult& edp, const ErrorZoom* zoom = nullptr);

}  // namespace devperf
