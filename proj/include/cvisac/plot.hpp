/* Copyright 2026 The cvisac authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef CVISAC_PLOT_HPP
#define CVISAC_PLOT_HPP

#include <string>
#include <vector>

// Minimal SVG line charts: axes, ticks, polylines, legend. The CSVs are the
// authoritative output; this exists so a run can be eyeballed quickly.

namespace cvisac {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string render_svg_lines(const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series);

}  // namespace cvisac

#endif  // CVISAC_PLOT_HPP
