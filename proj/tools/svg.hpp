#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coarse::cli {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Static log-log plot. Nonpositive points are left out.
void write_loglog_svg(std::ostream& out, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace coarse::cli
