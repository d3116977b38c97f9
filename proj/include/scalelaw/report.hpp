#pragma once

#include <cstdio>
#include <string>

#include "scalelaw/bootstrap.hpp"
#include "scalelaw/errors.hpp"

namespace scalelaw {

// Three significant figures, plain or scientific as %g chooses.
inline std::string format_sig3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Fixed-width text table: parameter, central, lower, upper. Column widths are
// constant so repeated runs diff cleanly.
inline std::string render_table_text(const BootstrapSummary& s) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%-10s %12s %12s %12s\n", "parameter",
                "central", "lower", "upper");
  out += line;
  for (std::size_t i = 0; i < s.parameter_names.size(); ++i) {
    std::snprintf(line, sizeof line, "%-10s %12s %12s %12s\n",
                  s.parameter_names[i].c_str(), format_sig3(s.central[i]).c_str(),
                  format_sig3(s.lower[i]).c_str(),
                  format_sig3(s.upper[i]).c_str());
    out += line;
  }
  return out;
}

inline std::string render_table_csv(const BootstrapSummary& s) {
  std::string out = "parameter,central,lower,upper\n";
  for (std::size_t i = 0; i < s.parameter_names.size(); ++i) {
    out += s.parameter_names[i];
    out += ',';
    out += format_sig3(s.central[i]);
    out += ',';
    out += format_sig3(s.lower[i]);
    out += ',';
    out += format_sig3(s.upper[i]);
    out += '\n';
  }
  return out;
}

}  // namespace scalelaw
