#include "convnls/diagnostics.hpp"

#include <cstdio>
#include <limits>

namespace convnls {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void DiagnosticSeries::write_csv(std::ostream& os) const {
    for (const std::string& line : preamble) os << "# " << line << "\n";
    os << "t,mass";
    for (int d = 1; d <= dim; ++d) os << ",momentum_" << d;
    os << ",energy,energy0,xbeta,xbeta_dot,threshold_margin\n";
    for (const DiagnosticSample& s : samples) {
        os << format_double(s.t) << ',' << format_double(s.mass);
        for (int d = 0; d < dim; ++d) os << ',' << format_double(s.momentum[d]);
        os << ',' << format_double(s.energy) << ',' << format_double(s.energy0)
           << ',' << format_double(s.xbeta) << ',' << format_double(s.xbeta_dot)
           << ',' << format_double(s.threshold_margin) << "\n";
    }
}

} // namespace convnls
