#pragma once

#include <array>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace convnls {

struct DiagnosticSample {
    double t = 0.0;
    double mass = 0.0;
    std::array<double, 4> momentum{};
    double energy = 0.0;
    double energy0 = 0.0;
    double xbeta = 0.0;
    double xbeta_dot = 0.0;
    double threshold_margin = std::numeric_limits<double>::quiet_NaN();
};

/// Time series of conserved quantities and norms at monitor cadence.
struct DiagnosticSeries {
    int dim = 1;
    std::vector<std::string> preamble;  ///< "# key=value" comment lines
    std::vector<DiagnosticSample> samples;

    /// CSV: preamble comments, mandatory header
    /// t,mass,momentum_1..n,energy,energy0,xbeta,xbeta_dot,threshold_margin
    void write_csv(std::ostream& os) const;
};

/// %.17g formatting shared by all writers (byte-stable outputs).
std::string format_double(double v);

} // namespace convnls
