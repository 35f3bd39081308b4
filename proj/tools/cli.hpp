#pragma once

namespace convnls::cli {

/// Runs the full command-line surface. Exit codes: 0 clean; 1 configuration
/// or parameter errors; 2 aborted computations (ResolutionLoss,
/// NoConvergence, BoxExit, noisy fits, vanishing denominators); 3 non-finite
/// states (expected in supercritical blow-up runs).
int run(int argc, char** argv);

} // namespace convnls::cli
