#pragma once

namespace thermdec::cli {

// Full command-line entry point: sweep | visibility | wigner | validate |
// constants, shared flags --config/--out/--seed/--tol/--method/--quick.
// Returns the process exit code: 0 success, 1 validation failures, 2 bad
// input, 3 numeric budget exceeded.
int run_cli(int argc, char** argv);

}  // namespace thermdec::cli
