#pragma once

namespace pmsim::cli {

// Analytic-limit self-test battery behind `pmsim --check`. Prints one line
// per check; returns the number of failures.
int run_self_check(unsigned seed, int threads);

}  // namespace pmsim::cli
