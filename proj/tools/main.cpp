#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "cli.hpp"

int main(int argc, char** argv) {
#if defined(_OPENMP)
  if (const char* t = std::getenv("SWEEP_THREADS")) {
    const int n = std::atoi(t);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
  std::vector<std::string> args(argv, argv + argc);
  return sweep::cli::run(args, std::cout, std::cerr);
}
