#include <string>
#include <vector>

#include "trivopt/bench.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return trivopt::bench_main(args);
}
