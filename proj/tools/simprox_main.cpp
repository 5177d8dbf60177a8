#include <vector>

#include "simprox/cli.hpp"

int main(int argc, char** argv) {
  return simprox::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
