// fil :: executable entry point
#include <string>
#include <vector>

#include "fil/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fil::cli::run(args);
}
