#include <string>
#include <vector>

#include "koopinv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return koopinv::cli::run(std::move(args));
}
