#include <iostream>
#include <string>
#include <vector>

#include "wheelerkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = wheelerkit::cli::dispatch(args);
  (result.exit_code >= wheelerkit::cli::kBudget ? std::cerr : std::cout) << result.render();
  return result.exit_code;
}
