#include <clocale>
#include <iostream>
#include <string>
#include <vector>

#include "qzeta_cli.hpp"

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  std::vector<std::string> args(argv + 1, argv + argc);
  return qzeta::cli::run_cli(std::move(args), std::cout, std::cerr);
}
