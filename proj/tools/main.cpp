#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  int code = 0;
  const auto config = symdisc::cli::parse_args(argc, argv, std::cout, std::cerr, code);
  if (!config) return code;
  return symdisc::cli::run(*config, std::cout, std::cerr);
}
