#include <iostream>

#include "langdual/cli.hpp"

int main(int argc, char** argv) {
  return langdual::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
