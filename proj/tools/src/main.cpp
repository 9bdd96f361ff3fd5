#include <iostream>

#include "goalbench/cli.hpp"

int main(int argc, char ** argv)
{
  return goalbench::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
