#include <iostream>

#include <psolv/cli.hpp>

int main(int argc, char **argv)
{
  return psolv::cli::run(argc, argv, std::cout, std::cerr);
}
