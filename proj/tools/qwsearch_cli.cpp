#include <iostream>

#include "qwsearch/cli.hpp"

int main(int argc, char** argv) {
  return qwsearch::main_entry(argc, argv, std::cout, std::cerr);
}
