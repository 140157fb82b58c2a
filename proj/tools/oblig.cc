#include "commands.hh"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return oblig::cli::run(args, std::cout, std::cerr);
}
