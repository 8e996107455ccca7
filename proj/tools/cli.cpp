#include "cli.hpp"

#include <ostream>

namespace fraclab {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  (void)args;
  (void)out;
  err << "not yet implemented\n";
  return 2;
}

}  // namespace fraclab
