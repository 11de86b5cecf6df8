#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pythlab {

// Exit status: 0 definite result, 2 Unknown or Inconclusive, 1 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pythlab
