#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gecscore::cli {

// Entry point of the gecscore command. Returns 0 on success, 1 on a usage
// error and 2 on a runtime error.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace gecscore::cli
