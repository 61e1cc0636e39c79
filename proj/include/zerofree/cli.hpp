#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zf::cli {

// Exit codes: 0 pass / success, 1 fail verdict, 2 usage or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace zf::cli
