#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace modelmult::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verify-example --strict with a failing criterion
inline constexpr int kExitDomain = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDescriptor = 65;

// args[0] is the program name. JSON goes to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modelmult::cli
