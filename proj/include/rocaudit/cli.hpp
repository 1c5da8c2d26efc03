#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rocaudit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the rocaudit executable. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace rocaudit::cli
