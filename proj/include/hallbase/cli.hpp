#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hallbase {

enum ExitCode { kOk = 0, kUsage = 1, kBudget = 2, kInternal = 3 };

// runs the hallbase command line; args exclude the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// field sizes accepted by --q
const std::vector<int>& cli_fields();

// 64-bit FNV-1a, used for cache keys
std::string config_hash(const std::string& canonical_config);

}  // namespace hallbase
