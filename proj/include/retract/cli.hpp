#pragma once

#include <string>

namespace retract::cli {

// exit codes: 0 ok, 1 usage, 2 validation or input, 3 solver or resource
int run(int argc, const char* const* argv);

// stable 64-bit FNV-1a digest of the canonical instance text, hex
std::string instance_digest(const std::string& canonical);

}  // namespace retract::cli
