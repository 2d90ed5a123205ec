#pragma once

#include <string>
#include <vector>

namespace trapstack {

inline constexpr const char* kToolName = "trapstack";
inline constexpr const char* kToolVersion = "1.0.0";

// Batch driver: validates config, runs the module, writes outputs and a
// RunManifest into the output directory. Returns the process exit status.
int dispatch(const std::vector<std::string>& args);

// Re-run a recorded invocation; primary outputs are byte-identical.
int reproduce(const std::string& manifest_path);

} // namespace trapstack
