#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tubearc/config.hpp"

namespace tubearc {

/// a = 0.85 nm, L = 100 nm geometries of the reference tables.
std::vector<CaseSpec> reference_cases();

std::vector<std::string> preset_names();

/// Built-in run configurations. Throws Error(invalid_config) for an unknown name.
RunConfig preset(std::string_view name);

}  // namespace tubearc
