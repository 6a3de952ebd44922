#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fpsi/experiments.hpp"

namespace fpsi {

struct OutputOptions {
    std::filesystem::path dir = "fpsi_out";
    int vtk_every = 0;       // 0: final state only
    bool profile = false;    // p_p along the bottom of the poroelastic domain
    bool interface = false;  // interface series at every VTK output
};

struct RunConfig {
    Scenario scenario;
    RunOptions run;
    OutputOptions output;
};

/// INI text with sections geometry, params, robin, time, bc, output.
/// Unknown sections or keys, bad numbers and contradictory keys throw InputError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// "section.key" for every accepted key.
std::vector<std::string> config_keys();

BiotFormulation formulation_from_string(std::string_view name);
Scheme scheme_from_string(std::string_view name);

}  // namespace fpsi
