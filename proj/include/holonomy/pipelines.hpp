#pragma once

// One pipeline per CLI subcommand. Each takes the input texts, calls the
// module operations and records what they return; nothing here decides a
// mathematical question the modules do not.

#include "holonomy/report.hpp"
#include "holonomy/specfile.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace holonomy::pipelines {

// HOLONOMY_FORGE_ASSETS if set, else the directory bundled at build time.
std::filesystem::path asset_dir();
std::string read_asset(const std::string& name);

// Rows of `width` integers; '#' starts a comment. Throws ParseError.
std::vector<std::vector<long>> parse_reference_table(std::string_view text, std::size_t width);

report::RunReport verify_structures();

// Inputs that fail to parse or validate propagate as ParseError/ValidationError.
report::RunReport orbifold_analyze(std::string_view orbifold_text);
report::RunReport orbifold_betti(std::string_view orbifold_text, std::string_view ade_text,
                                 std::string_view pairs_text);
report::RunReport estimates_check(std::string_view estimates_text);
report::RunReport spin7_demo(std::string_view wps_text);
// Checks on the bundled G2 and Spin(7) Betti reference data.
report::RunReport reference_tables(std::string_view pairs_text, std::string_view triples_text);

// Every pipeline on the bundled assets.
report::Bundle full_report();

}  // namespace holonomy::pipelines
