#pragma once

// Subcommand runners. Each takes its fully resolved parameter set as JSON,
// writes its outputs plus manifest.json into `out_dir`, and returns the
// process exit code. Rerunning a runner on a manifest's parameters
// reproduces every output byte for byte.

#include <json.hpp>

#include <string>

namespace qsl::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, numeric_failure = 1, usage_error = 2 };

int run_spectrum(const json& params, const std::string& out_dir);
int run_survival(const json& params, const std::string& out_dir);
int run_figures(const json& params, const std::string& out_dir);
int run_verify_appendix(const json& params, const std::string& out_dir);
int run_critical(const json& params, const std::string& out_dir);

/// Dispatches on the manifest's "subcommand" field.
int run_from_manifest(const std::string& manifest_path, const std::string& out_dir);

/// Runs a subcommand by name, mapping exceptions to exit codes and messages on stderr.
int dispatch(const std::string& subcommand, const json& params, const std::string& out_dir);

}  // namespace qsl::cli
