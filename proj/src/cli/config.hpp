#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jcpair::cli
{

/// Bad flags, keys or values; maps to exit code 2.
class UsageError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Output could not be written; maps to exit code 4.
class IoError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

enum class Observable
{
	concurrence,
	lambda,
	coherence,
	inversion,
	entropy,
};

enum class OutputFormat
{
	csv,
	json,
};

std::string to_string(Observable o);
std::string to_string(OutputFormat f);

struct RunConfig
{
	std::string name = "run";
	double lambda = 10.0;
	std::optional<double> k = 0.1; ///< exactly one of k, g is set
	std::optional<double> g;
	double nbar = 1.0;
	double epsilon = 1e-10;
	double t0 = 0.0;
	double t1 = 2.0;
	std::size_t steps = 2001;
	std::vector<Observable> observables = {Observable::concurrence, Observable::lambda, Observable::coherence,
	                                       Observable::inversion, Observable::entropy};
	bool detect_events = false;
	std::optional<std::size_t> event_grid; ///< grid points for the event scan; default 4000 per unit λt
	OutputFormat format = OutputFormat::csv;
	std::string output_path; ///< empty writes to stdout
	bool oracle_check = false;

	double resolved_g() const { return g ? *g : *k * lambda; }
	double resolved_k() const { return k ? *k : *g / lambda; }
	std::size_t resolved_event_grid() const;

	/// Throws UsageError on any violated constraint.
	void validate() const;
};

using Setting = std::pair<std::string, std::string>;

/// Applies one key=value setting. Setting `k` clears `g` and vice versa;
/// `preset` replaces every field with the named preset.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Applies a layer of settings; a layer naming both k and g is rejected.
void apply_layer(RunConfig& config, const std::vector<Setting>& layer);

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
std::vector<Setting> parse_settings(const std::string& text, const std::string& origin);
std::vector<Setting> read_settings_file(const std::string& path);

/// Whitespace-separated key=value tokens on one line.
std::vector<Setting> parse_inline_settings(const std::string& line);

struct PresetInfo
{
	std::string name;
	std::string description;
};

std::vector<PresetInfo> list_presets();
RunConfig preset(const std::string& name);

/// Named preset groups for sweeps: `figures` (one per figure) and `all`.
std::vector<std::string> preset_group(const std::string& name);

} // namespace jcpair::cli
