#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace jcpair::cli
{

namespace
{

std::string trim(const std::string& s)
{
	const auto first = s.find_first_not_of(" \t\r\n");
	if(first == std::string::npos) {
		return {};
	}
	const auto last = s.find_last_not_of(" \t\r\n");
	return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value)
{
	double out = 0;
	const auto* end = value.data() + value.size();
	const auto [ptr, ec] = std::from_chars(value.data(), end, out);
	if(ec != std::errc{} || ptr != end || !std::isfinite(out)) {
		throw UsageError(fmt::format("{}: '{}' is not a finite number", key, value));
	}
	return out;
}

std::size_t parse_count(const std::string& key, const std::string& value)
{
	std::size_t out = 0;
	const auto* end = value.data() + value.size();
	const auto [ptr, ec] = std::from_chars(value.data(), end, out);
	if(ec != std::errc{} || ptr != end) {
		throw UsageError(fmt::format("{}: '{}' is not a non-negative integer", key, value));
	}
	return out;
}

bool parse_bool(const std::string& key, const std::string& value)
{
	if(value == "true" || value == "1" || value == "yes" || value == "on") {
		return true;
	}
	if(value == "false" || value == "0" || value == "no" || value == "off") {
		return false;
	}
	throw UsageError(fmt::format("{}: '{}' is not a boolean", key, value));
}

Observable parse_observable(const std::string& name)
{
	if(name == "concurrence") return Observable::concurrence;
	if(name == "lambda") return Observable::lambda;
	if(name == "coherence") return Observable::coherence;
	if(name == "inversion") return Observable::inversion;
	if(name == "entropy") return Observable::entropy;
	throw UsageError(fmt::format("unknown observable '{}'", name));
}

std::vector<Observable> parse_observables(const std::string& value)
{
	std::vector<Observable> out;
	std::stringstream ss(value);
	std::string item;
	while(std::getline(ss, item, ',')) {
		item = trim(item);
		if(item.empty()) {
			continue;
		}
		const auto o = parse_observable(item);
		if(std::find(out.begin(), out.end(), o) == out.end()) {
			out.push_back(o);
		}
	}
	return out;
}

// Figure regimes: even figures use the stronger field coupling.
struct FigureSpec
{
	int figure;
	Observable observable;
	double k;
	const char* label;
};

constexpr FigureSpec figures[] = {
    {1, Observable::concurrence, 0.1, "concurrence"},
    {2, Observable::concurrence, 0.5, "concurrence"},
    {3, Observable::lambda, 0.1, "lambda function"},
    {4, Observable::lambda, 0.5, "lambda function"},
    {5, Observable::coherence, 0.1, "l1 coherence"},
    {6, Observable::coherence, 0.5, "l1 coherence"},
    {7, Observable::entropy, 0.1, "qubit-1 linear entropy"},
    {8, Observable::entropy, 0.5, "qubit-1 linear entropy"},
};

// windows in units of λt: ≥5, ≥20 and ≥100 periods of the isolated-pair concurrence (period π/2)
constexpr double windows[] = {10.0, 40.0, 200.0};
constexpr std::size_t samples_per_unit = 100;

} // namespace

std::string to_string(Observable o)
{
	switch(o) {
	case Observable::concurrence: return "concurrence";
	case Observable::lambda: return "lambda";
	case Observable::coherence: return "coherence";
	case Observable::inversion: return "inversion";
	case Observable::entropy: return "entropy";
	}
	return "?";
}

std::string to_string(OutputFormat f)
{
	return f == OutputFormat::csv ? "csv" : "json";
}

std::size_t RunConfig::resolved_event_grid() const
{
	if(event_grid) {
		return *event_grid;
	}
	return static_cast<std::size_t>(std::ceil(4000.0 * lambda * (t1 - t0))) + 1;
}

void RunConfig::validate() const
{
	if(!(lambda > 0)) {
		throw UsageError("lambda must be > 0");
	}
	if(k.has_value() == g.has_value()) {
		throw UsageError("exactly one of k and g must be given");
	}
	if(k && *k < 0) {
		throw UsageError("k must be >= 0");
	}
	if(g && *g < 0) {
		throw UsageError("g must be >= 0");
	}
	if(nbar < 0) {
		throw UsageError("nbar must be >= 0");
	}
	if(!(epsilon > 0 && epsilon < 1)) {
		throw UsageError("epsilon must lie in (0, 1)");
	}
	if(t0 < 0) {
		throw UsageError("t0 must be >= 0");
	}
	if(!(t0 < t1)) {
		throw UsageError("t0 must be smaller than t1");
	}
	if(steps < 2) {
		throw UsageError("steps must be >= 2");
	}
	if(observables.empty()) {
		throw UsageError("at least one observable must be selected");
	}
	if(event_grid && *event_grid < 2) {
		throw UsageError("event_grid must be >= 2");
	}
}

void apply_setting(RunConfig& c, const std::string& raw_key, const std::string& raw_value)
{
	std::string key = trim(raw_key);
	std::replace(key.begin(), key.end(), '-', '_');
	const std::string value = trim(raw_value);

	if(key == "preset") {
		c = preset(value);
	} else if(key == "name") {
		if(value.empty()) {
			throw UsageError("name must not be empty");
		}
		c.name = value;
	} else if(key == "lambda") {
		c.lambda = parse_double(key, value);
	} else if(key == "k") {
		c.k = parse_double(key, value);
		c.g.reset();
	} else if(key == "g") {
		c.g = parse_double(key, value);
		c.k.reset();
	} else if(key == "nbar") {
		c.nbar = parse_double(key, value);
	} else if(key == "epsilon") {
		c.epsilon = parse_double(key, value);
	} else if(key == "t0") {
		c.t0 = parse_double(key, value);
	} else if(key == "t1") {
		c.t1 = parse_double(key, value);
	} else if(key == "steps") {
		c.steps = parse_count(key, value);
	} else if(key == "observables") {
		c.observables = parse_observables(value);
	} else if(key == "events" || key == "detect_events") {
		c.detect_events = parse_bool(key, value);
	} else if(key == "event_grid") {
		c.event_grid = parse_count(key, value);
	} else if(key == "format" || key == "output_format") {
		if(value == "csv") {
			c.format = OutputFormat::csv;
		} else if(value == "json") {
			c.format = OutputFormat::json;
		} else {
			throw UsageError(fmt::format("format: '{}' is neither csv nor json", value));
		}
	} else if(key == "output" || key == "output_path") {
		c.output_path = value;
	} else if(key == "oracle_check") {
		c.oracle_check = parse_bool(key, value);
	} else {
		throw UsageError(fmt::format("unknown setting '{}'", raw_key));
	}
}

void apply_layer(RunConfig& config, const std::vector<Setting>& layer)
{
	const bool has_k = std::any_of(layer.begin(), layer.end(), [](const Setting& s) { return trim(s.first) == "k"; });
	const bool has_g = std::any_of(layer.begin(), layer.end(), [](const Setting& s) { return trim(s.first) == "g"; });
	if(has_k && has_g) {
		throw UsageError("k and g are mutually exclusive");
	}
	// a preset resets everything, so it goes first regardless of position
	for(const auto& [key, value] : layer) {
		if(trim(key) == "preset") {
			apply_setting(config, key, value);
		}
	}
	for(const auto& [key, value] : layer) {
		if(trim(key) != "preset") {
			apply_setting(config, key, value);
		}
	}
}

std::vector<Setting> parse_settings(const std::string& text, const std::string& origin)
{
	std::vector<Setting> out;
	std::stringstream ss(text);
	std::string line;
	std::size_t lineno = 0;
	while(std::getline(ss, line)) {
		++lineno;
		const auto hash = line.find('#');
		if(hash != std::string::npos) {
			line.erase(hash);
		}
		line = trim(line);
		if(line.empty()) {
			continue;
		}
		const auto eq = line.find('=');
		if(eq == std::string::npos) {
			throw UsageError(fmt::format("{}:{}: expected key=value", origin, lineno));
		}
		out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
	}
	return out;
}

std::vector<Setting> read_settings_file(const std::string& path)
{
	std::ifstream in(path);
	if(!in) {
		throw UsageError(fmt::format("cannot read config file '{}'", path));
	}
	std::stringstream buffer;
	buffer << in.rdbuf();
	return parse_settings(buffer.str(), path);
}

std::vector<Setting> parse_inline_settings(const std::string& line)
{
	std::vector<Setting> out;
	std::stringstream ss(line);
	std::string token;
	while(ss >> token) {
		const auto eq = token.find('=');
		if(eq == std::string::npos || eq == 0) {
			throw UsageError(fmt::format("expected key=value, got '{}'", token));
		}
		out.emplace_back(token.substr(0, eq), token.substr(eq + 1));
	}
	return out;
}

std::vector<PresetInfo> list_presets()
{
	std::vector<PresetInfo> out;
	for(const auto& f : figures) {
		for(int panel = 0; panel < 6; ++panel) {
			const double nbar = panel < 3 ? 1.0 : 10.0;
			const double window = windows[panel % 3];
			out.push_back({fmt::format("fig{}{}", f.figure, static_cast<char>('a' + panel)),
			               fmt::format("{}, k={}, nbar={}, lambda*t in [0, {}]", f.label, f.k, nbar, window)});
		}
	}
	return out;
}

RunConfig preset(const std::string& name)
{
	if(name.size() != 5 || name.rfind("fig", 0) != 0 || name[3] < '1' || name[3] > '8' || name[4] < 'a' || name[4] > 'f') {
		throw UsageError(fmt::format("unknown preset '{}' (see --list-presets)", name));
	}
	const auto& f = figures[name[3] - '1'];
	const int panel = name[4] - 'a';
	const double window = windows[panel % 3];

	RunConfig c;
	c.name = name;
	c.lambda = 10.0;
	c.k = f.k;
	c.g.reset();
	c.nbar = panel < 3 ? 1.0 : 10.0;
	c.t0 = 0.0;
	c.t1 = window / c.lambda;
	c.steps = static_cast<std::size_t>(window) * samples_per_unit + 1;
	c.observables = {f.observable};
	c.detect_events = f.observable == Observable::concurrence || f.observable == Observable::lambda;
	return c;
}

std::vector<std::string> preset_group(const std::string& name)
{
	std::vector<std::string> out;
	if(name == "figures") {
		for(const auto& f : figures) {
			out.push_back(fmt::format("fig{}a", f.figure));
		}
	} else if(name == "all") {
		for(const auto& p : list_presets()) {
			out.push_back(p.name);
		}
	} else {
		throw UsageError(fmt::format("unknown preset group '{}'", name));
	}
	return out;
}

} // namespace jcpair::cli
