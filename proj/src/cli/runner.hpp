#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <jcpair/events.hpp>
#include <jcpair/observables.hpp>

#include "config.hpp"

namespace jcpair::cli
{

enum ExitCode : int
{
	exit_ok = 0,
	exit_internal = 1,
	exit_usage = 2,
	exit_oracle = 3,
	exit_io = 4,
};

/// Deviation above which --oracle-check fails the run.
inline constexpr double oracle_failure_threshold = 1e-7;

struct RunResult
{
	RunConfig config;
	std::vector<MetricSample<double>> samples;
	std::vector<EsdInterval<double>> events;
	std::optional<double> oracle_deviation; ///< max entrywise |ρ_analytic − ρ_oracle| over the grid
	std::size_t nmax = 0;
};

/// Uniform grid t0..t1 with `steps` points; the last point is exactly t1.
std::vector<double> time_grid(const RunConfig& config);

/// Evaluates every sample (and events / oracle check when requested). Pure; throws on invalid config.
RunResult execute(const RunConfig& config, unsigned jobs = 1);

/// Locale-independent, 17 significant digits.
std::string format_real(double v);

std::string render_csv(const RunResult& result);
std::string render_json(const RunResult& result);
std::string render(const RunResult& result);

/// Writes through a temporary sibling file and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

/// Full `run` pipeline: execute, render, write. Returns the process exit code.
int run(const RunConfig& config, unsigned jobs, std::ostream& out, std::ostream& err);

struct SweepRow
{
	std::string name;
	bool ok = false;
	int exit_code = exit_ok;
	std::string error;
	double max_concurrence = 0;
	double dwell_fraction = 0;
	double final_entropy = 0;
};

/// Runs each config (up to `jobs` at once) and summarizes them in input order.
/// A failing run is reported in its row and does not stop the others. When
/// `run_dir` is non-empty each run's output is written there as <name>.<format>.
std::vector<SweepRow> sweep(const std::vector<RunConfig>& configs, unsigned jobs, const std::string& run_dir);

std::string render_summary(const std::vector<SweepRow>& rows);

/// Worst exit code across the rows (0 when empty).
int sweep_exit_code(const std::vector<SweepRow>& rows);

} // namespace jcpair::cli
