// Command-line front end: single runs, preset listing and parameter sweeps.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <jcpair/jcpair.hpp>

#include "cli/config.hpp"
#include "cli/runner.hpp"

using namespace jcpair::cli;

namespace
{

struct RunFlags
{
	std::optional<std::string> preset, config_file, name, lambda, k, g, nbar, epsilon, t0, t1, steps, observables,
	    event_grid, format, output;
	bool events = false;
	bool oracle_check = false;
};

void add_run_flags(CLI::App& app, RunFlags& f)
{
	app.add_option("--preset", f.preset, "Named figure regime (see --list-presets)");
	app.add_option("--config", f.config_file, "key=value file; flags override its entries");
	app.add_option("--name", f.name, "Run name");
	app.add_option("--lambda", f.lambda, "Qubit-qubit coupling (default 10)");
	app.add_option("--k", f.k, "Field coupling ratio g/lambda (default 0.1)");
	app.add_option("--g", f.g, "Absolute field coupling (excludes --k)");
	app.add_option("--nbar", f.nbar, "Mean thermal photon number (default 1)");
	app.add_option("--epsilon", f.epsilon, "Thermal truncation tolerance (default 1e-10)");
	app.add_option("--t0", f.t0, "Window start time");
	app.add_option("--t1", f.t1, "Window end time");
	app.add_option("--steps", f.steps, "Number of time samples (>= 2)");
	app.add_option("--observables", f.observables,
	               "Comma list of concurrence,lambda,coherence,inversion,entropy");
	app.add_flag("--events", f.events, "Detect sudden-death intervals");
	app.add_option("--event-grid", f.event_grid, "Grid points for the event scan (default 4000 per unit lambda*t)");
	app.add_option("--format", f.format, "csv or json");
	app.add_option("--output", f.output, "Output path (default stdout)");
	app.add_flag("--oracle-check", f.oracle_check, "Compare against the dense oracle (exit 3 above 1e-7)");
}

RunConfig resolve(const RunFlags& f)
{
	RunConfig config;
	if(f.preset) {
		config = preset(*f.preset);
	}
	if(f.config_file) {
		apply_layer(config, read_settings_file(*f.config_file));
	}
	std::vector<Setting> flags;
	auto push = [&flags](const char* key, const std::optional<std::string>& v) {
		if(v) {
			flags.emplace_back(key, *v);
		}
	};
	push("name", f.name);
	push("lambda", f.lambda);
	push("k", f.k);
	push("g", f.g);
	push("nbar", f.nbar);
	push("epsilon", f.epsilon);
	push("t0", f.t0);
	push("t1", f.t1);
	push("steps", f.steps);
	push("observables", f.observables);
	push("event_grid", f.event_grid);
	push("format", f.format);
	push("output", f.output);
	if(f.events) {
		flags.emplace_back("events", "true");
	}
	if(f.oracle_check) {
		flags.emplace_back("oracle_check", "true");
	}
	apply_layer(config, flags);
	return config;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Exact dynamics of two coupled qubits with one qubit driven by a thermal field mode"};
	app.set_version_flag("--version", std::string("jcpair ") + jcpair::version);
	bool list = false;
	unsigned jobs = 1;
	app.add_flag("--list-presets", list, "List named presets and exit");
	app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));

	RunFlags run_flags;
	auto* run_cmd = app.add_subcommand("run", "Evaluate observables over a time window");
	add_run_flags(*run_cmd, run_flags);
	run_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));

	std::vector<std::string> sweep_presets;
	std::optional<std::string> sweep_group, sweep_file, sweep_output;
	std::string run_dir;
	auto* sweep_cmd = app.add_subcommand("sweep", "Run several configurations and print one summary row each");
	sweep_cmd->add_option("--presets", sweep_presets, "Preset names")->delimiter(',');
	sweep_cmd->add_option("--group", sweep_group, "Preset group: figures or all");
	sweep_cmd->add_option("--file", sweep_file, "One run per line as key=value tokens");
	sweep_cmd->add_option("--output", sweep_output, "Summary CSV path (default stdout)");
	sweep_cmd->add_option("--run-dir", run_dir, "Directory for per-run outputs");
	sweep_cmd->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::Range(1u, 1024u));

	try {
		app.parse(argc, argv);
	} catch(const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? exit_ok : exit_usage;
	}

	if(list) {
		for(const auto& p : list_presets()) {
			std::cout << p.name << "  " << p.description << '\n';
		}
		return exit_ok;
	}

	if(*run_cmd) {
		RunConfig config;
		try {
			config = resolve(run_flags);
		} catch(const UsageError& e) {
			std::cerr << "error: " << e.what() << '\n';
			return exit_usage;
		}
		return run(config, jobs, std::cout, std::cerr);
	}

	if(*sweep_cmd) {
		std::vector<RunConfig> configs;
		try {
			std::vector<std::string> names = sweep_presets;
			if(sweep_group) {
				const auto group = preset_group(*sweep_group);
				names.insert(names.end(), group.begin(), group.end());
			}
			for(const auto& name : names) {
				configs.push_back(preset(name));
			}
		} catch(const UsageError& e) {
			std::cerr << "error: " << e.what() << '\n';
			return exit_usage;
		}

		// lines that fail to parse become failed rows in their input position
		std::vector<std::optional<SweepRow>> line_errors(configs.size());
		if(sweep_file) {
			std::ifstream in(*sweep_file);
			if(!in) {
				std::cerr << "error: cannot read sweep file '" << *sweep_file << "'\n";
				return exit_usage;
			}
			std::string line;
			std::size_t lineno = 0;
			while(std::getline(in, line)) {
				++lineno;
				const auto hash = line.find('#');
				if(hash != std::string::npos) {
					line.erase(hash);
				}
				if(line.find_first_not_of(" \t\r") == std::string::npos) {
					continue;
				}
				RunConfig config;
				config.name = "line" + std::to_string(lineno);
				try {
					apply_layer(config, parse_inline_settings(line));
					config.validate();
					configs.push_back(config);
					line_errors.emplace_back();
				} catch(const UsageError& e) {
					SweepRow row;
					row.name = config.name;
					row.exit_code = exit_usage;
					row.error = e.what();
					configs.push_back(config);
					line_errors.emplace_back(row);
				}
			}
		}

		std::vector<RunConfig> runnable;
		for(std::size_t i = 0; i < configs.size(); ++i) {
			if(!line_errors[i]) {
				runnable.push_back(configs[i]);
			}
		}
		const auto finished = sweep(runnable, jobs, run_dir);
		std::vector<SweepRow> rows;
		std::size_t next = 0;
		for(std::size_t i = 0; i < configs.size(); ++i) {
			rows.push_back(line_errors[i] ? *line_errors[i] : finished[next++]);
		}

		const std::string summary = render_summary(rows);
		try {
			if(sweep_output) {
				write_atomic(*sweep_output, summary);
			} else {
				std::cout << summary;
			}
		} catch(const IoError& e) {
			std::cerr << "error: " << e.what() << '\n';
			return exit_io;
		}
		return sweep_exit_code(rows);
	}

	std::cerr << app.help();
	return exit_usage;
}
