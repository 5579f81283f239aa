#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include <jcpair/jcpair.hpp>

namespace jcpair::cli
{

namespace
{

ModelParams<double> model_of(const RunConfig& c)
{
	return c.g ? ModelParams<double>(c.lambda, *c.g) : ModelParams<double>::from_ratio(c.lambda, *c.k);
}

double value_of(const MetricSample<double>& s, Observable o)
{
	switch(o) {
	case Observable::concurrence: return s.concurrence;
	case Observable::lambda: return s.lambda_fn;
	case Observable::coherence: return s.coherence_l1;
	case Observable::inversion: return s.inversion;
	case Observable::entropy: return s.linear_entropy;
	}
	return 0;
}

std::string csv_field(const std::string& s)
{
	if(s.find_first_of(",\"\n\r") == std::string::npos) {
		return s;
	}
	std::string out = "\"";
	for(char c : s) {
		if(c == '"') {
			out += '"';
		}
		out += c;
	}
	return out + "\"";
}

double oracle_deviation(const ThermalEvolution<double>& evo, const std::vector<double>& grid, unsigned jobs)
{
	const auto h = oracle::build_hamiltonians(evo.params(), oracle::fock_cutoff_for(evo.field()));
	const oracle::Evolver<double> evolver(h, evo.field());
	const auto deviations = parallel_map(grid.size(), jobs, [&](std::size_t i) {
		const Matrix4c<double> reference = oracle::reduce_to_qubits(evolver.evolve(grid[i]));
		return (reference - evo.state(grid[i]).matrix()).cwiseAbs().maxCoeff();
	});
	return deviations.empty() ? 0.0 : *std::max_element(deviations.begin(), deviations.end());
}

} // namespace

std::vector<double> time_grid(const RunConfig& c)
{
	std::vector<double> grid(c.steps);
	const double step = (c.t1 - c.t0) / static_cast<double>(c.steps - 1);
	for(std::size_t i = 0; i < c.steps; ++i) {
		grid[i] = c.t0 + step * static_cast<double>(i);
	}
	grid.back() = c.t1;
	return grid;
}

RunResult execute(const RunConfig& config, unsigned jobs)
{
	config.validate();
	RunResult result;
	result.config = config;

	const ThermalEvolution<double> evo(model_of(config), build_thermal(config.nbar, config.epsilon));
	result.nmax = evo.field().nmax();
	const auto grid = time_grid(config);
	result.samples = parallel_map(grid.size(), jobs, [&](std::size_t i) { return sample_metrics(evo.state(grid[i]), grid[i]); });

	if(config.detect_events) {
		EsdScanOptions<double> opts;
		opts.jobs = jobs;
		result.events = scan_esd(evo, config.t0, config.t1, config.resolved_event_grid(), opts);
	}
	if(config.oracle_check) {
		result.oracle_deviation = oracle_deviation(evo, grid, jobs);
	}
	return result;
}

std::string format_real(double v)
{
	return fmt::format("{:.17g}", v);
}

std::string render_csv(const RunResult& r)
{
	const auto& c = r.config;
	std::string out = "t,lambda_t";
	for(auto o : c.observables) {
		out += ',';
		out += to_string(o);
	}
	out += '\n';
	for(const auto& s : r.samples) {
		out += format_real(s.t);
		out += ',';
		out += format_real(c.lambda * s.t);
		for(auto o : c.observables) {
			out += ',';
			out += format_real(value_of(s, o));
		}
		out += '\n';
	}
	// trailing reports are '#' comment lines so the data table stays a plain CSV
	if(c.detect_events) {
		out += fmt::format("# events,{}\n", r.events.size());
		out += fmt::format("# dwell_fraction,{}\n", format_real(dwell_fraction(r.events, c.t0, c.t1)));
		out += "# index,t_death,t_birth,lambda_t_death,lambda_t_birth,min_lambda,open_start,open_end,refined\n";
		for(std::size_t i = 0; i < r.events.size(); ++i) {
			const auto& e = r.events[i];
			out += fmt::format("# {},{},{},{},{},{},{},{},{}\n", i, format_real(e.t_death), format_real(e.t_birth),
			                   format_real(c.lambda * e.t_death), format_real(c.lambda * e.t_birth),
			                   format_real(e.min_lambda), e.open_start ? 1 : 0, e.open_end ? 1 : 0, e.refined ? 1 : 0);
		}
	}
	if(r.oracle_deviation) {
		out += fmt::format("# oracle_max_deviation,{}\n", format_real(*r.oracle_deviation));
	}
	return out;
}

std::string render_json(const RunResult& r)
{
	using json = nlohmann::ordered_json;
	const auto& c = r.config;

	json config;
	config["name"] = c.name;
	config["lambda"] = c.lambda;
	config["coupling_input"] = c.g ? "g" : "k";
	config["k"] = c.resolved_k();
	config["g"] = c.resolved_g();
	config["nbar"] = c.nbar;
	config["epsilon"] = c.epsilon;
	config["nmax"] = r.nmax;
	config["t0"] = c.t0;
	config["t1"] = c.t1;
	config["steps"] = c.steps;
	json observables = json::array();
	for(auto o : c.observables) {
		observables.push_back(to_string(o));
	}
	config["observables"] = observables;
	config["detect_events"] = c.detect_events;
	config["event_grid"] = c.resolved_event_grid();
	config["output_format"] = to_string(c.format);
	config["output_path"] = c.output_path;
	config["oracle_check"] = c.oracle_check;

	json samples = json::array();
	for(const auto& s : r.samples) {
		json row;
		row["t"] = s.t;
		row["lambda_t"] = c.lambda * s.t;
		for(auto o : c.observables) {
			row[to_string(o)] = value_of(s, o);
		}
		samples.push_back(std::move(row));
	}

	json events = json::array();
	for(const auto& e : r.events) {
		json row;
		row["t_death"] = e.t_death;
		row["t_birth"] = e.t_birth;
		row["lambda_t_death"] = c.lambda * e.t_death;
		row["lambda_t_birth"] = c.lambda * e.t_birth;
		row["min_lambda"] = e.min_lambda;
		row["open_start"] = e.open_start;
		row["open_end"] = e.open_end;
		row["refined"] = e.refined;
		events.push_back(std::move(row));
	}

	json doc;
	doc["version"] = jcpair::version;
	doc["config"] = std::move(config);
	doc["samples"] = std::move(samples);
	doc["events"] = std::move(events);
	if(c.detect_events) {
		doc["dwell_fraction"] = dwell_fraction(r.events, c.t0, c.t1);
	}
	if(r.oracle_deviation) {
		doc["oracle"] = {{"max_deviation", *r.oracle_deviation},
		                 {"threshold", oracle_failure_threshold},
		                 {"passed", *r.oracle_deviation <= oracle_failure_threshold}};
	}
	return doc.dump(2) + "\n";
}

std::string render(const RunResult& result)
{
	return result.config.format == OutputFormat::csv ? render_csv(result) : render_json(result);
}

void write_atomic(const std::string& path, const std::string& content)
{
	namespace fs = std::filesystem;
	const fs::path target(path);
	fs::path tmp = target;
	tmp += ".tmp";
	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
		if(!out) {
			throw IoError(fmt::format("cannot open '{}' for writing", tmp.string()));
		}
		out.write(content.data(), static_cast<std::streamsize>(content.size()));
		out.flush();
		if(!out) {
			throw IoError(fmt::format("write to '{}' failed", tmp.string()));
		}
	}
	std::error_code ec;
	fs::rename(tmp, target, ec);
	if(ec) {
		fs::remove(tmp, ec);
		throw IoError(fmt::format("cannot move output into '{}'", path));
	}
}

int run(const RunConfig& config, unsigned jobs, std::ostream& out, std::ostream& err)
{
	RunResult result;
	try {
		result = execute(config, jobs);
	} catch(const UsageError& e) {
		err << "error: " << e.what() << '\n';
		return exit_usage;
	} catch(const DomainError& e) {
		err << "error: " << e.what() << '\n';
		return exit_usage;
	} catch(const std::exception& e) {
		err << "internal error: " << e.what() << '\n';
		return exit_internal;
	}

	const std::string text = render(result);
	try {
		if(config.output_path.empty()) {
			out << text;
			out.flush();
			if(!out) {
				throw IoError("write to standard output failed");
			}
		} else {
			write_atomic(config.output_path, text);
		}
	} catch(const IoError& e) {
		err << "error: " << e.what() << '\n';
		return exit_io;
	}

	if(result.oracle_deviation) {
		err << "oracle check: max |rho_analytic - rho_oracle| = " << format_real(*result.oracle_deviation) << '\n';
		if(*result.oracle_deviation > oracle_failure_threshold) {
			err << "error: oracle deviation exceeds " << format_real(oracle_failure_threshold) << '\n';
			return exit_oracle;
		}
	}
	return exit_ok;
}

std::vector<SweepRow> sweep(const std::vector<RunConfig>& configs, unsigned jobs, const std::string& run_dir)
{
	return parallel_map(configs.size(), jobs, [&](std::size_t i) {
		RunConfig config = configs[i];
		SweepRow row;
		row.name = config.name;
		try {
			if(!run_dir.empty()) {
				config.output_path =
				    (std::filesystem::path(run_dir) / (config.name + "." + to_string(config.format))).string();
			}
			const RunResult result = execute(config, 1);
			if(!config.output_path.empty()) {
				write_atomic(config.output_path, render(result));
			}
			auto events = result.events;
			if(!config.detect_events) {
				const ThermalEvolution<double> evo(model_of(config), build_thermal(config.nbar, config.epsilon));
				events = scan_esd(evo, config.t0, config.t1, config.resolved_event_grid());
			}
			for(const auto& s : result.samples) {
				row.max_concurrence = std::max(row.max_concurrence, s.concurrence);
			}
			row.dwell_fraction = dwell_fraction(events, config.t0, config.t1);
			row.final_entropy = result.samples.back().linear_entropy;
			row.ok = true;
			if(result.oracle_deviation && *result.oracle_deviation > oracle_failure_threshold) {
				row.ok = false;
				row.exit_code = exit_oracle;
				row.error = "oracle deviation " + format_real(*result.oracle_deviation);
			}
		} catch(const UsageError& e) {
			row.exit_code = exit_usage;
			row.error = e.what();
		} catch(const DomainError& e) {
			row.exit_code = exit_usage;
			row.error = e.what();
		} catch(const IoError& e) {
			row.exit_code = exit_io;
			row.error = e.what();
		} catch(const std::exception& e) {
			row.exit_code = exit_internal;
			row.error = e.what();
		}
		return row;
	});
}

std::string render_summary(const std::vector<SweepRow>& rows)
{
	std::string out = "name,status,exit_code,max_concurrence,dwell_fraction,final_entropy,error\n";
	for(const auto& r : rows) {
		const bool numbers = r.ok || r.exit_code == exit_oracle;
		out += fmt::format("{},{},{},{},{},{},{}\n", csv_field(r.name), r.ok ? "ok" : "failed", r.exit_code,
		                   numbers ? format_real(r.max_concurrence) : "", numbers ? format_real(r.dwell_fraction) : "",
		                   numbers ? format_real(r.final_entropy) : "", csv_field(r.error));
	}
	return out;
}

int sweep_exit_code(const std::vector<SweepRow>& rows)
{
	int code = exit_ok;
	for(const auto& r : rows) {
		code = std::max(code, r.exit_code);
	}
	return code;
}

} // namespace jcpair::cli
