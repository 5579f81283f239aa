#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cli/config.hpp"
#include "cli/runner.hpp"

using namespace jcpair::cli;

TEST_CASE("settings parse with comments and blank lines")
{
	const auto s = parse_settings("# header\nlambda = 5\n\nk=0.3  # trailing\n", "mem");
	REQUIRE(s.size() == 2);
	CHECK(s[0].first == "lambda");
	CHECK(s[0].second == "5");
	CHECK(s[1].second == "0.3");
	CHECK_THROWS_AS(parse_settings("lambda 5\n", "mem"), UsageError);
}

TEST_CASE("layers override in order and k/g exclude each other")
{
	RunConfig c = preset("fig2b");
	apply_layer(c, parse_settings("nbar = 3\ng = 2\n", "file"));
	CHECK(c.nbar == 3);
	CHECK(c.g.has_value());
	CHECK_FALSE(c.k.has_value());
	CHECK(c.resolved_k() == doctest::Approx(0.2));

	apply_layer(c, {{"k", "0.4"}});
	CHECK_FALSE(c.g.has_value());
	CHECK(c.resolved_g() == doctest::Approx(4.0));

	CHECK_THROWS_AS(apply_layer(c, {{"k", "0.1"}, {"g", "1"}}), UsageError);
}

TEST_CASE("preset inside a layer applies before other keys")
{
	RunConfig c;
	apply_layer(c, {{"nbar", "7"}, {"preset", "fig3a"}});
	CHECK(c.name == "fig3a");
	CHECK(c.nbar == 7);
}

TEST_CASE("invalid values are usage errors")
{
	RunConfig c;
	CHECK_THROWS_AS(apply_setting(c, "lambda", "abc"), UsageError);
	CHECK_THROWS_AS(apply_setting(c, "steps", "-3"), UsageError);
	CHECK_THROWS_AS(apply_setting(c, "observables", "concurrence,spin"), UsageError);
	CHECK_THROWS_AS(apply_setting(c, "format", "xml"), UsageError);
	CHECK_THROWS_AS(apply_setting(c, "bogus", "1"), UsageError);
	CHECK_THROWS_AS(preset("fig9a"), UsageError);

	RunConfig bad;
	bad.t1 = bad.t0;
	CHECK_THROWS_AS(bad.validate(), UsageError);
	bad = RunConfig{};
	bad.nbar = -1;
	CHECK_THROWS_AS(bad.validate(), UsageError);
	bad = RunConfig{};
	bad.steps = 1;
	CHECK_THROWS_AS(bad.validate(), UsageError);
	bad = RunConfig{};
	bad.epsilon = 0;
	CHECK_THROWS_AS(bad.validate(), UsageError);
}

TEST_CASE("dash and underscore keys are equivalent")
{
	RunConfig c;
	apply_setting(c, "event-grid", "99");
	apply_setting(c, "oracle-check", "yes");
	CHECK(c.resolved_event_grid() == 99);
	CHECK(c.oracle_check);
}

TEST_CASE("presets cover eight figures with six panels")
{
	const auto all = list_presets();
	CHECK(all.size() == 48);
	CHECK(preset_group("all").size() == 48);
	const auto figs = preset_group("figures");
	REQUIRE(figs.size() == 8);
	CHECK(figs.front() == "fig1a");
	CHECK(figs.back() == "fig8a");
	CHECK_THROWS_AS(preset_group("nope"), UsageError);

	for(const auto& p : all) {
		const RunConfig c = preset(p.name);
		CHECK_NOTHROW(c.validate());
		CHECK(c.observables.size() == 1);
	}
	const RunConfig f4e = preset("fig4e");
	CHECK(*f4e.k == 0.5);
	CHECK(f4e.nbar == 10);
	CHECK(f4e.lambda * f4e.t1 == doctest::Approx(40));
	CHECK(f4e.detect_events);
	CHECK(f4e.observables.front() == Observable::lambda);
	CHECK_FALSE(preset("fig7a").detect_events);
}

TEST_CASE("time grid ends exactly at t1")
{
	RunConfig c;
	c.t0 = 0.1;
	c.t1 = 0.7;
	c.steps = 7;
	const auto g = time_grid(c);
	REQUIRE(g.size() == 7);
	CHECK(g.front() == 0.1);
	CHECK(g.back() == 0.7);
	CHECK(g[3] == doctest::Approx(0.4));
}

TEST_CASE("decoupled vacuum run reproduces the isolated pair")
{
	RunConfig c;
	c.g = 0.0;
	c.k.reset();
	c.nbar = 0;
	c.t1 = 1.0;
	c.steps = 501;
	c.observables = {Observable::concurrence, Observable::lambda};
	const auto r = execute(c);
	double worst = 0;
	for(const auto& s : r.samples) {
		worst = std::max(worst, std::abs(s.concurrence - std::abs(std::sin(2 * c.lambda * s.t))));
	}
	CHECK(worst < 1e-12);
}

TEST_CASE("weak coupling at nbar=10 reports exact zeros and events")
{
	RunConfig c = preset("fig1d");
	c.steps = 401;
	const auto r = execute(c);
	std::size_t zeros = 0;
	for(const auto& s : r.samples) {
		CHECK(s.concurrence >= 0);
		if(s.concurrence == 0.0) {
			++zeros;
		}
	}
	CHECK(zeros > 0);
	CHECK_FALSE(r.events.empty());
	for(const auto& e : r.events) {
		CHECK(e.t_birth > e.t_death);
		CHECK(e.min_lambda < 0);
	}
}

TEST_CASE("oracle check passes on a short window")
{
	RunConfig c;
	c.k = 0.5;
	c.nbar = 1;
	c.t1 = 0.5;
	c.steps = 200;
	c.oracle_check = true;
	const auto r = execute(c);
	REQUIRE(r.oracle_deviation.has_value());
	CHECK(*r.oracle_deviation < 1e-10);
}

TEST_CASE("csv output is deterministic and carries 17 digits")
{
	RunConfig c;
	c.t1 = 0.2;
	c.steps = 11;
	c.detect_events = true;
	const std::string a = render(execute(c));
	const std::string b = render(execute(c, 2));
	CHECK(a == b);
	CHECK(a.rfind("t,lambda_t,concurrence,lambda,coherence,inversion,entropy\n", 0) == 0);
	CHECK(a.find("# events,") != std::string::npos);
	CHECK(format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("json output embeds the resolved config")
{
	RunConfig c;
	c.g = 2.0;
	c.k.reset();
	c.t1 = 0.1;
	c.steps = 5;
	c.format = OutputFormat::json;
	c.observables = {Observable::entropy};
	const auto doc = nlohmann::json::parse(render(execute(c)));
	CHECK(doc["config"]["coupling_input"] == "g");
	CHECK(doc["config"]["k"].get<double>() == doctest::Approx(0.2));
	CHECK(doc["config"]["nmax"].get<std::size_t>() > 0);
	CHECK(doc["samples"].size() == 5);
	CHECK(doc["samples"][0].contains("entropy"));
	CHECK_FALSE(doc["samples"][0].contains("concurrence"));
}

TEST_CASE("run maps failures to exit codes")
{
	std::ostringstream out, err;
	RunConfig bad;
	bad.steps = 1;
	CHECK(run(bad, 1, out, err) == exit_usage);

	RunConfig c;
	c.t1 = 0.05;
	c.steps = 3;
	c.output_path = "/nonexistent-dir/x/out.csv";
	CHECK(run(c, 1, out, err) == exit_io);

	const auto tmp = std::filesystem::temp_directory_path() / "jcpair_test_cli_out.csv";
	c.output_path = tmp.string();
	CHECK(run(c, 1, out, err) == exit_ok);
	CHECK(std::filesystem::exists(tmp));
	CHECK_FALSE(std::filesystem::exists(tmp.string() + ".tmp"));
	std::filesystem::remove(tmp);
}

TEST_CASE("sweep isolates failing rows")
{
	RunConfig good;
	good.name = "good";
	good.t1 = 0.1;
	good.steps = 11;
	RunConfig bad = good;
	bad.name = "bad";
	bad.nbar = -2;
	const auto rows = sweep({good, bad, good}, 2, "");
	REQUIRE(rows.size() == 3);
	CHECK(rows[0].ok);
	CHECK_FALSE(rows[1].ok);
	CHECK(rows[1].exit_code == exit_usage);
	CHECK(rows[2].ok);
	CHECK(rows[0].max_concurrence == rows[2].max_concurrence);
	CHECK(sweep_exit_code(rows) == exit_usage);
	const auto summary = render_summary(rows);
	CHECK(summary.find("bad,failed,2") != std::string::npos);

	const auto empty = sweep({}, 1, "");
	CHECK(empty.empty());
	CHECK(sweep_exit_code(empty) == exit_ok);
	CHECK(render_summary(empty) == "name,status,exit_code,max_concurrence,dwell_fraction,final_entropy,error\n");
}
