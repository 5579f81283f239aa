#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include <jcpair/model.hpp>

using namespace jcpair;

TEST_CASE("model parameters")
{
	const auto p = ModelParams<>::from_ratio(10.0, 0.5);
	CHECK(p.g() == doctest::Approx(5.0));
	CHECK(p.k() == p.g() / p.lambda());

	const ModelParams<> baseline(10.0, 0.0);
	CHECK(baseline.k() == 0.0);

	CHECK_THROWS_AS(ModelParams<>(0.0, 1.0), DomainError);
	CHECK_THROWS_AS(ModelParams<>(-1.0, 1.0), DomainError);
	CHECK_THROWS_AS(ModelParams<>(1.0, -0.1), DomainError);
	CHECK_THROWS_AS(ModelParams<>(1.0, 0.1, 0.0), DomainError);
	CHECK_THROWS_AS(ModelParams<>(std::nan(""), 0.1), DomainError);
}

TEST_CASE("vacuum field")
{
	const auto f = build_thermal(0.0, 1e-12);
	CHECK(f.nmax() == 0);
	REQUIRE(f.weights().size() == 1);
	CHECK(f.weights()[0] == 1.0);
	CHECK(f.tail() == 0.0);
	CHECK(f.weight(1) == 0.0);
	CHECK(f.weight(-1) == 0.0);
}

TEST_CASE("unit mean photon number halves each weight")
{
	const auto f = build_thermal(1.0, 1e-6);
	CHECK(f.weights()[0] == 0.5);
	CHECK(f.weights()[1] == 0.25);
	CHECK(f.weights()[2] == 0.125);
}

TEST_CASE("truncation index is minimal for nbar = 10")
{
	const auto f = build_thermal(10.0, 1e-10);
	CHECK(f.nmax() == 241);

	// brute-force: accumulate weights until the missing mass drops below epsilon
	double mass = 0.0;
	std::size_t n = 0;
	for(;; ++n) {
		mass += std::pow(10.0, double(n)) / std::pow(11.0, double(n + 1));
		if(1.0 - mass <= 1e-10) {
			break;
		}
	}
	CHECK(n == 241);
	const double stored = std::accumulate(f.weights().begin(), f.weights().end(), 0.0);
	CHECK(1.0 - stored <= 1e-10 + 1e-14);
	CHECK(f.tail() <= 1e-10);
	CHECK(std::pow(10.0 / 11.0, 241.0) > 1e-10);
}

TEST_CASE("thermal invariants over a parameter range")
{
	for(double nbar : {0.01, 0.5, 1.0, 3.7, 10.0, 50.0}) {
		for(double eps : {1e-3, 1e-8, 1e-12}) {
			const auto f = build_thermal(nbar, eps);
			CAPTURE(nbar);
			CAPTURE(eps);
			CHECK(f.tail() <= eps);
			if(f.nmax() > 0) {
				CHECK(ThermalField<>::with_nmax(nbar, f.nmax() - 1).tail() > eps);
			}
			for(std::size_t n = 0; n < f.weights().size(); ++n) {
				CHECK(f.weights()[n] > 0.0);
				CHECK(f.weights()[n] <= 1.0);
				if(n > 0) {
					CHECK(f.weights()[n] < f.weights()[n - 1]);
				}
			}
		}
	}
}

TEST_CASE("explicit truncation")
{
	const auto f = ThermalField<>::with_nmax(1.0, 9);
	CHECK(f.nmax() == 9);
	CHECK(f.epsilon() == doctest::Approx(std::pow(0.5, 10)));
	CHECK(f.weight(10) == doctest::Approx(std::pow(0.5, 11)));
}

TEST_CASE("thermal domain errors")
{
	CHECK_THROWS_AS(build_thermal(-1.0, 1e-6), DomainError);
	CHECK_THROWS_AS(build_thermal(1.0, 0.0), DomainError);
	CHECK_THROWS_AS(build_thermal(1.0, 1.0), DomainError);
	CHECK_THROWS_AS(build_thermal(1.0, -1e-3), DomainError);
	CHECK_THROWS_AS(build_thermal(std::numeric_limits<double>::infinity(), 1e-6), DomainError);
}
