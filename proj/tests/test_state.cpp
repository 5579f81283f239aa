#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <jcpair/state.hpp>

#include "test_support.hpp"

using namespace jcpair;

TEST_CASE("initial state is |e1 g2>")
{
	for(double nbar : {0.0, 1.0, 10.0}) {
		const auto s = two_qubit_state(ModelParams<>::from_ratio(10.0, 0.5), build_thermal(nbar, 1e-10), 0.0);
		CHECK(s.rho11() == 0.0);
		CHECK(s.rho22() == doctest::Approx(1.0).epsilon(1e-10));
		CHECK(s.rho33() == 0.0);
		CHECK(s.rho44() < 1e-30);
		CHECK(std::abs(s.rho23()) == 0.0);
	}
}

TEST_CASE("isolated pair stays pure")
{
	const ModelParams<> p(10.0, 0.0);
	const auto field = build_thermal(2.0, 1e-10);
	for(double t : {0.01, 0.1, 0.37, 1.9}) {
		const auto s = two_qubit_state(p, field, t);
		const double c = std::cos(10.0 * t), sn = std::sin(10.0 * t);
		const double mass = 1.0 - field.tail();
		CHECK(s.rho22() == doctest::Approx(mass * c * c).epsilon(1e-12));
		CHECK(s.rho33() == doctest::Approx(mass * sn * sn).epsilon(1e-12));
		CHECK(std::abs(s.rho23() - mass * std::complex<double>(0, c * sn)) < 1e-12);
		CHECK(s.rho11() == 0.0);
		CHECK(s.rho44() == 0.0);
	}
	const auto vac = build_thermal(0.0, 1e-10);
	const auto s = two_qubit_state(p, vac, 0.21);
	const Matrix4c<double> rho = s.matrix();
	CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("frozen tripartite reference, k = 0.1, nbar = 1, t = 2")
{
	// reference from a dense expm of the full Hamiltonian with 41 Fock levels, then Tr_field
	const auto s = two_qubit_state(ModelParams<>::from_ratio(10.0, 0.1), build_thermal(1.0, 1e-10), 2.0);
	CHECK(std::abs(s.rho11() - 0.021925375043903031) < 1e-8);
	CHECK(std::abs(s.rho22() - 0.077485373074177619) < 1e-8);
	CHECK(std::abs(s.rho33() - 0.88613228257064347) < 1e-8);
	CHECK(std::abs(s.rho44() - 0.014456969310823711) < 1e-8);
	CHECK(std::abs(s.rho23() - std::complex<double>(0, 0.14780605885727666)) < 1e-8);
}

TEST_CASE("state invariants over random parameters")
{
	auto rng = testing::seeded_rng(11);
	std::uniform_real_distribution<double> kd(0.0, 1.0), nd(0.0, 12.0), td(0.0, 5.0);
	for(int trial = 0; trial < 300; ++trial) {
		const auto field = build_thermal(nd(rng), 1e-10);
		const auto s = two_qubit_state(ModelParams<>::from_ratio(10.0, kd(rng)), field, td(rng));
		CHECK(s.trace() <= 1.0 + 1e-12);
		CHECK(s.trace() >= 1.0 - field.epsilon() - 1e-12);
		CHECK(std::norm(s.rho23()) <= s.rho22() * s.rho33() + 1e-10);
		for(double p : {s.rho11(), s.rho22(), s.rho33(), s.rho44()}) {
			CHECK(p >= 0.0);
		}
	}
}

TEST_CASE("evolution object agrees with the free function")
{
	const auto p = ModelParams<>::from_ratio(10.0, 0.5);
	const auto field = build_thermal(3.0, 1e-9);
	const ThermalEvolution<> evo(p, field);
	for(double t : {0.0, 0.4, 3.3}) {
		const auto a = evo.state(t);
		const auto b = two_qubit_state(p, field, t);
		CHECK(a.rho11() == b.rho11());
		CHECK(a.rho23() == b.rho23());
	}
}

TEST_CASE("X-state validation")
{
	CHECK_NOTHROW(TwoQubitState<>(0.0, 0.5, 0.5, -1e-13, {0, 0.5}));
	CHECK(TwoQubitState<>(0.0, 0.5, 0.5, -1e-13, {0, 0.5}).rho44() == 0.0);
	CHECK_THROWS_AS(TwoQubitState<>(-1e-6, 0.5, 0.5, 0.0, {0, 0}), NumericalError);
	CHECK_THROWS_AS(TwoQubitState<>(0.0, 0.5, 0.5, 0.0, {0, 0.6}), NumericalError);

	Matrix4c<double> m = TwoQubitState<>(0.1, 0.4, 0.4, 0.1, {0.1, 0.2}).matrix();
	CHECK_NOTHROW(TwoQubitState<>::from_matrix(m));
	m(0, 3) = 1e-6;
	CHECK_THROWS_AS(TwoQubitState<>::from_matrix(m), StructuralError);
}
