#pragma once

// Independent reference computations shared by the unit tests. None of these
// go through the analytic propagator formulas.

#include <complex>
#include <cstddef>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace jcpair::testing
{

/// 4×4 interaction Hamiltonian on sector n, written directly from the coupled amplitude equations.
inline Eigen::Matrix4d sector_hamiltonian(double lambda, double g, std::size_t n)
{
	const double a = g * std::sqrt(static_cast<double>(n));
	const double b = g * std::sqrt(static_cast<double>(n) + 1.0);
	Eigen::Matrix4d h;
	h << 0, a, 0, 0,
	     a, 0, lambda, 0,
	     0, lambda, 0, b,
	     0, 0, b, 0;
	return h;
}

/// exp(−iHt) by Padé scaling-and-squaring.
inline Eigen::Matrix4cd expm_propagator(const Eigen::Matrix4d& h, double t)
{
	const Eigen::Matrix4cd arg = std::complex<double>(0, -t) * h.cast<std::complex<double>>();
	return arg.exp();
}

/// Classical RK4 on i dC/dt = H C.
inline Eigen::Vector4cd rk4_amplitudes(const Eigen::Matrix4d& h, Eigen::Vector4cd c, double t, std::size_t steps)
{
	const std::complex<double> minus_i(0, -1);
	const Eigen::Matrix4cd gen = minus_i * h.cast<std::complex<double>>();
	const double dt = t / static_cast<double>(steps);
	for(std::size_t s = 0; s < steps; ++s) {
		const Eigen::Vector4cd k1 = gen * c;
		const Eigen::Vector4cd k2 = gen * (c + 0.5 * dt * k1);
		const Eigen::Vector4cd k3 = gen * (c + 0.5 * dt * k2);
		const Eigen::Vector4cd k4 = gen * (c + dt * k3);
		c += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
	}
	return c;
}

inline std::mt19937_64 seeded_rng(std::uint64_t salt = 0)
{
	return std::mt19937_64(0x5eed2024ULL ^ salt);
}

} // namespace jcpair::testing
