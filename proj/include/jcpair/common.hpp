#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace jcpair
{

/// Argument outside the mathematical domain of an operation (negative n̄, k = 0 in a 1/k² formula, ...).
class DomainError : public std::domain_error
{
public:
	using std::domain_error::domain_error;
};

/// A quantity that must be non-negative up to float noise came out clearly negative.
class NumericalError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// A result that the dynamics guarantees to be structured (X pattern, diagonal) was not.
class StructuralError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Invalid construction parameters, e.g. an oracle Fock cutoff that is too small.
class ConfigError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

template<typename Real>
using Complex = std::complex<Real>;

template<typename Real>
using Matrix4c = Eigen::Matrix<Complex<Real>, 4, 4>;

template<typename Real>
using Matrix4r = Eigen::Matrix<Real, 4, 4>;

template<typename Real>
using MatrixXc = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template<typename Real>
using MatrixXr = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template<typename Real>
using VectorXc = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template<typename Real>
using VectorXr = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

namespace detail
{

/// sin(ωt)/ω, continuous through ω = 0 where it equals t.
template<typename Real>
Real sin_over(Real omega, Real t)
{
	const Real x = omega * t;
	if(std::abs(x) < Real(1e-8)) {
		return t * (Real(1) - x * x / Real(6));
	}
	return std::sin(x) / omega;
}

} // namespace detail

} // namespace jcpair
