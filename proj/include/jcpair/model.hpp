#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "common.hpp"

namespace jcpair
{

/// Couplings of the resonant two-qubit + single-mode model.
///
/// `lambda` couples the two qubits, `g` couples qubit 2 to the field mode and
/// `omega` is the common transition frequency. `omega` only enters the free
/// Hamiltonian and never the interaction-picture dynamics. The ratio k = g/λ
/// is computed once from the stored g, so `k() == g() / lambda()` holds exactly.
template<typename Real = double>
class ModelParams
{
public:
	ModelParams(Real lambda, Real g, Real omega = Real(1))
		: lambda_{lambda}, g_{g}, omega_{omega}
	{
		if(!std::isfinite(lambda) || !(lambda > Real(0))) {
			throw DomainError("ModelParams: lambda must be finite and > 0");
		}
		if(!std::isfinite(g) || g < Real(0)) {
			throw DomainError("ModelParams: g must be finite and >= 0");
		}
		if(!std::isfinite(omega) || !(omega > Real(0))) {
			throw DomainError("ModelParams: omega must be finite and > 0");
		}
		k_ = g_ / lambda_;
	}

	static ModelParams from_ratio(Real lambda, Real k, Real omega = Real(1))
	{
		if(!std::isfinite(k) || k < Real(0)) {
			throw DomainError("ModelParams: k must be finite and >= 0");
		}
		return ModelParams(lambda, k * lambda, omega);
	}

	Real lambda() const { return lambda_; }
	Real g() const { return g_; }
	Real omega() const { return omega_; }
	Real k() const { return k_; }

private:
	Real lambda_;
	Real g_;
	Real omega_;
	Real k_;
};

/// Truncated Bose-Einstein photon-number distribution P_n = n̄ⁿ/(1+n̄)ⁿ⁺¹.
///
/// The truncation index is the smallest N whose geometric tail
/// (n̄/(1+n̄))^(N+1) is at most epsilon; that tail equals 1 − Σ_{n≤N} P_n.
template<typename Real = double>
class ThermalField
{
public:
	Real nbar() const { return nbar_; }
	Real epsilon() const { return epsilon_; }
	std::size_t nmax() const { return weights_.size() - 1; }
	const std::vector<Real>& weights() const { return weights_; }

	/// 1 − Σ stored weights, evaluated in closed form.
	Real tail() const { return tail_at(nmax()); }

	/// P_n for any n ≥ 0, including indices past the stored range; P_{-1} = 0.
	Real weight(long n) const
	{
		if(n < 0) {
			return Real(0);
		}
		if(static_cast<std::size_t>(n) < weights_.size()) {
			return weights_[static_cast<std::size_t>(n)];
		}
		return distribution(nbar_, n);
	}

	static Real distribution(Real nbar, long n)
	{
		if(nbar == Real(0)) {
			return n == 0 ? Real(1) : Real(0);
		}
		const Real q = nbar / (Real(1) + nbar);
		return std::pow(q, Real(n)) / (Real(1) + nbar);
	}

	/// Field truncated at the smallest index meeting the tail bound.
	static ThermalField build(Real nbar, Real epsilon)
	{
		if(!std::isfinite(nbar) || nbar < Real(0)) {
			throw DomainError("build_thermal: nbar must be finite and >= 0");
		}
		if(!std::isfinite(epsilon) || !(epsilon > Real(0)) || !(epsilon < Real(1))) {
			throw DomainError("build_thermal: epsilon must lie in (0, 1)");
		}
		if(nbar == Real(0)) {
			return ThermalField(nbar, epsilon, 0);
		}
		const Real q = nbar / (Real(1) + nbar);
		// log-estimate, then settle on the exact minimal index by direct evaluation
		long guess = static_cast<long>(std::ceil(std::log(epsilon) / std::log(q))) - 1;
		if(guess < 0) {
			guess = 0;
		}
		auto tail = [q](long n) { return std::pow(q, Real(n + 1)); };
		while(guess > 0 && tail(guess - 1) <= epsilon) {
			--guess;
		}
		while(tail(guess) > epsilon) {
			++guess;
		}
		return ThermalField(nbar, epsilon, static_cast<std::size_t>(guess));
	}

	/// Field truncated at a caller-chosen index; epsilon becomes the resulting tail.
	static ThermalField with_nmax(Real nbar, std::size_t nmax)
	{
		if(!std::isfinite(nbar) || nbar < Real(0)) {
			throw DomainError("ThermalField: nbar must be finite and >= 0");
		}
		ThermalField field(nbar, Real(0), nmax);
		field.epsilon_ = field.tail();
		return field;
	}

private:
	ThermalField(Real nbar, Real epsilon, std::size_t nmax)
		: nbar_{nbar}, epsilon_{epsilon}
	{
		weights_.resize(nmax + 1);
		for(std::size_t n = 0; n <= nmax; ++n) {
			weights_[n] = distribution(nbar, static_cast<long>(n));
		}
	}

	Real tail_at(std::size_t n) const
	{
		if(nbar_ == Real(0)) {
			return Real(0);
		}
		return std::pow(nbar_ / (Real(1) + nbar_), Real(n + 1));
	}

	Real nbar_;
	Real epsilon_;
	std::vector<Real> weights_;
};

template<typename Real>
ThermalField<Real> build_thermal(Real nbar, Real epsilon)
{
	return ThermalField<Real>::build(nbar, epsilon);
}

} // namespace jcpair
