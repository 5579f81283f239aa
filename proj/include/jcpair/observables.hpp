#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>

#include "common.hpp"
#include "model.hpp"
#include "sector.hpp"
#include "state.hpp"

namespace jcpair
{

/// Diagonal reduced state of qubit 1.
template<typename Real = double>
struct Qubit1State
{
	Real rho_ee;
	Real rho_gg;

	Real trace() const { return rho_ee + rho_gg; }
};

template<typename Real = double>
struct XStateConcurrence
{
	Real concurrence;
	Real lambda_fn; ///< 2|ρ₂₃| − 2√(ρ₁₁ρ₄₄), the unclamped value
};

template<typename Real = double>
struct MetricSample
{
	Real t;
	Real concurrence;
	Real lambda_fn;
	Real coherence_l1;
	Real inversion;
	Real linear_entropy;
};

/// Spin-flip matrix σy ⊗ σy in the {e, g} product basis.
template<typename Real>
Matrix4r<Real> spin_flip()
{
	Matrix4r<Real> s = Matrix4r<Real>::Zero();
	s(0, 3) = -1;
	s(1, 2) = 1;
	s(2, 1) = 1;
	s(3, 0) = -1;
	return s;
}

/// Wootters concurrence of an arbitrary two-qubit density matrix.
///
/// Eigenvalues ξ of ρ(σy⊗σy)ρ*(σy⊗σy) are sorted in decreasing order; values
/// in [−1e−8, 0) are float noise and clamp to zero, anything lower throws.
template<typename Real>
Real concurrence_wootters(const Matrix4c<Real>& rho)
{
	const Matrix4c<Real> flip = spin_flip<Real>().template cast<Complex<Real>>();
	const Matrix4c<Real> m = rho * flip * rho.conjugate() * flip;

	Eigen::ComplexEigenSolver<Matrix4c<Real>> solver(m, false);
	if(solver.info() != Eigen::Success) {
		throw NumericalError("concurrence_wootters: eigenvalue iteration did not converge");
	}
	std::array<Real, 4> xi;
	for(int i = 0; i < 4; ++i) {
		xi[i] = solver.eigenvalues()(i).real();
		if(xi[i] < Real(-1e-8)) {
			throw NumericalError("concurrence_wootters: eigenvalue " + std::to_string(double(xi[i])) +
			                     " of the spin-flip product is negative");
		}
		xi[i] = std::max(xi[i], Real(0));
	}
	std::sort(xi.begin(), xi.end(), std::greater<Real>());
	const Real value = std::sqrt(xi[0]) - std::sqrt(xi[1]) - std::sqrt(xi[2]) - std::sqrt(xi[3]);
	return std::max(Real(0), value);
}

template<typename Real>
Real concurrence_wootters(const TwoQubitState<Real>& state)
{
	return concurrence_wootters(state.matrix());
}

template<typename Real>
XStateConcurrence<Real> concurrence_xstate(const TwoQubitState<Real>& state)
{
	const Real lambda_fn = Real(2) * std::abs(state.rho23()) - Real(2) * std::sqrt(state.rho11() * state.rho44());
	return {std::max(Real(0), lambda_fn), lambda_fn};
}

/// l1 norm of coherence: |ρ₂₃| + |ρ₃₂|.
template<typename Real>
Real coherence_l1(const TwoQubitState<Real>& state)
{
	return Real(2) * std::abs(state.rho23());
}

template<typename Real>
Qubit1State<Real> qubit1_reduce(const TwoQubitState<Real>& state)
{
	return {state.rho11() + state.rho22(), state.rho33() + state.rho44()};
}

template<typename Real>
Real inversion_summed(const Qubit1State<Real>& q1)
{
	return q1.rho_ee - q1.rho_gg;
}

/// 1 − ρ_ee² − ρ_gg².
///
/// For a trace s this equals (1 − W²)/2 + (1 − s²)/2; the identity is checked
/// on every call.
template<typename Real>
Real linear_entropy(const Qubit1State<Real>& q1)
{
	const Real s = Real(1) - q1.rho_ee * q1.rho_ee - q1.rho_gg * q1.rho_gg;
	const Real w = inversion_summed(q1);
	const Real tr = q1.trace();
	const Real via_inversion = Real(0.5) * (Real(1) - w * w) + Real(0.5) * (Real(1) - tr * tr);
	if(std::abs(s - via_inversion) > Real(1e-12)) {
		throw NumericalError("linear_entropy: purity and inversion forms disagree");
	}
	return s;
}

/// Coefficient set used by `inversion_closed`.
///
/// `transcribed` carries a 1/k² prefactor and cosine weights ((1∓β)k² − 1)/(4k²);
/// it satisfies W(0) = 1 but does not reproduce the summed inversion for t > 0.
/// `rederived` is the expansion of |A₂₃|² + |A₂₄|² worked out from the sector
/// propagator: prefactor k² and cosine weights (k² − 1 ∓ β)/(4k²).
enum class InversionCoefficients
{
	transcribed,
	rederived,
};

/// Closed-form cosine series for the qubit-1 inversion, truncated at field.nmax().
///
/// The 1/k² structure is singular for g = 0; callers needing that case must use
/// `inversion_summed`.
template<typename Real>
Real inversion_closed(const ModelParams<Real>& params, const ThermalField<Real>& field, Real t,
                      InversionCoefficients form = InversionCoefficients::transcribed)
{
	const Real k = params.k();
	if(!(k > Real(0))) {
		throw DomainError("inversion_closed: requires k > 0; use inversion_summed for g = 0");
	}
	const Real k2 = k * k;
	const bool transcribed = form == InversionCoefficients::transcribed;
	Real sum = 0;
	for(std::size_t n = 0; n <= field.nmax(); ++n) {
		const auto f = sector_frequencies(params, n);
		const Real nn = static_cast<Real>(n);
		const Real beta = f.beta_n;
		const Real root = std::sqrt(nn * (nn + Real(1)));
		const Real constant = (Real(1) + (Real(4) * nn + Real(3)) * k2) / (Real(2) * k2);
		const Real plus = transcribed ? ((Real(1) - beta) * k2 - Real(1)) / (Real(4) * k2)
		                              : (k2 - Real(1) - beta) / (Real(4) * k2);
		const Real minus = transcribed ? ((Real(1) + beta) * k2 - Real(1)) / (Real(4) * k2)
		                               : (k2 - Real(1) + beta) / (Real(4) * k2);
		const Real sum_freq = nn + Real(1) - root;
		const Real diff_freq = nn + Real(1) + root;
		// all cosines equal 1 at t = 0 and the bracket must telescope to zero
		assert(std::abs(constant + plus + minus - sum_freq - diff_freq) <= Real(1e-9) * (constant + diff_freq));

		const Real wp = f.omega_plus, wm = f.omega_minus;
		const Real bracket = constant + plus * std::cos(Real(2) * wp * t) + minus * std::cos(Real(2) * wm * t) -
		                     sum_freq * std::cos((wp + wm) * t) - diff_freq * std::cos((wp - wm) * t);
		sum += field.weights()[n] / (beta * beta) * bracket;
	}
	const Real prefactor = transcribed ? Real(2) / k2 : Real(2) * k2;
	return Real(1) - prefactor * sum;
}

template<typename Real>
MetricSample<Real> sample_metrics(const TwoQubitState<Real>& state, Real t)
{
	const auto c = concurrence_xstate(state);
	const auto q1 = qubit1_reduce(state);
	return {t, c.concurrence, c.lambda_fn, coherence_l1(state), inversion_summed(q1), linear_entropy(q1)};
}

} // namespace jcpair
