#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "common.hpp"
#include "model.hpp"
#include "sector.hpp"

namespace jcpair
{

/// Two-qubit X state in the basis {|e₁e₂⟩, |e₁g₂⟩, |g₁e₂⟩, |g₁g₂⟩}.
///
/// Only the four populations and the single surviving coherence ρ₂₃ are
/// stored; every other entry is zero by construction.
template<typename Real = double>
class TwoQubitState
{
public:
	static constexpr Real population_floor = Real(-1e-12);
	static constexpr Real positivity_slack = Real(1e-10);

	TwoQubitState(Real rho11, Real rho22, Real rho33, Real rho44, Complex<Real> rho23)
		: rho11_{clamp(rho11)}, rho22_{clamp(rho22)}, rho33_{clamp(rho33)}, rho44_{clamp(rho44)}, rho23_{rho23}
	{
		if(std::norm(rho23_) > rho22_ * rho33_ + positivity_slack) {
			throw NumericalError("TwoQubitState: |rho23|^2 exceeds rho22*rho33");
		}
	}

	Real rho11() const { return rho11_; }
	Real rho22() const { return rho22_; }
	Real rho33() const { return rho33_; }
	Real rho44() const { return rho44_; }
	Complex<Real> rho23() const { return rho23_; }

	Real trace() const { return rho11_ + rho22_ + rho33_ + rho44_; }

	Matrix4c<Real> matrix() const
	{
		Matrix4c<Real> m = Matrix4c<Real>::Zero();
		m(0, 0) = rho11_;
		m(1, 1) = rho22_;
		m(2, 2) = rho33_;
		m(3, 3) = rho44_;
		m(1, 2) = rho23_;
		m(2, 1) = std::conj(rho23_);
		return m;
	}

	/// Builds from a dense 4×4 matrix; entries outside the X pattern above `tolerance` are rejected.
	static TwoQubitState from_matrix(const Matrix4c<Real>& m, Real tolerance = Real(1e-8))
	{
		Real off = 0;
		for(int i = 0; i < 4; ++i) {
			for(int j = 0; j < 4; ++j) {
				const bool kept = (i == j) || (i == 1 && j == 2) || (i == 2 && j == 1);
				if(!kept) {
					off = std::max(off, std::abs(m(i, j)));
				}
			}
		}
		if(off > tolerance) {
			throw StructuralError("TwoQubitState: entry outside the X pattern of magnitude " + std::to_string(double(off)));
		}
		return TwoQubitState(m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), m(1, 2));
	}

private:
	static Real clamp(Real p)
	{
		if(!std::isfinite(p)) {
			throw NumericalError("TwoQubitState: non-finite population");
		}
		if(p < population_floor) {
			throw NumericalError("TwoQubitState: population " + std::to_string(double(p)) + " is negative");
		}
		return p < Real(0) ? Real(0) : p;
	}

	Real rho11_, rho22_, rho33_, rho44_;
	Complex<Real> rho23_;
};

/// Analytic reduced dynamics for a fixed (params, field) pair.
///
/// Sector frequencies for n = 0..nmax+1 are computed once; `state(t)` is then
/// a single pass over the sectors. Immutable after construction.
template<typename Real = double>
class ThermalEvolution
{
public:
	ThermalEvolution(const ModelParams<Real>& params, const ThermalField<Real>& field)
		: params_{params}, field_{field}
	{
		// one sector past nmax feeds the P_{n+1}|C_{1,n+1}|² population
		const std::size_t top = field_.nmax() + 1;
		sectors_.reserve(top + 1);
		weights_.reserve(top + 1);
		for(std::size_t n = 0; n <= top; ++n) {
			sectors_.push_back(sector_frequencies(params_, n));
			weights_.push_back(field_.weight(static_cast<long>(n)));
		}
	}

	const ModelParams<Real>& params() const { return params_; }
	const ThermalField<Real>& field() const { return field_; }

	TwoQubitState<Real> state(Real t) const
	{
		const std::size_t nmax = field_.nmax();
		Real rho11 = 0, rho22 = 0, rho33 = 0, rho44 = 0;
		Complex<Real> rho23 = 0;
		for(std::size_t n = 0; n < sectors_.size(); ++n) {
			const Real p = weights_[n];
			if(p == Real(0)) {
				continue;
			}
			const auto c = sector_amplitudes(sectors_[n], params_.lambda(), t);
			if(n >= 1) {
				rho11 += p * std::norm(c.c1);
			}
			if(n <= nmax) {
				rho22 += p * std::norm(c.c2);
				rho33 += p * std::norm(c.c3);
				rho44 += p * std::norm(c.c4);
				rho23 += p * c.c2 * std::conj(c.c3);
			}
		}
		return TwoQubitState<Real>(rho11, rho22, rho33, rho44, rho23);
	}

private:
	ModelParams<Real> params_;
	ThermalField<Real> field_;
	std::vector<SectorFrequencies<Real>> sectors_;
	std::vector<Real> weights_;
};

template<typename Real>
TwoQubitState<Real> two_qubit_state(const ModelParams<Real>& params, const ThermalField<Real>& field, Real t)
{
	return ThermalEvolution<Real>(params, field).state(t);
}

} // namespace jcpair
