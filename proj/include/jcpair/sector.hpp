#pragma once

#include <cmath>
#include <cstddef>

#include "common.hpp"
#include "model.hpp"

namespace jcpair
{

/// Frequencies of the 4-dimensional excitation sector n, spanned by
/// |e₁e₂,n−1⟩, |e₁g₂,n⟩, |g₁e₂,n⟩, |g₁g₂,n+1⟩.
template<typename Real = double>
struct SectorFrequencies
{
	std::size_t n;
	Real a_n;         ///< g√n
	Real b_n;         ///< g√(n+1)
	Real r_n;         ///< λ²β_n = ω₊² − ω₋²
	Real alpha_n;     ///< 1 + (2n+1)k²
	Real beta_n;      ///< √((1+k²)² + 4nk²)
	Real omega_plus;
	Real omega_minus;
};

template<typename Real>
SectorFrequencies<Real> sector_frequencies(const ModelParams<Real>& params, std::size_t n)
{
	const Real lambda = params.lambda();
	const Real k = params.k();
	const Real k2 = k * k;
	const Real nn = static_cast<Real>(n);

	SectorFrequencies<Real> f{};
	f.n = n;
	f.a_n = params.g() * std::sqrt(nn);
	f.b_n = params.g() * std::sqrt(nn + Real(1));
	f.alpha_n = Real(1) + (Real(2) * nn + Real(1)) * k2;
	f.beta_n = std::sqrt((Real(1) + k2) * (Real(1) + k2) + Real(4) * nn * k2);
	f.r_n = lambda * lambda * f.beta_n;
	f.omega_plus = lambda * std::sqrt((f.alpha_n + f.beta_n) / Real(2));
	// α² − β² = 4n(n+1)k⁴, which avoids the cancellation in α − β and gives ω₋ = 0 exactly at n = 0
	f.omega_minus = lambda * k2 * std::sqrt(Real(2) * nn * (nn + Real(1)) / (f.alpha_n + f.beta_n));
	return f;
}

/// A⁽ⁿ⁾(t) = exp(−iH⁽ⁿ⁾t) on sector n. Complex symmetric and unitary.
template<typename Real = double>
struct SectorPropagator
{
	std::size_t n;
	Real t;
	Matrix4c<Real> A;
};

template<typename Real>
SectorPropagator<Real> sector_propagator(const ModelParams<Real>& params, std::size_t n, Real t)
{
	const auto f = sector_frequencies(params, n);
	const Real lambda = params.lambda();
	const Real a = f.a_n, b = f.b_n, r = f.r_n;
	const Real wp = f.omega_plus, wm = f.omega_minus;
	const Real wp2 = wp * wp, wm2 = wm * wm;
	const Real a2 = a * a, b2 = b * b, l2 = lambda * lambda;

	const Real cp = std::cos(wp * t), cm = std::cos(wm * t);
	const Real sp = std::sin(wp * t), sm = std::sin(wm * t);
	// sin(ωt)/ω through the ω₋ = 0 limit
	const Real sop = detail::sin_over(wp, t), som = detail::sin_over(wm, t);
	const Complex<Real> I(0, 1);

	Matrix4c<Real> A;
	A(0, 0) = ((wp2 - b2 - l2) * cp - (wm2 - b2 - l2) * cm) / r;
	A(0, 1) = I * (a / r) * ((b2 - wp2) * sop - (b2 - wm2) * som);
	A(0, 2) = (lambda * a / r) * (cp - cm);
	A(0, 3) = -I * (lambda * a * b / r) * (sop - som);
	A(1, 1) = ((wp2 - b2) * cp - (wm2 - b2) * cm) / r;
	A(1, 2) = -I * (lambda / r) * (wp * sp - wm * sm);
	A(1, 3) = (lambda * b / r) * (cp - cm);
	A(2, 2) = ((wp2 - a2) * cp - (wm2 - a2) * cm) / r;
	A(2, 3) = I * (b / r) * ((a2 - wp2) * sop - (a2 - wm2) * som);
	A(3, 3) = ((wp2 - a2 - l2) * cp - (wm2 - a2 - l2) * cm) / r;
	for(int j = 0; j < 4; ++j) {
		for(int m = 0; m < j; ++m) {
			A(j, m) = A(m, j);
		}
	}
	return {n, t, A};
}

/// Sector amplitudes C_{j,n}(t) for the initial sector state |e₁,g₂,n⟩, i.e.
/// the second column of A⁽ⁿ⁾(t).
template<typename Real = double>
struct SectorAmplitudes
{
	std::size_t n;
	Complex<Real> c1; ///< |e₁e₂,n−1⟩
	Complex<Real> c2; ///< |e₁g₂,n⟩
	Complex<Real> c3; ///< |g₁e₂,n⟩
	Complex<Real> c4; ///< |g₁g₂,n+1⟩

	Real norm2() const { return std::norm(c1) + std::norm(c2) + std::norm(c3) + std::norm(c4); }
};

/// Only the four entries of the second propagator column are evaluated.
template<typename Real>
SectorAmplitudes<Real> sector_amplitudes(const SectorFrequencies<Real>& f, Real lambda, Real t)
{
	const Real a = f.a_n, b = f.b_n, r = f.r_n;
	const Real wp = f.omega_plus, wm = f.omega_minus;
	const Real wp2 = wp * wp, wm2 = wm * wm, b2 = b * b;
	const Real cp = std::cos(wp * t), cm = std::cos(wm * t);
	const Real sp = std::sin(wp * t), sm = std::sin(wm * t);
	const Complex<Real> I(0, 1);

	SectorAmplitudes<Real> c;
	c.n = f.n;
	if(f.n == 0) {
		c.c1 = Complex<Real>(0);
	} else {
		c.c1 = I * (a / r) * ((b2 - wp2) * detail::sin_over(wp, t) - (b2 - wm2) * detail::sin_over(wm, t));
	}
	c.c2 = ((wp2 - b2) * cp - (wm2 - b2) * cm) / r;
	c.c3 = -I * (lambda / r) * (wp * sp - wm * sm);
	c.c4 = (lambda * b / r) * (cp - cm);
	return c;
}

template<typename Real>
SectorAmplitudes<Real> sector_amplitudes(const ModelParams<Real>& params, std::size_t n, Real t)
{
	return sector_amplitudes(sector_frequencies(params, n), params.lambda(), t);
}

} // namespace jcpair
