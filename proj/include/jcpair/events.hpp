#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "common.hpp"
#include "model.hpp"
#include "observables.hpp"
#include "parallel.hpp"
#include "state.hpp"

namespace jcpair
{

/// A maximal stretch of strictly negative Λ (zero concurrence).
///
/// An interval that is already negative at the window start has `open_start`
/// set and t_death = t0; likewise `open_end` with t_birth = t1.
template<typename Real = double>
struct EsdInterval
{
	Real t_death;
	Real t_birth;
	Real min_lambda;
	bool refined;     ///< at least one boundary was located by bisection
	bool open_start;
	bool open_end;

	Real width() const { return t_birth - t_death; }
};

template<typename Real = double>
struct EsdScanOptions
{
	Real crossing_tolerance = Real(1e-9);
	int max_bisections = 60;
	Real min_width = Real(1e-9);
	/// Runs whose most negative Λ is above −floor are grazing contacts, not deaths.
	Real grazing_floor = Real(1e-12);
	unsigned jobs = 1;
};

namespace detail
{

/// Root of f in [lo, hi] where f(lo) and f(hi) have opposite sign (f(neg) < 0).
template<typename Real, typename Fn>
Real bisect_crossing(Fn& f, Real pos, Real neg, const EsdScanOptions<Real>& opts)
{
	Real mid = Real(0.5) * (pos + neg);
	for(int it = 0; it < opts.max_bisections; ++it) {
		mid = Real(0.5) * (pos + neg);
		const Real v = f(mid);
		if(std::abs(v) <= opts.crossing_tolerance) {
			break;
		}
		if(v < Real(0)) {
			neg = mid;
		} else {
			pos = mid;
		}
	}
	return mid;
}

} // namespace detail

/// Grid-then-bisect scan for Λ < 0 over [t0, t1] with `n_grid` uniform samples.
template<typename Real, typename Fn>
std::vector<EsdInterval<Real>> scan_negative_intervals(Fn&& lambda_of_t, Real t0, Real t1, std::size_t n_grid,
                                                       const EsdScanOptions<Real>& opts = {})
{
	if(!(t0 < t1)) {
		throw DomainError("scan_esd: requires t0 < t1");
	}
	if(n_grid < 2) {
		throw DomainError("scan_esd: requires at least 2 grid points");
	}
	const Real step = (t1 - t0) / static_cast<Real>(n_grid - 1);
	auto grid_t = [&](std::size_t i) { return i + 1 == n_grid ? t1 : t0 + step * static_cast<Real>(i); };
	const std::vector<Real> values = parallel_map(n_grid, opts.jobs, [&](std::size_t i) { return lambda_of_t(grid_t(i)); });

	std::vector<EsdInterval<Real>> out;
	std::size_t i = 0;
	while(i < n_grid) {
		if(!(values[i] < Real(0))) {
			++i;
			continue;
		}
		const std::size_t first = i;
		Real min_lambda = values[i];
		while(i < n_grid && values[i] < Real(0)) {
			min_lambda = std::min(min_lambda, values[i]);
			++i;
		}
		const std::size_t last = i - 1;

		EsdInterval<Real> iv{};
		iv.min_lambda = min_lambda;
		iv.open_start = first == 0;
		iv.open_end = last + 1 == n_grid;
		iv.refined = !(iv.open_start && iv.open_end);
		iv.t_death = iv.open_start ? t0 : detail::bisect_crossing(lambda_of_t, grid_t(first - 1), grid_t(first), opts);
		iv.t_birth = iv.open_end ? t1 : detail::bisect_crossing(lambda_of_t, grid_t(last + 1), grid_t(last), opts);
		if(min_lambda < -opts.grazing_floor && iv.width() >= opts.min_width) {
			out.push_back(iv);
		}
	}
	return out;
}

template<typename Real>
std::vector<EsdInterval<Real>> scan_esd(const ThermalEvolution<Real>& evolution, Real t0, Real t1, std::size_t n_grid,
                                        const EsdScanOptions<Real>& opts = {})
{
	auto lambda_fn = [&evolution](Real t) { return concurrence_xstate(evolution.state(t)).lambda_fn; };
	return scan_negative_intervals(lambda_fn, t0, t1, n_grid, opts);
}

template<typename Real>
std::vector<EsdInterval<Real>> scan_esd(const ModelParams<Real>& params, const ThermalField<Real>& field, Real t0, Real t1,
                                        std::size_t n_grid, const EsdScanOptions<Real>& opts = {})
{
	return scan_esd(ThermalEvolution<Real>(params, field), t0, t1, n_grid, opts);
}

/// Default grid density: 4000 samples per unit of λt.
template<typename Real>
std::size_t default_event_grid(Real lambda, Real t0, Real t1)
{
	const Real span = lambda * (t1 - t0);
	return static_cast<std::size_t>(std::ceil(Real(4000) * span)) + 1;
}

/// Fraction of [t0, t1] covered by the intervals.
template<typename Real>
Real dwell_fraction(const std::vector<EsdInterval<Real>>& intervals, Real t0, Real t1)
{
	if(!(t0 < t1)) {
		throw DomainError("dwell_fraction: requires t0 < t1");
	}
	Real total = 0;
	for(const auto& iv : intervals) {
		const Real lo = std::max(iv.t_death, t0);
		const Real hi = std::min(iv.t_birth, t1);
		if(hi > lo) {
			total += hi - lo;
		}
	}
	return std::clamp(total / (t1 - t0), Real(0), Real(1));
}

} // namespace jcpair
