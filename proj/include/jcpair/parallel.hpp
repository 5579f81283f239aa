#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace jcpair
{

/// Evaluates fn(i) for i in [0, count) on up to `jobs` threads and returns the
/// results in index order. The first exception thrown by any worker is rethrown.
template<typename Fn>
auto parallel_map(std::size_t count, unsigned jobs, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))>
{
	using Result = decltype(fn(std::size_t{}));
	std::vector<Result> out(count);
	jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
	if(jobs == 1) {
		for(std::size_t i = 0; i < count; ++i) {
			out[i] = fn(i);
		}
		return out;
	}

	std::vector<std::exception_ptr> errors(jobs);
	std::vector<std::thread> workers;
	workers.reserve(jobs);
	const std::size_t chunk = (count + jobs - 1) / jobs;
	for(unsigned w = 0; w < jobs; ++w) {
		workers.emplace_back([&, w] {
			const std::size_t begin = w * chunk;
			const std::size_t end = std::min(count, begin + chunk);
			try {
				for(std::size_t i = begin; i < end; ++i) {
					out[i] = fn(i);
				}
			} catch(...) {
				errors[w] = std::current_exception();
			}
		});
	}
	for(auto& worker : workers) {
		worker.join();
	}
	for(auto& e : errors) {
		if(e) {
			std::rethrow_exception(e);
		}
	}
	return out;
}

} // namespace jcpair
