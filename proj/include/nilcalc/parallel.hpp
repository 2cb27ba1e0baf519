#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nilcalc {

// runs body(0..count-1) on up to `threads` workers; rethrows the first failure
template <class F>
void parallel_for(std::size_t count, unsigned threads, F &&body)
{
	if (threads <= 1 || count <= 1)
	{
		for (std::size_t i = 0; i < count; ++i)
			body(i);
		return;
	}
	std::atomic<std::size_t> next{0};
	std::vector<std::thread> pool;
	std::exception_ptr error;
	std::mutex error_mutex;
	for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t)
		pool.emplace_back([&] {
			for (std::size_t i; (i = next++) < count;)
			{
				try
				{
					body(i);
				}
				catch (...)
				{
					std::lock_guard<std::mutex> lock(error_mutex);
					if (!error)
						error = std::current_exception();
				}
			}
		});
	for (auto &th : pool)
		th.join();
	if (error)
		std::rethrow_exception(error);
}

} // namespace nilcalc
