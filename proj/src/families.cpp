#include "nilcalc/families.hpp"

#include "nilcalc/errors.hpp"

#include <map>

namespace nilcalc::families {

namespace {

void require(bool ok, const std::string &what)
{
	if (!ok)
		fail(ErrorKind::usage, what);
}

} // namespace

GradedLieAlgebra abelian(std::size_t n)
{
	require(n >= 1, "abelian: dimension must be >= 1");
	std::vector<std::string> names;
	for (std::size_t i = 0; i < n; ++i)
		names.push_back("X" + std::to_string(i + 1));
	return GradedLieAlgebra("abelian-" + std::to_string(n),
	                        std::vector<int>(n, 1), {}, names);
}

GradedLieAlgebra heisenberg(std::size_t n)
{
	require(n >= 1, "heisenberg: n must be >= 1");
	std::vector<int> w(2 * n + 1, 1);
	w[2 * n] = 2;
	std::vector<std::string> names;
	for (std::size_t i = 0; i < n; ++i)
		names.push_back(n == 1 ? "X" : "X" + std::to_string(i + 1));
	for (std::size_t i = 0; i < n; ++i)
		names.push_back(n == 1 ? "Y" : "Y" + std::to_string(i + 1));
	names.push_back("Z");
	std::vector<BracketEntry> e;
	for (std::size_t i = 0; i < n; ++i)
		e.push_back({i, n + i, 2 * n, Q(1)});
	return GradedLieAlgebra("heisenberg-" + std::to_string(n), w, e, names);
}

GradedLieAlgebra complex_heisenberg(std::size_t n)
{
	require(n >= 1, "complex-heisenberg: n must be >= 1");
	// X_j, X'_j, Y_j, Y'_j real parts and imaginary parts, then Z1, Z2
	const std::size_t z1 = 4 * n, z2 = 4 * n + 1;
	std::vector<int> w(4 * n + 2, 1);
	w[z1] = w[z2] = 2;
	std::vector<std::string> names;
	for (const char *stem : {"X", "X'", "Y", "Y'"})
		for (std::size_t j = 0; j < n; ++j)
			names.push_back(std::string(stem) + std::to_string(j + 1));
	names.push_back("Z1");
	names.push_back("Z2");
	std::vector<BracketEntry> e;
	for (std::size_t j = 0; j < n; ++j)
	{
		std::size_t x = j, xp = n + j, y = 2 * n + j, yp = 3 * n + j;
		e.push_back({x, y, z1, Q(1)});
		e.push_back({xp, yp, z1, Q(-1)});
		e.push_back({x, yp, z2, Q(1)});
		e.push_back({xp, y, z2, Q(1)});
	}
	return GradedLieAlgebra("complex-heisenberg-" + std::to_string(n), w, e,
	                        names);
}

GradedLieAlgebra heisenberg_product(const std::vector<std::size_t> &ns)
{
	require(!ns.empty(), "heisenberg-product: need at least one factor");
	std::vector<int> w;
	std::vector<std::string> names;
	std::vector<BracketEntry> e;
	std::string label = "heisenberg-product";
	for (std::size_t f = 0; f < ns.size(); ++f)
	{
		std::size_t n = ns[f], base = w.size();
		require(n >= 1, "heisenberg-product: factors must be >= 1");
		label += "-" + std::to_string(n);
		std::string tag = "_" + std::to_string(f + 1);
		for (std::size_t i = 0; i < n; ++i)
		{
			w.push_back(1);
			names.push_back("X" + std::to_string(i + 1) + tag);
		}
		for (std::size_t i = 0; i < n; ++i)
		{
			w.push_back(1);
			names.push_back("Y" + std::to_string(i + 1) + tag);
		}
		w.push_back(2);
		names.push_back("Z" + tag);
		for (std::size_t i = 0; i < n; ++i)
			e.push_back({base + i, base + n + i, base + 2 * n, Q(1)});
	}
	return GradedLieAlgebra(label, w, e, names);
}

GradedLieAlgebra quotient_chain(std::size_t n)
{
	require(n >= 2, "quotient-chain: n must be >= 2");
	std::vector<int> w(2 * n - 1, 1);
	std::vector<std::string> names;
	for (std::size_t i = 0; i < n; ++i)
		names.push_back("X" + std::to_string(i + 1));
	for (std::size_t i = 0; i + 1 < n; ++i)
	{
		w[n + i] = 2;
		names.push_back("Y" + std::to_string(i + 1));
	}
	std::vector<BracketEntry> e;
	for (std::size_t i = 0; i + 1 < n; ++i)
		e.push_back({i, i + 1, n + i, Q(1)});
	return GradedLieAlgebra("quotient-chain-" + std::to_string(n), w, e, names);
}

GradedLieAlgebra free_step2(std::size_t q)
{
	require(q >= 2, "free-step2: q must be >= 2");
	std::vector<int> w(q, 1);
	std::vector<std::string> names;
	for (std::size_t i = 0; i < q; ++i)
		names.push_back("e" + std::to_string(i + 1));
	std::vector<BracketEntry> e;
	for (std::size_t i = 0; i < q; ++i)
		for (std::size_t j = i + 1; j < q; ++j)
		{
			e.push_back({i, j, w.size(), Q(1)});
			w.push_back(2);
			names.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
		}
	return GradedLieAlgebra("free-step2-" + std::to_string(q), w, e, names);
}

GradedLieAlgebra engel()
{
	return GradedLieAlgebra("engel", {3, 2, 1, 1},
	                        {{1, 3, 0, Q(1)}, {2, 3, 1, Q(1)}},
	                        {"Y1", "Y2", "Y3", "Y4"});
}

GradedLieAlgebra upper_triangular(std::size_t n)
{
	require(n >= 1, "upper-triangular: n must be >= 1");
	const std::size_t m = n + 1;
	std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
	std::vector<int> w;
	std::vector<std::string> names;
	for (std::size_t i = 0; i < m; ++i)
		for (std::size_t j = i + 1; j < m; ++j)
		{
			index[{i, j}] = w.size();
			w.push_back(static_cast<int>(j - i));
			names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
		}
	std::vector<BracketEntry> e;
	for (std::size_t i = 0; i < m; ++i)
		for (std::size_t j = i + 1; j < m; ++j)
			for (std::size_t k = j + 1; k < m; ++k)
				e.push_back({index[{i, j}], index[{j, k}], index[{i, k}], Q(1)});
	return GradedLieAlgebra("upper-triangular-" + std::to_string(n), w, e, names);
}

} // namespace nilcalc::families
