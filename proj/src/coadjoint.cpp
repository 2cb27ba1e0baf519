#include "nilcalc/coadjoint.hpp"

#include "nilcalc/errors.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <type_traits>
#include <unordered_map>

namespace nilcalc {

Subspace JordanHolderFlag::level(std::size_t k) const
{
	return Subspace::coordinate(order.size(),
	                            std::vector<std::size_t>(order.begin(), order.begin() + k));
}

std::vector<std::size_t> JordanHolderFlag::center_indices() const
{
	return {order.begin(), order.begin() + center_dim};
}

std::vector<std::size_t> JordanHolderFlag::complement_indices() const
{
	return {order.begin() + center_dim, order.end()};
}

namespace {

bool bracket_lands_in(const GradedLieAlgebra &g, std::size_t c,
                      const std::vector<bool> &in_prefix)
{
	for (std::size_t i = 0; i < g.dim(); ++i)
		for (std::size_t k = 0; k < g.dim(); ++k)
			if (g.c(i, c, k) != 0 && !in_prefix[k])
				return false;
	return true;
}

} // namespace

JordanHolderFlag jordan_holder_basis(const GradedLieAlgebra &g)
{
	const std::size_t n = g.dim();
	const Subspace z = center(g);
	JordanHolderFlag flag;
	std::vector<bool> used(n, false);
	for (std::size_t i = 0; i < n; ++i)
		if (z.contains(unit_vec(n, i)))
		{
			flag.order.push_back(i);
			used[i] = true;
		}
	flag.center_dim = flag.order.size();
	if (flag.center_dim != z.dim())
		fail(ErrorKind::domain,
		     "center is not spanned by basis vectors; supply a Jordan-Hoelder flag "
		     "in an adapted basis");
	while (flag.order.size() < n)
	{
		bool found = false;
		for (std::size_t c = 0; c < n && !found; ++c)
			if (!used[c] && bracket_lands_in(g, c, used))
			{
				flag.order.push_back(c);
				used[c] = true;
				found = true;
			}
		if (!found)
			fail(ErrorKind::domain, "no Jordan-Hoelder flag through basis vectors");
	}
	return flag;
}

JordanHolderFlag make_flag(const GradedLieAlgebra &g, std::vector<std::size_t> order)
{
	const std::size_t n = g.dim();
	if (order.size() != n)
		fail(ErrorKind::domain, "flag must list every basis index once");
	std::vector<bool> used(n, false);
	for (auto i : order)
	{
		if (i >= n || used[i])
			fail(ErrorKind::domain, "flag must be a permutation of the basis");
		used[i] = true;
	}
	std::fill(used.begin(), used.end(), false);
	for (std::size_t k = 0; k < n; ++k)
	{
		used[order[k]] = true;
		if (!bracket_lands_in(g, order[k], used))
			fail(ErrorKind::domain,
			     "flag level " + std::to_string(k + 1) + " is not an ideal");
	}
	const Subspace z = center(g);
	JordanHolderFlag flag{std::move(order), z.dim()};
	if (!(flag.level(z.dim()) == z))
		fail(ErrorKind::domain, "the first dim(z) flag vectors must span the center");
	return flag;
}

QMatrix kirillov_form(const GradedLieAlgebra &g, const Covector &xi)
{
	QMatrix w(g.dim(), g.dim());
	for (const auto &e : g.nonzero())
		if (xi[e.k] != 0)
			w(e.i, e.j) += e.coeff * xi[e.k];
	return w;
}

Subspace stabilizer(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                    const Covector &xi, std::size_t k)
{
	if (k < 1 || k > g.dim())
		fail(ErrorKind::domain, "flag level out of range");
	QMatrix w = kirillov_form(g, xi);
	QMatrix r(k, k);
	for (std::size_t a = 0; a < k; ++a)
		for (std::size_t b = 0; b < k; ++b)
			r(a, b) = w(flag.order[a], flag.order[b]);
	std::vector<QVec> out;
	for (const auto &v : kernel(r))
	{
		QVec full(g.dim());
		for (std::size_t a = 0; a < k; ++a)
			full[flag.order[a]] = v[a];
		out.push_back(full);
	}
	return Subspace::span(g.dim(), out);
}

Subspace stabilizer(const GradedLieAlgebra &g, const Covector &xi)
{
	return Subspace::span(g.dim(), kernel(kirillov_form(g, xi)));
}

Covector extend_center_dual(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                            const QVec &z_coords)
{
	if (z_coords.size() != flag.center_dim)
		fail(ErrorKind::domain, "expected " + std::to_string(flag.center_dim) +
		                            " center-dual coordinates");
	Covector xi(g.dim());
	for (std::size_t j = 0; j < flag.center_dim; ++j)
		xi[flag.order[j]] = z_coords[j];
	return xi;
}

QVec restrict_to_center(const JordanHolderFlag &flag, const Covector &xi)
{
	QVec z(flag.center_dim);
	for (std::size_t j = 0; j < flag.center_dim; ++j)
		z[j] = xi[flag.order[j]];
	return z;
}

namespace {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMatrix center_dual_matrix(const GradedLieAlgebra &g, const JordanHolderFlag &flag)
{
	const std::size_t d = flag.center_dim;
	auto comp = flag.complement_indices();
	const std::size_t m = comp.size();
	std::vector<std::size_t> var_of(g.dim(), d);
	for (std::size_t j = 0; j < d; ++j)
		var_of[flag.order[j]] = j;
	PolyMatrix a(m, std::vector<Polynomial>(m, Polynomial(d)));
	for (std::size_t r = 0; r < m; ++r)
		for (std::size_t s = 0; s < m; ++s)
			for (std::size_t k = 0; k < g.dim(); ++k)
			{
				const Q &c = g.c(comp[r], comp[s], k);
				if (c != 0 && var_of[k] < d)
					a[r][s] += c * Polynomial::variable(d, var_of[k]);
			}
	return a;
}

template <class T, class Zero>
T pfaffian_rec(const std::vector<std::vector<T>> &a, std::uint64_t mask,
               std::unordered_map<std::uint64_t, T> &memo, const Zero &zero)
{
	if (mask == 0)
		return zero(true);
	auto it = memo.find(mask);
	if (it != memo.end())
		return it->second;
	std::size_t i = static_cast<std::size_t>(__builtin_ctzll(mask));
	std::uint64_t rest = mask & ~(std::uint64_t(1) << i);
	T total = zero(false);
	bool positive = true;
	for (std::uint64_t scan = rest; scan; scan &= scan - 1)
	{
		std::size_t j = static_cast<std::size_t>(__builtin_ctzll(scan));
		const T &aij = a[i][j];
		bool nonzero;
		if constexpr (std::is_same_v<T, Q>)
			nonzero = aij != 0;
		else
			nonzero = !aij.is_zero();
		if (nonzero)
		{
			T sub = pfaffian_rec(a, rest & ~(std::uint64_t(1) << j), memo, zero);
			T term = aij * sub;
			if (positive)
				total += term;
			else
				total -= term;
		}
		positive = !positive;
	}
	memo.emplace(mask, total);
	return total;
}

} // namespace

Q pfaffian(const QMatrix &a)
{
	const std::size_t m = a.rows();
	if (m % 2)
		return 0;
	if (m > 62)
		fail(ErrorKind::domain, "Pfaffian size limit exceeded");
	std::vector<std::vector<Q>> rows(m, std::vector<Q>(m));
	for (std::size_t i = 0; i < m; ++i)
		for (std::size_t j = 0; j < m; ++j)
			rows[i][j] = a(i, j);
	std::unordered_map<std::uint64_t, Q> memo;
	return pfaffian_rec(rows, (std::uint64_t(1) << m) - 1, memo,
	                    [](bool one) { return Q(one ? 1 : 0); });
}

PfaffianPolynomial pfaffian_on_center_dual(const GradedLieAlgebra &g,
                                           const JordanHolderFlag &flag)
{
	PfaffianPolynomial pf;
	const std::size_t d = flag.center_dim;
	for (std::size_t j = 0; j < d; ++j)
		pf.variables.push_back("xi_" + g.basis_names()[flag.order[j]]);
	pf.poly = Polynomial(d);
	const std::size_t m = g.dim() - d;
	if (m % 2)
	{
		pf.odd_codimension = true;
		return pf;
	}
	if (m > 62)
		fail(ErrorKind::domain, "Pfaffian size limit exceeded");
	auto a = center_dual_matrix(g, flag);
	std::unordered_map<std::uint64_t, Polynomial> memo;
	pf.poly = pfaffian_rec(a, m == 0 ? 0 : (std::uint64_t(1) << m) - 1, memo,
	                       [d](bool one) {
		                       return one ? Polynomial::constant(d, 1) : Polynomial(d);
	                       });
	return pf;
}

Polynomial determinant_on_center_dual(const GradedLieAlgebra &g,
                                      const JordanHolderFlag &flag)
{
	const std::size_t d = flag.center_dim;
	auto a = center_dual_matrix(g, flag);
	const std::size_t m = a.size();
	if (m > 24)
		fail(ErrorKind::domain, "determinant size limit exceeded");
	std::unordered_map<std::uint64_t, Polynomial> memo;
	std::function<Polynomial(std::size_t, std::uint64_t)> rec =
	    [&](std::size_t row, std::uint64_t used) -> Polynomial {
		if (row == m)
			return Polynomial::constant(d, 1);
		auto it = memo.find(used);
		if (it != memo.end())
			return it->second;
		Polynomial total(d);
		int free_before = 0;
		for (std::size_t c = 0; c < m; ++c)
		{
			if (used & (std::uint64_t(1) << c))
				continue;
			if (!a[row][c].is_zero())
			{
				Polynomial term = a[row][c] * rec(row + 1, used | (std::uint64_t(1) << c));
				if (free_before % 2)
					total -= term;
				else
					total += term;
			}
			++free_before;
		}
		memo.emplace(used, total);
		return total;
	};
	return rec(0, 0);
}

FlatOrbitVerdict has_flat_orbits(const GradedLieAlgebra &g)
{
	return has_flat_orbits(g, jordan_holder_basis(g));
}

FlatOrbitVerdict has_flat_orbits(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                                 std::uint64_t seed)
{
	FlatOrbitVerdict v;
	auto pf = pfaffian_on_center_dual(g, flag);
	if (pf.odd_codimension)
	{
		v.reason = "no flat orbits: odd codimension of center";
		return v;
	}
	if (pf.poly.is_zero())
	{
		v.reason = "no flat orbits: Pfaffian vanishes identically";
		return v;
	}
	v.flat = true;
	v.reason = "Pfaffian is not identically zero";
	const std::size_t d = flag.center_dim;
	// small points first: each coordinate runs through 0, 1, -1, 2, -2
	const int order[] = {0, 1, -1, 2, -2};
	std::vector<int> pos(d, 0);
	QVec point(d, Q(0));
	auto advance = [&]() {
		for (std::size_t j = d; j-- > 0;)
		{
			if (pos[j] < 4)
			{
				point[j] = order[++pos[j]];
				return true;
			}
			pos[j] = 0;
			point[j] = 0;
		}
		return false;
	};
	do
	{
		if (!is_zero(point) && pf.poly.evaluate(point) != 0)
		{
			v.witness = extend_center_dual(g, flag, point);
			return v;
		}
	} while (advance());
	std::mt19937_64 rng(seed);
	for (int height = 3; height < 1 << 20; height *= 2)
		for (int trial = 0; trial < 64; ++trial)
		{
			std::uniform_int_distribution<int> num(-height, height), den(1, height);
			for (auto &x : point)
			{
				x = Q(num(rng), den(rng));
				x.canonicalize();
			}
			if (pf.poly.evaluate(point) != 0)
			{
				v.witness = extend_center_dual(g, flag, point);
				return v;
			}
		}
	fail(ErrorKind::invariant_violation, "nonzero Pfaffian without a witness");
}

bool is_flat(const GradedLieAlgebra &g, const Covector &xi)
{
	return rank(kirillov_form(g, xi)) == g.dim() - center(g).dim();
}

bool is_on_gamma_partial(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                         const QVec &z_coords)
{
	QMatrix w = kirillov_form(g, extend_center_dual(g, flag, z_coords));
	auto comp = flag.complement_indices();
	QMatrix r(comp.size(), comp.size());
	for (std::size_t a = 0; a < comp.size(); ++a)
		for (std::size_t b = 0; b < comp.size(); ++b)
			r(a, b) = w(comp[a], comp[b]);
	return determinant(r) == 1;
}

JumpProfile jump_indices(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                         const Covector &xi)
{
	const std::size_t n = g.dim();
	JumpProfile p(n);
	for (std::size_t k = 1; k <= n; ++k)
	{
		Subspace stab = stabilizer(g, flag, xi, k);
		for (std::size_t j = 1; j <= k; ++j)
		{
			Subspace sum = stab + flag.level(j - 1);
			if (!sum.contains(unit_vec(n, flag.order[j - 1])))
				p[k - 1].push_back(j);
		}
	}
	return p;
}

std::string to_string(const JumpProfile &p)
{
	std::string out = "[";
	for (std::size_t k = 0; k < p.size(); ++k)
	{
		if (k)
			out += ", ";
		out += "{";
		for (std::size_t i = 0; i < p[k].size(); ++i)
		{
			if (i)
				out += ",";
			out += std::to_string(p[k][i]);
		}
		out += "}";
	}
	return out + "]";
}

StrataReport enumerate_strata(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                              const std::vector<Covector> &samples)
{
	if (samples.empty())
		fail(ErrorKind::domain, "enumerate_strata needs at least one sample");
	StrataReport r;
	bool have_top = false;
	for (const auto &xi : samples)
	{
		JumpProfile p = jump_indices(g, flag, xi);
		std::size_t dim = p.back().size();
		if (!have_top || dim > r.top_orbit_dim)
		{
			r.top = p;
			r.top_orbit_dim = dim;
			have_top = true;
		}
		r.strata[p].push_back(xi);
	}
	return r;
}

Subspace vergne_polarization(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                             const Covector &xi)
{
	const std::size_t n = g.dim();
	Subspace h(n);
	for (std::size_t k = 1; k <= n; ++k)
		h = h + stabilizer(g, flag, xi, k);
	const auto &b = h.basis();
	for (std::size_t i = 0; i < b.size(); ++i)
		for (std::size_t j = i + 1; j < b.size(); ++j)
		{
			QVec br = g.bracket(b[i], b[j]);
			if (dot(xi, br) != 0)
				fail(ErrorKind::invariant_violation, "polarization is not isotropic");
			if (!h.contains(br))
				fail(ErrorKind::invariant_violation, "polarization is not a subalgebra");
		}
	std::size_t r = rank(kirillov_form(g, xi));
	if (2 * (n - h.dim()) != r)
		fail(ErrorKind::invariant_violation,
		     "polarization codimension differs from half the orbit dimension");
	return h;
}

QVec aut_action_on_lambda(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                          const QMatrix &m, const QVec &z_coords)
{
	if (!is_automorphism(g, m))
		fail(ErrorKind::domain, "matrix is not a Lie algebra automorphism");
	Covector xi = extend_center_dual(g, flag, z_coords);
	QVec out(flag.center_dim);
	for (std::size_t j = 0; j < flag.center_dim; ++j)
		out[j] = dot(xi, m.col(flag.order[j]));
	return out;
}

QVec complement_part(const JordanHolderFlag &flag, const QVec &v)
{
	QVec p = v;
	for (std::size_t j = 0; j < flag.center_dim; ++j)
		p[flag.order[j]] = 0;
	return p;
}

QVec central_cocycle(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                     const QVec &x, const QVec &y)
{
	QVec xy = bch(g, complement_part(flag, x), complement_part(flag, y));
	QVec w = bch(g, xy, -complement_part(flag, xy));
	if (!is_zero(complement_part(flag, w)))
		fail(ErrorKind::invariant_violation, "cocycle value leaves the center");
	return w;
}

Covector coadjoint_move(const GradedLieAlgebra &g, const QVec &x, const Covector &xi)
{
	const std::size_t n = g.dim();
	QMatrix minus_ad = Q(-1) * g.ad(x);
	QMatrix e = QMatrix::identity(n), term = QMatrix::identity(n);
	for (std::size_t k = 1; k <= n; ++k)
	{
		term = Q(1, static_cast<unsigned long>(k)) * (term * minus_ad);
		if (term.is_zero())
			break;
		e = e + term;
	}
	return e.transpose() * xi;
}

ReducedForm reduced_form(const GradedLieAlgebra &g, const Covector &xi)
{
	Subspace acc = stabilizer(g, xi);
	ReducedForm r;
	for (std::size_t i = 0; i < g.dim(); ++i)
	{
		QVec e = unit_vec(g.dim(), i);
		if (acc.contains(e))
			continue;
		r.basis_indices.push_back(i);
		acc = acc + Subspace::span(g.dim(), {e});
	}
	QMatrix w = kirillov_form(g, xi);
	r.form = QMatrix(r.basis_indices.size(), r.basis_indices.size());
	for (std::size_t a = 0; a < r.basis_indices.size(); ++a)
		for (std::size_t b = 0; b < r.basis_indices.size(); ++b)
			r.form(a, b) = w(r.basis_indices[a], r.basis_indices[b]);
	return r;
}

} // namespace nilcalc
