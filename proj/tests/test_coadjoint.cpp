#include "generators.hpp"
#include "oracles.hpp"

#include "nilcalc/coadjoint.hpp"
#include "nilcalc/errors.hpp"
#include "nilcalc/families.hpp"

#include <doctest.h>

using namespace nilcalc;

namespace {

QVec e(std::size_t n, std::size_t i) { return unit_vec(n, i); }

std::vector<GradedLieAlgebra> flat_corpus()
{
	return {families::heisenberg(1), families::heisenberg(2),
	        families::complex_heisenberg(1), families::heisenberg_product({1, 2}),
	        families::quotient_chain(4), mohsen_modification(families::engel()),
	        mohsen_modification(families::heisenberg(1))};
}

std::vector<GradedLieAlgebra> corpus()
{
	auto c = flat_corpus();
	for (auto g : {families::quotient_chain(3), families::engel(),
	               families::upper_triangular(3), families::free_step2(3),
	               families::abelian(2)})
		c.push_back(g);
	return c;
}

Polynomial var(std::size_t d, std::size_t i) { return Polynomial::variable(d, i); }

// stab(xi|g_k) by solving the full linear system on g with support in g_k
Subspace stabilizer_oracle(const GradedLieAlgebra &g, const JordanHolderFlag &f,
                           const Covector &xi, std::size_t k)
{
	const std::size_t n = g.dim();
	std::vector<QVec> rows;
	for (std::size_t a = k; a < n; ++a)
		rows.push_back(e(n, f.order[a]));
	for (std::size_t b = 0; b < k; ++b)
	{
		QVec r(n);
		for (std::size_t i = 0; i < n; ++i)
			r[i] = dot(xi, g.bracket(e(n, i), e(n, f.order[b])));
		rows.push_back(r);
	}
	return Subspace::span(n, kernel(QMatrix::from_rows(rows, n)));
}

JumpProfile jump_oracle(const GradedLieAlgebra &g, const JordanHolderFlag &f,
                        const Covector &xi)
{
	const std::size_t n = g.dim();
	JumpProfile p(n);
	for (std::size_t k = 1; k <= n; ++k)
	{
		Subspace s = stabilizer_oracle(g, f, xi, k);
		for (std::size_t j = 1; j <= k; ++j)
		{
			std::vector<QVec> lower = s.basis();
			for (std::size_t i = 0; i + 1 < j; ++i)
				lower.push_back(e(n, f.order[i]));
			std::vector<QVec> upper = lower;
			upper.push_back(e(n, f.order[j - 1]));
			std::size_t r0 = lower.empty() ? 0 : rank(QMatrix::from_rows(lower, n));
			if (rank(QMatrix::from_rows(upper, n)) > r0)
				p[k - 1].push_back(j);
		}
	}
	return p;
}

QMatrix random_automorphism(const GradedLieAlgebra &g, testgen::Rng &rng)
{
	const std::size_t n = g.dim();
	QVec x = rng.vec(n, 3);
	QMatrix ad = g.ad(x);
	QMatrix ex = QMatrix::identity(n), term = QMatrix::identity(n);
	for (std::size_t k = 1; k <= n; ++k)
	{
		term = Q(1, static_cast<unsigned long>(k)) * (term * ad);
		ex = ex + term;
	}
	return ex * dilation_matrix(g, rng.positive_rational(3));
}

} // namespace

TEST_CASE("coordinate Jordan-Hoelder flags")
{
	auto f = jordan_holder_basis(families::heisenberg(1));
	CHECK(f.order == std::vector<std::size_t>{2, 0, 1});
	CHECK(f.center_dim == 1);
	CHECK(jordan_holder_basis(families::engel()).order ==
	      std::vector<std::size_t>{0, 1, 2, 3});
	CHECK(jordan_holder_basis(families::quotient_chain(4)).order ==
	      std::vector<std::size_t>{4, 5, 6, 0, 1, 2, 3});
	for (auto &g : corpus())
	{
		auto fl = jordan_holder_basis(g);
		CHECK_NOTHROW(make_flag(g, fl.order));
		CHECK(fl.level(fl.center_dim) == center(g));
	}
	CHECK_THROWS_AS(make_flag(families::heisenberg(1), {0, 2, 1}), Error);
	CHECK_THROWS_AS(make_flag(families::heisenberg(1), {2, 0, 0}), Error);
}

TEST_CASE("Kirillov forms")
{
	auto g = families::heisenberg(1);
	QMatrix w = kirillov_form(g, e(3, 2));
	CHECK(w(0, 1) == 1);
	CHECK(w(1, 0) == -1);
	CHECK(rank(w) == 2);
	CHECK(kirillov_form(g, e(3, 0)).is_zero());
	CHECK(rank(kirillov_form(families::engel(), e(4, 0))) == 2);

	testgen::Rng rng(41);
	for (auto &a : corpus())
		for (int t = 0; t < 10; ++t)
		{
			QMatrix k = kirillov_form(a, rng.vec(a.dim()));
			CHECK(k.is_antisymmetric());
			CHECK(rank(k) % 2 == 0);
		}
}

TEST_CASE("stabilizers")
{
	auto g = families::heisenberg(1);
	auto f = jordan_holder_basis(g);
	CHECK(stabilizer(g, f, e(3, 2), 3) == Subspace::coordinate(3, {2}));
	CHECK(stabilizer(g, f, e(3, 0), 3) == Subspace::whole(3));
	CHECK(stabilizer(g, f, e(3, 2), 2) == Subspace::coordinate(3, {2, 0}));
	CHECK(stabilizer(g, e(3, 2)) == Subspace::coordinate(3, {2}));

	testgen::Rng rng(43);
	for (auto &a : corpus())
	{
		auto fl = jordan_holder_basis(a);
		for (int t = 0; t < 5; ++t)
		{
			Covector xi = rng.sparse_vec(a.dim());
			for (std::size_t k = 1; k <= a.dim(); ++k)
			{
				Subspace s = stabilizer(a, fl, xi, k);
				CHECK(s == stabilizer_oracle(a, fl, xi, k));
				CHECK(s.contains(center(a).intersect(fl.level(k))));
			}
			CHECK(stabilizer(a, fl, xi, a.dim()) == stabilizer(a, xi));
		}
	}
}

TEST_CASE("Pfaffian polynomials of the standard families")
{
	for (std::size_t n = 1; n <= 3; ++n)
	{
		auto g = families::heisenberg(n);
		auto pf = pfaffian_on_center_dual(g, jordan_holder_basis(g));
		Polynomial expect = var(1, 0).pow(static_cast<unsigned>(n));
		CHECK((pf.poly == expect || pf.poly == -expect));
	}
	for (std::size_t n = 1; n <= 2; ++n)
	{
		auto g = families::complex_heisenberg(n);
		auto pf = pfaffian_on_center_dual(g, jordan_holder_basis(g));
		Polynomial base = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1);
		Polynomial expect = base.pow(static_cast<unsigned>(n));
		CHECK((pf.poly == expect || pf.poly == -expect));
	}
	auto chain = families::quotient_chain(4);
	auto fc = jordan_holder_basis(chain);
	auto pf = pfaffian_on_center_dual(chain, fc);
	Polynomial x13 = var(3, 0) * var(3, 2);
	CHECK((pf.poly == x13 || pf.poly == -x13));
	CHECK(determinant_on_center_dual(chain, fc) == x13 * x13);

	auto en = families::engel();
	auto pe = pfaffian_on_center_dual(en, jordan_holder_basis(en));
	CHECK(pe.odd_codimension);
	CHECK(pe.poly.is_zero());
}

TEST_CASE("Pfaffian squares to the determinant")
{
	for (auto &g : corpus())
	{
		auto f = jordan_holder_basis(g);
		auto pf = pfaffian_on_center_dual(g, f);
		if (pf.odd_codimension)
			continue;
		CHECK_MESSAGE(pf.poly * pf.poly == determinant_on_center_dual(g, f), g.name());
		CHECK(pf.poly.is_homogeneous(static_cast<int>((g.dim() - f.center_dim) / 2)));
	}
}

TEST_CASE("Pfaffian scales with the dilation weights of the complement")
{
	testgen::Rng rng(47);
	for (auto &g : flat_corpus())
	{
		auto f = jordan_holder_basis(g);
		auto pf = pfaffian_on_center_dual(g, f);
		int wsum = 0;
		for (auto i : f.complement_indices())
			wsum += g.weights()[i];
		for (int t = 0; t < 5; ++t)
		{
			Q s = rng.positive_rational(4);
			QVec z = rng.vec(f.center_dim);
			QVec zs = z;
			for (std::size_t j = 0; j < z.size(); ++j)
			{
				Q p = 1;
				for (int k = 0; k < g.weights()[f.order[j]]; ++k)
					p *= s;
				zs[j] = p * z[j];
			}
			Q factor = 1;
			for (int k = 0; k < wsum; ++k)
				factor *= s;
			CHECK(pf.poly.evaluate(zs) == factor * pf.poly.evaluate(z));
		}
	}
}

TEST_CASE("existence of flat orbits")
{
	for (auto &g : flat_corpus())
	{
		auto v = has_flat_orbits(g);
		CHECK_MESSAGE(v.flat, g.name());
		REQUIRE(v.witness.has_value());
		CHECK(is_flat(g, *v.witness));
	}
	auto en = has_flat_orbits(families::engel());
	CHECK_FALSE(en.flat);
	CHECK(en.reason == "no flat orbits: odd codimension of center");
	CHECK_FALSE(has_flat_orbits(families::quotient_chain(3)).flat);
	CHECK_FALSE(has_flat_orbits(families::upper_triangular(3)).flat);
	CHECK_FALSE(has_flat_orbits(families::free_step2(3)).flat);
	CHECK(has_flat_orbits(families::upper_triangular(2)).flat);
}

TEST_CASE("flatness of individual covectors")
{
	auto g = families::heisenberg(1);
	CHECK(is_flat(g, e(3, 2)));
	CHECK_FALSE(is_flat(g, e(3, 0)));
	auto chain = families::quotient_chain(4);
	CHECK_FALSE(is_flat(chain, e(7, 4) + e(7, 5)));
	CHECK(is_flat(chain, e(7, 4) + e(7, 6)));

	auto f = jordan_holder_basis(g);
	CHECK(is_on_gamma_partial(g, f, {Q(1)}));
	CHECK_FALSE(is_on_gamma_partial(g, f, {Q(2)}));
	CHECK(is_on_gamma_partial(chain, jordan_holder_basis(chain), {Q(1), Q(0), Q(1)}));
}

TEST_CASE("flatness, Pfaffian and jump profile agree")
{
	testgen::Rng rng(53);
	for (auto &g : corpus())
	{
		auto f = jordan_holder_basis(g);
		auto pf = pfaffian_on_center_dual(g, f);
		const std::size_t codim = g.dim() - f.center_dim;
		for (int t = 0; t < 15; ++t)
		{
			QVec z = rng.sparse_vec(f.center_dim, 3);
			Covector xi = extend_center_dual(g, f, z);
			bool flat = is_flat(g, xi);
			CHECK(flat == (!pf.odd_codimension && pf.poly.evaluate(z) != 0));
			CHECK(flat == (jump_indices(g, f, xi).back().size() == codim));
		}
	}
}

TEST_CASE("jump indices")
{
	auto g = families::heisenberg(1);
	auto f = jordan_holder_basis(g);
	CHECK(jump_indices(g, f, e(3, 2)).back() == std::vector<std::size_t>{2, 3});
	CHECK(jump_indices(g, f, e(3, 0)).back().empty());

	testgen::Rng rng(59);
	for (auto &a : corpus())
	{
		auto fl = jordan_holder_basis(a);
		for (int t = 0; t < 8; ++t)
		{
			Covector xi = rng.sparse_vec(a.dim(), 3);
			auto p = jump_indices(a, fl, xi);
			CHECK(p == jump_oracle(a, fl, xi));
			CHECK(p.back().size() == rank(kirillov_form(a, xi)));
			CHECK(p.back().size() % 2 == 0);
		}
		auto v = has_flat_orbits(a, fl);
		if (v.flat)
		{
			std::vector<std::size_t> expect;
			for (std::size_t j = fl.center_dim + 1; j <= a.dim(); ++j)
				expect.push_back(j);
			CHECK(jump_indices(a, fl, *v.witness).back() == expect);
		}
	}
}

TEST_CASE("jump profiles are constant along coadjoint orbits")
{
	testgen::Rng rng(61);
	for (auto &a : corpus())
	{
		auto fl = jordan_holder_basis(a);
		for (int t = 0; t < 5; ++t)
		{
			Covector xi = rng.sparse_vec(a.dim(), 3);
			Covector moved = coadjoint_move(a, rng.vec(a.dim(), 3), xi);
			CHECK(jump_indices(a, fl, xi) == jump_indices(a, fl, moved));
		}
	}
}

TEST_CASE("sampled strata")
{
	auto g = families::heisenberg(1);
	auto f = jordan_holder_basis(g);
	std::vector<Covector> grid;
	for (int a = -1; a <= 1; ++a)
		for (int b = -1; b <= 1; ++b)
			for (int c = -1; c <= 1; ++c)
				grid.push_back({Q(a), Q(b), Q(c)});
	auto r = enumerate_strata(g, f, grid);
	CHECK(r.strata.size() == 2);
	CHECK(r.top_orbit_dim == 2);

	auto ch = families::complex_heisenberg(1);
	auto fc = make_flag(ch, {4, 5, 0, 1, 2, 3});
	std::vector<Covector> samples;
	testgen::Rng rng(67);
	for (int t = 0; t < 60; ++t)
	{
		QVec z = {rng.rational(3), rng.rational(3)};
		if (t % 3 == 0)
			z[0] = 0;
		if (t % 3 == 1)
			z[1] = 0;
		samples.push_back(extend_center_dual(ch, fc, z));
	}
	auto rc = enumerate_strata(ch, fc, samples);
	std::size_t flat_profiles = 0;
	for (auto &[p, xs] : rc.strata)
		if (p.back().size() == 4)
			++flat_profiles;
	CHECK(flat_profiles >= 2);

	auto ab = families::abelian(2);
	auto ra = enumerate_strata(ab, jordan_holder_basis(ab), {{1, 0}, {0, 1}, {2, 3}});
	CHECK(ra.strata.size() == 1);
	CHECK(ra.top.back().empty());
	CHECK_THROWS_AS(enumerate_strata(ab, jordan_holder_basis(ab), {}), Error);
}

TEST_CASE("Vergne polarizations")
{
	auto g = families::heisenberg(1);
	auto f = jordan_holder_basis(g);
	CHECK(vergne_polarization(g, f, e(3, 2)) == Subspace::coordinate(3, {2, 0}));

	auto chain = families::quotient_chain(4);
	auto fc = jordan_holder_basis(chain);
	Covector xi = extend_center_dual(chain, fc, {Q(1), Q(2), Q(3)});
	REQUIRE(is_flat(chain, xi));
	CHECK(vergne_polarization(chain, fc, xi) ==
	      Subspace::coordinate(7, {4, 5, 6, 0, 2}));

	for (auto base : {families::abelian(1), families::heisenberg(1), families::engel()})
	{
		auto m = mohsen_modification(base);
		auto fm = jordan_holder_basis(m);
		auto v = has_flat_orbits(m, fm);
		REQUIRE(v.flat);
		std::vector<std::size_t> expect{2 * base.dim()};
		for (std::size_t j = 0; j < base.dim(); ++j)
			expect.push_back(j);
		CHECK(vergne_polarization(m, fm, *v.witness) ==
		      Subspace::coordinate(m.dim(), expect));
	}
}

TEST_CASE("Vergne polarization properties on random covectors")
{
	testgen::Rng rng(71);
	for (auto &a : corpus())
	{
		auto fl = jordan_holder_basis(a);
		for (int t = 0; t < 8; ++t)
		{
			Covector xi = rng.sparse_vec(a.dim(), 3);
			Subspace h = vergne_polarization(a, fl, xi);
			CHECK(h.contains(stabilizer(a, xi)));
			for (auto &u : h.basis())
				for (auto &v : h.basis())
				{
					CHECK(dot(xi, a.bracket(u, v)) == 0);
					CHECK(h.contains(a.bracket(u, v)));
				}
			CHECK(2 * (a.dim() - h.dim()) == rank(kirillov_form(a, xi)));
		}
	}
}

TEST_CASE("automorphism action on the center dual")
{
	auto g = families::heisenberg(1);
	auto f = jordan_holder_basis(g);
	CHECK(aut_action_on_lambda(g, f, dilation_matrix(g, Q(3)), {Q(1)}) == QVec{9});
	CHECK(aut_action_on_lambda(g, f, QMatrix::identity(3), {Q(5)}) == QVec{5});
	QMatrix bad = QMatrix::identity(3);
	bad(2, 2) = 2;
	CHECK_THROWS_AS(aut_action_on_lambda(g, f, bad, {Q(1)}), Error);

	testgen::Rng rng(73);
	for (auto &a : flat_corpus())
	{
		auto fl = jordan_holder_basis(a);
		for (int t = 0; t < 5; ++t)
		{
			QMatrix m1 = random_automorphism(a, rng), m2 = random_automorphism(a, rng);
			REQUIRE(is_automorphism(a, m1));
			QVec z = rng.vec(fl.center_dim);
			CHECK(aut_action_on_lambda(a, fl, m1 * m2, z) ==
			      aut_action_on_lambda(a, fl, m2, aut_action_on_lambda(a, fl, m1, z)));
			Covector xi = extend_center_dual(a, fl, z);
			Covector moved =
			    extend_center_dual(a, fl, aut_action_on_lambda(a, fl, m1, z));
			CHECK(is_flat(a, xi) == is_flat(a, moved));
		}
	}
}

TEST_CASE("central cocycle")
{
	auto g = families::heisenberg(1);
	auto f = jordan_holder_basis(g);
	CHECK(central_cocycle(g, f, e(3, 0), e(3, 1)) == QVec{0, 0, Q(1, 2)});

	// tau(x) tau(y) tau(xy)^{-1} in the faithful matrix model
	auto mm = oracle::heisenberg_model(1);
	auto model_cocycle = [&](const QVec &x, const QVec &y) {
		QVec p = complement_part(f, mm.bch(x, y));
		QMatrix prod = oracle::nilpotent_exp(mm.of(x)) * oracle::nilpotent_exp(mm.of(y)) *
		               oracle::nilpotent_exp(mm.of(-p));
		return mm.coordinates(oracle::unipotent_log(prod));
	};
	testgen::Rng rng(79);
	for (int t = 0; t < 20; ++t)
	{
		QVec x = complement_part(f, rng.vec(3)), y = complement_part(f, rng.vec(3));
		CHECK(central_cocycle(g, f, x, y) == model_cocycle(x, y));
	}

	for (auto &a : corpus())
	{
		auto fl = jordan_holder_basis(a);
		for (int t = 0; t < 10; ++t)
		{
			QVec x = complement_part(fl, rng.vec(a.dim(), 3));
			QVec y = complement_part(fl, rng.vec(a.dim(), 3));
			QVec z = complement_part(fl, rng.vec(a.dim(), 3));
			CHECK(is_zero(central_cocycle(a, fl, x, zero_vec(a.dim()))));
			CHECK(is_zero(central_cocycle(a, fl, zero_vec(a.dim()), y)));
			QVec xy = complement_part(fl, bch(a, x, y));
			QVec yz = complement_part(fl, bch(a, y, z));
			CHECK(central_cocycle(a, fl, x, y) + central_cocycle(a, fl, xy, z) ==
			      central_cocycle(a, fl, x, yz) + central_cocycle(a, fl, y, z));
		}
	}
}

TEST_CASE("reduced form is nondegenerate")
{
	testgen::Rng rng(83);
	for (auto &a : corpus())
		for (int t = 0; t < 5; ++t)
		{
			Covector xi = rng.sparse_vec(a.dim(), 3);
			auto r = reduced_form(a, xi);
			CHECK(r.basis_indices.size() == rank(kirillov_form(a, xi)));
			CHECK(rank(r.form) == r.basis_indices.size());
		}
}
