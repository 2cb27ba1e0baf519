#include "generators.hpp"
#include "oracles.hpp"

#include "nilcalc/errors.hpp"
#include "nilcalc/families.hpp"
#include "nilcalc/liealg.hpp"

#include <doctest.h>

using namespace nilcalc;

namespace {

GradedLieAlgebra h1() { return families::heisenberg(1); }

std::vector<GradedLieAlgebra> corpus()
{
	return {families::heisenberg(1),         families::heisenberg(2),
	        families::complex_heisenberg(1), families::heisenberg_product({1, 2}),
	        families::quotient_chain(3),     families::quotient_chain(4),
	        families::free_step2(3),         families::engel(),
	        families::upper_triangular(3),   families::abelian(3)};
}

bool has_axiom(const std::vector<Diagnostic> &d, Axiom a)
{
	for (auto &x : d)
		if (x.axiom == a)
			return true;
	return false;
}

QVec e(std::size_t n, std::size_t i) { return unit_vec(n, i); }

// X_1 .. X_8 with [X_1, X_i] = X_{i+1}: step 7
GradedLieAlgebra filiform8()
{
	std::vector<BracketEntry> ent;
	for (std::size_t i = 1; i + 1 < 8; ++i)
		ent.push_back({0, i, i + 1, Q(1)});
	return GradedLieAlgebra("filiform-8", {1, 1, 2, 3, 4, 5, 6, 7}, ent);
}

} // namespace

TEST_CASE("validate accepts the standard examples")
{
	CHECK(validate(h1()).empty());
	CHECK(validate(families::engel()).empty());
	for (auto &g : corpus())
		CHECK_MESSAGE(validate(g).empty(), g.name());
}

TEST_CASE("validate reports a grading violation with its indices")
{
	GradedLieAlgebra g("bad", {1, 1, 3}, {{0, 1, 2, Q(1)}}, {"X", "Y", "Z"});
	auto d = validate(g);
	REQUIRE(d.size() == 1);
	CHECK(d[0].axiom == Axiom::grading);
	CHECK(d[0].indices == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("validate reports antisymmetry and Jacobi failures")
{
	std::vector<Q> t(27);
	t[(0 * 3 + 1) * 3 + 2] = 1;
	t[(1 * 3 + 0) * 3 + 2] = 1;
	auto d = validate(GradedLieAlgebra::from_table("sym", {1, 1, 2}, t));
	CHECK(has_axiom(d, Axiom::antisymmetry));

	// [X1,X2]=X3, [X2,X3]=X1, [X3,X1]=X2 in so(3) is not nilpotent
	GradedLieAlgebra so3("so3", {1, 1, 1},
	                     {{0, 1, 2, Q(1)}, {1, 2, 0, Q(1)}, {2, 0, 1, Q(1)}});
	auto d2 = validate(so3);
	CHECK(has_axiom(d2, Axiom::nilpotency));
	CHECK(has_axiom(d2, Axiom::grading));
	CHECK_FALSE(has_axiom(d2, Axiom::jacobi));

	// [A,B]=C, [B,C]=D, [A,D]=D: the Jacobiator on (A,B,C) is [A,D] = D
	GradedLieAlgebra broken("broken", {1, 1, 2, 3},
	                        {{0, 1, 2, Q(1)}, {1, 2, 3, Q(1)}, {0, 3, 3, Q(1)}});
	CHECK(has_axiom(validate(broken), Axiom::jacobi));
}

TEST_CASE("malformed bracket tables are rejected")
{
	CHECK_THROWS_AS(GradedLieAlgebra("x", {1, 1}, {{0, 1, 5, Q(1)}}), Error);
	CHECK_THROWS_AS(GradedLieAlgebra("x", {1, 0}, {}), Error);
	CHECK_THROWS_AS(GradedLieAlgebra::from_table("x", {1, 1}, std::vector<Q>(3)),
	                Error);
}

TEST_CASE("center of the standard examples")
{
	CHECK(center(h1()) == Subspace::coordinate(3, {2}));
	CHECK(center(families::quotient_chain(3)) == Subspace::coordinate(5, {3, 4}));
	CHECK(center(families::engel()) == Subspace::coordinate(4, {0}));
	CHECK(center(families::upper_triangular(3)).dim() == 1);
}

TEST_CASE("center is the radical of the adjoint map")
{
	for (auto &g : corpus())
	{
		const std::size_t n = g.dim();
		QMatrix adj(n * n, n);
		for (std::size_t i = 0; i < n; ++i)
		{
			QMatrix a = g.ad(e(n, i));
			for (std::size_t r = 0; r < n; ++r)
				for (std::size_t c = 0; c < n; ++c)
					adj(r * n + c, i) = a(r, c);
		}
		CHECK(center(g).dim() == n - rank(adj));
		Subspace z_sub = center(g);
		for (auto &z : z_sub.basis())
			for (std::size_t i = 0; i < n; ++i)
				CHECK(is_zero(g.bracket(z, e(n, i))));
	}
}

TEST_CASE("descending central series and step length")
{
	auto cs = descending_central_series(h1());
	REQUIRE(cs.terms.size() == 3);
	CHECK(cs.step == 2);
	CHECK(cs.terms[1] == Subspace::coordinate(3, {2}));
	CHECK(cs.terms[2].dim() == 0);

	auto ce = descending_central_series(families::engel());
	CHECK(ce.terms.size() == 4);
	CHECK(ce.step == 3);

	auto ca = descending_central_series(families::abelian(3));
	CHECK(ca.terms.size() == 2);
	CHECK(ca.step == 1);

	GradedLieAlgebra so3("so3", {1, 1, 1},
	                     {{0, 1, 2, Q(1)}, {1, 2, 0, Q(1)}, {2, 0, 1, Q(1)}});
	CHECK_THROWS_AS(descending_central_series(so3), Error);
}

TEST_CASE("dilations")
{
	auto g = h1();
	CHECK(dilation_apply(g, Q(2), e(3, 0)) == QVec{2, 0, 0});
	CHECK(dilation_apply(g, Q(2), e(3, 2)) == QVec{0, 0, 4});
	CHECK_THROWS_AS(dilation_apply(g, Q(0), e(3, 0)), Error);
	CHECK_THROWS_AS(dilation_apply(g, Q(-1), e(3, 0)), Error);
	auto d = dilation_apply(g, 0.5, std::vector<double>{1, 1, 1});
	CHECK(d[2] == doctest::Approx(0.25));

	testgen::Rng rng(11);
	auto en = families::engel();
	for (int trial = 0; trial < 100; ++trial)
	{
		Q t = rng.positive_rational(4);
		QVec x = rng.vec(4), y = rng.vec(4);
		CHECK(dilation_apply(en, t, en.bracket(x, y)) ==
		      en.bracket(dilation_apply(en, t, x), dilation_apply(en, t, y)));
		Q s = rng.positive_rational(4);
		CHECK(dilation_apply(en, s, dilation_apply(en, t, x)) ==
		      dilation_apply(en, s * t, x));
	}
	for (auto &g2 : corpus())
		CHECK(is_graded_automorphism(g2, dilation_matrix(g2, Q(3, 2))));
}

TEST_CASE("Jacobi cyclic sum vanishes on random vectors")
{
	testgen::Rng rng(5);
	for (auto &g : corpus())
		for (int trial = 0; trial < 20; ++trial)
		{
			QVec x = rng.vec(g.dim()), y = rng.vec(g.dim()), z = rng.vec(g.dim());
			QVec s = g.bracket(x, g.bracket(y, z)) + g.bracket(y, g.bracket(z, x)) +
			         g.bracket(z, g.bracket(x, y));
			CHECK(is_zero(s));
		}
}

TEST_CASE("bch closed forms")
{
	auto g = h1();
	CHECK(bch(g, e(3, 0), e(3, 1)) == QVec{1, 1, Q(1, 2)});
	testgen::Rng rng(3);
	for (auto &a : corpus())
	{
		QVec x = rng.vec(a.dim());
		CHECK(is_zero(bch(a, x, -x)));
		CHECK(bch(a, x, zero_vec(a.dim())) == x);
	}
	// step-2 closed form X + Y + [X,Y]/2
	for (auto &a : corpus())
	{
		if (descending_central_series(a).step > 2)
			continue;
		for (int trial = 0; trial < 20; ++trial)
		{
			QVec x = rng.vec(a.dim()), y = rng.vec(a.dim());
			CHECK(bch(a, x, y) == x + y + Q(1, 2) * a.bracket(x, y));
		}
	}
}

TEST_CASE("bch on Engel agrees with the order-3 Dynkin expansion")
{
	auto g = families::engel();
	auto check = [&](const QVec &x, const QVec &y) {
		QVec xy = g.bracket(x, y);
		QVec expected = x + y + Q(1, 2) * xy + Q(1, 12) * g.bracket(x, xy) -
		                Q(1, 12) * g.bracket(y, xy);
		CHECK(bch(g, x, y) == expected);
	};
	check(e(4, 3), e(4, 2));
	testgen::Rng rng(17);
	for (int trial = 0; trial < 50; ++trial)
		check(rng.vec(4), rng.vec(4));
}

TEST_CASE("bch agrees with exact exp/log in faithful matrix models")
{
	struct Case
	{
		GradedLieAlgebra g;
		oracle::MatrixModel m;
	};
	std::vector<Case> cases = {
	    {families::heisenberg(2), oracle::heisenberg_model(2)},
	    {families::upper_triangular(3), oracle::upper_triangular_model(3)},
	    {families::upper_triangular(4), oracle::upper_triangular_model(4)},
	    {families::engel(), oracle::engel_model()},
	};
	testgen::Rng rng(23);
	for (auto &c : cases)
	{
		REQUIRE(oracle::model_is_homomorphism(c.g, c.m));
		for (int trial = 0; trial < 15; ++trial)
		{
			QVec x = rng.vec(c.g.dim(), 3), y = rng.vec(c.g.dim(), 3);
			CHECK(bch(c.g, x, y) == c.m.bch(x, y));
		}
	}
}

TEST_CASE("bch is associative")
{
	testgen::Rng rng(29);
	for (auto &g : corpus())
		for (int trial = 0; trial < 10; ++trial)
		{
			QVec x = rng.vec(g.dim()), y = rng.vec(g.dim()), z = rng.vec(g.dim());
			CHECK(bch(g, bch(g, x, y), z) == bch(g, x, bch(g, y, z)));
		}
}

TEST_CASE("bch rejects step beyond the coefficient table")
{
	auto f = filiform8();
	REQUIRE(validate(f).empty());
	CHECK(descending_central_series(f).step == 7);
	try
	{
		bch(f, e(8, 0), e(8, 1));
		FAIL("expected an error");
	}
	catch (const Error &err)
	{
		CHECK(err.kind() == ErrorKind::unsupported_step);
	}
}

TEST_CASE("step-2 normal form")
{
	auto nf = step2_normal_form(h1());
	REQUIRE(nf.forms.size() == 1);
	QMatrix j(2, 2);
	j(0, 1) = 1;
	j(1, 0) = -1;
	CHECK(nf.forms[0] == j);
	CHECK(nf.inner_product == "standard");

	auto chain = step2_normal_form(families::quotient_chain(4));
	REQUIRE(chain.forms.size() == 3);
	for (std::size_t k = 0; k < 3; ++k)
	{
		CHECK(chain.forms[k].is_antisymmetric());
		for (std::size_t a = 0; a < 4; ++a)
			for (std::size_t b = 0; b < 4; ++b)
				if (a > b + 1 || b > a + 1)
					CHECK(chain.forms[k](a, b) == 0);
	}

	auto free3 = step2_normal_form(families::free_step2(3));
	CHECK(free3.forms.size() == 3);
	CHECK(free3.derived == center(families::free_step2(3)));

	CHECK_THROWS_AS(step2_normal_form(families::engel()), Error);
}

TEST_CASE("step-2 normal form round trip and independence")
{
	for (auto &g : corpus())
	{
		if (descending_central_series(g).step > 2)
			continue;
		auto nf = step2_normal_form(g);
		const std::size_t q = nf.v_basis.size(), p = nf.derived_basis.size();
		CHECK(q + p == g.dim());
		for (std::size_t a = 0; a < q; ++a)
			for (std::size_t b = 0; b < q; ++b)
			{
				QVec rebuilt = zero_vec(g.dim());
				for (std::size_t k = 0; k < p; ++k)
					rebuilt = rebuilt + nf.forms[k](a, b) * nf.derived_basis[k];
				CHECK(rebuilt == g.bracket(nf.v_basis[a], nf.v_basis[b]));
			}
		if (p > 0)
		{
			QMatrix flat(p, q * q);
			for (std::size_t k = 0; k < p; ++k)
				for (std::size_t a = 0; a < q; ++a)
					for (std::size_t b = 0; b < q; ++b)
						flat(k, a * q + b) = nf.forms[k](a, b);
			CHECK(rank(flat) == p);
		}
	}
}

TEST_CASE("graded automorphisms")
{
	auto g = h1();
	CHECK(is_graded_automorphism(g, QMatrix::identity(3)));
	QMatrix m = QMatrix::identity(3);
	m(0, 0) = 2;
	m(2, 2) = 2;
	CHECK(is_graded_automorphism(g, m));
	QMatrix bad = QMatrix::identity(3);
	bad(2, 2) = 2;
	CHECK_FALSE(is_graded_automorphism(g, bad));
	CHECK_FALSE(is_graded_automorphism(g, QMatrix(3, 3)));
	QMatrix mixing = QMatrix::identity(3);
	mixing(2, 0) = 1; // X -> X + Z is an automorphism but not graded
	CHECK(is_automorphism(g, mixing));
	CHECK_FALSE(is_graded_automorphism(g, mixing));
}

TEST_CASE("Mohsen modification")
{
	auto m1 = mohsen_modification(families::abelian(1));
	CHECK(m1.dim() == 3);
	CHECK(validate(m1).empty());
	CHECK(center(m1) == Subspace::coordinate(3, {2}));
	CHECK(m1.bracket_basis(1, 0) == QVec{0, 0, 1});
	CHECK(descending_central_series(m1).step == 2);

	auto mh = mohsen_modification(h1());
	CHECK(mh.dim() == 7);
	CHECK(validate(mh).empty());
	CHECK(center(mh).dim() == 1);
	CHECK(descending_central_series(mh).step == 3);

	for (auto &g : corpus())
	{
		auto m = mohsen_modification(g);
		CHECK_MESSAGE(validate(m).empty(), g.name());
		CHECK(center(m).dim() == 1);
		CHECK(descending_central_series(m).step ==
		      descending_central_series(g).step + 1);
	}
}
