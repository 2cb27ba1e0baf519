#include "generators.hpp"

#include "nilcalc/errors.hpp"
#include "nilcalc/families.hpp"
#include "nilcalc/hellip.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

using namespace nilcalc;

namespace {

BvEOperatorSpec spec_for(GradedLieAlgebra g, std::vector<Eigen::MatrixXcd> forms,
                         std::size_t rank = 1)
{
	BvEOperatorSpec s;
	std::size_t w1 = 0;
	for (int w : g.weights())
		w1 += w == 1;
	s.algebra = std::move(g);
	s.metric = QMatrix::identity(w1);
	s.gamma_forms = std::move(forms);
	s.rank = rank;
	return s;
}

Eigen::MatrixXcd scalar(cplx c)
{
	Eigen::MatrixXcd m(1, 1);
	m(0, 0) = c;
	return m;
}

// Heisenberg plus a second central direction in weight 2
GradedLieAlgebra heisenberg_plus_line()
{
	return GradedLieAlgebra("h1+R", {1, 1, 2, 2}, {{0, 1, 2, Q(1)}});
}

double sigma_min(const Eigen::MatrixXcd &m)
{
	Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
	return svd.singularValues().minCoeff();
}

LadderTrend brute_force(const BvEOperatorSpec &spec, const QVec &xi, int max_n)
{
	auto g = spec.algebra;
	auto rep = flat_rep(g, jordan_holder_basis(g), extend_to_algebra(spec, xi), spec.metric);
	return classify_ladder(rockland_bruteforce(rep, bve_symbol(spec), default_ladder(max_n)));
}

QMatrix random_form(testgen::Rng &rng, std::size_t n)
{
	for (;;)
	{
		QMatrix m(n, n);
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = i + 1; j < n; ++j)
			{
				m(i, j) = rng.rational(3);
				m(j, i) = -m(i, j);
			}
		if (std::abs(determinant(m).get_d()) > 0.25)
			return m;
	}
}

GradedLieAlgebra from_form(const QMatrix &omega)
{
	const std::size_t n = omega.rows();
	std::vector<int> w(n, 1);
	w.push_back(2);
	std::vector<BracketEntry> e;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			if (omega(i, j) != 0)
				e.push_back({i, j, n, omega(i, j)});
	return GradedLieAlgebra("form", w, e);
}

} // namespace

TEST_CASE("operator spec validation and Levi form")
{
	testgen::Rng rng(1);
	for (auto g : {families::heisenberg(2), families::complex_heisenberg(1),
	               families::free_step2(3), families::quotient_chain(3)})
	{
		std::size_t dz = 0;
		for (int w : g.weights())
			dz += w == 2;
		auto spec = spec_for(g, std::vector<Eigen::MatrixXcd>(dz, scalar(0)));
		CHECK_NOTHROW(validate_spec(spec));
		for (int t = 0; t < 10; ++t)
		{
			QVec xi(dz);
			for (auto &v : xi)
				v = rng.rational(3);
			QMatrix k = kirillov_form(g, extend_to_algebra(spec, xi));
			QMatrix om = levi_form(spec, xi);
			QMatrix restricted = k.block(0, 0, om.rows(), om.cols());
			CHECK(om == restricted);
		}
	}
	CHECK_THROWS_AS(validate_spec(spec_for(families::engel(), {scalar(0)})), Error);
	GradedLieAlgebra weight_one_center("h1+W", {1, 1, 1, 2}, {{0, 1, 3, Q(1)}});
	CHECK_THROWS_AS(validate_spec(spec_for(weight_one_center, {scalar(0)})), Error);
	auto h = spec_for(families::heisenberg(1), {scalar(0), scalar(0)});
	CHECK_THROWS_AS(validate_spec(h), Error);
	auto bad_metric = spec_for(families::heisenberg(1), {scalar(0)});
	bad_metric.metric(0, 0) = -1;
	CHECK_THROWS_AS(validate_spec(bad_metric), Error);
	auto spec = heisenberg_scalar_spec(1, 0);
	CHECK_THROWS_AS(check_bve_at(spec, {Q(0)}), Error);
}

TEST_CASE("closed-form verdicts on the Heisenberg group")
{
	auto lap = heisenberg_scalar_spec(1, 0);
	auto r = check_bve_at(lap, {Q(1)});
	CHECK(r.full_rank);
	CHECK(r.verdict == Verdict::elliptic);
	CHECK(r.cutoff == 1);
	CHECK(r.layers.size() == 2);
	CHECK(r.layers[0].sigma_min == doctest::Approx(1));

	auto cancel = heisenberg_scalar_spec(1, -1);
	auto c = check_bve_at(cancel, {Q(1)});
	CHECK(c.verdict == Verdict::not_elliptic);
	REQUIRE(c.witness);
	CHECK(c.witness->layer == 0);
	CHECK(c.witness->kernel_dim == 1);
	// the witness reproduces through gamma_k
	QMatrix om = levi_form(cancel, c.witness->xi);
	CHECK(sigma_min(gamma_k(om, cancel.metric, gamma_at(cancel, c.witness->xi), 0)) < 1e-12);
	// brute force: smallest singular value of the represented symbol
	CHECK(brute_force(cancel, {Q(1)}, 16) == LadderTrend::decaying);
	CHECK(brute_force(lap, {Q(1)}, 16) == LadderTrend::stable);

	// exactly on the band edge the verdict is not rounded
	auto near = heisenberg_scalar_spec(1, -1 + 5e-6);
	CHECK(check_bve_at(near, {Q(1)}, 1e-6).verdict == Verdict::undetermined);
}

TEST_CASE("degenerate branch")
{
	auto chain = spec_for(families::quotient_chain(3), {scalar(0), scalar(0)});
	testgen::Rng rng(2);
	for (int t = 0; t < 20; ++t)
	{
		QVec xi{rng.rational(3), rng.rational(3)};
		if (is_zero(xi))
			continue;
		auto r = check_bve_at(chain, xi);
		CHECK_FALSE(r.full_rank);
		CHECK(r.layers.empty());
		CHECK(r.threshold > 0);
		CHECK(r.verdict == Verdict::elliptic);
	}

	auto hr = spec_for(heisenberg_plus_line(), {scalar(0), scalar(0)});
	auto zero = check_bve_at(hr, {Q(0), Q(1)});
	CHECK_FALSE(zero.full_rank);
	CHECK(zero.threshold_zero);
	CHECK(zero.threshold == 0);
	CHECK(zero.verdict == Verdict::not_elliptic);
	REQUIRE(zero.witness);
	CHECK(zero.witness->layer == -1);
	CHECK(check_bve_at(hr, {Q(1), Q(1)}).full_rank);

	// real eigenvalues of gamma beyond the threshold
	auto shifted = spec_for(families::quotient_chain(3), {scalar(5), scalar(0)});
	auto s = check_bve_at(shifted, {Q(1), Q(0)});
	CHECK(s.threshold == doctest::Approx(1));
	CHECK(s.verdict == Verdict::not_elliptic);
	auto rotated = spec_for(families::quotient_chain(3), {scalar(cplx(0, 5)), scalar(0)});
	CHECK(check_bve_at(rotated, {Q(1), Q(0)}).verdict == Verdict::elliptic);
	auto small = spec_for(families::quotient_chain(3), {scalar(Q(1, 2).get_d()), scalar(0)});
	CHECK(check_bve_at(small, {Q(1), Q(0)}).verdict == Verdict::elliptic);
}

TEST_CASE("Heisenberg sphere check with scalar gamma")
{
	RocklandCheckConfig cfg;
	for (double c : {0.0, 0.5, -0.5, 1.0, -1.0, 2.5, -2.5, 3.0, -3.0, 7.0, -7.0, 5.0})
	{
		auto spec = heisenberg_scalar_spec(1, c);
		auto rep = check_bve_sphere(spec, cfg);
		CHECK(rep.exhaustive);
		CHECK(rep.samples.size() == 2);
		bool resonant = std::abs(std::fmod(std::abs(c), 2.0) - 1) < 1e-12;
		CHECK((rep.verdict == Verdict::not_elliptic) == resonant);
		CHECK(rep.witnesses.empty() != resonant);
		for (auto &s : rep.samples)
		{
			auto trend = brute_force(spec, s.xi, 24);
			if (s.verdict == Verdict::not_elliptic)
			{
				CHECK(trend == LadderTrend::decaying);
				// layer value 2k + 1 + c xi vanishes at k = (|c| - 1) / 2
				CHECK(s.witness->layer == static_cast<int>((std::abs(c) - 1) / 2));
				CHECK(s.xi[0] * Q(c) < 0);
			}
			else
				CHECK(trend == LadderTrend::stable);
		}
	}
}

TEST_CASE("rockland brute force")
{
	auto g = families::heisenberg(1);
	auto rep = flat_rep(g, jordan_holder_basis(g), Covector{0, 0, 1});
	auto lap = sub_laplacian(g, standard_metric(g));
	auto ladder = rockland_bruteforce(rep, lap, default_ladder(24));
	CHECK(ladder.size() == 4);
	for (auto &p : ladder)
		CHECK(p.sigma_min == doctest::Approx(1).epsilon(1e-9));
	CHECK(classify_ladder(ladder) == LadderTrend::stable);

	PBWSymbol dirac;
	dirac.degree = 2;
	dirac.rank = 2;
	for (auto &t : lap.terms)
		dirac.add(t.coeff(0, 0), t.alpha);
	Eigen::MatrixXcd iz = Eigen::MatrixXcd::Zero(2, 2);
	iz(0, 0) = cplx(0, 1);
	iz(1, 1) = cplx(0, -1);
	dirac.add(iz, {0, 0, 1});
	auto dl = rockland_bruteforce(rep, dirac, default_ladder(24));
	CHECK(classify_ladder(dl) == LadderTrend::decaying);
	CHECK(dl.back().fiber == 0);
	CHECK(dl.back().hermite == std::vector<int>{0});

	PBWSymbol zero;
	zero.degree = 2;
	for (auto &p : rockland_bruteforce(rep, zero, {4, 8}))
		CHECK(p.sigma_min == 0);
	CHECK(default_ladder(24) == std::vector<int>{6, 12, 18, 24});
	CHECK(default_ladder(5) == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("Engel gamma criterion")
{
	auto i2 = Eigen::MatrixXcd::Identity(2, 2);
	CHECK(check_engel_gamma(cplx(0, 1) * i2).holds);
	CHECK_FALSE(check_engel_gamma(Eigen::MatrixXcd::Zero(2, 2)).holds);
	CHECK_FALSE(check_engel_gamma(scalar(1)).holds);
	auto edge = check_engel_gamma(scalar(cplx(0, 0.5)));
	CHECK(edge.undetermined);

	testgen::Rng rng(3);
	for (int t = 0; t < 200; ++t)
	{
		const int n = rng.integer(1, 4);
		Eigen::VectorXcd mu(n);
		bool expected = true;
		for (int i = 0; i < n; ++i)
		{
			double re = rng.integer(0, 2) == 0 ? 0.0 : rng.normal();
			double im = 2 * rng.normal();
			mu(i) = cplx(re, im);
			if (re != 0 || std::abs(im) < 0.5)
				expected = false;
		}
		Eigen::MatrixXcd p = Eigen::MatrixXcd::Random(n, n) + 3 * Eigen::MatrixXcd::Identity(n, n);
		Eigen::MatrixXcd m = p * mu.asDiagonal() * p.inverse();
		auto r = check_engel_gamma(m, 1e-7);
		if (!r.undetermined)
			CHECK(r.holds == expected);
		// false exactly when some eigenvalue is inside S0 with margin
		bool inside = false;
		for (cplx e : r.eigenvalues)
			if (std::abs(e.real()) > 1e-7 || std::abs(e.imag()) < 0.5 - 1e-7)
				inside = true;
		CHECK(r.holds == !inside);
	}
}

TEST_CASE("fiber kernel report")
{
	RocklandCheckConfig cfg;
	CHECK(fiber_kernel_report(heisenberg_scalar_spec(1, 0), {Q(1)}, cfg).empty());
	auto k0 = fiber_kernel_report(heisenberg_scalar_spec(1, -1), {Q(1)}, cfg);
	REQUIRE(k0.size() == 1);
	CHECK(k0[0].k == 0);
	CHECK(k0[0].kernel_dim == 1);
	auto k1 = fiber_kernel_report(heisenberg_scalar_spec(1, -3), {Q(1)}, cfg);
	REQUIRE(k1.size() == 1);
	CHECK(k1[0].k == 1);
	CHECK(k1[0].kernel_dim == 1);
	// on h_2 the layer 2k + 2 = 4 has dimension 2
	auto h2 = fiber_kernel_report(heisenberg_scalar_spec(2, -4), {Q(1)}, cfg);
	REQUIRE(h2.size() == 1);
	CHECK(h2[0].k == 1);
	CHECK(h2[0].kernel_dim == 2);
	auto chain = spec_for(families::quotient_chain(3), {scalar(0), scalar(0)});
	CHECK_THROWS_AS(fiber_kernel_report(chain, {Q(1), Q(0)}, cfg), Error);
	RocklandCheckConfig bad;
	bad.truncation = 2;
	CHECK_THROWS_AS(fiber_kernel_report(heisenberg_scalar_spec(1, 0), {Q(1)}, bad), Error);
}

TEST_CASE("layer cutoff soundness")
{
	CHECK(layer_cutoff(0, 1, 1) == 1);
	CHECK(layer_cutoff(0, 5, 1) == 0);
	CHECK(layer_cutoff(3, 1, 1) == 2);
	testgen::Rng rng(4);
	for (int t = 0; t < 20; ++t)
	{
		QMatrix omega = random_form(rng, 4);
		BvEOperatorSpec spec;
		spec.algebra = from_form(omega);
		spec.metric = QMatrix::identity(4);
		spec.rank = 2;
		Eigen::MatrixXcd g = Eigen::MatrixXcd::Random(2, 2) * 6.0;
		spec.gamma_forms = {g};
		QVec xi{rng.positive_rational(2)};
		auto r = check_bve_at(spec, xi);
		QMatrix om = levi_form(spec, xi);
		auto mu = symplectic_eigenvalues(om, spec.metric);
		double half = mu[0] + mu[1];
		Eigen::MatrixXcd gam = gamma_at(spec, xi);
		for (int k = r.cutoff + 1; k <= r.cutoff + 3; ++k)
		{
			double bound = 2 * k * mu[0] + half - r.gamma_norm;
			CHECK(bound > 0);
			CHECK(sigma_min(gamma_k(om, spec.metric, gam, k)) >= bound - 1e-9);
		}
	}
}

TEST_CASE("verdict is invariant under positive scaling")
{
	testgen::Rng rng(6);
	for (int t = 0; t < 20; ++t)
	{
		double c = rng.integer(-4, 4);
		auto spec = heisenberg_scalar_spec(2, c);
		QVec xi{Q(rng.integer(1, 3) * (rng.integer(0, 1) ? 1 : -1))};
		Q s = rng.positive_rational(4);
		auto a = check_bve_at(spec, xi), b = check_bve_at(spec, {s * xi[0]});
		CHECK(a.verdict == b.verdict);
		REQUIRE(a.layers.size() == b.layers.size());
		for (std::size_t i = 0; i < a.layers.size(); ++i)
			CHECK(a.layers[i].sigma_min == doctest::Approx(b.layers[i].sigma_min));
	}
}

TEST_CASE("closed form agrees with brute force on random two-dimensional fibers")
{
	testgen::Rng rng(7);
	int singular = 0;
	for (int t = 0; t < 12; ++t)
	{
		QMatrix omega = random_form(rng, 4);
		auto spec = spec_for(from_form(omega), {scalar(0)});
		auto mu = symplectic_eigenvalues(omega, spec.metric);
		// every other instance sits exactly on a layer eigenvalue
		double c = -(mu[0] + mu[1]) - 2 * rng.integer(0, 2) * mu[rng.integer(0, 1)];
		if (t % 2)
			c += 0.37;
		spec.gamma_forms = {scalar(c)};
		auto r = check_bve_at(spec, {Q(1)});
		auto trend = brute_force(spec, {Q(1)}, 24);
		if (r.verdict == Verdict::not_elliptic)
		{
			++singular;
			CHECK(trend == LadderTrend::decaying);
		}
		else
		{
			CHECK(r.verdict == Verdict::elliptic);
			CHECK(trend == LadderTrend::stable);
		}
	}
	CHECK(singular == 6);
}

TEST_CASE("sphere sampling and aggregation")
{
	auto p2 = sphere_points(2, 8, 1);
	CHECK(p2.size() == 8);
	for (auto dim : {2, 3, 5})
		for (auto &p : sphere_points(static_cast<std::size_t>(dim), 20, 9))
		{
			double s = 0;
			for (double x : p)
				s += x * x;
			CHECK(s == doctest::Approx(1));
		}
	CHECK(sphere_points(5, 10, 3) == sphere_points(5, 10, 3));
	CHECK(sphere_points(1, 50, 3).size() == 2);

	// complex Heisenberg: layers 2k + 2 on the unit sphere
	auto g = families::complex_heisenberg(1);
	auto good = spec_for(g, {scalar(cplx(0, 3)), scalar(cplx(0, -1))});
	RocklandCheckConfig cfg;
	cfg.resolution = 12;
	auto rg = check_bve_sphere(good, cfg);
	CHECK_FALSE(rg.exhaustive);
	CHECK(rg.verdict == Verdict::elliptic);
	for (auto &s : rg.samples)
		for (auto &l : s.layers)
			CHECK(l.verdict == Verdict::elliptic);

	auto bad = spec_for(g, {scalar(-2), scalar(0)});
	for (int res : {4, 8, 16})
	{
		cfg.resolution = res;
		auto rb = check_bve_sphere(bad, cfg);
		CHECK(rb.verdict == Verdict::not_elliptic);
		REQUIRE_FALSE(rb.witnesses.empty());
		CHECK(rb.witnesses[0].xi == QVec{Q(1), Q(0)});
		CHECK(rb.witnesses[0].layer == 0);
		bool agrees = true;
		for (auto &s : rb.samples)
		{
			bool all_ok = true;
			for (auto &l : s.layers)
				all_ok = all_ok && l.verdict == Verdict::elliptic;
			agrees = agrees && (all_ok == (s.verdict == Verdict::elliptic));
		}
		CHECK(agrees);
	}

	cfg.resolution = 16;
	cfg.threads = 4;
	auto par = check_bve_sphere(bad, cfg);
	cfg.threads = 1;
	auto seq = check_bve_sphere(bad, cfg);
	REQUIRE(par.samples.size() == seq.samples.size());
	for (std::size_t i = 0; i < par.samples.size(); ++i)
	{
		CHECK(par.samples[i].xi == seq.samples[i].xi);
		CHECK(par.samples[i].verdict == seq.samples[i].verdict);
	}
}
