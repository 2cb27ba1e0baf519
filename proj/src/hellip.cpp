#include "nilcalc/hellip.hpp"

#include "nilcalc/errors.hpp"
#include "nilcalc/families.hpp"
#include "nilcalc/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace nilcalc {

namespace {

std::vector<std::size_t> indices_of_weight(const GradedLieAlgebra &g, int w)
{
	std::vector<std::size_t> out;
	for (std::size_t i = 0; i < g.dim(); ++i)
		if (g.weights()[i] == w)
			out.push_back(i);
	return out;
}

double norm(const QVec &xi)
{
	double s = 0;
	for (auto &v : xi)
		s += v.get_d() * v.get_d();
	return std::sqrt(s);
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd &m)
{
	Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
	return svd.singularValues();
}

// Tr|omega| / 2 relative to the metric
double half_trace(const QMatrix &omega, const QMatrix &metric)
{
	Eigen::MatrixXd mhi = inverse_sqrt(to_eigen(metric));
	Eigen::MatrixXd b = mhi * to_eigen(omega) * mhi;
	Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
	return svd.singularValues().sum() / 2;
}

Verdict combine(Verdict a, Verdict b)
{
	if (a == Verdict::not_elliptic || b == Verdict::not_elliptic)
		return Verdict::not_elliptic;
	if (a == Verdict::undetermined || b == Verdict::undetermined)
		return Verdict::undetermined;
	return Verdict::elliptic;
}

Verdict grade(double relative, double tolerance)
{
	if (relative < tolerance)
		return Verdict::not_elliptic;
	if (relative < 10 * tolerance)
		return Verdict::undetermined;
	return Verdict::elliptic;
}

PointResult check_point(const BvEOperatorSpec &spec, const QVec &xi, double tolerance)
{
	PointResult r;
	r.xi = xi;
	const double scale = norm(xi);
	if (scale == 0)
		fail(ErrorKind::domain, "xi must be nonzero");
	QMatrix omega = levi_form(spec, xi);
	Eigen::MatrixXcd gamma = gamma_at(spec, xi);
	r.full_rank = rank(omega) == omega.rows();
	r.threshold_zero = omega.is_zero();
	r.threshold = r.threshold_zero ? 0.0 : half_trace(omega, spec.metric);
	r.gamma_norm = gamma.size() ? singular_values(gamma)(0) : 0.0;
	Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(gamma, false);
	for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
		r.gamma_spectrum.push_back(es.eigenvalues()(i));

	if (!r.full_rank)
	{
		// lambda + gamma(xi) must be invertible for real |lambda| >= threshold
		for (cplx mu : r.gamma_spectrum)
		{
			double im = std::abs(mu.imag()) / scale;
			double gap = (std::abs(mu.real()) - r.threshold) / scale;
			bool real = im < tolerance, near_real = im < 10 * tolerance;
			bool above = r.threshold_zero || gap > tolerance;
			bool near_above = above || gap >= -tolerance;
			Verdict v = Verdict::elliptic;
			if (real && above)
				v = Verdict::not_elliptic;
			else if (near_real && near_above)
				v = Verdict::undetermined;
			if (v == Verdict::not_elliptic && r.verdict != Verdict::not_elliptic)
			{
				std::string detail =
				    "gamma(xi) has a real eigenvalue with |mu| >= Tr|omega_xi|/2";
				if (r.threshold_zero)
					detail += " (threshold zero: omega_xi = 0)";
				r.witness = Witness{xi, -1, 1, mu, detail};
			}
			r.verdict = combine(r.verdict, v);
		}
		return r;
	}

	auto mu = symplectic_eigenvalues(omega, spec.metric);
	r.cutoff = layer_cutoff(r.gamma_norm, r.threshold, mu.front());
	for (int k = 0; k <= r.cutoff; ++k)
	{
		Eigen::VectorXd sv = singular_values(gamma_k(omega, spec.metric, gamma, k));
		LayerRecord rec;
		rec.k = k;
		rec.sigma_min = sv.minCoeff() / scale;
		for (Eigen::Index i = 0; i < sv.size(); ++i)
			if (sv(i) / scale < tolerance)
				++rec.kernel_dim;
		rec.verdict = grade(rec.sigma_min, tolerance);
		if (rec.verdict == Verdict::not_elliptic && !r.witness)
			r.witness = Witness{xi, k, rec.kernel_dim, cplx(0),
			                    "gamma_" + std::to_string(k) + " is singular"};
		r.verdict = combine(r.verdict, rec.verdict);
		r.layers.push_back(rec);
	}
	return r;
}

} // namespace

const char *verdict_name(Verdict v)
{
	switch (v)
	{
	case Verdict::elliptic:
		return "elliptic";
	case Verdict::not_elliptic:
		return "not-elliptic";
	case Verdict::undetermined:
		return "undetermined-at-tolerance";
	}
	return "?";
}

const char *trend_name(LadderTrend t)
{
	switch (t)
	{
	case LadderTrend::stable:
		return "stable";
	case LadderTrend::decaying:
		return "decaying";
	case LadderTrend::inconclusive:
		return "inconclusive";
	}
	return "?";
}

std::vector<std::size_t> center_basis(const BvEOperatorSpec &spec)
{
	return indices_of_weight(spec.algebra, 2);
}

void validate_spec(const BvEOperatorSpec &spec)
{
	const auto &g = spec.algebra;
	auto diags = validate(g);
	if (!diags.empty())
		fail(ErrorKind::malformed_input, "algebra fails validation: " + diags.front().message);
	for (int w : g.weights())
		if (w != 1 && w != 2)
			fail(ErrorKind::unsupported_step, "operator spec needs weights 1 and 2 only");
	auto w1 = indices_of_weight(g, 1), z = center_basis(spec);
	if (z.empty())
		fail(ErrorKind::domain, "operator spec needs a nonzero weight-2 center");
	Subspace c = center(g);
	if (!(c == Subspace::coordinate(g.dim(), z)))
		fail(ErrorKind::domain, "center must be spanned by the weight-2 basis vectors");
	const QMatrix &m = spec.metric;
	QMatrix inv;
	if (m.rows() != w1.size() || m.cols() != w1.size() || !m.is_symmetric() ||
	    !invert(m, inv) || inertia(m).positive != static_cast<int>(m.rows()))
		fail(ErrorKind::domain, "metric must be a positive definite form on g_-1");
	if (spec.gamma_forms.size() != z.size())
		fail(ErrorKind::malformed_input, "need one gamma matrix per center coordinate");
	for (auto &gm : spec.gamma_forms)
		if (gm.rows() != static_cast<Eigen::Index>(spec.rank) ||
		    gm.cols() != static_cast<Eigen::Index>(spec.rank))
			fail(ErrorKind::malformed_input, "gamma matrices must be rank x rank");
}

QMatrix levi_form(const BvEOperatorSpec &spec, const QVec &xi)
{
	auto w1 = indices_of_weight(spec.algebra, 1), z = center_basis(spec);
	if (xi.size() != z.size())
		fail(ErrorKind::malformed_input, "xi must have one coordinate per center direction");
	QMatrix om(w1.size(), w1.size());
	for (std::size_t a = 0; a < w1.size(); ++a)
		for (std::size_t b = 0; b < w1.size(); ++b)
			for (std::size_t l = 0; l < z.size(); ++l)
				om(a, b) += xi[l] * spec.algebra.c(w1[a], w1[b], z[l]);
	return om;
}

Eigen::MatrixXcd gamma_at(const BvEOperatorSpec &spec, const QVec &xi)
{
	const auto r = static_cast<Eigen::Index>(spec.rank);
	Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(r, r);
	for (std::size_t l = 0; l < spec.gamma_forms.size(); ++l)
		g += xi[l].get_d() * spec.gamma_forms[l];
	return g;
}

Covector extend_to_algebra(const BvEOperatorSpec &spec, const QVec &xi)
{
	auto z = center_basis(spec);
	Covector full = zero_vec(spec.algebra.dim());
	for (std::size_t l = 0; l < z.size(); ++l)
		full[z[l]] = xi[l];
	return full;
}

PBWSymbol bve_symbol(const BvEOperatorSpec &spec)
{
	PBWSymbol lap = sub_laplacian(spec.algebra, spec.metric);
	PBWSymbol s;
	s.degree = 2;
	s.rank = spec.rank;
	for (auto &t : lap.terms)
		s.add(t.coeff(0, 0), t.alpha);
	auto z = center_basis(spec);
	for (std::size_t l = 0; l < z.size(); ++l)
	{
		std::vector<int> alpha(spec.algebra.dim(), 0);
		alpha[z[l]] = 1;
		// d pi(Z_l) = i xi_l, so -i Gamma_l Z_l represents as xi_l Gamma_l
		s.add(Eigen::MatrixXcd(cplx(0, -1) * spec.gamma_forms[l]), alpha);
	}
	return s;
}

BvEOperatorSpec heisenberg_scalar_spec(std::size_t n, cplx c)
{
	BvEOperatorSpec spec;
	spec.algebra = families::heisenberg(n);
	spec.metric = QMatrix::identity(2 * n);
	spec.rank = 1;
	Eigen::MatrixXcd g(1, 1);
	g(0, 0) = c;
	spec.gamma_forms = {g};
	return spec;
}

void validate_config(const RocklandCheckConfig &config)
{
	if (config.truncation < 4)
		fail(ErrorKind::domain, "truncation must be at least 4");
	if (!(config.tolerance > 0))
		fail(ErrorKind::domain, "tolerance must be positive");
	if (config.resolution < 1)
		fail(ErrorKind::domain, "resolution must be positive");
}

int layer_cutoff(double gamma_norm, double half_trace, double mu_min)
{
	int k = static_cast<int>(std::ceil((gamma_norm - half_trace) / (2 * mu_min))) + 1;
	return std::max(0, k);
}

PointResult check_bve_at(const BvEOperatorSpec &spec, const QVec &xi, double tolerance)
{
	validate_spec(spec);
	return check_point(spec, xi, tolerance);
}

std::vector<std::vector<double>> sphere_points(std::size_t dim, int resolution,
                                               std::uint64_t seed)
{
	std::vector<std::vector<double>> pts;
	const double pi = std::numbers::pi;
	if (dim == 1)
		return {{1.0}, {-1.0}};
	if (dim == 2)
	{
		for (int j = 0; j < resolution; ++j)
		{
			double a = 2 * pi * j / resolution;
			pts.push_back({std::cos(a), std::sin(a)});
		}
		return pts;
	}
	if (dim == 3)
	{
		const double golden = pi * (3 - std::sqrt(5.0));
		for (int j = 0; j < resolution; ++j)
		{
			double z = 1 - 2 * (j + 0.5) / resolution;
			double rho = std::sqrt(1 - z * z);
			pts.push_back({rho * std::cos(golden * j), rho * std::sin(golden * j), z});
		}
		return pts;
	}
	std::mt19937_64 rng(seed);
	std::normal_distribution<double> normal;
	for (int j = 0; j < resolution; ++j)
	{
		std::vector<double> p(dim);
		double s = 0;
		do
		{
			s = 0;
			for (auto &x : p)
			{
				x = normal(rng);
				s += x * x;
			}
		} while (s == 0);
		for (auto &x : p)
			x /= std::sqrt(s);
		pts.push_back(p);
	}
	return pts;
}

EllipticityReport check_bve_sphere(const BvEOperatorSpec &spec,
                                   const RocklandCheckConfig &config)
{
	validate_spec(spec);
	validate_config(config);
	EllipticityReport rep;
	rep.config = config;
	const std::size_t dz = center_basis(spec).size();
	rep.exhaustive = dz == 1;
	rep.scope = rep.exhaustive
	                ? "exhaustive: dim z = 1, both unit covectors checked"
	                : "evidence: finite sample of the unit sphere in z*, not a proof";
	auto pts = sphere_points(dz, config.resolution, config.seed);
	rep.samples.resize(pts.size());
	parallel_for(pts.size(), config.threads, [&](std::size_t i) {
		QVec xi;
		for (double x : pts[i])
			xi.push_back(Q(x));
		rep.samples[i] = check_point(spec, xi, config.tolerance);
	});
	for (auto &s : rep.samples)
	{
		rep.verdict = combine(rep.verdict, s.verdict);
		if (s.witness)
			rep.witnesses.push_back(*s.witness);
	}
	return rep;
}

std::vector<int> default_ladder(int max_truncation)
{
	std::vector<int> out;
	int step = std::max(1, max_truncation / 4);
	for (int n = step; n < max_truncation; n += step)
		out.push_back(n);
	out.push_back(max_truncation);
	return out;
}

std::vector<LadderPoint> rockland_bruteforce(const FlatRepresentation &rep,
                                             const PBWSymbol &symbol,
                                             const std::vector<int> &ladder)
{
	std::vector<LadderPoint> out;
	for (int n : ladder)
	{
		TruncatedOperator op = represent_symbol(rep, symbol, n);
		Eigen::BDCSVD<Eigen::MatrixXcd> svd(op.matrix, Eigen::ComputeThinV);
		const Eigen::Index last = svd.singularValues().size() - 1;
		LadderPoint p;
		p.truncation = n;
		p.sigma_min = svd.singularValues()(last);
		Eigen::Index arg = 0;
		svd.matrixV().col(last).cwiseAbs().maxCoeff(&arg);
		const std::size_t m = op.indices.size();
		p.fiber = static_cast<std::size_t>(arg) / m;
		p.hermite = op.indices[static_cast<std::size_t>(arg) % m];
		out.push_back(p);
	}
	return out;
}

LadderTrend classify_ladder(const std::vector<LadderPoint> &ladder, double stable_floor,
                            double decay_ceiling)
{
	if (ladder.empty())
		return LadderTrend::inconclusive;
	if (std::all_of(ladder.begin(), ladder.end(),
	                [&](const LadderPoint &p) { return p.sigma_min > stable_floor; }))
		return LadderTrend::stable;
	if (ladder.back().sigma_min < decay_ceiling)
		return LadderTrend::decaying;
	return LadderTrend::inconclusive;
}

EngelCheck check_engel_gamma(const Eigen::MatrixXcd &gamma, double tolerance)
{
	if (gamma.rows() != gamma.cols())
		fail(ErrorKind::malformed_input, "gamma must be square");
	EngelCheck r;
	Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(gamma, false);
	r.holds = true;
	for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
	{
		cplx mu = es.eigenvalues()(i);
		r.eigenvalues.push_back(mu);
		bool imaginary = std::abs(mu.real()) <= tolerance;
		double im = std::abs(mu.imag());
		if (!imaginary || im < 0.5 - tolerance)
			r.holds = false;
		else if (im <= 0.5 + tolerance)
			r.undetermined = true;
	}
	if (!r.holds)
		r.undetermined = false;
	return r;
}

std::vector<KernelEntry> fiber_kernel_report(const BvEOperatorSpec &spec, const QVec &xi,
                                             const RocklandCheckConfig &config)
{
	validate_spec(spec);
	validate_config(config);
	QMatrix omega = levi_form(spec, xi);
	if (rank(omega) != omega.rows())
		fail(ErrorKind::domain, "Levi form is degenerate at xi");
	PointResult r = check_point(spec, xi, config.tolerance);
	std::vector<KernelEntry> out;
	for (auto &l : r.layers)
		if (l.kernel_dim > 0)
			out.push_back({l.k, l.kernel_dim});
	return out;
}

} // namespace nilcalc
