#include "nilcalc/symbolrep.hpp"

#include "nilcalc/errors.hpp"
#include "nilcalc/families.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nilcalc {

namespace {

const cplx I1(0, 1);

std::vector<std::size_t> weight_one(const GradedLieAlgebra &g)
{
	std::vector<std::size_t> w;
	for (std::size_t i = 0; i < g.dim(); ++i)
		if (g.weights()[i] == 1)
			w.push_back(i);
	return w;
}

bool is_standard_engel(const GradedLieAlgebra &g, const JordanHolderFlag &flag)
{
	static const GradedLieAlgebra e = families::engel();
	if (g.weights() != e.weights())
		return false;
	for (std::size_t i = 0; i < 4; ++i)
		for (std::size_t j = 0; j < 4; ++j)
			for (std::size_t k = 0; k < 4; ++k)
				if (g.c(i, j, k) != e.c(i, j, k))
					return false;
	return flag.order == std::vector<std::size_t>{0, 1, 2, 3};
}

Polynomial linear(std::size_t d, const Q &c0, const QVec &lin)
{
	Polynomial p = Polynomial::constant(d, c0);
	for (std::size_t a = 0; a < d; ++a)
		if (lin[a] != 0)
		{
			Exponent e(d, 0);
			e[a] = 1;
			p.add_term(e, lin[a]);
		}
	return p;
}

// generic orbits xi(Y1) != 0, polarized by span(Y1, Y2, Y3)
std::vector<GeneratorAction> engel_actions(const Covector &xi)
{
	const Q &x1 = xi[0], &x2 = xi[1], &x3 = xi[2];
	std::vector<GeneratorAction> gens(4);
	for (auto &a : gens)
		a.c = QVec{Q(0)};
	gens[0].p = Polynomial::constant(1, x1);
	gens[1].p = linear(1, x2, {x1});
	gens[2].p = linear(1, x3, {x2});
	gens[2].p.add_term({2}, x1 / 2);
	gens[3].p = Polynomial(1);
	gens[3].c = QVec{Q(-1)};
	return gens;
}

std::vector<GeneratorAction> vergne_actions(const GradedLieAlgebra &g, const Covector &xi,
                                            const Subspace &h,
                                            const std::vector<std::size_t> &k)
{
	const std::size_t n = g.dim(), d = k.size();
	std::vector<QVec> cols;
	for (auto j : k)
		cols.push_back(unit_vec(n, j));
	for (auto &v : h.basis())
		cols.push_back(v);
	QMatrix b = QMatrix::from_columns(cols, n);

	std::vector<GeneratorAction> gens;
	for (std::size_t i = 0; i < n; ++i)
	{
		QVec co;
		solve(b, unit_vec(n, i), co);
		QVec c(co.begin(), co.begin() + static_cast<std::ptrdiff_t>(d));
		QVec x0 = zero_vec(n);
		for (std::size_t a = 0; a < d; ++a)
			x0[k[a]] = c[a];
		QVec xp = unit_vec(n, i) - x0;
		QVec lin(d);
		for (std::size_t a = 0; a < d; ++a)
		{
			QVec ek = unit_vec(n, k[a]);
			lin[a] = -dot(xi, g.bracket(ek, xp)) - dot(xi, g.bracket(ek, x0)) / 2;
		}
		gens.push_back({-c, linear(d, dot(xi, xp), lin)});
	}
	return gens;
}

Eigen::MatrixXd standard_j(std::size_t d)
{
	const auto n = static_cast<Eigen::Index>(d);
	Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
	j.topRightCorner(n, n).setIdentity();
	j.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
	return j;
}

bool williamson(const Eigen::MatrixXd &r, Eigen::MatrixXd &s)
{
	const Eigen::Index n = r.rows() / 2;
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
	if (es.eigenvalues().minCoeff() <= 1e-12 * es.eigenvalues().maxCoeff())
		return false;
	Eigen::MatrixXd rhi = inverse_sqrt(r);
	Eigen::MatrixXd jm = standard_j(static_cast<std::size_t>(n));
	Eigen::RealSchur<Eigen::MatrixXd> schur(rhi * jm * rhi);
	Eigen::MatrixXd t = schur.matrixT(), o = schur.matrixU();
	Eigen::VectorXd nu(2 * n);
	Eigen::MatrixXd o2(2 * n, 2 * n);
	for (Eigen::Index k = 0; k < n; ++k)
	{
		double a = t(2 * k, 2 * k + 1);
		Eigen::VectorXd u = o.col(2 * k), v = o.col(2 * k + 1);
		if (a < 0)
		{
			std::swap(u, v);
			a = -a;
		}
		if (a <= 0)
			return false;
		o2.col(k) = u;
		o2.col(n + k) = v;
		nu(k) = nu(n + k) = 1 / std::sqrt(a);
	}
	s = rhi * o2 * nu.asDiagonal();
	return (s.transpose() * jm * s - jm).cwiseAbs().maxCoeff() < 1e-8;
}

Eigen::MatrixXd scaling_frame(const std::vector<GeneratorAction> &gens, std::size_t d)
{
	const auto n = static_cast<Eigen::Index>(d);
	Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n, 2 * n);
	for (std::size_t a = 0; a < d; ++a)
	{
		double alpha = 0, beta = 0;
		for (auto &gen : gens)
		{
			alpha += std::pow(gen.c[a].get_d(), 2);
			Exponent e(d, 0);
			e[a] = 1;
			beta += std::pow(gen.p.coefficient(e).get_d(), 2);
		}
		double f = (alpha > 0 && beta > 0) ? std::pow(alpha / beta, 0.25) : 1.0;
		const auto i = static_cast<Eigen::Index>(a);
		s(i, i) = f;
		s(n + i, n + i) = 1 / f;
	}
	return s;
}

QMatrix inverse_metric(const QMatrix &metric)
{
	QMatrix inv;
	if (!metric.is_symmetric() || !invert(metric, inv) ||
	    inertia(metric).positive != static_cast<int>(metric.rows()))
		fail(ErrorKind::domain, "metric must be symmetric positive definite");
	return inv;
}

SparseC identity_sparse(std::size_t n)
{
	SparseC m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
	m.setIdentity();
	return m;
}

} // namespace

void PBWSymbol::add(const Eigen::MatrixXcd &coeff, std::vector<int> alpha)
{
	terms.push_back({coeff, std::move(alpha)});
}

void PBWSymbol::add(cplx coeff, std::vector<int> alpha)
{
	const auto r = static_cast<Eigen::Index>(rank);
	terms.push_back({coeff * Eigen::MatrixXcd::Identity(r, r), std::move(alpha)});
}

void check_symbol(const GradedLieAlgebra &g, const PBWSymbol &s)
{
	for (auto &t : s.terms)
	{
		if (t.alpha.size() != g.dim())
			fail(ErrorKind::malformed_input, "symbol monomial has wrong length");
		if (t.coeff.rows() != static_cast<Eigen::Index>(s.rank) ||
		    t.coeff.cols() != static_cast<Eigen::Index>(s.rank))
			fail(ErrorKind::malformed_input, "symbol coefficient has wrong size");
		int deg = 0;
		for (std::size_t j = 0; j < g.dim(); ++j)
		{
			if (t.alpha[j] < 0)
				fail(ErrorKind::malformed_input, "negative exponent in symbol");
			deg += t.alpha[j] * g.weights()[j];
		}
		if (deg != s.degree)
			fail(ErrorKind::domain, "symbol is not homogeneous of degree " +
			                            std::to_string(s.degree));
	}
}

PBWSymbol operator+(const PBWSymbol &a, const PBWSymbol &b)
{
	if (a.degree != b.degree || a.rank != b.rank)
		fail(ErrorKind::domain, "adding symbols of different degree or rank");
	PBWSymbol s = a;
	s.terms.insert(s.terms.end(), b.terms.begin(), b.terms.end());
	return s;
}

PBWSymbol operator*(cplx c, const PBWSymbol &a)
{
	PBWSymbol s = a;
	for (auto &t : s.terms)
		t.coeff *= c;
	return s;
}

PBWSymbol ordered_product(const PBWSymbol &a, const PBWSymbol &b)
{
	if (a.rank != b.rank)
		fail(ErrorKind::domain, "multiplying symbols of different rank");
	PBWSymbol s;
	s.degree = a.degree + b.degree;
	s.rank = a.rank;
	for (auto &x : a.terms)
		for (auto &y : b.terms)
		{
			std::size_t last = 0, first = x.alpha.size();
			for (std::size_t j = 0; j < x.alpha.size(); ++j)
				if (x.alpha[j] > 0)
					last = j;
			for (std::size_t j = y.alpha.size(); j-- > 0;)
				if (y.alpha[j] > 0)
					first = j;
			if (first < last)
				fail(ErrorKind::domain, "product is not in basis order");
			std::vector<int> al(x.alpha.size());
			for (std::size_t j = 0; j < al.size(); ++j)
				al[j] = x.alpha[j] + y.alpha[j];
			s.add(x.coeff * y.coeff, al);
		}
	return s;
}

QMatrix standard_metric(const GradedLieAlgebra &g)
{
	return QMatrix::identity(weight_one(g).size());
}

PBWSymbol sub_laplacian(const GradedLieAlgebra &g, const QMatrix &metric)
{
	auto w = weight_one(g);
	if (metric.rows() != w.size() || metric.cols() != w.size())
		fail(ErrorKind::malformed_input, "metric size differs from dim g_-1");
	QMatrix inv = inverse_metric(metric);
	const std::size_t n = g.dim();
	PBWSymbol s;
	s.degree = 2;
	for (std::size_t a = 0; a < w.size(); ++a)
		for (std::size_t b = a; b < w.size(); ++b)
		{
			const Q &m = inv(a, b);
			if (m == 0)
				continue;
			std::vector<int> al(n, 0);
			++al[w[a]];
			++al[w[b]];
			s.add(cplx(-(a == b ? m : Q(2 * m)).get_d()), al);
			if (a == b)
				continue;
			for (std::size_t l = 0; l < n; ++l)
				if (g.c(w[a], w[b], l) != 0)
				{
					std::vector<int> e(n, 0);
					e[l] = 1;
					s.add(cplx(Q(m * g.c(w[a], w[b], l)).get_d()), e);
				}
		}
	return s;
}

int GeneratorAction::ladder_degree() const
{
	int deg = p.is_zero() ? 0 : p.degree();
	if (!is_zero(c))
		deg = std::max(deg, 1);
	return deg;
}

GeneratorAction commutator(const GeneratorAction &a, const GeneratorAction &b)
{
	// [c.d + ip, c'.d + ip'] = i (c.grad p' - c'.grad p)
	const std::size_t d = a.c.size();
	GeneratorAction r{zero_vec(d), Polynomial(d)};
	for (std::size_t j = 0; j < d; ++j)
	{
		r.p += a.c[j] * b.p.derivative(j);
		r.p -= b.c[j] * a.p.derivative(j);
	}
	return r;
}

std::vector<BracketDefect> homomorphism_defects(const FlatRepresentation &rep)
{
	const auto &g = rep.algebra();
	const auto &gens = rep.generators();
	const std::size_t n = g.dim(), d = rep.dim();
	std::vector<BracketDefect> out;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
		{
			GeneratorAction lhs = commutator(gens[i], gens[j]);
			GeneratorAction rhs{zero_vec(d), Polynomial(d)};
			for (std::size_t k = 0; k < n; ++k)
				if (g.c(i, j, k) != 0)
				{
					rhs.c = rhs.c + g.c(i, j, k) * gens[k].c;
					rhs.p += g.c(i, j, k) * gens[k].p;
				}
			if (lhs.c != rhs.c || !(lhs.p == rhs.p))
				out.push_back({i, j});
		}
	return out;
}

FlatRepresentation flat_rep(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                            const Covector &xi)
{
	return flat_rep(g, flag, xi, standard_metric(g));
}

FlatRepresentation flat_rep(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                            const Covector &xi, const QMatrix &metric)
{
	if (xi.size() != g.dim())
		fail(ErrorKind::malformed_input, "covector length differs from the dimension");
	FlatRepresentation rep;
	rep.g_ = g;
	rep.flag_ = flag;
	rep.xi_ = xi;
	QMatrix minv = inverse_metric(metric);
	if (metric.rows() != weight_one(g).size())
		fail(ErrorKind::malformed_input, "metric size differs from dim g_-1");
	rep.metric_ = metric;
	const int step = descending_central_series(g).step;
	const std::size_t n = g.dim();

	if (step > 2)
	{
		if (!is_standard_engel(g, flag))
			fail(ErrorKind::unsupported_step,
			     "flat representations are implemented for step <= 2 and the Engel algebra");
		if (xi[0] == 0)
			fail(ErrorKind::domain, "Engel representation needs xi(Y1) != 0");
		rep.engel_ = true;
		rep.h_ = Subspace::coordinate(n, {0, 1, 2});
		rep.k_ = {3};
		rep.gens_ = engel_actions(xi);
	}
	else
	{
		if (!is_flat(g, xi))
			fail(ErrorKind::domain, "covector is not flat");
		rep.h_ = vergne_polarization(g, flag, xi);
		Subspace acc = rep.h_;
		for (std::size_t j = 0; j < n && acc.dim() < n; ++j)
			if (!acc.contains(unit_vec(n, j)))
			{
				rep.k_.push_back(j);
				acc = acc + Subspace::coordinate(n, {j});
			}
		rep.gens_ = vergne_actions(g, xi, rep.h_, rep.k_);
	}
	if (!homomorphism_defects(rep).empty())
		fail(ErrorKind::invariant_violation, "flat representation is not a homomorphism");

	const std::size_t d = rep.dim();
	bool affine = std::all_of(rep.gens_.begin(), rep.gens_.end(),
	                          [](const GeneratorAction &a) { return a.ladder_degree() <= 1; });
	if (d > 0 && affine)
	{
		auto w = weight_one(g);
		std::vector<Eigen::VectorXd> ell;
		for (auto i : w)
		{
			Eigen::VectorXd v(2 * d);
			for (std::size_t a = 0; a < d; ++a)
			{
				Exponent e(d, 0);
				e[a] = 1;
				v(static_cast<Eigen::Index>(a)) = rep.gens_[i].p.coefficient(e).get_d();
				v(static_cast<Eigen::Index>(d + a)) = rep.gens_[i].c[a].get_d();
			}
			ell.push_back(v);
		}
		Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2 * d, 2 * d);
		for (std::size_t a = 0; a < w.size(); ++a)
			for (std::size_t b = 0; b < w.size(); ++b)
				r += minv(a, b).get_d() * ell[a] * ell[b].transpose();
		rep.williamson_ = williamson(r, rep.frame_);
	}
	if (!rep.williamson_)
		rep.frame_ = scaling_frame(rep.gens_, d);
	return rep;
}

HermiteBasis::HermiteBasis(std::size_t d, int level) : d_(d), level_(level)
{
	for (int deg = 0; deg <= level; ++deg)
	{
		std::vector<int> a(d, 0);
		if (d == 0)
		{
			if (deg == 0)
				idx_.push_back(a);
			continue;
		}
		// compositions of deg into d parts, lexicographically descending
		a[0] = deg;
		for (;;)
		{
			idx_.push_back(a);
			std::size_t j = d - 1;
			while (j > 0 && a[j - 1] == 0)
				--j;
			if (j == 0)
				break;
			--a[j - 1];
			int rest = std::accumulate(a.begin() + static_cast<std::ptrdiff_t>(j), a.end(), 0);
			std::fill(a.begin() + static_cast<std::ptrdiff_t>(j), a.end(), 0);
			a[j] = rest + 1;
		}
	}
	for (std::size_t i = 0; i < idx_.size(); ++i)
		pos_[idx_[i]] = i;
}

std::size_t HermiteBasis::size_up_to(int degree) const
{
	std::size_t n = 0;
	for (auto &a : idx_)
		if (std::accumulate(a.begin(), a.end(), 0) <= degree)
			++n;
	return n;
}

std::ptrdiff_t HermiteBasis::position(const std::vector<int> &alpha) const
{
	auto it = pos_.find(alpha);
	return it == pos_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

SparseC HermiteBasis::annihilation(std::size_t j) const
{
	const auto n = static_cast<Eigen::Index>(size());
	std::vector<Eigen::Triplet<cplx>> trip;
	for (std::size_t i = 0; i < idx_.size(); ++i)
		if (idx_[i][j] > 0)
		{
			auto b = idx_[i];
			--b[j];
			trip.emplace_back(static_cast<Eigen::Index>(pos_.at(b)),
			                  static_cast<Eigen::Index>(i), std::sqrt(double(idx_[i][j])));
		}
	SparseC a(n, n);
	a.setFromTriplets(trip.begin(), trip.end());
	return a;
}

std::vector<SparseC> generator_matrices(const FlatRepresentation &rep,
                                        const HermiteBasis &basis)
{
	const std::size_t d = rep.dim();
	const std::size_t m = basis.size();
	const Eigen::MatrixXd &s = rep.frame();
	std::vector<SparseC> quad; // y_1..y_d, q_1..q_d
	std::vector<SparseC> ann;
	for (std::size_t b = 0; b < d; ++b)
		ann.push_back(basis.annihilation(b));
	const double r2 = std::sqrt(0.5);
	for (std::size_t b = 0; b < d; ++b)
		quad.push_back(SparseC(r2 * (ann[b] + SparseC(ann[b].adjoint()))));
	for (std::size_t b = 0; b < d; ++b)
		quad.push_back(SparseC(-I1 * r2 * (ann[b] - SparseC(ann[b].adjoint()))));
	auto phase = [&](std::size_t row) {
		SparseC x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
		for (std::size_t b = 0; b < 2 * d; ++b)
		{
			double v = s(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(b));
			if (v != 0)
				x += v * quad[b];
		}
		return x;
	};
	std::vector<SparseC> t, p;
	for (std::size_t a = 0; a < d; ++a)
	{
		t.push_back(phase(a));
		p.push_back(phase(d + a));
	}
	const SparseC id = identity_sparse(m);

	std::vector<SparseC> out;
	for (auto &gen : rep.generators())
	{
		SparseC x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
		for (std::size_t a = 0; a < d; ++a)
			if (gen.c[a] != 0)
				x += gen.c[a].get_d() * p[a];
		for (auto &[e, coef] : gen.p.terms())
		{
			SparseC mono = id;
			for (std::size_t a = 0; a < d; ++a)
				for (int k = 0; k < e[a]; ++k)
					mono = mono * t[a];
			x += coef.get_d() * mono;
		}
		out.push_back(SparseC(I1 * x));
	}
	return out;
}

int symbol_padding(const FlatRepresentation &rep, const PBWSymbol &s)
{
	int pad = 0;
	for (auto &t : s.terms)
	{
		int sum = 0;
		for (std::size_t j = 0; j < t.alpha.size(); ++j)
			sum += t.alpha[j] * rep.generators()[j].ladder_degree();
		pad = std::max(pad, sum);
	}
	return pad;
}

SparseC padded_operator(const FlatRepresentation &rep, const PBWSymbol &s,
                        const HermiteBasis &basis)
{
	check_symbol(rep.algebra(), s);
	const std::size_t m = basis.size(), r = s.rank;
	auto gens = generator_matrices(rep, basis);
	const SparseC id = identity_sparse(m);
	std::vector<Eigen::Triplet<cplx>> trip;
	for (auto &t : s.terms)
	{
		SparseC op = id;
		for (std::size_t j = 0; j < t.alpha.size(); ++j)
			for (int k = 0; k < t.alpha[j]; ++k)
				op = op * gens[j];
		for (Eigen::Index k = 0; k < op.outerSize(); ++k)
			for (SparseC::InnerIterator it(op, k); it; ++it)
				for (std::size_t f = 0; f < r; ++f)
					for (std::size_t h = 0; h < r; ++h)
					{
						cplx c = t.coeff(static_cast<Eigen::Index>(f),
						                 static_cast<Eigen::Index>(h));
						if (c != cplx(0))
							trip.emplace_back(
							    static_cast<Eigen::Index>(f * m) + it.row(),
							    static_cast<Eigen::Index>(h * m) + it.col(), c * it.value());
					}
	}
	SparseC out(static_cast<Eigen::Index>(r * m), static_cast<Eigen::Index>(r * m));
	out.setFromTriplets(trip.begin(), trip.end());
	return out;
}

TruncatedOperator represent_symbol(const FlatRepresentation &rep, const PBWSymbol &s,
                                   int truncation)
{
	if (truncation < 0)
		fail(ErrorKind::domain, "truncation degree must be nonnegative");
	TruncatedOperator t;
	t.truncation = truncation;
	t.padding = symbol_padding(rep, s);
	t.vars = rep.dim();
	t.rank = s.rank;
	HermiteBasis basis(rep.dim(), truncation + t.padding);
	const std::size_t big = basis.size(), small = basis.size_up_to(truncation);
	for (std::size_t i = 0; i < small; ++i)
		t.indices.push_back(basis[i]);
	Eigen::MatrixXcd full = Eigen::MatrixXcd(padded_operator(rep, s, basis));
	const auto r = static_cast<Eigen::Index>(s.rank), sm = static_cast<Eigen::Index>(small),
	           bg = static_cast<Eigen::Index>(big);
	t.matrix.resize(r * sm, r * sm);
	for (Eigen::Index f = 0; f < r; ++f)
		for (Eigen::Index h = 0; h < r; ++h)
			t.matrix.block(f * sm, h * sm, sm, sm) = full.block(f * bg, h * bg, sm, sm);
	return t;
}

TruncatedOperator harmonic_oscillator(const FlatRepresentation &rep, int truncation)
{
	if (rep.engel_generic() || descending_central_series(rep.algebra()).step > 2)
		fail(ErrorKind::domain, "harmonic oscillator needs a step-2 flat representation");
	if (rep.dim() == 0)
		fail(ErrorKind::domain, "Kirillov form vanishes: no oscillator");
	return represent_symbol(rep, sub_laplacian(rep.algebra(), rep.metric()), truncation);
}

namespace {

struct LayerData
{
	Eigen::MatrixXd abs, j;
	double half_trace = 0;
};

LayerData layer_data(const QMatrix &omega, const QMatrix &metric)
{
	if (omega.rows() != omega.cols() || !omega.is_antisymmetric() || omega.rows() % 2 != 0)
		fail(ErrorKind::domain, "form must be antisymmetric of even size");
	if (metric.rows() != omega.rows())
		fail(ErrorKind::malformed_input, "metric size differs from the form");
	inverse_metric(metric);
	if (determinant(omega) == 0)
		fail(ErrorKind::domain, "form is degenerate");
	Eigen::MatrixXd mhi = inverse_sqrt(to_eigen(metric));
	Eigen::MatrixXd b = mhi * to_eigen(omega) * mhi;
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.transpose() * b);
	Eigen::VectorXd mu = es.eigenvalues().cwiseMax(0).cwiseSqrt();
	LayerData out;
	out.abs = es.eigenvectors() * mu.asDiagonal() * es.eigenvectors().transpose();
	out.j = b * es.eigenvectors() * mu.cwiseInverse().asDiagonal() *
	        es.eigenvectors().transpose();
	out.half_trace = mu.sum() / 2;
	return out;
}

} // namespace

std::vector<double> symplectic_eigenvalues(const QMatrix &omega, const QMatrix &metric)
{
	LayerData l = layer_data(omega, metric);
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l.abs);
	std::vector<double> mu;
	for (Eigen::Index i = 0; i < es.eigenvalues().size(); i += 2)
		mu.push_back(0.5 * (es.eigenvalues()(i) + es.eigenvalues()(i + 1)));
	return mu;
}

std::size_t layer_dimension(std::size_t d, int k)
{
	if (d == 0)
		return k == 0 ? 1 : 0;
	// C(k + d - 1, d - 1)
	std::size_t c = 1;
	for (std::size_t i = 1; i < d; ++i)
		c = c * (static_cast<std::size_t>(k) + i) / i;
	return c;
}

Eigen::MatrixXcd fock_layer_operator(const QMatrix &omega, const QMatrix &metric, int k)
{
	if (k < 0)
		fail(ErrorKind::domain, "layer index must be nonnegative");
	LayerData l = layer_data(omega, metric);
	const Eigen::Index n = l.abs.rows(), d = n / 2;

	// h(x, y) = x.y + i x.Jy is Hermitian for the complex structure J
	auto h = [&](const Eigen::VectorXd &x, const Eigen::VectorXd &y) {
		return cplx(x.dot(y), x.dot(l.j * y));
	};
	auto scale = [&](cplx z, const Eigen::VectorXd &v) -> Eigen::VectorXd {
		return z.real() * v + z.imag() * (l.j * v);
	};
	std::vector<Eigen::VectorXd> v;
	for (Eigen::Index e = 0; e < n && static_cast<Eigen::Index>(v.size()) < d; ++e)
	{
		Eigen::VectorXd x = Eigen::VectorXd::Unit(n, e);
		for (int pass = 0; pass < 2; ++pass)
			for (auto &u : v)
				x -= scale(h(x, u), u);
		double norm = x.norm();
		if (norm > 1e-8)
			v.push_back(x / norm);
	}
	Eigen::MatrixXd gen = 2 * l.abs;
	Eigen::MatrixXcd gc(d, d);
	for (Eigen::Index a = 0; a < d; ++a)
		for (Eigen::Index b = 0; b < d; ++b)
			gc(a, b) = h(gen * v[static_cast<std::size_t>(b)], v[static_cast<std::size_t>(a)]);
	gc = 0.5 * (gc + gc.adjoint()).eval();

	// second quantization sum_ab G_ab a_a^+ a_b on the k-particle states
	HermiteBasis all(static_cast<std::size_t>(d), k);
	std::vector<std::vector<int>> layer;
	for (std::size_t i = 0; i < all.size(); ++i)
		if (std::accumulate(all[i].begin(), all[i].end(), 0) == k)
			layer.push_back(all[i]);
	std::map<std::vector<int>, Eigen::Index> pos;
	for (std::size_t i = 0; i < layer.size(); ++i)
		pos[layer[i]] = static_cast<Eigen::Index>(i);
	const auto m = static_cast<Eigen::Index>(layer.size());
	Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(m, m);
	for (Eigen::Index col = 0; col < m; ++col)
	{
		const auto &alpha = layer[static_cast<std::size_t>(col)];
		for (Eigen::Index b = 0; b < d; ++b)
		{
			if (alpha[static_cast<std::size_t>(b)] == 0)
				continue;
			auto gamma = alpha;
			double amp = std::sqrt(double(gamma[static_cast<std::size_t>(b)]--));
			for (Eigen::Index a = 0; a < d; ++a)
			{
				auto beta = gamma;
				double amp2 = amp * std::sqrt(double(++beta[static_cast<std::size_t>(a)]));
				f(pos[beta], col) += gc(a, b) * amp2;
			}
		}
	}
	f += l.half_trace * Eigen::MatrixXcd::Identity(m, m);
	return f;
}

Eigen::MatrixXcd gamma_k(const QMatrix &omega, const QMatrix &metric,
                         const Eigen::MatrixXcd &gamma, int k)
{
	if (gamma.rows() != gamma.cols())
		fail(ErrorKind::malformed_input, "gamma must be square");
	Eigen::MatrixXcd f = fock_layer_operator(omega, metric, k);
	const Eigen::Index r = gamma.rows(), m = f.rows();
	Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(r * m, r * m);
	for (Eigen::Index a = 0; a < r; ++a)
	{
		out.block(a * m, a * m, m, m) += f;
		for (Eigen::Index b = 0; b < r; ++b)
			out.block(a * m, b * m, m, m).diagonal().array() += gamma(a, b);
	}
	return out;
}

} // namespace nilcalc
