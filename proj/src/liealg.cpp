#include "nilcalc/liealg.hpp"

#include "nilcalc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace nilcalc {

GradedLieAlgebra::GradedLieAlgebra(std::string name, std::vector<int> weights,
                                   const std::vector<BracketEntry> &entries,
                                   std::vector<std::string> basis_names)
    : name_(std::move(name)), weights_(std::move(weights)),
      names_(std::move(basis_names))
{
	const std::size_t n = weights_.size();
	if (n == 0)
		fail(ErrorKind::malformed_input, "algebra dimension must be positive");
	for (int w : weights_)
		if (w <= 0)
			fail(ErrorKind::malformed_input, "grading weights must be positive");
	if (!names_.empty() && names_.size() != n)
		fail(ErrorKind::malformed_input, "basis name count differs from dimension");
	table_.assign(n * n * n, Q(0));
	std::set<std::pair<std::size_t, std::size_t>> given;
	for (const auto &e : entries)
	{
		if (e.i >= n || e.j >= n || e.k >= n)
			fail(ErrorKind::malformed_input,
			     "bracket entry index out of range for dimension " +
			         std::to_string(n));
		table_[(e.i * n + e.j) * n + e.k] += e.coeff;
		given.insert({e.i, e.j});
	}
	for (auto [i, j] : given)
	{
		if (i == j || given.count({j, i}))
			continue;
		for (std::size_t k = 0; k < n; ++k)
			table_[(j * n + i) * n + k] = -table_[(i * n + j) * n + k];
	}
	if (names_.empty())
		for (std::size_t i = 0; i < n; ++i)
			names_.push_back("X" + std::to_string(i + 1));
	index_nonzero();
}

GradedLieAlgebra GradedLieAlgebra::from_table(std::string name,
                                              std::vector<int> weights,
                                              std::vector<Q> table)
{
	GradedLieAlgebra g;
	g.name_ = std::move(name);
	g.weights_ = std::move(weights);
	const std::size_t n = g.weights_.size();
	if (n == 0 || table.size() != n * n * n)
		fail(ErrorKind::malformed_input, "structure table has wrong size");
	g.table_ = std::move(table);
	for (std::size_t i = 0; i < n; ++i)
		g.names_.push_back("X" + std::to_string(i + 1));
	g.index_nonzero();
	return g;
}

void GradedLieAlgebra::index_nonzero()
{
	const std::size_t n = dim();
	nonzero_.clear();
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			for (std::size_t k = 0; k < n; ++k)
				if (c(i, j, k) != 0)
					nonzero_.push_back({i, j, k, c(i, j, k)});
}

int GradedLieAlgebra::max_weight() const
{
	return *std::max_element(weights_.begin(), weights_.end());
}

std::vector<BracketEntry> GradedLieAlgebra::upper_entries() const
{
	std::vector<BracketEntry> out;
	for (const auto &e : nonzero_)
		if (e.i < e.j)
			out.push_back(e);
	return out;
}

QVec GradedLieAlgebra::bracket(const QVec &x, const QVec &y) const
{
	QVec r(dim());
	for (const auto &e : nonzero_)
		if (x[e.i] != 0 && y[e.j] != 0)
			r[e.k] += e.coeff * x[e.i] * y[e.j];
	return r;
}

QVec GradedLieAlgebra::bracket_basis(std::size_t i, std::size_t j) const
{
	QVec r(dim());
	for (std::size_t k = 0; k < dim(); ++k)
		r[k] = c(i, j, k);
	return r;
}

QMatrix GradedLieAlgebra::ad(const QVec &x) const
{
	QMatrix m(dim(), dim());
	for (const auto &e : nonzero_)
		if (x[e.i] != 0)
			m(e.k, e.j) += e.coeff * x[e.i];
	return m;
}

const char *axiom_name(Axiom a)
{
	switch (a)
	{
	case Axiom::antisymmetry: return "antisymmetry";
	case Axiom::jacobi: return "jacobi";
	case Axiom::grading: return "grading";
	case Axiom::nilpotency: return "nilpotency";
	}
	return "unknown";
}

namespace {

Subspace bracket_with_all(const GradedLieAlgebra &g, const Subspace &s)
{
	std::vector<QVec> out;
	for (std::size_t i = 0; i < g.dim(); ++i)
	{
		QVec e = unit_vec(g.dim(), i);
		for (const auto &v : s.basis())
		{
			QVec b = g.bracket(e, v);
			if (!is_zero(b))
				out.push_back(std::move(b));
		}
	}
	return Subspace::span(g.dim(), out);
}

std::string label(const GradedLieAlgebra &g, std::size_t i)
{
	return g.basis_names()[i];
}

} // namespace

std::vector<Diagnostic> validate(const GradedLieAlgebra &g)
{
	const std::size_t n = g.dim();
	std::vector<Diagnostic> out;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i; j < n; ++j)
			for (std::size_t k = 0; k < n; ++k)
				if (g.c(i, j, k) != -g.c(j, i, k))
				{
					out.push_back({Axiom::antisymmetry,
					               {i, j, k},
					               "c(" + label(g, i) + "," + label(g, j) + ")^" +
					                   label(g, k) + " is not antisymmetric"});
				}
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			for (std::size_t l = j + 1; l < n; ++l)
			{
				QVec ei = unit_vec(n, i), ej = unit_vec(n, j), el = unit_vec(n, l);
				QVec s = g.bracket(ei, g.bracket(ej, el)) +
				         g.bracket(ej, g.bracket(el, ei)) +
				         g.bracket(el, g.bracket(ei, ej));
				if (!is_zero(s))
					out.push_back({Axiom::jacobi,
					               {i, j, l},
					               "Jacobi identity fails on (" + label(g, i) + "," +
					                   label(g, j) + "," + label(g, l) + ")"});
			}
	const auto &w = g.weights();
	for (const auto &e : g.nonzero())
		if (e.i < e.j && w[e.k] != w[e.i] + w[e.j])
			out.push_back({Axiom::grading,
			               {e.i, e.j, e.k},
			               "[" + label(g, e.i) + "," + label(g, e.j) + "] has a " +
			                   label(g, e.k) + " component but weights " +
			                   std::to_string(w[e.i]) + "+" + std::to_string(w[e.j]) +
			                   " != " + std::to_string(w[e.k])});
	Subspace cur = Subspace::whole(n);
	for (int s = 0; s < g.max_weight() && cur.dim() > 0; ++s)
		cur = bracket_with_all(g, cur);
	if (cur.dim() > 0)
		out.push_back({Axiom::nilpotency,
		               {},
		               "descending central series does not reach 0 within " +
		                   std::to_string(g.max_weight()) + " steps"});
	return out;
}

Subspace center(const GradedLieAlgebra &g)
{
	// X central iff ad_X = 0 iff X lies in the kernel of all ad_{e_j}
	const std::size_t n = g.dim();
	QMatrix m(n * n, n);
	for (std::size_t j = 0; j < n; ++j)
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t k = 0; k < n; ++k)
				m(j * n + k, i) = g.c(i, j, k);
	return Subspace::span(n, kernel(m));
}

Subspace derived_subalgebra(const GradedLieAlgebra &g)
{
	return bracket_with_all(g, Subspace::whole(g.dim()));
}

CentralSeries descending_central_series(const GradedLieAlgebra &g)
{
	CentralSeries cs;
	cs.terms.push_back(Subspace::whole(g.dim()));
	while (cs.terms.back().dim() > 0)
	{
		Subspace next = bracket_with_all(g, cs.terms.back());
		if (next.dim() == cs.terms.back().dim())
			fail(ErrorKind::nilpotency,
			     "descending central series stabilizes at dimension " +
			         std::to_string(next.dim()));
		cs.terms.push_back(std::move(next));
	}
	cs.step = static_cast<int>(cs.terms.size()) - 1;
	return cs;
}

QVec dilation_apply(const GradedLieAlgebra &g, const Q &t, const QVec &v)
{
	if (t <= 0)
		fail(ErrorKind::domain, "dilation parameter must be positive");
	QVec r(v.size());
	for (std::size_t j = 0; j < v.size(); ++j)
	{
		Q s = 1;
		for (int k = 0; k < g.weights()[j]; ++k)
			s *= t;
		r[j] = s * v[j];
	}
	return r;
}

std::vector<double> dilation_apply(const GradedLieAlgebra &g, double t,
                                   const std::vector<double> &v)
{
	if (!(t > 0))
		fail(ErrorKind::domain, "dilation parameter must be positive");
	std::vector<double> r(v.size());
	for (std::size_t j = 0; j < v.size(); ++j)
		r[j] = std::pow(t, g.weights()[j]) * v[j];
	return r;
}

QMatrix dilation_matrix(const GradedLieAlgebra &g, const Q &t)
{
	QMatrix m(g.dim(), g.dim());
	for (std::size_t j = 0; j < g.dim(); ++j)
		m(j, j) = dilation_apply(g, t, unit_vec(g.dim(), j))[j];
	return m;
}

Step2NormalForm step2_normal_form(const GradedLieAlgebra &g)
{
	auto cs = descending_central_series(g);
	if (cs.step > 2)
		fail(ErrorKind::unsupported_step,
		     "step2_normal_form needs step <= 2, got step " + std::to_string(cs.step));
	Step2NormalForm nf;
	nf.derived = derived_subalgebra(g);
	nf.complement = nf.derived.orthogonal();
	nf.v_basis = nf.complement.basis();
	nf.derived_basis = nf.derived.basis();
	const std::size_t q = nf.v_basis.size(), p = nf.derived_basis.size();
	QMatrix zcols = QMatrix::from_columns(nf.derived_basis, g.dim());
	nf.forms.assign(p, QMatrix(q, q));
	for (std::size_t a = 0; a < q; ++a)
		for (std::size_t b = a + 1; b < q; ++b)
		{
			QVec br = g.bracket(nf.v_basis[a], nf.v_basis[b]);
			QVec coords;
			if (!solve(zcols, br, coords))
				fail(ErrorKind::invariant_violation,
				     "bracket of complement vectors leaves [g,g]");
			for (std::size_t k = 0; k < p; ++k)
			{
				nf.forms[k](a, b) = coords[k];
				nf.forms[k](b, a) = -coords[k];
			}
		}
	return nf;
}

bool is_automorphism(const GradedLieAlgebra &g, const QMatrix &m)
{
	const std::size_t n = g.dim();
	if (m.rows() != n || m.cols() != n || determinant(m) == 0)
		return false;
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
		{
			QVec lhs = m * g.bracket_basis(i, j);
			QVec rhs = g.bracket(m.col(i), m.col(j));
			if (lhs != rhs)
				return false;
		}
	return true;
}

bool is_graded_automorphism(const GradedLieAlgebra &g, const QMatrix &m)
{
	if (m.rows() != g.dim() || m.cols() != g.dim())
		return false;
	for (std::size_t i = 0; i < g.dim(); ++i)
		for (std::size_t j = 0; j < g.dim(); ++j)
			if (m(i, j) != 0 && g.weights()[i] != g.weights()[j])
				return false;
	return is_automorphism(g, m);
}

GradedLieAlgebra mohsen_modification(const GradedLieAlgebra &g)
{
	const std::size_t n = g.dim();
	const int top = g.max_weight();
	std::vector<int> w(2 * n + 1);
	std::vector<std::string> names(2 * n + 1);
	for (std::size_t j = 0; j < n; ++j)
	{
		w[j] = top + 1 - g.weights()[j];
		w[n + j] = g.weights()[j];
		names[j] = g.basis_names()[j] + "*";
		names[n + j] = g.basis_names()[j];
	}
	w[2 * n] = top + 1;
	names[2 * n] = "T";
	std::vector<BracketEntry> entries;
	for (const auto &e : g.nonzero())
		if (e.i < e.j)
			entries.push_back({n + e.i, n + e.j, n + e.k, e.coeff});
	// [X_i, X_l*] = sum_m -(w_m / (w_i + w_m)) c_im^l X_m* + delta_il T
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t l = 0; l < n; ++l)
		{
			for (std::size_t m = 0; m < n; ++m)
			{
				const Q &c = g.c(i, m, l);
				if (c == 0)
					continue;
				Q wm = g.weights()[m], wi = g.weights()[i];
				entries.push_back({n + i, l, m, -(wm / (wi + wm)) * c});
			}
			if (i == l)
				entries.push_back({n + i, l, 2 * n, Q(1)});
		}
	return GradedLieAlgebra("mohsen(" + g.name() + ")", w, entries, names);
}

} // namespace nilcalc
