#include "nilcalc/rational.hpp"

#include "nilcalc/errors.hpp"

#include <cctype>
#include <utility>

namespace nilcalc {

Q parse_rational(const std::string &text)
{
	std::string s;
	for (char ch : text)
		if (!std::isspace(static_cast<unsigned char>(ch)))
			s += ch;
	if (s.empty())
		fail(ErrorKind::parse, "empty rational");
	auto slash = s.find('/');
	auto digits_ok = [](const std::string &part, bool allow_sign) {
		if (part.empty())
			return false;
		std::size_t start = 0;
		if (allow_sign && (part[0] == '-' || part[0] == '+'))
			start = 1;
		if (start == part.size())
			return false;
		for (std::size_t i = start; i < part.size(); ++i)
			if (!std::isdigit(static_cast<unsigned char>(part[i])))
				return false;
		return true;
	};
	std::string num = s.substr(0, slash);
	std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
	if (!digits_ok(num, true) || !digits_ok(den, false))
		fail(ErrorKind::parse, "not a rational: '" + text + "'");
	if (num[0] == '+')
		num = num.substr(1);
	mpz_class n(num, 10), d(den, 10);
	if (d == 0)
		fail(ErrorKind::domain, "zero denominator in '" + text + "'");
	Q q(n, d);
	q.canonicalize();
	return q;
}

std::string to_string(const Q &q) { return q.get_str(); }

std::string to_string(const QVec &v)
{
	std::string out = "(";
	for (std::size_t i = 0; i < v.size(); ++i)
	{
		if (i)
			out += ", ";
		out += v[i].get_str();
	}
	return out + ")";
}

QVec zero_vec(std::size_t n) { return QVec(n); }

QVec unit_vec(std::size_t n, std::size_t i)
{
	QVec v(n);
	v[i] = 1;
	return v;
}

bool is_zero(const QVec &v)
{
	for (auto &x : v)
		if (x != 0)
			return false;
	return true;
}

QVec operator+(const QVec &a, const QVec &b)
{
	QVec r(a.size());
	for (std::size_t i = 0; i < a.size(); ++i)
		r[i] = a[i] + b[i];
	return r;
}

QVec operator-(const QVec &a, const QVec &b)
{
	QVec r(a.size());
	for (std::size_t i = 0; i < a.size(); ++i)
		r[i] = a[i] - b[i];
	return r;
}

QVec operator-(const QVec &a)
{
	QVec r(a.size());
	for (std::size_t i = 0; i < a.size(); ++i)
		r[i] = -a[i];
	return r;
}

QVec operator*(const Q &s, const QVec &v)
{
	QVec r(v.size());
	for (std::size_t i = 0; i < v.size(); ++i)
		r[i] = s * v[i];
	return r;
}

Q dot(const QVec &a, const QVec &b)
{
	Q r = 0;
	for (std::size_t i = 0; i < a.size(); ++i)
		if (a[i] != 0 && b[i] != 0)
			r += a[i] * b[i];
	return r;
}

QMatrix QMatrix::identity(std::size_t n)
{
	QMatrix m(n, n);
	for (std::size_t i = 0; i < n; ++i)
		m(i, i) = 1;
	return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVec> &rows, std::size_t cols)
{
	QMatrix m(rows.size(), cols);
	for (std::size_t i = 0; i < rows.size(); ++i)
		for (std::size_t j = 0; j < cols; ++j)
			m(i, j) = rows[i][j];
	return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVec> &cols, std::size_t rows)
{
	QMatrix m(rows, cols.size());
	for (std::size_t j = 0; j < cols.size(); ++j)
		for (std::size_t i = 0; i < rows; ++i)
			m(i, j) = cols[j][i];
	return m;
}

QVec QMatrix::row(std::size_t i) const
{
	return QVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

QVec QMatrix::col(std::size_t j) const
{
	QVec v(rows_);
	for (std::size_t i = 0; i < rows_; ++i)
		v[i] = (*this)(i, j);
	return v;
}

QMatrix QMatrix::transpose() const
{
	QMatrix t(cols_, rows_);
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t j = 0; j < cols_; ++j)
			t(j, i) = (*this)(i, j);
	return t;
}

QMatrix QMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                       std::size_t nc) const
{
	QMatrix b(nr, nc);
	for (std::size_t i = 0; i < nr; ++i)
		for (std::size_t j = 0; j < nc; ++j)
			b(i, j) = (*this)(r0 + i, c0 + j);
	return b;
}

bool QMatrix::is_zero() const
{
	for (auto &x : data_)
		if (x != 0)
			return false;
	return true;
}

bool QMatrix::is_antisymmetric() const
{
	if (rows_ != cols_)
		return false;
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t j = i; j < cols_; ++j)
			if ((*this)(i, j) != -(*this)(j, i))
				return false;
	return true;
}

bool QMatrix::is_symmetric() const
{
	if (rows_ != cols_)
		return false;
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t j = i + 1; j < cols_; ++j)
			if ((*this)(i, j) != (*this)(j, i))
				return false;
	return true;
}

QMatrix operator*(const QMatrix &a, const QMatrix &b)
{
	QMatrix r(a.rows(), b.cols());
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t k = 0; k < a.cols(); ++k)
		{
			const Q &aik = a(i, k);
			if (aik == 0)
				continue;
			for (std::size_t j = 0; j < b.cols(); ++j)
				if (b(k, j) != 0)
					r(i, j) += aik * b(k, j);
		}
	return r;
}

QVec operator*(const QMatrix &a, const QVec &v)
{
	QVec r(a.rows());
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
			if (a(i, j) != 0 && v[j] != 0)
				r[i] += a(i, j) * v[j];
	return r;
}

QMatrix operator+(const QMatrix &a, const QMatrix &b)
{
	QMatrix r(a.rows(), a.cols());
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
			r(i, j) = a(i, j) + b(i, j);
	return r;
}

QMatrix operator-(const QMatrix &a, const QMatrix &b)
{
	QMatrix r(a.rows(), a.cols());
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
			r(i, j) = a(i, j) - b(i, j);
	return r;
}

QMatrix operator*(const Q &s, const QMatrix &a)
{
	QMatrix r(a.rows(), a.cols());
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
			r(i, j) = s * a(i, j);
	return r;
}

Echelon rref(QMatrix m)
{
	Echelon e;
	std::size_t r = 0;
	for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c)
	{
		std::size_t p = r;
		while (p < m.rows() && m(p, c) == 0)
			++p;
		if (p == m.rows())
			continue;
		if (p != r)
			for (std::size_t j = 0; j < m.cols(); ++j)
				std::swap(m(p, j), m(r, j));
		Q inv = 1 / m(r, c);
		for (std::size_t j = c; j < m.cols(); ++j)
			m(r, j) *= inv;
		for (std::size_t i = 0; i < m.rows(); ++i)
		{
			if (i == r || m(i, c) == 0)
				continue;
			Q f = m(i, c);
			for (std::size_t j = c; j < m.cols(); ++j)
				if (m(r, j) != 0)
					m(i, j) -= f * m(r, j);
		}
		e.pivots.push_back(c);
		++r;
	}
	e.reduced = std::move(m);
	return e;
}

std::size_t rank(const QMatrix &m) { return rref(m).pivots.size(); }

std::vector<QVec> kernel(const QMatrix &m)
{
	Echelon e = rref(m);
	std::vector<bool> is_pivot(m.cols(), false);
	for (auto p : e.pivots)
		is_pivot[p] = true;
	std::vector<QVec> basis;
	for (std::size_t f = 0; f < m.cols(); ++f)
	{
		if (is_pivot[f])
			continue;
		QVec v(m.cols());
		v[f] = 1;
		for (std::size_t r = 0; r < e.pivots.size(); ++r)
			v[e.pivots[r]] = -e.reduced(r, f);
		basis.push_back(std::move(v));
	}
	return basis;
}

Q determinant(QMatrix m)
{
	std::size_t n = m.rows();
	Q det = 1;
	for (std::size_t c = 0; c < n; ++c)
	{
		std::size_t p = c;
		while (p < n && m(p, c) == 0)
			++p;
		if (p == n)
			return 0;
		if (p != c)
		{
			for (std::size_t j = 0; j < n; ++j)
				std::swap(m(p, j), m(c, j));
			det = -det;
		}
		det *= m(c, c);
		for (std::size_t i = c + 1; i < n; ++i)
		{
			if (m(i, c) == 0)
				continue;
			Q f = m(i, c) / m(c, c);
			for (std::size_t j = c; j < n; ++j)
				m(i, j) -= f * m(c, j);
		}
	}
	return det;
}

bool invert(const QMatrix &m, QMatrix &out)
{
	std::size_t n = m.rows();
	QMatrix aug(n, 2 * n);
	for (std::size_t i = 0; i < n; ++i)
	{
		for (std::size_t j = 0; j < n; ++j)
			aug(i, j) = m(i, j);
		aug(i, n + i) = 1;
	}
	Echelon e = rref(aug);
	if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
		return false;
	out = e.reduced.block(0, n, n, n);
	return true;
}

bool solve(const QMatrix &m, const QVec &b, QVec &x)
{
	QMatrix aug(m.rows(), m.cols() + 1);
	for (std::size_t i = 0; i < m.rows(); ++i)
	{
		for (std::size_t j = 0; j < m.cols(); ++j)
			aug(i, j) = m(i, j);
		aug(i, m.cols()) = b[i];
	}
	Echelon e = rref(aug);
	if (!e.pivots.empty() && e.pivots.back() == m.cols())
		return false;
	x.assign(m.cols(), Q(0));
	for (std::size_t r = 0; r < e.pivots.size(); ++r)
		x[e.pivots[r]] = e.reduced(r, m.cols());
	return true;
}

Inertia inertia(const QMatrix &symmetric)
{
	QMatrix a = symmetric;
	std::size_t n = a.rows();
	Inertia in;
	std::vector<bool> done(n, false);
	auto add_to = [&](std::size_t i, std::size_t j) {
		// row_i += row_j, col_i += col_j
		for (std::size_t k = 0; k < n; ++k)
			a(i, k) += a(j, k);
		for (std::size_t k = 0; k < n; ++k)
			a(k, i) += a(k, j);
	};
	for (std::size_t step = 0; step < n; ++step)
	{
		std::size_t p = n;
		for (std::size_t i = 0; i < n && p == n; ++i)
			if (!done[i] && a(i, i) != 0)
				p = i;
		if (p == n)
		{
			for (std::size_t i = 0; i < n && p == n; ++i)
				for (std::size_t j = i + 1; j < n && p == n; ++j)
					if (!done[i] && !done[j] && a(i, j) != 0)
					{
						add_to(i, j);
						p = i;
					}
		}
		if (p == n)
			break;
		done[p] = true;
		const Q piv = a(p, p);
		if (piv > 0)
			++in.positive;
		else
			++in.negative;
		for (std::size_t i = 0; i < n; ++i)
		{
			if (done[i] || a(i, p) == 0)
				continue;
			Q f = a(i, p) / piv;
			for (std::size_t k = 0; k < n; ++k)
				a(i, k) -= f * a(p, k);
			for (std::size_t k = 0; k < n; ++k)
				a(k, i) -= f * a(k, p);
		}
	}
	in.zero = static_cast<int>(n) - in.positive - in.negative;
	return in;
}

std::vector<double> to_double(const QVec &v)
{
	std::vector<double> out(v.size());
	for (std::size_t i = 0; i < v.size(); ++i)
		out[i] = v[i].get_d();
	return out;
}

} // namespace nilcalc
