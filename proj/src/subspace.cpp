#include "nilcalc/subspace.hpp"

namespace nilcalc {

Subspace Subspace::span(std::size_t ambient, const std::vector<QVec> &vectors)
{
	Subspace s(ambient);
	if (vectors.empty())
		return s;
	Echelon e = rref(QMatrix::from_rows(vectors, ambient));
	for (std::size_t r = 0; r < e.pivots.size(); ++r)
		s.rows_.push_back(e.reduced.row(r));
	return s;
}

Subspace Subspace::whole(std::size_t ambient)
{
	Subspace s(ambient);
	for (std::size_t i = 0; i < ambient; ++i)
		s.rows_.push_back(unit_vec(ambient, i));
	return s;
}

Subspace Subspace::coordinate(std::size_t ambient,
                              const std::vector<std::size_t> &indices)
{
	std::vector<QVec> v;
	for (auto i : indices)
		v.push_back(unit_vec(ambient, i));
	return span(ambient, v);
}

bool Subspace::contains(const QVec &v) const
{
	QVec r = v;
	for (const auto &row : rows_)
	{
		std::size_t p = 0;
		while (row[p] == 0)
			++p;
		if (r[p] != 0)
		{
			Q f = r[p];
			for (std::size_t j = p; j < ambient_; ++j)
				if (row[j] != 0)
					r[j] -= f * row[j];
		}
	}
	return is_zero(r);
}

bool Subspace::contains(const Subspace &other) const
{
	for (const auto &v : other.rows_)
		if (!contains(v))
			return false;
	return true;
}

Subspace Subspace::operator+(const Subspace &other) const
{
	std::vector<QVec> all = rows_;
	all.insert(all.end(), other.rows_.begin(), other.rows_.end());
	return span(ambient_, all);
}

Subspace Subspace::intersect(const Subspace &other) const
{
	if (rows_.empty() || other.rows_.empty())
		return Subspace(ambient_);
	// a·U = b·W  <=>  (a, b) in ker [U^T | -W^T]
	std::size_t p = rows_.size(), q = other.rows_.size();
	QMatrix m(ambient_, p + q);
	for (std::size_t i = 0; i < ambient_; ++i)
	{
		for (std::size_t a = 0; a < p; ++a)
			m(i, a) = rows_[a][i];
		for (std::size_t b = 0; b < q; ++b)
			m(i, p + b) = -other.rows_[b][i];
	}
	std::vector<QVec> out;
	for (const auto &k : kernel(m))
	{
		QVec v(ambient_);
		for (std::size_t a = 0; a < p; ++a)
			if (k[a] != 0)
				v = v + k[a] * rows_[a];
		out.push_back(v);
	}
	return span(ambient_, out);
}

Subspace Subspace::orthogonal() const
{
	if (rows_.empty())
		return whole(ambient_);
	return span(ambient_, kernel(QMatrix::from_rows(rows_, ambient_)));
}

} // namespace nilcalc
