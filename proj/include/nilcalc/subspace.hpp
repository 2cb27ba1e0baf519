#pragma once

#include "nilcalc/rational.hpp"

#include <vector>

namespace nilcalc {

// Subspace of Q^n held in reduced row-echelon form.
class Subspace
{
  public:
	Subspace() = default;
	explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

	static Subspace span(std::size_t ambient, const std::vector<QVec> &vectors);
	static Subspace whole(std::size_t ambient);
	static Subspace coordinate(std::size_t ambient,
	                           const std::vector<std::size_t> &indices);

	std::size_t ambient() const { return ambient_; }
	std::size_t dim() const { return rows_.size(); }
	const std::vector<QVec> &basis() const { return rows_; }

	bool contains(const QVec &v) const;
	bool contains(const Subspace &other) const;
	Subspace operator+(const Subspace &other) const;
	Subspace intersect(const Subspace &other) const;
	// orthogonal complement for the standard inner product
	Subspace orthogonal() const;

	friend bool operator==(const Subspace &a, const Subspace &b)
	{
		return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
	}

  private:
	std::size_t ambient_ = 0;
	std::vector<QVec> rows_;
};

} // namespace nilcalc
