#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace nilcalc {

using Q = mpq_class;
using QVec = std::vector<Q>;

Q parse_rational(const std::string &text);
std::string to_string(const Q &q);
std::string to_string(const QVec &v);

QVec zero_vec(std::size_t n);
QVec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const QVec &v);
QVec operator+(const QVec &a, const QVec &b);
QVec operator-(const QVec &a, const QVec &b);
QVec operator-(const QVec &a);
QVec operator*(const Q &s, const QVec &v);
Q dot(const QVec &a, const QVec &b);

class QMatrix
{
  public:
	QMatrix() = default;
	QMatrix(std::size_t rows, std::size_t cols)
	    : rows_(rows), cols_(cols), data_(rows * cols)
	{}

	static QMatrix identity(std::size_t n);
	static QMatrix from_rows(const std::vector<QVec> &rows, std::size_t cols);
	static QMatrix from_columns(const std::vector<QVec> &cols, std::size_t rows);

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_; }
	Q &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
	const Q &operator()(std::size_t i, std::size_t j) const
	{
		return data_[i * cols_ + j];
	}

	QVec row(std::size_t i) const;
	QVec col(std::size_t j) const;
	QMatrix transpose() const;
	QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr,
	              std::size_t nc) const;
	bool is_zero() const;
	bool is_antisymmetric() const;
	bool is_symmetric() const;

	friend bool operator==(const QMatrix &a, const QMatrix &b)
	{
		return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
	}

  private:
	std::size_t rows_ = 0, cols_ = 0;
	std::vector<Q> data_;
};

QMatrix operator*(const QMatrix &a, const QMatrix &b);
QVec operator*(const QMatrix &a, const QVec &v);
QMatrix operator+(const QMatrix &a, const QMatrix &b);
QMatrix operator-(const QMatrix &a, const QMatrix &b);
QMatrix operator*(const Q &s, const QMatrix &a);

struct Echelon
{
	QMatrix reduced;
	std::vector<std::size_t> pivots;
};

Echelon rref(QMatrix m);
std::size_t rank(const QMatrix &m);
std::vector<QVec> kernel(const QMatrix &m);
Q determinant(QMatrix m);
bool invert(const QMatrix &m, QMatrix &out);
// Solve m x = b; false when inconsistent.
bool solve(const QMatrix &m, const QVec &b, QVec &x);

// signature (positive count minus negative count) of a symmetric matrix
struct Inertia
{
	int positive = 0, negative = 0, zero = 0;
	int signature() const { return positive - negative; }
};
Inertia inertia(const QMatrix &symmetric);

std::vector<double> to_double(const QVec &v);

} // namespace nilcalc
