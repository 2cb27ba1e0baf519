#pragma once

#include "nilcalc/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace nilcalc {

using Exponent = std::vector<int>;

// Sparse multivariate polynomial over Q; zero coefficients are never stored.
class Polynomial
{
  public:
	Polynomial() = default;
	explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

	static Polynomial constant(std::size_t nvars, const Q &c);
	static Polynomial variable(std::size_t nvars, std::size_t i);
	static Polynomial monomial(const Exponent &e, const Q &c);

	std::size_t nvars() const { return nvars_; }
	const std::map<Exponent, Q> &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	int degree() const;
	bool is_homogeneous(int degree) const;
	Q coefficient(const Exponent &e) const;
	void add_term(const Exponent &e, const Q &c);

	Q evaluate(const QVec &point) const;
	Polynomial derivative(std::size_t var) const;
	Polynomial pow(unsigned k) const;

	Polynomial &operator+=(const Polynomial &o);
	Polynomial &operator-=(const Polynomial &o);
	Polynomial &operator*=(const Q &s);

	friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
	friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
	friend Polynomial operator*(const Q &s, Polynomial a) { return a *= s; }
	friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
	friend Polynomial operator-(Polynomial a) { return a *= Q(-1); }
	friend bool operator==(const Polynomial &a, const Polynomial &b)
	{
		return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
	}

	std::string to_string(const std::vector<std::string> &names = {}) const;

  private:
	std::size_t nvars_ = 0;
	std::map<Exponent, Q> terms_;
};

} // namespace nilcalc
