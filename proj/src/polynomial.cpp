#include "nilcalc/polynomial.hpp"

#include <algorithm>
#include <numeric>

namespace nilcalc {

Polynomial Polynomial::constant(std::size_t nvars, const Q &c)
{
	Polynomial p(nvars);
	p.add_term(Exponent(nvars, 0), c);
	return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i)
{
	Polynomial p(nvars);
	Exponent e(nvars, 0);
	e[i] = 1;
	p.add_term(e, 1);
	return p;
}

Polynomial Polynomial::monomial(const Exponent &e, const Q &c)
{
	Polynomial p(e.size());
	p.add_term(e, c);
	return p;
}

int Polynomial::degree() const
{
	int d = -1;
	for (auto &[e, c] : terms_)
		d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
	return d;
}

bool Polynomial::is_homogeneous(int degree) const
{
	for (auto &[e, c] : terms_)
		if (std::accumulate(e.begin(), e.end(), 0) != degree)
			return false;
	return true;
}

Q Polynomial::coefficient(const Exponent &e) const
{
	auto it = terms_.find(e);
	return it == terms_.end() ? Q(0) : it->second;
}

void Polynomial::add_term(const Exponent &e, const Q &c)
{
	if (c == 0)
		return;
	auto [it, inserted] = terms_.emplace(e, c);
	if (!inserted)
	{
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}
}

Q Polynomial::evaluate(const QVec &point) const
{
	Q total = 0;
	for (auto &[e, c] : terms_)
	{
		Q m = c;
		for (std::size_t i = 0; i < e.size(); ++i)
			for (int k = 0; k < e[i]; ++k)
				m *= point[i];
		total += m;
	}
	return total;
}

Polynomial Polynomial::derivative(std::size_t var) const
{
	Polynomial d(nvars_);
	for (auto &[e, c] : terms_)
	{
		if (e[var] == 0)
			continue;
		Exponent f = e;
		--f[var];
		d.add_term(f, c * e[var]);
	}
	return d;
}

Polynomial Polynomial::pow(unsigned k) const
{
	Polynomial r = constant(nvars_, 1);
	for (unsigned i = 0; i < k; ++i)
		r = r * *this;
	return r;
}

Polynomial &Polynomial::operator+=(const Polynomial &o)
{
	for (auto &[e, c] : o.terms_)
		add_term(e, c);
	return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o)
{
	for (auto &[e, c] : o.terms_)
		add_term(e, -c);
	return *this;
}

Polynomial &Polynomial::operator*=(const Q &s)
{
	if (s == 0)
	{
		terms_.clear();
		return *this;
	}
	for (auto &[e, c] : terms_)
		c *= s;
	return *this;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
	Polynomial r(a.nvars_);
	for (auto &[ea, ca] : a.terms_)
		for (auto &[eb, cb] : b.terms_)
		{
			Exponent e(ea.size());
			for (std::size_t i = 0; i < e.size(); ++i)
				e[i] = ea[i] + eb[i];
			r.add_term(e, ca * cb);
		}
	return r;
}

std::string Polynomial::to_string(const std::vector<std::string> &names) const
{
	if (terms_.empty())
		return "0";
	std::string out;
	bool first = true;
	// highest total degree first, then descending exponents
	std::vector<std::pair<Exponent, Q>> ordered(terms_.rbegin(), terms_.rend());
	std::stable_sort(ordered.begin(), ordered.end(), [](auto &x, auto &y) {
		return std::accumulate(x.first.begin(), x.first.end(), 0) >
		       std::accumulate(y.first.begin(), y.first.end(), 0);
	});
	for (auto &[e, c] : ordered)
	{
		Q mag = abs(c);
		bool unit = mag == 1;
		bool is_const = std::accumulate(e.begin(), e.end(), 0) == 0;
		if (first)
			out += c < 0 ? "-" : "";
		else
			out += c < 0 ? " - " : " + ";
		first = false;
		std::string mono;
		for (std::size_t i = 0; i < e.size(); ++i)
		{
			if (e[i] == 0)
				continue;
			if (!mono.empty())
				mono += "*";
			mono += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
			if (e[i] > 1)
				mono += "^" + std::to_string(e[i]);
		}
		if (is_const)
			out += mag.get_str();
		else if (unit)
			out += mono;
		else
			out += mag.get_str() + "*" + mono;
	}
	return out;
}

} // namespace nilcalc
