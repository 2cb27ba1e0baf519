#include "nilcalc/errors.hpp"
#include "nilcalc/liealg.hpp"

#include <map>
#include <string>

namespace nilcalc {

namespace {

// words over {0 = X, 1 = Y}
using Word = std::string;
using Series = std::map<Word, Q>;

Series multiply(const Series &a, const Series &b, std::size_t max_len)
{
	Series r;
	for (auto &[wa, ca] : a)
		for (auto &[wb, cb] : b)
		{
			if (wa.size() + wb.size() > max_len)
				continue;
			Q &slot = r[wa + wb];
			slot += ca * cb;
		}
	for (auto it = r.begin(); it != r.end();)
		it = it->second == 0 ? r.erase(it) : std::next(it);
	return r;
}

// Coefficients c_w such that log(e^X e^Y) = sum_w c_w [[..[w1,w2],..],wm];
// Dynkin-Specht-Wever turns the associative coefficient z_w into z_w / |w|.
std::map<Word, Q> build_table()
{
	const std::size_t L = bch_max_step;
	Series w;
	Q fa = 1;
	for (std::size_t a = 0; a <= L; ++a)
	{
		if (a)
			fa *= static_cast<unsigned long>(a);
		Q fb = 1;
		for (std::size_t b = 0; a + b <= L; ++b)
		{
			if (b)
				fb *= static_cast<unsigned long>(b);
			if (a + b == 0)
				continue;
			w[Word(a, '0') + Word(b, '1')] = Q(1) / (fa * fb);
		}
	}
	Series log_series, power = w;
	for (std::size_t k = 1; k <= L; ++k)
	{
		Q coeff = Q(k % 2 ? 1 : -1) / static_cast<unsigned long>(k);
		for (auto &[word, c] : power)
			log_series[word] += coeff * c;
		power = multiply(power, w, L);
	}
	std::map<Word, Q> table;
	for (auto &[word, c] : log_series)
		if (c != 0 && word.size() >= 1)
		{
			if (word.size() >= 2 && word[0] == word[1])
				continue; // [a,a] = 0
			table[word] = c / static_cast<unsigned long>(word.size());
		}
	return table;
}

const std::map<Word, Q> &table()
{
	static const std::map<Word, Q> t = build_table();
	return t;
}

void accumulate(const GradedLieAlgebra &g, const QVec &x, const QVec &y,
                const QVec &value, Word &prefix, std::size_t max_len, QVec &out)
{
	auto it = table().find(prefix);
	if (it != table().end())
		for (std::size_t i = 0; i < out.size(); ++i)
			if (value[i] != 0)
				out[i] += it->second * value[i];
	if (prefix.size() == max_len)
		return;
	for (char letter : {'0', '1'})
	{
		if (prefix.size() == 1 && prefix[0] == letter)
			continue;
		QVec next = g.bracket(value, letter == '0' ? x : y);
		if (is_zero(next))
			continue;
		prefix.push_back(letter);
		accumulate(g, x, y, next, prefix, max_len, out);
		prefix.pop_back();
	}
}

} // namespace

QVec bch(const GradedLieAlgebra &g, const QVec &x, const QVec &y)
{
	const int step = descending_central_series(g).step;
	if (step > bch_max_step)
		fail(ErrorKind::unsupported_step,
		     "bch supports step <= " + std::to_string(bch_max_step) + ", got " +
		         std::to_string(step));
	QVec out(g.dim());
	const std::size_t max_len = static_cast<std::size_t>(std::max(step, 1));
	Word prefix = "0";
	accumulate(g, x, y, x, prefix, max_len, out);
	prefix = "1";
	accumulate(g, x, y, y, prefix, max_len, out);
	return out;
}

} // namespace nilcalc
