#include "nilcalc/document.hpp"

#include "nilcalc/errors.hpp"
#include "nilcalc/families.hpp"

#include "toml.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace nilcalc {

namespace {

[[noreturn]] void bad(const std::string &path, const std::string &what)
{
	fail(ErrorKind::malformed_input, path + ": " + what);
}

const Json &field(const Json &obj, const char *key, const std::string &path)
{
	auto it = obj.find(key);
	if (it == obj.end())
		bad(path, std::string("missing field '") + key + "'");
	return *it;
}

long long integer(const Json &v, const std::string &path)
{
	if (!v.is_number_integer())
		bad(path, "expected an integer");
	return v.get<long long>();
}

std::size_t index1(const Json &v, std::size_t n, const std::string &path)
{
	long long x = integer(v, path);
	if (x < 1 || static_cast<std::size_t>(x) > n)
		bad(path, "index " + std::to_string(x) + " outside 1.." + std::to_string(n));
	return static_cast<std::size_t>(x - 1);
}

Q rational(const Json &v, const std::string &path)
{
	if (v.is_number_integer())
		return Q(static_cast<long>(v.get<long long>()));
	if (v.is_number_float())
		fail(ErrorKind::parse, path + ": floating-point value; write it as a \"p/q\" string");
	if (!v.is_string())
		bad(path, "expected a \"p/q\" string");
	try
	{
		return parse_rational(v.get<std::string>());
	}
	catch (const Error &e)
	{
		throw Error(e.kind(), path + ": " + e.what());
	}
}

CoeffQ complex_coeff(const Json &v, const std::string &path)
{
	if (v.is_object())
	{
		CoeffQ c{Q(0), Q(0)};
		if (v.contains("re"))
			c.re = rational(v["re"], path + ".re");
		if (v.contains("im"))
			c.im = rational(v["im"], path + ".im");
		return c;
	}
	return {rational(v, path), Q(0)};
}

std::string at(const std::string &path, std::size_t i)
{
	return path + "[" + std::to_string(i) + "]";
}

const Json &array(const Json &v, const std::string &path)
{
	if (!v.is_array())
		bad(path, "expected an array");
	return v;
}

std::size_t top_coordinates(const std::vector<int> &weights)
{
	int top = weights.empty() ? 0 : *std::max_element(weights.begin(), weights.end());
	return static_cast<std::size_t>(std::count(weights.begin(), weights.end(), top));
}

OperatorBlock operator_from_json(const Json &j, const std::vector<int> &weights,
                                 const std::string &path)
{
	if (!j.is_object())
		bad(path, "expected an object");
	OperatorBlock op;
	std::size_t v = static_cast<std::size_t>(std::count(weights.begin(), weights.end(), 1));
	if (j.contains("metric"))
	{
		const Json &rows = array(j["metric"], path + ".metric");
		if (rows.size() != v)
			bad(path + ".metric", "expected " + std::to_string(v) + " rows");
		QMatrix m(v, v);
		for (std::size_t a = 0; a < v; ++a)
		{
			const Json &row = array(rows[a], at(path + ".metric", a));
			if (row.size() != v)
				bad(at(path + ".metric", a), "expected " + std::to_string(v) + " entries");
			for (std::size_t b = 0; b < v; ++b)
				m(a, b) = rational(row[b], at(at(path + ".metric", a), b));
		}
		op.metric = m;
	}
	long long r = j.contains("rank") ? integer(j["rank"], path + ".rank") : 1;
	if (r < 1)
		bad(path + ".rank", "rank must be positive");
	op.rank = static_cast<std::size_t>(r);
	std::size_t z = top_coordinates(weights);
	std::string gp = path + ".gamma";
	if (j.contains("gamma"))
	{
		const Json &rows = array(j["gamma"], gp);
		if (rows.size() != op.rank)
			bad(gp, "expected " + std::to_string(op.rank) + " rows");
		for (std::size_t a = 0; a < op.rank; ++a)
		{
			const Json &row = array(rows[a], at(gp, a));
			if (row.size() != op.rank)
				bad(at(gp, a), "expected " + std::to_string(op.rank) + " entries");
			std::vector<std::vector<CoeffQ>> out_row;
			for (std::size_t b = 0; b < op.rank; ++b)
			{
				std::string ep = at(at(gp, a), b);
				const Json &form = array(row[b], ep);
				if (form.size() != z)
					bad(ep, "linear form needs " + std::to_string(z) + " coefficients");
				std::vector<CoeffQ> f;
				for (std::size_t l = 0; l < z; ++l)
					f.push_back(complex_coeff(form[l], at(ep, l)));
				out_row.push_back(std::move(f));
			}
			op.gamma.push_back(std::move(out_row));
		}
	}
	else
	{
		op.gamma.assign(op.rank, std::vector<std::vector<CoeffQ>>(
		                             op.rank, std::vector<CoeffQ>(z, CoeffQ{Q(0), Q(0)})));
	}
	return op;
}

Json coeff_json(const Q &q)
{
	return to_string(q);
}

Json complex_json(const CoeffQ &c)
{
	if (c.im == 0)
		return coeff_json(c.re);
	return Json{{"re", coeff_json(c.re)}, {"im", coeff_json(c.im)}};
}

Json toml_to_json(const toml::node &node)
{
	if (auto t = node.as_table())
	{
		Json out = Json::object();
		for (auto &&[k, v] : *t)
			out[std::string(k.str())] = toml_to_json(v);
		return out;
	}
	if (auto a = node.as_array())
	{
		Json out = Json::array();
		for (auto &&v : *a)
			out.push_back(toml_to_json(v));
		return out;
	}
	if (auto s = node.as_string())
		return s->get();
	if (auto i = node.as_integer())
		return i->get();
	if (auto f = node.as_floating_point())
		return f->get();
	if (auto b = node.as_boolean())
		return b->get();
	auto src = node.source().begin;
	fail(ErrorKind::parse, "line " + std::to_string(src.line) + ", column " +
	                           std::to_string(src.column) + ": unsupported TOML value");
}

std::pair<std::size_t, std::size_t> line_column(const std::string &text, std::size_t byte)
{
	std::size_t line = 1, col = 1;
	for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i)
	{
		if (text[i] == '\n')
		{
			++line;
			col = 1;
		}
		else
			++col;
	}
	return {line, col};
}

std::size_t parse_count(const std::string &family, const std::string &param)
{
	if (param.empty())
		fail(ErrorKind::usage, family + " needs --param");
	std::size_t used = 0;
	long long v = 0;
	try
	{
		v = std::stoll(param, &used);
	}
	catch (const std::exception &)
	{
		used = 0;
	}
	if (used != param.size() || v < 1)
		fail(ErrorKind::usage, family + ": parameter must be a positive integer, got '" +
		                           param + "'");
	return static_cast<std::size_t>(v);
}

} // namespace

DocumentFormat format_for_path(const std::string &path)
{
	auto dot = path.rfind('.');
	if (dot != std::string::npos && path.substr(dot) == ".toml")
		return DocumentFormat::toml;
	return DocumentFormat::json;
}

AlgebraDocument document_from_json(const Json &j)
{
	if (!j.is_object())
		bad("$", "document must be an object");
	AlgebraDocument doc;
	const Json &name = field(j, "name", "$");
	if (!name.is_string())
		bad("$.name", "expected a string");
	doc.name = name.get<std::string>();
	long long dim = integer(field(j, "dimension", "$"), "$.dimension");
	if (dim < 1)
		bad("$.dimension", "dimension must be positive");
	std::size_t n = static_cast<std::size_t>(dim);
	const Json &weights = array(field(j, "weights", "$"), "$.weights");
	if (weights.size() != n)
		bad("$.weights", "expected " + std::to_string(n) + " weights");
	for (std::size_t i = 0; i < n; ++i)
	{
		long long w = integer(weights[i], at("$.weights", i));
		if (w < 1)
			bad(at("$.weights", i), "weights must be positive");
		doc.weights.push_back(static_cast<int>(w));
	}
	if (j.contains("basis"))
	{
		const Json &basis = array(j["basis"], "$.basis");
		if (basis.size() != n)
			bad("$.basis", "expected " + std::to_string(n) + " names");
		for (std::size_t i = 0; i < n; ++i)
		{
			if (!basis[i].is_string())
				bad(at("$.basis", i), "expected a string");
			doc.basis.push_back(basis[i].get<std::string>());
		}
	}
	else
	{
		for (std::size_t i = 0; i < n; ++i)
			doc.basis.push_back("X" + std::to_string(i + 1));
	}
	std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> seen;
	const Json &brackets = array(field(j, "brackets", "$"), "$.brackets");
	for (std::size_t b = 0; b < brackets.size(); ++b)
	{
		std::string p = at("$.brackets", b);
		const Json &e = brackets[b];
		if (!e.is_object())
			bad(p, "expected an object {i, j, k, coeff}");
		BracketEntry entry{index1(field(e, "i", p), n, p + ".i"),
		                   index1(field(e, "j", p), n, p + ".j"),
		                   index1(field(e, "k", p), n, p + ".k"),
		                   rational(field(e, "coeff", p), p + ".coeff")};
		auto key = std::make_tuple(entry.i, entry.j, entry.k);
		if (seen.count(key))
			bad(p, "duplicate of entry " + std::to_string(seen[key]));
		seen[key] = b;
		doc.brackets.push_back(entry);
	}
	if (j.contains("flag"))
	{
		const Json &flag = array(j["flag"], "$.flag");
		if (flag.size() != n)
			bad("$.flag", "flag must list all " + std::to_string(n) + " basis indices");
		std::vector<std::size_t> order;
		for (std::size_t i = 0; i < n; ++i)
			order.push_back(index1(flag[i], n, at("$.flag", i)));
		doc.flag = order;
	}
	if (j.contains("operator"))
		doc.op = operator_from_json(j["operator"], doc.weights, "$.operator");
	return doc;
}

AlgebraDocument parse_document(const std::string &text, DocumentFormat format,
                               const std::string &origin)
{
	Json j;
	if (format == DocumentFormat::toml)
	{
		try
		{
			toml::table t = toml::parse(text, origin);
			j = toml_to_json(t);
		}
		catch (const toml::parse_error &e)
		{
			auto src = e.source().begin;
			fail(ErrorKind::parse, origin + ": line " + std::to_string(src.line) +
			                           ", column " + std::to_string(src.column) + ": " +
			                           std::string(e.description()));
		}
	}
	else
	{
		try
		{
			j = Json::parse(text);
		}
		catch (const Json::parse_error &e)
		{
			auto [line, col] = line_column(text, e.byte);
			fail(ErrorKind::parse, origin + ": line " + std::to_string(line) + ", column " +
			                           std::to_string(col) + ": syntax error");
		}
	}
	return document_from_json(j);
}

AlgebraDocument load_document(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		fail(ErrorKind::usage, "cannot open " + path);
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_document(ss.str(), format_for_path(path), path);
}

Json document_to_json(const AlgebraDocument &doc)
{
	Json j;
	j["name"] = doc.name;
	j["dimension"] = doc.dimension();
	j["weights"] = doc.weights;
	j["basis"] = doc.basis;
	Json br = Json::array();
	for (auto &e : doc.brackets)
		br.push_back(Json{{"i", e.i + 1}, {"j", e.j + 1}, {"k", e.k + 1},
		                  {"coeff", coeff_json(e.coeff)}});
	j["brackets"] = br;
	if (doc.flag)
	{
		Json f = Json::array();
		for (auto i : *doc.flag)
			f.push_back(i + 1);
		j["flag"] = f;
	}
	if (doc.op)
	{
		Json op;
		if (doc.op->metric)
		{
			Json rows = Json::array();
			for (std::size_t a = 0; a < doc.op->metric->rows(); ++a)
			{
				Json row = Json::array();
				for (std::size_t b = 0; b < doc.op->metric->cols(); ++b)
					row.push_back(coeff_json((*doc.op->metric)(a, b)));
				rows.push_back(row);
			}
			op["metric"] = rows;
		}
		op["rank"] = doc.op->rank;
		Json rows = Json::array();
		for (auto &r : doc.op->gamma)
		{
			Json row = Json::array();
			for (auto &form : r)
			{
				Json f = Json::array();
				for (auto &c : form)
					f.push_back(complex_json(c));
				row.push_back(f);
			}
			rows.push_back(row);
		}
		op["gamma"] = rows;
		j["operator"] = op;
	}
	return j;
}

std::string canonical_text(const AlgebraDocument &doc)
{
	AlgebraDocument c = doc;
	c.brackets.clear();
	for (auto e : doc.brackets)
		if (e.coeff != 0)
			c.brackets.push_back(e);
	std::sort(c.brackets.begin(), c.brackets.end(), [](auto &a, auto &b) {
		return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
	});
	return document_to_json(c).dump();
}

std::string sha256_hex(const std::string &bytes)
{
	unsigned char md[EVP_MAX_MD_SIZE];
	unsigned int len = 0;
	if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
		fail(ErrorKind::invariant_violation, "SHA-256 digest failed");
	static const char *hex = "0123456789abcdef";
	std::string out;
	for (unsigned int i = 0; i < len; ++i)
	{
		out += hex[md[i] >> 4];
		out += hex[md[i] & 15];
	}
	return out;
}

std::string fingerprint(const AlgebraDocument &doc)
{
	return sha256_hex(canonical_text(doc));
}

GradedLieAlgebra to_algebra(const AlgebraDocument &doc)
{
	return GradedLieAlgebra(doc.name, doc.weights, doc.brackets, doc.basis);
}

GradedLieAlgebra parse_algebra(const std::string &text, DocumentFormat format)
{
	GradedLieAlgebra g = to_algebra(parse_document(text, format));
	auto diags = validate(g);
	if (!diags.empty())
		fail(ErrorKind::malformed_input, std::string(axiom_name(diags.front().axiom)) +
		                                     " violated: " + diags.front().message);
	return g;
}

AlgebraDocument document_from_algebra(const GradedLieAlgebra &g)
{
	AlgebraDocument doc;
	doc.name = g.name();
	doc.weights = g.weights();
	doc.basis = g.basis_names();
	doc.brackets = g.upper_entries();
	return doc;
}

BvEOperatorSpec operator_spec(const AlgebraDocument &doc)
{
	if (!doc.op)
		fail(ErrorKind::usage, doc.name + ": document has no operator block");
	BvEOperatorSpec spec;
	spec.algebra = to_algebra(doc);
	spec.rank = doc.op->rank;
	spec.metric = doc.op->metric ? *doc.op->metric : standard_metric(spec.algebra);
	std::size_t z = top_coordinates(doc.weights);
	for (std::size_t l = 0; l < z; ++l)
	{
		Eigen::MatrixXcd m(spec.rank, spec.rank);
		for (std::size_t a = 0; a < spec.rank; ++a)
			for (std::size_t b = 0; b < spec.rank; ++b)
			{
				auto &c = doc.op->gamma[a][b][l];
				m(a, b) = cplx(c.re.get_d(), c.im.get_d());
			}
		spec.gamma_forms.push_back(m);
	}
	validate_spec(spec);
	return spec;
}

Eigen::MatrixXcd gamma_matrix(const OperatorBlock &op, const QVec &xi)
{
	Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(op.rank, op.rank);
	for (std::size_t a = 0; a < op.rank; ++a)
		for (std::size_t b = 0; b < op.rank; ++b)
		{
			auto &form = op.gamma[a][b];
			if (form.size() != xi.size())
				fail(ErrorKind::domain, "gamma form and covector sizes differ");
			for (std::size_t l = 0; l < xi.size(); ++l)
				m(a, b) += cplx(Q(form[l].re * xi[l]).get_d(), Q(form[l].im * xi[l]).get_d());
		}
	return m;
}

std::vector<std::string> family_names()
{
	return {"heisenberg",    "complex-heisenberg", "heisenberg-product", "quotient-chain",
	        "free-step2",    "engel",              "upper-triangular",   "mohsen-of"};
}

AlgebraDocument corpus_generate(const std::string &family, const std::string &param)
{
	if (family == "heisenberg")
		return document_from_algebra(families::heisenberg(parse_count(family, param)));
	if (family == "complex-heisenberg")
		return document_from_algebra(families::complex_heisenberg(parse_count(family, param)));
	if (family == "quotient-chain")
		return document_from_algebra(families::quotient_chain(parse_count(family, param)));
	if (family == "free-step2")
		return document_from_algebra(families::free_step2(parse_count(family, param)));
	if (family == "upper-triangular")
		return document_from_algebra(families::upper_triangular(parse_count(family, param)));
	if (family == "engel")
		return document_from_algebra(families::engel());
	if (family == "heisenberg-product")
	{
		std::vector<std::size_t> ns;
		std::stringstream ss(param);
		for (std::string part; std::getline(ss, part, ',');)
			ns.push_back(parse_count(family, part));
		if (ns.empty())
			fail(ErrorKind::usage, "heisenberg-product needs --param n1,n2,...");
		return document_from_algebra(families::heisenberg_product(ns));
	}
	if (family == "mohsen-of")
	{
		if (param.empty())
			fail(ErrorKind::usage, "mohsen-of needs --param FILE");
		GradedLieAlgebra g = to_algebra(load_document(param));
		auto diags = validate(g);
		if (!diags.empty())
			fail(ErrorKind::malformed_input, param + ": " + axiom_name(diags.front().axiom) +
			                                     " violated: " + diags.front().message);
		return document_from_algebra(mohsen_modification(g));
	}
	fail(ErrorKind::usage, "unknown family '" + family + "'");
}

} // namespace nilcalc
