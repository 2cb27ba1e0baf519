#include "nilcalc/commands.hpp"

#include "nilcalc/coadjoint.hpp"
#include "nilcalc/errors.hpp"
#include "nilcalc/lagrangian.hpp"
#include "nilcalc/parallel.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace nilcalc {

namespace {

struct Context
{
	const RunOptions &opt;
	Json warnings = Json::array();
	std::optional<AlgebraDocument> doc;
	// reported after the results are kept
	std::optional<Error> deferred;
};

Json qvec_json(const QVec &v)
{
	Json out = Json::array();
	for (auto &q : v)
		out.push_back(to_string(q));
	return out;
}

Json cplx_json(cplx z)
{
	return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json indices_json(const std::vector<std::size_t> &idx)
{
	Json out = Json::array();
	for (auto i : idx)
		out.push_back(i + 1);
	return out;
}

Json names_json(const GradedLieAlgebra &g, const std::vector<std::size_t> &idx)
{
	Json out = Json::array();
	for (auto i : idx)
		out.push_back(g.basis_names()[i]);
	return out;
}

const AlgebraDocument &need_document(Context &ctx)
{
	if (!ctx.doc)
		fail(ErrorKind::usage, "this command needs --algebra FILE or --family NAME");
	return *ctx.doc;
}

GradedLieAlgebra validated_algebra(Context &ctx)
{
	GradedLieAlgebra g = to_algebra(need_document(ctx));
	auto diags = validate(g);
	if (!diags.empty())
		fail(ErrorKind::malformed_input, std::string(axiom_name(diags.front().axiom)) +
		                                     " violated: " + diags.front().message);
	return g;
}

JordanHolderFlag flag_for(const Context &ctx, const GradedLieAlgebra &g)
{
	if (ctx.doc && ctx.doc->flag)
		return make_flag(g, *ctx.doc->flag);
	return jordan_holder_basis(g);
}

// full covector, or center coordinates extended by zero
Covector covector_option(const Context &ctx, const GradedLieAlgebra &g,
                         const JordanHolderFlag &flag)
{
	QVec v = parse_covector(*ctx.opt.xi);
	if (v.size() == g.dim())
		return v;
	if (v.size() == flag.center_dim)
		return extend_center_dual(g, flag, v);
	fail(ErrorKind::usage, "--xi needs " + std::to_string(g.dim()) + " or " +
	                           std::to_string(flag.center_dim) + " entries");
}

Json cmd_validate(Context &ctx)
{
	GradedLieAlgebra g = to_algebra(need_document(ctx));
	auto diags = validate(g);
	Json r;
	r["valid"] = diags.empty();
	Json d = Json::array();
	for (auto &x : diags)
		d.push_back(Json{{"axiom", axiom_name(x.axiom)},
		                 {"indices", indices_json(x.indices)},
		                 {"message", x.message}});
	r["diagnostics"] = d;
	r["dimension"] = g.dim();
	r["weights"] = g.weights();
	if (diags.empty())
	{
		r["step"] = descending_central_series(g).step;
		r["center_dimension"] = center(g).dim();
		r["derived_dimension"] = derived_subalgebra(g).dim();
		r["flag"] = indices_json(flag_for(ctx, g).order);
	}
	else
		ctx.deferred = Error(ErrorKind::malformed_input,
		                     std::string(axiom_name(diags.front().axiom)) +
		                         " violated: " + diags.front().message);
	return r;
}

Json cmd_orbits(Context &ctx)
{
	GradedLieAlgebra g = validated_algebra(ctx);
	JordanHolderFlag flag = flag_for(ctx, g);
	Json r;
	r["flag"] = indices_json(flag.order);
	r["center"] = Json{{"dimension", flag.center_dim},
	                   {"basis", names_json(g, flag.center_indices())}};
	r["codimension"] = g.dim() - flag.center_dim;
	PfaffianPolynomial pf = pfaffian_on_center_dual(g, flag);
	r["pfaffian"] = Json{{"variables", pf.variables},
	                     {"odd_codimension", pf.odd_codimension},
	                     {"polynomial", pf.to_string()},
	                     {"degree", pf.poly.is_zero() ? -1 : pf.poly.degree()}};
	r["pfaffian_squared"] = determinant_on_center_dual(g, flag).to_string(pf.variables);
	FlatOrbitVerdict v = has_flat_orbits(g, flag, ctx.opt.seed.value_or(1));
	r["flat_orbits"] = v.flat;
	r["reason"] = v.reason;
	r["witness"] = v.witness ? qvec_json(*v.witness) : Json(nullptr);
	if (ctx.opt.xi)
	{
		Covector xi = covector_option(ctx, g, flag);
		r["point"] = Json{{"xi", qvec_json(xi)},
		                  {"flat", is_flat(g, xi)},
		                  {"orbit_dimension", rank(kirillov_form(g, xi))}};
	}
	return r;
}

Json cmd_stratify(Context &ctx)
{
	GradedLieAlgebra g = validated_algebra(ctx);
	JordanHolderFlag flag = flag_for(ctx, g);
	int count = ctx.opt.resolution.value_or(16);
	if (count < 1)
		fail(ErrorKind::usage, "--resolution must be positive");
	std::mt19937_64 rng(ctx.opt.seed.value_or(1));
	std::uniform_int_distribution<int> entry(-3, 3);
	std::vector<Covector> samples;
	for (int s = 0; s < count; ++s)
	{
		Covector xi(g.dim());
		for (auto &q : xi)
			q = entry(rng);
		samples.push_back(xi);
	}
	StrataReport rep = enumerate_strata(g, flag, samples);
	Json r;
	r["flag"] = indices_json(flag.order);
	r["samples"] = count;
	Json strata = Json::array();
	for (auto &[profile, members] : rep.strata)
		strata.push_back(Json{{"profile", to_string(profile)},
		                      {"count", members.size()},
		                      {"example", qvec_json(members.front())}});
	r["strata"] = strata;
	r["top"] = to_string(rep.top);
	r["top_orbit_dimension"] = rep.top_orbit_dim;
	return r;
}

Json cmd_polarize(Context &ctx)
{
	GradedLieAlgebra g = validated_algebra(ctx);
	JordanHolderFlag flag = flag_for(ctx, g);
	Covector xi;
	if (ctx.opt.xi)
		xi = covector_option(ctx, g, flag);
	else
	{
		FlatOrbitVerdict v = has_flat_orbits(g, flag, ctx.opt.seed.value_or(1));
		if (!v.witness)
			fail(ErrorKind::domain, "no flat covector to polarize at; pass --xi");
		xi = *v.witness;
		ctx.warnings.push_back("no --xi given; using the flat-orbit witness");
	}
	Subspace h = vergne_polarization(g, flag, xi);
	std::size_t orbit = rank(kirillov_form(g, xi));
	bool subalgebra = true, isotropic = true;
	for (auto &a : h.basis())
		for (auto &b : h.basis())
		{
			QVec c = g.bracket(a, b);
			subalgebra = subalgebra && h.contains(c);
			isotropic = isotropic && dot(xi, c) == 0;
		}
	bool codim_ok = 2 * (g.dim() - h.dim()) == orbit;
	Json basis = Json::array();
	for (auto &v : h.basis())
		basis.push_back(qvec_json(v));
	Json r;
	r["xi"] = qvec_json(xi);
	r["flat"] = is_flat(g, xi);
	r["polarization"] = basis;
	r["dimension"] = h.dim();
	r["codimension"] = g.dim() - h.dim();
	r["orbit_dimension"] = orbit;
	r["checks"] = Json{{"subalgebra", subalgebra},
	                   {"isotropic", isotropic},
	                   {"half_rank_codimension", codim_ok}};
	if (!(subalgebra && isotropic && codim_ok))
		ctx.deferred = Error(ErrorKind::invariant_violation, "polarization failed its own checks");
	return r;
}

Lagrangian random_lagrangian(std::mt19937_64 &rng, std::size_t d)
{
	std::uniform_int_distribution<int> entry(-3, 3);
	auto symmetric = [&] {
		QMatrix s(d, d);
		for (std::size_t i = 0; i < d; ++i)
			for (std::size_t j = i; j < d; ++j)
				s(i, j) = s(j, i) = entry(rng);
		return s;
	};
	// graph of a symmetric map, then a lower and an upper shear
	QMatrix s = symmetric(), lower = symmetric(), upper = symmetric();
	Lagrangian l;
	for (std::size_t c = 0; c < d; ++c)
	{
		QVec x = unit_vec(d, c), y = s.col(c);
		QVec y2 = y + lower * x;
		QVec x2 = x + upper * y2;
		QVec v = x2;
		v.insert(v.end(), y2.begin(), y2.end());
		l.basis.push_back(v);
	}
	return l;
}

Json cmd_maslov(Context &ctx)
{
	double tol = ctx.opt.tolerance.value_or(1e-6);
	int trials = ctx.opt.resolution.value_or(16);
	if (trials < 1)
		fail(ErrorKind::usage, "--resolution must be positive");
	auto r2 = SymplecticSpace::standard(1);
	Lagrangian a{{{Q(1), Q(0)}}}, b{{{Q(0), Q(1)}}}, c{{{Q(1), Q(1)}}};
	CocycleCheck ref = lion_cocycle_check(r2, a, b, c);
	Json r;
	r["reference"] = Json{{"maslov", ref.maslov},      {"eta12", ref.eta12},
	                      {"eta23", ref.eta23},        {"eta31", ref.eta31},
	                      {"residual", ref.residual}};
	bool passed = ref.maslov == -1 && ref.residual < tol;
	std::mt19937_64 rng(ctx.opt.seed.value_or(1));
	Json dims = Json::array();
	for (std::size_t d = 1; d <= 3; ++d)
	{
		auto space = SymplecticSpace::standard(d);
		int used = 0, skipped = 0;
		double worst = 0;
		std::map<int, int> histogram;
		while (used < trials)
		{
			Lagrangian l1 = random_lagrangian(rng, d), l2 = random_lagrangian(rng, d),
			           l3 = random_lagrangian(rng, d);
			CocycleCheck chk = lion_cocycle_check(space, l1, l2, l3);
			if (chk.near_degenerate)
			{
				++skipped;
				continue;
			}
			++used;
			worst = std::max(worst, chk.residual);
			++histogram[chk.maslov];
		}
		Json hist = Json::object();
		for (auto &[m, n] : histogram)
			hist[std::to_string(m)] = n;
		dims.push_back(Json{{"dimension", 2 * d},
		                    {"trials", used},
		                    {"skipped_near_degenerate", skipped},
		                    {"max_residual", worst},
		                    {"maslov_histogram", hist}});
		passed = passed && worst < tol;
	}
	r["dimensions"] = dims;
	r["tolerance"] = tol;
	r["passed"] = passed;
	if (!passed)
		ctx.deferred =
		    Error(ErrorKind::invariant_violation, "Maslov/eta cocycle residual above tolerance");
	return r;
}

Json witness_json(const Witness &w)
{
	return Json{{"xi", qvec_json(w.xi)},
	            {"layer", w.layer},
	            {"kernel_dimension", w.kernel_dim},
	            {"eigenvalue", cplx_json(w.eigenvalue)},
	            {"detail", w.detail}};
}

Json point_json(const PointResult &p)
{
	Json layers = Json::array();
	for (auto &l : p.layers)
		layers.push_back(Json{{"k", l.k},
		                      {"sigma_min", l.sigma_min},
		                      {"kernel_dimension", l.kernel_dim},
		                      {"verdict", verdict_name(l.verdict)}});
	Json spectrum = Json::array();
	for (auto z : p.gamma_spectrum)
		spectrum.push_back(cplx_json(z));
	return Json{{"xi", qvec_json(p.xi)},
	            {"branch", p.full_rank ? "full-rank" : "degenerate"},
	            {"threshold", p.threshold},
	            {"threshold_zero", p.threshold_zero},
	            {"gamma_norm", p.gamma_norm},
	            {"cutoff", p.cutoff},
	            {"layers", layers},
	            {"gamma_spectrum", spectrum},
	            {"verdict", verdict_name(p.verdict)},
	            {"witness", p.witness ? witness_json(*p.witness) : Json(nullptr)}};
}

RocklandCheckConfig check_config(const Context &ctx)
{
	RocklandCheckConfig c;
	c.truncation = ctx.opt.truncation.value_or(c.truncation);
	c.tolerance = ctx.opt.tolerance.value_or(c.tolerance);
	c.resolution = ctx.opt.resolution.value_or(c.resolution);
	c.seed = ctx.opt.seed.value_or(c.seed);
	c.threads = ctx.opt.threads;
	validate_config(c);
	return c;
}

Json cmd_helliptic(Context &ctx)
{
	validated_algebra(ctx);
	BvEOperatorSpec spec = operator_spec(need_document(ctx));
	RocklandCheckConfig config = check_config(ctx);
	Json r;
	r["config"] = Json{{"truncation", config.truncation},
	                   {"tolerance", config.tolerance},
	                   {"resolution", config.resolution},
	                   {"seed", config.seed}};
	if (ctx.opt.xi)
	{
		QVec xi = parse_covector(*ctx.opt.xi);
		PointResult p = check_bve_at(spec, xi, config.tolerance);
		r["mode"] = "point";
		r["verdict"] = verdict_name(p.verdict);
		r["point"] = point_json(p);
		if (p.full_rank)
		{
			Json kernels = Json::array();
			for (auto &e : fiber_kernel_report(spec, xi, config))
				kernels.push_back(Json{{"k", e.k}, {"kernel_dimension", e.kernel_dim}});
			r["fiber_kernels"] = kernels;
			const GradedLieAlgebra &g = spec.algebra;
			FlatRepresentation rep = flat_rep(g, jordan_holder_basis(g),
			                                  extend_to_algebra(spec, xi), spec.metric);
			if (rep.dim() <= 2)
			{
				auto ladder = rockland_bruteforce(rep, bve_symbol(spec),
				                                  default_ladder(config.truncation));
				Json points = Json::array();
				for (auto &p : ladder)
					points.push_back(Json{{"truncation", p.truncation},
					                      {"sigma_min", p.sigma_min},
					                      {"fiber", p.fiber},
					                      {"hermite", p.hermite}});
				r["ladder"] = Json{{"points", points}, {"trend", trend_name(classify_ladder(ladder))}};
			}
		}
		if (p.verdict == Verdict::undetermined)
			ctx.warnings.push_back("smallest singular value inside the undetermined band");
		return r;
	}
	EllipticityReport rep = check_bve_sphere(spec, config);
	r["mode"] = "sphere";
	r["verdict"] = verdict_name(rep.verdict);
	r["exhaustive"] = rep.exhaustive;
	r["scope"] = rep.scope;
	Json samples = Json::array();
	for (auto &p : rep.samples)
		samples.push_back(point_json(p));
	r["samples"] = samples;
	Json witnesses = Json::array();
	for (auto &w : rep.witnesses)
		witnesses.push_back(witness_json(w));
	r["witnesses"] = witnesses;
	if (!rep.exhaustive)
		ctx.warnings.push_back("verdict holds on the sampled sphere points only");
	if (rep.verdict == Verdict::undetermined)
		ctx.warnings.push_back("smallest singular value inside the undetermined band");
	return r;
}

Json cmd_engel_check(Context &ctx)
{
	Eigen::MatrixXcd gamma;
	if (ctx.opt.gamma)
		gamma = parse_complex_matrix(*ctx.opt.gamma);
	else if (ctx.doc && ctx.doc->op)
	{
		validated_algebra(ctx);
		std::size_t z = ctx.doc->op->gamma.front().front().size();
		if (z != 1)
			fail(ErrorKind::domain, "engel-check needs a one-dimensional top layer");
		gamma = gamma_matrix(*ctx.doc->op, QVec{Q(1)});
	}
	else
		fail(ErrorKind::usage, "engel-check needs --gamma or an operator block");
	EngelCheck chk = check_engel_gamma(gamma, ctx.opt.tolerance.value_or(1e-9));
	Json rows = Json::array();
	for (Eigen::Index a = 0; a < gamma.rows(); ++a)
	{
		Json row = Json::array();
		for (Eigen::Index b = 0; b < gamma.cols(); ++b)
			row.push_back(cplx_json(gamma(a, b)));
		rows.push_back(row);
	}
	Json eig = Json::array();
	for (auto z : chk.eigenvalues)
		eig.push_back(cplx_json(z));
	Json r;
	r["gamma"] = rows;
	r["eigenvalues"] = eig;
	r["holds"] = chk.holds;
	r["undetermined"] = chk.undetermined;
	if (chk.undetermined)
		ctx.warnings.push_back("an eigenvalue lies within tolerance of the excluded set");
	return r;
}

Json cmd_mohsen(Context &ctx)
{
	GradedLieAlgebra g = validated_algebra(ctx);
	GradedLieAlgebra m = mohsen_modification(g);
	auto diags = validate(m);
	if (!diags.empty())
		fail(ErrorKind::invariant_violation, "modification fails " +
		                                         std::string(axiom_name(diags.front().axiom)));
	AlgebraDocument doc = document_from_algebra(m);
	JordanHolderFlag flag = jordan_holder_basis(m);
	FlatOrbitVerdict v = has_flat_orbits(m, flag, ctx.opt.seed.value_or(1));
	Json r;
	r["input"] = g.name();
	r["modification"] = Json{{"name", m.name()},
	                         {"dimension", m.dim()},
	                         {"fingerprint", fingerprint(doc)},
	                         {"document", document_to_json(doc)}};
	r["center_dimension"] = flag.center_dim;
	r["flat_orbits"] = v.flat;
	r["reason"] = v.reason;
	r["witness"] = v.witness ? qvec_json(*v.witness) : Json(nullptr);
	return r;
}

Json cmd_generate(Context &ctx)
{
	const AlgebraDocument &doc = need_document(ctx);
	GradedLieAlgebra g = to_algebra(doc);
	auto diags = validate(g);
	Json r;
	r["document"] = document_to_json(doc);
	r["diagnostics"] = diags.size();
	if (!diags.empty())
		ctx.deferred = Error(ErrorKind::invariant_violation, "generated document fails validation");
	return r;
}

// JSON pointer lookup that reports absence instead of throwing
const Json *lookup(const Json &root, const std::string &pointer)
{
	try
	{
		Json::json_pointer p(pointer);
		if (!root.contains(p))
			return nullptr;
		return &root.at(p);
	}
	catch (const std::exception &)
	{
		return nullptr;
	}
}

Json check_expectation(const Json &report, const Json &e)
{
	std::string ptr = e.at("pointer").get<std::string>();
	const Json *actual = lookup(report, ptr);
	auto mismatch = [&](const Json &expected) {
		return Json{{"pointer", ptr},
		            {"expected", expected},
		            {"actual", actual ? *actual : Json(nullptr)}};
	};
	if (e.contains("equals"))
	{
		if (!actual || *actual != e["equals"])
			return mismatch(e["equals"]);
	}
	else if (e.contains("approx"))
	{
		double tol = e.value("tol", 1e-9);
		if (!actual || !actual->is_number() ||
		    std::abs(actual->get<double>() - e["approx"].get<double>()) > tol)
			return mismatch(e["approx"]);
	}
	else if (e.contains("below"))
	{
		if (!actual || !actual->is_number() || !(actual->get<double>() < e["below"].get<double>()))
			return mismatch(Json{{"below", e["below"]}});
	}
	else if (e.contains("above"))
	{
		if (!actual || !actual->is_number() || !(actual->get<double>() > e["above"].get<double>()))
			return mismatch(Json{{"above", e["above"]}});
	}
	else if (e.contains("length"))
	{
		if (!actual || !actual->is_array() || actual->size() != e["length"].get<std::size_t>())
			return mismatch(Json{{"length", e["length"]}});
	}
	else
		fail(ErrorKind::malformed_input, "expectation for " + ptr + " has no comparison");
	return nullptr;
}

RunOptions entry_options(const Json &entry, const std::filesystem::path &dir)
{
	RunOptions o;
	if (entry.contains("algebra"))
		o.algebra = (dir / entry["algebra"].get<std::string>()).string();
	if (entry.contains("family"))
		o.family = entry["family"].get<std::string>();
	if (entry.contains("param"))
	{
		std::string p = entry["param"].get<std::string>();
		// mohsen-of takes a corpus file
		if (o.family && *o.family == "mohsen-of")
			p = (dir / p).string();
		o.param = p;
	}
	const Json opts = entry.value("options", Json::object());
	if (opts.contains("xi"))
		o.xi = opts["xi"].get<std::string>();
	if (opts.contains("gamma"))
		o.gamma = opts["gamma"].get<std::string>();
	if (opts.contains("resolution"))
		o.resolution = opts["resolution"].get<int>();
	if (opts.contains("truncation"))
		o.truncation = opts["truncation"].get<int>();
	if (opts.contains("tolerance"))
		o.tolerance = opts["tolerance"].get<double>();
	if (opts.contains("seed"))
		o.seed = opts["seed"].get<std::uint64_t>();
	return o;
}

Json cmd_regression(Context &ctx, int &exit_code)
{
	std::filesystem::path dir = ctx.opt.corpus.value_or("corpus");
	std::filesystem::path table = dir / "expectations.json";
	std::ifstream in(table);
	if (!in)
		fail(ErrorKind::usage, "cannot open " + table.string());
	std::stringstream ss;
	ss << in.rdbuf();
	Json expectations;
	try
	{
		expectations = Json::parse(ss.str());
	}
	catch (const Json::parse_error &e)
	{
		fail(ErrorKind::parse, table.string() + ": " + e.what());
	}
	const Json &entries = expectations.at("entries");
	std::vector<Json> results(entries.size());
	parallel_for(entries.size(), ctx.opt.threads, [&](std::size_t i) {
		const Json &entry = entries[i];
		Json out{{"id", entry.at("id")},
		         {"provenance", entry.at("provenance")},
		         {"command", entry.at("command")}};
		Json mismatches = Json::array();
		try
		{
			CommandOutcome run = run_command(entry.at("command").get<std::string>(),
			                                 entry_options(entry, dir));
			int want = entry.value("exit_code", 0);
			if (run.exit_code != want)
				mismatches.push_back(Json{{"pointer", "/status/exit_code"},
				                          {"expected", want},
				                          {"actual", run.exit_code}});
			for (auto &e : entry.at("expect"))
			{
				Json m = check_expectation(run.report, e);
				if (!m.is_null())
					mismatches.push_back(m);
			}
			out["exit_code"] = run.exit_code;
		}
		catch (const std::exception &e)
		{
			mismatches.push_back(Json{{"pointer", ""}, {"expected", "a run"},
			                          {"actual", e.what()}});
			out["exit_code"] = nullptr;
		}
		out["passed"] = mismatches.empty();
		out["mismatches"] = mismatches;
		results[i] = out;
	});
	std::size_t passed = 0;
	std::map<std::string, std::pair<int, int>> by_tag;
	Json list = Json::array();
	for (auto &r : results)
	{
		bool ok = r["passed"].get<bool>();
		passed += ok;
		auto &t = by_tag[r["provenance"].get<std::string>()];
		++t.first;
		t.second += ok;
		list.push_back(r);
	}
	Json tags = Json::object();
	for (auto &[tag, counts] : by_tag)
		tags[tag] = Json{{"total", counts.first}, {"passed", counts.second}};
	Json r;
	r["total"] = results.size();
	r["passed"] = passed;
	r["failed"] = results.size() - passed;
	r["by_provenance"] = tags;
	r["entries"] = list;
	if (passed != results.size())
		exit_code = exit_code_for(ErrorKind::regression);
	return r;
}

Json options_echo(const RunOptions &o)
{
	Json j = Json::object();
	if (o.algebra)
		j["algebra"] = *o.algebra;
	if (o.family)
		j["family"] = *o.family;
	if (o.param)
		j["param"] = *o.param;
	if (o.xi)
		j["xi"] = *o.xi;
	if (o.gamma)
		j["gamma"] = *o.gamma;
	if (o.resolution)
		j["resolution"] = *o.resolution;
	if (o.truncation)
		j["truncation"] = *o.truncation;
	if (o.tolerance)
		j["tolerance"] = *o.tolerance;
	if (o.seed)
		j["seed"] = *o.seed;
	if (o.corpus)
		j["corpus"] = *o.corpus;
	return j;
}

} // namespace

std::vector<std::string> command_names()
{
	return {"validate", "orbits",      "stratify", "polarize", "maslov-demo",
	        "helliptic", "engel-check", "mohsen",  "corpus-regression", "generate"};
}

QVec parse_covector(const std::string &text)
{
	QVec out;
	std::stringstream ss(text);
	for (std::string part; std::getline(ss, part, ',');)
		out.push_back(parse_rational(part));
	if (out.empty())
		fail(ErrorKind::usage, "empty covector");
	return out;
}

namespace {

cplx parse_complex(std::string s)
{
	std::string t;
	for (char c : s)
		if (!std::isspace(static_cast<unsigned char>(c)))
			t += c;
	if (t.empty())
		fail(ErrorKind::parse, "empty matrix entry");
	if (t.back() != 'i')
		return {parse_rational(t).get_d(), 0};
	t.pop_back();
	std::size_t split = t.find_last_of("+-");
	std::string re = "0", im = t;
	if (split != std::string::npos && split > 0)
	{
		re = t.substr(0, split);
		im = t.substr(split);
	}
	if (im.empty() || im == "+")
		im = "1";
	else if (im == "-")
		im = "-1";
	return {parse_rational(re).get_d(), parse_rational(im).get_d()};
}

} // namespace

Eigen::MatrixXcd parse_complex_matrix(const std::string &text)
{
	std::vector<std::vector<cplx>> rows;
	std::stringstream ss(text);
	for (std::string row; std::getline(ss, row, ';');)
	{
		std::vector<cplx> r;
		std::stringstream rs(row);
		for (std::string e; std::getline(rs, e, ',');)
			r.push_back(parse_complex(e));
		rows.push_back(r);
	}
	if (rows.empty())
		fail(ErrorKind::usage, "empty matrix");
	Eigen::MatrixXcd m(rows.size(), rows.size());
	for (std::size_t a = 0; a < rows.size(); ++a)
	{
		if (rows[a].size() != rows.size())
			fail(ErrorKind::usage, "matrix must be square");
		for (std::size_t b = 0; b < rows.size(); ++b)
			m(a, b) = rows[a][b];
	}
	return m;
}

unsigned worker_count()
{
	unsigned hw = std::max(1u, std::thread::hardware_concurrency());
	if (const char *env = std::getenv("NILCALC_THREADS"))
	{
		char *end = nullptr;
		long cap = std::strtol(env, &end, 10);
		if (end != env && *end == '\0' && cap >= 1)
			return std::min<unsigned>(hw, static_cast<unsigned>(cap));
	}
	return hw;
}

CommandOutcome run_command(const std::string &command, const RunOptions &options)
{
	CommandOutcome out;
	Context ctx{options, Json::array(), std::nullopt, std::nullopt};
	Json report;
	report["tool"] = Json{{"name", "nilcalc"}, {"version", tool_version}};
	report["schema_version"] = report_schema_version;
	report["command"] = Json{{"name", command}, {"options", options_echo(options)}};
	report["algebra"] = nullptr;
	Json results = Json::object();
	Json error = nullptr;
	try
	{
		if (options.algebra && options.family)
			fail(ErrorKind::usage, "give either --algebra or --family, not both");
		if (options.algebra)
			ctx.doc = load_document(*options.algebra);
		else if (options.family)
			ctx.doc = corpus_generate(*options.family, options.param.value_or(""));
		if (ctx.doc)
			report["algebra"] = Json{{"name", ctx.doc->name},
			                         {"dimension", ctx.doc->dimension()},
			                         {"fingerprint", fingerprint(*ctx.doc)}};
		if (command == "validate")
			results = cmd_validate(ctx);
		else if (command == "orbits")
			results = cmd_orbits(ctx);
		else if (command == "stratify")
			results = cmd_stratify(ctx);
		else if (command == "polarize")
			results = cmd_polarize(ctx);
		else if (command == "maslov-demo")
			results = cmd_maslov(ctx);
		else if (command == "helliptic")
			results = cmd_helliptic(ctx);
		else if (command == "engel-check")
			results = cmd_engel_check(ctx);
		else if (command == "mohsen")
			results = cmd_mohsen(ctx);
		else if (command == "generate")
			results = cmd_generate(ctx);
		else if (command == "corpus-regression")
			results = cmd_regression(ctx, out.exit_code);
		else
			fail(ErrorKind::usage, "unknown command '" + command + "'");
		if (ctx.deferred)
			throw *ctx.deferred;
	}
	catch (const Error &e)
	{
		out.exit_code = exit_code_for(e.kind());
		error = Json{{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
	}
	catch (const std::exception &e)
	{
		out.exit_code = exit_code_for(ErrorKind::invariant_violation);
		error = Json{{"kind", error_kind_name(ErrorKind::invariant_violation)},
		             {"message", e.what()}};
	}
	report["results"] = results;
	report["warnings"] = ctx.warnings;
	report["status"] = Json{{"exit_code", out.exit_code}, {"error", error}};
	out.report = std::move(report);
	return out;
}

} // namespace nilcalc
