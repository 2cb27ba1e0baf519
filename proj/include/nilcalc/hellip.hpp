#pragma once

#include "nilcalc/symbolrep.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilcalc {

// D = -sum (M^{-1})_{ik} X_i X_k + sum_l gamma_l Z_l on a step-2 algebra whose
// center is spanned by the weight-2 basis vectors; gamma(xi) = sum_l xi_l Gamma_l
struct BvEOperatorSpec
{
	GradedLieAlgebra algebra;
	QMatrix metric;
	std::vector<Eigen::MatrixXcd> gamma_forms;
	std::size_t rank = 1;
};

void validate_spec(const BvEOperatorSpec &spec);
std::vector<std::size_t> center_basis(const BvEOperatorSpec &spec);
QMatrix levi_form(const BvEOperatorSpec &spec, const QVec &xi);
Eigen::MatrixXcd gamma_at(const BvEOperatorSpec &spec, const QVec &xi);
// full covector on g extending xi in z*
Covector extend_to_algebra(const BvEOperatorSpec &spec, const QVec &xi);
// U(g) symbol whose image at xi is the operator with gamma(xi) on the fiber
PBWSymbol bve_symbol(const BvEOperatorSpec &spec);
// gamma(xi) = c xi on the Heisenberg algebra of dimension 2n + 1
BvEOperatorSpec heisenberg_scalar_spec(std::size_t n, cplx c);

enum class Verdict { elliptic, not_elliptic, undetermined };
const char *verdict_name(Verdict v);

struct RocklandCheckConfig
{
	int truncation = 16;
	double tolerance = 1e-6;
	int resolution = 16;
	std::uint64_t seed = 1;
	unsigned threads = 1;
};
void validate_config(const RocklandCheckConfig &config);

struct LayerRecord
{
	int k = 0;
	double sigma_min = 0; // relative to |xi|
	std::size_t kernel_dim = 0;
	Verdict verdict = Verdict::elliptic;
};

struct Witness
{
	QVec xi;
	int layer = -1; // -1 on the degenerate branch
	std::size_t kernel_dim = 0;
	cplx eigenvalue;
	std::string detail;
};

struct PointResult
{
	QVec xi;
	bool full_rank = false;
	double threshold = 0; // Tr|omega_xi| / 2
	bool threshold_zero = false;
	double gamma_norm = 0;
	int cutoff = 0;
	std::vector<LayerRecord> layers;
	std::vector<cplx> gamma_spectrum;
	Verdict verdict = Verdict::elliptic;
	std::optional<Witness> witness;
};

PointResult check_bve_at(const BvEOperatorSpec &spec, const QVec &xi,
                         double tolerance = 1e-6);

int layer_cutoff(double gamma_norm, double half_trace, double mu_min);

struct EllipticityReport
{
	Verdict verdict = Verdict::elliptic;
	bool exhaustive = false; // true only when dim z = 1
	std::string scope;
	RocklandCheckConfig config;
	std::vector<PointResult> samples;
	std::vector<Witness> witnesses;
};

std::vector<std::vector<double>> sphere_points(std::size_t dim, int resolution,
                                               std::uint64_t seed);
EllipticityReport check_bve_sphere(const BvEOperatorSpec &spec,
                                   const RocklandCheckConfig &config);

struct LadderPoint
{
	int truncation = 0;
	double sigma_min = 0;
	std::size_t fiber = 0;        // block holding most of the singular vector
	std::vector<int> hermite;     // its dominant Hermite index
};
std::vector<int> default_ladder(int max_truncation);
std::vector<LadderPoint> rockland_bruteforce(const FlatRepresentation &rep,
                                             const PBWSymbol &symbol,
                                             const std::vector<int> &ladder);

enum class LadderTrend { stable, decaying, inconclusive };
const char *trend_name(LadderTrend t);
// stable: every value above stable_floor; decaying: last value below decay_ceiling
LadderTrend classify_ladder(const std::vector<LadderPoint> &ladder,
                            double stable_floor = 1e-3, double decay_ceiling = 1e-6);

struct EngelCheck
{
	bool holds = false;
	bool undetermined = false;
	std::vector<cplx> eigenvalues;
};
EngelCheck check_engel_gamma(const Eigen::MatrixXcd &gamma, double tolerance = 1e-9);

struct KernelEntry
{
	int k;
	std::size_t kernel_dim;
};
std::vector<KernelEntry> fiber_kernel_report(const BvEOperatorSpec &spec, const QVec &xi,
                                             const RocklandCheckConfig &config);

} // namespace nilcalc
