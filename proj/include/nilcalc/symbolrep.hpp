#pragma once

#include "nilcalc/coadjoint.hpp"
#include "nilcalc/numeric.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <map>
#include <vector>

namespace nilcalc {

using cplx = std::complex<double>;
using SparseC = Eigen::SparseMatrix<cplx>;

// element of U_m(g) (x) End(C^r); monomials X_1^a_1 ... X_n^a_n in basis order
struct PBWTerm
{
	Eigen::MatrixXcd coeff;
	std::vector<int> alpha;
};

struct PBWSymbol
{
	int degree = 0;
	std::size_t rank = 1;
	std::vector<PBWTerm> terms;

	void add(const Eigen::MatrixXcd &coeff, std::vector<int> alpha);
	void add(cplx coeff, std::vector<int> alpha);
};

// throws unless every term has weighted degree m and an r x r coefficient
void check_symbol(const GradedLieAlgebra &g, const PBWSymbol &s);

PBWSymbol operator+(const PBWSymbol &a, const PBWSymbol &b);
PBWSymbol operator*(cplx s, const PBWSymbol &a);
// product of symbols whose monomials concatenate in basis order
PBWSymbol ordered_product(const PBWSymbol &a, const PBWSymbol &b);

// -sum (M^{-1})_{ik} X_i X_k over g_{-1}, rewritten in PBW order
PBWSymbol sub_laplacian(const GradedLieAlgebra &g, const QMatrix &metric);
QMatrix standard_metric(const GradedLieAlgebra &g);

// d pi(X) = sum_a c_a d/dt_a + i p(t)
struct GeneratorAction
{
	QVec c;
	Polynomial p;

	int ladder_degree() const;
};

class FlatRepresentation
{
  public:
	const GradedLieAlgebra &algebra() const { return g_; }
	const JordanHolderFlag &flag() const { return flag_; }
	const Covector &xi() const { return xi_; }
	const Subspace &polarization() const { return h_; }
	const std::vector<std::size_t> &complement() const { return k_; }
	std::size_t dim() const { return k_.size(); }
	const std::vector<GeneratorAction> &generators() const { return gens_; }
	const QMatrix &metric() const { return metric_; }
	bool engel_generic() const { return engel_; }
	// (t, p) = S (y, q), p = -i d/dt, y and q the ladder quadratures
	const Eigen::MatrixXd &frame() const { return frame_; }
	bool williamson_frame() const { return williamson_; }

  private:
	friend FlatRepresentation flat_rep(const GradedLieAlgebra &, const JordanHolderFlag &,
	                                   const Covector &, const QMatrix &);
	GradedLieAlgebra g_;
	JordanHolderFlag flag_;
	Covector xi_;
	Subspace h_;
	std::vector<std::size_t> k_;
	std::vector<GeneratorAction> gens_;
	QMatrix metric_;
	bool engel_ = false;
	Eigen::MatrixXd frame_;
	bool williamson_ = false;
};

FlatRepresentation flat_rep(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                            const Covector &xi, const QMatrix &metric);
FlatRepresentation flat_rep(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                            const Covector &xi);

struct BracketDefect
{
	std::size_t i, j;
};
// pairs (i,j) where [d pi X_i, d pi X_j] != d pi [X_i, X_j]
std::vector<BracketDefect> homomorphism_defects(const FlatRepresentation &rep);
GeneratorAction commutator(const GeneratorAction &a, const GeneratorAction &b);

// multi-indices of total degree <= level, sorted by degree
class HermiteBasis
{
  public:
	HermiteBasis(std::size_t d, int level);
	std::size_t size() const { return idx_.size(); }
	std::size_t size_up_to(int degree) const;
	const std::vector<int> &operator[](std::size_t i) const { return idx_[i]; }
	std::ptrdiff_t position(const std::vector<int> &alpha) const;
	// <alpha - e_j| a_j |alpha> = sqrt(alpha_j)
	SparseC annihilation(std::size_t j) const;
	std::size_t vars() const { return d_; }
	int level() const { return level_; }

  private:
	std::size_t d_;
	int level_;
	std::vector<std::vector<int>> idx_;
	std::map<std::vector<int>, std::size_t> pos_;
};

// fiber-major layout: row = fiber * basis_size + hermite position
struct TruncatedOperator
{
	int truncation = 0;
	int padding = 0;
	std::size_t vars = 0;
	std::size_t rank = 1;
	std::vector<std::vector<int>> indices;
	Eigen::MatrixXcd matrix;
};

int symbol_padding(const FlatRepresentation &rep, const PBWSymbol &s);
std::vector<SparseC> generator_matrices(const FlatRepresentation &rep,
                                        const HermiteBasis &basis);
SparseC padded_operator(const FlatRepresentation &rep, const PBWSymbol &s,
                        const HermiteBasis &basis);
TruncatedOperator represent_symbol(const FlatRepresentation &rep, const PBWSymbol &s,
                                   int truncation);
TruncatedOperator harmonic_oscillator(const FlatRepresentation &rep, int truncation);

// symplectic eigenvalues of omega relative to the metric, ascending
std::vector<double> symplectic_eigenvalues(const QMatrix &omega, const QMatrix &metric);
std::size_t layer_dimension(std::size_t d, int k);
Eigen::MatrixXcd fock_layer_operator(const QMatrix &omega, const QMatrix &metric, int k);
Eigen::MatrixXcd gamma_k(const QMatrix &omega, const QMatrix &metric,
                         const Eigen::MatrixXcd &gamma, int k);

} // namespace nilcalc
