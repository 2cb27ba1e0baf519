#pragma once

#include "nilcalc/rational.hpp"
#include "nilcalc/subspace.hpp"

#include <string>
#include <vector>

namespace nilcalc {

struct BracketEntry
{
	std::size_t i, j, k; // zero-based
	Q coeff;
};

// Graded Lie algebra given by structure constants [X_i,X_j] = sum_k c_ij^k X_k.
class GradedLieAlgebra
{
  public:
	GradedLieAlgebra() = default;

	// Entries fill c_ij^k; a pair given only as (i,j) is mirrored to (j,i).
	GradedLieAlgebra(std::string name, std::vector<int> weights,
	                 const std::vector<BracketEntry> &entries,
	                 std::vector<std::string> basis_names = {});

	// Raw table, no mirroring: c[(i*n + j)*n + k].
	static GradedLieAlgebra from_table(std::string name, std::vector<int> weights,
	                                   std::vector<Q> table);

	const std::string &name() const { return name_; }
	std::size_t dim() const { return weights_.size(); }
	const std::vector<int> &weights() const { return weights_; }
	int max_weight() const;
	const std::vector<std::string> &basis_names() const { return names_; }

	const Q &c(std::size_t i, std::size_t j, std::size_t k) const
	{
		return table_[(i * dim() + j) * dim() + k];
	}
	const std::vector<BracketEntry> &nonzero() const { return nonzero_; }
	std::vector<BracketEntry> upper_entries() const;

	QVec bracket(const QVec &x, const QVec &y) const;
	QVec bracket_basis(std::size_t i, std::size_t j) const;
	// matrix of ad_x acting on column vectors
	QMatrix ad(const QVec &x) const;

  private:
	void index_nonzero();

	std::string name_;
	std::vector<int> weights_;
	std::vector<std::string> names_;
	std::vector<Q> table_;
	std::vector<BracketEntry> nonzero_;
};

enum class Axiom { antisymmetry, jacobi, grading, nilpotency };

struct Diagnostic
{
	Axiom axiom;
	std::vector<std::size_t> indices;
	std::string message;
};

const char *axiom_name(Axiom a);

std::vector<Diagnostic> validate(const GradedLieAlgebra &g);

Subspace center(const GradedLieAlgebra &g);
Subspace derived_subalgebra(const GradedLieAlgebra &g);

struct CentralSeries
{
	std::vector<Subspace> terms; // g, [g,g], ..., 0
	int step = 0;
};
CentralSeries descending_central_series(const GradedLieAlgebra &g);

QVec dilation_apply(const GradedLieAlgebra &g, const Q &t, const QVec &v);
std::vector<double> dilation_apply(const GradedLieAlgebra &g, double t,
                                   const std::vector<double> &v);
QMatrix dilation_matrix(const GradedLieAlgebra &g, const Q &t);

// exp(Z) = exp(X) exp(Y)
QVec bch(const GradedLieAlgebra &g, const QVec &x, const QVec &y);
constexpr int bch_max_step = 6;

struct Step2NormalForm
{
	Subspace complement;             // V, orthogonal to [g,g]
	Subspace derived;                // C(g) = [g,g]
	std::vector<QVec> v_basis;       // echelon basis of V
	std::vector<QVec> derived_basis; // echelon basis of [g,g]
	std::vector<QMatrix> forms;      // omega^k, antisymmetric dim V x dim V
	std::string inner_product = "standard";
};
Step2NormalForm step2_normal_form(const GradedLieAlgebra &g);

// columns of m are the images of the basis vectors
bool is_automorphism(const GradedLieAlgebra &g, const QMatrix &m);
bool is_graded_automorphism(const GradedLieAlgebra &g, const QMatrix &m);

// basis order: dual basis X_1*,...,X_n*, then X_1,...,X_n, then the central T
GradedLieAlgebra mohsen_modification(const GradedLieAlgebra &g);

} // namespace nilcalc
