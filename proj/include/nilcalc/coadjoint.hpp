#pragma once

#include "nilcalc/liealg.hpp"
#include "nilcalc/polynomial.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nilcalc {

using Covector = QVec;

// Basis order X_{order[0]}, X_{order[1]}, ...; the first center_dim span the center.
struct JordanHolderFlag
{
	std::vector<std::size_t> order;
	std::size_t center_dim = 0;

	std::size_t size() const { return order.size(); }
	Subspace level(std::size_t k) const;
	std::vector<std::size_t> center_indices() const;
	std::vector<std::size_t> complement_indices() const;
};

JordanHolderFlag jordan_holder_basis(const GradedLieAlgebra &g);
// Checks a user supplied order; throws a domain error with the reason.
JordanHolderFlag make_flag(const GradedLieAlgebra &g, std::vector<std::size_t> order);

QMatrix kirillov_form(const GradedLieAlgebra &g, const Covector &xi);
// radical of the Kirillov form restricted to g_k, 1 <= k <= n
Subspace stabilizer(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                    const Covector &xi, std::size_t k);
Subspace stabilizer(const GradedLieAlgebra &g, const Covector &xi);

// coordinates on z* are xi(X_{order[j]}), j < center_dim
Covector extend_center_dual(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                            const QVec &z_coords);
QVec restrict_to_center(const JordanHolderFlag &flag, const Covector &xi);

struct PfaffianPolynomial
{
	Polynomial poly;
	bool odd_codimension = false;
	std::vector<std::string> variables;

	std::string to_string() const { return poly.to_string(variables); }
};

PfaffianPolynomial pfaffian_on_center_dual(const GradedLieAlgebra &g,
                                           const JordanHolderFlag &flag);
Polynomial determinant_on_center_dual(const GradedLieAlgebra &g,
                                      const JordanHolderFlag &flag);
// exact Pfaffian of a numeric antisymmetric matrix
Q pfaffian(const QMatrix &a);

struct FlatOrbitVerdict
{
	bool flat = false;
	std::optional<Covector> witness;
	std::string reason;
};
FlatOrbitVerdict has_flat_orbits(const GradedLieAlgebra &g);
FlatOrbitVerdict has_flat_orbits(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                                 std::uint64_t seed = 1);

bool is_flat(const GradedLieAlgebra &g, const Covector &xi);
bool is_on_gamma_partial(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                         const QVec &z_coords);

// profile[k-1] = J^k, entries 1-based flag positions
using JumpProfile = std::vector<std::vector<std::size_t>>;
JumpProfile jump_indices(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                         const Covector &xi);
std::string to_string(const JumpProfile &p);

struct StrataReport
{
	std::map<JumpProfile, std::vector<Covector>> strata;
	JumpProfile top;
	std::size_t top_orbit_dim = 0;
};
StrataReport enumerate_strata(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                              const std::vector<Covector> &samples);

Subspace vergne_polarization(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                             const Covector &xi);

// (M^T xi)|_z in z* coordinates
QVec aut_action_on_lambda(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                          const QMatrix &m, const QVec &z_coords);

// projection onto the flag complement of the center, along z
QVec complement_part(const JordanHolderFlag &flag, const QVec &v);
QVec central_cocycle(const GradedLieAlgebra &g, const JordanHolderFlag &flag,
                     const QVec &x, const QVec &y);

// Ad*(exp X) xi = xi o exp(-ad X)
Covector coadjoint_move(const GradedLieAlgebra &g, const QVec &x, const Covector &xi);

// Kirillov form on g / stab(xi), on the coordinate complement of stab(xi)
struct ReducedForm
{
	std::vector<std::size_t> basis_indices;
	QMatrix form;
};
ReducedForm reduced_form(const GradedLieAlgebra &g, const Covector &xi);

} // namespace nilcalc
