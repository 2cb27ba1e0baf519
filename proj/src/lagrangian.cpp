#include "nilcalc/lagrangian.hpp"

#include "nilcalc/errors.hpp"
#include "nilcalc/numeric.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>

namespace nilcalc {

namespace {

Eigen::MatrixXd basis_matrix(const Lagrangian &l, std::size_t n)
{
	Eigen::MatrixXd b(n, l.basis.size());
	for (std::size_t j = 0; j < l.basis.size(); ++j)
		for (std::size_t i = 0; i < n; ++i)
			b(i, j) = l.basis[j][i].get_d();
	return b;
}

} // namespace

SymplecticSpace::SymplecticSpace(QMatrix omega) : omega_(std::move(omega))
{
	check();
	omega_d_ = to_eigen(omega_);
	// |Omega| = sqrt(-Omega^2), symmetric positive definite
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-omega_d_ * omega_d_);
	Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
	Eigen::MatrixXd abs_omega = es.eigenvectors() * ev.asDiagonal() *
	                            es.eigenvectors().transpose();
	j_ = omega_d_.inverse() * abs_omega;
	g_ = omega_d_ * j_;
	g_ = 0.5 * (g_ + g_.transpose());
}

SymplecticSpace::SymplecticSpace(QMatrix omega, Eigen::MatrixXd j)
    : omega_(std::move(omega)), j_(std::move(j))
{
	check();
	omega_d_ = to_eigen(omega_);
	const auto n = omega_d_.rows();
	if (j_.rows() != n || j_.cols() != n)
		fail(ErrorKind::domain, "complex structure has the wrong size");
	if (!(j_ * j_ + Eigen::MatrixXd::Identity(n, n)).isZero(1e-9))
		fail(ErrorKind::domain, "J does not square to -1");
	g_ = omega_d_ * j_;
	if (!(g_ - g_.transpose()).isZero(1e-9))
		fail(ErrorKind::domain, "omega J is not symmetric");
	g_ = 0.5 * (g_ + g_.transpose());
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g_);
	if (es.eigenvalues().minCoeff() <= 0)
		fail(ErrorKind::domain, "omega J is not positive definite");
}

void SymplecticSpace::check()
{
	if (omega_.rows() != omega_.cols() || omega_.rows() % 2 || omega_.rows() == 0)
		fail(ErrorKind::domain, "symplectic form must be square of even size");
	if (!omega_.is_antisymmetric())
		fail(ErrorKind::domain, "symplectic form must be antisymmetric");
	if (determinant(omega_) == 0)
		fail(ErrorKind::domain, "symplectic form is degenerate");
}

SymplecticSpace SymplecticSpace::standard(std::size_t d)
{
	QMatrix w(2 * d, 2 * d);
	for (std::size_t i = 0; i < d; ++i)
	{
		w(i, d + i) = 1;
		w(d + i, i) = -1;
	}
	return SymplecticSpace(w);
}

bool is_lagrangian(const SymplecticSpace &space, const Lagrangian &l)
{
	const std::size_t n = space.omega().rows();
	if (l.basis.size() != space.half_dim())
		return false;
	for (auto &v : l.basis)
		if (v.size() != n)
			return false;
	if (rank(QMatrix::from_rows(l.basis, n)) != space.half_dim())
		return false;
	for (std::size_t a = 0; a < l.basis.size(); ++a)
		for (std::size_t b = a + 1; b < l.basis.size(); ++b)
			if (dot(l.basis[a], space.omega() * l.basis[b]) != 0)
				return false;
	return true;
}

int maslov_triple(const SymplecticSpace &space, const Lagrangian &l1,
                  const Lagrangian &l2, const Lagrangian &l3)
{
	for (auto *l : {&l1, &l2, &l3})
		if (!is_lagrangian(space, *l))
			fail(ErrorKind::domain, "maslov_triple needs Lagrangian subspaces");
	const std::size_t d = space.half_dim();
	const Lagrangian *ls[3] = {&l1, &l2, &l3};
	// Q(x1,x2,x3) = w(x1,x2) + w(x2,x3) + w(x3,x1), symmetrized Gram matrix
	QMatrix b(3 * d, 3 * d);
	for (auto [p, q] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 0}})
		for (std::size_t a = 0; a < d; ++a)
			for (std::size_t c = 0; c < d; ++c)
				b(p * d + a, q * d + c) =
				    dot(ls[p]->basis[a], space.omega() * ls[q]->basis[c]);
	QMatrix s = Q(1, 2) * (b + b.transpose());
	return inertia(s).signature();
}

double phase_function(double theta)
{
	if (theta == 0 || std::abs(theta) == M_PI)
		return 0;
	return theta > 0 ? 1 - 2 * theta / M_PI : -1 - 2 * theta / M_PI;
}

Eigen::MatrixXd orthonormal_frame(const SymplecticSpace &space, const Lagrangian &l)
{
	const std::size_t n = space.omega().rows();
	Eigen::MatrixXd b = basis_matrix(l, n);
	Eigen::MatrixXd gram = b.transpose() * space.metric() * b;
	Eigen::LLT<Eigen::MatrixXd> llt(gram);
	if (llt.info() != Eigen::Success)
		fail(ErrorKind::domain, "cannot orthonormalize a singular Lagrangian basis");
	Eigen::MatrixXd lower = llt.matrixL();
	return b * lower.transpose().inverse();
}

Eigen::MatrixXcd frame_unitary(const SymplecticSpace &space, const Eigen::MatrixXd &u,
                               const Eigen::MatrixXd &v)
{
	Eigen::MatrixXd re = u.transpose() * space.metric() * v;
	Eigen::MatrixXd im = u.transpose() * space.omega_d() * v;
	Eigen::MatrixXcd a(re.rows(), re.cols());
	a.real() = re;
	a.imag() = im;
	return a;
}

EtaResult eta_from_unitary(const Eigen::MatrixXcd &a, double tolerance)
{
	Eigen::MatrixXcd s = a * a.transpose();
	Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(s);
	EtaResult r;
	for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
	{
		double theta = std::arg(es.eigenvalues()(i)) / 2;
		if (std::abs(theta) < tolerance)
		{
			r.near_degenerate = true;
			theta = 0;
		}
		else if (std::abs(std::abs(theta) - M_PI / 2) < tolerance)
			theta = M_PI / 2;
		r.phases.push_back(theta);
		r.value += phase_function(theta);
	}
	return r;
}

EtaResult eta_pair(const SymplecticSpace &space, const Lagrangian &l1,
                   const Lagrangian &l2, double tolerance)
{
	for (auto *l : {&l1, &l2})
		if (!is_lagrangian(space, *l))
			fail(ErrorKind::domain, "eta_pair needs Lagrangian subspaces");
	Eigen::MatrixXd u = orthonormal_frame(space, l1);
	Eigen::MatrixXd v = orthonormal_frame(space, l2);
	return eta_from_unitary(frame_unitary(space, u, v), tolerance);
}

CocycleCheck lion_cocycle_check(const SymplecticSpace &space, const Lagrangian &l1,
                                const Lagrangian &l2, const Lagrangian &l3,
                                double tolerance)
{
	CocycleCheck c;
	c.maslov = maslov_triple(space, l1, l2, l3);
	auto e12 = eta_pair(space, l1, l2, tolerance);
	auto e23 = eta_pair(space, l2, l3, tolerance);
	auto e31 = eta_pair(space, l3, l1, tolerance);
	c.eta12 = e12.value;
	c.eta23 = e23.value;
	c.eta31 = e31.value;
	c.near_degenerate = e12.near_degenerate || e23.near_degenerate || e31.near_degenerate;
	c.residual = std::abs(c.maslov - (c.eta12 + c.eta23 + c.eta31));
	return c;
}

} // namespace nilcalc
