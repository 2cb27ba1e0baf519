#include "nilcalc/numeric.hpp"

#include <Eigen/Eigenvalues>

namespace nilcalc {

Eigen::MatrixXd to_eigen(const QMatrix &m)
{
	Eigen::MatrixXd r(m.rows(), m.cols());
	for (std::size_t i = 0; i < m.rows(); ++i)
		for (std::size_t j = 0; j < m.cols(); ++j)
			r(i, j) = m(i, j).get_d();
	return r;
}

Eigen::VectorXd to_eigen(const QVec &v)
{
	Eigen::VectorXd r(v.size());
	for (std::size_t i = 0; i < v.size(); ++i)
		r(i) = v[i].get_d();
	return r;
}

Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd &spd)
{
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spd);
	return es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
	       es.eigenvectors().transpose();
}

} // namespace nilcalc
