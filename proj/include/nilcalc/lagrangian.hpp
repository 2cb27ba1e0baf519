#pragma once

#include "nilcalc/rational.hpp"

#include <Eigen/Dense>

#include <vector>

namespace nilcalc {

// omega(x, y) = x^T Omega y; J from Omega^{-1} |Omega|, metric g = Omega J
class SymplecticSpace
{
  public:
	explicit SymplecticSpace(QMatrix omega);
	SymplecticSpace(QMatrix omega, Eigen::MatrixXd j);
	static SymplecticSpace standard(std::size_t d);

	std::size_t half_dim() const { return omega_.rows() / 2; }
	const QMatrix &omega() const { return omega_; }
	const Eigen::MatrixXd &omega_d() const { return omega_d_; }
	const Eigen::MatrixXd &complex_structure() const { return j_; }
	const Eigen::MatrixXd &metric() const { return g_; }

  private:
	void check();

	QMatrix omega_;
	Eigen::MatrixXd omega_d_, j_, g_;
};

struct Lagrangian
{
	std::vector<QVec> basis;
};

bool is_lagrangian(const SymplecticSpace &space, const Lagrangian &l);

int maslov_triple(const SymplecticSpace &space, const Lagrangian &l1,
                  const Lagrangian &l2, const Lagrangian &l3);

struct EtaResult
{
	double value = 0;
	bool near_degenerate = false;
	std::vector<double> phases;
};

// g(e^{i theta}): 1 - 2 theta/pi on (0,pi), -1 - 2 theta/pi on (-pi,0), 0 at 0 and pi
double phase_function(double theta);

// g-orthonormal frame of l as columns
Eigen::MatrixXd orthonormal_frame(const SymplecticSpace &space, const Lagrangian &l);
// matrix of the unitary taking frame u to frame v, in the basis u
Eigen::MatrixXcd frame_unitary(const SymplecticSpace &space, const Eigen::MatrixXd &u,
                               const Eigen::MatrixXd &v);
// phases taken from the symmetric representative of A modulo O(d)
EtaResult eta_from_unitary(const Eigen::MatrixXcd &a, double tolerance);

EtaResult eta_pair(const SymplecticSpace &space, const Lagrangian &l1,
                   const Lagrangian &l2, double tolerance = 1e-8);

struct CocycleCheck
{
	int maslov = 0;
	double eta12 = 0, eta23 = 0, eta31 = 0;
	double residual = 0;
	bool near_degenerate = false;
};

CocycleCheck lion_cocycle_check(const SymplecticSpace &space, const Lagrangian &l1,
                                const Lagrangian &l2, const Lagrangian &l3,
                                double tolerance = 1e-8);

} // namespace nilcalc
