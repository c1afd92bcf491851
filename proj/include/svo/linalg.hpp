#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace svo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

Matrix sym_part(const Matrix& m);

// Smallest eigenvalue of the symmetric part.
double min_sym_eig(const Matrix& m);

double spectral_norm(const Matrix& m);

// 1-norm reciprocal condition estimate from a partial-pivot LU; 0 for
// matrices whose factorization breaks down.
double rcond(const Matrix& m);

// Solves m x = rhs with a pivoted LU. Throws Error{SingularSystem} naming
// `what` when m is numerically singular.
Vector solve_checked(const Matrix& m, const Vector& rhs, std::string_view what,
                     double min_rcond);

// Block-diagonal selector blkdg(w1 I_{d1}, w2 I_{d2}).
Matrix block_scaling(int d1, int d2, double w1, double w2);

}  // namespace svo
