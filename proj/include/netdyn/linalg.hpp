#pragma once

#include <Eigen/Dense>

#include <vector>

#include "netdyn/errors.hpp"
#include "netdyn/rational.hpp"

namespace netdyn {

// Geršgorin disc in the complex plane, restricted to a real center.
struct Disc {
    double center = 0.0;
    double radius = 0.0;
};

struct RankKernel {
    int rank = 0;
    // Orthonormal basis of the numerical null space, one column per vector.
    Eigen::MatrixXd kernel;
};

// Numerical rank and kernel via SVD. The default tolerance follows the usual
// convention: max(rows, cols) * machine epsilon, relative to the largest
// singular value. rel_tol, when given, must lie in (0, 1).
RankKernel rank_kernel(const Eigen::MatrixXd& m);
RankKernel rank_kernel(const Eigen::MatrixXd& m, double rel_tol);

// Floating determinant (LU). The exact route is RationalMatrix::determinant.
double determinant(const Eigen::MatrixXd& m);

struct SchurReduction {
    // M11 - M12 M22^{-1} M21
    Eigen::MatrixXd reduced;
    // -M22^{-1} M21, so eliminated variables = elimination_map * retained ones.
    Eigen::MatrixXd elimination_map;
};

// Eliminates the trailing block (rows/cols from block_split on). Throws
// SingularBlockError when cond(M22) exceeds 1e12.
SchurReduction schur_reduce(const Eigen::MatrixXd& m, int block_split);

// Column-variant discs: center m_jj, radius = sum_{i != j} |m_ij|.
std::vector<Disc> gershgorin_discs(const Eigen::MatrixXd& m);

// All eigenvalues of a symmetric matrix, ascending. Throws NotSymmetricError
// when max |M - M^T| exceeds 1e-9 * (1 + max |M|).
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m);

}  // namespace netdyn
