#include "netdyn/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace netdyn {

namespace {

RankKernel rank_kernel_impl(const Eigen::MatrixXd& m, double threshold_scale) {
    const int cols = static_cast<int>(m.cols());
    if (m.size() == 0) {
        return RankKernel{0, Eigen::MatrixXd::Identity(cols, cols)};
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    const double threshold = threshold_scale * sigma_max;

    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > threshold) {
            ++rank;
        }
    }
    RankKernel result;
    result.rank = rank;
    result.kernel = svd.matrixV().rightCols(cols - rank);
    return result;
}

}  // namespace

RankKernel rank_kernel(const Eigen::MatrixXd& m) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = static_cast<double>(std::max(m.rows(), m.cols())) * eps;
    return rank_kernel_impl(m, scale);
}

RankKernel rank_kernel(const Eigen::MatrixXd& m, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
        throw ValidationError("rank tolerance must lie in (0, 1)");
    }
    return rank_kernel_impl(m, rel_tol);
}

double determinant(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw NonSquareError();
    }
    if (m.rows() == 0) {
        return 1.0;
    }
    return m.determinant();
}

SchurReduction schur_reduce(const Eigen::MatrixXd& m, int block_split) {
    if (m.rows() != m.cols()) {
        throw NonSquareError();
    }
    const int n = static_cast<int>(m.rows());
    if (block_split < 0 || block_split > n) {
        throw ValidationError("block split out of range");
    }
    const int k = n - block_split;

    const Eigen::MatrixXd m11 = m.topLeftCorner(block_split, block_split);
    const Eigen::MatrixXd m12 = m.topRightCorner(block_split, k);
    const Eigen::MatrixXd m21 = m.bottomLeftCorner(k, block_split);
    const Eigen::MatrixXd m22 = m.bottomRightCorner(k, k);

    if (k == 0) {
        return SchurReduction{m11, Eigen::MatrixXd::Zero(0, block_split)};
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m22);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma(0);
    const double sigma_min = sigma(sigma.size() - 1);
    if (sigma_min <= 0.0 || sigma_max / sigma_min > 1e12) {
        throw SingularBlockError("trailing block is singular or ill-conditioned (cond > 1e12)");
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m22);
    const Eigen::MatrixXd x = lu.solve(m21);  // M22^{-1} M21

    SchurReduction result;
    result.reduced = m11 - m12 * x;
    result.elimination_map = -x;
    return result;
}

std::vector<Disc> gershgorin_discs(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw NonSquareError();
    }
    const int n = static_cast<int>(m.rows());
    std::vector<Disc> discs(n);
    for (int j = 0; j < n; ++j) {
        double radius = 0.0;
        for (int i = 0; i < n; ++i) {
            if (i != j) {
                radius += std::abs(m(i, j));
            }
        }
        discs[j] = Disc{m(j, j), radius};
    }
    return discs;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw NonSquareError();
    }
    const double scale = 1.0 + (m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0);
    const double asymmetry = m.size() > 0 ? (m - m.transpose()).cwiseAbs().maxCoeff() : 0.0;
    if (asymmetry > 1e-9 * scale) {
        throw NotSymmetricError(asymmetry);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();  // ascending
}

}  // namespace netdyn
