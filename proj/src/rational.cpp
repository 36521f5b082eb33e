#include "netdyn/rational.hpp"

#include <cmath>

namespace netdyn {

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) {
        throw ValidationError("cannot convert non-finite value to rational");
    }
    Rational q(value);  // mpq_class(double) is the exact dyadic expansion
    q.canonicalize();
    return q;
}

Rational rational_from_string(const std::string& text) {
    try {
        Rational q(text);
        if (q.get_den() == 0) {
            throw ParseError("rational with zero denominator: " + text);
        }
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("invalid rational literal: " + text);
    }
}

double to_double(const Rational& value) { return value.get_d(); }

std::string to_string(const Rational& value) { return value.get_str(); }

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols, Rational(0)) {
    if (rows < 0 || cols < 0) {
        throw ValidationError("matrix dimensions must be nonnegative");
    }
}

Rational RationalMatrix::determinant() const {
    if (rows_ != cols_) {
        throw NonSquareError();
    }
    const int n = rows_;
    if (n == 0) {
        return Rational(1);
    }

    RationalMatrix work = *this;
    Rational prev_pivot(1);
    int sign = 1;

    for (int k = 0; k + 1 < n; ++k) {
        if (work(k, k) == 0) {
            int pivot_row = -1;
            for (int i = k + 1; i < n; ++i) {
                if (work(i, k) != 0) {
                    pivot_row = i;
                    break;
                }
            }
            if (pivot_row < 0) {
                return Rational(0);
            }
            for (int j = 0; j < n; ++j) {
                std::swap(work(k, j), work(pivot_row, j));
            }
            sign = -sign;
        }
        const Rational pivot = work(k, k);
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                // Fraction-free update: division by the previous pivot is exact.
                work(i, j) = (work(i, j) * pivot - work(i, k) * work(k, j)) / prev_pivot;
            }
            work(i, k) = 0;
        }
        prev_pivot = pivot;
    }

    Rational det = work(n - 1, n - 1);
    if (sign < 0) {
        det = -det;
    }
    det.canonicalize();
    return det;
}

std::vector<Rational> RationalMatrix::column_sums() const {
    std::vector<Rational> sums(cols_, Rational(0));
    for (int j = 0; j < cols_; ++j) {
        for (int i = 0; i < rows_; ++i) {
            sums[j] += (*this)(i, j);
        }
        sums[j].canonicalize();
    }
    return sums;
}

}  // namespace netdyn
