#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "netdyn/errors.hpp"

namespace netdyn {

// Exact rational scalar. GMP's canonical mpq keeps num/den coprime with a
// positive denominator, so equality against zero is an exact test.
using Rational = mpq_class;

// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double value);

// Accepts "p", "-p" and "p/q" forms.
Rational rational_from_string(const std::string& text);

double to_double(const Rational& value);
std::string to_string(const Rational& value);

// Small dense matrix over exact rationals; row-major storage. Used for the
// determinant paths where a float zero-test would be undecidable.
class RationalMatrix {
public:
    RationalMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int i, int j) { return entries_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const {
        return entries_[static_cast<size_t>(i) * cols_ + j];
    }

    // Exact determinant by fraction-free (Bareiss) elimination with row
    // pivoting on exact zeros. Integer inputs stay integer throughout.
    Rational determinant() const;

    // Exact column sums (used for assembly invariants).
    std::vector<Rational> column_sums() const;

private:
    int rows_;
    int cols_;
    std::vector<Rational> entries_;
};

}  // namespace netdyn
