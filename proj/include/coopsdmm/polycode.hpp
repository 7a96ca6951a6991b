#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coopsdmm/matgrid.hpp"

namespace coopsdmm::polycode {

using field::FieldElement;
using field::PrimeField;
using matgrid::FieldMatrix;

/// Scalar polynomial, coefficient index = exponent. degree() of the zero
/// polynomial is the empty optional, never -1 arithmetic.
class DensePoly {
public:
    explicit DensePoly(const PrimeField& field) : field_(field) {}
    DensePoly(std::vector<FieldElement> coeffs, const PrimeField& field);

    static DensePoly constant(const FieldElement& c);

    const PrimeField& field() const { return field_; }
    std::optional<std::size_t> degree() const;
    /// Coefficient of x^e; zero beyond storage.
    FieldElement coeff(std::size_t e) const;
    std::size_t stored_size() const { return coeffs_.size(); }

    FieldElement eval(const FieldElement& x) const;

    DensePoly add(const DensePoly& other) const;
    DensePoly scaled(const FieldElement& c) const;
    /// Multiplies by the monic linear factor (x - root).
    DensePoly times_linear(const FieldElement& root) const;
    DensePoly mul(const DensePoly& other) const;

private:
    PrimeField field_;
    std::vector<FieldElement> coeffs_;
};

/// Matrix-coefficient polynomial with strictly increasing exponents.
/// Houses the encoding polynomials f and g.
class SparsePoly {
public:
    SparsePoly(const PrimeField& field, std::size_t block_rows, std::size_t block_cols)
        : field_(field), block_rows_(block_rows), block_cols_(block_cols) {}

    void add_term(std::size_t exponent, FieldMatrix block);

    struct Term {
        std::size_t exponent;
        FieldMatrix block;
    };
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t block_rows() const { return block_rows_; }
    std::size_t block_cols() const { return block_cols_; }
    const PrimeField& field() const { return field_; }

    FieldMatrix eval(const FieldElement& x) const;

private:
    PrimeField field_;
    std::size_t block_rows_, block_cols_;
    std::vector<Term> terms_;
};

inline FieldMatrix eval_sparse(const SparsePoly& p, const FieldElement& x) { return p.eval(x); }

/// Strictly increasing, distinct, non-negative exponents (the GASP support).
struct ExponentSet {
    std::vector<std::size_t> exponents;
    explicit ExponentSet(std::vector<std::size_t> e);
    std::size_t size() const { return exponents.size(); }
};

/// Lagrange basis polynomial l^(j) over the given nodes: l^(j)(x_i) = [i == j].
/// Direct product formula, O(K^2).
DensePoly lagrange_basis(std::span<const FieldElement> points, std::size_t j);

/// The weights (l^(0)_theta, ..., l^(K-1)_theta): the coefficient of x^theta
/// of the interpolant through (x_j, y_j) is the dot product with y.
std::vector<FieldElement> coeff_weights(std::span<const FieldElement> points, std::size_t theta);

/// K x N generator of the [N, K] RS code on the locators: row k holds x_i^k.
FieldMatrix rs_generator(std::span<const FieldElement> points, std::size_t k);

/// Entry (i, k) = points_i ^ E_k.
FieldMatrix generalized_vandermonde(std::span<const FieldElement> points, const ExponentSet& exponents);

/// Rows of the inverse generalized Vandermonde selected by `targets`:
/// applying them to evaluations of a polynomial supported on E recovers
/// the target coefficients.
FieldMatrix decode_rows(std::span<const FieldElement> points, const ExponentSet& exponents,
                        std::span<const std::size_t> targets);

void require_distinct(std::span<const FieldElement> points);

} // namespace coopsdmm::polycode
