#include "coopsdmm/polycode.hpp"

#include <algorithm>

namespace coopsdmm::polycode {

using field::add_mod;
using field::mul_mod;

DensePoly::DensePoly(std::vector<FieldElement> coeffs, const PrimeField& field)
    : field_(field), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        if (c.field() != field_) throw FieldMismatch();
}

DensePoly DensePoly::constant(const FieldElement& c) {
    return DensePoly({c}, c.field());
}

std::optional<std::size_t> DensePoly::degree() const {
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        if (!coeffs_[i].is_zero()) return i;
    return std::nullopt;
}

FieldElement DensePoly::coeff(std::size_t e) const {
    if (e < coeffs_.size()) return coeffs_[e];
    return {0, field_};
}

FieldElement DensePoly::eval(const FieldElement& x) const {
    if (x.field() != field_) throw FieldMismatch();
    FieldElement acc(0, field_);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

DensePoly DensePoly::add(const DensePoly& other) const {
    if (other.field_ != field_) throw FieldMismatch();
    std::vector<FieldElement> out;
    std::size_t n = std::max(coeffs_.size(), other.coeffs_.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(coeff(i) + other.coeff(i));
    return DensePoly(std::move(out), field_);
}

DensePoly DensePoly::scaled(const FieldElement& c) const {
    std::vector<FieldElement> out;
    out.reserve(coeffs_.size());
    for (const auto& a : coeffs_) out.push_back(a * c);
    return DensePoly(std::move(out), field_);
}

DensePoly DensePoly::times_linear(const FieldElement& root) const {
    std::vector<FieldElement> out(coeffs_.size() + 1, FieldElement(0, field_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        out[i + 1] = out[i + 1] + coeffs_[i];
        out[i] = out[i] - coeffs_[i] * root;
    }
    return DensePoly(std::move(out), field_);
}

DensePoly DensePoly::mul(const DensePoly& other) const {
    if (other.field_ != field_) throw FieldMismatch();
    if (coeffs_.empty() || other.coeffs_.empty()) return DensePoly(field_);
    std::vector<FieldElement> out(coeffs_.size() + other.coeffs_.size() - 1, FieldElement(0, field_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            out[i + j] = out[i + j] + coeffs_[i] * other.coeffs_[j];
    return DensePoly(std::move(out), field_);
}

void SparsePoly::add_term(std::size_t exponent, FieldMatrix block) {
    if (block.field() != field_) throw FieldMismatch();
    if (block.rows() != block_rows_ || block.cols() != block_cols_)
        throw DimensionMismatch("sparse poly term has the wrong block shape");
    auto pos = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                                [](const Term& t, std::size_t e) { return t.exponent < e; });
    if (pos != terms_.end() && pos->exponent == exponent)
        throw Error("sparse poly: duplicate exponent " + std::to_string(exponent));
    terms_.insert(pos, Term{exponent, std::move(block)});
}

FieldMatrix SparsePoly::eval(const FieldElement& x) const {
    FieldMatrix acc(block_rows_, block_cols_, field_);
    for (const auto& term : terms_) {
        FieldElement w = field::pow(x, term.exponent);
        acc = matgrid::add(acc, matgrid::scale(term.block, w));
    }
    return acc;
}

ExponentSet::ExponentSet(std::vector<std::size_t> e) : exponents(std::move(e)) {
    for (std::size_t i = 1; i < exponents.size(); ++i)
        if (exponents[i] <= exponents[i - 1])
            throw Error("exponent set must be strictly increasing");
}

void require_distinct(std::span<const FieldElement> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw DuplicatePoints();
        if (i > 0 && points[i].field() != points[0].field()) throw FieldMismatch();
    }
}

DensePoly lagrange_basis(std::span<const FieldElement> points, std::size_t j) {
    require_distinct(points);
    if (j >= points.size()) throw Error("lagrange_basis: index out of range");
    const PrimeField& f = points[j].field();
    DensePoly ell = DensePoly::constant(FieldElement(1, f));
    FieldElement denom(1, f);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == j) continue;
        ell = ell.times_linear(points[i]);
        denom = denom * (points[j] - points[i]);
    }
    return ell.scaled(field::inv(denom));
}

std::vector<FieldElement> coeff_weights(std::span<const FieldElement> points, std::size_t theta) {
    require_distinct(points);
    if (points.empty()) throw Error("coeff_weights: no points");
    if (theta >= points.size()) throw Error("coeff_weights: theta out of range");
    std::vector<FieldElement> weights;
    weights.reserve(points.size());
    for (std::size_t j = 0; j < points.size(); ++j)
        weights.push_back(lagrange_basis(points, j).coeff(theta));
    return weights;
}

FieldMatrix rs_generator(std::span<const FieldElement> points, std::size_t k) {
    require_distinct(points);
    if (points.empty() || k == 0 || k > points.size())
        throw Error("rs_generator: require 1 <= K <= N");
    const PrimeField& f = points[0].field();
    FieldMatrix g(k, points.size(), f);
    for (std::size_t i = 0; i < points.size(); ++i) {
        FieldElement acc(1, f);
        for (std::size_t row = 0; row < k; ++row) {
            g.set(row, i, acc);
            acc = acc * points[i];
        }
    }
    return g;
}

FieldMatrix generalized_vandermonde(std::span<const FieldElement> points, const ExponentSet& exponents) {
    require_distinct(points);
    if (points.empty()) throw Error("generalized_vandermonde: no points");
    const PrimeField& f = points[0].field();
    FieldMatrix m(points.size(), exponents.size(), f);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t k = 0; k < exponents.size(); ++k)
            m.set(i, k, field::pow(points[i], exponents.exponents[k]));
    return m;
}

FieldMatrix decode_rows(std::span<const FieldElement> points, const ExponentSet& exponents,
                        std::span<const std::size_t> targets) {
    if (points.size() != exponents.size())
        throw DimensionMismatch("decode_rows: need as many points as exponents");
    FieldMatrix inv = matgrid::invert(generalized_vandermonde(points, exponents));
    FieldMatrix out(targets.size(), points.size(), points[0].field());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        // Row `targets[t]` of the inverse maps evaluations to that coefficient.
        std::size_t row = 0;
        bool found = false;
        for (std::size_t k = 0; k < exponents.size(); ++k) {
            if (exponents.exponents[k] == targets[t]) {
                row = k;
                found = true;
                break;
            }
        }
        if (!found) throw Error("decode_rows: target exponent not in the support");
        for (std::size_t j = 0; j < points.size(); ++j) out.set(t, j, inv.at(row, j));
    }
    return out;
}

} // namespace coopsdmm::polycode
