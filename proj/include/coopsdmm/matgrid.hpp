#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "coopsdmm/field.hpp"

namespace coopsdmm::matgrid {

using field::FieldElement;
using field::PrimeField;
using field::SeededPrg;

/// Dense row-major matrix over a prime field. Immutable in spirit: all
/// operations return new matrices; set() exists for construction code.
class FieldMatrix {
public:
    FieldMatrix(std::size_t rows, std::size_t cols, const PrimeField& field);

    static FieldMatrix identity(std::size_t n, const PrimeField& field);
    static FieldMatrix random(std::size_t rows, std::size_t cols, const PrimeField& field, SeededPrg& prg);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return rows_ * cols_; } // entry count in F_q symbols
    const PrimeField& field() const { return field_; }

    FieldElement at(std::size_t r, std::size_t c) const { return {raw(r, c), field_}; }
    std::uint64_t raw(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, const FieldElement& e);
    void set_raw(std::size_t r, std::size_t c, std::uint64_t value) { v_[r * cols_ + c] = value % field_.modulus(); }

    const std::vector<std::uint64_t>& values() const { return v_; }

    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.v_ == b.v_;
    }
    friend bool operator!=(const FieldMatrix& a, const FieldMatrix& b) { return !(a == b); }

private:
    std::size_t rows_, cols_;
    PrimeField field_;
    std::vector<std::uint64_t> v_;
};

FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix sub(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix scale(const FieldMatrix& m, const FieldElement& c);
FieldMatrix transpose(const FieldMatrix& m);

inline FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) { return matmul(a, b); }
inline FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) { return add(a, b); }
inline FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) { return sub(a, b); }

/// Gauss-Jordan over F_q; pivot = lowest row index with a nonzero entry.
FieldMatrix invert(const FieldMatrix& m);                 // throws SingularMatrix
std::optional<FieldMatrix> try_invert(const FieldMatrix& m);
std::size_t rank(const FieldMatrix& m);

/// Solves M x = b for square or tall M with full column rank.
std::optional<std::vector<FieldElement>> solve(const FieldMatrix& m, std::span<const FieldElement> b);

enum class PartitionKind {
    IppColumns, // A = (A_0 ... A_{p-1}), column blocks
    IppRows,    // B stacked as p row blocks
    OppRows,    // A stacked as m row blocks
    OppCols,    // B = (B_0 ... B_{n-1}), column blocks
};

struct BlockList {
    PartitionKind kind;
    std::vector<FieldMatrix> blocks;
};

/// Blocks in index order; concatenation reproduces the input.
/// The count must divide the partitioned dimension; no implicit padding.
BlockList split(const FieldMatrix& m, PartitionKind kind, std::size_t count);
FieldMatrix assemble(const BlockList& blocks);
/// Reassembles a block grid (rows of column blocks), e.g. the 2x2 output grid.
FieldMatrix assemble_grid(const std::vector<std::vector<FieldMatrix>>& grid);

// Text fixture format: first line "q rows cols", then row-major integers.
FieldMatrix read_matrix_text(std::istream& in);
void write_matrix_text(std::ostream& out, const FieldMatrix& m);

} // namespace coopsdmm::matgrid
