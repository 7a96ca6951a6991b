#include "coopsdmm/matgrid.hpp"

#include <istream>
#include <ostream>

namespace coopsdmm::matgrid {

using field::add_mod;
using field::inv_mod;
using field::mul_mod;
using field::sub_mod;

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, const PrimeField& field)
    : rows_(rows), cols_(cols), field_(field), v_(rows * cols, 0) {}

FieldMatrix FieldMatrix::identity(std::size_t n, const PrimeField& field) {
    FieldMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m.v_[i * n + i] = 1 % field.modulus();
    return m;
}

FieldMatrix FieldMatrix::random(std::size_t rows, std::size_t cols, const PrimeField& field, SeededPrg& prg) {
    FieldMatrix m(rows, cols, field);
    for (auto& x : m.v_) x = prg.next_below(field.modulus());
    return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, const FieldElement& e) {
    if (e.field() != field_) throw FieldMismatch();
    v_[r * cols_ + c] = e.value();
}

namespace {
void require_same_field(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.field() != b.field()) throw FieldMismatch();
}
} // namespace

FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b) {
    require_same_field(a, b);
    if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
    const std::uint64_t q = a.field().modulus();
    FieldMatrix out(a.rows(), b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::uint64_t aik = a.raw(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                std::uint64_t cur = out.raw(i, j);
                out.set_raw(i, j, add_mod(cur, mul_mod(aik, b.raw(k, j), q), q));
            }
        }
    }
    return out;
}

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b) {
    require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("add: shapes differ");
    const std::uint64_t q = a.field().modulus();
    FieldMatrix out(a.rows(), a.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out.set_raw(i, j, add_mod(a.raw(i, j), b.raw(i, j), q));
    return out;
}

FieldMatrix sub(const FieldMatrix& a, const FieldMatrix& b) {
    require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("sub: shapes differ");
    const std::uint64_t q = a.field().modulus();
    FieldMatrix out(a.rows(), a.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out.set_raw(i, j, sub_mod(a.raw(i, j), b.raw(i, j), q));
    return out;
}

FieldMatrix scale(const FieldMatrix& m, const FieldElement& c) {
    if (c.field() != m.field()) throw FieldMismatch();
    const std::uint64_t q = m.field().modulus();
    FieldMatrix out(m.rows(), m.cols(), m.field());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out.set_raw(i, j, mul_mod(m.raw(i, j), c.value(), q));
    return out;
}

FieldMatrix transpose(const FieldMatrix& m) {
    FieldMatrix out(m.cols(), m.rows(), m.field());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out.set_raw(j, i, m.raw(i, j));
    return out;
}

std::optional<FieldMatrix> try_invert(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("invert: matrix is not square");
    const std::size_t n = m.rows();
    const std::uint64_t q = m.field().modulus();
    FieldMatrix work = m;
    FieldMatrix inv = FieldMatrix::identity(n, m.field());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work.raw(pivot, col) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::uint64_t t = work.raw(col, j);
                work.set_raw(col, j, work.raw(pivot, j));
                work.set_raw(pivot, j, t);
                t = inv.raw(col, j);
                inv.set_raw(col, j, inv.raw(pivot, j));
                inv.set_raw(pivot, j, t);
            }
        }
        std::uint64_t p = inv_mod(work.raw(col, col), q);
        for (std::size_t j = 0; j < n; ++j) {
            work.set_raw(col, j, mul_mod(work.raw(col, j), p, q));
            inv.set_raw(col, j, mul_mod(inv.raw(col, j), p, q));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            std::uint64_t f = work.raw(i, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work.set_raw(i, j, sub_mod(work.raw(i, j), mul_mod(f, work.raw(col, j), q), q));
                inv.set_raw(i, j, sub_mod(inv.raw(i, j), mul_mod(f, inv.raw(col, j), q), q));
            }
        }
    }
    return inv;
}

FieldMatrix invert(const FieldMatrix& m) {
    auto r = try_invert(m);
    if (!r) throw SingularMatrix();
    return *r;
}

std::size_t rank(const FieldMatrix& m) {
    const std::uint64_t q = m.field().modulus();
    FieldMatrix work = m;
    std::size_t r = 0;
    for (std::size_t col = 0; col < work.cols() && r < work.rows(); ++col) {
        std::size_t pivot = r;
        while (pivot < work.rows() && work.raw(pivot, col) == 0) ++pivot;
        if (pivot == work.rows()) continue;
        if (pivot != r) {
            for (std::size_t j = 0; j < work.cols(); ++j) {
                std::uint64_t t = work.raw(r, j);
                work.set_raw(r, j, work.raw(pivot, j));
                work.set_raw(pivot, j, t);
            }
        }
        std::uint64_t p = inv_mod(work.raw(r, col), q);
        for (std::size_t j = 0; j < work.cols(); ++j)
            work.set_raw(r, j, mul_mod(work.raw(r, j), p, q));
        for (std::size_t i = 0; i < work.rows(); ++i) {
            if (i == r) continue;
            std::uint64_t f = work.raw(i, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < work.cols(); ++j)
                work.set_raw(i, j, sub_mod(work.raw(i, j), mul_mod(f, work.raw(r, j), q), q));
        }
        ++r;
    }
    return r;
}

std::optional<std::vector<FieldElement>> solve(const FieldMatrix& m, std::span<const FieldElement> b) {
    if (b.size() != m.rows()) throw DimensionMismatch("solve: rhs length differs from row count");
    const std::uint64_t q = m.field().modulus();
    const std::size_t rows = m.rows(), cols = m.cols();
    // Augmented elimination.
    std::vector<std::uint64_t> aug((cols + 1) * rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug[i * (cols + 1) + j] = m.raw(i, j);
        if (b[i].field() != m.field()) throw FieldMismatch();
        aug[i * (cols + 1) + cols] = b[i].value();
    }
    auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return aug[i * (cols + 1) + j]; };
    std::vector<std::size_t> pivot_col(rows, cols);
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && at(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j <= cols; ++j) std::swap(at(r, j), at(pivot, j));
        std::uint64_t p = inv_mod(at(r, col), q);
        for (std::size_t j = 0; j <= cols; ++j) at(r, j) = mul_mod(at(r, j), p, q);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint64_t f = at(i, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j <= cols; ++j)
                at(i, j) = sub_mod(at(i, j), mul_mod(f, at(r, j), q), q);
        }
        pivot_col[r] = col;
        ++r;
    }
    // Inconsistent system?
    for (std::size_t i = r; i < rows; ++i)
        if (at(i, cols) != 0) return std::nullopt;
    if (r < cols) return std::nullopt; // underdetermined: demand full column rank
    std::vector<FieldElement> x;
    x.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) x.emplace_back(0, m.field());
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = FieldElement(at(i, cols), m.field());
    return x;
}

BlockList split(const FieldMatrix& m, PartitionKind kind, std::size_t count) {
    if (count == 0) throw IndivisibleDimension("split: count must be positive");
    const bool column_wise = (kind == PartitionKind::IppColumns || kind == PartitionKind::OppCols);
    const std::size_t dim = column_wise ? m.cols() : m.rows();
    if (dim % count != 0)
        throw IndivisibleDimension("split: " + std::to_string(count) + " does not divide " + std::to_string(dim));
    const std::size_t step = dim / count;
    BlockList out{kind, {}};
    out.blocks.reserve(count);
    for (std::size_t b = 0; b < count; ++b) {
        std::size_t br = column_wise ? m.rows() : step;
        std::size_t bc = column_wise ? step : m.cols();
        FieldMatrix block(br, bc, m.field());
        for (std::size_t i = 0; i < br; ++i)
            for (std::size_t j = 0; j < bc; ++j)
                block.set_raw(i, j, column_wise ? m.raw(i, b * step + j) : m.raw(b * step + i, j));
        out.blocks.push_back(std::move(block));
    }
    return out;
}

FieldMatrix assemble(const BlockList& list) {
    if (list.blocks.empty()) throw DimensionMismatch("assemble: empty block list");
    const bool column_wise = (list.kind == PartitionKind::IppColumns || list.kind == PartitionKind::OppCols);
    const FieldMatrix& first = list.blocks.front();
    for (const auto& b : list.blocks) {
        if (b.field() != first.field()) throw FieldMismatch();
        if (b.rows() != first.rows() || b.cols() != first.cols())
            throw DimensionMismatch("assemble: block shapes differ");
    }
    std::size_t rows = column_wise ? first.rows() : first.rows() * list.blocks.size();
    std::size_t cols = column_wise ? first.cols() * list.blocks.size() : first.cols();
    FieldMatrix out(rows, cols, first.field());
    for (std::size_t b = 0; b < list.blocks.size(); ++b) {
        const FieldMatrix& blk = list.blocks[b];
        for (std::size_t i = 0; i < blk.rows(); ++i)
            for (std::size_t j = 0; j < blk.cols(); ++j) {
                if (column_wise)
                    out.set_raw(i, b * first.cols() + j, blk.raw(i, j));
                else
                    out.set_raw(b * first.rows() + i, j, blk.raw(i, j));
            }
    }
    return out;
}

FieldMatrix assemble_grid(const std::vector<std::vector<FieldMatrix>>& grid) {
    if (grid.empty() || grid.front().empty()) throw DimensionMismatch("assemble_grid: empty grid");
    std::vector<FieldMatrix> rows;
    rows.reserve(grid.size());
    for (const auto& row : grid) {
        rows.push_back(assemble(BlockList{PartitionKind::IppColumns, row}));
    }
    return assemble(BlockList{PartitionKind::IppRows, std::move(rows)});
}

FieldMatrix read_matrix_text(std::istream& in) {
    std::uint64_t q;
    std::size_t rows, cols;
    if (!(in >> q >> rows >> cols)) throw ConfigError("matrix text: bad header, expected 'q rows cols'");
    PrimeField field(q);
    FieldMatrix m(rows, cols, field);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::uint64_t v;
            if (!(in >> v)) throw ConfigError("matrix text: truncated entries");
            m.set_raw(i, j, v);
        }
    return m;
}

void write_matrix_text(std::ostream& out, const FieldMatrix& m) {
    out << m.field().modulus() << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m.raw(i, j);
        }
        out << '\n';
    }
}

} // namespace coopsdmm::matgrid
