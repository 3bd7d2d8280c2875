// Sparse-friendly linear algebra over the two-element field.
//
// Matrices are stored column-major as bit-packed columns; elimination keeps
// a pivot cache (pivot row -> reduced column) so that rank, kernel and span
// queries share one code path.  Pivots are chosen as the lowest set row
// index and ties resolved by insertion order, which keeps every report
// deterministic.

#pragma once

#include <cstdint>
#include <vector>

namespace gridtau {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int length) : len_(length), w_((length + 63) / 64, 0) {}

    int length() const { return len_; }
    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void flip(int i) { w_[i >> 6] ^= (uint64_t{1} << (i & 63)); }

    void xor_with(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }

    bool is_zero() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    // Lowest set bit, or -1.
    int lowest_set() const;
    int popcount() const;

    std::vector<int> support() const;

    bool operator==(const BitVec& o) const { return len_ == o.len_ && w_ == o.w_; }

private:
    int len_ = 0;
    std::vector<uint64_t> w_;
};

class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols, BitVec(rows)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c) { col_[c].set(r); }
    bool get(int r, int c) const { return col_[c].get(r); }

    const BitVec& column(int c) const { return col_[c]; }
    BitVec& column(int c) { return col_[c]; }

    Gf2Matrix transpose() const;

    // y = M v  (v indexed by columns).
    BitVec apply(const BitVec& v) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<BitVec> col_;
};

// Incremental GF(2) eliminator over vectors of a fixed length.
class Gf2Eliminator {
public:
    explicit Gf2Eliminator(int length) : len_(length) {}

    // Reduces v against the current basis.  If the reduced vector is nonzero
    // it is absorbed into the basis and true is returned; otherwise false.
    bool absorb(BitVec v);

    // Reduces v without modifying the basis; true iff v lies in the span.
    bool contains(BitVec v) const;

    int rank() const { return static_cast<int>(basis_.size()); }
    int length() const { return len_; }

private:
    void reduce(BitVec& v) const;

    int len_;
    std::vector<BitVec> basis_;  // each with a distinct lowest_set pivot
    std::vector<int> pivot_;     // pivot row of basis_[i]
};

int rank(const Gf2Matrix& m);

// Basis of the right null space; size cols - rank.
std::vector<BitVec> kernel_basis(const Gf2Matrix& m);

bool in_span(const BitVec& v, const std::vector<BitVec>& basis);

}  // namespace gridtau
