#include "gridtau/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace gridtau {

int BitVec::lowest_set() const {
    for (size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return static_cast<int>(i * 64 + std::countr_zero(w_[i]));
    return -1;
}

int BitVec::popcount() const {
    int c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
}

std::vector<int> BitVec::support() const {
    std::vector<int> s;
    for (int i = 0; i < len_; ++i)
        if (get(i)) s.push_back(i);
    return s;
}

Gf2Matrix Gf2Matrix::transpose() const {
    Gf2Matrix t(cols_, rows_);
    for (int c = 0; c < cols_; ++c)
        for (int r : col_[c].support()) t.set(c, r);
    return t;
}

BitVec Gf2Matrix::apply(const BitVec& v) const {
    if (v.length() != cols_) throw std::invalid_argument("gf2: length mismatch in apply");
    BitVec out(rows_);
    for (int c = 0; c < cols_; ++c)
        if (v.get(c)) out.xor_with(col_[c]);
    return out;
}

void Gf2Eliminator::reduce(BitVec& v) const {
    for (size_t i = 0; i < basis_.size(); ++i)
        if (v.get(pivot_[i])) v.xor_with(basis_[i]);
}

bool Gf2Eliminator::absorb(BitVec v) {
    if (v.length() != len_) throw std::invalid_argument("gf2: length mismatch in absorb");
    reduce(v);
    int p = v.lowest_set();
    if (p < 0) return false;
    basis_.push_back(std::move(v));
    pivot_.push_back(p);
    return true;
}

bool Gf2Eliminator::contains(BitVec v) const {
    if (v.length() != len_) throw std::invalid_argument("gf2: length mismatch in contains");
    reduce(v);
    return v.is_zero();
}

int rank(const Gf2Matrix& m) {
    Gf2Eliminator e(m.rows());
    int r = 0;
    for (int c = 0; c < m.cols(); ++c)
        if (e.absorb(m.column(c))) ++r;
    return r;
}

std::vector<BitVec> kernel_basis(const Gf2Matrix& m) {
    // Column reduction with a combination tracker: when a column reduces to
    // zero, the tracked combination is a kernel vector.
    std::vector<BitVec> red, combo;
    std::vector<int> pivot;
    std::vector<BitVec> out;
    for (int c = 0; c < m.cols(); ++c) {
        BitVec v = m.column(c);
        BitVec t(m.cols());
        t.set(c);
        for (size_t i = 0; i < red.size(); ++i) {
            if (v.get(pivot[i])) {
                v.xor_with(red[i]);
                t.xor_with(combo[i]);
            }
        }
        int p = v.lowest_set();
        if (p < 0) {
            out.push_back(std::move(t));
        } else {
            red.push_back(std::move(v));
            combo.push_back(std::move(t));
            pivot.push_back(p);
        }
    }
    return out;
}

bool in_span(const BitVec& v, const std::vector<BitVec>& basis) {
    if (!basis.empty() && basis.front().length() != v.length())
        throw std::invalid_argument("gf2: length mismatch in in_span");
    Gf2Eliminator e(v.length());
    for (const BitVec& b : basis) e.absorb(b);
    return e.contains(v);
}

}  // namespace gridtau
