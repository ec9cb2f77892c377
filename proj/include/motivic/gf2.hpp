#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace motivic::gf2 {

// Bit-packed GF(2) row vector.
using BitVec = std::vector<std::uint64_t>;

inline std::size_t words_for(std::size_t bits)
{
    return (bits + 63) / 64;
}

BitVec make_bitvec(std::size_t bits);
bool get(const BitVec& v, std::size_t i);
void set(BitVec& v, std::size_t i, bool value = true);
void xor_into(BitVec& dst, const BitVec& src);
bool is_zero(const BitVec& v);
// Index of the lowest set bit, or -1.
long first_set(const BitVec& v);

// Dense bit-packed matrix; rows are BitVecs of equal width.
struct Matrix
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BitVec> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c);

    bool get_entry(std::size_t r, std::size_t c) const { return get(data[r], c); }
    void set_entry(std::size_t r, std::size_t c, bool v = true) { set(data[r], c, v); }
    std::size_t bytes() const { return rows * words_for(cols) * 8; }
};

// Row space in echelon form with column pivoting by basis order: every
// stored row's leading bit is its pivot, pivots are pairwise distinct.
// Insertion order is the only source of representatives, so the whole
// structure is deterministic.
struct Echelon
{
    std::size_t cols = 0;
    std::vector<BitVec> rows;
    std::vector<long> row_of_pivot;  // size cols, -1 when the column is free

    explicit Echelon(std::size_t c);

    // Reduce v by the stored rows (in place).
    void reduce(BitVec& v) const;
    // Reduce, then adopt v as a new row if it survived.  Returns true when
    // the rank grew.
    bool insert(BitVec v);
    std::size_t rank() const { return rows.size(); }
};

// Rank of the row space.
std::size_t rank(const Matrix& a);

// Basis of {x : x*A = 0} (row-vector kernel), echelonized over the domain
// coordinates in basis order.
std::vector<BitVec> kernel(const Matrix& a);

}  // namespace motivic::gf2
