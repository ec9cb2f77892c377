#include "motivic/gf2.hpp"

#include <bit>

namespace motivic::gf2 {

BitVec make_bitvec(std::size_t bits)
{
    return BitVec(words_for(bits), 0);
}

bool get(const BitVec& v, std::size_t i)
{
    return (v[i / 64] >> (i % 64)) & 1;
}

void set(BitVec& v, std::size_t i, bool value)
{
    if (value)
        v[i / 64] |= std::uint64_t(1) << (i % 64);
    else
        v[i / 64] &= ~(std::uint64_t(1) << (i % 64));
}

void xor_into(BitVec& dst, const BitVec& src)
{
    for (std::size_t w = 0; w < src.size(); ++w)
        dst[w] ^= src[w];
}

bool is_zero(const BitVec& v)
{
    for (auto w : v)
        if (w)
            return false;
    return true;
}

long first_set(const BitVec& v)
{
    for (std::size_t w = 0; w < v.size(); ++w)
        if (v[w])
            return long(w * 64 + std::countr_zero(v[w]));
    return -1;
}

Matrix::Matrix(std::size_t r, std::size_t c)
    : rows(r)
    , cols(c)
    , data(r, make_bitvec(c))
{
}

Echelon::Echelon(std::size_t c)
    : cols(c)
    , row_of_pivot(c, -1)
{
}

void Echelon::reduce(BitVec& v) const
{
    long p = first_set(v);
    while (p >= 0) {
        long r = row_of_pivot[std::size_t(p)];
        if (r < 0)
            break;
        xor_into(v, rows[std::size_t(r)]);
        p = first_set(v);
    }
    // leading bit is now a free column; clear any pivot bits further right
    if (p < 0)
        return;
    for (std::size_t i = std::size_t(p) + 1; i < cols; ++i) {
        if (get(v, i) && row_of_pivot[i] >= 0)
            xor_into(v, rows[std::size_t(row_of_pivot[i])]);
    }
}

bool Echelon::insert(BitVec v)
{
    reduce(v);
    long p = first_set(v);
    if (p < 0)
        return false;
    row_of_pivot[std::size_t(p)] = long(rows.size());
    rows.push_back(std::move(v));
    return true;
}

std::size_t rank(const Matrix& a)
{
    Echelon e(a.cols ? a.cols : 1);
    for (const auto& row : a.data)
        e.insert(row);
    return e.rank();
}

std::vector<BitVec> kernel(const Matrix& a)
{
    // Eliminate [A | I]; rows whose A-part dies give kernel combinations.
    Echelon e(a.cols ? a.cols : 1);
    std::vector<BitVec> tracked;  // identity parts aligned with e.rows
    std::vector<BitVec> out;
    for (std::size_t r = 0; r < a.rows; ++r) {
        BitVec left = a.data[r];
        if (left.empty())
            left = make_bitvec(a.cols ? a.cols : 1);
        BitVec right = make_bitvec(a.rows);
        set(right, r);
        // manual reduction so the identity part follows along
        for (;;) {
            long p = first_set(left);
            if (p < 0)
                break;
            long owner = e.row_of_pivot[std::size_t(p)];
            if (owner < 0)
                break;
            xor_into(left, e.rows[std::size_t(owner)]);
            xor_into(right, tracked[std::size_t(owner)]);
        }
        if (is_zero(left)) {
            out.push_back(std::move(right));
        }
        else {
            e.row_of_pivot[std::size_t(first_set(left))] = long(e.rows.size());
            e.rows.push_back(std::move(left));
            tracked.push_back(std::move(right));
        }
    }
    return out;
}

}  // namespace motivic::gf2
