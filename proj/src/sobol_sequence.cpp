#include "sensivar/sobol_sequence.hpp"

#include <bit>

#include "sensivar/errors.hpp"

namespace sensivar {

std::size_t SobolSequence::max_dimensions() {
    return sobol_direction_table().size() + 1;
}

SobolSequence::SobolSequence(std::size_t dims) : dims_(dims) {
    if (dims == 0)
        throw EmptyDesignError("Sobol sequence requires at least one dimension");
    if (dims > max_dimensions())
        throw UnsupportedDimensionError(
            "Sobol sequence supports up to " + std::to_string(max_dimensions()) +
            " dimensions, requested " + std::to_string(dims));

    direction_.assign(dims * kBits, 0);
    state_.assign(dims, 0);

    // Dimension 1: m_j = 1 for all j (van der Corput in base 2).
    for (unsigned j = 0; j < kBits; ++j)
        direction_[j] = std::uint64_t{1} << (kBits - 1 - j);

    auto table = sobol_direction_table();
    for (std::size_t d = 1; d < dims; ++d) {
        const SobolDirectionEntry& e = table[d - 1];
        const unsigned s = e.degree;
        std::uint64_t* v = &direction_[d * kBits];

        for (unsigned j = 0; j < s && j < kBits; ++j)
            v[j] = static_cast<std::uint64_t>(e.m[j]) << (kBits - 1 - j);

        // Remaining direction numbers from the polynomial recurrence
        //   v_j = a_1 v_{j-1} ^ ... ^ a_{s-1} v_{j-s+1} ^ v_{j-s} ^ (v_{j-s} >> s)
        // where a_t are the interior coefficient bits of e.poly.
        for (unsigned j = s; j < kBits; ++j) {
            std::uint64_t value = v[j - s] ^ (v[j - s] >> s);
            for (unsigned t = 1; t < s; ++t)
                if ((e.poly >> (s - t)) & 1u)
                    value ^= v[j - t];
            v[j] = value;
        }
    }
}

void SobolSequence::next(std::span<double> point) {
    // Gray-code update: point n flips the direction given by the lowest set
    // bit of n. Starting the counter at 1 skips the all-zeros point.
    ++count_;
    const unsigned bit = static_cast<unsigned>(std::countr_zero(count_));
    if (bit >= kBits)
        throw Error("Sobol sequence exhausted");
    for (std::size_t d = 0; d < dims_; ++d) {
        state_[d] ^= direction_[d * kBits + bit];
        point[d] = static_cast<double>(state_[d]) * 0x1.0p-52;
    }
}

Matrix SobolSequence::generate(std::size_t n, std::size_t dims) {
    SobolSequence seq(dims);
    Matrix out(n, dims);
    for (std::size_t r = 0; r < n; ++r) seq.next(out.row(r));
    return out;
}

} // namespace sensivar
