#ifndef SENSIVAR_SOBOL_SEQUENCE_HPP
#define SENSIVAR_SOBOL_SEQUENCE_HPP

#include <cstdint>
#include <span>

#include "sensivar/matrix.hpp"

namespace sensivar {

// Sobol' low-discrepancy sequence, Gray-code construction after
// Antonov-Saleev, with the Bratley-Fox (TOMS 659) primitive polynomials and
// initial direction numbers for the leading dimensions. The all-zeros point
// at index 0 is skipped, so the first point returned is (0.5, 0.5, ...).
//
// Output is deterministic: it depends only on the requested dimension count
// and the number of points drawn.

struct SobolDirectionEntry {
    std::uint32_t poly;   // primitive polynomial, coefficient bits incl. leading/trailing 1
    std::uint32_t degree; // polynomial degree s
    std::uint16_t m[8];   // initial direction numbers m_1..m_s (odd, m_j < 2^j)
};

// Bundled table for dimensions 2..max; dimension 1 uses m_j = 1 for all j.
std::span<const SobolDirectionEntry> sobol_direction_table();

class SobolSequence {
public:
    explicit SobolSequence(std::size_t dims);

    static std::size_t max_dimensions();

    std::size_t dims() const { return dims_; }

    // Writes the next point into `point` (size dims) and advances.
    void next(std::span<double> point);

    // Points 1..n of the sequence (zero point skipped) as an n x dims matrix.
    static Matrix generate(std::size_t n, std::size_t dims);

private:
    static constexpr unsigned kBits = 52; // supports up to 2^52 points, exact doubles

    std::size_t dims_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> direction_; // dims x kBits, row-major per dimension
    std::vector<std::uint64_t> state_;
};

} // namespace sensivar

#endif
