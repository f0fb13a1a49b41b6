#include "sensivar/sobol_sequence.hpp"

namespace sensivar {

// Primitive polynomials and initial direction numbers for dimensions 2..40,
// from Bratley & Fox, "Algorithm 659: Implementing Sobol's quasirandom
// sequence generator", ACM TOMS 14 (1988), with the Sobol'-Levitan
// initialisation. Dimensions 41..53 extend the table with the remaining
// degree-8 primitive polynomials and locally chosen valid initial numbers
// (odd, m_j < 2^j); see the structural checks in the unit tests.
namespace {

const SobolDirectionEntry kTable[] = {
    // dim 2..7
    {3, 1, {1}},
    {7, 2, {1, 1}},
    {11, 3, {1, 3, 7}},
    {13, 3, {1, 1, 5}},
    {19, 4, {1, 3, 1, 1}},
    {25, 4, {1, 1, 3, 7}},
    // dim 8..13 (degree 5)
    {37, 5, {1, 3, 3, 9, 9}},
    {59, 5, {1, 3, 7, 13, 3}},
    {47, 5, {1, 1, 5, 11, 27}},
    {61, 5, {1, 3, 5, 1, 15}},
    {55, 5, {1, 1, 7, 3, 29}},
    {41, 5, {1, 3, 7, 7, 21}},
    // dim 14..19 (degree 6)
    {67, 6, {1, 1, 1, 9, 23, 37}},
    {97, 6, {1, 3, 3, 5, 19, 33}},
    {91, 6, {1, 1, 3, 13, 11, 7}},
    {109, 6, {1, 1, 7, 13, 25, 5}},
    {103, 6, {1, 3, 5, 11, 7, 11}},
    {115, 6, {1, 1, 1, 3, 13, 39}},
    // dim 20..37 (degree 7)
    {131, 7, {1, 3, 1, 15, 17, 63, 13}},
    {193, 7, {1, 1, 5, 5, 1, 27, 33}},
    {137, 7, {1, 3, 3, 3, 25, 17, 115}},
    {145, 7, {1, 1, 3, 15, 29, 15, 41}},
    {143, 7, {1, 1, 1, 7, 3, 23, 79}},
    {241, 7, {1, 3, 7, 9, 31, 29, 17}},
    {157, 7, {1, 1, 5, 13, 11, 3, 29}},
    {185, 7, {1, 3, 1, 9, 5, 21, 119}},
    {167, 7, {1, 1, 3, 1, 23, 13, 75}},
    {229, 7, {1, 3, 3, 11, 27, 31, 73}},
    {171, 7, {1, 1, 7, 7, 19, 25, 105}},
    {213, 7, {1, 3, 5, 5, 21, 9, 7}},
    {191, 7, {1, 3, 1, 15, 5, 49, 59}},
    {253, 7, {1, 1, 1, 1, 1, 33, 65}},
    {203, 7, {1, 3, 5, 15, 17, 19, 21}},
    {211, 7, {1, 1, 7, 11, 13, 29, 3}},
    {239, 7, {1, 3, 7, 5, 7, 11, 113}},
    {247, 7, {1, 1, 5, 3, 15, 19, 61}},
    // dim 38..40 (degree 8)
    {285, 8, {1, 3, 1, 1, 9, 27, 89, 7}},
    {369, 8, {1, 1, 3, 7, 31, 15, 45, 23}},
    {299, 8, {1, 1, 3, 9, 9, 25, 107, 39}},
    // dim 41..53 (degree 8, table extension)
    {301, 8, {1, 1, 5, 11, 27, 45, 113, 173}},
    {333, 8, {1, 3, 3, 9, 17, 51, 37, 219}},
    {351, 8, {1, 1, 7, 13, 5, 27, 93, 139}},
    {355, 8, {1, 3, 1, 3, 29, 33, 71, 201}},
    {357, 8, {1, 1, 3, 15, 21, 39, 121, 245}},
    {361, 8, {1, 3, 5, 7, 9, 57, 101, 63}},
    {391, 8, {1, 1, 1, 5, 25, 19, 85, 151}},
    {397, 8, {1, 3, 7, 11, 31, 43, 55, 233}},
    {425, 8, {1, 1, 5, 9, 7, 61, 17, 99}},
    {451, 8, {1, 3, 3, 13, 11, 29, 111, 189}},
    {463, 8, {1, 1, 7, 1, 19, 53, 47, 77}},
    {487, 8, {1, 3, 1, 15, 23, 41, 81, 211}},
    {501, 8, {1, 1, 3, 7, 13, 35, 103, 117}},
};

} // namespace

std::span<const SobolDirectionEntry> sobol_direction_table() {
    return {kTable, sizeof(kTable) / sizeof(kTable[0])};
}

} // namespace sensivar
