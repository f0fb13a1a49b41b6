#ifndef SENSIVAR_SAMPLING_HPP
#define SENSIVAR_SAMPLING_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sensivar/matrix.hpp"

namespace sensivar {

enum class Generator { QRN, LHS, R };

enum class BlockKind : std::uint8_t { A, B, AB, BA };

enum class IndexOrder { first, second, third };

// Identity of one sample row: which block it belongs to, which column(s)
// were swapped in from the partner matrix (1-based, zero-filled when unused)
// and the base-row index v in 0..N-1.
struct BlockTag {
    BlockKind kind = BlockKind::A;
    std::array<std::int32_t, 3> cols = {0, 0, 0};
    std::int64_t base_row = 0;

    friend bool operator==(const BlockTag&, const BlockTag&) = default;
};

std::string to_string(BlockKind kind);
std::string to_string(const BlockTag& tag);
BlockTag parse_block_tag(const std::string& text, std::int64_t base_row);

std::string to_string(Generator g);
Generator parse_generator(const std::string& text);
std::string to_string(IndexOrder order);
IndexOrder parse_index_order(const std::string& text);

// Declarative description of a sampling layout.
struct SampleDesign {
    std::vector<BlockKind> blocks = {BlockKind::A, BlockKind::B, BlockKind::AB};
    std::int64_t n_base = 0;
    std::vector<std::string> params;
    IndexOrder order = IndexOrder::first;
    Generator generator = Generator::QRN;
    std::uint64_t seed = 0;

    bool has_block(BlockKind kind) const;
    std::size_t k() const { return params.size(); }
};

// Throws DesignError when the invariants do not hold (k >= 1, n_base >= 2,
// A present, order-second needs k >= 2, order-third needs k >= 3).
void validate_design(const SampleDesign& design);

// Closed-form row count of the realized design.
std::int64_t total_rows(const SampleDesign& design);

// The realized design: unit-hypercube rows plus per-row block identities.
struct SampleMatrix {
    Matrix values;
    std::vector<BlockTag> tags;
    std::vector<std::string> params;
};

// Base n x dims matrix in [0,1).
//   QRN: deterministic Sobol' points (seed ignored).
//   LHS: per-column stratum permutation plus in-stratum jitter, seeded.
//   R:   i.i.d. uniforms, seeded. Column substreams are independent.
Matrix generate_base(std::int64_t n, std::int64_t dims, Generator generator,
                     std::uint64_t seed);

// Emits blocks in fixed order: A, B, AB(1..k), BA(1..k), AB(ij) pairs,
// BA(ij) pairs, AB(ijl) triples, BA(ijl) triples (each family only when
// requested by the design).
SampleMatrix sobol_matrices(const SampleDesign& design);

// Tag sequence of the fixed emission order, without generating values.
std::vector<BlockTag> block_tags(const SampleDesign& design);

// VARS star design: centers plus per-dimension cross-section grids of
// resolution h. The center row is stored once per star; every cross-section
// references it through the slot map.
struct StarSample {
    Matrix centers;                    // n_star x k
    double h = 0.0;
    std::int64_t points_per_section = 0; // 1/h
    std::vector<std::string> params;

    // Evaluation points in emission order (one row per model run).
    Matrix points;
    // Row index of each star's center within `points`.
    std::vector<std::int64_t> center_rows;
    // For star v, dimension i: indices into `points` of the full ascending
    // grid (the center's own slot appears at its grid position).
    std::vector<std::vector<std::int64_t>> section_slots; // size n_star*k
    // Matching coordinates along dimension i for each slot above.
    std::vector<std::vector<double>> section_coords;

    std::int64_t n_star() const { return static_cast<std::int64_t>(centers.rows()); }
    std::int64_t k() const { return static_cast<std::int64_t>(centers.cols()); }
    std::int64_t total_runs() const { return static_cast<std::int64_t>(points.rows()); }
    const std::vector<std::int64_t>& slots(std::int64_t star, std::int64_t dim) const {
        return section_slots[static_cast<std::size_t>(star * k() + dim)];
    }
};

std::int64_t vars_total_runs(std::int64_t n_star, double h, std::int64_t k);

StarSample vars_matrices(std::int64_t n_star, double h,
                         const std::vector<std::string>& params,
                         Generator generator = Generator::QRN,
                         std::uint64_t seed = 0);

} // namespace sensivar

#endif
