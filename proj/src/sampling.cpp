#include "sensivar/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sensivar/errors.hpp"
#include "sensivar/rng.hpp"
#include "sensivar/sobol_sequence.hpp"

namespace sensivar {

std::string to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::A: return "A";
        case BlockKind::B: return "B";
        case BlockKind::AB: return "AB";
        case BlockKind::BA: return "BA";
    }
    return "?";
}

std::string to_string(const BlockTag& tag) {
    std::string out = to_string(tag.kind);
    for (int c : tag.cols)
        if (c > 0) out += "_" + std::to_string(c);
    return out;
}

BlockTag parse_block_tag(const std::string& text, std::int64_t base_row) {
    BlockTag tag;
    tag.base_row = base_row;
    std::size_t us = text.find('_');
    std::string head = text.substr(0, us);
    if (head == "A") tag.kind = BlockKind::A;
    else if (head == "B") tag.kind = BlockKind::B;
    else if (head == "AB") tag.kind = BlockKind::AB;
    else if (head == "BA") tag.kind = BlockKind::BA;
    else throw IoError("unknown block tag '" + text + "'");

    int slot = 0;
    while (us != std::string::npos) {
        std::size_t next = text.find('_', us + 1);
        std::string part = text.substr(us + 1, next == std::string::npos ? next : next - us - 1);
        if (slot >= 3) throw IoError("block tag '" + text + "' has too many column indices");
        tag.cols[slot++] = std::stoi(part);
        us = next;
    }
    return tag;
}

std::string to_string(Generator g) {
    switch (g) {
        case Generator::QRN: return "QRN";
        case Generator::LHS: return "LHS";
        case Generator::R: return "R";
    }
    return "?";
}

Generator parse_generator(const std::string& text) {
    if (text == "QRN") return Generator::QRN;
    if (text == "LHS") return Generator::LHS;
    if (text == "R") return Generator::R;
    throw ConfigError("unknown generator '" + text + "' (expected QRN, LHS or R)");
}

std::string to_string(IndexOrder order) {
    switch (order) {
        case IndexOrder::first: return "first";
        case IndexOrder::second: return "second";
        case IndexOrder::third: return "third";
    }
    return "?";
}

IndexOrder parse_index_order(const std::string& text) {
    if (text == "first") return IndexOrder::first;
    if (text == "second") return IndexOrder::second;
    if (text == "third") return IndexOrder::third;
    throw ConfigError("unknown order '" + text + "' (expected first, second or third)");
}

bool SampleDesign::has_block(BlockKind kind) const {
    return std::find(blocks.begin(), blocks.end(), kind) != blocks.end();
}

void validate_design(const SampleDesign& design) {
    if (design.params.empty())
        throw DesignError("design needs at least one parameter");
    if (design.n_base < 2)
        throw DesignError("base sample size must be at least 2");
    if (!design.has_block(BlockKind::A))
        throw DesignError("design must contain the A block");
    if (design.order == IndexOrder::second && design.k() < 2)
        throw DesignError("order=second requires at least 2 parameters");
    if (design.order == IndexOrder::third && design.k() < 3)
        throw DesignError("order=third requires at least 3 parameters");
    for (std::size_t i = 0; i < design.params.size(); ++i)
        for (std::size_t j = i + 1; j < design.params.size(); ++j)
            if (design.params[i] == design.params[j])
                throw DesignError("duplicate parameter name '" + design.params[i] + "'");
}

namespace {

std::int64_t binomial2(std::int64_t k) { return k * (k - 1) / 2; }
std::int64_t binomial3(std::int64_t k) { return k * (k - 1) * (k - 2) / 6; }

} // namespace

std::int64_t total_rows(const SampleDesign& design) {
    validate_design(design);
    const std::int64_t n = design.n_base;
    const std::int64_t k = static_cast<std::int64_t>(design.k());
    std::int64_t rows = n; // A
    if (design.has_block(BlockKind::B)) rows += n;
    const int families = (design.has_block(BlockKind::AB) ? 1 : 0) +
                         (design.has_block(BlockKind::BA) ? 1 : 0);
    rows += families * n * k;
    if (design.order != IndexOrder::first) rows += families * n * binomial2(k);
    if (design.order == IndexOrder::third) rows += families * n * binomial3(k);
    return rows;
}

Matrix generate_base(std::int64_t n, std::int64_t dims, Generator generator,
                     std::uint64_t seed) {
    if (n <= 0)
        throw EmptyDesignError("sample size must be positive");
    if (dims <= 0)
        throw EmptyDesignError("dimension count must be positive");

    const auto nu = static_cast<std::size_t>(n);
    const auto du = static_cast<std::size_t>(dims);

    switch (generator) {
        case Generator::QRN:
            return SobolSequence::generate(nu, du);
        case Generator::LHS: {
            Matrix out(nu, du);
            for (std::size_t c = 0; c < du; ++c) {
                Rng rng(derive_seed(seed, c));
                auto strata = random_permutation(nu, rng);
                for (std::size_t r = 0; r < nu; ++r)
                    out(r, c) = (static_cast<double>(strata[r]) + rng.next_double_open()) /
                                static_cast<double>(nu);
            }
            return out;
        }
        case Generator::R: {
            Matrix out(nu, du);
            for (std::size_t c = 0; c < du; ++c) {
                Rng rng(derive_seed(seed, c));
                for (std::size_t r = 0; r < nu; ++r) out(r, c) = rng.next_double();
            }
            return out;
        }
    }
    throw ConfigError("unreachable generator kind");
}

std::vector<BlockTag> block_tags(const SampleDesign& design) {
    validate_design(design);
    const std::int64_t n = design.n_base;
    const std::int64_t k = static_cast<std::int64_t>(design.k());
    std::vector<BlockTag> tags;
    tags.reserve(static_cast<std::size_t>(total_rows(design)));

    auto emit = [&](BlockKind kind, std::array<std::int32_t, 3> cols) {
        for (std::int64_t v = 0; v < n; ++v) tags.push_back({kind, cols, v});
    };

    emit(BlockKind::A, {0, 0, 0});
    if (design.has_block(BlockKind::B)) emit(BlockKind::B, {0, 0, 0});

    for (BlockKind kind : {BlockKind::AB, BlockKind::BA}) {
        if (!design.has_block(kind)) continue;
        for (std::int32_t i = 1; i <= k; ++i) emit(kind, {i, 0, 0});
    }
    if (design.order != IndexOrder::first) {
        for (BlockKind kind : {BlockKind::AB, BlockKind::BA}) {
            if (!design.has_block(kind)) continue;
            for (std::int32_t i = 1; i <= k; ++i)
                for (std::int32_t j = i + 1; j <= k; ++j) emit(kind, {i, j, 0});
        }
    }
    if (design.order == IndexOrder::third) {
        for (BlockKind kind : {BlockKind::AB, BlockKind::BA}) {
            if (!design.has_block(kind)) continue;
            for (std::int32_t i = 1; i <= k; ++i)
                for (std::int32_t j = i + 1; j <= k; ++j)
                    for (std::int32_t l = j + 1; l <= k; ++l) emit(kind, {i, j, l});
        }
    }
    return tags;
}

SampleMatrix sobol_matrices(const SampleDesign& design) {
    validate_design(design);
    const std::int64_t n = design.n_base;
    const std::size_t k = design.k();

    const Matrix q = generate_base(n, static_cast<std::int64_t>(2 * k),
                                   design.generator, design.seed);

    SampleMatrix out;
    out.params = design.params;
    out.tags = block_tags(design);
    out.values = Matrix(out.tags.size(), k);

    for (std::size_t r = 0; r < out.tags.size(); ++r) {
        const BlockTag& tag = out.tags[r];
        const auto v = static_cast<std::size_t>(tag.base_row);
        const bool from_b_base = tag.kind == BlockKind::B || tag.kind == BlockKind::BA;
        for (std::size_t c = 0; c < k; ++c) {
            bool swapped = false;
            for (int s : tag.cols) swapped |= (s == static_cast<int>(c) + 1);
            // Columns come from the base matrix; swapped columns come from
            // the partner (B for AB rows, A for BA rows).
            const bool use_b = from_b_base != swapped;
            out.values(r, c) = use_b ? q(v, k + c) : q(v, c);
        }
    }
    return out;
}

std::int64_t vars_total_runs(std::int64_t n_star, double h, std::int64_t k) {
    const double inv = 1.0 / h;
    const auto m = static_cast<std::int64_t>(std::llround(inv));
    if (m < 2 || std::abs(inv - static_cast<double>(m)) > 1e-9)
        throw ResolutionError("1/h must be an integer >= 2, got h=" + std::to_string(h));
    return n_star * (k * (m - 1) + 1);
}

StarSample vars_matrices(std::int64_t n_star, double h,
                         const std::vector<std::string>& params,
                         Generator generator, std::uint64_t seed) {
    if (n_star < 1)
        throw DesignError("at least one star center is required");
    if (params.empty())
        throw DesignError("star design needs at least one parameter");
    const auto k = static_cast<std::int64_t>(params.size());
    const std::int64_t runs = vars_total_runs(n_star, h, k); // validates h
    const auto m = static_cast<std::int64_t>(std::llround(1.0 / h));

    StarSample star;
    star.h = h;
    star.points_per_section = m;
    star.params = params;
    star.centers = generate_base(n_star, k, generator, seed);
    star.points = Matrix(static_cast<std::size_t>(runs), static_cast<std::size_t>(k));
    star.section_slots.resize(static_cast<std::size_t>(n_star * k));
    star.section_coords.resize(static_cast<std::size_t>(n_star * k));

    std::int64_t row = 0;
    for (std::int64_t v = 0; v < n_star; ++v) {
        const auto vu = static_cast<std::size_t>(v);
        const std::int64_t center_row = row;
        star.center_rows.push_back(center_row);
        for (std::int64_t c = 0; c < k; ++c)
            star.points(static_cast<std::size_t>(row), static_cast<std::size_t>(c)) =
                star.centers(vu, static_cast<std::size_t>(c));
        ++row;

        for (std::int64_t dim = 0; dim < k; ++dim) {
            const double center = star.centers(vu, static_cast<std::size_t>(dim));
            const auto center_step = static_cast<std::int64_t>(std::floor(center / h));
            const double offset = center - static_cast<double>(center_step) * h;

            auto& slots = star.section_slots[static_cast<std::size_t>(v * k + dim)];
            auto& coords = star.section_coords[static_cast<std::size_t>(v * k + dim)];
            slots.resize(static_cast<std::size_t>(m));
            coords.resize(static_cast<std::size_t>(m));

            for (std::int64_t j = 0; j < m; ++j) {
                if (j == center_step) {
                    slots[static_cast<std::size_t>(j)] = center_row;
                    coords[static_cast<std::size_t>(j)] = center;
                    continue;
                }
                double coord = offset + static_cast<double>(j) * h;
                if (coord >= 1.0) coord = std::nextafter(1.0, 0.0);
                for (std::int64_t c = 0; c < k; ++c)
                    star.points(static_cast<std::size_t>(row), static_cast<std::size_t>(c)) =
                        star.centers(vu, static_cast<std::size_t>(c));
                star.points(static_cast<std::size_t>(row), static_cast<std::size_t>(dim)) = coord;
                slots[static_cast<std::size_t>(j)] = row;
                coords[static_cast<std::size_t>(j)] = coord;
                ++row;
            }
        }
    }
    return star;
}

} // namespace sensivar
