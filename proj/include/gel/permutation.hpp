#pragma once

#include "gel/algebra.hpp"
#include "gel/graph.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gel {

/// A configurable limit was hit (enumeration size, level growth, iteration).
class CapExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Block-preserving permutation of E^k. image[i] is the index of the image
/// of table[i]. Every constructor asserts that ranges and sources are kept.
class BlockPermutation {
  public:
    BlockPermutation(std::shared_ptr<const PathTable> table, std::vector<std::uint32_t> image);

    static BlockPermutation identity(GraphPtr g, std::size_t k);
    static BlockPermutation identity(std::shared_ptr<const PathTable> table);

    const PathTable &table() const { return *table_; }
    const std::shared_ptr<const PathTable> &table_ptr() const { return table_; }
    const Graph &graph() const { return table_->graph(); }
    const GraphPtr &graph_ptr() const { return table_->graph_ptr(); }
    std::size_t level() const { return table_->level(); }
    std::size_t size() const { return image_.size(); }
    const std::vector<std::uint32_t> &image() const { return image_; }

    const Path &apply(const Path &p) const { return (*table_)[image_[table_->index(p)]]; }
    std::uint32_t operator[](std::size_t i) const { return image_[i]; }

    bool is_identity() const;
    BlockPermutation inverse() const;

    /// Same level only: (a * b)(x) = a(b(x)).
    friend BlockPermutation operator*(const BlockPermutation &a, const BlockPermutation &b);
    /// Equal as permutations of the same level.
    friend bool operator==(const BlockPermutation &a, const BlockPermutation &b) {
        return a.level() == b.level() && a.image_ == b.image_;
    }

    /// Cycle notation, cycles led by their least path; "id" for the identity.
    std::string cycles() const;
    /// Stable 64-bit FNV-1a digest of (level, image).
    std::uint64_t digest() const;

  private:
    std::shared_ptr<const PathTable> table_;
    std::vector<std::uint32_t> image_;
};

/// Cycle notation `(p1 p2 ...)(...)`, applied right to left. Throws
/// std::invalid_argument on unknown paths, block crossing or repetition.
BlockPermutation parse_cycles(GraphPtr g, std::size_t k, std::string_view text);

/// The unitary sum_alpha S_{sigma(alpha)} S_alpha^*.
Element to_unitary(const StarAlgebra &alg, const BlockPermutation &p);

/// Same endomorphism written at a higher level: alpha e -> sigma(alpha) e.
BlockPermutation embed(const BlockPermutation &p, std::size_t level);
/// Lowest level representative.
BlockPermutation reduce_level(const BlockPermutation &p);
/// Equality as endomorphisms (after common embedding).
bool same_endomorphism(const BlockPermutation &a, const BlockPermutation &b);

/// The permutation of E^level that acts as p on the window of edges
/// [offset, offset + k) and fixes the rest. offset = 0 is the embedding,
/// offset = j is the j-fold shift.
BlockPermutation act_at(const BlockPermutation &p, std::size_t level, std::size_t offset);

/// Cocycle u_r of a permutative unitary as a permutation of E^{k+r-1}.
BlockPermutation cocycle(const BlockPermutation &p, std::size_t r);

/// u * w: the permutation of level k + l - 1 whose unitary is
/// lambda_u(w) u. lambda of the result is lambda_u after lambda_w.
BlockPermutation star_compose(const BlockPermutation &u, const BlockPermutation &w);

/// dim of the balanced span at level k - 1.
std::size_t balanced_dimension(const Graph &g, std::size_t level);

struct InverseSearch {
    std::optional<BlockPermutation> inverse;
    std::size_t iterations = 0;
    std::size_t cap = 0;
};

/// Iterates w_m = u_m^* u^* u_m until two consecutive values agree and
/// the candidate is a verified two-sided inverse for star_compose.
InverseSearch try_invert(const BlockPermutation &p, std::optional<std::size_t> cap = std::nullopt);
/// Throws CapExceeded when no inverse is found.
BlockPermutation invert(const BlockPermutation &p);

struct OrderResult {
    std::optional<std::size_t> order;
    std::size_t cap = 0;
    bool invertible = true;
    std::string note;
};

/// Default path budget for the level-growth guard.
inline constexpr std::size_t kDefaultPathBudget = 2'000'000;

/// Least n <= cap with the n-th star power equal to the identity.
/// Non-invertible input answers "order > cap" straight away.
OrderResult order_up_to(const BlockPermutation &p, std::size_t cap,
                        std::size_t path_budget = kDefaultPathBudget);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// All block permutations at one level, in mixed-radix order: blocks ordered
/// by (range, source), last block varying fastest, lexicographic permutation
/// rank inside a block. Index 0 is the identity.
class Enumeration {
  public:
    Enumeration(GraphPtr g, std::size_t k);

    /// Exact count; nullopt when it does not fit in 64 bits.
    std::optional<std::uint64_t> count() const { return count_; }
    std::string count_string() const { return count_str_; }
    std::size_t level() const { return table_->level(); }
    const std::shared_ptr<const PathTable> &table_ptr() const { return table_; }

    /// Throws CapExceeded when count exceeds cap.
    void require_within(std::uint64_t cap) const;
    BlockPermutation nth(std::uint64_t i) const;
    void for_each(const std::function<void(std::uint64_t, const BlockPermutation &)> &f,
                  std::uint64_t cap = kDefaultEnumerationCap) const;
    std::vector<BlockPermutation> all(std::uint64_t cap = kDefaultEnumerationCap) const;

    /// Blocks as index lists into the path table, in enumeration order.
    const std::vector<std::vector<std::uint32_t>> &blocks() const { return blocks_; }

  private:
    std::shared_ptr<const PathTable> table_;
    std::vector<std::vector<std::uint32_t>> blocks_;
    std::vector<std::uint64_t> radix_;
    std::optional<std::uint64_t> count_;
    std::string count_str_;
};

} // namespace gel
