#pragma once

#include "torusfill/integer.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

namespace torusfill {

inline constexpr std::size_t default_blowup_limit = 14;

/// (s_1, ..., s_i + 1, 1, s_i+1 + 1, ..., s_l) for 1 <= i <= l - 1.
Seq blowup_at(const Seq& s, std::size_t i);

/// Equal lengths and s_i <= c_i everywhere.
bool dominates(const Seq& s, const Seq& c);

/// All sequences reached from (0,0) by exactly length - 2 blowups.
std::set<Seq> enumerate_blowups(std::size_t length, std::size_t limit = default_blowup_limit);

/// Blowup indices (1-based, in application order) leading from (0,0) to s, if any.
std::optional<std::vector<std::size_t>> blowup_path(const Seq& s);

bool is_blowup_of_origin(const Seq& s);

/// Every blowup of (0,0) dominated by c, in lexicographic order.
std::vector<Seq> dominated_blowups(const Seq& c, std::size_t limit = default_blowup_limit);

struct EmbeddingWitness {
    Seq blowup;
    Seq target;            ///< a rotation of rho(d)
    std::size_t rotation;  ///< target == rotate(rho(d), rotation)
};

/// All (rotation, blowup) witnesses, rotations ascending, blowups lexicographic within a rotation.
std::vector<EmbeddingWitness> embedding_witnesses(const Seq& d, std::size_t limit = default_blowup_limit);

/// First witness in the order of embedding_witnesses, or none.
std::optional<EmbeddingWitness> is_embeddable(const Seq& d, std::size_t limit = default_blowup_limit);

} // namespace torusfill
