#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace darkbanner::embed {

using Vector = std::vector<double>;

inline constexpr std::size_t kEmbeddingDim = 512;

// Signed feature hashing of word unigrams plus character 3-grams of the
// normalized (tokenized, space-joined) text into 512 buckets, then
// L2-normalized. Deterministic and offline. Empty or whitespace-only text
// maps to the zero vector, as does total sign cancellation (possible in
// principle, never observed on real phrases).
Vector embed_text(const std::string& input);

double squared_distance(const Vector& a, const Vector& b);
double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);

}  // namespace darkbanner::embed
