#include "darkbanner/embed/embedding.hpp"

#include "darkbanner/text/tokenize.hpp"

#include <cmath>
#include <cstdint>

namespace darkbanner::embed {

namespace {

// FNV-1a, 64 bit. The key is a kind byte ('w' word unigram, 'c' char 3-gram)
// followed by the gram bytes, so the two gram families hash independently.
std::uint64_t fnv1a(char kind, const char* data, std::size_t len) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    h = (h ^ static_cast<unsigned char>(kind)) * 0x100000001B3ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h = (h ^ static_cast<unsigned char>(data[i])) * 0x100000001B3ULL;
    }
    return h;
}

void accumulate(Vector& buckets, std::uint64_t hash) {
    const std::size_t bucket = static_cast<std::size_t>(hash % kEmbeddingDim);
    const double sign = (hash >> 63) ? 1.0 : -1.0;
    buckets[bucket] += sign;
}

}  // namespace

Vector embed_text(const std::string& input) {
    Vector buckets(kEmbeddingDim, 0.0);
    const auto tokens = text::tokenize(input);
    for (const auto& token : tokens) {
        accumulate(buckets, fnv1a('w', token.data(), token.size()));
    }
    const std::string joined = text::join_tokens(tokens);
    if (joined.size() >= 3) {
        for (std::size_t i = 0; i + 3 <= joined.size(); ++i) {
            accumulate(buckets, fnv1a('c', joined.data() + i, 3));
        }
    }
    const double n = norm(buckets);
    if (n > 0.0) {
        for (auto& v : buckets) v /= n;
    }
    return buckets;
}

double squared_distance(const Vector& a, const Vector& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

double dot(const Vector& a, const Vector& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

}  // namespace darkbanner::embed
