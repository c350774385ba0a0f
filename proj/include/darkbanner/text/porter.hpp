#pragma once

#include "darkbanner/text/tokenize.hpp"

#include <string>

namespace darkbanner::text {

// Porter's 1980 suffix-stripping algorithm. Expects a lowercase token;
// words shorter than three letters are returned unchanged.
std::string porter_stem(const std::string& word);

// Stems each token in place; length of the list is preserved.
TokenList stem_tokens(const TokenList& tokens);

}  // namespace darkbanner::text
