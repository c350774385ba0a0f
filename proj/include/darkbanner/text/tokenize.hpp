#pragma once

#include <string>
#include <vector>

namespace darkbanner::text {

using TokenList = std::vector<std::string>;

// Lowercases, splits on every non-alphanumeric byte, drops empty fragments.
// ASCII alphanumerics only; multi-byte UTF-8 sequences act as separators.
TokenList tokenize(const std::string& input);

std::string join_tokens(const TokenList& tokens);

}  // namespace darkbanner::text
