#pragma once

namespace darkbanner::text {

// Same content as data/sentiment_lexicon.tsv; a test keeps the two in sync.
extern const char* const kBuiltinLexiconTsv;

}  // namespace darkbanner::text
