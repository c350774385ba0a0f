#pragma once

namespace darkbanner::dataset {

// Same content as data/tristate_map.tsv; a test keeps the two in sync.
extern const char* const kBuiltinTriStateTsv;

}  // namespace darkbanner::dataset
