#include "darkbanner/dataset/tristate_builtin.hpp"

namespace darkbanner::dataset {

const char* const kBuiltinTriStateTsv = R"TRI(# darkbanner tri-state map v1
# normalized token<TAB>yes|no|unknown
yes	yes
y	yes
true	yes
1	yes
x	yes
present	yes
confirmed	yes
no	no
n	no
false	no
0	no
none	no
absent	no
unknown	unknown
na	unknown
n/a	unknown
?	unknown
unclear	unknown
not sure	unknown
maybe	unknown
)TRI";

}  // namespace darkbanner::dataset
