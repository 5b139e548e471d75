#pragma once

#include <ostream>

namespace pstark {

// quick in-process property suite (the heavyweight suites live under ctest);
// returns true iff every check passes
bool selftest(std::ostream& os);

} // namespace pstark
