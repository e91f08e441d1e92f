#pragma once

namespace polyembed {

// Execution policy for data-parallel kernels. Serial is the reference
// implementation; Parallel uses OpenMP when compiled in and must produce
// identical output (work items are independent, reductions are applied in a
// fixed order after the parallel section).
enum class ExecPolicy { Serial, Parallel };

}  // namespace polyembed
