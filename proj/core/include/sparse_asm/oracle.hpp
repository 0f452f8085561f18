#pragma once

#include "sparse_asm/types.hpp"

namespace sparse_asm {

/// Reference assembly by comparison sort: stable sort on (column, row,
/// input position), then each run of equal (row, column) pairs is summed in
/// input order starting from +0.0. O(L log L). Shares no code with the
/// counting-sort paths; same errors as assemble_serial.
CscMatrix assemble_oracle(const AssemblyRequest& req);

}  // namespace sparse_asm
