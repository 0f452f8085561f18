#pragma once

#include "sparse_asm/bench.hpp"
#include "sparse_asm/core.hpp"
#include "sparse_asm/cost.hpp"
#include "sparse_asm/io.hpp"
#include "sparse_asm/memory.hpp"
#include "sparse_asm/oracle.hpp"
#include "sparse_asm/parallel.hpp"
#include "sparse_asm/serial.hpp"
#include "sparse_asm/types.hpp"
