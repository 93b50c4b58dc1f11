#pragma once

#include "xcover/bounds.hpp"
#include "xcover/color_coding.hpp"
#include "xcover/errors.hpp"
#include "xcover/generators.hpp"
#include "xcover/ham_reduction.hpp"
#include "xcover/hamiltonicity.hpp"
#include "xcover/harness.hpp"
#include "xcover/instances.hpp"
#include "xcover/json_io.hpp"
#include "xcover/ktree_reduction.hpp"
#include "xcover/ntree_reduction.hpp"
#include "xcover/partitions.hpp"
#include "xcover/reduction_batch.hpp"
#include "xcover/setcover_solvers.hpp"
#include "xcover/solve_result.hpp"
#include "xcover/tree_cover.hpp"
#include "xcover/tree_embedding.hpp"
#include "xcover/verify.hpp"
