#pragma once

// Convenience umbrella: the whole library in one include.

#include "splice/congruence.hpp"
#include "splice/discriminant.hpp"
#include "splice/enumerate.hpp"
#include "splice/equations.hpp"
#include "splice/exact.hpp"
#include "splice/report.hpp"
#include "splice/resolution_graph.hpp"
#include "splice/semigroup.hpp"
#include "splice/splice_diagram.hpp"
