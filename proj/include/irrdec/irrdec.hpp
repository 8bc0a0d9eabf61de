#pragma once

#include "audit.hpp"
#include "decompose.hpp"
#include "edge_list.hpp"
#include "exact.hpp"
#include "exception_family.hpp"
#include "factor.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "graph_enum.hpp"
#include "labeling.hpp"
#include "lll.hpp"
#include "oracle.hpp"
#include "random.hpp"
