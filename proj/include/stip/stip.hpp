#pragma once

#include "stip/graph.hpp"
#include "stip/instance_gen.hpp"
#include "stip/kernelize.hpp"
#include "stip/oracle.hpp"
#include "stip/pdstip.hpp"
#include "stip/pustip.hpp"
#include "stip/target_tree.hpp"
#include "stip/tree_iso.hpp"
