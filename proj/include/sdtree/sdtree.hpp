#pragma once

#include "sdtree/bits.hpp"
#include "sdtree/canonical.hpp"
#include "sdtree/construct.hpp"
#include "sdtree/counting.hpp"
#include "sdtree/error.hpp"
#include "sdtree/formulas.hpp"
#include "sdtree/mind.hpp"
#include "sdtree/oracle.hpp"
#include "sdtree/sd_label.hpp"
#include "sdtree/serialize.hpp"
#include "sdtree/sumplan.hpp"
#include "sdtree/tree.hpp"
