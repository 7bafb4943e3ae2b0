#pragma once

#include "tanglecalc/error.hpp"
#include "tanglecalc/fraction.hpp"
#include "tanglecalc/affine.hpp"
#include "tanglecalc/tangle_expr.hpp"
#include "tanglecalc/planar_diagram.hpp"
#include "tanglecalc/diagram_builder.hpp"
#include "tanglecalc/pd_io.hpp"
#include "tanglecalc/dsl.hpp"
#include "tanglecalc/laurent.hpp"
#include "tanglecalc/smith.hpp"
#include "tanglecalc/invariants.hpp"
#include "tanglecalc/braid.hpp"
#include "tanglecalc/seifert.hpp"
#include "tanglecalc/cache.hpp"
#include "tanglecalc/family.hpp"
