#pragma once

#include "arith.hpp"
#include "combo_json.hpp"
#include "common.hpp"
#include "errors.hpp"
#include "eulerprod.hpp"
#include "lcombo.hpp"
#include "refzeta.hpp"
#include "specfun.hpp"
#include "zetax.hpp"
