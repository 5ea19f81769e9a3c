#pragma once

#include "twistroot/error.hpp"
#include "twistroot/sign.hpp"
#include "twistroot/integer.hpp"
#include "twistroot/factor.hpp"
#include "twistroot/arith.hpp"
#include "twistroot/reduction.hpp"
#include "twistroot/local.hpp"
#include "twistroot/local_table.hpp"
#include "twistroot/global.hpp"
#include "twistroot/analysis.hpp"
#include "twistroot/report.hpp"
