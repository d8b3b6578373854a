// memwalk.hpp — umbrella include for the whole library.

#pragma once

#include "memwalk/analytics.hpp"
#include "memwalk/cli.hpp"
#include "memwalk/core.hpp"
#include "memwalk/dense.hpp"
#include "memwalk/designer.hpp"
#include "memwalk/io.hpp"
#include "memwalk/qtable.hpp"
#include "memwalk/selftest.hpp"
#include "memwalk/sparse.hpp"
#include "memwalk/verify.hpp"
