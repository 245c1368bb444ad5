#pragma once

// Umbrella header.

#include "reconv/analyzer.hpp"
#include "reconv/dsl.hpp"
#include "reconv/gf_verifier.hpp"
#include "reconv/oracle.hpp"
#include "reconv/rational.hpp"
#include "reconv/recurrence.hpp"
#include "reconv/serialize.hpp"
#include "reconv/series.hpp"
#include "reconv/xval.hpp"
