#pragma once

// Umbrella header. Individual headers can be included on their own; this
// pulls in the whole library for consumers that do not care.

#include "confspace/complex.hpp"
#include "confspace/coreduce.hpp"
#include "confspace/corpus.hpp"
#include "confspace/homology.hpp"
#include "confspace/io.hpp"
#include "confspace/local.hpp"
#include "confspace/orbit.hpp"
#include "confspace/pi1.hpp"
#include "confspace/product.hpp"
#include "confspace/retract.hpp"
#include "confspace/simplex.hpp"
#include "confspace/skeletal.hpp"
#include "confspace/snf.hpp"
#include "confspace/verify.hpp"
