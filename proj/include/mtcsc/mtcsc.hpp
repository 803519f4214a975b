#pragma once

#include "mtcsc/core.hpp"
#include "mtcsc/global.hpp"
#include "mtcsc/streaming.hpp"
#include "mtcsc/cluster.hpp"
#include "mtcsc/adaptive.hpp"
#include "mtcsc/quality.hpp"
#include "mtcsc/synthetic.hpp"
#include "mtcsc/io.hpp"
