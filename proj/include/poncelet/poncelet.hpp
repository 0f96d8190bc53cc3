#pragma once

// Whole engine in one include. The HTTP layer lives in poncelet/service.hpp.

#include "poncelet/api.hpp"
#include "poncelet/arrangement.hpp"
#include "poncelet/centers.hpp"
#include "poncelet/conic.hpp"
#include "poncelet/error.hpp"
#include "poncelet/family.hpp"
#include "poncelet/fit.hpp"
#include "poncelet/intersect.hpp"
#include "poncelet/locus.hpp"
#include "poncelet/palette.hpp"
#include "poncelet/session.hpp"
#include "poncelet/svg.hpp"
#include "poncelet/triangle.hpp"
