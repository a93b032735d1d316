#ifndef PROBEVIEW_PROBEVIEW_HPP
#define PROBEVIEW_PROBEVIEW_HPP

#include "probeview/types.hpp"
#include "probeview/fock.hpp"
#include "probeview/reduction.hpp"
#include "probeview/analysis.hpp"
#include "probeview/oracle.hpp"

#endif  // PROBEVIEW_PROBEVIEW_HPP
