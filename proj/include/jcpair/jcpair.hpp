#pragma once

#include "common.hpp"
#include "events.hpp"
#include "model.hpp"
#include "observables.hpp"
#include "oracle.hpp"
#include "parallel.hpp"
#include "sector.hpp"
#include "state.hpp"

namespace jcpair
{

inline constexpr const char* version = "0.1.0";

} // namespace jcpair
