#pragma once

#include "fluidact/model.hpp"

namespace bench {

inline fluidact::ParallelPlate plate(const char* fluid) {
    using namespace fluidact;
    return {reference::cantilever(), reference::nitride_stack(), fluid_preset(fluid)};
}

}  // namespace bench
