#pragma once

#include <cstdint>

namespace nirmal {

// Class index of a labelled sample.
using Label = std::uint32_t;

}  // namespace nirmal
