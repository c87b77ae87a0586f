#pragma once

#include <string>

namespace rrdps {

/// Fixed 12-significant-digit representation ("%.12g", C locale). Used for
/// all floating-point CSV fields and reports so outputs are byte-stable.
std::string format_sig12(double value);

/// Rounds a value through its 12-significant-digit representation. The
/// optimizer emits only quantized intensities, so a printed row re-derives
/// bit-exactly through the library.
double quantize_sig12(double value);

}  // namespace rrdps
