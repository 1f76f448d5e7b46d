#pragma once

#include <functional>
#include <string_view>

namespace ppf {

using WarningSink = std::function<void(std::string_view)>;

/// Replace the process-wide warning sink. Passing an empty function restores
/// the default, which writes to standard error. Returns the previous sink.
WarningSink set_warning_sink(WarningSink sink);

/// Emit a non-fatal diagnostic through the current sink. Thread-safe.
void warn(std::string_view message);

}  // namespace ppf
