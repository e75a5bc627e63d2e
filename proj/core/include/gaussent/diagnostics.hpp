#pragma once

#include <functional>
#include <string_view>

namespace gaussent {

using WarningSink = std::function<void(std::string_view)>;

/// Route library warnings (clipping, truncation) somewhere. Default writes to std::clog.
/// Passing an empty function silences them. Not thread-safe; set once at startup.
void set_warning_sink(WarningSink sink);

void warn(std::string_view message);

}  // namespace gaussent
